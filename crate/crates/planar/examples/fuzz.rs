//! Randomized differential fuzzing of the general dynamic structure against
//! the static oracle, with certificate soundness and embedding validity
//! checks after every operation.

use planar::general::GeneralDynamicGraph;
use planar::ids::VertexId;
use planar::static_oracle::{is_planar_static, EdgeListGraph};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeSet;

fn run(n: usize, ops: usize, seed: u64, churn: bool) -> Result<(), String> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut present: BTreeSet<(u32, u32)> = BTreeSet::new();
    let mut present_vec: Vec<(u32, u32)> = Vec::new();
    let mut g = GeneralDynamicGraph::new(n);
    let (lo, hi) = (n / 2, n + n / 2);
    for i in 0..ops {
        let insert = if churn {
            if present.len() <= lo {
                true
            } else if present.len() >= hi {
                false
            } else {
                rng.gen_bool(0.5)
            }
        } else {
            present.is_empty() || rng.gen_bool(0.6)
        };
        let opdesc;
        if insert {
            let mut tries = 0;
            let p = loop {
                let a = rng.gen_range(0..n as u32);
                let b = rng.gen_range(0..n as u32);
                if a != b && !present.contains(&(a.min(b), a.max(b))) {
                    break (a.min(b), a.max(b));
                }
                tries += 1;
                if tries > 200 {
                    return Ok(());
                }
            };
            present.insert(p);
            present_vec.push(p);
            g.insert(VertexId(p.0), VertexId(p.1)).map_err(|e| format!("{:?}", e))?;
            opdesc = format!("I {} {}", p.0, p.1);
        } else {
            let &p = present_vec.choose(&mut rng).unwrap();
            present.remove(&p);
            present_vec.retain(|&q| q != p);
            g.delete(VertexId(p.0), VertexId(p.1)).map_err(|e| format!("{:?}", e))?;
            opdesc = format!("D {} {}", p.0, p.1);
        }
        if !g.check_against_static() {
            return Err(format!("seed {} op {} ({}): bit mismatch", seed, i, opdesc));
        }
        if !g.planar_structure_mut().check_valid() {
            return Err(format!("seed {} op {} ({}): invalid embedding", seed, i, opdesc));
        }
        // certificate soundness per component
        let emb_el = EdgeListGraph::new(n, g.planar_structure().edges().collect()).unwrap();
        let comp = EdgeListGraph::new(n, g.edges().collect()).unwrap().components();
        let mut seen = BTreeSet::new();
        for (a, b) in g.deferred() {
            if !seen.insert(comp[a as usize]) {
                continue;
            }
            if is_planar_static(&emb_el.with_edge(a, b)) {
                return Err(format!("seed {} op {} ({}): stale certificate ({},{})", seed, i, opdesc, a, b));
            }
        }
    }
    Ok(())
}

fn main() {
    let seeds: u64 = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(20);
    for seed in 0..seeds {
        for &(n, ops) in &[(8usize, 400usize), (12, 400), (16, 600), (24, 600)] {
            for churn in [false, true] {
                if let Err(e) = run(n, ops, seed * 1000 + n as u64, churn) {
                    println!("FAIL: {}", e);
                    std::process::exit(1);
                }
            }
        }
    }
    println!("fuzz clean");
}
