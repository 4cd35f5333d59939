//! Shrink a failing fuzz case to a minimal op sequence, then dump state.

use planar::general::GeneralDynamicGraph;
use planar::ids::VertexId;
use planar::static_oracle::{is_planar_static, EdgeListGraph};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeSet;

#[derive(Clone, Copy, Debug)]
enum Op {
    I(u32, u32),
    D(u32, u32),
}

fn gen_ops(n: usize, ops: usize, seed: u64, churn: bool) -> Vec<Op> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut present: BTreeSet<(u32, u32)> = BTreeSet::new();
    let mut present_vec: Vec<(u32, u32)> = Vec::new();
    let (lo, hi) = (n / 2, n + n / 2);
    let mut out = Vec::new();
    for _ in 0..ops {
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
                    return out;
                }
            };
            present.insert(p);
            present_vec.push(p);
            out.push(Op::I(p.0, p.1));
        } else {
            let &p = present_vec.choose(&mut rng).unwrap();
            present.remove(&p);
            present_vec.retain(|&q| q != p);
            out.push(Op::D(p.0, p.1));
        }
    }
    out
}

/// Returns Some(failing op index) if the sequence fails.
fn fails(n: usize, ops: &[Op]) -> Option<usize> {
    let mut g = GeneralDynamicGraph::new(n);
    for (i, &op) in ops.iter().enumerate() {
        let r = match op {
            Op::I(a, b) => g.insert(VertexId(a), VertexId(b)).map(|_| ()),
            Op::D(a, b) => g.delete(VertexId(a), VertexId(b)),
        };
        if r.is_err() {
            return None; // invalid sequence after shrinking
        }
        if !g.check_against_static() {
            if std::env::var("WHY").is_ok() && i == ops.len() - 1 {
                eprintln!("why: check_against_static");
            }
            return Some(i);
        }
        if !g.planar_structure_mut().check_valid() {
            if std::env::var("WHY").is_ok() && i == ops.len() - 1 {
                eprintln!("why: check_valid");
            }
            return Some(i);
        }
        let emb_el = EdgeListGraph::new(n, g.planar_structure().edges().collect()).unwrap();
        let comp = EdgeListGraph::new(n, g.edges().collect()).unwrap().components();
        let mut seen = BTreeSet::new();
        for (a, b) in g.deferred() {
            if !seen.insert(comp[a as usize]) {
                continue;
            }
            if is_planar_static(&emb_el.with_edge(a, b)) {
                if std::env::var("WHY").is_ok() && i == ops.len() - 1 {
                    eprintln!("why: stale certificate ({},{})", a, b);
                }
                return Some(i);
            }
        }
    }
    None
}

fn main() {
    let n: usize = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(24);
    let seed: u64 = std::env::args().nth(2).and_then(|s| s.parse().ok()).unwrap_or(1024);
    let nops: usize = std::env::args().nth(3).and_then(|s| s.parse().ok()).unwrap_or(600);
    let churn: bool = std::env::args().nth(4).map_or(false, |s| s == "churn");
    let mut ops = gen_ops(n, nops, seed, churn);
    let Some(end) = fails(n, &ops) else {
        println!("did not reproduce");
        return;
    };
    ops.truncate(end + 1);
    // greedy shrink: try removing each op
    loop {
        let mut reduced = false;
        let mut i = 0;
        while i < ops.len() {
            let mut cand = ops.clone();
            cand.remove(i);
            if fails(n, &cand).map_or(false, |e| e == cand.len() - 1) {
                ops = cand;
                reduced = true;
            } else {
                i += 1;
            }
        }
        if !reduced {
            break;
        }
    }
    println!("minimal sequence ({} ops):", ops.len());
    for op in &ops {
        println!("  {:?}", op);
    }
    // replay with state dump
    let mut g = GeneralDynamicGraph::new(n);
    for (i, &op) in ops.iter().enumerate() {
        let snap = g.planar_structure().graph().to_string();
        match op {
            Op::I(a, b) => {
                g.insert(VertexId(a), VertexId(b)).unwrap();
            }
            Op::D(a, b) => g.delete(VertexId(a), VertexId(b)).unwrap(),
        }
        if i == ops.len() - 1 {
            println!("pre-op embedding:\n{}", snap);
            println!("full edges: {:?}", g.edges().collect::<Vec<_>>());
            println!("embedded: {:?}", g.planar_structure().edges().collect::<Vec<_>>());
            println!("deferred: {:?}", g.deferred());
            println!("is_planar: {} static: {}", g.is_planar(), {
                let el = EdgeListGraph::new(n, g.edges().collect()).unwrap();
                is_planar_static(&el)
            });
            println!("valid: {}", g.planar_structure_mut().check_valid());
        }
    }
}
