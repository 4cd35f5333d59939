use planar::general::GeneralDynamicGraph;
use planar::ids::VertexId;
use planar::static_oracle::{is_planar_static, EdgeListGraph};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeSet;

fn main() {
    // regenerate the churn ops inline (same parameters as the failing trace)
    let n = 16usize;
    let ops = 2000usize;
    let seed = 42u64;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut present: BTreeSet<(u32, u32)> = BTreeSet::new();
    let mut present_vec: Vec<(u32, u32)> = Vec::new();
    let (lo, hi) = (n / 2, n + n / 2);
    let pair = |rng: &mut ChaCha8Rng| -> (u32, u32) {
        let a = rng.gen_range(0..n as u32);
        let mut b = rng.gen_range(0..n as u32);
        while b == a {
            b = rng.gen_range(0..n as u32);
        }
        (a.min(b), a.max(b))
    };
    let mut trace: Vec<(char, u32, u32)> = Vec::new();
    for _ in 0..ops {
        let want_insert = if present.len() <= lo {
            true
        } else if present.len() >= hi {
            false
        } else {
            rng.gen_bool(0.5)
        };
        if want_insert {
            let mut p = pair(&mut rng);
            let mut tries = 0;
            while present.contains(&p) && tries < 64 {
                p = pair(&mut rng);
                tries += 1;
            }
            if present.contains(&p) {
                continue;
            }
            present.insert(p);
            present_vec.push(p);
            trace.push(('I', p.0, p.1));
        } else {
            let &p = present_vec.choose(&mut rng).unwrap();
            present.remove(&p);
            present_vec.retain(|&q| q != p);
            trace.push(('D', p.0, p.1));
        }
    }
    let mut g = GeneralDynamicGraph::new(n);
    let mut history: Vec<(char, u32, u32)> = Vec::new();
    for (i, &(k, a_, b_)) in trace.iter().enumerate() {
        history.push((k, a_, b_));
        let snapshot = g.planar_structure().graph().to_string();
        match k {
            'I' => g.insert(VertexId(a_), VertexId(b_)).unwrap(),
            _ => g.delete(VertexId(a_), VertexId(b_)).unwrap(),
        }
        // certificate soundness: the first deferred edge of each component
        // must genuinely be rejected by the embedded subgraph
        {
            let emb_edges: Vec<(u32, u32)> = g.planar_structure().edges().collect();
            let emb_el = EdgeListGraph::new(n, emb_edges).unwrap();
            let mut seen_comp = BTreeSet::new();
            let comp = {
                let full = EdgeListGraph::new(n, g.edges().collect()).unwrap();
                full.components()
            };
            for (a, b) in g.deferred() {
                if !seen_comp.insert(comp[a as usize]) {
                    continue;
                }
                if is_planar_static(&emb_el.with_edge(a, b)) {
                    println!("FALSE CERT after op {} = {} {} {}: deferred ({},{}) is embeddable", i, k, a_, b_, a, b);
                    println!("embedding:\n{}", g.planar_structure().graph().to_string());
                    return;
                }
            }
        }
        if !g.check_against_static() {
            println!("first mismatch after op {} = {} {} {}", i, k, a_, b_);
            let el = EdgeListGraph::new(n, g.edges().collect()).unwrap();
            println!("full edges: {:?}", el.edges);
            println!("deferred: {}", g.deferred_count());
            println!("is_planar(): {}", g.is_planar());
            println!("static: {}", is_planar_static(&el));
            println!("embedded: {:?}", g.planar_structure().edges().collect::<Vec<_>>());
            // shrink: find a minimal prefix?
            println!("history len {}", history.len());
            println!("pre-op embedding:\n{}", snapshot);
            return;
        }
        if !g.planar_structure_mut().check_valid() {
            println!("INVALID embedding after op {} = {} {} {}", i, k, a_, b_);
            return;
        }
    }
    println!("no mismatch?!");
}
