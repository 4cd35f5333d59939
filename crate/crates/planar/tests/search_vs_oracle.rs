//! Exhaustive differential test of the greedy flip search against the
//! brute-force embedding-space oracle, over every embedding of every small
//! connected graph and every non-edge.

use planar::dynamic::PlanarDynamicGraph;
use planar::graph_enum::connected_graphs_up_to;
use planar::ids::VertexId;
use planar::potential::{DistKind, EmbeddingSpace, DEFAULT_ENUM_BOUND};
use planar::static_oracle::is_planar_static;

fn run_bound(max_edges: usize) {
    let mut checked = 0u64;
    for g in connected_graphs_up_to(max_edges) {
        let space = EmbeddingSpace::build(&g, DEFAULT_ENUM_BOUND).unwrap();
        let verts: Vec<u32> = (0..g.n as u32).collect();
        for &a in &verts {
            for &b in &verts {
                if a >= b || g.has_edge(a, b) {
                    continue;
                }
                let (u, v) = (VertexId(a), VertexId(b));
                let insertable = is_planar_static(&g.with_edge(a, b));
                let targets = space.admitting(u, v);
                assert_eq!(
                    targets.is_empty(),
                    !insertable,
                    "admitting-set vs static oracle disagree on {:?} + ({},{})",
                    g,
                    a,
                    b
                );
                let dists = if targets.is_empty() {
                    None
                } else {
                    Some(space.dist_table(DistKind::Clean, &targets))
                };
                for i in 0..space.len() {
                    let emb = space.embedding(i);
                    let mut d = PlanarDynamicGraph::from_embedding(emb).unwrap();
                    d.instrument = true;
                    let yes = d.query_compatible(u, v).unwrap_or_else(|e| {
                        panic!("search error {:?} on {:?} node {} pair ({},{})", e, g, i, a, b)
                    });
                    checked += 1;
                    assert_eq!(
                        yes, insertable,
                        "wrong answer on {:?} node {} pair ({},{})",
                        g, i, a, b
                    );
                    assert!(
                        d.check_valid(),
                        "invalid embedding after search on {:?} node {} pair ({},{})",
                        g,
                        i,
                        a,
                        b
                    );
                    // every executed flip is critical for (u,v)
                    for entry in &d.flip_log {
                        let moved = entry.flip.moved_interior.as_ref().unwrap();
                        let mu = moved.contains(&u);
                        let mv = moved.contains(&v);
                        assert!(
                            mu != mv,
                            "non-critical flip on {:?} node {} pair ({},{}): {:?}",
                            g,
                            i,
                            a,
                            b,
                            entry
                        );
                    }
                    let flips = d.counters.total();
                    if yes {
                        // postcondition: the endpoints now share a face
                        let (gm, idx) = (d.graph_mut() as *mut _, ());
                        let _ = (gm, idx);
                        let dist = dists.as_ref().unwrap()[i].expect("space is clean-connected");
                        assert!(
                            flips <= 2 * dist as u64 + 2,
                            "greedy used {} flips, oracle distance {} on {:?} node {} pair ({},{})",
                            flips,
                            dist,
                            g,
                            i,
                            a,
                            b
                        );
                    }
                }
            }
        }
    }
    eprintln!("checked {} (graph, embedding, pair) runs", checked);
}

#[test]
fn greedy_matches_oracle_small() {
    run_bound(6);
}

#[test]
#[ignore = "slow; covered by the acceptance suite at 8 edges"]
fn greedy_matches_oracle_seven() {
    run_bound(7);
}

#[test]
#[ignore = "slow; this is the acceptance-suite domain"]
fn greedy_matches_oracle_eight() {
    run_bound(8);
}
