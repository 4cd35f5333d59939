//! Small named graphs used across the test suites.

use crate::embedding::EmbeddedGraph;
use crate::static_oracle::EdgeListGraph;

fn graph(n: usize, edges: &[(u32, u32)]) -> EdgeListGraph {
    EdgeListGraph::new(n, edges.iter().map(|&(a, b)| (a, b)).collect()).unwrap()
}

/// Triangle on vertices 0,1,2.
pub fn tri() -> EdgeListGraph {
    graph(3, &[(0, 1), (1, 2), (0, 2)])
}

/// 4-cycle 0-1-2-3.
pub fn c4() -> EdgeListGraph {
    graph(4, &[(0, 1), (1, 2), (2, 3), (3, 0)])
}

pub fn k4() -> EdgeListGraph {
    graph(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)])
}

pub fn k5() -> EdgeListGraph {
    let mut edges = Vec::new();
    for a in 0..5 {
        for b in a + 1..5 {
            edges.push((a, b));
        }
    }
    graph(5, &edges)
}

/// K3,3 with parts {0,1,2} and {3,4,5}.
pub fn k3_3() -> EdgeListGraph {
    let mut edges = Vec::new();
    for a in 0..3 {
        for b in 3..6 {
            edges.push((a, b));
        }
    }
    graph(6, &edges)
}

/// 3-cube graph Q3: vertices are 3-bit strings, edges flip one bit.
pub fn cube() -> EdgeListGraph {
    let mut edges = Vec::new();
    for v in 0u32..8 {
        for bit in 0..3 {
            let w = v ^ (1 << bit);
            if v < w {
                edges.push((v, w));
            }
        }
    }
    graph(8, &edges)
}

/// Two triangles sharing vertex 0: (0,1,2) and (0,3,4).
pub fn bowtie() -> EdgeListGraph {
    graph(5, &[(0, 1), (1, 2), (0, 2), (0, 3), (3, 4), (0, 4)])
}

/// Three triangles chained through articulation points 2 and 4:
/// (0,1,2), (2,3,4), (4,5,6). Vertices 0 and 6 are the chain ends.
pub fn chain3() -> EdgeListGraph {
    graph(
        7,
        &[(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (2, 4), (4, 5), (5, 6), (4, 6)],
    )
}

/// Hubs 0 and 1 joined by four internally disjoint length-2 paths through
/// x1..x4 = vertices 2..5.
pub fn k2_4() -> EdgeListGraph {
    graph(
        6,
        &[(0, 2), (2, 1), (0, 3), (3, 1), (0, 4), (4, 1), (0, 5), (5, 1)],
    )
}

/// An arbitrary plane embedding of a fixture, built by the static oracle.
pub fn embed(g: &EdgeListGraph) -> EmbeddedGraph {
    crate::static_oracle::find_embedding_static(g).expect("fixture is planar")
}

/// The k2_4 embedding with spoke order x1,x2,x3,x4 around hub 0 (and the
/// reverse around hub 1): opposite spokes share no face.
pub fn k2_4_embedded() -> EmbeddedGraph {
    use crate::ids::VertexId;
    let v = VertexId;
    let mut rots: Vec<Vec<(VertexId, u32)>> = vec![
        vec![(v(2), 0), (v(3), 0), (v(4), 0), (v(5), 0)],
        vec![(v(5), 0), (v(4), 0), (v(3), 0), (v(2), 0)],
    ];
    for _ in 2..6 {
        rots.push(vec![(v(0), 0), (v(1), 0)]);
    }
    EmbeddedGraph::from_rotation_lists(6, &rots).unwrap()
}
