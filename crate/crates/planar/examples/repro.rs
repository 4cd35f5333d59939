use planar::dynamic::PlanarDynamicGraph;
use planar::ids::VertexId;
use planar::potential::{DistKind, EmbeddingSpace};
use planar::static_oracle::{is_planar_static, EdgeListGraph};

fn main() {
    let g = EdgeListGraph::new(5, vec![(0, 3), (0, 4), (1, 2), (1, 4), (2, 3), (2, 4), (3, 4)]).unwrap();
    let (a, b) = (0u32, 1u32);
    let insertable = is_planar_static(&g.with_edge(a, b));
    println!("insertable: {}", insertable);
    let space = EmbeddingSpace::build(&g, 9).unwrap();
    println!("space nodes: {}", space.len());
    let targets = space.admitting(VertexId(a), VertexId(b));
    println!("targets: {:?}", targets);
    let i = 1;
    let emb = space.embedding(i);
    println!("embedding {}:\n{}", i, emb);
    if !targets.is_empty() {
        let dists = space.dist_table(DistKind::Clean, &targets);
        println!("dist from node {}: {:?}", i, dists[i]);
    }
    let mut d = PlanarDynamicGraph::from_embedding(emb).unwrap();
    d.instrument = true;
    let yes = d.query_compatible(VertexId(a), VertexId(b)).unwrap();
    println!("search says: {}", yes);
    println!("flips: {:?}", d.counters);
    for e in &d.flip_log {
        println!("  {:?}", e.flip);
    }
    println!("final:\n{}", d.graph_mut());
}
