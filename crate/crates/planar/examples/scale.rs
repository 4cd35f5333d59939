fn main() {
    for bound in [7usize, 8] {
        let t = std::time::Instant::now();
        let mut nodes = 0usize;
        let mut edges = 0usize;
        for g in planar::graph_enum::connected_graphs_up_to(bound) {
            let s = planar::potential::EmbeddingSpace::build(&g, 9).unwrap();
            nodes += s.len();
            edges += s.edges.len();
        }
        println!("bound {}: {} nodes {} edges in {:?}", bound, nodes, edges, t.elapsed());
    }
}
