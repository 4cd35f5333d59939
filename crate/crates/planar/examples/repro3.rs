use planar::embedding::EmbeddedGraph;
use planar::flip_search::FlipEngine;
use planar::ids::VertexId;
use planar::static_oracle::{is_planar_static, EdgeListGraph};
use planar::treecotree::{Backend, TreeCotreeIndex};

fn main() {
    let text = "0: 0>1#0 0>10#0\n1: 1>0#0 1>6#0 1>3#0\n2: 2>3#0 2>13#0 2>15#0\n3: 3>1#0 3>12#0 3>2#0 3>15#0\n4: 4>5#0 4>8#0 4>9#0\n5: 5>4#0\n6: 6>1#0 6>14#0 6>12#0\n7: 7>10#0\n8: 8>4#0 8>15#0 8>13#0\n9: 9>4#0 9>10#0\n10: 10>0#0 10>7#0 10>9#0\n11:\n12: 12>3#0 12>6#0\n13: 13>2#0 13>14#0 13>8#0 13>15#0\n14: 14>6#0 14>13#0\n15: 15>2#0 15>13#0 15>8#0 15>3#0\n";
    let mut g = EmbeddedGraph::parse(text).unwrap();
    let edges: Vec<(u32, u32)> = {
        let ids: Vec<_> = g.edge_ids().collect();
        ids.iter()
            .map(|&e| {
                let (a, b) = g.endpoints(e).unwrap();
                (a.0, b.0)
            })
            .collect()
    };
    let el = EdgeListGraph::new(16, edges).unwrap();
    let (u, v) = (VertexId(4), VertexId(15));
    println!("insertable: {}", is_planar_static(&el.with_edge(u.0, v.0)));
    let idx = TreeCotreeIndex::build(&mut g, Backend::Reference).unwrap();
    let mut eng = FlipEngine::new(&mut g, &idx, 1000, true);
    match eng.multi_flip_linkable(u, v) {
        Ok(yes) => println!("search: {}", yes),
        Err(e) => println!("error: {:?}", e),
    }
    for f in &eng.executed {
        println!("  flip {:?} moved={:?}", f.kind, f.moved_interior);
    }
    println!("after:\n{}", eng.g);
}
