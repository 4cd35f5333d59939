//! Fully-dynamic planarity testing with explicit embedding maintenance.
//!
//! The library keeps a combinatorial embedding (rotation system) of each
//! planar component of a fully-dynamic graph. Edge deletions are lazy; an
//! attempted insertion greedily performs the few local flips needed to bring
//! the endpoints onto a common face, or detects that no embedding admits the
//! edge. A reduction layer defers planarity-violating edges per component so
//! arbitrary graphs can be maintained with per-component planarity bits.
//!
//! Desk-scale oracle subsystems (exhaustive embedding enumeration, static
//! planarity, BC/SPQR decomposition, strut-based potential functions) provide
//! independent ground truth for the test suites.

pub mod decomposition;
pub mod dynamic;
pub mod embedding;
pub mod fixtures;
pub mod flip_search;
pub mod general;
pub mod graph_enum;
pub mod ids;
pub mod potential;
pub mod static_oracle;
pub mod treecotree;

pub use embedding::{EmbeddedGraph, EmbedError, FlipDescriptor, SepFlipKind};
pub use ids::{Corner, DartId, EdgeId, FaceId, VertexId};
