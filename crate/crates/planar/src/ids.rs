//! Dense integer identifiers for vertices, edges, darts, faces, and corners.

use std::fmt;

/// Vertex index, dense in `0..n`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct VertexId(pub u32);

/// Edge slot index. Each edge owns the two darts `2e` and `2e+1`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct EdgeId(pub u32);

/// Directed half of an edge. `twin` flips the low bit.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct DartId(pub u32);

/// Face identity. Faces are recomputed orbits of the face permutation;
/// a face is named by the smallest dart on its orbit, so ids are only
/// stable between mutations when the orbit itself is untouched.
/// Components consisting of a single isolated vertex get a synthetic face.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum FaceId {
    Dart(DartId),
    IsolatedVertex(VertexId),
}

/// A corner is the angular wedge at `origin(d)` between `rot_prev(d)` and `d`.
/// Its face is the face orbit containing `d`. Corners are in bijection with
/// darts on non-isolated vertices; an isolated vertex carries one synthetic
/// corner usable as an insertion anchor.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Corner {
    Wedge(DartId),
    Isolated(VertexId),
}

impl VertexId {
    #[inline]
    pub fn idx(self) -> usize {
        self.0 as usize
    }
}

impl EdgeId {
    #[inline]
    pub fn idx(self) -> usize {
        self.0 as usize
    }
    #[inline]
    pub fn darts(self) -> [DartId; 2] {
        [DartId(self.0 * 2), DartId(self.0 * 2 + 1)]
    }
}

impl DartId {
    #[inline]
    pub fn idx(self) -> usize {
        self.0 as usize
    }
    #[inline]
    pub fn edge(self) -> EdgeId {
        EdgeId(self.0 / 2)
    }
    #[inline]
    pub fn twin(self) -> DartId {
        DartId(self.0 ^ 1)
    }
}

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl fmt::Display for EdgeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "e{}", self.0)
    }
}

impl fmt::Display for DartId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "d{}", self.0)
    }
}
