//! Fully-dynamic planar graph with embedding maintenance: insertions search
//! for the flips that admit the edge, deletions are lazy (never flip), and
//! compatibility queries run the same search without inserting.

use crate::embedding::{EmbeddedGraph, EmbedError};
use crate::flip_search::{ExecKind, ExecutedFlip, FlipEngine, SearchError};
use crate::ids::{Corner, DartId, EdgeId, VertexId};
use crate::treecotree::{Backend, TreeCotreeIndex, TreeError};
use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DynError {
    #[error("edge already present")]
    DuplicateEdge,
    #[error("self-loops are not supported")]
    SelfLoop,
    #[error("unknown edge")]
    UnknownEdge,
    #[error("vertex out of range")]
    OutOfRange,
    #[error(transparent)]
    Search(#[from] SearchError),
    #[error(transparent)]
    Tree(#[from] TreeError),
    #[error(transparent)]
    Embed(#[from] EmbedError),
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum InsertOutcome {
    Accepted,
    Rejected,
}

/// Flip counts by kind, cumulative and for the last operation.
#[derive(Clone, Copy, Default, Debug)]
pub struct FlipCounters {
    pub articulation: u64,
    pub sr: u64,
    pub p: u64,
    pub last_op_articulation: u64,
    pub last_op_sr: u64,
    pub last_op_p: u64,
}

impl FlipCounters {
    pub fn total(&self) -> u64 {
        self.articulation + self.sr + self.p
    }

    fn absorb(&mut self, flips: &[ExecutedFlip]) {
        self.last_op_articulation = 0;
        self.last_op_sr = 0;
        self.last_op_p = 0;
        for f in flips {
            match f.kind {
                ExecKind::Articulation => {
                    self.articulation += 1;
                    self.last_op_articulation += 1;
                }
                ExecKind::SR => {
                    self.sr += 1;
                    self.last_op_sr += 1;
                }
                ExecKind::P => {
                    self.p += 1;
                    self.last_op_p += 1;
                }
            }
        }
    }
}

/// One flip-log record: which operation, what flip, how classified.
#[derive(Clone, Debug)]
pub struct FlipLogEntry {
    pub op_seq: u64,
    pub flip: ExecutedFlip,
}

/// A fully-dynamic planar graph. Every public operation leaves a valid plane
/// embedding; rejected insertions keep the flips performed before detection
/// but never change the edge set.
#[derive(Clone, Debug)]
pub struct PlanarDynamicGraph {
    g: EmbeddedGraph,
    idx: TreeCotreeIndex,
    edge_by_pair: BTreeMap<(u32, u32), EdgeId>,
    pub counters: FlipCounters,
    pub flip_log: Vec<FlipLogEntry>,
    pub instrument: bool,
    op_seq: u64,
}

fn pair(u: VertexId, v: VertexId) -> (u32, u32) {
    (u.0.min(v.0), u.0.max(v.0))
}

impl PlanarDynamicGraph {
    pub fn new(n: usize) -> Self {
        let mut g = EmbeddedGraph::new(n);
        let idx = TreeCotreeIndex::build(&mut g, Backend::Reference).unwrap();
        PlanarDynamicGraph {
            g,
            idx,
            edge_by_pair: BTreeMap::new(),
            counters: FlipCounters::default(),
            flip_log: Vec::new(),
            instrument: false,
            op_seq: 0,
        }
    }

    /// Adopt an existing plane embedding of a simple graph.
    pub fn from_embedding(mut g: EmbeddedGraph) -> Result<Self, DynError> {
        let mut edge_by_pair = BTreeMap::new();
        for e in g.edge_ids().collect::<Vec<_>>() {
            let (a, b) = g.endpoints(e)?;
            if edge_by_pair.insert(pair(a, b), e).is_some() {
                return Err(DynError::DuplicateEdge);
            }
        }
        let idx = TreeCotreeIndex::build(&mut g, Backend::Reference).map_err(DynError::Tree)?;
        Ok(PlanarDynamicGraph {
            g,
            idx,
            edge_by_pair,
            counters: FlipCounters::default(),
            flip_log: Vec::new(),
            instrument: false,
            op_seq: 0,
        })
    }

    pub fn vertex_count(&self) -> usize {
        self.g.vertex_count()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_by_pair.len()
    }

    pub fn graph(&self) -> &EmbeddedGraph {
        &self.g
    }

    pub fn graph_mut(&mut self) -> &mut EmbeddedGraph {
        &mut self.g
    }

    pub fn index(&self) -> &TreeCotreeIndex {
        &self.idx
    }

    pub fn edge_id(&self, u: VertexId, v: VertexId) -> Option<EdgeId> {
        self.edge_by_pair.get(&pair(u, v)).copied()
    }

    pub fn has_edge(&self, u: VertexId, v: VertexId) -> bool {
        self.edge_by_pair.contains_key(&pair(u, v))
    }

    pub fn edges(&self) -> impl Iterator<Item = (u32, u32)> + '_ {
        self.edge_by_pair.keys().copied()
    }

    fn check_vertex(&self, v: VertexId) -> Result<(), DynError> {
        if v.idx() < self.g.vertex_count() {
            Ok(())
        } else {
            Err(DynError::OutOfRange)
        }
    }

    fn flip_budget(&self) -> usize {
        10 * (self.g.vertex_count() + self.edge_by_pair.len()) + 10
    }

    fn run_search(&mut self, u: VertexId, v: VertexId) -> Result<bool, DynError> {
        let budget = self.flip_budget();
        let mut engine = FlipEngine::new(&mut self.g, &self.idx, budget, self.instrument);
        let outcome = engine.multi_flip_linkable(u, v);
        let executed = std::mem::take(&mut engine.executed);
        drop(engine);
        self.counters.absorb(&executed);
        let seq = self.op_seq;
        self.flip_log
            .extend(executed.into_iter().map(|flip| FlipLogEntry { op_seq: seq, flip }));
        Ok(outcome?)
    }

    /// Attempt to insert `(u,v)`. Same-component insertions run the flip
    /// search; the edge set changes only on acceptance. Insertions across
    /// two components always succeed with zero flips.
    pub fn insert(&mut self, u: VertexId, v: VertexId) -> Result<InsertOutcome, DynError> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        if u == v {
            return Err(DynError::SelfLoop);
        }
        if self.has_edge(u, v) {
            return Err(DynError::DuplicateEdge);
        }
        self.op_seq += 1;
        self.counters.absorb(&[]);
        if !self.g.same_component(u, v) {
            let cu = self.g.corner_at(u);
            let cv = self.g.corner_at(v);
            let e = self.g.insert_edge_at(cu, cv)?;
            self.idx.after_insert(e, true);
            self.edge_by_pair.insert(pair(u, v), e);
            return Ok(InsertOutcome::Accepted);
        }
        if !self.run_search(u, v)? {
            return Ok(InsertOutcome::Rejected);
        }
        let (cu, cv) = self
            .idx
            .linkable(&mut self.g, u, v)?
            .expect("search success leaves the endpoints on a common face");
        let e = self.g.insert_edge_at(cu, cv)?;
        self.idx.after_insert(e, false);
        self.edge_by_pair.insert(pair(u, v), e);
        Ok(InsertOutcome::Accepted)
    }

    /// Delete an edge. Never flips; the embedding is untouched apart from
    /// the removal itself.
    pub fn delete(&mut self, u: VertexId, v: VertexId) -> Result<(), DynError> {
        let e = self.edge_id(u, v).ok_or(DynError::UnknownEdge)?;
        self.op_seq += 1;
        self.counters.absorb(&[]);
        self.g.delete_edge(e)?;
        self.idx.after_delete(&mut self.g, e, u, v);
        self.edge_by_pair.remove(&pair(u, v));
        Ok(())
    }

    /// Would inserting `(u,v)` keep the graph planar? Runs the flip search
    /// (and may therefore change the embedding) without inserting anything.
    pub fn query_compatible(&mut self, u: VertexId, v: VertexId) -> Result<bool, DynError> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        if u == v {
            return Err(DynError::SelfLoop);
        }
        self.op_seq += 1;
        self.counters.absorb(&[]);
        if !self.g.same_component(u, v) {
            return Ok(true);
        }
        self.run_search(u, v)
    }

    /// Rotation predecessor and successor of each of the edge's darts.
    pub fn embedding_neighbors(&mut self, e: EdgeId) -> Result<[DartId; 4], DynError> {
        if !self.g.is_live_edge(e) {
            return Err(DynError::UnknownEdge);
        }
        let [d0, d1] = e.darts();
        Ok([
            self.g.rot_prev(d0),
            self.g.rot_next(d0),
            self.g.rot_prev(d1),
            self.g.rot_next(d1),
        ])
    }

    pub fn corner_anchor(&self, v: VertexId) -> Corner {
        self.g.corner_at(v)
    }

    /// Validity of the whole structure: embedding invariants plus the
    /// tree-cotree duality.
    pub fn check_valid(&mut self) -> bool {
        self.g.validate().is_ok() && self.idx.check_consistency(&mut self.g)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn v(i: u32) -> VertexId {
        VertexId(i)
    }

    #[test]
    fn k4_grows_from_empty() {
        let mut d = PlanarDynamicGraph::new(4);
        for (a, b) in [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)] {
            assert_eq!(d.insert(v(a), v(b)).unwrap(), InsertOutcome::Accepted);
            assert!(d.check_valid());
        }
        assert_eq!(d.edge_count(), 6);
        assert_eq!(d.insert(v(0), v(1)).unwrap_err(), DynError::DuplicateEdge);
        assert_eq!(d.insert(v(0), v(0)).unwrap_err(), DynError::SelfLoop);
    }

    #[test]
    fn k5_rejected_without_edge_change() {
        let mut d = PlanarDynamicGraph::new(5);
        let mut planar_edges = Vec::new();
        for a in 0..5u32 {
            for b in a + 1..5 {
                planar_edges.push((a, b));
            }
        }
        let mut rejected = 0;
        for (a, b) in planar_edges {
            match d.insert(v(a), v(b)).unwrap() {
                InsertOutcome::Accepted => {}
                InsertOutcome::Rejected => rejected += 1,
            }
            assert!(d.check_valid());
        }
        assert_eq!(rejected, 1);
        assert_eq!(d.edge_count(), 9);
    }

    #[test]
    fn cube_antipodal_rejected() {
        let cube = fixtures::cube();
        let mut d = PlanarDynamicGraph::from_embedding(fixtures::embed(&cube)).unwrap();
        // 0 and 7 are antipodal: no embedding admits the diagonal
        assert_eq!(d.insert(v(0), v(7)).unwrap(), InsertOutcome::Rejected);
        assert_eq!(d.edge_count(), 12);
        assert!(d.check_valid());
    }

    #[test]
    fn k2_4_insert_needs_one_p_flip() {
        let mut d = PlanarDynamicGraph::from_embedding(fixtures::k2_4_embedded()).unwrap();
        assert_eq!(d.insert(v(2), v(4)).unwrap(), InsertOutcome::Accepted);
        assert!(d.check_valid());
        assert_eq!(d.counters.total(), 1);
        assert_eq!(d.counters.p, 1);
    }

    #[test]
    fn deletion_is_lazy() {
        let mut d = PlanarDynamicGraph::from_embedding(fixtures::k2_4_embedded()).unwrap();
        d.insert(v(2), v(4)).unwrap();
        let flips_before = d.counters.total();
        d.delete(v(2), v(4)).unwrap();
        d.delete(v(0), v(3)).unwrap();
        assert_eq!(d.counters.total(), flips_before);
        assert!(d.check_valid());
        // delete then re-insert in the same face costs no flips
        d.insert(v(0), v(3)).unwrap();
        assert_eq!(d.counters.total(), flips_before);
    }

    #[test]
    fn query_then_insert_is_free() {
        let mut d = PlanarDynamicGraph::from_embedding(fixtures::k2_4_embedded()).unwrap();
        assert!(d.query_compatible(v(2), v(4)).unwrap());
        let flips = d.counters.total();
        d.insert(v(2), v(4)).unwrap();
        assert_eq!(d.counters.total(), flips);
        assert_eq!(d.edge_count(), 9);
        // keep inserting spoke chords; answers must match the static oracle
        use crate::static_oracle::{is_planar_static, EdgeListGraph};
        for (a, b) in [(3u32, 5), (2, 3), (4, 5), (2, 5), (3, 4)] {
            let now = EdgeListGraph::new(6, d.edges().collect()).unwrap();
            let expect = is_planar_static(&now.with_edge(a, b));
            assert_eq!(d.query_compatible(v(a), v(b)).unwrap(), expect, "({},{})", a, b);
            let outcome = d.insert(v(a), v(b)).unwrap();
            assert_eq!(outcome == InsertOutcome::Accepted, expect);
            assert!(d.check_valid());
        }
    }

    #[test]
    fn embedding_neighbors_shape() {
        let mut d = PlanarDynamicGraph::new(3);
        d.insert(v(0), v(1)).unwrap();
        let e = d.edge_id(v(0), v(1)).unwrap();
        let [a, b, c, f] = d.embedding_neighbors(e).unwrap();
        // degree-1 endpoints: both neighbors are the dart itself
        assert_eq!(a, b);
        assert_eq!(c, f);
        d.insert(v(1), v(2)).unwrap();
        d.insert(v(0), v(2)).unwrap();
        let e01 = d.edge_id(v(0), v(1)).unwrap();
        let n = d.embedding_neighbors(e01).unwrap();
        let mut edges: Vec<EdgeId> = n.iter().map(|d| d.edge()).collect();
        edges.sort();
        edges.dedup();
        assert_eq!(edges.len(), 2); // the two other triangle edges
    }

    #[test]
    fn bowtie_articulation_case() {
        // two triangles sharing vertex 0 with the second nested inside the
        // first: linking outer corners needs articulation flips
        let emb = EmbeddedGraph::parse(
            "0: 0>1#0 0>3#0 0>4#0 0>2#0\n1: 1>2#0 1>0#0\n2: 2>0#0 2>1#0\n3: 3>4#0 3>0#0\n4: 4>0#0 4>3#0\n",
        )
        .unwrap();
        let mut d = PlanarDynamicGraph::from_embedding(emb).unwrap();
        assert!(d.check_valid());
        assert_eq!(d.insert(v(1), v(3)).unwrap(), InsertOutcome::Accepted);
        assert!(d.check_valid());
    }
}
