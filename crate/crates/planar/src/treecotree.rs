//! Interdigitating primal spanning forest and dual cotree over an embedding.
//!
//! For any spanning forest of a plane graph, the duals of the non-tree edges
//! form a spanning tree of each component's dual graph. The index maintains
//! the primal forest across mutations (flips never change it; deletions of
//! tree edges trigger a rescan for a replacement) and answers path, meet,
//! projection, fundamental-cycle, sidedness, mark-and-search, and linkable
//! queries. The reference backend answers every primitive by explicit
//! traversal in time linear in the component size.

use crate::embedding::{EmbeddedGraph, EmbedError};
use crate::ids::{Corner, DartId, EdgeId, FaceId, VertexId};
use std::collections::{BTreeMap, BTreeSet, VecDeque};
use thiserror::Error;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Backend {
    Reference,
    /// Interface placeholder for a polylogarithmic backend; not built.
    Balanced,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TreeError {
    #[error("nodes are in different components")]
    DifferentComponents,
    #[error("path endpoints coincide")]
    SameNode,
    #[error("edge {0:?} is a tree edge")]
    TreeEdge(EdgeId),
    #[error("vertex is not on the cycle")]
    NotOnCycle,
    #[error("no face satisfies the bounding-face condition")]
    NoSuchFace,
    #[error("backend not available: {0}")]
    BackendUnavailable(&'static str),
    #[error(transparent)]
    Embed(#[from] EmbedError),
}

/// Fundamental cycle: the non-tree edge together with the implied tree path
/// between its endpoints.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct CycleHandle {
    pub closing: EdgeId,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum End {
    First,
    Last,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Goal {
    First,
    Last,
}

/// Which side of a corner-to-corner path an incidence must lie on.
/// `Left`/`Right` are the two arcs the path cuts at a node; the anchor
/// corners themselves belong to neither side.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum SideFilter {
    Any,
    Left,
    Right,
    Both,
}

#[derive(Clone, Debug)]
pub enum PathSpec {
    Primal { from: Corner, to: Corner },
    Dual { from: Corner, to: Corner },
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Mark {
    Vertex(VertexId),
    Face(FaceId),
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Hit {
    Vertex(VertexId),
    Face(FaceId),
}

#[derive(Clone, Debug)]
pub struct TreeCotreeIndex {
    backend: Backend,
    in_tree: Vec<bool>,
}

impl TreeCotreeIndex {
    /// Build a fresh index: a BFS spanning forest in rotation order.
    pub fn build(g: &mut EmbeddedGraph, backend: Backend) -> Result<Self, TreeError> {
        if backend == Backend::Balanced {
            return Err(TreeError::BackendUnavailable(
                "balanced backend is not built; use the reference backend",
            ));
        }
        let n = g.vertex_count();
        let mut in_tree = vec![false; g.edge_ids().map(|e| e.idx() + 1).max().unwrap_or(0)];
        let mut seen = vec![false; n];
        for v0 in 0..n {
            if seen[v0] {
                continue;
            }
            seen[v0] = true;
            let mut q = VecDeque::new();
            q.push_back(VertexId(v0 as u32));
            while let Some(v) = q.pop_front() {
                for d in g.rotation_of(v) {
                    let w = g.dart_target(d);
                    if !seen[w.idx()] {
                        seen[w.idx()] = true;
                        in_tree[d.edge().idx()] = true;
                        q.push_back(w);
                    }
                }
            }
        }
        Ok(TreeCotreeIndex { backend, in_tree })
    }

    pub fn backend(&self) -> Backend {
        self.backend
    }

    pub fn is_tree_edge(&self, e: EdgeId) -> bool {
        e.idx() < self.in_tree.len() && self.in_tree[e.idx()]
    }

    pub fn tree_edges(&self, g: &EmbeddedGraph) -> Vec<EdgeId> {
        g.edge_ids().filter(|&e| self.is_tree_edge(e)).collect()
    }

    pub fn nontree_edges(&self, g: &EmbeddedGraph) -> Vec<EdgeId> {
        g.edge_ids().filter(|&e| !self.is_tree_edge(e)).collect()
    }

    /// Maintenance hook: `e` was just embedded. `merged_components` is true
    /// when the insertion bridged two components.
    pub fn after_insert(&mut self, e: EdgeId, merged_components: bool) {
        if e.idx() >= self.in_tree.len() {
            self.in_tree.resize(e.idx() + 1, false);
        }
        self.in_tree[e.idx()] = merged_components;
    }

    /// Maintenance hook: the edge `(u,v)` with id `e` was just deleted from
    /// the graph. A deleted tree edge is replaced by rescanning for any edge
    /// crossing the cut, when one exists.
    pub fn after_delete(&mut self, g: &mut EmbeddedGraph, e: EdgeId, u: VertexId, v: VertexId) {
        let was_tree = self.is_tree_edge(e);
        if e.idx() < self.in_tree.len() {
            self.in_tree[e.idx()] = false;
        }
        if !was_tree {
            return;
        }
        let side = self.tree_component(g, u);
        if side.contains(&v) {
            return; // unreachable in practice: e was a tree edge
        }
        let mut replacement: Option<EdgeId> = None;
        for cand in g.edge_ids() {
            let (a, b) = g.endpoints(cand).unwrap();
            if side.contains(&a) != side.contains(&b) {
                replacement = Some(cand);
                break;
            }
        }
        if let Some(r) = replacement {
            self.in_tree[r.idx()] = true;
        }
    }

    fn tree_component(&self, g: &mut EmbeddedGraph, v: VertexId) -> BTreeSet<VertexId> {
        let mut seen = BTreeSet::new();
        seen.insert(v);
        let mut stack = vec![v];
        while let Some(x) = stack.pop() {
            for d in g.rotation_of(x) {
                if !self.is_tree_edge(d.edge()) {
                    continue;
                }
                let w = g.dart_target(d);
                if seen.insert(w) {
                    stack.push(w);
                }
            }
        }
        seen
    }

    /// Duality invariant: the forest spans every component, and the duals of
    /// the non-tree edges connect every face of each component.
    pub fn check_consistency(&self, g: &mut EmbeddedGraph) -> bool {
        let n = g.vertex_count();
        // forest: acyclic and spanning per component
        let mut seen = vec![false; n];
        let mut tree_edge_count = 0usize;
        let mut comp_count = 0usize;
        for v0 in 0..n {
            if seen[v0] {
                continue;
            }
            comp_count += 1;
            seen[v0] = true;
            let mut stack = vec![VertexId(v0 as u32)];
            while let Some(v) = stack.pop() {
                for d in g.rotation_of(v) {
                    let w = g.dart_target(d);
                    if !seen[w.idx()] {
                        seen[w.idx()] = true;
                        stack.push(w);
                    }
                }
            }
        }
        for e in g.edge_ids() {
            if self.is_tree_edge(e) {
                tree_edge_count += 1;
            }
        }
        if tree_edge_count != n - comp_count {
            return false;
        }
        // spanning within components: every vertex reaches its component rep via tree edges
        for v in 0..n {
            let v = VertexId(v as u32);
            let rep = g.comp_of(v);
            if !self.tree_component(g, v).contains(&rep) {
                return false;
            }
        }
        // dual: non-tree duals connect all faces of each component
        let faces = g.faces();
        let mut face_comp: BTreeMap<FaceId, VertexId> = BTreeMap::new();
        for &f in &faces {
            let rep = match f {
                FaceId::IsolatedVertex(v) => g.comp_of(v),
                FaceId::Dart(d) => {
                    let o = g.origin(d);
                    g.comp_of(o)
                }
            };
            face_comp.insert(f, rep);
        }
        let mut reach: BTreeSet<FaceId> = BTreeSet::new();
        for &f in &faces {
            if reach.contains(&f) {
                continue;
            }
            let mut stack = vec![f];
            let mut comp_faces = BTreeSet::new();
            comp_faces.insert(f);
            while let Some(cur) = stack.pop() {
                for d in g.face_darts(cur) {
                    if self.is_tree_edge(d.edge()) {
                        continue;
                    }
                    let nf = g.face_of(d.twin());
                    if comp_faces.insert(nf) {
                        stack.push(nf);
                    }
                }
            }
            let expected: BTreeSet<FaceId> = faces
                .iter()
                .copied()
                .filter(|x| face_comp[x] == face_comp[&f])
                .collect();
            if comp_faces != expected {
                return false;
            }
            reach.extend(comp_faces);
        }
        true
    }

    // ----- linkable -----

    /// If `u` and `v` share a face, return corners of both on that face.
    pub fn linkable(
        &self,
        g: &mut EmbeddedGraph,
        u: VertexId,
        v: VertexId,
    ) -> Result<Option<(Corner, Corner)>, TreeError> {
        if u == v {
            return Err(TreeError::SameNode);
        }
        if !g.same_component(u, v) {
            return Err(TreeError::DifferentComponents);
        }
        let fu: BTreeSet<FaceId> = g.rotation_of(u).iter().map(|&d| g.face_of(d)).collect();
        let shared: BTreeSet<FaceId> = g
            .rotation_of(v)
            .iter()
            .map(|&d| g.face_of(d))
            .filter(|f| fu.contains(f))
            .collect();
        let Some(&f) = shared.iter().next() else {
            return Ok(None);
        };
        let darts = g.face_darts(f);
        let cu = darts.iter().copied().find(|&d| g.origin(d) == u).unwrap();
        let cv = darts.iter().copied().find(|&d| g.origin(d) == v).unwrap();
        Ok(Some((Corner::Wedge(cu), Corner::Wedge(cv))))
    }

    // ----- primal tree paths -----

    /// Tree path as `(vertices, edges)` with `vertices.len() == edges.len()+1`.
    pub fn primal_path(
        &self,
        g: &mut EmbeddedGraph,
        a: VertexId,
        b: VertexId,
    ) -> Result<(Vec<VertexId>, Vec<EdgeId>), TreeError> {
        if a == b {
            return Ok((vec![a], Vec::new()));
        }
        if !g.same_component(a, b) {
            return Err(TreeError::DifferentComponents);
        }
        let mut prev: BTreeMap<VertexId, (VertexId, EdgeId)> = BTreeMap::new();
        let mut q = VecDeque::new();
        q.push_back(a);
        let mut seen = BTreeSet::new();
        seen.insert(a);
        'bfs: while let Some(x) = q.pop_front() {
            for d in g.rotation_of(x) {
                if !self.is_tree_edge(d.edge()) {
                    continue;
                }
                let w = g.dart_target(d);
                if seen.insert(w) {
                    prev.insert(w, (x, d.edge()));
                    if w == b {
                        break 'bfs;
                    }
                    q.push_back(w);
                }
            }
        }
        let mut verts = vec![b];
        let mut edges = Vec::new();
        let mut cur = b;
        while cur != a {
            let (p, e) = prev[&cur];
            edges.push(e);
            verts.push(p);
            cur = p;
        }
        verts.reverse();
        edges.reverse();
        Ok((verts, edges))
    }

    pub fn primal_path_end_edge(
        &self,
        g: &mut EmbeddedGraph,
        a: VertexId,
        b: VertexId,
        end: End,
    ) -> Result<EdgeId, TreeError> {
        if a == b {
            return Err(TreeError::SameNode);
        }
        let (_, edges) = self.primal_path(g, a, b)?;
        Ok(match end {
            End::First => edges[0],
            End::Last => *edges.last().unwrap(),
        })
    }

    /// Median of the three pairwise tree paths.
    pub fn meet_primal(
        &self,
        g: &mut EmbeddedGraph,
        x: VertexId,
        y: VertexId,
        z: VertexId,
    ) -> Result<VertexId, TreeError> {
        let (pxy, _) = self.primal_path(g, x, y)?;
        let (pxz, _) = self.primal_path(g, x, z)?;
        let set: BTreeSet<VertexId> = pxz.into_iter().collect();
        let mut last = x;
        for v in pxy {
            if set.contains(&v) {
                last = v;
            } else {
                break;
            }
        }
        Ok(last)
    }

    // ----- dual tree paths -----

    /// Faces adjacent to `f` across non-tree edges, with the crossing edge.
    fn dual_neighbors(&self, g: &mut EmbeddedGraph, f: FaceId) -> Vec<(FaceId, EdgeId)> {
        let mut out = Vec::new();
        for d in g.face_darts(f) {
            if self.is_tree_edge(d.edge()) {
                continue;
            }
            let nf = g.face_of(d.twin());
            out.push((nf, d.edge()));
        }
        out
    }

    /// Dual tree path as `(faces, crossing edges)`.
    pub fn dual_path(
        &self,
        g: &mut EmbeddedGraph,
        a: FaceId,
        b: FaceId,
    ) -> Result<(Vec<FaceId>, Vec<EdgeId>), TreeError> {
        if a == b {
            return Ok((vec![a], Vec::new()));
        }
        let mut prev: BTreeMap<FaceId, (FaceId, EdgeId)> = BTreeMap::new();
        let mut q = VecDeque::new();
        q.push_back(a);
        let mut seen = BTreeSet::new();
        seen.insert(a);
        'bfs: while let Some(x) = q.pop_front() {
            for (nf, e) in self.dual_neighbors(g, x) {
                if seen.insert(nf) {
                    prev.insert(nf, (x, e));
                    if nf == b {
                        break 'bfs;
                    }
                    q.push_back(nf);
                }
            }
        }
        if !prev.contains_key(&b) {
            return Err(TreeError::DifferentComponents);
        }
        let mut faces = vec![b];
        let mut edges = Vec::new();
        let mut cur = b;
        while cur != a {
            let (p, e) = prev[&cur];
            edges.push(e);
            faces.push(p);
            cur = p;
        }
        faces.reverse();
        edges.reverse();
        Ok((faces, edges))
    }

    pub fn dual_path_end_edge(
        &self,
        g: &mut EmbeddedGraph,
        a: FaceId,
        b: FaceId,
        end: End,
    ) -> Result<EdgeId, TreeError> {
        if a == b {
            return Err(TreeError::SameNode);
        }
        let (_, edges) = self.dual_path(g, a, b)?;
        Ok(match end {
            End::First => edges[0],
            End::Last => *edges.last().unwrap(),
        })
    }

    pub fn meet_dual(
        &self,
        g: &mut EmbeddedGraph,
        x: FaceId,
        y: FaceId,
        z: FaceId,
    ) -> Result<FaceId, TreeError> {
        let (pxy, _) = self.dual_path(g, x, y)?;
        let (pxz, _) = self.dual_path(g, x, z)?;
        let set: BTreeSet<FaceId> = pxz.into_iter().collect();
        let mut last = x;
        for f in pxy {
            if set.contains(&f) {
                last = f;
            } else {
                break;
            }
        }
        Ok(last)
    }

    // ----- fundamental cycles -----

    pub fn fundamental_cycle(&self, g: &mut EmbeddedGraph, e: EdgeId) -> Result<CycleHandle, TreeError> {
        g.endpoints(e)?;
        if self.is_tree_edge(e) {
            return Err(TreeError::TreeEdge(e));
        }
        Ok(CycleHandle { closing: e })
    }

    /// Cycle vertices in order, starting and ending at the closing edge.
    pub fn cycle_vertices(&self, g: &mut EmbeddedGraph, c: CycleHandle) -> Vec<VertexId> {
        let (y, z) = g.endpoints(c.closing).unwrap();
        let (verts, _) = self.primal_path(g, y, z).unwrap();
        verts
    }

    pub fn cycle_edges(&self, g: &mut EmbeddedGraph, c: CycleHandle) -> Vec<EdgeId> {
        let (y, z) = g.endpoints(c.closing).unwrap();
        let (_, mut edges) = self.primal_path(g, y, z).unwrap();
        edges.push(c.closing);
        edges
    }

    pub fn on_cycle(&self, g: &mut EmbeddedGraph, c: CycleHandle, w: VertexId) -> bool {
        self.cycle_vertices(g, c).contains(&w)
    }

    /// Projection of `w` onto the cycle: `meet(w, y, z)` for the closing
    /// edge `(y,z)`.
    pub fn projection(&self, g: &mut EmbeddedGraph, c: CycleHandle, w: VertexId) -> Result<VertexId, TreeError> {
        let (y, z) = g.endpoints(c.closing).unwrap();
        self.meet_primal(g, w, y, z)
    }

    /// The two cycle edges at a cycle vertex.
    pub fn cycle_edges_at(
        &self,
        g: &mut EmbeddedGraph,
        c: CycleHandle,
        w: VertexId,
    ) -> Result<(EdgeId, EdgeId), TreeError> {
        let verts = self.cycle_vertices(g, c);
        let edges = self.cycle_edges(g, c);
        let k = verts.len();
        let Some(i) = verts.iter().position(|&v| v == w) else {
            return Err(TreeError::NotOnCycle);
        };
        // edges[j] joins verts[j] and verts[j+1]; closing edge joins ends.
        let before = if i == 0 { edges[k - 1] } else { edges[i - 1] };
        let after = if i == k - 1 { edges[k - 1] } else { edges[i] };
        Ok((before, after))
    }

    /// Side classes of the faces with respect to the Jordan curve of the
    /// cycle: faces reachable from each other without crossing a cycle edge.
    /// A face incident to the cycle belongs to the region containing its
    /// interior wedge.
    pub fn face_sides(&self, g: &mut EmbeddedGraph, c: CycleHandle) -> (BTreeSet<FaceId>, BTreeSet<FaceId>) {
        let cyc: BTreeSet<EdgeId> = self.cycle_edges(g, c).into_iter().collect();
        let [d0, d1] = c.closing.darts();
        let f0 = g.face_of(d0);
        let f1 = g.face_of(d1);
        let flood = |g: &mut EmbeddedGraph, start: FaceId| -> BTreeSet<FaceId> {
            let mut out = BTreeSet::new();
            out.insert(start);
            let mut stack = vec![start];
            while let Some(f) = stack.pop() {
                for d in g.face_darts(f) {
                    if cyc.contains(&d.edge()) {
                        continue;
                    }
                    let nf = g.face_of(d.twin());
                    if out.insert(nf) {
                        stack.push(nf);
                    }
                }
            }
            out
        };
        let side0 = flood(g, f0);
        let side1 = flood(g, f1);
        debug_assert!(side0.is_disjoint(&side1));
        (side0, side1)
    }

    pub fn same_side(
        &self,
        g: &mut EmbeddedGraph,
        c: CycleHandle,
        f1: FaceId,
        f2: FaceId,
    ) -> Result<bool, TreeError> {
        let (s0, s1) = self.face_sides(g, c);
        let a = if s0.contains(&f1) {
            0
        } else if s1.contains(&f1) {
            1
        } else {
            return Err(TreeError::DifferentComponents);
        };
        let b = if s0.contains(&f2) {
            0
        } else if s1.contains(&f2) {
            1
        } else {
            return Err(TreeError::DifferentComponents);
        };
        Ok(a == b)
    }

    /// Fundamental cycle in the dual tree closed by the dual of the primal
    /// tree edge `e`: the dual path between the two faces of `e`, plus the
    /// crossing of `e` itself. Returned as the face sequence.
    pub fn dual_cycle_faces(&self, g: &mut EmbeddedGraph, e: EdgeId) -> Result<Vec<FaceId>, TreeError> {
        if !self.is_tree_edge(e) {
            return Err(TreeError::TreeEdge(e));
        }
        let [d0, d1] = e.darts();
        let f0 = g.face_of(d0);
        let f1 = g.face_of(d1);
        let (faces, _) = self.dual_path(g, f0, f1)?;
        Ok(faces)
    }

    // ----- corner-to-corner paths with side structure -----

    /// Dual corner-to-corner path. Element `i` describes face `i` with its
    /// two side arcs of boundary darts; the anchor corners lie on no side.
    pub fn dual_corner_path(
        &self,
        g: &mut EmbeddedGraph,
        from: Corner,
        to: Corner,
    ) -> Result<Vec<FaceStep>, TreeError> {
        let (Corner::Wedge(da), Corner::Wedge(db)) = (from, to) else {
            return Err(TreeError::NoSuchFace);
        };
        let fa = g.face_of(da);
        let fb = g.face_of(db);
        let (faces, edges) = self.dual_path(g, fa, fb)?;
        let mut steps = Vec::with_capacity(faces.len());
        for (i, &f) in faces.iter().enumerate() {
            let orbit = g.face_darts(f);
            let dart_of_edge = |e: EdgeId| -> DartId {
                *orbit.iter().find(|d| d.edge() == e).unwrap()
            };
            // cut positions on the orbit: entry and exit
            let (cut_in, cut_out) = if faces.len() == 1 {
                (da, db)
            } else if i == 0 {
                (da, dart_of_edge(edges[0]))
            } else if i == faces.len() - 1 {
                (dart_of_edge(edges[i - 1]), db)
            } else {
                (dart_of_edge(edges[i - 1]), dart_of_edge(edges[i]))
            };
            let exit_is_corner = i == faces.len() - 1;
            let entry_is_corner = i == 0;
            let mut left = Vec::new();
            let mut right = Vec::new();
            if cut_in != cut_out {
                let mut d = g.face_next(cut_in);
                while d != cut_out {
                    left.push(d);
                    d = g.face_next(d);
                }
                if !exit_is_corner {
                    // a mid-edge crossing leaves the exit dart's own corner
                    // on the entry side of the curve
                    left.push(cut_out);
                }
                let mut d = g.face_next(cut_out);
                while d != cut_in {
                    right.push(d);
                    d = g.face_next(d);
                }
                if !entry_is_corner {
                    right.push(cut_in);
                }
            } else {
                // anchor corner and crossing share a dart: one side is empty
                let mut arc = Vec::new();
                let mut d = g.face_next(cut_in);
                while d != cut_in {
                    arc.push(d);
                    d = g.face_next(d);
                }
                if entry_is_corner {
                    right = arc;
                } else {
                    left = arc;
                }
            }
            steps.push(FaceStep { face: f, left, right });
        }
        Ok(steps)
    }

    /// Primal corner-to-corner path. Element `i` describes vertex `i` and the
    /// corners (darts) of its two side arcs.
    pub fn primal_corner_path(
        &self,
        g: &mut EmbeddedGraph,
        from: Corner,
        to: Corner,
    ) -> Result<Vec<VertexStep>, TreeError> {
        let a = g.corner_vertex(from)?;
        let b = g.corner_vertex(to)?;
        let (verts, edges) = self.primal_path(g, a, b)?;
        let dart_along = |g: &EmbeddedGraph, v: VertexId, e: EdgeId| -> DartId {
            let [d0, d1] = e.darts();
            if g.origin(d0) == v {
                d0
            } else {
                d1
            }
        };
        let mut steps = Vec::with_capacity(verts.len());
        for (i, &v) in verts.iter().enumerate() {
            let deg = g.degree(v);
            let (cut_in, cut_out): (DartId, DartId) = if verts.len() == 1 {
                let (Corner::Wedge(da), Corner::Wedge(db)) = (from, to) else {
                    steps.push(VertexStep { vertex: v, left: Vec::new(), right: Vec::new() });
                    continue;
                };
                (da, db)
            } else if i == 0 {
                let da = match from {
                    Corner::Wedge(d) => d,
                    Corner::Isolated(_) => dart_along(g, v, edges[0]),
                };
                (da, dart_along(g, v, edges[0]))
            } else if i == verts.len() - 1 {
                let db = match to {
                    Corner::Wedge(d) => d,
                    Corner::Isolated(_) => dart_along(g, v, edges[i - 1]),
                };
                (dart_along(g, v, edges[i - 1]), db)
            } else {
                (dart_along(g, v, edges[i - 1]), dart_along(g, v, edges[i]))
            };
            // Side arcs of wedges: walking the rotation from cut_in to cut_out
            // crosses the wedges `corner(y)` for y in (cut_in .. cut_out].
            let mut left = Vec::new();
            let mut right = Vec::new();
            if cut_in != cut_out && deg > 0 {
                // walking the rotation from one cut dart to the other crosses
                // the wedges corner(y) for y in (cut_in .. cut_out]
                let mut d = g.rot_next(cut_in);
                loop {
                    left.push(d);
                    if d == cut_out {
                        break;
                    }
                    d = g.rot_next(d);
                }
                let mut d = g.rot_next(cut_out);
                loop {
                    right.push(d);
                    if d == cut_in {
                        break;
                    }
                    d = g.rot_next(d);
                }
                // an endpoint anchored at a corner keeps that wedge on the
                // curve itself, not on a side
                if i == 0 && matches!(from, Corner::Wedge(_)) {
                    right.pop();
                }
                if i == verts.len() - 1 && matches!(to, Corner::Wedge(_)) {
                    left.pop();
                }
            }
            steps.push(VertexStep { vertex: v, left, right });
        }
        Ok(steps)
    }

    /// Mark a handful of nodes of one kind and search a corner-to-corner path
    /// of the other kind for the first or last node incident to all marks,
    /// with an optional sidedness filter.
    pub fn mark_and_search(
        &self,
        g: &mut EmbeddedGraph,
        spec: &PathSpec,
        marks: &[Mark],
        goal: Goal,
        side: SideFilter,
    ) -> Result<Option<Hit>, TreeError> {
        match spec {
            PathSpec::Dual { from, to } => {
                let steps = self.dual_corner_path(g, *from, *to)?;
                let check = |g: &mut EmbeddedGraph, step: &FaceStep| -> bool {
                    marks.iter().all(|m| {
                        let Mark::Vertex(v) = m else { return false };
                        let on_left = step.left.iter().any(|&d| g.origin(d) == *v);
                        let on_right = step.right.iter().any(|&d| g.origin(d) == *v);
                        match side {
                            SideFilter::Any => on_left || on_right || {
                                // anchor corners count for plain incidence
                                g.face_has_vertex(step.face, *v)
                            },
                            SideFilter::Left => on_left,
                            SideFilter::Right => on_right,
                            SideFilter::Both => on_left && on_right,
                        }
                    })
                };
                let mut hit = None;
                for step in &steps {
                    if check(g, step) {
                        hit = Some(Hit::Face(step.face));
                        if goal == Goal::First {
                            break;
                        }
                    }
                }
                Ok(hit)
            }
            PathSpec::Primal { from, to } => {
                let steps = self.primal_corner_path(g, *from, *to)?;
                let check = |g: &mut EmbeddedGraph, step: &VertexStep| -> bool {
                    marks.iter().all(|m| {
                        let Mark::Face(f) = m else { return false };
                        let on_left = step.left.iter().any(|&d| g.face_of(d) == *f);
                        let on_right = step.right.iter().any(|&d| g.face_of(d) == *f);
                        match side {
                            SideFilter::Any => {
                                on_left || on_right || g.face_has_vertex(*f, step.vertex)
                            }
                            SideFilter::Left => on_left,
                            SideFilter::Right => on_right,
                            SideFilter::Both => on_left && on_right,
                        }
                    })
                };
                let mut hit = None;
                for step in &steps {
                    if check(g, step) {
                        hit = Some(Hit::Vertex(step.vertex));
                        if goal == Goal::First {
                            break;
                        }
                    }
                }
                Ok(hit)
            }
        }
    }
}

/// One face on a dual corner-to-corner path with its two boundary arcs.
#[derive(Clone, Debug)]
pub struct FaceStep {
    pub face: FaceId,
    pub left: Vec<DartId>,
    pub right: Vec<DartId>,
}

/// One vertex on a primal corner-to-corner path; `left`/`right` list the
/// darts whose corners lie on each side of the path.
#[derive(Clone, Debug)]
pub struct VertexStep {
    pub vertex: VertexId,
    pub left: Vec<DartId>,
    pub right: Vec<DartId>,
}
