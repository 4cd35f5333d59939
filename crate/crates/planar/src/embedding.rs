//! Mutable combinatorial-embedding kernel: rotation systems, derived faces,
//! corners, and the two flip primitives (articulation and separation flips).
//!
//! The embedding of each component is a rotation system: `twin` is a
//! fixed-point-free involution on darts and `rot_next` restricted to the
//! darts of one vertex is a single cyclic orbit (counterclockwise order).
//! Faces are the orbits of the derived permutation `phi(d) = rot_next(twin(d))`.
//! A rotation system is plane (genus 0) iff every component satisfies
//! `V - E + F = 2`.

use crate::ids::{Corner, DartId, EdgeId, FaceId, VertexId};
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EmbedError {
    #[error("self-loops are not supported")]
    SelfLoop,
    #[error("corners lie on different faces of one component")]
    SameFaceViolation,
    #[error("unknown edge {0:?}")]
    UnknownEdge(EdgeId),
    #[error("invalid corner {0:?}")]
    InvalidCorner(Corner),
    #[error("articulation flip segment is not a movable dart run")]
    InvalidSegment,
    #[error("articulation flip target is not a usable corner")]
    InvalidTarget,
    #[error("separation flip corners do not form a vertex-face 4-cycle")]
    NotAFourCycle,
    #[error("separation flip side is not contiguous at both cut vertices")]
    NonContiguousCut,
}

/// Descriptor of a flip: a local change of the embedding at an articulation
/// point or at a separation pair. Both variants preserve the edge set and
/// the genus-0 invariant.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum FlipDescriptor {
    /// Take the contiguous dart run `[seg_start.dart ..= seg_end.dart]` out of
    /// the rotation at its vertex, optionally reverse it (mirroring the moved
    /// subgraph), and reinsert it in the wedge of `target`.
    Articulation {
        seg_start: Corner,
        seg_end: Corner,
        target: Corner,
        reflect: bool,
    },
    /// Reflect the subgraph delimited by a vertex-face 4-cycle
    /// `f_u - s - f_v - t`. The corners are `(c_x_u, c_y_u, c_y_v, c_x_v)`:
    /// `c_x_*` at one cut vertex, `c_y_*` at the other, `*_u` corners on one
    /// face of the cut and `*_v` corners on the other. The reflected side is
    /// the one whose dart arc at `s` starts at `c_x_u.dart` and ends before
    /// `c_x_v.dart`.
    Separation { sigma: [Corner; 4] },
}

/// Runtime classification of an executed separation flip: P if both sides of
/// the cut consist of at least two separation classes, SR otherwise.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum SepFlipKind {
    P,
    SR,
}

/// What a flip actually moved, for instrumentation.
#[derive(Clone, Debug)]
pub struct FlipExecInfo {
    /// Vertices strictly inside the flipped subgraph (cut vertices excluded).
    pub moved_interior: Vec<VertexId>,
    /// `None` for articulation flips.
    pub sep_kind: Option<SepFlipKind>,
    /// A separation flip is clean when none of the four boundary edges of the
    /// reversed arcs is a bridge. Articulation flips are always clean.
    pub clean: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    TwinNotInvolution(DartId),
    RotationNotCyclic(VertexId),
    DanglingDart(DartId),
    EulerFormula { component: VertexId, v: usize, e: usize, f: usize },
}

/// Structured result of `validate`; never panics.
#[derive(Clone, Debug, Default)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }
}

#[derive(Clone, Debug)]
struct EdgeSlot {
    u: VertexId,
    v: VertexId,
}

#[derive(Clone, Debug)]
struct Cache {
    /// Smallest dart of the face orbit, per live dart.
    face_of: Vec<FaceId>,
    faces: Vec<FaceId>,
    /// Smallest vertex of the component, per vertex.
    comp_of: Vec<VertexId>,
}

/// Rotation-system representation of an embedded multigraph.
///
/// Self-loops are rejected at the API boundary. Parallel edges are tolerated
/// by the kernel but never created by the public insert path of the dynamic
/// layers.
#[derive(Clone, Debug)]
pub struct EmbeddedGraph {
    n: usize,
    edges: Vec<Option<EdgeSlot>>,
    free: Vec<u32>,
    rot_next: Vec<DartId>,
    rot_prev: Vec<DartId>,
    some_dart: Vec<Option<DartId>>,
    degree: Vec<u32>,
    cache: Option<Cache>,
    /// bridge status per edge slot; graph-structural, so flips keep it
    bridge_cache: Option<Vec<bool>>,
}

impl EmbeddedGraph {
    pub fn new(n: usize) -> Self {
        EmbeddedGraph {
            n,
            edges: Vec::new(),
            free: Vec::new(),
            rot_next: Vec::new(),
            rot_prev: Vec::new(),
            some_dart: vec![None; n],
            degree: vec![0; n],
            cache: None,
            bridge_cache: None,
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.iter().filter(|s| s.is_some()).count()
    }

    pub fn edge_ids(&self) -> impl Iterator<Item = EdgeId> + '_ {
        self.edges
            .iter()
            .enumerate()
            .filter_map(|(i, s)| s.as_ref().map(|_| EdgeId(i as u32)))
    }

    pub fn is_live_edge(&self, e: EdgeId) -> bool {
        e.idx() < self.edges.len() && self.edges[e.idx()].is_some()
    }

    pub fn is_live_dart(&self, d: DartId) -> bool {
        self.is_live_edge(d.edge())
    }

    pub fn endpoints(&self, e: EdgeId) -> Result<(VertexId, VertexId), EmbedError> {
        self.edges
            .get(e.idx())
            .and_then(|s| s.as_ref())
            .map(|s| (s.u, s.v))
            .ok_or(EmbedError::UnknownEdge(e))
    }

    /// Origin vertex of a dart. Dart `2e` points `u -> v`, dart `2e+1` points `v -> u`.
    pub fn origin(&self, d: DartId) -> VertexId {
        let slot = self.edges[d.edge().idx()].as_ref().expect("live dart");
        if d.0 % 2 == 0 {
            slot.u
        } else {
            slot.v
        }
    }

    pub fn dart_target(&self, d: DartId) -> VertexId {
        self.origin(d.twin())
    }

    pub fn rot_next(&self, d: DartId) -> DartId {
        self.rot_next[d.idx()]
    }

    pub fn rot_prev(&self, d: DartId) -> DartId {
        self.rot_prev[d.idx()]
    }

    /// Face permutation `phi(d) = rot_next(twin(d))`.
    pub fn face_next(&self, d: DartId) -> DartId {
        self.rot_next[d.twin().idx()]
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.degree[v.idx()] as usize
    }

    pub fn some_dart_at(&self, v: VertexId) -> Option<DartId> {
        self.some_dart[v.idx()]
    }

    /// Darts at `v` in rotation order, starting at an arbitrary anchor.
    pub fn rotation_of(&self, v: VertexId) -> Vec<DartId> {
        let mut out = Vec::with_capacity(self.degree(v));
        if let Some(d0) = self.some_dart[v.idx()] {
            let mut d = d0;
            loop {
                out.push(d);
                d = self.rot_next[d.idx()];
                if d == d0 {
                    break;
                }
            }
        }
        out
    }

    /// Some corner of `v`: the wedge of its smallest dart, or the synthetic
    /// corner when `v` is isolated.
    pub fn corner_at(&self, v: VertexId) -> Corner {
        match self.smallest_dart_at(v) {
            Some(d) => Corner::Wedge(d),
            None => Corner::Isolated(v),
        }
    }

    fn smallest_dart_at(&self, v: VertexId) -> Option<DartId> {
        self.rotation_of(v).into_iter().min()
    }

    pub fn corner_vertex(&self, c: Corner) -> Result<VertexId, EmbedError> {
        match c {
            Corner::Wedge(d) => {
                if self.is_live_dart(d) {
                    Ok(self.origin(d))
                } else {
                    Err(EmbedError::InvalidCorner(c))
                }
            }
            Corner::Isolated(v) => {
                if v.idx() < self.n && self.degree(v) == 0 {
                    Ok(v)
                } else {
                    Err(EmbedError::InvalidCorner(c))
                }
            }
        }
    }

    pub fn corner_face(&mut self, c: Corner) -> Result<FaceId, EmbedError> {
        self.corner_vertex(c)?;
        Ok(match c {
            Corner::Wedge(d) => self.face_of(d),
            Corner::Isolated(v) => FaceId::IsolatedVertex(v),
        })
    }

    // ----- derived structure -----

    fn ensure_cache(&mut self) {
        if self.cache.is_some() {
            return;
        }
        let dart_len = self.rot_next.len();
        let mut face_of = vec![FaceId::Dart(DartId(u32::MAX)); dart_len];
        let mut faces = Vec::new();
        let mut seen = vec![false; dart_len];
        for e in 0..self.edges.len() {
            if self.edges[e].is_none() {
                continue;
            }
            for d0 in EdgeId(e as u32).darts() {
                if seen[d0.idx()] {
                    continue;
                }
                // Walk the orbit once to find the smallest dart, then label.
                let mut rep = d0;
                let mut d = d0;
                loop {
                    d = self.face_next(d);
                    if d < rep {
                        rep = d;
                    }
                    if d == d0 {
                        break;
                    }
                }
                let f = FaceId::Dart(rep);
                faces.push(f);
                let mut d = d0;
                loop {
                    seen[d.idx()] = true;
                    face_of[d.idx()] = f;
                    d = self.face_next(d);
                    if d == d0 {
                        break;
                    }
                }
            }
        }
        let mut comp_of: Vec<VertexId> = (0..self.n as u32).map(VertexId).collect();
        let mut visited = vec![false; self.n];
        for v0 in 0..self.n {
            if visited[v0] {
                continue;
            }
            let mut stack = vec![VertexId(v0 as u32)];
            visited[v0] = true;
            let mut members = vec![VertexId(v0 as u32)];
            while let Some(v) = stack.pop() {
                for d in self.rotation_of(v) {
                    let w = self.dart_target(d);
                    if !visited[w.idx()] {
                        visited[w.idx()] = true;
                        members.push(w);
                        stack.push(w);
                    }
                }
            }
            let rep = *members.iter().min().unwrap();
            for m in members {
                comp_of[m.idx()] = rep;
            }
        }
        for v in 0..self.n {
            if self.degree[v] == 0 {
                faces.push(FaceId::IsolatedVertex(VertexId(v as u32)));
            }
        }
        faces.sort();
        self.cache = Some(Cache { face_of, faces, comp_of });
    }

    pub fn face_of(&mut self, d: DartId) -> FaceId {
        self.ensure_cache();
        self.cache.as_ref().unwrap().face_of[d.idx()]
    }

    pub fn faces(&mut self) -> Vec<FaceId> {
        self.ensure_cache();
        self.cache.as_ref().unwrap().faces.clone()
    }

    pub fn comp_of(&mut self, v: VertexId) -> VertexId {
        self.ensure_cache();
        self.cache.as_ref().unwrap().comp_of[v.idx()]
    }

    pub fn same_component(&mut self, u: VertexId, v: VertexId) -> bool {
        self.comp_of(u) == self.comp_of(v)
    }

    pub fn component_vertices(&mut self, v: VertexId) -> Vec<VertexId> {
        let rep = self.comp_of(v);
        let cache = self.cache.as_ref().unwrap();
        (0..self.n as u32)
            .map(VertexId)
            .filter(|w| cache.comp_of[w.idx()] == rep)
            .collect()
    }

    /// Darts of a face orbit starting at the representative dart.
    pub fn face_darts(&mut self, f: FaceId) -> Vec<DartId> {
        match f {
            FaceId::IsolatedVertex(_) => Vec::new(),
            FaceId::Dart(d0) => {
                let mut out = Vec::new();
                let mut d = d0;
                loop {
                    out.push(d);
                    d = self.face_next(d);
                    if d == d0 {
                        break;
                    }
                }
                out
            }
        }
    }

    pub fn face_has_vertex(&mut self, f: FaceId, v: VertexId) -> bool {
        match f {
            FaceId::IsolatedVertex(w) => w == v,
            FaceId::Dart(_) => self.face_darts(f).iter().any(|&d| self.origin(d) == v),
        }
    }

    /// Corners of `v` on face `f`, in face-orbit order.
    pub fn corners_of_vertex_on_face(&mut self, v: VertexId, f: FaceId) -> Vec<Corner> {
        match f {
            FaceId::IsolatedVertex(w) => {
                if w == v {
                    vec![Corner::Isolated(v)]
                } else {
                    Vec::new()
                }
            }
            FaceId::Dart(_) => self
                .face_darts(f)
                .into_iter()
                .filter(|&d| self.origin(d) == v)
                .map(Corner::Wedge)
                .collect(),
        }
    }

    /// Full orbit of the corner's face, starting at `c`. Length equals the
    /// face degree, counting corner multiplicity for repeated incidences.
    pub fn face_walk(&mut self, c: Corner) -> Result<Vec<Corner>, EmbedError> {
        self.corner_vertex(c)?;
        match c {
            Corner::Isolated(v) => Ok(vec![Corner::Isolated(v)]),
            Corner::Wedge(d0) => {
                let mut out = Vec::new();
                let mut d = d0;
                loop {
                    out.push(Corner::Wedge(d));
                    d = self.face_next(d);
                    if d == d0 {
                        break;
                    }
                }
                Ok(out)
            }
        }
    }

    // ----- mutation -----

    fn alloc_edge(&mut self, u: VertexId, v: VertexId) -> EdgeId {
        if let Some(i) = self.free.pop() {
            self.edges[i as usize] = Some(EdgeSlot { u, v });
            EdgeId(i)
        } else {
            self.edges.push(Some(EdgeSlot { u, v }));
            self.rot_next.extend([DartId(0), DartId(0)]);
            self.rot_prev.extend([DartId(0), DartId(0)]);
            EdgeId(self.edges.len() as u32 - 1)
        }
    }

    /// Splice `nd` into the rotation of `v` just before `at` (inside the
    /// wedge of `Corner::Wedge(at)`), or as the sole dart when `v` is isolated.
    fn splice_before(&mut self, v: VertexId, nd: DartId, at: Option<DartId>) {
        match at {
            None => {
                self.rot_next[nd.idx()] = nd;
                self.rot_prev[nd.idx()] = nd;
                self.some_dart[v.idx()] = Some(nd);
            }
            Some(at) => {
                let prev = self.rot_prev[at.idx()];
                self.rot_next[prev.idx()] = nd;
                self.rot_prev[nd.idx()] = prev;
                self.rot_next[nd.idx()] = at;
                self.rot_prev[at.idx()] = nd;
            }
        }
        self.degree[v.idx()] += 1;
    }

    fn unlink(&mut self, v: VertexId, d: DartId) {
        let next = self.rot_next[d.idx()];
        if next == d {
            self.some_dart[v.idx()] = None;
        } else {
            let prev = self.rot_prev[d.idx()];
            self.rot_next[prev.idx()] = next;
            self.rot_prev[next.idx()] = prev;
            if self.some_dart[v.idx()] == Some(d) {
                self.some_dart[v.idx()] = Some(next);
            }
        }
        self.degree[v.idx()] -= 1;
    }

    /// Embed a new edge at the two corners. Within one component the corners
    /// must lie on the same face (the face splits in two); across two
    /// components the edge is a bridge and the two faces merge.
    pub fn insert_edge_at(&mut self, c_u: Corner, c_v: Corner) -> Result<EdgeId, EmbedError> {
        let u = self.corner_vertex(c_u)?;
        let v = self.corner_vertex(c_v)?;
        if u == v {
            return Err(EmbedError::SelfLoop);
        }
        if self.same_component(u, v) {
            let fu = self.corner_face(c_u)?;
            let fv = self.corner_face(c_v)?;
            if fu != fv {
                return Err(EmbedError::SameFaceViolation);
            }
        }
        let e = self.alloc_edge(u, v);
        let [du, dv] = e.darts();
        let at_u = match c_u {
            Corner::Wedge(d) => Some(d),
            Corner::Isolated(_) => None,
        };
        let at_v = match c_v {
            Corner::Wedge(d) => Some(d),
            Corner::Isolated(_) => None,
        };
        self.splice_before(u, du, at_u);
        self.splice_before(v, dv, at_v);
        self.cache = None;
        self.bridge_cache = None;
        Ok(e)
    }

    /// Remove an edge. The two faces along it merge (or the face splits when
    /// the edge was a bridge); no other rotation changes.
    pub fn delete_edge(&mut self, e: EdgeId) -> Result<(), EmbedError> {
        let (u, v) = self.endpoints(e)?;
        let [du, dv] = e.darts();
        self.unlink(u, du);
        self.unlink(v, dv);
        self.edges[e.idx()] = None;
        self.free.push(e.0);
        self.cache = None;
        self.bridge_cache = None;
        Ok(())
    }

    // ----- class decompositions used by the flips -----

    /// Edge classes of the component(s) of `s`,`t` with respect to `{s,t}`:
    /// two edges are in one class iff they lie on a common path avoiding `s`
    /// and `t` internally. Every edge incident to `s` or `t` is in some class;
    /// an edge `(s,t)` itself forms a singleton class.
    pub fn st_classes(&mut self, s: VertexId, t: VertexId) -> Vec<StClass> {
        let mut class_of: Vec<u32> = vec![u32::MAX; self.edges.len()];
        let mut classes: Vec<StClass> = Vec::new();
        self.ensure_cache();
        let comp_s = self.comp_of(s);
        let comp_t = self.comp_of(t);
        for ei in 0..self.edges.len() {
            let Some(slot) = &self.edges[ei] else { continue };
            let a = slot.u;
            let ca = self.cache.as_ref().unwrap().comp_of[a.idx()];
            if ca != comp_s && ca != comp_t {
                continue;
            }
            if class_of[ei] != u32::MAX {
                continue;
            }
            let id = classes.len();
            let mut edges = Vec::new();
            let mut stack = vec![EdgeId(ei as u32)];
            class_of[ei] = id as u32;
            while let Some(cur) = stack.pop() {
                edges.push(cur);
                let (a, b) = self.endpoints(cur).unwrap();
                for w in [a, b] {
                    if w == s || w == t {
                        continue;
                    }
                    for d in self.rotation_of(w) {
                        let ne = d.edge();
                        if class_of[ne.idx()] == u32::MAX {
                            class_of[ne.idx()] = id as u32;
                            stack.push(ne);
                        }
                    }
                }
            }
            edges.sort();
            classes.push(StClass { edges, darts_at_s: Vec::new(), darts_at_t: Vec::new() });
        }
        for d in self.rotation_of(s) {
            let id = class_of[d.edge().idx()] as usize;
            classes[id].darts_at_s.push(d);
        }
        for d in self.rotation_of(t) {
            let id = class_of[d.edge().idx()] as usize;
            classes[id].darts_at_t.push(d);
        }
        classes
    }

    /// Groups of edges hanging at `a`: one group per connected component of
    /// `component(a) - a`, together with its darts at `a`.
    pub fn articulation_classes(&mut self, a: VertexId) -> Vec<StClass> {
        let mut class_of: Vec<u32> = vec![u32::MAX; self.edges.len()];
        let mut classes: Vec<StClass> = Vec::new();
        for d0 in self.rotation_of(a) {
            let e0 = d0.edge();
            if class_of[e0.idx()] != u32::MAX {
                continue;
            }
            let id = classes.len();
            let mut edges = Vec::new();
            let mut stack = vec![e0];
            class_of[e0.idx()] = id as u32;
            while let Some(cur) = stack.pop() {
                edges.push(cur);
                let (x, y) = self.endpoints(cur).unwrap();
                for w in [x, y] {
                    if w == a {
                        continue;
                    }
                    for d in self.rotation_of(w) {
                        let ne = d.edge();
                        if class_of[ne.idx()] == u32::MAX {
                            class_of[ne.idx()] = id as u32;
                            stack.push(ne);
                        }
                    }
                }
            }
            edges.sort();
            classes.push(StClass { edges, darts_at_s: Vec::new(), darts_at_t: Vec::new() });
        }
        for d in self.rotation_of(a) {
            classes[class_of[d.edge().idx()] as usize].darts_at_s.push(d);
        }
        classes
    }

    /// Bridge status of an edge. Computed once per graph (lowpoint DFS);
    /// flips never change it.
    pub fn is_bridge(&mut self, e: EdgeId) -> bool {
        if self.bridge_cache.is_none() {
            self.bridge_cache = Some(self.compute_bridges());
        }
        self.bridge_cache.as_ref().unwrap()[e.idx()]
    }

    fn compute_bridges(&self) -> Vec<bool> {
        let n = self.n;
        let mut bridge = vec![false; self.edges.len()];
        let mut t_in = vec![usize::MAX; n];
        let mut low = vec![usize::MAX; n];
        let mut timer = 0usize;
        for root in 0..n {
            if t_in[root] != usize::MAX || self.degree[root] == 0 {
                continue;
            }
            // iterative DFS over darts
            let mut stack: Vec<(VertexId, Option<EdgeId>, Vec<DartId>, usize)> = Vec::new();
            t_in[root] = timer;
            low[root] = timer;
            timer += 1;
            let v0 = VertexId(root as u32);
            stack.push((v0, None, self.rotation_of(v0), 0));
            while let Some((v, pe, rot, i)) = stack.last_mut() {
                if *i < rot.len() {
                    let d = rot[*i];
                    *i += 1;
                    // the parent edge slot appears exactly once in the
                    // rotation; parallel copies have their own slots
                    if Some(d.edge()) == *pe {
                        continue;
                    }
                    let w = self.origin(d.twin());
                    if t_in[w.idx()] == usize::MAX {
                        t_in[w.idx()] = timer;
                        low[w.idx()] = timer;
                        timer += 1;
                        let rot_w = self.rotation_of(w);
                        stack.push((w, Some(d.edge()), rot_w, 0));
                    } else {
                        let lv = low[v.idx()].min(t_in[w.idx()]);
                        low[v.idx()] = lv;
                    }
                } else {
                    let (v, pe, _, _) = stack.pop().unwrap();
                    if let Some((p, _, _, _)) = stack.last() {
                        let lp = low[p.idx()].min(low[v.idx()]);
                        low[p.idx()] = lp;
                        if let Some(pe) = pe {
                            if low[v.idx()] > t_in[p.idx()] {
                                bridge[pe.idx()] = true;
                            }
                        }
                    }
                }
            }
        }
        bridge
    }

    fn vertices_of_edges(&self, edges: &[EdgeId]) -> BTreeSet<VertexId> {
        let mut out = BTreeSet::new();
        for &e in edges {
            let slot = self.edges[e.idx()].as_ref().unwrap();
            out.insert(slot.u);
            out.insert(slot.v);
        }
        out
    }

    /// Collect darts from `from` (inclusive) to `to` (exclusive) in rotation
    /// order around their shared origin.
    fn arc(&self, from: DartId, to: DartId) -> Vec<DartId> {
        let mut out = Vec::new();
        let mut d = from;
        while d != to {
            out.push(d);
            d = self.rot_next[d.idx()];
        }
        out
    }

    /// Public view of the dart run `[from .. to)` in rotation order.
    pub fn rotation_arc(&self, from: DartId, to: DartId) -> Vec<DartId> {
        self.arc(from, to)
    }

    /// The dart of `e` whose origin is `v`.
    pub fn dart_from(&self, v: VertexId, e: EdgeId) -> Result<DartId, EmbedError> {
        let (a, b) = self.endpoints(e)?;
        let [d0, d1] = e.darts();
        if a == v {
            Ok(d0)
        } else if b == v {
            Ok(d1)
        } else {
            Err(EmbedError::UnknownEdge(e))
        }
    }

    fn reverse_rotation(&mut self, v: VertexId) {
        let rot = self.rotation_of(v);
        if rot.len() < 3 {
            return; // reversing a cycle of length <= 2 is the identity
        }
        for i in 0..rot.len() {
            let a = rot[i];
            let b = rot[(i + 1) % rot.len()];
            self.rot_next[b.idx()] = a;
            self.rot_prev[a.idx()] = b;
        }
    }

    /// Reverse the positions of the contiguous run `arc` (given in rotation
    /// order) within the rotation at `v`, keeping the rest fixed.
    fn reverse_arc_in_place(&mut self, v: VertexId, arc: &[DartId]) {
        if arc.len() < 2 || arc.len() == self.degree(v) {
            if arc.len() == self.degree(v) {
                self.reverse_rotation(v);
            }
            return;
        }
        let prev = self.rot_prev[arc[0].idx()];
        let next = self.rot_next[arc[arc.len() - 1].idx()];
        let mut cur = prev;
        for &d in arc.iter().rev() {
            self.rot_next[cur.idx()] = d;
            self.rot_prev[d.idx()] = cur;
            cur = d;
        }
        self.rot_next[cur.idx()] = next;
        self.rot_prev[next.idx()] = cur;
    }

    /// Mirror image: reverse every rotation. Components keep their embeddings
    /// up to reflection; the result is a distinct rotation system unless all
    /// rotations are symmetric.
    pub fn reflect_all(&mut self) {
        for v in 0..self.n as u32 {
            self.reverse_rotation(VertexId(v));
        }
        self.cache = None;
    }

    /// Articulation flip: remove a contiguous dart run at a vertex, optionally
    /// mirror the hanging subgraph, and reinsert the run at the target corner.
    /// The run must consist of whole hanging groups (otherwise the result
    /// would not be a plane embedding). Sliding a run back into its original
    /// wedge without reflection is the identity.
    pub fn articulation_flip(&mut self, flip: &FlipDescriptor) -> Result<FlipExecInfo, EmbedError> {
        let FlipDescriptor::Articulation { seg_start, seg_end, target, reflect } = flip else {
            return Err(EmbedError::InvalidSegment);
        };
        let (Corner::Wedge(sd), Corner::Wedge(ed)) = (*seg_start, *seg_end) else {
            return Err(EmbedError::InvalidSegment);
        };
        if !self.is_live_dart(sd) || !self.is_live_dart(ed) {
            return Err(EmbedError::InvalidSegment);
        }
        let a = self.origin(sd);
        if self.origin(ed) != a {
            return Err(EmbedError::InvalidSegment);
        }
        let Corner::Wedge(td) = *target else {
            return Err(EmbedError::InvalidTarget);
        };
        if !self.is_live_dart(td) || self.origin(td) != a {
            return Err(EmbedError::InvalidTarget);
        }
        let mut segment = self.arc(sd, ed);
        segment.push(ed);
        let full = segment.len() == self.degree(a);
        if !full && segment.contains(&td) {
            return Err(EmbedError::InvalidTarget);
        }
        // The run must cover whole hanging groups.
        let classes = self.articulation_classes(a);
        let seg_set: BTreeSet<DartId> = segment.iter().copied().collect();
        let mut moved_edges: Vec<EdgeId> = Vec::new();
        for cl in &classes {
            let inside = cl.darts_at_s.iter().filter(|d| seg_set.contains(d)).count();
            if inside == 0 {
                continue;
            }
            if inside != cl.darts_at_s.len() {
                return Err(EmbedError::InvalidSegment);
            }
            moved_edges.extend(cl.edges.iter().copied());
        }
        let mut interior: Vec<VertexId> = self
            .vertices_of_edges(&moved_edges)
            .into_iter()
            .filter(|&w| w != a)
            .collect();
        interior.sort();

        if full {
            // Empty remaining rotation: reinsert as the sole run. Only a
            // reflection changes the embedding.
            if *reflect {
                self.reverse_rotation(a);
                for &w in &interior {
                    self.reverse_rotation(w);
                }
                self.cache = None;
            }
            return Ok(FlipExecInfo { moved_interior: interior, sep_kind: None, clean: true });
        }

        // Detach the run.
        let prev = self.rot_prev[sd.idx()];
        let next = self.rot_next[ed.idx()];
        self.rot_next[prev.idx()] = next;
        self.rot_prev[next.idx()] = prev;
        if segment.contains(&self.some_dart[a.idx()].unwrap()) {
            self.some_dart[a.idx()] = Some(next);
        }
        let order: Vec<DartId> = if *reflect {
            segment.iter().rev().copied().collect()
        } else {
            segment.clone()
        };
        // Reinsert before the target dart.
        let tprev = self.rot_prev[td.idx()];
        let mut cur = tprev;
        for &d in &order {
            self.rot_next[cur.idx()] = d;
            self.rot_prev[d.idx()] = cur;
            cur = d;
        }
        self.rot_next[cur.idx()] = td;
        self.rot_prev[td.idx()] = cur;
        if *reflect {
            for &w in &interior {
                self.reverse_rotation(w);
            }
        }
        self.cache = None;
        Ok(FlipExecInfo { moved_interior: interior, sep_kind: None, clean: true })
    }

    /// Resolve the side of a separation cut selected by `sigma` without
    /// executing the flip. Fails with the same errors as `separation_flip`.
    pub fn separation_cut(&mut self, sigma: &[Corner; 4]) -> Result<SepCut, EmbedError> {
        let darts: Vec<DartId> = sigma
            .iter()
            .map(|c| match c {
                Corner::Wedge(d) if self.is_live_dart(*d) => Ok(*d),
                _ => Err(EmbedError::NotAFourCycle),
            })
            .collect::<Result<_, _>>()?;
        let (c0, c1, c2, c3) = (darts[0], darts[1], darts[2], darts[3]);
        let s = self.origin(c0);
        let t = self.origin(c1);
        if s == t || self.origin(c3) != s || self.origin(c2) != t {
            return Err(EmbedError::NotAFourCycle);
        }
        if self.face_of(c0) != self.face_of(c1) || self.face_of(c2) != self.face_of(c3) {
            return Err(EmbedError::NotAFourCycle);
        }
        if c0 == c3 {
            return Err(EmbedError::NotAFourCycle);
        }
        let arc_s = self.arc(c0, c3);
        let classes = self.st_classes(s, t);
        let arc_set: BTreeSet<DartId> = arc_s.iter().copied().collect();
        let mut side_ids = Vec::new();
        for (i, cl) in classes.iter().enumerate() {
            let inside = cl.darts_at_s.iter().filter(|d| arc_set.contains(d)).count();
            if inside == 0 {
                continue;
            }
            if inside != cl.darts_at_s.len() {
                return Err(EmbedError::NonContiguousCut);
            }
            side_ids.push(i);
        }
        if side_ids.is_empty() || side_ids.len() == classes.len() {
            return Err(EmbedError::NonContiguousCut);
        }
        let side_t: BTreeSet<DartId> = side_ids
            .iter()
            .flat_map(|&i| classes[i].darts_at_t.iter().copied())
            .collect();
        if side_t.is_empty() {
            return Err(EmbedError::NonContiguousCut);
        }
        // The side's darts at t must form one contiguous run delimited by the
        // wedges of the two t-corners.
        let arc_t_a = self.arc(c2, c1);
        let arc_t_b = self.arc(c1, c2);
        let set_a: BTreeSet<DartId> = arc_t_a.iter().copied().collect();
        let set_b: BTreeSet<DartId> = arc_t_b.iter().copied().collect();
        let arc_t = if side_t == set_a {
            arc_t_a
        } else if side_t == set_b {
            arc_t_b
        } else {
            return Err(EmbedError::NonContiguousCut);
        };
        let side_edges: Vec<EdgeId> = side_ids
            .iter()
            .flat_map(|&i| classes[i].edges.iter().copied())
            .collect();
        let mut interior: Vec<VertexId> = self
            .vertices_of_edges(&side_edges)
            .into_iter()
            .filter(|&w| w != s && w != t)
            .collect();
        interior.sort();
        let kind = if side_ids.len() >= 2 && classes.len() - side_ids.len() >= 2 {
            SepFlipKind::P
        } else {
            SepFlipKind::SR
        };
        Ok(SepCut {
            s,
            t,
            arc_s,
            arc_t,
            side_edges,
            interior,
            kind,
            side_classes: side_ids.len(),
            total_classes: classes.len(),
        })
    }

    /// Build the 4-corner descriptor for the separation cut at `{s,t}` whose
    /// flipped side has the dart arc `[first_s .. after_s)` at `s`. The cut
    /// must be valid in the current embedding.
    pub fn sigma_for_cut(
        &mut self,
        s: VertexId,
        t: VertexId,
        first_s: DartId,
        after_s: DartId,
    ) -> Result<[Corner; 4], EmbedError> {
        if first_s == after_s || self.origin(first_s) != s || self.origin(after_s) != s {
            return Err(EmbedError::NotAFourCycle);
        }
        let arc_s = self.arc(first_s, after_s);
        let classes = self.st_classes(s, t);
        let arc_set: BTreeSet<DartId> = arc_s.iter().copied().collect();
        let mut side_t: BTreeSet<DartId> = BTreeSet::new();
        for cl in &classes {
            let inside = cl.darts_at_s.iter().filter(|d| arc_set.contains(d)).count();
            if inside == 0 {
                continue;
            }
            if inside != cl.darts_at_s.len() {
                return Err(EmbedError::NonContiguousCut);
            }
            side_t.extend(cl.darts_at_t.iter().copied());
        }
        if side_t.is_empty() {
            return Err(EmbedError::NonContiguousCut);
        }
        // find the contiguous run of side darts at t
        let rot_t = self.rotation_of(t);
        if side_t.len() == rot_t.len() {
            return Err(EmbedError::NonContiguousCut);
        }
        let mut first_t = None;
        for &d in &rot_t {
            if side_t.contains(&d) && !side_t.contains(&self.rot_prev(d)) {
                if first_t.is_some() {
                    return Err(EmbedError::NonContiguousCut);
                }
                first_t = Some(d);
            }
        }
        let first_t = first_t.ok_or(EmbedError::NonContiguousCut)?;
        let mut after_t = first_t;
        while side_t.contains(&after_t) {
            after_t = self.rot_next(after_t);
        }
        // pair the t-corners with the s-corners by face
        let f_first_s = self.face_of(first_s);
        let (c1, c2) = if self.face_of(first_t) == f_first_s {
            (first_t, after_t)
        } else {
            (after_t, first_t)
        };
        Ok([
            Corner::Wedge(first_s),
            Corner::Wedge(c1),
            Corner::Wedge(c2),
            Corner::Wedge(after_s),
        ])
    }

    /// Separation flip: reflect the subgraph on one side of a vertex-face
    /// 4-cycle. The reflected side's darts are reversed in place at both cut
    /// vertices and all interior rotations are mirrored. Applying the same
    /// descriptor to a cut with symmetric arcs twice is the identity.
    pub fn separation_flip(&mut self, flip: &FlipDescriptor) -> Result<FlipExecInfo, EmbedError> {
        let FlipDescriptor::Separation { sigma } = flip else {
            return Err(EmbedError::NotAFourCycle);
        };
        let cut = self.separation_cut(sigma)?;
        let mut boundary = vec![cut.arc_s[0], *cut.arc_s.last().unwrap(), cut.arc_t[0], *cut.arc_t.last().unwrap()];
        boundary.sort();
        boundary.dedup();
        let clean = boundary.iter().all(|d| !self.is_bridge(d.edge()));
        self.reverse_arc_in_place(cut.s, &cut.arc_s);
        self.reverse_arc_in_place(cut.t, &cut.arc_t);
        for &w in &cut.interior {
            self.reverse_rotation(w);
        }
        self.cache = None;
        Ok(FlipExecInfo {
            moved_interior: cut.interior,
            sep_kind: Some(cut.kind),
            clean,
        })
    }

    /// Check all structural invariants and the per-component Euler formula.
    pub fn validate(&mut self) -> ValidationReport {
        let mut report = ValidationReport::default();
        let mut live_darts = Vec::new();
        for e in 0..self.edges.len() {
            if let Some(slot) = &self.edges[e] {
                if slot.u == slot.v {
                    report.violations.push(Violation::TwinNotInvolution(DartId(2 * e as u32)));
                }
                live_darts.push(DartId(2 * e as u32));
                live_darts.push(DartId(2 * e as u32 + 1));
            }
        }
        // Per-vertex rotation orbits.
        let mut seen: BTreeSet<DartId> = BTreeSet::new();
        for v in 0..self.n {
            let v = VertexId(v as u32);
            let mut count = 0usize;
            if let Some(d0) = self.some_dart[v.idx()] {
                let mut d = d0;
                loop {
                    if !self.is_live_dart(d) || self.origin(d) != v {
                        report.violations.push(Violation::DanglingDart(d));
                        break;
                    }
                    if !seen.insert(d) {
                        report.violations.push(Violation::RotationNotCyclic(v));
                        break;
                    }
                    if self.rot_prev[self.rot_next[d.idx()].idx()] != d {
                        report.violations.push(Violation::RotationNotCyclic(v));
                        break;
                    }
                    count += 1;
                    if count > self.degree(v) {
                        report.violations.push(Violation::RotationNotCyclic(v));
                        break;
                    }
                    d = self.rot_next[d.idx()];
                    if d == d0 {
                        break;
                    }
                }
            }
            if count != self.degree(v) {
                report.violations.push(Violation::RotationNotCyclic(v));
            }
        }
        for &d in &live_darts {
            if !seen.contains(&d) {
                report.violations.push(Violation::DanglingDart(d));
            }
        }
        if !report.is_ok() {
            return report;
        }
        // Euler per component.
        self.cache = None;
        self.ensure_cache();
        let cache = self.cache.as_ref().unwrap();
        let mut v_count: BTreeMap<VertexId, usize> = BTreeMap::new();
        let mut e_count: BTreeMap<VertexId, usize> = BTreeMap::new();
        let mut f_count: BTreeMap<VertexId, usize> = BTreeMap::new();
        for v in 0..self.n {
            *v_count.entry(cache.comp_of[v]).or_insert(0) += 1;
        }
        let edge_ids: Vec<EdgeId> = self.edge_ids().collect();
        for e in edge_ids {
            let (u, _) = self.endpoints(e).unwrap();
            *e_count.entry(cache.comp_of[u.idx()]).or_insert(0) += 1;
        }
        let faces = cache.faces.clone();
        for f in faces {
            let rep = match f {
                FaceId::IsolatedVertex(v) => self.cache.as_ref().unwrap().comp_of[v.idx()],
                FaceId::Dart(d) => {
                    let o = self.origin(d);
                    self.cache.as_ref().unwrap().comp_of[o.idx()]
                }
            };
            *f_count.entry(rep).or_insert(0) += 1;
        }
        for (&comp, &v) in &v_count {
            let e = e_count.get(&comp).copied().unwrap_or(0);
            let f = f_count.get(&comp).copied().unwrap_or(0);
            if v + f != e + 2 {
                report.violations.push(Violation::EulerFormula { component: comp, v, e, f });
            }
        }
        report
    }

    // ----- debug serialization -----

    /// Stable textual dart name `from>to#copy`, as used by the rotation dump.
    pub fn dart_label(&self, d: DartId) -> String {
        self.dart_name(d)
    }

    fn dart_name(&self, d: DartId) -> String {
        let e = d.edge();
        let (u, v) = self.endpoints(e).unwrap();
        let (from, to) = if d.0 % 2 == 0 { (u, v) } else { (v, u) };
        let (lo, hi) = if u < v { (u, v) } else { (v, u) };
        let copy = self
            .edge_ids()
            .filter(|&other| {
                let (a, b) = self.endpoints(other).unwrap();
                let (a, b) = if a < b { (a, b) } else { (b, a) };
                (a, b) == (lo, hi) && other < e
            })
            .count();
        format!("{}>{}#{}", from, to, copy)
    }

    fn dart_sort_key(&self, d: DartId) -> (u32, usize) {
        let to = self.dart_target(d);
        let e = d.edge();
        let (u, v) = self.endpoints(e).unwrap();
        let (lo, hi) = if u < v { (u, v) } else { (v, u) };
        let copy = self
            .edge_ids()
            .filter(|&other| {
                let (a, b) = self.endpoints(other).unwrap();
                let (a, b) = if a < b { (a, b) } else { (b, a) };
                (a, b) == (lo, hi) && other < e
            })
            .count();
        (to.0, copy)
    }

    /// Parse the one-line-per-vertex rotation dump produced by `Display`.
    pub fn parse(text: &str) -> Result<EmbeddedGraph, RotationParseError> {
        let mut rotations: Vec<Vec<(u32, u32, u32)>> = Vec::new();
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            let (head, rest) = line
                .split_once(':')
                .ok_or_else(|| RotationParseError(format!("line {}: missing ':'", lineno + 1)))?;
            let v: u32 = head
                .trim()
                .parse()
                .map_err(|_| RotationParseError(format!("line {}: bad vertex", lineno + 1)))?;
            if v as usize != rotations.len() {
                return Err(RotationParseError(format!(
                    "line {}: expected vertex {}",
                    lineno + 1,
                    rotations.len()
                )));
            }
            let mut rot = Vec::new();
            for tok in rest.split_whitespace() {
                let (from_to, copy) = tok
                    .split_once('#')
                    .ok_or_else(|| RotationParseError(format!("line {}: bad dart '{}'", lineno + 1, tok)))?;
                let (from, to) = from_to
                    .split_once('>')
                    .ok_or_else(|| RotationParseError(format!("line {}: bad dart '{}'", lineno + 1, tok)))?;
                let from: u32 = from
                    .parse()
                    .map_err(|_| RotationParseError(format!("line {}: bad dart '{}'", lineno + 1, tok)))?;
                let to: u32 = to
                    .parse()
                    .map_err(|_| RotationParseError(format!("line {}: bad dart '{}'", lineno + 1, tok)))?;
                let copy: u32 = copy
                    .parse()
                    .map_err(|_| RotationParseError(format!("line {}: bad dart '{}'", lineno + 1, tok)))?;
                if from != v {
                    return Err(RotationParseError(format!(
                        "line {}: dart '{}' does not originate at {}",
                        lineno + 1,
                        tok,
                        v
                    )));
                }
                rot.push((from, to, copy));
            }
            rotations.push(rot);
        }
        let n = rotations.len();
        let lists: Vec<Vec<(VertexId, u32)>> = rotations
            .into_iter()
            .map(|rot| rot.into_iter().map(|(_, to, copy)| (VertexId(to), copy)).collect())
            .collect();
        EmbeddedGraph::from_rotation_lists(n, &lists)
    }

    /// Number of dart slots ever allocated (live darts have smaller ids).
    pub fn dart_capacity(&self) -> usize {
        self.rot_next.len()
    }

    /// Identity of the rotation system independent of edge-slot numbering:
    /// per vertex, the cyclic list of `(target, parallel copy)` rotated to
    /// its lexicographically smallest start, flattened with `u32::MAX` as the
    /// vertex separator. Entries pack as `target * 64 + copy`.
    pub fn rotation_key(&self) -> Vec<u32> {
        let mut out = Vec::new();
        for v in 0..self.n as u32 {
            let v = VertexId(v);
            let rot = self.rotation_of(v);
            let items: Vec<u32> = rot
                .iter()
                .map(|&d| {
                    let (to, copy) = self.dart_sort_key(d);
                    debug_assert!(copy < 64);
                    to * 64 + copy as u32
                })
                .collect();
            let k = items.len();
            if k > 0 {
                let mut start = 0usize;
                for i in 1..k {
                    for j in 0..k {
                        let a = items[(i + j) % k];
                        let b = items[(start + j) % k];
                        if a != b {
                            if a < b {
                                start = i;
                            }
                            break;
                        }
                    }
                }
                out.extend((0..k).map(|j| items[(start + j) % k]));
            }
            out.push(u32::MAX);
        }
        out
    }

    /// Build a graph from explicit per-vertex rotation lists. Entry `(w, c)`
    /// in the list of `v` is the dart from `v` to `w` along the `c`-th
    /// parallel copy of `{v,w}`; each copy must appear exactly once per side.
    pub fn from_rotation_lists(
        n: usize,
        rots: &[Vec<(VertexId, u32)>],
    ) -> Result<EmbeddedGraph, RotationParseError> {
        if rots.len() > n {
            return Err(RotationParseError("more rotation lists than vertices".into()));
        }
        let mut g = EmbeddedGraph::new(n);
        let mut edge_of: BTreeMap<(u32, u32, u32), EdgeId> = BTreeMap::new();
        let mut assigned: Vec<Vec<DartId>> = vec![Vec::new(); n];
        for (v, rot) in rots.iter().enumerate() {
            let v = v as u32;
            for &(w, copy) in rot {
                if w.idx() >= n {
                    return Err(RotationParseError(format!("target {} out of range", w)));
                }
                if w.0 == v {
                    return Err(RotationParseError("self-loop in rotation list".into()));
                }
                let key = (v.min(w.0), v.max(w.0), copy);
                let e = *edge_of
                    .entry(key)
                    .or_insert_with(|| g.alloc_edge(VertexId(key.0), VertexId(key.1)));
                let (u, _) = g.endpoints(e).unwrap();
                let d = if u.0 == v { e.darts()[0] } else { e.darts()[1] };
                assigned[v as usize].push(d);
            }
        }
        let mut seen: BTreeSet<DartId> = BTreeSet::new();
        for v in 0..n {
            let rot = &assigned[v];
            for &d in rot {
                if !seen.insert(d) {
                    return Err(RotationParseError("dart listed twice".into()));
                }
            }
            if rot.is_empty() {
                continue;
            }
            for i in 0..rot.len() {
                let a = rot[i];
                let b = rot[(i + 1) % rot.len()];
                g.rot_next[a.idx()] = b;
                g.rot_prev[b.idx()] = a;
            }
            g.some_dart[v] = Some(rot[0]);
            g.degree[v] = rot.len() as u32;
        }
        if seen.len() != 2 * edge_of.len() {
            return Err(RotationParseError("some edge is missing a dart".into()));
        }
        Ok(g)
    }
}

/// One `{s,t}`-separation class (or one hanging group at an articulation
/// point): its edges and its darts at the cut vertices in rotation order.
#[derive(Clone, Debug)]
pub struct StClass {
    pub edges: Vec<EdgeId>,
    pub darts_at_s: Vec<DartId>,
    pub darts_at_t: Vec<DartId>,
}

/// Resolved separation cut: the side selected by the descriptor.
#[derive(Clone, Debug)]
pub struct SepCut {
    pub s: VertexId,
    pub t: VertexId,
    pub arc_s: Vec<DartId>,
    pub arc_t: Vec<DartId>,
    pub side_edges: Vec<EdgeId>,
    pub interior: Vec<VertexId>,
    pub kind: SepFlipKind,
    pub side_classes: usize,
    pub total_classes: usize,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("rotation dump parse error: {0}")]
pub struct RotationParseError(pub String);

#[cfg(test)]
mod tests {
    use super::*;

    fn tri() -> EmbeddedGraph {
        let mut g = EmbeddedGraph::new(3);
        let v = |i| VertexId(i);
        g.insert_edge_at(Corner::Isolated(v(0)), Corner::Isolated(v(1))).unwrap();
        g.insert_edge_at(g.corner_at(v(1)), Corner::Isolated(v(2))).unwrap();
        let c2 = g.corner_at(v(2));
        let c0 = g.corner_at(v(0));
        g.insert_edge_at(c0, c2).unwrap();
        g
    }

    #[test]
    fn empty_and_isolated() {
        let mut g = EmbeddedGraph::new(0);
        assert!(g.validate().is_ok());
        let mut g = EmbeddedGraph::new(3);
        assert!(g.validate().is_ok());
        assert_eq!(g.faces().len(), 3);
        let c = g.comp_of(VertexId(2));
        assert_eq!(c, VertexId(2));
    }

    #[test]
    fn triangle_euler() {
        let mut g = tri();
        assert!(g.validate().is_ok());
        assert_eq!(g.faces().len(), 2);
        assert!(g.same_component(VertexId(0), VertexId(2)));
        let walk = g.face_walk(g.corner_at(VertexId(0))).unwrap();
        assert_eq!(walk.len(), 3);
    }

    #[test]
    fn chord_split_and_roundtrip() {
        // C4 plus chord: inner face splits, F goes 2 -> 3; deleting the chord
        // restores the exact prior rotation system.
        let mut g = EmbeddedGraph::new(4);
        let v = |i| VertexId(i);
        g.insert_edge_at(Corner::Isolated(v(0)), Corner::Isolated(v(1))).unwrap();
        g.insert_edge_at(g.corner_at(v(1)), Corner::Isolated(v(2))).unwrap();
        g.insert_edge_at(g.corner_at(v(2)), Corner::Isolated(v(3))).unwrap();
        let (c3, c0) = (g.corner_at(v(3)), g.corner_at(v(0)));
        g.insert_edge_at(c3, c0).unwrap();
        assert_eq!(g.faces().len(), 2);
        let before = g.to_string();
        // find cofacial corners of 0 and 2
        let f = g.faces();
        let mut picked = None;
        for face in f {
            let cs0 = g.corners_of_vertex_on_face(v(0), face);
            let cs2 = g.corners_of_vertex_on_face(v(2), face);
            if !cs0.is_empty() && !cs2.is_empty() {
                picked = Some((cs0[0], cs2[0]));
                break;
            }
        }
        let (a, b) = picked.unwrap();
        let e = g.insert_edge_at(a, b).unwrap();
        assert!(g.validate().is_ok());
        assert_eq!(g.faces().len(), 3);
        g.delete_edge(e).unwrap();
        assert!(g.validate().is_ok());
        assert_eq!(g.faces().len(), 2);
        assert_eq!(g.to_string(), before);
    }

    #[test]
    fn same_face_violation_and_self_loop() {
        let mut g = tri();
        let v = |i| VertexId(i);
        let c0 = g.corner_at(v(0));
        assert_eq!(g.insert_edge_at(c0, c0), Err(EmbedError::SelfLoop));
        // corners of 0 and 1 on the two different faces of the triangle
        let faces = g.faces();
        let c0 = g.corners_of_vertex_on_face(v(0), faces[0])[0];
        let c1 = g.corners_of_vertex_on_face(v(1), faces[1])[0];
        assert_eq!(g.insert_edge_at(c0, c1), Err(EmbedError::SameFaceViolation));
    }

    #[test]
    fn bridge_insertion_merges_components() {
        // two disjoint triangles, insert a bridge: F goes 2+2 -> 3
        let mut g = EmbeddedGraph::new(6);
        let v = |i| VertexId(i);
        for base in [0u32, 3] {
            g.insert_edge_at(Corner::Isolated(v(base)), Corner::Isolated(v(base + 1))).unwrap();
            g.insert_edge_at(g.corner_at(v(base + 1)), Corner::Isolated(v(base + 2))).unwrap();
            let (ca, cb) = (g.corner_at(v(base)), g.corner_at(v(base + 2)));
            g.insert_edge_at(ca, cb).unwrap();
        }
        assert_eq!(g.faces().len(), 4);
        let (c0, c3) = (g.corner_at(v(0)), g.corner_at(v(3)));
        g.insert_edge_at(c0, c3).unwrap();
        assert!(g.validate().is_ok());
        assert_eq!(g.faces().len(), 3);
        assert!(g.same_component(v(0), v(5)));
    }

    #[test]
    fn bridge_deletion_splits() {
        let mut g = EmbeddedGraph::new(3);
        let v = |i| VertexId(i);
        g.insert_edge_at(Corner::Isolated(v(0)), Corner::Isolated(v(1))).unwrap();
        let e = g.insert_edge_at(g.corner_at(v(1)), Corner::Isolated(v(2))).unwrap();
        g.delete_edge(e).unwrap();
        assert!(g.validate().is_ok());
        assert!(!g.same_component(v(1), v(2)));
        assert_eq!(g.delete_edge(e), Err(EmbedError::UnknownEdge(e)));
    }

    #[test]
    fn k5_fails_euler() {
        // no rotation system of K5 is plane
        let mut rots: Vec<Vec<(VertexId, u32)>> = Vec::new();
        for v in 0..5u32 {
            rots.push((0..5).filter(|&w| w != v).map(|w| (VertexId(w), 0)).collect());
        }
        let mut g = EmbeddedGraph::from_rotation_lists(5, &rots).unwrap();
        let report = g.validate();
        assert!(report
            .violations
            .iter()
            .any(|x| matches!(x, Violation::EulerFormula { .. })));
    }

    #[test]
    fn corrupt_twin_reported() {
        let mut g = tri();
        g.edges.push(Some(EdgeSlot { u: VertexId(0), v: VertexId(0) }));
        g.rot_next.extend([DartId(0), DartId(0)]);
        g.rot_prev.extend([DartId(0), DartId(0)]);
        let report = g.validate();
        assert!(report
            .violations
            .iter()
            .any(|x| matches!(x, Violation::TwinNotInvolution(_))));
    }

    #[test]
    fn dump_roundtrip() {
        let mut g = tri();
        let text = g.to_string();
        let mut g2 = EmbeddedGraph::parse(&text).unwrap();
        assert_eq!(g2.to_string(), text);
        assert!(g2.validate().is_ok());
        // parallel edges survive the dump
        let mut h = EmbeddedGraph::new(2);
        h.insert_edge_at(Corner::Isolated(VertexId(0)), Corner::Isolated(VertexId(1))).unwrap();
        let c0 = h.corner_at(VertexId(0));
        let c1 = h.corner_at(VertexId(1));
        h.insert_edge_at(c0, c1).unwrap();
        let text = h.to_string();
        let h2 = EmbeddedGraph::parse(&text).unwrap();
        assert_eq!(h2.to_string(), text);
    }

    fn k2_4() -> EmbeddedGraph {
        // hubs 0,1; spoke paths via 2..5; rotation at 1 reversed
        let v = |i| VertexId(i);
        let mut rots: Vec<Vec<(VertexId, u32)>> = vec![
            vec![(v(2), 0), (v(3), 0), (v(4), 0), (v(5), 0)],
            vec![(v(5), 0), (v(4), 0), (v(3), 0), (v(2), 0)],
        ];
        for _ in 2..6u32 {
            rots.push(vec![(v(0), 0), (v(1), 0)]);
        }
        EmbeddedGraph::from_rotation_lists(6, &rots).unwrap()
    }

    fn cofacial(g: &mut EmbeddedGraph, a: VertexId, b: VertexId) -> bool {
        let faces = g.faces();
        faces
            .iter()
            .any(|&f| g.face_has_vertex(f, a) && g.face_has_vertex(f, b))
    }

    #[test]
    fn separation_flip_brings_spokes_together() {
        let mut g = k2_4();
        assert!(g.validate().is_ok());
        let original = g.to_string();
        assert!(!cofacial(&mut g, VertexId(2), VertexId(4)));
        // flip the side holding the paths via 3 and 4
        let s = VertexId(0);
        let d_to_3 = g.rotation_of(s)[1];
        let d_to_5 = g.rotation_of(s)[3];
        let sigma = g.sigma_for_cut(s, VertexId(1), d_to_3, d_to_5).unwrap();
        let info = g
            .separation_flip(&FlipDescriptor::Separation { sigma })
            .unwrap();
        assert!(g.validate().is_ok());
        assert_eq!(info.sep_kind, Some(SepFlipKind::P));
        assert!(info.clean);
        assert!(cofacial(&mut g, VertexId(2), VertexId(4)));
        // flipping the same side back (descriptor re-derived after the arc
        // reversal) restores the embedding exactly
        let d_first = g.rotation_of(s)[1];
        let sigma2 = g.sigma_for_cut(s, VertexId(1), d_first, d_to_5).unwrap();
        g.separation_flip(&FlipDescriptor::Separation { sigma: sigma2 }).unwrap();
        assert!(!cofacial(&mut g, VertexId(2), VertexId(4)));
        assert_eq!(g.to_string(), original);
    }

    #[test]
    fn separation_flip_single_edge_arc_is_identity() {
        let mut g = k2_4();
        let before = g.to_string();
        let s = VertexId(0);
        let d2 = g.rotation_of(s)[0];
        let d3 = g.rotation_of(s)[1];
        let sigma = g.sigma_for_cut(s, VertexId(1), d2, d3).unwrap();
        g.separation_flip(&FlipDescriptor::Separation { sigma }).unwrap();
        // interior vertex has degree 2: mirroring it changes nothing
        assert_eq!(g.to_string(), before);
    }

    #[test]
    fn separation_flip_same_sigma_twice_identity() {
        // C4 through s=0,a=1,t=2,b=3 plus a pendant at 1: reflecting the
        // a-side twice with the same descriptor is the identity.
        let v = |i| VertexId(i);
        let rots: Vec<Vec<(VertexId, u32)>> = vec![
            vec![(v(1), 0), (v(3), 0)],
            vec![(v(0), 0), (v(4), 0), (v(2), 0)],
            vec![(v(1), 0), (v(3), 0)],
            vec![(v(2), 0), (v(0), 0)],
            vec![(v(1), 0)],
        ];
        let mut g = EmbeddedGraph::from_rotation_lists(5, &rots).unwrap();
        assert!(g.validate().is_ok());
        let before = g.to_string();
        let d_to_1 = g.rotation_of(v(0))[0];
        let d_to_3 = g.rotation_of(v(0))[1];
        let sigma = g.sigma_for_cut(v(0), v(2), d_to_1, d_to_3).unwrap();
        let flip = FlipDescriptor::Separation { sigma };
        let info = g.separation_flip(&flip).unwrap();
        assert_eq!(info.sep_kind, Some(SepFlipKind::SR));
        assert_eq!(info.moved_interior, vec![v(1), v(4)]);
        assert!(g.validate().is_ok());
        assert_ne!(g.to_string(), before);
        g.separation_flip(&flip).unwrap();
        assert_eq!(g.to_string(), before);
    }

    #[test]
    fn separation_flip_rejects_bad_corners() {
        let mut g = k2_4();
        let c = g.corner_at(VertexId(2));
        let sigma = [c, c, c, c];
        assert_eq!(
            g.separation_flip(&FlipDescriptor::Separation { sigma }).unwrap_err(),
            EmbedError::NotAFourCycle
        );
    }

    fn bowtie_nested() -> EmbeddedGraph {
        // triangles (0,1,2) and (0,3,4); the second sits inside the inner
        // face of the first
        let v = |i| VertexId(i);
        let rots: Vec<Vec<(VertexId, u32)>> = vec![
            vec![(v(1), 0), (v(3), 0), (v(4), 0), (v(2), 0)],
            vec![(v(2), 0), (v(0), 0)],
            vec![(v(0), 0), (v(1), 0)],
            vec![(v(4), 0), (v(0), 0)],
            vec![(v(0), 0), (v(3), 0)],
        ];
        EmbeddedGraph::from_rotation_lists(5, &rots).unwrap()
    }

    #[test]
    fn articulation_slide_moves_hanging_triangle() {
        let mut g = bowtie_nested();
        assert!(g.validate().is_ok());
        let before_faces = g.faces().len();
        // outer face walk of a bowtie has 6 corners, the center twice
        let lens: Vec<usize> = g
            .faces()
            .iter()
            .map(|&f| g.face_darts(f).len())
            .collect();
        assert!(lens.contains(&6));
        let v = |i| VertexId(i);
        let rot0 = g.rotation_of(v(0)); // [->1, ->3, ->4, ->2]
        let seg = FlipDescriptor::Articulation {
            seg_start: Corner::Wedge(rot0[1]),
            seg_end: Corner::Wedge(rot0[2]),
            target: Corner::Wedge(rot0[0]),
            reflect: false,
        };
        let info = g.articulation_flip(&seg).unwrap();
        assert!(g.validate().is_ok());
        assert_eq!(info.moved_interior, vec![v(3), v(4)]);
        assert!(info.clean);
        assert_eq!(g.faces().len(), before_faces);
        // identity slide: reinsert at the original position
        let before = g.to_string();
        let rot0 = g.rotation_of(v(0));
        let i3 = rot0.iter().position(|&d| g.dart_target(d) == v(3)).unwrap();
        let seg = FlipDescriptor::Articulation {
            seg_start: Corner::Wedge(rot0[i3]),
            seg_end: Corner::Wedge(rot0[(i3 + 1) % 4]),
            target: Corner::Wedge(rot0[(i3 + 2) % 4]),
            reflect: false,
        };
        g.articulation_flip(&seg).unwrap();
        assert_eq!(g.to_string(), before);
    }

    #[test]
    fn articulation_reflect_in_place_keeps_faces() {
        let mut g = bowtie_nested();
        let v = |i| VertexId(i);
        let mut lens_before: Vec<usize> =
            g.faces().iter().map(|&f| g.face_darts(f).len()).collect();
        lens_before.sort();
        let rot0 = g.rotation_of(v(0));
        let seg = FlipDescriptor::Articulation {
            seg_start: Corner::Wedge(rot0[1]),
            seg_end: Corner::Wedge(rot0[2]),
            target: Corner::Wedge(rot0[3]),
            reflect: true,
        };
        g.articulation_flip(&seg).unwrap();
        assert!(g.validate().is_ok());
        let mut lens_after: Vec<usize> =
            g.faces().iter().map(|&f| g.face_darts(f).len()).collect();
        lens_after.sort();
        assert_eq!(lens_before, lens_after);
    }

    #[test]
    fn articulation_flip_rejects_partial_class() {
        let mut g = bowtie_nested();
        let rot0 = g.rotation_of(VertexId(0));
        // [->1, ->3] cuts through both triangles
        let seg = FlipDescriptor::Articulation {
            seg_start: Corner::Wedge(rot0[0]),
            seg_end: Corner::Wedge(rot0[1]),
            target: Corner::Wedge(rot0[3]),
            reflect: false,
        };
        assert_eq!(g.articulation_flip(&seg).unwrap_err(), EmbedError::InvalidSegment);
        // target inside the segment
        let seg = FlipDescriptor::Articulation {
            seg_start: Corner::Wedge(rot0[1]),
            seg_end: Corner::Wedge(rot0[2]),
            target: Corner::Wedge(rot0[2]),
            reflect: false,
        };
        assert_eq!(g.articulation_flip(&seg).unwrap_err(), EmbedError::InvalidTarget);
    }
}

impl fmt::Display for EmbeddedGraph {
    /// One line per vertex: `v: d1 d2 ... dk` with darts named `u>v#copy`,
    /// listed in rotation order starting from the smallest-named dart.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for v in 0..self.n {
            let v = VertexId(v as u32);
            let rot = self.rotation_of(v);
            write!(f, "{}:", v)?;
            if !rot.is_empty() {
                let start = (0..rot.len())
                    .min_by_key(|&i| self.dart_sort_key(rot[i]))
                    .unwrap();
                for i in 0..rot.len() {
                    let d = rot[(start + i) % rot.len()];
                    write!(f, " {}", self.dart_name(d))?;
                }
            }
            writeln!(f)?;
        }
        Ok(())
    }
}
