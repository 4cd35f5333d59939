//! Greedy flip finding: given two vertices of one component, perform the
//! critical flips that bring them onto a common face, or decide that no
//! plane embedding of the graph admits the edge.
//!
//! The search sweeps the block path between the endpoints. Inside a block it
//! repeatedly executes a maximal separation flip freeing the endpoint-side
//! subgraph (sizes strictly increase, so a non-increase certifies that the
//! insertion is impossible); between blocks it needs at most one articulation
//! flip per cut vertex. All queries run on the tree-cotree index.

use crate::decomposition::{bc_tree, BcNodeKind};
use crate::embedding::{EmbeddedGraph, EmbedError, FlipDescriptor, SepFlipKind};
use crate::ids::{Corner, DartId, EdgeId, FaceId, VertexId};
use crate::static_oracle::EdgeListGraph;
use crate::treecotree::{CycleHandle, End, TreeCotreeIndex, TreeError};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SearchError {
    #[error("flip budget exceeded (algorithmic bug guard)")]
    FlipBudgetExceeded,
    #[error(transparent)]
    Tree(#[from] TreeError),
    #[error(transparent)]
    Embed(#[from] EmbedError),
}

/// Candidate found by `find_single_flip_candidates`: a pair of faces, a
/// fundamental cycle, and the extreme-index cycle edges near each endpoint.
#[derive(Clone, Copy, Debug)]
pub struct CandidateTuple {
    pub f_u: FaceId,
    pub f_v: FaceId,
    pub cycle: CycleHandle,
    pub e_u: EdgeId,
    pub e_v: EdgeId,
}

/// Size and corners of a proposed separation flip; `size == 0` iff no valid
/// flip was found.
#[derive(Clone, Debug)]
pub struct SepFlipResult {
    pub size: usize,
    pub sigma: Option<[Corner; 4]>,
}

impl SepFlipResult {
    pub fn none() -> Self {
        SepFlipResult { size: 0, sigma: None }
    }

    fn max(self, other: SepFlipResult) -> SepFlipResult {
        if other.size > self.size {
            other
        } else {
            self
        }
    }
}

/// Classification of an executed flip for the counters and the flip log.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum ExecKind {
    Articulation,
    SR,
    P,
}

/// One executed flip, machine-readable.
#[derive(Clone, Debug)]
pub struct ExecutedFlip {
    pub descriptor: FlipDescriptor,
    pub kind: ExecKind,
    pub clean: bool,
    /// Vertices strictly inside the flipped subgraph (captured when
    /// instrumentation is on).
    pub moved_interior: Option<Vec<VertexId>>,
}

/// Mutable search context over one embedding and its index.
pub struct FlipEngine<'a> {
    pub g: &'a mut EmbeddedGraph,
    pub idx: &'a TreeCotreeIndex,
    pub executed: Vec<ExecutedFlip>,
    pub budget: usize,
    pub instrument: bool,
}

impl<'a> FlipEngine<'a> {
    pub fn new(g: &'a mut EmbeddedGraph, idx: &'a TreeCotreeIndex, budget: usize, instrument: bool) -> Self {
        FlipEngine { g, idx, executed: Vec::new(), budget, instrument }
    }

    fn exec_sep(&mut self, sigma: [Corner; 4]) -> Result<(), SearchError> {
        if self.executed.len() >= self.budget {
            return Err(SearchError::FlipBudgetExceeded);
        }
        let desc = FlipDescriptor::Separation { sigma };
        let info = self.g.separation_flip(&desc)?;
        self.executed.push(ExecutedFlip {
            descriptor: desc,
            kind: match info.sep_kind.unwrap() {
                SepFlipKind::P => ExecKind::P,
                SepFlipKind::SR => ExecKind::SR,
            },
            clean: info.clean,
            moved_interior: self.instrument.then_some(info.moved_interior),
        });
        Ok(())
    }

    fn exec_art(&mut self, seg_start: Corner, seg_end: Corner, target: Corner) -> Result<(), SearchError> {
        if self.executed.len() >= self.budget {
            return Err(SearchError::FlipBudgetExceeded);
        }
        let desc = FlipDescriptor::Articulation { seg_start, seg_end, target, reflect: false };
        let info = self.g.articulation_flip(&desc)?;
        self.executed.push(ExecutedFlip {
            descriptor: desc,
            kind: ExecKind::Articulation,
            clean: info.clean,
            moved_interior: self.instrument.then_some(info.moved_interior),
        });
        Ok(())
    }

    // ----- bounding faces and articulation sweep -----

    /// First face on the dual corner-to-corner path `u .. v` touching the
    /// articulation point `a` on both sides, with the first corners of `a`
    /// on that face on either side of the path.
    pub fn find_bounding_face(
        &mut self,
        u: VertexId,
        a: VertexId,
        v: VertexId,
    ) -> Result<(FaceId, Corner, Corner), SearchError> {
        let cu = self.g.corner_at(u);
        let cv = self.g.corner_at(v);
        let steps = self.idx.dual_corner_path(self.g, cu, cv)?;
        for step in &steps {
            let l = step.left.iter().copied().find(|&d| self.g.origin(d) == a);
            let r = step.right.iter().copied().find(|&d| self.g.origin(d) == a);
            if let (Some(l), Some(r)) = (l, r) {
                return Ok((step.face, Corner::Wedge(l), Corner::Wedge(r)));
            }
        }
        Err(SearchError::Tree(TreeError::NoSuchFace))
    }

    /// Last articulation point `a_j` on `u .. v` such that `u` and `a_j`
    /// still share a face containing an edge of the next block, or `v` when
    /// the endpoints already share a face.
    pub fn find_next_flip_block(
        &mut self,
        u: VertexId,
        _u_prime: VertexId,
        v_prime: VertexId,
        v: VertexId,
    ) -> Result<VertexId, SearchError> {
        if v_prime != v {
            let (f_u, _, _) = self.find_bounding_face(u, v_prime, v)?;
            let (f_v, _, _) = self.find_bounding_face(v, v_prime, u)?;
            if f_u == f_v {
                if self.g.face_has_vertex(f_u, v) {
                    return Ok(v);
                }
                // last internal vertex of the primal path touching f_u on
                // both sides
                let cu = self.g.corner_at(u);
                let cv = self.g.corner_at(v);
                let steps = self.idx.primal_corner_path(self.g, cu, cv)?;
                let mut hit = None;
                for step in steps.iter().take(steps.len().saturating_sub(1)).skip(1) {
                    let l = step.left.iter().any(|&d| self.g.face_of(d) == f_u);
                    let r = step.right.iter().any(|&d| self.g.face_of(d) == f_u);
                    if l && r {
                        hit = Some(step.vertex);
                    }
                }
                if let Some(a) = hit {
                    return Ok(a);
                }
            }
        }
        Ok(v_prime)
    }

    /// Move the dart run of `a` between the wedges `c1`,`c2` that contains
    /// `marker`'s hanging group to the target corner.
    fn flip_segment_between(
        &mut self,
        a: VertexId,
        c1: Corner,
        c2: Corner,
        target: Corner,
        marker: VertexId,
    ) -> Result<(), SearchError> {
        let (Corner::Wedge(d1), Corner::Wedge(d2)) = (c1, c2) else {
            return Err(SearchError::Embed(EmbedError::InvalidSegment));
        };
        let arc1 = self.g.rotation_arc(d1, d2);
        let classes = self.g.articulation_classes(a);
        let side_has_marker = |arc: &[DartId], g: &EmbeddedGraph| {
            classes
                .iter()
                .filter(|cl| cl.darts_at_s.iter().any(|d| arc.contains(d)))
                .any(|cl| {
                    cl.edges.iter().any(|&e| {
                        let (x, y) = g.endpoints(e).unwrap();
                        x == marker || y == marker
                    })
                })
        };
        let segment = if side_has_marker(&arc1, self.g) {
            arc1
        } else {
            self.g.rotation_arc(d2, d1)
        };
        let seg_start = Corner::Wedge(segment[0]);
        let seg_end = Corner::Wedge(*segment.last().unwrap());
        self.exec_art(seg_start, seg_end, target)
    }

    /// At most one articulation flip at each of `u_prime` and `v_prime`,
    /// after which `u` shares a face with `v_prime` (and, beyond it, with an
    /// edge of the following block).
    pub fn do_articulation_flips(
        &mut self,
        u: VertexId,
        u_prime: VertexId,
        v_prime: VertexId,
        v: VertexId,
    ) -> Result<(), SearchError> {
        if u == u_prime {
            if v_prime == v {
                return Ok(()); // nothing to do
            }
            let (f_v, c1, c2) = self.find_bounding_face(v, v_prime, u)?;
            if !self.g.face_has_vertex(f_v, u_prime) {
                let link = self.idx.linkable(self.g, u_prime, v_prime)?;
                let (_, cv) = link.ok_or(TreeError::NoSuchFace)?;
                self.flip_segment_between(v_prime, c1, c2, cv, v)?;
            }
        } else if v_prime == v {
            let (f_u, c1, c2) = self.find_bounding_face(u, u_prime, v)?;
            if !self.g.face_has_vertex(f_u, v_prime) {
                let link = self.idx.linkable(self.g, u_prime, v_prime)?;
                let (cu, _) = link.ok_or(TreeError::NoSuchFace)?;
                self.flip_segment_between(u_prime, c1, c2, cu, u)?;
            }
        } else {
            let (f_v, cv1, cv2) = self.find_bounding_face(v, v_prime, u)?;
            let (f_u, cu1, cu2) = self.find_bounding_face(u, u_prime, v)?;
            if f_u == f_v {
                // nothing to do
            } else if self.g.face_has_vertex(f_v, u_prime) {
                let c = self.first_corner_on(u_prime, f_v);
                self.flip_segment_between(u_prime, cu1, cu2, c, u)?;
            } else if self.g.face_has_vertex(f_u, v_prime) {
                let c = self.first_corner_on(v_prime, f_u);
                self.flip_segment_between(v_prime, cv1, cv2, c, v)?;
            } else {
                let link = self.idx.linkable(self.g, u_prime, v_prime)?;
                let (cu, cv) = link.ok_or(TreeError::NoSuchFace)?;
                self.flip_segment_between(u_prime, cu1, cu2, cu, u)?;
                self.flip_segment_between(v_prime, cv1, cv2, cv, v)?;
            }
        }
        Ok(())
    }

    fn first_corner_on(&mut self, v: VertexId, f: FaceId) -> Corner {
        let d = self
            .g
            .face_darts(f)
            .into_iter()
            .find(|&d| self.g.origin(d) == v)
            .expect("vertex incident to face");
        Corner::Wedge(d)
    }

    // ----- separation flips inside one block -----

    /// Repeatedly execute a maximal endpoint-freeing separation flip until
    /// the endpoints share a face. Sizes must strictly increase; a stall
    /// certifies that the graph plus `(u,v)` has no plane embedding.
    pub fn do_separation_flips(&mut self, u: VertexId, v: VertexId) -> Result<bool, SearchError> {
        let mut s = 0usize;
        loop {
            if self.idx.linkable(self.g, u, v)?.is_some() {
                return Ok(true);
            }
            let r = self.find_first_separation_flip(u, v)?;
            if r.size <= s {
                return Ok(false);
            }
            self.exec_sep(r.sigma.clone().expect("positive size has corners"))?;
            s = r.size;
        }
    }

    fn face_of_edge_on_side(
        &mut self,
        e: EdgeId,
        c: CycleHandle,
        side_face: FaceId,
        same: bool,
    ) -> Option<FaceId> {
        let [d0, d1] = e.darts();
        let f0 = self.g.face_of(d0);
        let f1 = self.g.face_of(d1);
        let s0 = self.idx.same_side(self.g, c, f0, side_face).ok()?;
        if s0 == same {
            Some(f0)
        } else {
            let s1 = self.idx.same_side(self.g, c, f1, side_face).ok()?;
            if s1 == same {
                Some(f1)
            } else {
                None
            }
        }
    }

    /// Find-single-flip candidate tuples; at most 20 by construction.
    pub fn find_single_flip_candidates(
        &mut self,
        u: VertexId,
        v: VertexId,
    ) -> Result<Vec<CandidateTuple>, SearchError> {
        let (_, path_edges) = self.idx.primal_path(self.g, u, v)?;
        let e_u = path_edges[0];
        let e_v = *path_edges.last().unwrap();
        let du = self.g.dart_from(u, e_u)?;
        let dv = self.g.dart_from(v, e_v)?;
        let u_l = self.g.face_of(du);
        let u_r = self.g.face_of(du.twin());
        let v_l = self.g.face_of(dv);
        let v_r = self.g.face_of(dv.twin());
        let f_u_l = self.idx.meet_dual(self.g, u_l, u_r, v_l)?;
        let f_u_r = self.idx.meet_dual(self.g, u_l, u_r, v_r)?;
        let f_v_l = self.idx.meet_dual(self.g, v_l, v_r, u_l)?;
        let _f_v_r = self.idx.meet_dual(self.g, v_l, v_r, u_r)?;
        let mut out: Vec<CandidateTuple> = Vec::new();
        if f_u_l != f_u_r {
            // a fundamental separating cycle passes through both endpoints
            let e = self.idx.dual_path_end_edge(self.g, f_u_l, f_u_r, End::First)?;
            let c = self.idx.fundamental_cycle(self.g, e)?;
            if self.idx.on_cycle(self.g, c, u) && self.idx.on_cycle(self.g, c, v) {
                let (eu1, eu2) = self.idx.cycle_edges_at(self.g, c, u)?;
                let (ev1, ev2) = self.idx.cycle_edges_at(self.g, c, v)?;
                for f in [u_l, u_r] {
                    let same = |s: &mut Self, e| s.face_of_edge_on_side(e, c, f, true);
                    let opp = |s: &mut Self, e| s.face_of_edge_on_side(e, c, f, false);
                    let (Some(fu1), Some(fu2), Some(fv1)) =
                        (same(self, eu1), same(self, eu2), same(self, ev1))
                    else {
                        continue;
                    };
                    let (Some(bu1), Some(bv1), Some(bv2)) =
                        (opp(self, eu1), opp(self, ev1), opp(self, ev2))
                    else {
                        continue;
                    };
                    let fu = self.idx.meet_dual(self.g, fu1, fu2, fv1)?;
                    let fv = self.idx.meet_dual(self.g, bv1, bv2, bu1)?;
                    out.push(CandidateTuple { f_u: fu, f_v: fv, cycle: c, e_u, e_v });
                }
            }
        } else {
            let f_u_star = f_u_l;
            let f_v_star = f_v_l;
            // separating cycle through u only
            for f in [u_l, u_r] {
                if f == f_u_star {
                    continue;
                }
                let Ok(e) = self.idx.dual_path_end_edge(self.g, f_u_star, f, End::First) else {
                    continue;
                };
                let c = self.idx.fundamental_cycle(self.g, e)?;
                if !self.idx.on_cycle(self.g, c, u) {
                    continue;
                }
                let pv = self.idx.projection(self.g, c, v)?;
                let (eu1, eu2) = self.idx.cycle_edges_at(self.g, c, u)?;
                let (ev1, ev2) = self.idx.cycle_edges_at(self.g, c, pv)?;
                for e_v_cand in [ev1, ev2] {
                    for dvf in e_v_cand.darts() {
                        let f_v_side = self.g.face_of(dvf);
                        let (Some(fu1), Some(fu2)) = (
                            self.face_of_edge_on_side(eu1, c, f_v_side, true),
                            self.face_of_edge_on_side(eu2, c, f_v_side, true),
                        ) else {
                            continue;
                        };
                        let fu = self.idx.meet_dual(self.g, fu1, fu2, f_v_side)?;
                        out.push(CandidateTuple {
                            f_u: fu,
                            f_v: f_v_star,
                            cycle: c,
                            e_u,
                            e_v: e_v_cand,
                        });
                    }
                }
            }
            // separating cycle through v only
            for f in [v_l, v_r] {
                if f == f_v_star {
                    continue;
                }
                let Ok(e) = self.idx.dual_path_end_edge(self.g, f_v_star, f, End::First) else {
                    continue;
                };
                let c = self.idx.fundamental_cycle(self.g, e)?;
                if !self.idx.on_cycle(self.g, c, v) {
                    continue;
                }
                let pu = self.idx.projection(self.g, c, u)?;
                let (eu1, eu2) = self.idx.cycle_edges_at(self.g, c, pu)?;
                let (ev1, ev2) = self.idx.cycle_edges_at(self.g, c, v)?;
                for e_u_cand in [eu1, eu2] {
                    for duf in e_u_cand.darts() {
                        let f_u_side = self.g.face_of(duf);
                        let (Some(fv1), Some(fv2)) = (
                            self.face_of_edge_on_side(ev1, c, f_u_side, true),
                            self.face_of_edge_on_side(ev2, c, f_u_side, true),
                        ) else {
                            continue;
                        };
                        let fv = self.idx.meet_dual(self.g, fv1, fv2, f_u_side)?;
                        out.push(CandidateTuple {
                            f_u: f_u_star,
                            f_v: fv,
                            cycle: c,
                            e_u: e_u_cand,
                            e_v,
                        });
                    }
                }
            }
            // no separating cycle through either endpoint
            if f_u_star != f_v_star {
                let e = self.idx.dual_path_end_edge(self.g, f_u_star, f_v_star, End::First)?;
                let c = self.idx.fundamental_cycle(self.g, e)?;
                let pu = self.idx.projection(self.g, c, u)?;
                let pv = self.idx.projection(self.g, c, v)?;
                let (eu1, eu2) = self.idx.cycle_edges_at(self.g, c, pu)?;
                let (ev1, ev2) = self.idx.cycle_edges_at(self.g, c, pv)?;
                for e_u_cand in [eu1, eu2] {
                    for e_v_cand in [ev1, ev2] {
                        out.push(CandidateTuple {
                            f_u: f_u_star,
                            f_v: f_v_star,
                            cycle: c,
                            e_u: e_u_cand,
                            e_v: e_v_cand,
                        });
                    }
                }
            }
        }
        assert!(out.len() <= 20, "candidate bound exceeded: {}", out.len());
        Ok(out)
    }

    /// Is `sigma` the boundary of a locally maximal endpoint-freeing flip:
    /// no larger component shares its face pair, and no component bounded by
    /// the same cut pair and near face reaches farther on the far side.
    pub fn is_locally_maximal(&mut self, sigma: &[Corner; 4], u: VertexId, v: VertexId) -> bool {
        let trace = std::env::var("LOCMAX_TRACE").is_ok();
        macro_rules! reject {
            ($why:expr) => {{ if trace { eprintln!("locmax reject: {}", $why); } return false; }};
        }
        let Ok(cut) = self.g.separation_cut(sigma) else {
            reject!("bad cut");
        };
        let (sx, sy) = (cut.s, cut.t);
        if u == sx || u == sy || v == sx || v == sy {
            reject!("endpoint on the cut pair");
        }
        let Ok(fa) = self.g.corner_face(sigma[0]) else { reject!("no f_u") };
        let Ok(fb) = self.g.corner_face(sigma[3]) else { reject!("no f_v") };
        // orient the cut faces from u: the flip frees u when u touches a cut
        // face (possibly both, when u straddles the cut)
        let (f_u, f_v) = if self.g.face_has_vertex(fa, u) {
            (fa, fb)
        } else if self.g.face_has_vertex(fb, u) {
            (fb, fa)
        } else {
            reject!("u on neither cut face");
        };
        let u_in_side = cut.interior.contains(&u);
        let v_in_side = cut.interior.contains(&v);
        if u_in_side == v_in_side {
            reject!("u,v not separated");
        }
        let hv_interior: Vec<VertexId> = if v_in_side {
            cut.interior.clone()
        } else {
            // complement interior
            let comp = self.g.component_vertices(sx);
            comp.into_iter()
                .filter(|w| *w != sx && *w != sy && !cut.interior.contains(w))
                .collect()
        };
        // (a) no larger component bounded by the same face pair: an internal
        // vertex of C inside the far side incident to both faces would allow
        // a wider cut
        let Ok(e) = self.idx.dual_path_end_edge(self.g, f_u, f_v, End::First) else {
            reject!("no dual path f_u..f_v");
        };
        let Ok(c) = self.idx.fundamental_cycle(self.g, e) else {
            reject!("crossing edge in tree");
        };
        for w in self.idx.cycle_vertices(self.g, c) {
            if hv_interior.contains(&w)
                && self.g.face_has_vertex(f_u, w)
                && self.g.face_has_vertex(f_v, w)
            {
                reject!(format!("clause a: vertex {} inside far side on both faces", w.0));
            }
        }
        // (b) walk the dual cycle of the first tree edge on sx..sy from f_v
        // away from the cut through the far side; the first face seeing both
        // cut vertices proposes a wider flip unless v sits in the slab
        let Ok(e2) = self.idx.primal_path_end_edge(self.g, sx, sy, End::First) else {
            return true;
        };
        let Ok(faces) = self.idx.dual_cycle_faces(self.g, e2) else {
            return true;
        };
        let side_set: std::collections::BTreeSet<EdgeId> =
            cut.side_edges.iter().copied().collect();
        let hv_edges: std::collections::BTreeSet<EdgeId> = if v_in_side {
            side_set
        } else {
            let ids: Vec<EdgeId> = self.g.edge_ids().collect();
            let mut out = std::collections::BTreeSet::new();
            for e in ids {
                let (a, _) = self.g.endpoints(e).unwrap();
                if self.g.same_component(a, sx) && !side_set.contains(&e) {
                    out.insert(e);
                }
            }
            out
        };
        let face_in_hv = |s: &mut Self, f: FaceId| -> bool {
            s.g.face_darts(f).iter().all(|d| hv_edges.contains(&d.edge()))
        };
        let Some(pos_v) = faces.iter().position(|&f| f == f_v) else {
            return true;
        };
        let m = faces.len();
        // pick the cycle direction whose first step leaves f_v into the far
        // side's interior
        for dir in [1i64, -1i64] {
            let step = |i: usize, k: i64| -> usize {
                ((i as i64 + k * dir).rem_euclid(m as i64)) as usize
            };
            let first = faces[step(pos_v, 1)];
            if first == f_u {
                continue;
            }
            if !face_in_hv(self, first) {
                continue;
            }
            let mut k = 1i64;
            loop {
                let f = faces[step(pos_v, k)];
                if f == f_u || f == f_v {
                    break;
                }
                if !face_in_hv(self, f) {
                    break;
                }
                if self.g.face_has_vertex(f, sx) && self.g.face_has_vertex(f, sy) {
                    // slab between f_v and f: if v is beyond it, a wider
                    // flip exists
                    let far_at_tail = f_v == fb;
                    let keep = self.slab_contains(sigma, f, v, v_in_side, far_at_tail);
                    if !keep && trace { eprintln!("locmax reject: clause b slab"); }
                    return keep;
                }
                k += 1;
            }
        }
        true
    }

    /// Does the slab between the original cut's far face and `f_far` contain
    /// `v`? The slab is the part of the far side adjacent to the cut's
    /// far-face wedge, which flanks the descriptor arc's tail when
    /// `far_at_tail` and its head otherwise.
    fn slab_contains(
        &mut self,
        sigma: &[Corner; 4],
        f_far: FaceId,
        v: VertexId,
        v_in_side: bool,
        far_at_tail: bool,
    ) -> bool {
        let Ok(cut) = self.g.separation_cut(sigma) else {
            return true;
        };
        let head = cut.arc_s[0];
        let after_arc = self.g.rot_next(*cut.arc_s.last().unwrap());
        let deg = self.g.degree(cut.s);
        let pick = match (v_in_side, far_at_tail) {
            (true, true) => {
                // suffix of the arc from its last interior wedge on f_far
                let mut first = None;
                for &d in cut.arc_s.iter().skip(1) {
                    if self.g.face_of(d) == f_far {
                        first = Some(d);
                    }
                }
                first.map(|first| (first, after_arc))
            }
            (true, false) => {
                // prefix of the arc up to its first interior wedge on f_far
                let mut stop = None;
                for &d in cut.arc_s.iter().skip(1) {
                    if self.g.face_of(d) == f_far {
                        stop = Some(d);
                        break;
                    }
                }
                stop.map(|stop| (head, stop))
            }
            (false, true) => {
                // run just past the arc tail up to the first f_far wedge
                let mut stop = self.g.rot_next(after_arc);
                let mut found = None;
                for _ in 0..deg {
                    if self.g.face_of(stop) == f_far {
                        found = Some(stop);
                        break;
                    }
                    stop = self.g.rot_next(stop);
                }
                found.map(|stop| (after_arc, stop))
            }
            (false, false) => {
                // run just before the arc head from the nearest f_far wedge
                let mut first = None;
                let mut d = self.g.rot_prev(head);
                for _ in 0..deg {
                    if self.g.face_of(d) == f_far {
                        first = Some(d);
                        break;
                    }
                    d = self.g.rot_prev(d);
                }
                first.map(|first| (first, head))
            }
        };
        let Some((first, after)) = pick else {
            return true;
        };
        if first == after {
            return false; // empty slab
        }
        let Ok(sigma2) = self.g.sigma_for_cut(cut.s, cut.t, first, after) else {
            return true;
        };
        let Ok(slab) = self.g.separation_cut(&sigma2) else {
            return true;
        };
        slab.interior.contains(&v)
    }

    /// Size and corners of the endpoint-freeing flip bounded by a face pair,
    /// or `(0, none)` when the pair does not bound a locally maximal one.
    pub fn choose_best_flip(
        &mut self,
        u: VertexId,
        v: VertexId,
        f_u: FaceId,
        f_v: FaceId,
    ) -> SepFlipResult {
        if f_u == f_v || !self.g.face_has_vertex(f_u, u) || self.g.face_has_vertex(f_v, u) {
            return SepFlipResult::none();
        }
        let Ok(e) = self.idx.dual_path_end_edge(self.g, f_u, f_v, End::First) else {
            return SepFlipResult::none();
        };
        let Ok(c) = self.idx.fundamental_cycle(self.g, e) else {
            return SepFlipResult::none();
        };
        let cyc = self.idx.cycle_vertices(self.g, c);
        let both: Vec<VertexId> = cyc
            .iter()
            .copied()
            .filter(|&w| self.g.face_has_vertex(f_u, w) && self.g.face_has_vertex(f_v, w))
            .collect();
        if both.is_empty() {
            return SepFlipResult::none();
        }
        let Ok(pv) = self.idx.projection(self.g, c, v) else {
            return SepFlipResult::none();
        };
        let k = cyc.len();
        let pos_pv = cyc.iter().position(|&w| w == pv).unwrap();
        let px = cyc[(pos_pv + k - 1) % k];
        let py = cyc[(pos_pv + 1) % k];
        for (x, y) in [(px, pv), (pv, py)] {
            if let Some(r) = self.try_flip_at(u, v, f_u, f_v, &cyc, &both, x, y) {
                return r;
            }
        }
        SepFlipResult::none()
    }

    /// Attempt the flip whose far-side component hugs the cycle edge `(x,y)`:
    /// pick the nearest cut vertices on the cycle in both directions, take
    /// the tightest wedges at them, and validate local maximality.
    #[allow(clippy::too_many_arguments)]
    fn try_flip_at(
        &mut self,
        u: VertexId,
        v: VertexId,
        f_u: FaceId,
        f_v: FaceId,
        cyc: &[VertexId],
        both: &[VertexId],
        x: VertexId,
        y: VertexId,
    ) -> Option<SepFlipResult> {
        let k = cyc.len();
        let pos_x = cyc.iter().position(|&w| w == x)?;
        // walk from x away from y and from y away from x
        let pos_y = cyc.iter().position(|&w| w == y)?;
        let (dir_x, dir_y) = if (pos_x + 1) % k == pos_y {
            (k - 1, 1)
        } else if (pos_y + 1) % k == pos_x {
            (1, k - 1)
        } else {
            return None; // x,y not adjacent on the cycle
        };
        let walk = |start: usize, step: usize| -> Option<VertexId> {
            let mut i = start;
            for _ in 0..k {
                if both.contains(&cyc[i]) {
                    return Some(cyc[i]);
                }
                i = (i + step) % k;
            }
            None
        };
        let s_x = walk(pos_x, dir_x)?;
        let s_y = walk(pos_y, dir_y)?;
        if s_x == s_y {
            return None;
        }
        // dart at s_x along the cycle toward (x,y)
        let toward = |s: &mut Self, sv: VertexId, dir_back: usize| -> Option<DartId> {
            let pos = cyc.iter().position(|&w| w == sv)?;
            let nxt = cyc[(pos + k - dir_back) % k]; // step toward the (x,y) side
            let e = s.edge_between_on_cycle(sv, nxt)?;
            s.g.dart_from(sv, e).ok()
        };
        let d_t = toward(self, s_x, dir_x)?;
        // candidate minimal runs at s_x around d_t, delimited by wedges on
        // f_u and f_v
        let rot = self.g.rotation_of(s_x);
        let deg = rot.len();
        let pos_dt = rot.iter().position(|&d| d == d_t)?;
        let wedge_face = |s: &mut Self, d: DartId| s.g.face_of(d);
        let mut lefts: Vec<(DartId, FaceId)> = Vec::new(); // arc start candidates
        for back in 0..deg {
            let d = rot[(pos_dt + deg - back) % deg];
            let f = wedge_face(self, d);
            if f == f_u || f == f_v {
                if !lefts.iter().any(|&(_, g)| g == f) {
                    lefts.push((d, f));
                }
                if lefts.len() == 2 {
                    break;
                }
            }
        }
        let mut rights: Vec<(DartId, FaceId)> = Vec::new(); // arc end candidates
        for fwd in 1..=deg {
            let d = rot[(pos_dt + fwd) % deg];
            let f = wedge_face(self, d);
            if f == f_u || f == f_v {
                if !rights.iter().any(|&(_, g)| g == f) {
                    rights.push((d, f));
                }
                if rights.len() == 2 {
                    break;
                }
            }
        }
        for &(ls, lf) in &lefts {
            for &(rs, rf) in &rights {
                if lf == rf || ls == rs {
                    continue;
                }
                let Ok(sigma) = self.g.sigma_for_cut(s_x, s_y, ls, rs) else {
                    continue;
                };
                if !self.is_locally_maximal(&sigma, u, v) {
                    continue;
                }
                let Ok(cut) = self.g.separation_cut(&sigma) else {
                    continue;
                };
                let size = if cut.interior.contains(&u) {
                    cut.side_edges.len() + cut.interior.len() + 2
                } else {
                    let comp = self.g.component_vertices(s_x);
                    let total_edges = {
                        let mut t = 0usize;
                        for e in self.g.edge_ids().collect::<Vec<_>>() {
                            let (a, _) = self.g.endpoints(e).unwrap();
                            if self.g.same_component(a, s_x) {
                                t += 1;
                            }
                        }
                        t
                    };
                    (total_edges - cut.side_edges.len()) + (comp.len() - cut.interior.len())
                };
                return Some(SepFlipResult { size, sigma: Some(sigma) });
            }
        }
        None
    }

    fn edge_between_on_cycle(&mut self, a: VertexId, b: VertexId) -> Option<EdgeId> {
        self.g
            .rotation_of(a)
            .into_iter()
            .find(|&d| self.g.dart_target(d) == b)
            .map(|d| d.edge())
    }

    // ----- the per-case maximal-flip finders -----

    #[allow(clippy::too_many_arguments)]
    fn find_sep_p11(
        &mut self,
        u: VertexId,
        v: VertexId,
        f_u: FaceId,
        c: CycleHandle,
        e_u: EdgeId,
        e_v: EdgeId,
        x: VertexId,
        y: VertexId,
    ) -> SepFlipResult {
        let (Some(fu_bar), Some(fv_bar)) = (
            self.face_of_edge_on_side(e_u, c, f_u, false),
            self.face_of_edge_on_side(e_v, c, f_u, false),
        ) else {
            return SepFlipResult::none();
        };
        let (Ok(px), Ok(py)) = (
            self.idx.projection(self.g, c, x),
            self.idx.projection(self.g, c, y),
        ) else {
            return SepFlipResult::none();
        };
        if px == py {
            return SepFlipResult::none();
        }
        let Some(fv) = self.first_face_on_dual_path_with(fv_bar, fu_bar, px, py) else {
            return SepFlipResult::none();
        };
        self.choose_best_flip(u, v, f_u, fv)
    }

    #[allow(clippy::too_many_arguments)]
    fn find_sep_p10(
        &mut self,
        u: VertexId,
        v: VertexId,
        f_u: FaceId,
        c: CycleHandle,
        _e_u: EdgeId,
        e_v: EdgeId,
        x: VertexId,
        y: VertexId,
    ) -> SepFlipResult {
        let Some(fv_same) = self.face_of_edge_on_side(e_v, c, f_u, true) else {
            return SepFlipResult::none();
        };
        let (Ok(px), Ok(py)) = (
            self.idx.projection(self.g, c, x),
            self.idx.projection(self.g, c, y),
        ) else {
            return SepFlipResult::none();
        };
        if px == py {
            return SepFlipResult::none();
        }
        let Some(fv) = self.first_face_on_dual_path_with(fv_same, f_u, px, py) else {
            return SepFlipResult::none();
        };
        self.choose_best_flip(u, v, f_u, fv)
    }

    fn first_face_on_dual_path_with(
        &mut self,
        from: FaceId,
        to: FaceId,
        a: VertexId,
        b: VertexId,
    ) -> Option<FaceId> {
        let (faces, _) = self.idx.dual_path(self.g, from, to).ok()?;
        faces
            .into_iter()
            .find(|&f| self.g.face_has_vertex(f, a) && self.g.face_has_vertex(f, b))
    }

    /// Cycle edges at `w` ordered with the one nearest `anchor` first.
    fn cycle_edges_at_ordered(
        &mut self,
        c: CycleHandle,
        w: VertexId,
        anchor: EdgeId,
    ) -> Option<(EdgeId, EdgeId)> {
        let (e1, e2) = self.idx.cycle_edges_at(self.g, c, w).ok()?;
        let edges = self.idx.cycle_edges(self.g, c);
        let k = edges.len();
        let p1 = edges.iter().position(|&e| e == e1)?;
        let p2 = edges.iter().position(|&e| e == e2)?;
        let pa = edges.iter().position(|&e| e == anchor)?;
        let dist = |p: usize| -> usize {
            let d1 = (p + k - pa) % k;
            let d2 = (pa + k - p) % k;
            d1.min(d2)
        };
        if dist(p1) <= dist(p2) {
            Some((e1, e2))
        } else {
            Some((e2, e1))
        }
    }

    #[allow(clippy::too_many_arguments)]
    fn find_sep_r11(
        &mut self,
        u: VertexId,
        v: VertexId,
        f_u: FaceId,
        c: CycleHandle,
        e_u: EdgeId,
        _e_v: EdgeId,
        x: VertexId,
        y: VertexId,
    ) -> SepFlipResult {
        let Some(fu_bar) = self.face_of_edge_on_side(e_u, c, f_u, false) else {
            return SepFlipResult::none();
        };
        let (Ok(px), Ok(py)) = (
            self.idx.projection(self.g, c, x),
            self.idx.projection(self.g, c, y),
        ) else {
            return SepFlipResult::none();
        };
        if px == py {
            return SepFlipResult::none();
        }
        let Some((ex1, ex2)) = self.cycle_edges_at_ordered(c, px, e_u) else {
            return SepFlipResult::none();
        };
        let Some((ey1, ey2)) = self.cycle_edges_at_ordered(c, py, e_u) else {
            return SepFlipResult::none();
        };
        let mut result = SepFlipResult::none();
        for ex in [ex1, ex2] {
            for ey in [ey1, ey2] {
                let (Some(fx), Some(fy)) = (
                    self.face_of_edge_on_side(ex, c, fu_bar, true),
                    self.face_of_edge_on_side(ey, c, fu_bar, true),
                ) else {
                    continue;
                };
                let Ok(fv) = self.idx.meet_dual(self.g, fu_bar, fx, fy) else {
                    continue;
                };
                result = result.max(self.choose_best_flip(u, v, f_u, fv));
            }
        }
        result
    }

    #[allow(clippy::too_many_arguments)]
    fn find_sep_r10(
        &mut self,
        u: VertexId,
        v: VertexId,
        f_u: FaceId,
        c: CycleHandle,
        e_u: EdgeId,
        e_v: EdgeId,
        x: VertexId,
        y: VertexId,
    ) -> SepFlipResult {
        let Some(fv_same) = self.face_of_edge_on_side(e_v, c, f_u, true) else {
            return SepFlipResult::none();
        };
        let Some(exy) = self.edge_between_on_cycle(x, y) else {
            return SepFlipResult::none();
        };
        let Ok(c2) = self.idx.fundamental_cycle(self.g, exy) else {
            return SepFlipResult::none();
        };
        let (Ok(px), Ok(py)) = (
            self.idx.projection(self.g, c, x),
            self.idx.projection(self.g, c, y),
        ) else {
            return SepFlipResult::none();
        };
        let c_edges: Vec<EdgeId> = self.idx.cycle_edges(self.g, c);
        let c2_edges: Vec<EdgeId> = self.idx.cycle_edges(self.g, c2);
        let mut result = SepFlipResult::none();
        if px != py {
            let on_c2_not_c = |e: &EdgeId| c2_edges.contains(e) && !c_edges.contains(e);
            let ex1 = self.cycle_edge_at_filtered(c2, px, on_c2_not_c);
            let ey1 = self.cycle_edge_at_filtered(c2, py, on_c2_not_c);
            let (ex2, ey2) = if c2_edges.contains(&e_u) {
                let on_c_not_c2 = |e: &EdgeId| c_edges.contains(e) && !c2_edges.contains(e);
                (
                    self.cycle_edge_at_filtered(c, px, on_c_not_c2),
                    self.cycle_edge_at_filtered(c, py, on_c_not_c2),
                )
            } else {
                let on_both = |e: &EdgeId| c_edges.contains(e) && c2_edges.contains(e);
                (
                    self.cycle_edge_at_filtered(c, px, on_both),
                    self.cycle_edge_at_filtered(c, py, on_both),
                )
            };
            let _ = e_u;
            for fx_e in [ex1, ex2].into_iter().flatten() {
                for fy_e in [ey1, ey2].into_iter().flatten() {
                    let (Some(fx), Some(fy)) = (
                        self.face_on_side_of_either(fx_e, c, c2, fv_same),
                        self.face_on_side_of_either(fy_e, c, c2, fv_same),
                    ) else {
                        continue;
                    };
                    let Ok(fv) = self.idx.meet_dual(self.g, fv_same, fx, fy) else {
                        continue;
                    };
                    result = result.max(self.choose_best_flip(u, v, f_u, fv));
                }
            }
        } else {
            let (Ok(pv2), Ok(pu1)) = (
                self.idx.projection(self.g, c2, v),
                self.idx.projection(self.g, c, u),
            ) else {
                return result;
            };
            let (Ok((a1, a2)), Ok((b1, b2))) = (
                self.idx.cycle_edges_at(self.g, c2, pv2),
                self.idx.cycle_edges_at(self.g, c, pu1),
            ) else {
                return result;
            };
            for fx_e in [a1, a2] {
                for fy_e in [b1, b2] {
                    let (Some(fx), Some(fy)) = (
                        self.face_on_side_of_either(fx_e, c, c2, fv_same),
                        self.face_on_side_of_either(fy_e, c, c2, fv_same),
                    ) else {
                        continue;
                    };
                    let Ok(fv) = self.idx.meet_dual(self.g, fv_same, fx, fy) else {
                        continue;
                    };
                    result = result.max(self.choose_best_flip(u, v, f_u, fv));
                }
            }
        }
        result
    }

    /// The cycle edge at `w` satisfying a predicate, if any.
    fn cycle_edge_at_filtered(
        &mut self,
        c: CycleHandle,
        w: VertexId,
        pred: impl Fn(&EdgeId) -> bool,
    ) -> Option<EdgeId> {
        let (e1, e2) = self.idx.cycle_edges_at(self.g, c, w).ok()?;
        if pred(&e1) {
            Some(e1)
        } else if pred(&e2) {
            Some(e2)
        } else {
            None
        }
    }

    /// Face of `e` on the same side as `anchor`, judged against whichever of
    /// the two cycles contains `e`.
    fn face_on_side_of_either(
        &mut self,
        e: EdgeId,
        c1: CycleHandle,
        c2: CycleHandle,
        anchor: FaceId,
    ) -> Option<FaceId> {
        let c1_edges = self.idx.cycle_edges(self.g, c1);
        if c1_edges.contains(&e) {
            self.face_of_edge_on_side(e, c1, anchor, true)
        } else {
            self.face_of_edge_on_side(e, c2, anchor, true)
        }
    }

    #[allow(clippy::too_many_arguments)]
    fn find_sep_p0x(
        &mut self,
        u: VertexId,
        v: VertexId,
        f_u: FaceId,
        c: CycleHandle,
        e_u: EdgeId,
        _e_v: EdgeId,
        x: VertexId,
        y: VertexId,
    ) -> SepFlipResult {
        let Some(fu_bar) = self.face_of_edge_on_side(e_u, c, f_u, false) else {
            return SepFlipResult::none();
        };
        let Some(exy) = self.edge_between_on_cycle(x, y) else {
            return SepFlipResult::none();
        };
        let Ok(c2) = self.idx.fundamental_cycle(self.g, exy) else {
            return SepFlipResult::none();
        };
        let (Ok(px), Ok(py)) = (
            self.idx.projection(self.g, c, x),
            self.idx.projection(self.g, c, y),
        ) else {
            return SepFlipResult::none();
        };
        if px == py {
            return SepFlipResult::none();
        }
        let Some(f_bar) = self.face_of_edge_on_side(exy, c2, fu_bar, true) else {
            return SepFlipResult::none();
        };
        let Some(fv) = self.first_face_on_dual_path_with(f_bar, fu_bar, px, py) else {
            return SepFlipResult::none();
        };
        self.choose_best_flip(u, v, f_u, fv)
    }

    #[allow(clippy::too_many_arguments)]
    fn find_sep_r01(
        &mut self,
        u: VertexId,
        v: VertexId,
        f_u: FaceId,
        c: CycleHandle,
        e_u: EdgeId,
        e_v: EdgeId,
        x: VertexId,
        y: VertexId,
    ) -> SepFlipResult {
        let Some(fu_bar) = self.face_of_edge_on_side(e_u, c, f_u, false) else {
            return SepFlipResult::none();
        };
        let Some(exy) = self.edge_between_on_cycle(x, y) else {
            return SepFlipResult::none();
        };
        let Ok(c2) = self.idx.fundamental_cycle(self.g, exy) else {
            return SepFlipResult::none();
        };
        let (Ok(px), Ok(py)) = (
            self.idx.projection(self.g, c, x),
            self.idx.projection(self.g, c, y),
        ) else {
            return SepFlipResult::none();
        };
        let c_edges: Vec<EdgeId> = self.idx.cycle_edges(self.g, c);
        let c2_edges: Vec<EdgeId> = self.idx.cycle_edges(self.g, c2);
        let mut result = SepFlipResult::none();
        if px != py {
            let (ex1, ey1) = if c2_edges.contains(&e_v) {
                let on_c_not_c2 = |e: &EdgeId| c_edges.contains(e) && !c2_edges.contains(e);
                (
                    self.cycle_edge_at_filtered(c, px, on_c_not_c2),
                    self.cycle_edge_at_filtered(c, py, on_c_not_c2),
                )
            } else {
                let on_both = |e: &EdgeId| c_edges.contains(e) && c2_edges.contains(e);
                (
                    self.cycle_edge_at_filtered(c, px, on_both),
                    self.cycle_edge_at_filtered(c, py, on_both),
                )
            };
            let on_c2_not_c = |e: &EdgeId| c2_edges.contains(e) && !c_edges.contains(e);
            let ex2 = self.cycle_edge_at_filtered(c2, px, on_c2_not_c);
            let ey2 = self.cycle_edge_at_filtered(c2, py, on_c2_not_c);
            let _ = e_v;
            for fx_e in [ex1, ex2].into_iter().flatten() {
                for fy_e in [ey1, ey2].into_iter().flatten() {
                    let (Some(fx), Some(fy)) = (
                        self.face_on_side_of_either(fx_e, c, c2, fu_bar),
                        self.face_on_side_of_either(fy_e, c, c2, fu_bar),
                    ) else {
                        continue;
                    };
                    let Ok(fv) = self.idx.meet_dual(self.g, fu_bar, fx, fy) else {
                        continue;
                    };
                    result = result.max(self.choose_best_flip(u, v, f_u, fv));
                }
            }
        } else {
            let (Ok(pv1), Ok(pu2)) = (
                self.idx.projection(self.g, c, v),
                self.idx.projection(self.g, c2, u),
            ) else {
                return result;
            };
            let (Ok((a1, a2)), Ok((b1, b2))) = (
                self.idx.cycle_edges_at(self.g, c, pv1),
                self.idx.cycle_edges_at(self.g, c2, pu2),
            ) else {
                return result;
            };
            for fx_e in [a1, a2] {
                for fy_e in [b1, b2] {
                    let (Some(fx), Some(fy)) = (
                        self.face_on_side_of_either(fx_e, c, c2, fu_bar),
                        self.face_on_side_of_either(fy_e, c, c2, fu_bar),
                    ) else {
                        continue;
                    };
                    let Ok(fv) = self.idx.meet_dual(self.g, fu_bar, fx, fy) else {
                        continue;
                    };
                    result = result.max(self.choose_best_flip(u, v, f_u, fv));
                }
            }
        }
        result
    }

    /// Dispatch over all candidate tuples and cases, returning a maximal
    /// endpoint-freeing flip when the insertion is possible (and a valid,
    /// possibly stalling flip otherwise).
    pub fn find_first_separation_flip(
        &mut self,
        u: VertexId,
        v: VertexId,
    ) -> Result<SepFlipResult, SearchError> {
        let candidates = self.find_single_flip_candidates(u, v)?;
        // single-flip test
        for cand in &candidates {
            if self.g.face_has_vertex(cand.f_v, v) {
                let r = self.choose_best_flip(u, v, cand.f_u, cand.f_v);
                if r.size > 0 {
                    return Ok(r);
                }
            }
        }
        let mut result = SepFlipResult::none();
        for cand in &candidates {
            let f_u = cand.f_u;
            let c = cand.cycle;
            // cases with the cycle reaching past the first blocking node
            if let Some(fv_same) = self.face_of_edge_on_side(cand.e_v, c, f_u, true) {
                if f_u != fv_same {
                    if let Ok(exy) = self.idx.dual_path_end_edge(self.g, f_u, fv_same, End::First) {
                        let (x, y) = self.g.endpoints(exy)?;
                        result = result.max(self.find_sep_p11(u, v, f_u, c, cand.e_u, cand.e_v, x, y));
                        result = result.max(self.find_sep_r11(u, v, f_u, c, cand.e_u, cand.e_v, x, y));
                        result = result.max(self.find_sep_p10(u, v, f_u, c, cand.e_u, cand.e_v, x, y));
                        result = result.max(self.find_sep_r10(u, v, f_u, c, cand.e_u, cand.e_v, x, y));
                    }
                }
            }
            // cases with the cycle stopping short of it
            let Ok(pv) = self.idx.projection(self.g, c, v) else {
                continue;
            };
            let Ok((ev1, ev2)) = self.idx.cycle_edges_at(self.g, c, pv) else {
                continue;
            };
            let (Some(fv1_bar), Some(fv2_bar)) = (
                self.face_of_edge_on_side(ev1, c, f_u, false),
                self.face_of_edge_on_side(ev2, c, f_u, false),
            ) else {
                continue;
            };
            let dv = self.g.some_dart_at(v).expect("v has edges");
            let fv3_bar = self.g.face_of(dv);
            let Ok(f1_bar) = self.idx.meet_dual(self.g, fv1_bar, fv2_bar, fv3_bar) else {
                continue;
            };
            result = result.max(self.choose_best_flip(u, v, f_u, f1_bar));
            for f2_bar in [fv1_bar, fv2_bar] {
                if f2_bar == f1_bar {
                    continue;
                }
                let Ok(exy) = self.idx.dual_path_end_edge(self.g, f1_bar, f2_bar, End::First) else {
                    continue;
                };
                let (x, y) = self.g.endpoints(exy)?;
                result = result.max(self.find_sep_p0x(u, v, f_u, c, cand.e_u, cand.e_v, x, y));
                result = result.max(self.find_sep_r01(u, v, f_u, c, cand.e_u, cand.e_v, x, y));
            }
        }
        Ok(result)
    }

    // ----- the top-level sweep -----

    /// Articulation points strictly between `a` and `b` on the block path,
    /// in order from `a`.
    fn articulations_between(
        &mut self,
        view: &EdgeListGraph,
        a: VertexId,
        b: VertexId,
    ) -> Result<Vec<VertexId>, SearchError> {
        let bc = bc_tree(view).map_err(|_| TreeError::DifferentComponents)?;
        let na = bc.node_of_vertex(a.0).ok_or(TreeError::DifferentComponents)?;
        let nb = bc.node_of_vertex(b.0).ok_or(TreeError::DifferentComponents)?;
        let path = bc.tree_path(na, nb);
        let mut out = Vec::new();
        for (i, &node) in path.iter().enumerate() {
            if i == 0 || i + 1 == path.len() {
                continue;
            }
            if bc.nodes[node].kind == BcNodeKind::C {
                out.push(VertexId(bc.nodes[node].vertices[0]));
            }
        }
        Ok(out)
    }

    /// Perform the critical flips needed to bring `u` and `v` onto a common
    /// face, or report that no embedding of the graph admits the edge (in
    /// which case flips already performed are kept).
    pub fn multi_flip_linkable(&mut self, u: VertexId, v: VertexId) -> Result<bool, SearchError> {
        if !self.g.same_component(u, v) {
            return Err(SearchError::Tree(TreeError::DifferentComponents));
        }
        // the block structure never changes under flips
        let view = EdgeListGraph {
            n: self.g.vertex_count(),
            edges: {
                let ids: Vec<EdgeId> = self.g.edge_ids().collect();
                let mut es = Vec::new();
                for e in ids {
                    let (a, b) = self.g.endpoints(e).unwrap();
                    if self.g.same_component(a, u) {
                        es.push((a.0, b.0));
                    }
                }
                es
            },
        };
        let mut u_prime = u;
        loop {
            if u_prime == v {
                return Ok(true);
            }
            let arts = self.articulations_between(&view, u_prime, v)?;
            let v_prime = arts.first().copied().unwrap_or(v);
            if !self.do_separation_flips(u_prime, v_prime)? {
                return Ok(false);
            }
            self.do_articulation_flips(u, u_prime, v_prime, v)?;
            u_prime = self.find_next_flip_block(u, u_prime, v_prime, v)?;
        }
    }
}
