//! Desk-scale brute-force oracle for the flip structure of small graphs:
//! the space of all plane embeddings with flip adjacency, the clean/sep/P
//! flip metrics, struts, the two potential cost functions, and checkers for
//! their required properties.

use crate::embedding::{EmbeddedGraph, FlipDescriptor, SepFlipKind};
use crate::ids::{Corner, DartId, VertexId};
use crate::static_oracle::EdgeListGraph;
use std::collections::{BTreeMap, BTreeSet, VecDeque};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OracleError {
    #[error("graph exceeds the embedding-enumeration bound ({0} edges)")]
    TooLarge(usize),
    #[error("a strut is unreachable from the embedding (cost is infinite)")]
    InfiniteCost,
}

/// Default edge bound for exhaustive embedding enumeration.
pub const DEFAULT_ENUM_BOUND: usize = 9;

/// Rotation-system identity used to index the embedding space
/// (see `EmbeddedGraph::rotation_key`).
pub type RotKey = Vec<u32>;

/// Euler check without the full validation machinery: every component of a
/// well-formed rotation system satisfies `V - E + F = 2`.
pub fn is_plane(emb: &EmbeddedGraph) -> bool {
    let n = emb.vertex_count();
    let mut comp = vec![usize::MAX; n];
    let mut nc = 0usize;
    for v0 in 0..n {
        if comp[v0] != usize::MAX {
            continue;
        }
        let id = nc;
        nc += 1;
        comp[v0] = id;
        let mut stack = vec![VertexId(v0 as u32)];
        while let Some(v) = stack.pop() {
            for d in emb.rotation_of(v) {
                let w = emb.dart_target(d);
                if comp[w.idx()] == usize::MAX {
                    comp[w.idx()] = id;
                    stack.push(w);
                }
            }
        }
    }
    let mut vcnt = vec![0i64; nc];
    let mut ecnt = vec![0i64; nc];
    let mut fcnt = vec![0i64; nc];
    for v in 0..n {
        vcnt[comp[v]] += 1;
        if emb.degree(VertexId(v as u32)) == 0 {
            fcnt[comp[v]] += 1;
        }
    }
    let mut seen = vec![false; emb.dart_capacity()];
    for e in emb.edge_ids() {
        let (u, _) = emb.endpoints(e).unwrap();
        ecnt[comp[u.idx()]] += 1;
        for d0 in e.darts() {
            if seen[d0.idx()] {
                continue;
            }
            let mut d = d0;
            loop {
                seen[d.idx()] = true;
                d = emb.face_next(d);
                if d == d0 {
                    break;
                }
            }
            fcnt[comp[u.idx()]] += 1;
        }
    }
    (0..nc).all(|c| vcnt[c] - ecnt[c] + fcnt[c] == 2)
}

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub enum FlipKind {
    Articulation,
    SepSR,
    SepP,
    /// Mirror image of the whole (connected) graph. Not a flip proper, but
    /// included in the adjacency so the clean move graph is connected for
    /// every connected planar graph; it never changes any distance to a
    /// reflection-closed embedding set.
    Reflection,
}

#[derive(Clone, Debug)]
pub struct SpaceEdge {
    pub a: usize,
    pub b: usize,
    pub kind: FlipKind,
    pub clean: bool,
}

/// A single enumerated flip out of one embedding.
#[derive(Clone, Debug)]
pub struct FlipMove {
    pub descriptor: FlipDescriptor,
    pub kind: FlipKind,
    pub clean: bool,
    pub result: RotKey,
    /// Vertices strictly inside the flipped subgraph.
    pub moved_interior: Vec<VertexId>,
}

/// All plane embeddings of a small connected graph, with flip adjacency.
#[derive(Clone, Debug)]
pub struct EmbeddingSpace {
    pub graph: EdgeListGraph,
    keys: Vec<RotKey>,
    index: BTreeMap<RotKey, usize>,
    pub edges: Vec<SpaceEdge>,
    adj: Vec<Vec<usize>>,
    directed: BTreeSet<(usize, usize, FlipKind, bool)>,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum DistKind {
    Clean,
    Sep,
    P,
}

fn permutations<T: Clone>(items: &[T]) -> Vec<Vec<T>> {
    if items.is_empty() {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for i in 0..items.len() {
        let mut rest = items.to_vec();
        let x = rest.remove(i);
        for mut tail in permutations(&rest) {
            let mut p = vec![x.clone()];
            p.append(&mut tail);
            out.push(p);
        }
    }
    out
}

/// All plane rotation systems of `g` (reflections counted as distinct).
/// A component breaking the `m <= 3n - 6` bound has no plane embedding, so
/// the result is empty; otherwise `g` must stay within the enumeration bound.
pub fn enumerate_embeddings(
    g: &EdgeListGraph,
    max_edges: usize,
) -> Result<Vec<EmbeddedGraph>, OracleError> {
    let comp = g.components();
    let mut vc: BTreeMap<u32, usize> = BTreeMap::new();
    let mut ec: BTreeMap<u32, usize> = BTreeMap::new();
    for v in 0..g.n {
        *vc.entry(comp[v]).or_insert(0) += 1;
    }
    for &(a, _) in &g.edges {
        *ec.entry(comp[a as usize]).or_insert(0) += 1;
    }
    for (c, &m) in &ec {
        let n = vc[c];
        if n >= 3 && m > 3 * n - 6 {
            return Ok(Vec::new());
        }
    }
    if g.m() > max_edges {
        return Err(OracleError::TooLarge(g.m()));
    }
    let adj = g.adjacency();
    // fix the first (smallest) neighbor, permute the rest
    let mut per_vertex: Vec<Vec<Vec<u32>>> = Vec::with_capacity(g.n);
    for v in 0..g.n {
        let mut nbrs = adj[v].clone();
        nbrs.sort();
        if nbrs.len() <= 2 {
            per_vertex.push(vec![nbrs]);
            continue;
        }
        let first = nbrs[0];
        let rest = &nbrs[1..];
        let mut orders = Vec::new();
        for p in permutations(rest) {
            let mut r = vec![first];
            r.extend(p);
            orders.push(r);
        }
        per_vertex.push(orders);
    }
    let mut out = Vec::new();
    let mut pick = vec![0usize; g.n];
    loop {
        let rots: Vec<Vec<(VertexId, u32)>> = (0..g.n)
            .map(|v| per_vertex[v][pick[v]].iter().map(|&w| (VertexId(w), 0)).collect())
            .collect();
        let emb = EmbeddedGraph::from_rotation_lists(g.n, &rots).expect("valid rotation");
        if is_plane(&emb) {
            out.push(emb);
        }
        // odometer
        let mut i = 0;
        loop {
            if i == g.n {
                return Ok(out);
            }
            pick[i] += 1;
            if pick[i] < per_vertex[i].len() {
                break;
            }
            pick[i] = 0;
            i += 1;
        }
    }
}

/// Separation-pair test on the block of `{s,t}`: only classes attached to
/// both cut vertices count, and the two classic exceptions apply (a pair is
/// not separating when it has exactly two classes one of which is the edge
/// `(s,t)` itself, or exactly three single-edge classes).
fn is_separation_pair(classes: &[crate::embedding::StClass]) -> bool {
    let both: Vec<_> = classes
        .iter()
        .filter(|c| !c.darts_at_s.is_empty() && !c.darts_at_t.is_empty())
        .collect();
    let k = both.len();
    if k < 2 {
        return false;
    }
    let singles = both.iter().filter(|c| c.edges.len() == 1).count();
    if k == 2 && singles >= 1 {
        return false;
    }
    if k == 3 && singles == 3 {
        return false;
    }
    true
}

/// All flips available in one embedding: every articulation flip
/// (articulation point x movable dart run x target x reflect bit) and every
/// separation flip (vertex-face 4-cycle on a separation pair x side), each
/// labelled with its type and cleanliness and deduplicated by descriptor and
/// resulting embedding. Flips that do not change the embedding are dropped.
pub fn enumerate_flips(emb: &EmbeddedGraph) -> Vec<FlipMove> {
    let mut base = emb.clone();
    let self_key = base.rotation_key();
    // every (run, target, reflect) resp. (arc, side) combination below yields
    // a distinct descriptor, so no further deduplication is needed here
    let mut out: Vec<FlipMove> = Vec::new();
    let n = base.vertex_count();
    // articulation flips
    for v in 0..n as u32 {
        let a = VertexId(v);
        let deg = base.degree(a);
        if deg < 2 {
            continue;
        }
        let classes = base.articulation_classes(a);
        if classes.len() < 2 {
            continue;
        }
        let rot = base.rotation_of(a);
        for start in 0..deg {
            for len in 1..deg {
                let seg: Vec<DartId> = (0..len).map(|i| rot[(start + i) % deg]).collect();
                // quick full-class test
                let seg_set: BTreeSet<DartId> = seg.iter().copied().collect();
                let mut ok = true;
                for cl in &classes {
                    let inside = cl.darts_at_s.iter().filter(|d| seg_set.contains(d)).count();
                    if inside != 0 && inside != cl.darts_at_s.len() {
                        ok = false;
                        break;
                    }
                }
                if !ok {
                    continue;
                }
                for t in 0..deg {
                    let target = rot[t];
                    if seg_set.contains(&target) {
                        continue;
                    }
                    for reflect in [false, true] {
                        let desc = FlipDescriptor::Articulation {
                            seg_start: Corner::Wedge(seg[0]),
                            seg_end: Corner::Wedge(seg[len - 1]),
                            target: Corner::Wedge(target),
                            reflect,
                        };
                        let mut copy = base.clone();
                        let Ok(info) = copy.articulation_flip(&desc) else {
                            continue;
                        };
                        let key = copy.rotation_key();
                        if key == self_key {
                            continue;
                        }
                        out.push(FlipMove {
                            descriptor: desc,
                            kind: FlipKind::Articulation,
                            clean: true,
                            result: key,
                            moved_interior: info.moved_interior,
                        });
                    }
                }
            }
        }
    }
    // separation flips
    for s in 0..n as u32 {
        for t in s + 1..n as u32 {
            let (s, t) = (VertexId(s), VertexId(t));
            if base.degree(s) == 0 || base.degree(t) == 0 || !base.same_component(s, t) {
                continue;
            }
            let classes = base.st_classes(s, t);
            if !is_separation_pair(&classes) {
                continue;
            }
            let rot = base.rotation_of(s);
            let deg = rot.len();
            for start in 0..deg {
                for len in 1..deg {
                    let first = rot[start];
                    let after = rot[(start + len) % deg];
                    let Ok(sigma) = base.sigma_for_cut(s, t, first, after) else {
                        continue;
                    };
                    let desc = FlipDescriptor::Separation { sigma };
                    let mut copy = base.clone();
                    let Ok(info) = copy.separation_flip(&desc) else {
                        continue;
                    };
                    let key = copy.rotation_key();
                    if key == self_key {
                        continue;
                    }
                    let kind = match info.sep_kind.unwrap() {
                        SepFlipKind::P => FlipKind::SepP,
                        SepFlipKind::SR => FlipKind::SepSR,
                    };
                    out.push(FlipMove {
                        descriptor: desc,
                        kind,
                        clean: info.clean,
                        result: key,
                        moved_interior: info.moved_interior,
                    });
                }
            }
        }
    }
    out
}

impl EmbeddingSpace {
    /// Enumerate the embedding space of a connected graph and its full flip
    /// adjacency, plus whole-graph reflection moves.
    pub fn build(g: &EdgeListGraph, max_edges: usize) -> Result<EmbeddingSpace, OracleError> {
        let embeddings = enumerate_embeddings(g, max_edges)?;
        let mut keys = Vec::with_capacity(embeddings.len());
        let mut index = BTreeMap::new();
        for emb in &embeddings {
            let key = emb.rotation_key();
            index.insert(key.clone(), keys.len());
            keys.push(key);
        }
        let mut edges: Vec<SpaceEdge> = Vec::new();
        let mut edge_seen: BTreeSet<(usize, usize, FlipKind, bool)> = BTreeSet::new();
        let mut directed: BTreeSet<(usize, usize, FlipKind, bool)> = BTreeSet::new();
        let mut adj = vec![Vec::new(); keys.len()];
        for (i, emb) in embeddings.iter().enumerate() {
            for mv in enumerate_flips(emb) {
                let j = *index
                    .get(&mv.result)
                    .expect("flip result stays in the embedding space");
                directed.insert((i, j, mv.kind, mv.clean));
                let (a, b) = (i.min(j), i.max(j));
                if edge_seen.insert((a, b, mv.kind, mv.clean)) {
                    adj[a].push(edges.len());
                    adj[b].push(edges.len());
                    edges.push(SpaceEdge { a, b, kind: mv.kind, clean: mv.clean });
                }
            }
            // whole-graph reflection
            let mut refl = emb.clone();
            refl.reflect_all();
            let rkey = refl.rotation_key();
            if rkey != keys[i] {
                let j = *index.get(&rkey).expect("reflection is a plane embedding");
                directed.insert((i, j, FlipKind::Reflection, true));
                directed.insert((j, i, FlipKind::Reflection, true));
                let (a, b) = (i.min(j), i.max(j));
                if edge_seen.insert((a, b, FlipKind::Reflection, true)) {
                    adj[a].push(edges.len());
                    adj[b].push(edges.len());
                    edges.push(SpaceEdge { a, b, kind: FlipKind::Reflection, clean: true });
                }
            }
        }
        Ok(EmbeddingSpace { graph: g.clone(), keys, index, edges, adj, directed })
    }

    pub fn len(&self) -> usize {
        self.keys.len()
    }

    pub fn is_empty(&self) -> bool {
        self.keys.is_empty()
    }

    pub fn key(&self, i: usize) -> &RotKey {
        &self.keys[i]
    }

    pub fn node_index(&self, key: &RotKey) -> Option<usize> {
        self.index.get(key).copied()
    }

    pub fn embedding(&self, i: usize) -> EmbeddedGraph {
        decode_key(self.graph.n, &self.keys[i])
    }

    /// Nodes admitting the edge `(u,v)`: embeddings where the endpoints are
    /// on a common face.
    pub fn admitting(&self, u: VertexId, v: VertexId) -> BTreeSet<usize> {
        let mut out = BTreeSet::new();
        for i in 0..self.len() {
            let mut emb = self.embedding(i);
            let fu: BTreeSet<_> = emb.rotation_of(u).iter().map(|&d| emb.face_of(d)).collect();
            let shared = emb
                .rotation_of(v)
                .iter()
                .any(|&d| fu.contains(&emb.face_of(d)));
            if shared {
                out.insert(i);
            }
        }
        out
    }

    fn edge_weight(kind: FlipKind, metric: DistKind) -> u32 {
        match metric {
            DistKind::Clean => 1,
            DistKind::Sep => match kind {
                FlipKind::SepSR | FlipKind::SepP => 1,
                _ => 0,
            },
            DistKind::P => match kind {
                FlipKind::SepP => 1,
                _ => 0,
            },
        }
    }

    /// Distance table from a set of embeddings, walking clean moves only.
    /// `Clean` counts every move; `Sep` counts separation flips on a clean
    /// path; `P` counts P flips on a clean path. Unreachable nodes are `None`.
    pub fn dist_table(&self, metric: DistKind, targets: &BTreeSet<usize>) -> Vec<Option<u32>> {
        let mut dist: Vec<Option<u32>> = vec![None; self.len()];
        let mut dq: VecDeque<usize> = VecDeque::new();
        for &t in targets {
            dist[t] = Some(0);
            dq.push_back(t);
        }
        // 0/1 BFS
        while let Some(x) = dq.pop_front() {
            let dx = dist[x].unwrap();
            for &ei in &self.adj[x] {
                let e = &self.edges[ei];
                if !e.clean {
                    continue;
                }
                let y = if e.a == x { e.b } else { e.a };
                let w = Self::edge_weight(e.kind, metric);
                let nd = dx + w;
                if dist[y].map_or(true, |old| nd < old) {
                    dist[y] = Some(nd);
                    if w == 0 {
                        dq.push_front(y);
                    } else {
                        dq.push_back(y);
                    }
                }
            }
        }
        dist
    }

    pub fn dist(&self, metric: DistKind, from: usize, targets: &BTreeSet<usize>) -> Option<u32> {
        if targets.is_empty() {
            return None;
        }
        self.dist_table(metric, targets)[from]
    }

    /// Flip adjacency must be symmetric kind-for-kind: executing a flip keeps
    /// the same cut available, with the same classification and cleanliness.
    pub fn check_symmetry(&self) -> bool {
        self.directed
            .iter()
            .all(|&(i, j, k, c)| self.directed.contains(&(j, i, k, c)))
    }

    /// Connectivity of the clean move subgraph.
    pub fn clean_connected(&self) -> bool {
        if self.len() <= 1 {
            return true;
        }
        let start: BTreeSet<usize> = [0].into_iter().collect();
        let table = self.dist_table(DistKind::Clean, &start);
        table.iter().all(|d| d.is_some())
    }
}

// ----- struts and costs -----

/// Struts for `(G; u, v)`: insertable non-edges whose accommodation distances
/// define the two potential functions. Derived from the pre-split BC/SPQR
/// solid paths.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct StrutSet {
    pub critical: BTreeSet<(u32, u32)>,
    pub off_critical: BTreeSet<(u32, u32)>,
}

impl StrutSet {
    pub fn solid(&self) -> BTreeSet<(u32, u32)> {
        self.critical.union(&self.off_critical).copied().collect()
    }
}

fn norm(a: u32, b: u32) -> (u32, u32) {
    (a.min(b), a.max(b))
}

/// Faces of an SPQR skeleton (S or R node), as vertex sets per face, with
/// the face list of every skeleton edge. S and R skeletons have a unique
/// embedding up to reflection, so incidence is well defined.
fn skeleton_faces(
    node: &crate::decomposition::SpqrNode,
) -> Option<(Vec<BTreeSet<u32>>, BTreeMap<(u32, u32), Vec<usize>>)> {
    use crate::decomposition::SpqrKind;
    let verts: Vec<u32> = node.vertices().into_iter().collect();
    let remap: BTreeMap<u32, u32> = verts
        .iter()
        .enumerate()
        .map(|(i, &v)| (v, i as u32))
        .collect();
    let edges: Vec<(u32, u32)> = node
        .skeleton
        .iter()
        .map(|e| (remap[&e.a], remap[&e.b]))
        .collect();
    if node.kind == SpqrKind::P {
        return None;
    }
    let g = EdgeListGraph::new(verts.len(), edges).ok()?;
    let mut emb = crate::static_oracle::find_embedding_static(&g)?;
    let mut face_sets: Vec<BTreeSet<u32>> = Vec::new();
    let mut edge_faces: BTreeMap<(u32, u32), Vec<usize>> = BTreeMap::new();
    for f in emb.faces() {
        let darts = emb.face_darts(f);
        let idx = face_sets.len();
        let mut set = BTreeSet::new();
        for &d in &darts {
            let a = verts[emb.origin(d).idx()];
            let b = verts[emb.dart_target(d).idx()];
            set.insert(a);
            edge_faces.entry(norm(a, b)).or_default().push(idx);
        }
        face_sets.push(set);
    }
    Some((face_sets, edge_faces))
}

/// Smallest-labelled vertex of the skeleton, other than the pair vertices,
/// sharing a face with the pair edge; `favored` (an endpoint of the strut
/// chain) counts as smaller than everything.
fn end_vertex_for(
    node: &crate::decomposition::SpqrNode,
    pair: (u32, u32),
    favored: Option<u32>,
) -> Option<u32> {
    use crate::decomposition::SpqrKind;
    let pairn = norm(pair.0, pair.1);
    match node.kind {
        SpqrKind::S => {
            // every vertex of a cycle shares a face with every edge
            let mut cands: Vec<u32> = node
                .vertices()
                .into_iter()
                .filter(|&w| w != pairn.0 && w != pairn.1)
                .collect();
            cands.sort();
            if let Some(f) = favored {
                if cands.contains(&f) {
                    return Some(f);
                }
            }
            cands.first().copied()
        }
        SpqrKind::R => {
            let (faces, edge_faces) = skeleton_faces(node)?;
            let fs = edge_faces.get(&pairn)?;
            let mut cands: BTreeSet<u32> = BTreeSet::new();
            for &fi in fs {
                for &w in &faces[fi] {
                    if w != pairn.0 && w != pairn.1 {
                        cands.insert(w);
                    }
                }
            }
            if let Some(f) = favored {
                if cands.contains(&f) {
                    return Some(f);
                }
            }
            cands.iter().next().copied()
        }
        SpqrKind::P => None,
    }
}

/// Is the internal node a cross node: an R node whose two path-side pair
/// edges share no skeleton face.
fn is_cross_internal(
    node: &crate::decomposition::SpqrNode,
    pair_in: (u32, u32),
    pair_out: (u32, u32),
) -> bool {
    use crate::decomposition::SpqrKind;
    if node.kind != SpqrKind::R {
        return false;
    }
    let Some((_, edge_faces)) = skeleton_faces(node) else {
        return true;
    };
    let (Some(f1), Some(f2)) = (
        edge_faces.get(&norm(pair_in.0, pair_in.1)),
        edge_faces.get(&norm(pair_out.0, pair_out.1)),
    ) else {
        return true;
    };
    !f1.iter().any(|x| f2.contains(x))
}

/// Is the end node cross for an end vertex: an R node where the vertex
/// shares no skeleton face with the pair edge.
fn is_cross_end(
    node: &crate::decomposition::SpqrNode,
    endpoint: u32,
    pair: (u32, u32),
) -> bool {
    use crate::decomposition::SpqrKind;
    if node.kind != SpqrKind::R {
        return false;
    }
    let Some((faces, edge_faces)) = skeleton_faces(node) else {
        return true;
    };
    let Some(fs) = edge_faces.get(&norm(pair.0, pair.1)) else {
        return true;
    };
    !fs.iter().any(|&fi| faces[fi].contains(&endpoint))
}

/// Struts of one SPQR solid path with block terminals `(x, y)`.
fn spqr_path_struts(
    tree: &crate::decomposition::SpqrTree,
    path: &crate::decomposition::SolidPath,
    is_critical: bool,
    terminals: (u32, u32),
    block: &EdgeListGraph,
) -> BTreeSet<(u32, u32)> {
    use crate::decomposition::SpqrKind;
    let mut out = BTreeSet::new();
    // relevant part: strip P-node ends (including a split top copy)
    let mut nodes: Vec<usize> = Vec::new();
    if let Some(top) = path.top_split {
        nodes.push(top);
    }
    nodes.extend(path.nodes.iter().copied());
    while let Some(&first) = nodes.first() {
        if tree.nodes[first].kind == SpqrKind::P {
            nodes.remove(0);
        } else {
            break;
        }
    }
    while let Some(&last) = nodes.last() {
        if tree.nodes[last].kind == SpqrKind::P {
            nodes.pop();
        } else {
            break;
        }
    }
    let d = nodes.len();
    if d == 0 {
        return out;
    }
    if d == 1 {
        // single relevant node: only the critical path of an insertable
        // non-edge contributes
        if is_critical {
            let (u, v) = terminals;
            if u != v
                && !block.has_edge(u, v)
                && crate::static_oracle::is_planar_static(&block.with_edge(u, v))
            {
                out.insert(norm(u, v));
            }
        }
        return out;
    }
    // pairs between consecutive path nodes
    let pairs: Vec<(u32, u32)> = (0..d - 1)
        .map(|i| tree.pair_between(nodes[i], nodes[i + 1]))
        .collect();
    // cross flags per node
    let mut cross = vec![false; d];
    for i in 1..d - 1 {
        cross[i] = is_cross_internal(&tree.nodes[nodes[i]], pairs[i - 1], pairs[i]);
    }
    if is_critical {
        cross[0] = is_cross_end(&tree.nodes[nodes[0]], terminals.0, pairs[0]);
        cross[d - 1] = is_cross_end(&tree.nodes[nodes[d - 1]], terminals.1, pairs[d - 2]);
    }
    // maximal subpaths with no internal cross node
    let mut start = 0usize;
    while start < d - 1 {
        let mut end = start + 1;
        while end < d - 1 && !cross[end] {
            end += 1;
        }
        // gamma = nodes[start..=end]
        let u_fav = if is_critical && start == 0 { Some(terminals.0) } else { None };
        let v_fav = if is_critical && end == d - 1 { Some(terminals.1) } else { None };
        let ug = end_vertex_for(&tree.nodes[nodes[start]], pairs[start], u_fav);
        let vg = end_vertex_for(&tree.nodes[nodes[end]], pairs[end - 1], v_fav);
        if let (Some(a), Some(b)) = (ug, vg) {
            if a != b && !block.has_edge(a, b) {
                out.insert(norm(a, b));
            }
        }
        start = end;
    }
    out
}

/// Struts of one block for terminals `(x, y)`: the block's critical SPQR
/// path feeds the first set, all other solid paths the second.
fn block_struts(
    g_full: &EdgeListGraph,
    decomp: &crate::decomposition::BlockDecomp,
) -> (BTreeSet<(u32, u32)>, BTreeSet<(u32, u32)>) {
    let mut crit = BTreeSet::new();
    let mut off = BTreeSet::new();
    let Some(tree) = &decomp.spqr else {
        return (crit, off); // bridge: the stretch struts cover it
    };
    // the block subgraph, from the skeletons' real edges
    let block = {
        let mut idx = Vec::new();
        for n in &tree.nodes {
            for e in &n.skeleton {
                if let crate::decomposition::SkelEdgeKind::Real(i) = e.kind {
                    idx.push(i);
                }
            }
        }
        idx.sort();
        crate::decomposition::subgraph(g_full, &idx)
    };
    for (pi, path) in decomp.paths.iter().enumerate() {
        let is_crit = pi == decomp.critical;
        let struts = spqr_path_struts(tree, path, is_crit, decomp.terminals, &block);
        if is_crit {
            crit.extend(struts);
        } else {
            off.extend(struts);
        }
    }
    (crit, off)
}

/// Struts of `(G; u, v)` per the pre-split decomposition: at the BC level,
/// one strut per maximal run of consecutive blocks on a solid path whose
/// stretch chord keeps the graph planar; blocks refusing their terminal
/// chord contribute their SPQR-level (triconnecting) struts instead. The
/// critical path's struts form the critical set; everything else is
/// off-critical.
pub fn struts(g: &EdgeListGraph, u: VertexId, v: VertexId) -> StrutSet {
    let mut set = StrutSet::default();
    let comp = g.components();
    let cross_component = comp[u.idx()] != comp[v.idx()];
    let adj = g.adjacency();
    let mut anchors: Vec<(VertexId, u32)> = vec![(u, v.0)];
    if cross_component {
        anchors.push((v, u.0));
    }
    let mut handled = BTreeSet::new();
    for &(anchor, other) in &anchors {
        if adj[anchor.idx()].is_empty() || !handled.insert(comp[anchor.idx()]) {
            continue;
        }
        let Ok(d) = crate::decomposition::presplit_decomposition(g, anchor.0, other) else {
            continue;
        };
        let bc_critical = if cross_component { None } else { d.bc_critical };
        for (pi, path) in d.bc_paths.iter().enumerate() {
            let is_crit = Some(pi) == bc_critical;
            let sink = |set: &mut StrutSet, s: (u32, u32)| {
                if is_crit {
                    set.critical.insert(s);
                } else {
                    set.off_critical.insert(s);
                }
            };
            let bn: Vec<usize> = path
                .nodes
                .iter()
                .copied()
                .filter(|&x| d.blocks.contains_key(&x))
                .collect();
            let k = bn.len();
            let term_of = |b: usize| d.blocks[&b].terminals;
            // a run [l..=h] qualifies when the chord over it is an edge of G
            // or stays planar; struts come from the maximal runs
            let chord = |l: usize, h: usize| -> (u32, u32) {
                norm(term_of(bn[l]).0, term_of(bn[h]).1)
            };
            let qualifies = |l: usize, h: usize| -> bool {
                let (a, b) = chord(l, h);
                a != b && (g.has_edge(a, b) || is_planar_static(&g.with_edge(a, b)))
            };
            for l in 0..k {
                for h in l..k {
                    if !qualifies(l, h) {
                        continue;
                    }
                    if l > 0 && qualifies(l - 1, h) {
                        continue;
                    }
                    if h + 1 < k && qualifies(l, h + 1) {
                        continue;
                    }
                    let (a, b) = chord(l, h);
                    if !g.has_edge(a, b) {
                        sink(&mut set, (a, b));
                    }
                }
            }
            for &b in &bn {
                let decomp = &d.blocks[&b];
                let (x, y) = decomp.terminals;
                let chord_breaks = x != y
                    && !g.has_edge(x, y)
                    && !is_planar_static(&g.with_edge(x, y));
                let (bcrit, boff) = block_struts(g, decomp);
                if chord_breaks {
                    for s in bcrit {
                        sink(&mut set, s);
                    }
                }
                set.off_critical.extend(boff);
            }
        }
    }
    // cross-component insertions are always admissible
    if cross_component && !g.has_edge(u.0, v.0) {
        set.critical.insert(norm(u.0, v.0));
    }
    set.off_critical = set
        .off_critical
        .difference(&set.critical)
        .copied()
        .collect();
    set
}

use crate::static_oracle::is_planar_static;

/// Which cost: over the critical struts or over all solid struts.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum CostKind {
    Critical,
    Solid,
}

/// Flip cost of type `metric` of an embedding for `(u,v)`: the sum over the
/// chosen struts of the distance to the embeddings admitting each strut.
pub fn cost(
    space: &EmbeddingSpace,
    strut_set: &StrutSet,
    metric: DistKind,
    node: usize,
    which: CostKind,
) -> Result<u32, OracleError> {
    let struts: Vec<(u32, u32)> = match which {
        CostKind::Critical => strut_set.critical.iter().copied().collect(),
        CostKind::Solid => strut_set.solid().into_iter().collect(),
    };
    let mut total = 0u32;
    for (a, b) in struts {
        let targets = space.admitting(VertexId(a), VertexId(b));
        let d = space
            .dist(metric, node, &targets)
            .ok_or(OracleError::InfiniteCost)?;
        total += d;
    }
    Ok(total)
}

/// Per-strut distance tables for one `(G;u,v)`: rows index the solid struts,
/// giving each node's distance per metric. The critical struts come first.
pub struct CostTables {
    pub struts: Vec<(u32, u32)>,
    pub critical_count: usize,
    pub clean: Vec<Vec<Option<u32>>>,
    pub sep: Vec<Vec<Option<u32>>>,
    pub p: Vec<Vec<Option<u32>>>,
}

impl CostTables {
    pub fn build(space: &EmbeddingSpace, set: &StrutSet) -> CostTables {
        let mut struts: Vec<(u32, u32)> = set.critical.iter().copied().collect();
        let critical_count = struts.len();
        struts.extend(set.off_critical.iter().copied());
        let mut clean = Vec::new();
        let mut sep = Vec::new();
        let mut p = Vec::new();
        for &(a, b) in &struts {
            let targets = space.admitting(VertexId(a), VertexId(b));
            clean.push(space.dist_table(DistKind::Clean, &targets));
            sep.push(space.dist_table(DistKind::Sep, &targets));
            p.push(space.dist_table(DistKind::P, &targets));
        }
        CostTables { struts, critical_count, clean, sep, p }
    }

    fn table(&self, metric: DistKind) -> &Vec<Vec<Option<u32>>> {
        match metric {
            DistKind::Clean => &self.clean,
            DistKind::Sep => &self.sep,
            DistKind::P => &self.p,
        }
    }

    /// Sum over struts; `None` when any strut is unreachable.
    pub fn cost(&self, metric: DistKind, node: usize, which: CostKind) -> Option<u32> {
        let rows = match which {
            CostKind::Critical => 0..self.critical_count,
            CostKind::Solid => 0..self.struts.len(),
        };
        let t = self.table(metric);
        let mut total = 0u32;
        for r in rows {
            total += t[r][node]?;
        }
        Some(total)
    }
}

// ----- property checks -----

/// Pass/fail record for the strut and cost properties of one `(G; u, v)`,
/// with a counterexample string per failed check, plus recorded quantities
/// that are logged rather than asserted.
#[derive(Clone, Debug, Default)]
pub struct PairReport {
    pub failures: Vec<String>,
    /// Lemma on dirty flips, checked as replacement-path existence; recorded.
    pub dirty_decomposition_ok: bool,
}

/// Whole-graph aggregate: every pair's report plus the recorded distance
/// quantities tied to the heavy-path approximation.
#[derive(Clone, Debug, Default)]
pub struct GraphReport {
    pub pair_failures: Vec<String>,
    pub dirty_failures: usize,
    /// Recorded: max over pairs of clean distance between good-embedding sets.
    pub s3_max_dist: Option<u32>,
    /// Recorded: max clean distance from a good embedding to the good set of
    /// any pair.
    pub good_set_max_dist: Option<u32>,
}

fn tri_connected_pair(g: &EdgeListGraph, a: u32, b: u32) -> bool {
    // no vertex and no vertex pair (avoiding a,b) separates a from b
    let adj = g.adjacency();
    let reach = |banned: &[u32]| -> bool {
        let mut seen = vec![false; g.n];
        for &x in banned {
            seen[x as usize] = true;
        }
        let mut stack = vec![a];
        seen[a as usize] = true;
        while let Some(x) = stack.pop() {
            if x == b {
                return true;
            }
            for &y in &adj[x as usize] {
                if !seen[y as usize] {
                    seen[y as usize] = true;
                    stack.push(y);
                }
            }
        }
        false
    };
    if !reach(&[]) {
        return false;
    }
    for p in 0..g.n as u32 {
        if p == a || p == b {
            continue;
        }
        if !reach(&[p]) {
            return false;
        }
        for q in p + 1..g.n as u32 {
            if q == a || q == b {
                continue;
            }
            if !reach(&[p, q]) {
                return false;
            }
        }
    }
    true
}

/// All strut and cost properties for one ordered pair. `space` and the
/// tables must belong to `g`.
pub fn check_properties(
    g: &EdgeListGraph,
    space: &EmbeddingSpace,
    u: VertexId,
    v: VertexId,
) -> PairReport {
    let mut rep = PairReport { failures: Vec::new(), dirty_decomposition_ok: true };
    let fail = |r: &mut PairReport, s: String| r.failures.push(s);
    let set = struts(g, u, v);
    let solid = set.solid();
    let tag = format!("({},{})", u.0, v.0);

    // S5: critical within solid
    if !set.critical.is_subset(&solid) {
        fail(&mut rep, format!("{} S5: critical not within solid", tag));
    }
    // S1: jointly simple and planar
    {
        let mut edges = g.edges.clone();
        for &(a, b) in &solid {
            if g.has_edge(a, b) {
                fail(&mut rep, format!("{} S1: strut ({},{}) already an edge", tag, a, b));
            }
            edges.push((a, b));
        }
        match EdgeListGraph::new(g.n, edges) {
            Ok(big) => {
                if !is_planar_static(&big) {
                    fail(&mut rep, format!("{} S1: struts break planarity", tag));
                }
            }
            Err(_) => fail(&mut rep, format!("{} S1: struts not simple", tag)),
        }
    }
    // S6 / S7
    let insertable = !g.has_edge(u.0, v.0) && is_planar_static(&g.with_edge(u.0, v.0));
    if g.has_edge(u.0, v.0) && !set.critical.is_empty() {
        fail(&mut rep, format!("{} S6: nonempty critical struts for an existing edge", tag));
    }
    if !g.has_edge(u.0, v.0) {
        let single = set.critical.len() == 1 && set.critical.contains(&norm(u.0, v.0));
        if single != insertable {
            fail(
                &mut rep,
                format!(
                    "{} S7: critical struts {:?} vs insertable {}",
                    tag, set.critical, insertable
                ),
            );
        }
    }
    // S4: insert-consistency of the solid struts
    if insertable {
        let g2 = g.with_edge(u.0, v.0);
        let set2 = struts(&g2, u, v);
        let mut expect = set2.solid();
        expect.insert(norm(u.0, v.0));
        if expect != solid {
            fail(
                &mut rep,
                format!("{} S4: solid {:?} vs after-insert {:?}", tag, solid, expect),
            );
        }
    }
    // S8: nonplanar insertions are blocked by triconnecting struts and the
    // stretch struts of insertable runs
    if !g.has_edge(u.0, v.0) && !insertable && g.components()[u.idx()] == g.components()[v.idx()] {
        let sub = crate::decomposition::component_subgraph(g, u.0);
        if let Ok(bc) = crate::decomposition::bc_tree(&sub) {
            let nu = bc.node_of_vertex(u.0).unwrap();
            let nv = bc.node_of_vertex(v.0).unwrap();
            let path = bc.tree_path(nu, nv);
            let mut cuts: Vec<u32> = vec![u.0];
            let mut blocks_on: Vec<usize> = Vec::new();
            for &x in &path {
                match bc.nodes[x].kind {
                    crate::decomposition::BcNodeKind::C => cuts.push(bc.nodes[x].vertices[0]),
                    crate::decomposition::BcNodeKind::B => blocks_on.push(x),
                }
            }
            cuts.push(v.0);
            for (i, &b) in blocks_on.iter().enumerate() {
                let (a0, a1) = (cuts[i], cuts[i + 1]);
                let bg = crate::decomposition::subgraph(g, &bc.nodes[b].edges);
                if bg.has_edge(a0, a1) || is_planar_static(&bg.with_edge(a0, a1)) {
                    continue;
                }
                // S8a: the critical struts inside this block triconnect its
                // terminals in a planar supergraph
                let verts: BTreeSet<u32> = bc.nodes[b].vertices.iter().copied().collect();
                let si: Vec<(u32, u32)> = set
                    .critical
                    .iter()
                    .copied()
                    .filter(|&(x, y)| verts.contains(&x) && verts.contains(&y))
                    .collect();
                let mut edges = bg.edges.clone();
                edges.extend(si.iter().copied());
                match EdgeListGraph::new(g.n, edges) {
                    Ok(big) => {
                        if !is_planar_static(&big) {
                            fail(&mut rep, format!("{} S8a: block struts nonplanar", tag));
                        } else if !tri_connected_pair(&big, a0, a1) {
                            fail(
                                &mut rep,
                                format!("{} S8a: ({},{}) not triconnected with {:?}", tag, a0, a1, si),
                            );
                        }
                    }
                    Err(_) => fail(&mut rep, format!("{} S8a: struts not simple", tag)),
                }
            }
            // S8b: every maximal insertable run with a non-bridge block has
            // its stretch strut
            let k = blocks_on.len();
            let qualifies = |l: usize, h: usize| -> bool {
                let (a, b) = (cuts[l], cuts[h + 1]);
                a != b && (g.has_edge(a, b) || is_planar_static(&g.with_edge(a, b)))
            };
            for l in 0..k {
                for h in l..k {
                    if !qualifies(l, h)
                        || (l > 0 && qualifies(l - 1, h))
                        || (h + 1 < k && qualifies(l, h + 1))
                    {
                        continue;
                    }
                    let has_nonbridge =
                        (l..=h).any(|i| bc.nodes[blocks_on[i]].edges.len() > 1);
                    let (a, b) = (cuts[l], cuts[h + 1]);
                    if has_nonbridge && !g.has_edge(a, b) && !set.critical.contains(&norm(a, b)) {
                        fail(
                            &mut rep,
                            format!("{} S8b: stretch strut ({},{}) missing", tag, a, b),
                        );
                    }
                }
            }
        }
    }

    // cost tables for the metric properties
    let tables = CostTables::build(space, &set);
    let n_nodes = space.len();
    let metrics = [DistKind::Clean, DistKind::Sep, DistKind::P];
    let costs = |m: DistKind, i: usize, w: CostKind| tables.cost(m, i, w);
    // finiteness (a strut unreachable in the clean move graph breaks S1)
    for i in 0..n_nodes {
        for m in metrics {
            if costs(m, i, CostKind::Solid).is_none() {
                fail(&mut rep, format!("{} infinite cost at node {}", tag, i));
                return rep;
            }
        }
    }
    // chains and the zero characterization
    let targets_uv = space.admitting(u, v);
    for i in 0..n_nodes {
        let cc = costs(DistKind::Clean, i, CostKind::Critical).unwrap();
        let cs = costs(DistKind::Sep, i, CostKind::Critical).unwrap();
        let cp = costs(DistKind::P, i, CostKind::Critical).unwrap();
        let sc = costs(DistKind::Clean, i, CostKind::Solid).unwrap();
        let ss = costs(DistKind::Sep, i, CostKind::Solid).unwrap();
        let sp = costs(DistKind::P, i, CostKind::Solid).unwrap();
        if !(sc >= cc && ss >= cs && sp >= cp) {
            fail(&mut rep, format!("{} chain: solid below critical at node {}", tag, i));
        }
        if !(cc >= cs && cs >= cp && sc >= ss && ss >= sp) {
            fail(&mut rep, format!("{} chain: type order violated at node {}", tag, i));
        }
        if insertable {
            let admits = targets_uv.contains(&i);
            if (cc == 0) != admits {
                fail(
                    &mut rep,
                    format!("{} zero-cost iff admitting violated at node {}", tag, i),
                );
            }
            // the critical cost must equal the plain flip distance
            for m in metrics {
                let d = space.dist(m, i, &targets_uv).unwrap();
                let c = costs(m, i, CostKind::Critical).unwrap();
                if d != c {
                    fail(
                        &mut rep,
                        format!("{} cost-vs-distance mismatch ({:?}) at node {}: {} vs {}", tag, m, i, d, c),
                    );
                }
            }
        }
    }
    // per-flip deltas, type locality, decreasing-flip existence,
    // strut independence, dirty decomposition
    for i in 0..n_nodes {
        let emb = space.embedding(i);
        for mv in enumerate_flips(&emb) {
            let j = space.node_index(&mv.result).unwrap();
            // S2: a clean move changes at most one solid strut's distance
            if mv.clean {
                let changed = (0..tables.struts.len())
                    .filter(|&r| tables.clean[r][i] != tables.clean[r][j])
                    .count();
                if changed > 1 {
                    fail(
                        &mut rep,
                        format!("{} S2: {} struts changed by one flip at node {}", tag, changed, i),
                    );
                }
            }
            let critical_flip = mv.moved_interior.contains(&u) != mv.moved_interior.contains(&v);
            for m in metrics {
                for w in [CostKind::Critical, CostKind::Solid] {
                    let a = costs(m, i, w).unwrap() as i64;
                    let b = costs(m, j, w).unwrap() as i64;
                    if (a - b).abs() > 1 {
                        fail(
                            &mut rep,
                            format!("{} delta out of range ({:?},{:?}) at node {}", tag, m, w, i),
                        );
                    }
                }
                let dc = costs(m, i, CostKind::Critical).unwrap() as i64
                    - costs(m, j, CostKind::Critical).unwrap() as i64;
                let ds = costs(m, i, CostKind::Solid).unwrap() as i64
                    - costs(m, j, CostKind::Solid).unwrap() as i64;
                if dc != 0 && !critical_flip {
                    fail(
                        &mut rep,
                        format!("{} non-critical flip changed critical cost at node {}", tag, i),
                    );
                }
                if dc != 0 && ds != dc {
                    fail(
                        &mut rep,
                        format!("{} solid delta differs from critical delta at node {}", tag, i),
                    );
                }
            }
            // type locality
            let dp_c = tables.cost(DistKind::P, i, CostKind::Critical).unwrap() as i64
                - tables.cost(DistKind::P, j, CostKind::Critical).unwrap() as i64;
            let dp_s = tables.cost(DistKind::P, i, CostKind::Solid).unwrap() as i64
                - tables.cost(DistKind::P, j, CostKind::Solid).unwrap() as i64;
            let dsep_c = tables.cost(DistKind::Sep, i, CostKind::Critical).unwrap() as i64
                - tables.cost(DistKind::Sep, j, CostKind::Critical).unwrap() as i64;
            let dsep_s = tables.cost(DistKind::Sep, i, CostKind::Solid).unwrap() as i64
                - tables.cost(DistKind::Sep, j, CostKind::Solid).unwrap() as i64;
            match mv.kind {
                FlipKind::SepSR if mv.clean => {
                    if dp_c != 0 || dp_s != 0 {
                        fail(&mut rep, format!("{} SR flip changed a P cost at node {}", tag, i));
                    }
                }
                FlipKind::Articulation => {
                    if dp_c != 0 || dp_s != 0 || dsep_c != 0 || dsep_s != 0 {
                        fail(
                            &mut rep,
                            format!("{} articulation flip changed a separation cost at node {}", tag, i),
                        );
                    }
                }
                _ => {}
            }
            // dirty flips decompose into one clean separation flip and a few
            // articulation flips, at most one of which moves any cost
            if !mv.clean && rep.dirty_decomposition_ok {
                if !self_dirty_replacement(space, &tables, i, j) {
                    rep.dirty_decomposition_ok = false;
                }
            }
        }
        // decreasing flip existence over clean moves
        for m in metrics {
            for w in [CostKind::Critical, CostKind::Solid] {
                let c = costs(m, i, w).unwrap();
                if c == 0 {
                    continue;
                }
                let mut found = false;
                for e in &space.edges {
                    if !e.clean || (e.a != i && e.b != i) {
                        continue;
                    }
                    let o = if e.a == i { e.b } else { e.a };
                    if costs(m, o, w).unwrap() < c {
                        found = true;
                        break;
                    }
                }
                if !found {
                    fail(
                        &mut rep,
                        format!("{} no decreasing clean flip ({:?},{:?}) at node {}", tag, m, w, i),
                    );
                }
            }
        }
    }
    // insert-consistency of the costs themselves
    if insertable && g.m() + 1 <= DEFAULT_ENUM_BOUND {
        let g2 = g.with_edge(u.0, v.0);
        if let Ok(space2) = EmbeddingSpace::build(&g2, DEFAULT_ENUM_BOUND) {
            let set2 = struts(&g2, u, v);
            let tables2 = CostTables::build(&space2, &set2);
            for i2 in 0..space2.len() {
                let mut emb2 = space2.embedding(i2);
                let e = emb2
                    .edge_ids()
                    .find(|&e| {
                        let (a, b) = emb2.endpoints(e).unwrap();
                        norm(a.0, b.0) == norm(u.0, v.0)
                    })
                    .unwrap();
                emb2.delete_edge(e).unwrap();
                let key = emb2.rotation_key();
                let Some(i1) = space.node_index(&key) else {
                    fail(&mut rep, format!("{} restriction missing from the space", tag));
                    continue;
                };
                if !targets_uv.contains(&i1) {
                    continue;
                }
                for m in metrics {
                    let a = tables.cost(m, i1, CostKind::Solid).unwrap();
                    let b = tables2.cost(m, i2, CostKind::Solid);
                    if b != Some(a) {
                        fail(
                            &mut rep,
                            format!(
                                "{} insert-consistency ({:?}): {} vs {:?} at node {}",
                                tag, m, a, b, i1
                            ),
                        );
                    }
                }
            }
        }
    }
    rep
}

/// Replacement-path existence for a dirty separation flip `i -> j`: a path
/// of at most five moves with exactly one clean separation flip and the rest
/// articulation flips, changing any cost on at most one of its edges.
fn self_dirty_replacement(
    space: &EmbeddingSpace,
    tables: &CostTables,
    i: usize,
    j: usize,
) -> bool {
    let cost_key = |n: usize| -> Vec<Option<u32>> {
        let mut k = Vec::new();
        for m in [DistKind::Clean, DistKind::Sep, DistKind::P] {
            for w in [CostKind::Critical, CostKind::Solid] {
                k.push(tables.cost(m, n, w));
            }
        }
        k
    };
    // depth-limited search over (node, used separation flip, cost changes)
    let mut stack = vec![(i, false, 0usize, 0usize)];
    let mut seen: BTreeSet<(usize, bool, usize)> = BTreeSet::new();
    while let Some((at, used_sep, changes, depth)) = stack.pop() {
        if at == j && used_sep && changes <= 1 {
            return true;
        }
        if depth == 5 {
            continue;
        }
        for e in &space.edges {
            if !e.clean || (e.a != at && e.b != at) {
                continue;
            }
            let next = if e.a == at { e.b } else { e.a };
            let is_sep = matches!(e.kind, FlipKind::SepSR | FlipKind::SepP);
            if is_sep && used_sep {
                continue;
            }
            let changed = if cost_key(at) == cost_key(next) { 0 } else { 1 };
            let state = (next, used_sep || is_sep, changes + changed);
            if state.2 > 1 {
                continue;
            }
            if seen.insert(state) {
                stack.push((state.0, state.1, state.2, depth + 1));
            }
        }
    }
    false
}

/// Run every per-pair property over all vertex pairs of a connected graph,
/// plus the recorded good-embedding distance quantities.
pub fn check_graph(g: &EdgeListGraph, bound: usize) -> Result<GraphReport, OracleError> {
    let space = EmbeddingSpace::build(g, bound)?;
    let mut rep = GraphReport::default();
    let mut good_sets: Vec<(u32, u32, BTreeSet<usize>)> = Vec::new();
    for a in 0..g.n as u32 {
        for b in a + 1..g.n as u32 {
            let pr = check_properties(g, &space, VertexId(a), VertexId(b));
            rep.pair_failures.extend(pr.failures);
            if !pr.dirty_decomposition_ok {
                rep.dirty_failures += 1;
            }
            let set = struts(g, VertexId(a), VertexId(b));
            let tables = CostTables::build(&space, &set);
            let mut good = BTreeSet::new();
            for i in 0..space.len() {
                if tables.cost(DistKind::Clean, i, CostKind::Solid) == Some(0) {
                    good.insert(i);
                }
            }
            good_sets.push((a, b, good));
        }
    }
    // recorded distances between good sets (empty sets are skipped)
    for (_, _, from) in &good_sets {
        if from.is_empty() {
            continue;
        }
        for (_, _, to) in &good_sets {
            if to.is_empty() {
                continue;
            }
            let table = space.dist_table(DistKind::Clean, to);
            let d = from.iter().filter_map(|&i| table[i]).min();
            match d {
                Some(d) => {
                    rep.s3_max_dist = Some(rep.s3_max_dist.map_or(d, |m| m.max(d)));
                }
                None => rep.pair_failures.push("good set unreachable".into()),
            }
        }
    }
    let all_good: BTreeSet<usize> = good_sets.iter().flat_map(|(_, _, s)| s.iter().copied()).collect();
    if !all_good.is_empty() {
        for (_, _, to) in &good_sets {
            if to.is_empty() {
                continue;
            }
            let table = space.dist_table(DistKind::Clean, to);
            for &i in &all_good {
                if let Some(d) = table[i] {
                    rep.good_set_max_dist = Some(rep.good_set_max_dist.map_or(d, |m| m.max(d)));
                }
            }
        }
    }
    Ok(rep)
}

/// Rebuild an embedding from a flat rotation key.
pub fn decode_key(n: usize, key: &RotKey) -> EmbeddedGraph {
    let mut rots: Vec<Vec<(VertexId, u32)>> = Vec::with_capacity(n);
    let mut cur = Vec::new();
    for &x in key {
        if x == u32::MAX {
            rots.push(std::mem::take(&mut cur));
        } else {
            cur.push((VertexId(x / 64), x % 64));
        }
    }
    EmbeddedGraph::from_rotation_lists(n, &rots).expect("stored key is valid")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn embedding_counts() {
        let tri = EmbeddingSpace::build(&fixtures::tri(), DEFAULT_ENUM_BOUND).unwrap();
        assert_eq!(tri.len(), 1);
        let k4 = EmbeddingSpace::build(&fixtures::k4(), DEFAULT_ENUM_BOUND).unwrap();
        assert_eq!(k4.len(), 2);
        assert!(enumerate_embeddings(&fixtures::k5(), DEFAULT_ENUM_BOUND)
            .unwrap()
            .is_empty());
        let big = EdgeListGraph::new(12, (0..10).map(|i| (i, i + 1)).collect()).unwrap();
        assert_eq!(
            enumerate_embeddings(&big, DEFAULT_ENUM_BOUND).unwrap_err(),
            OracleError::TooLarge(10)
        );
    }

    #[test]
    fn flip_inventory_on_fixtures() {
        let tri = fixtures::embed(&fixtures::tri());
        assert!(enumerate_flips(&tri).is_empty());
        let bow = fixtures::embed(&fixtures::bowtie());
        let moves = enumerate_flips(&bow);
        assert!(!moves.is_empty());
        assert!(moves.iter().all(|m| m.kind == FlipKind::Articulation));
        let k24 = fixtures::k2_4_embedded();
        let moves = enumerate_flips(&k24);
        assert!(moves.iter().any(|m| m.kind == FlipKind::SepP));
    }

    #[test]
    fn k4_reflection_connects() {
        let space = EmbeddingSpace::build(&fixtures::k4(), DEFAULT_ENUM_BOUND).unwrap();
        assert_eq!(space.len(), 2);
        assert!(space.clean_connected());
        assert_eq!(space.edges.len(), 1);
        assert_eq!(space.edges[0].kind, FlipKind::Reflection);
    }

    #[test]
    fn k2_4_p_distance_one() {
        let space = EmbeddingSpace::build(&fixtures::k2_4(), DEFAULT_ENUM_BOUND).unwrap();
        assert_eq!(space.len(), 6);
        let emb = fixtures::k2_4_embedded();
        let h = space.node_index(&emb.rotation_key()).unwrap();
        let target = space.admitting(VertexId(2), VertexId(4));
        assert!(!target.contains(&h));
        assert_eq!(space.dist(DistKind::Clean, h, &target), Some(1));
        assert_eq!(space.dist(DistKind::P, h, &target), Some(1));
        // weight domination
        for i in 0..space.len() {
            let c = space.dist(DistKind::Clean, i, &target).unwrap();
            let s = space.dist(DistKind::Sep, i, &target).unwrap();
            let p = space.dist(DistKind::P, i, &target).unwrap();
            assert!(c >= s && s >= p);
        }
    }
}

#[cfg(test)]
mod strut_tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn strut_basics() {
        let g = fixtures::k2_4();
        // existing edge: no critical struts
        let s = struts(&g, VertexId(0), VertexId(2));
        assert!(s.critical.is_empty());
        // insertable non-edge: exactly the edge itself
        let s = struts(&g, VertexId(2), VertexId(4));
        assert_eq!(s.critical.iter().copied().collect::<Vec<_>>(), vec![(2, 4)]);
        // chain: single long strut
        let g = fixtures::chain3();
        let s = struts(&g, VertexId(0), VertexId(6));
        assert_eq!(s.critical.iter().copied().collect::<Vec<_>>(), vec![(0, 6)]);
    }

    #[test]
    fn cube_antipodal_struts_empty() {
        let g = fixtures::cube();
        let s = struts(&g, VertexId(0), VertexId(7));
        assert!(s.critical.is_empty());
    }

    #[test]
    fn k4_double_subdivision_triconnecting_struts() {
        // k4 on 0..4 with edges (0,1) and (2,3) subdivided through 4 and 5:
        // the terminals 4,5 admit no chord, so the critical struts
        // triconnect across the crossing skeleton
        let g = EdgeListGraph::new(
            6,
            vec![(0, 4), (4, 1), (2, 5), (5, 3), (0, 2), (0, 3), (1, 2), (1, 3)],
        )
        .unwrap();
        assert!(is_planar_static(&g));
        assert!(!is_planar_static(&g.with_edge(4, 5)));
        let s = struts(&g, VertexId(4), VertexId(5));
        assert!(!s.critical.contains(&(4, 5)));
        assert!(!s.critical.is_empty(), "expected triconnecting struts");
        let mut edges = g.edges.clone();
        edges.extend(s.critical.iter().copied());
        let big = EdgeListGraph::new(6, edges).unwrap();
        assert!(is_planar_static(&big));
        assert!(tri_connected_pair(&big, 4, 5));
    }

    #[test]
    fn fixture_pair_reports_clean() {
        for g in [fixtures::tri(), fixtures::c4(), fixtures::bowtie(), fixtures::k2_4()] {
            let rep = check_graph(&g, DEFAULT_ENUM_BOUND).unwrap();
            assert!(rep.pair_failures.is_empty(), "{:?}", rep.pair_failures);
            assert_eq!(rep.dirty_failures, 0);
        }
    }
}
