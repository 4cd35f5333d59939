//! Independent static ground truth: planarity testing and plane-embedding
//! construction by incremental face embedding (Demoucron-style), sharing no
//! code with the dynamic maintenance path.

use crate::embedding::EmbeddedGraph;
use crate::ids::VertexId;
use std::collections::BTreeSet;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("self-loop ({0},{0})")]
    SelfLoop(u32),
    #[error("duplicate edge ({0},{1})")]
    DuplicateEdge(u32, u32),
    #[error("vertex {0} out of range")]
    OutOfRange(u32),
}

/// Simple undirected graph as an edge list. No loops, no parallel edges.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgeListGraph {
    pub n: usize,
    pub edges: Vec<(u32, u32)>,
}

impl EdgeListGraph {
    pub fn new(n: usize, edges: Vec<(u32, u32)>) -> Result<Self, GraphError> {
        let mut seen = BTreeSet::new();
        for &(a, b) in &edges {
            if a == b {
                return Err(GraphError::SelfLoop(a));
            }
            if a as usize >= n {
                return Err(GraphError::OutOfRange(a));
            }
            if b as usize >= n {
                return Err(GraphError::OutOfRange(b));
            }
            if !seen.insert((a.min(b), a.max(b))) {
                return Err(GraphError::DuplicateEdge(a, b));
            }
        }
        Ok(EdgeListGraph { n, edges })
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn has_edge(&self, a: u32, b: u32) -> bool {
        self.edges
            .iter()
            .any(|&(x, y)| (x, y) == (a, b) || (x, y) == (b, a))
    }

    pub fn with_edge(&self, a: u32, b: u32) -> EdgeListGraph {
        let mut edges = self.edges.clone();
        edges.push((a, b));
        EdgeListGraph { n: self.n, edges }
    }

    pub fn adjacency(&self) -> Vec<Vec<u32>> {
        let mut adj = vec![Vec::new(); self.n];
        for &(a, b) in &self.edges {
            adj[a as usize].push(b);
            adj[b as usize].push(a);
        }
        adj
    }

    /// Component representative (smallest vertex) per vertex.
    pub fn components(&self) -> Vec<u32> {
        let adj = self.adjacency();
        let mut comp: Vec<u32> = (0..self.n as u32).collect();
        let mut seen = vec![false; self.n];
        for v0 in 0..self.n {
            if seen[v0] {
                continue;
            }
            let mut stack = vec![v0 as u32];
            seen[v0] = true;
            let mut members = vec![v0 as u32];
            while let Some(v) = stack.pop() {
                for &w in &adj[v as usize] {
                    if !seen[w as usize] {
                        seen[w as usize] = true;
                        members.push(w);
                        stack.push(w);
                    }
                }
            }
            let rep = *members.iter().min().unwrap();
            for m in members {
                comp[m as usize] = rep;
            }
        }
        comp
    }

    pub fn is_connected(&self) -> bool {
        if self.n == 0 {
            return true;
        }
        let comp = self.components();
        comp.iter().all(|&c| c == comp[0])
    }
}

/// Biconnected components (blocks) of the graph as sets of edge indices,
/// via the classic DFS edge-stack method.
pub fn blocks(g: &EdgeListGraph) -> Vec<Vec<usize>> {
    let n = g.n;
    let mut adj: Vec<Vec<(u32, usize)>> = vec![Vec::new(); n];
    for (i, &(a, b)) in g.edges.iter().enumerate() {
        adj[a as usize].push((b, i));
        adj[b as usize].push((a, i));
    }
    let mut t_in = vec![usize::MAX; n];
    let mut low = vec![0usize; n];
    let mut timer = 0usize;
    let mut out = Vec::new();
    let mut edge_stack: Vec<usize> = Vec::new();
    // Iterative DFS: stack of (vertex, parent edge index, next adjacency slot).
    for root in 0..n {
        if t_in[root] != usize::MAX {
            continue;
        }
        let mut stack: Vec<(usize, usize, usize)> = vec![(root, usize::MAX, 0)];
        t_in[root] = timer;
        low[root] = timer;
        timer += 1;
        while let Some(&mut (v, pe, ref mut slot)) = stack.last_mut() {
            if *slot < adj[v].len() {
                let (w, ei) = adj[v][*slot];
                *slot += 1;
                if ei == pe {
                    continue;
                }
                let w = w as usize;
                if t_in[w] == usize::MAX {
                    edge_stack.push(ei);
                    t_in[w] = timer;
                    low[w] = timer;
                    timer += 1;
                    stack.push((w, ei, 0));
                } else if t_in[w] < t_in[v] {
                    edge_stack.push(ei);
                    low[v] = low[v].min(t_in[w]);
                }
            } else {
                stack.pop();
                if let Some(&mut (p, _, _)) = stack.last_mut() {
                    low[p] = low[p].min(low[v]);
                    if low[v] >= t_in[p] {
                        // p is an articulation point (or root); pop a block.
                        let mut blk = Vec::new();
                        while let Some(&ei) = edge_stack.last() {
                            let (a, b) = g.edges[ei];
                            let (a, b) = (a as usize, b as usize);
                            if t_in[a] >= t_in[v] || t_in[b] >= t_in[v] || (a, b) == (p, v) || (b, a) == (p, v)
                            {
                                blk.push(ei);
                                edge_stack.pop();
                            } else {
                                break;
                            }
                        }
                        if !blk.is_empty() {
                            out.push(blk);
                        }
                    }
                }
            }
        }
    }
    out
}

/// Local plane embedding of one block under construction.
struct PlaneSub<'a> {
    g: &'a EdgeListGraph,
    block_edges: Vec<usize>,
    embedded_edge: Vec<bool>,
    in_h: Vec<bool>,
    /// Rotation per vertex: cyclic list of (neighbor, edge index).
    rot: Vec<Vec<(u32, usize)>>,
}

impl<'a> PlaneSub<'a> {
    /// Faces of the current partial embedding as dart cycles; a dart is
    /// (from, to, edge index).
    fn trace_faces(&self) -> Vec<Vec<(u32, u32, usize)>> {
        let mut pos = vec![std::collections::BTreeMap::new(); self.g.n];
        for v in 0..self.g.n {
            for (i, &(w, e)) in self.rot[v].iter().enumerate() {
                pos[v].insert((w, e), i);
            }
        }
        let mut seen: BTreeSet<(u32, u32, usize)> = BTreeSet::new();
        let mut faces = Vec::new();
        for v in 0..self.g.n as u32 {
            for &(w, e) in &self.rot[v as usize] {
                let start = (v, w, e);
                if seen.contains(&start) {
                    continue;
                }
                let mut face = Vec::new();
                let mut d = start;
                loop {
                    seen.insert(d);
                    face.push(d);
                    // next dart on face: successor of the twin in rot[d.to]
                    let (from, to, e) = d;
                    let i = pos[to as usize][&(from, e)];
                    let deg = self.rot[to as usize].len();
                    let (nw, ne) = self.rot[to as usize][(i + 1) % deg];
                    d = (to, nw, ne);
                    if d == start {
                        break;
                    }
                }
                faces.push(face);
            }
        }
        faces
    }

    /// Insert a path `verts` (first and last embedded, interior fresh) into
    /// face `face`, splitting it.
    fn embed_path(&mut self, verts: &[u32], path_edges: &[usize], face: &[(u32, u32, usize)]) {
        let a = verts[0];
        let b = *verts.last().unwrap();
        // Insert dart (a -> x1) right after the reversal of the face dart
        // entering a, so the new edge lands inside this face.
        let insert_at = |this: &mut Self, v: u32, new_nbr: u32, new_edge: usize, face: &[(u32, u32, usize)]| {
            let d_in = face
                .iter()
                .find(|&&(_, to, _)| to == v)
                .copied()
                .expect("attachment vertex on face");
            let (from, _, e) = d_in;
            let i = this.rot[v as usize]
                .iter()
                .position(|&(w, ei)| (w, ei) == (from, e))
                .unwrap();
            this.rot[v as usize].insert(i + 1, (new_nbr, new_edge));
        };
        insert_at(self, a, verts[1], path_edges[0], face);
        insert_at(self, b, verts[verts.len() - 2], *path_edges.last().unwrap(), face);
        for i in 1..verts.len() - 1 {
            let v = verts[i] as usize;
            self.rot[v].push((verts[i - 1], path_edges[i - 1]));
            self.rot[v].push((verts[i + 1], path_edges[i]));
            self.in_h[v] = true;
        }
        for &e in path_edges {
            self.embedded_edge[e] = true;
        }
    }
}

/// Demoucron-style planarity test and embedding for a single biconnected
/// block with at least one cycle. Returns `None` when the block is nonplanar.
fn embed_block(g: &EdgeListGraph, block: &[usize]) -> Option<Vec<Vec<(u32, usize)>>> {
    let verts: BTreeSet<u32> = block
        .iter()
        .flat_map(|&e| [g.edges[e].0, g.edges[e].1])
        .collect();
    let nb = verts.len();
    let mb = block.len();
    if nb >= 3 && mb > 3 * nb - 6 {
        return None;
    }
    // Find a cycle by DFS inside the block.
    let mut adj: Vec<Vec<(u32, usize)>> = vec![Vec::new(); g.n];
    for &e in block {
        let (a, b) = g.edges[e];
        adj[a as usize].push((b, e));
        adj[b as usize].push((a, e));
    }
    let start = *verts.iter().next().unwrap();
    let mut parent: Vec<Option<(u32, usize)>> = vec![None; g.n];
    let mut state = vec![0u8; g.n];
    let mut stack = vec![(start, usize::MAX)];
    let mut cycle: Vec<(u32, usize)> = Vec::new(); // (vertex, edge to next)
    'dfs: while let Some((v, pe)) = stack.pop() {
        if state[v as usize] != 0 {
            continue;
        }
        state[v as usize] = 1;
        for &(w, e) in &adj[v as usize] {
            if e == pe {
                continue;
            }
            if state[w as usize] == 1 {
                // back edge closes a cycle w .. v, e
                let mut path = vec![(v, e)];
                let mut cur = v;
                while cur != w {
                    let (p, pe2) = parent[cur as usize].unwrap();
                    path.push((p, pe2));
                    cur = p;
                }
                path.reverse();
                // path is [(w, e_to_next), ..., (v, e_back)] as a cycle
                cycle = path;
                break 'dfs;
            }
            if state[w as usize] == 0 {
                parent[w as usize] = Some((v, e));
                stack.push((w, e));
            }
        }
    }
    if cycle.is_empty() {
        // acyclic block: a single edge, embedded trivially by the caller
        return None;
    }
    let mut sub = PlaneSub {
        g,
        block_edges: block.to_vec(),
        embedded_edge: vec![false; g.edges.len()],
        in_h: vec![false; g.n],
        rot: vec![Vec::new(); g.n],
    };
    let k = cycle.len();
    for i in 0..k {
        let (v, e_next) = cycle[i];
        let (w_next, _) = cycle[(i + 1) % k];
        let (_, e_prev) = cycle[(i + k - 1) % k];
        let (w_prev, _) = cycle[(i + k - 1) % k];
        sub.rot[v as usize] = vec![(w_next, e_next), (w_prev, e_prev)];
        sub.in_h[v as usize] = true;
        sub.embedded_edge[e_next] = true;
    }
    loop {
        let remaining: Vec<usize> = sub
            .block_edges
            .iter()
            .copied()
            .filter(|&e| !sub.embedded_edge[e])
            .collect();
        if remaining.is_empty() {
            return Some(sub.rot);
        }
        // Fragments: single chords, and components of G - V(H) with their
        // attachment edges.
        let mut frag_of_vertex: Vec<usize> = vec![usize::MAX; g.n];
        let mut fragments: Vec<(Vec<usize>, BTreeSet<u32>)> = Vec::new(); // (edges, attachments)
        for &e in &remaining {
            let (a, b) = g.edges[e];
            for v in [a, b] {
                if !sub.in_h[v as usize] && frag_of_vertex[v as usize] == usize::MAX {
                    // flood the non-embedded component of v
                    let id = fragments.len();
                    fragments.push((Vec::new(), BTreeSet::new()));
                    let mut st = vec![v];
                    frag_of_vertex[v as usize] = id;
                    while let Some(x) = st.pop() {
                        for &(y, _) in &adj[x as usize] {
                            if !sub.in_h[y as usize] && frag_of_vertex[y as usize] == usize::MAX {
                                frag_of_vertex[y as usize] = id;
                                st.push(y);
                            }
                        }
                    }
                }
            }
        }
        for &e in &remaining {
            let (a, b) = g.edges[e];
            let fa = if sub.in_h[a as usize] { usize::MAX } else { frag_of_vertex[a as usize] };
            let fb = if sub.in_h[b as usize] { usize::MAX } else { frag_of_vertex[b as usize] };
            let id = match (fa, fb) {
                (usize::MAX, usize::MAX) => {
                    fragments.push((vec![e], [a, b].into_iter().collect()));
                    continue;
                }
                (id, usize::MAX) | (usize::MAX, id) | (id, _) => id,
            };
            fragments[id].0.push(e);
            if sub.in_h[a as usize] {
                fragments[id].1.insert(a);
            }
            if sub.in_h[b as usize] {
                fragments[id].1.insert(b);
            }
        }
        fragments.retain(|(es, _)| !es.is_empty());
        let faces = sub.trace_faces();
        let face_vertexsets: Vec<BTreeSet<u32>> = faces
            .iter()
            .map(|f| f.iter().map(|&(from, _, _)| from).collect())
            .collect();
        let mut choice: Option<(usize, usize)> = None; // (fragment, face)
        let mut forced = false;
        for (fi, (_, att)) in fragments.iter().enumerate() {
            let admissible: Vec<usize> = face_vertexsets
                .iter()
                .enumerate()
                .filter(|(_, vs)| att.is_subset(vs))
                .map(|(i, _)| i)
                .collect();
            if admissible.is_empty() {
                return None;
            }
            if admissible.len() == 1 && !forced {
                choice = Some((fi, admissible[0]));
                forced = true;
            } else if choice.is_none() {
                choice = Some((fi, admissible[0]));
            }
        }
        let (fi, face_i) = choice.unwrap();
        let (frag_edges, att) = &fragments[fi];
        // Alpha-path between two attachments through the fragment.
        let att_vec: Vec<u32> = att.iter().copied().collect();
        let a = att_vec[0];
        let in_frag: BTreeSet<usize> = frag_edges.iter().copied().collect();
        let mut prev: Vec<Option<(u32, usize)>> = vec![None; g.n];
        let mut q = std::collections::VecDeque::new();
        let mut found: Option<u32> = None;
        let mut visited = vec![false; g.n];
        visited[a as usize] = true;
        q.push_back(a);
        'bfs: while let Some(x) = q.pop_front() {
            for &(y, e) in &adj[x as usize] {
                if !in_frag.contains(&e) {
                    continue;
                }
                if visited[y as usize] {
                    continue;
                }
                visited[y as usize] = true;
                prev[y as usize] = Some((x, e));
                if sub.in_h[y as usize] {
                    found = Some(y);
                    break 'bfs;
                }
                q.push_back(y);
            }
        }
        let b = found.expect("fragment has a second attachment in a biconnected block");
        let mut verts = vec![b];
        let mut path_edges = Vec::new();
        let mut cur = b;
        while cur != a {
            let (p, e) = prev[cur as usize].unwrap();
            path_edges.push(e);
            verts.push(p);
            cur = p;
        }
        verts.reverse();
        path_edges.reverse();
        sub.embed_path(&verts, &path_edges, &faces[face_i]);
    }
}

/// True iff the graph is planar. Components with `m > 3n - 6` (for `n >= 3`)
/// short-circuit to false, consistently with the full test.
pub fn is_planar_static(g: &EdgeListGraph) -> bool {
    find_embedding_static(g).is_some()
}

/// A plane rotation system for the graph, or `None` when it is nonplanar.
/// Blocks are embedded independently and glued at articulation points.
pub fn find_embedding_static(g: &EdgeListGraph) -> Option<EmbeddedGraph> {
    let comp = g.components();
    {
        // per-component edge shortcut
        let mut vc = std::collections::BTreeMap::new();
        let mut ec = std::collections::BTreeMap::new();
        for v in 0..g.n {
            *vc.entry(comp[v]).or_insert(0usize) += 1;
        }
        for &(a, _) in &g.edges {
            *ec.entry(comp[a as usize]).or_insert(0usize) += 1;
        }
        for (c, &m) in &ec {
            let n = vc[c];
            if n >= 3 && m > 3 * n - 6 {
                return None;
            }
        }
    }
    let mut rot: Vec<Vec<(u32, usize)>> = vec![Vec::new(); g.n];
    for block in blocks(g) {
        if block.len() == 1 {
            let (a, b) = g.edges[block[0]];
            rot[a as usize].push((b, block[0]));
            rot[b as usize].push((a, block[0]));
            continue;
        }
        let block_rot = embed_block(g, &block)?;
        for v in 0..g.n {
            rot[v].extend(block_rot[v].iter().copied());
        }
    }
    let lists: Vec<Vec<(VertexId, u32)>> = rot
        .into_iter()
        .map(|r| r.into_iter().map(|(w, _)| (VertexId(w), 0)).collect())
        .collect();
    let emb = EmbeddedGraph::from_rotation_lists(g.n, &lists).expect("well-formed rotations");
    Some(emb)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn classics() {
        assert!(is_planar_static(&fixtures::tri()));
        assert!(is_planar_static(&fixtures::k4()));
        assert!(is_planar_static(&fixtures::cube()));
        assert!(!is_planar_static(&fixtures::k5()));
        assert!(!is_planar_static(&fixtures::k3_3()));
    }

    #[test]
    fn k5_minus_any_edge_is_planar() {
        let k5 = fixtures::k5();
        for skip in 0..k5.edges.len() {
            let edges: Vec<_> = k5
                .edges
                .iter()
                .enumerate()
                .filter(|&(i, _)| i != skip)
                .map(|(_, &e)| e)
                .collect();
            let g = EdgeListGraph::new(5, edges).unwrap();
            assert!(is_planar_static(&g));
        }
    }

    #[test]
    fn embeddings_validate() {
        for g in [
            fixtures::tri(),
            fixtures::c4(),
            fixtures::k4(),
            fixtures::cube(),
            fixtures::bowtie(),
            fixtures::chain3(),
            fixtures::k2_4(),
        ] {
            let mut emb = find_embedding_static(&g).unwrap();
            let report = emb.validate();
            assert!(report.is_ok(), "{:?}", report.violations);
            assert_eq!(emb.edge_count(), g.m());
        }
    }

    #[test]
    fn k5_returns_none() {
        assert!(find_embedding_static(&fixtures::k5()).is_none());
    }

    #[test]
    fn tree_and_disconnected() {
        let g = EdgeListGraph::new(6, vec![(0, 1), (1, 2), (3, 4)]).unwrap();
        let mut emb = find_embedding_static(&g).unwrap();
        assert!(emb.validate().is_ok());
    }
}
