//! Static BC-tree and SPQR-tree construction, heavy-path decomposition, and
//! pre-splitting. Built for desk-scale use by the potential-function oracle;
//! the construction is brute force (split-pair recursion with a final merge
//! pass) and deterministic.

use crate::static_oracle::{blocks, EdgeListGraph};
use std::collections::{BTreeMap, BTreeSet, VecDeque};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DecompError {
    #[error("component has no edges")]
    EmptyComponent,
    #[error("graph is too small for an SPQR tree (needs >= 3 edges)")]
    TooSmall,
    #[error("graph is not biconnected")]
    NotBiconnected,
    #[error("vertices do not share a block")]
    NotSameBlock,
    #[error("vertices are in different components")]
    DifferentComponents,
}

// ----- BC trees -----

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum BcNodeKind {
    B,
    C,
}

#[derive(Clone, Debug)]
pub struct BcNode {
    pub kind: BcNodeKind,
    /// Skeleton vertices (a single vertex for C nodes).
    pub vertices: Vec<u32>,
    /// Edge indices into the underlying graph (empty for C nodes).
    pub edges: Vec<usize>,
}

/// Strict block-cut tree of one connected graph: one B node per block, one
/// C node per articulation point, edges between a block and the articulation
/// points it contains. No two B nodes and no two C nodes are adjacent.
#[derive(Clone, Debug)]
pub struct BcTree {
    pub nodes: Vec<BcNode>,
    pub adj: Vec<Vec<usize>>,
    /// C node id per vertex, when the vertex is an articulation point.
    pub c_node_of: BTreeMap<u32, usize>,
    /// Ids of B nodes containing each vertex.
    pub b_nodes_of: BTreeMap<u32, Vec<usize>>,
}

impl BcTree {
    /// The node housing a vertex: its C node if it is an articulation point,
    /// otherwise its unique block.
    pub fn node_of_vertex(&self, v: u32) -> Option<usize> {
        if let Some(&c) = self.c_node_of.get(&v) {
            return Some(c);
        }
        self.b_nodes_of.get(&v).map(|bs| bs[0])
    }

    pub fn tree_path(&self, a: usize, b: usize) -> Vec<usize> {
        tree_path(&self.adj, a, b)
    }

    pub fn to_dot(&self) -> String {
        let mut out = String::from("graph bc {\n");
        for (i, n) in self.nodes.iter().enumerate() {
            let label = match n.kind {
                BcNodeKind::B => format!("B{} {:?}", i, n.vertices),
                BcNodeKind::C => format!("C{} {}", i, n.vertices[0]),
            };
            out.push_str(&format!("  n{} [label=\"{}\"];\n", i, label));
        }
        for (i, nbrs) in self.adj.iter().enumerate() {
            for &j in nbrs {
                if i < j {
                    out.push_str(&format!("  n{} -- n{};\n", i, j));
                }
            }
        }
        out.push_str("}\n");
        out
    }
}

fn tree_path(adj: &[Vec<usize>], a: usize, b: usize) -> Vec<usize> {
    if a == b {
        return vec![a];
    }
    let mut prev = vec![usize::MAX; adj.len()];
    let mut q = VecDeque::new();
    q.push_back(a);
    prev[a] = a;
    while let Some(x) = q.pop_front() {
        if x == b {
            break;
        }
        for &y in &adj[x] {
            if prev[y] == usize::MAX {
                prev[y] = x;
                q.push_back(y);
            }
        }
    }
    let mut path = vec![b];
    let mut cur = b;
    while cur != a {
        cur = prev[cur];
        path.push(cur);
    }
    path.reverse();
    path
}

/// Strict BC tree of the connected graph (which must have at least one edge).
pub fn bc_tree(g: &EdgeListGraph) -> Result<BcTree, DecompError> {
    if g.m() == 0 {
        return Err(DecompError::EmptyComponent);
    }
    let blks = blocks(g);
    let mut vert_blocks: BTreeMap<u32, Vec<usize>> = BTreeMap::new();
    let mut nodes = Vec::new();
    for (bi, blk) in blks.iter().enumerate() {
        let mut vs: BTreeSet<u32> = BTreeSet::new();
        for &e in blk {
            vs.insert(g.edges[e].0);
            vs.insert(g.edges[e].1);
        }
        for &v in &vs {
            vert_blocks.entry(v).or_default().push(bi);
        }
        let mut edges = blk.clone();
        edges.sort();
        nodes.push(BcNode { kind: BcNodeKind::B, vertices: vs.into_iter().collect(), edges });
    }
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); nodes.len()];
    let mut c_node_of = BTreeMap::new();
    for (&v, bs) in &vert_blocks {
        if bs.len() >= 2 {
            let c = nodes.len();
            nodes.push(BcNode { kind: BcNodeKind::C, vertices: vec![v], edges: Vec::new() });
            adj.push(Vec::new());
            c_node_of.insert(v, c);
            for &b in bs {
                adj[b].push(c);
                adj[c].push(b);
            }
        }
    }
    Ok(BcTree { nodes, adj, c_node_of, b_nodes_of: vert_blocks })
}

// ----- SPQR trees -----

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum SpqrKind {
    S,
    P,
    R,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum SkelEdgeKind {
    /// Index into the input graph's edge list.
    Real(usize),
    /// Virtual edge; pairs with the equally-tagged edge of the neighbor node.
    Virtual(usize),
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct SkelEdge {
    pub a: u32,
    pub b: u32,
    pub kind: SkelEdgeKind,
}

#[derive(Clone, Debug)]
pub struct SpqrNode {
    pub kind: SpqrKind,
    pub skeleton: Vec<SkelEdge>,
}

impl SpqrNode {
    pub fn vertices(&self) -> BTreeSet<u32> {
        self.skeleton.iter().flat_map(|e| [e.a, e.b]).collect()
    }

    pub fn has_vertex(&self, v: u32) -> bool {
        self.skeleton.iter().any(|e| e.a == v || e.b == v)
    }
}

/// Strict SPQR tree of a biconnected graph with at least three edges:
/// S skeletons are simple cycles, P skeletons bonds of at least three edges,
/// R skeletons simple triconnected graphs; no two S and no two P adjacent.
#[derive(Clone, Debug)]
pub struct SpqrTree {
    pub nodes: Vec<SpqrNode>,
    /// `adj[x]` lists `(neighbor, virtual pair id)`.
    pub adj: Vec<Vec<(usize, usize)>>,
}

impl SpqrTree {
    pub fn tree_path(&self, a: usize, b: usize) -> Vec<usize> {
        let plain: Vec<Vec<usize>> = self
            .adj
            .iter()
            .map(|ns| ns.iter().map(|&(n, _)| n).collect())
            .collect();
        tree_path(&plain, a, b)
    }

    /// Separation pair shared by two adjacent nodes.
    pub fn pair_between(&self, x: usize, y: usize) -> (u32, u32) {
        let vid = self.adj[x]
            .iter()
            .find(|&&(n, _)| n == y)
            .map(|&(_, v)| v)
            .expect("adjacent nodes");
        let e = self.nodes[x]
            .skeleton
            .iter()
            .find(|e| e.kind == SkelEdgeKind::Virtual(vid))
            .unwrap();
        (e.a.min(e.b), e.a.max(e.b))
    }

    pub fn to_dot(&self) -> String {
        let mut out = String::from("graph spqr {\n");
        for (i, n) in self.nodes.iter().enumerate() {
            out.push_str(&format!(
                "  n{} [label=\"{:?}{} {:?}\"];\n",
                i,
                n.kind,
                i,
                n.vertices()
            ));
        }
        for (i, nbrs) in self.adj.iter().enumerate() {
            for &(j, _) in nbrs {
                if i < j {
                    out.push_str(&format!("  n{} -- n{};\n", i, j));
                }
            }
        }
        out.push_str("}\n");
        out
    }
}

#[derive(Clone, Debug)]
struct MEdge {
    a: u32,
    b: u32,
    kind: SkelEdgeKind,
}

/// Separation classes of a multigraph with respect to `{a,b}`: edge sets
/// connected through vertices other than `a`,`b`. Every `(a,b)` edge is a
/// singleton class.
fn m_classes(edges: &[MEdge], a: u32, b: u32) -> Vec<Vec<usize>> {
    let mut class_of = vec![usize::MAX; edges.len()];
    let mut classes: Vec<Vec<usize>> = Vec::new();
    let mut by_vertex: BTreeMap<u32, Vec<usize>> = BTreeMap::new();
    for (i, e) in edges.iter().enumerate() {
        by_vertex.entry(e.a).or_default().push(i);
        by_vertex.entry(e.b).or_default().push(i);
    }
    for i in 0..edges.len() {
        if class_of[i] != usize::MAX {
            continue;
        }
        let id = classes.len();
        classes.push(Vec::new());
        let mut stack = vec![i];
        class_of[i] = id;
        while let Some(e) = stack.pop() {
            classes[id].push(e);
            for v in [edges[e].a, edges[e].b] {
                if v == a || v == b {
                    continue;
                }
                for &f in &by_vertex[&v] {
                    if class_of[f] == usize::MAX {
                        class_of[f] = id;
                        stack.push(f);
                    }
                }
            }
        }
        classes[id].sort();
    }
    classes
}

/// A separation pair of the multigraph per the classic definition, searched
/// in vertex order for determinism.
fn find_separation_pair(edges: &[MEdge]) -> Option<(u32, u32, Vec<Vec<usize>>)> {
    let verts: BTreeSet<u32> = edges.iter().flat_map(|e| [e.a, e.b]).collect();
    let vs: Vec<u32> = verts.into_iter().collect();
    for i in 0..vs.len() {
        for j in i + 1..vs.len() {
            let (a, b) = (vs[i], vs[j]);
            let classes = m_classes(edges, a, b);
            let k = classes.len();
            if k < 2 {
                continue;
            }
            let singles = classes.iter().filter(|c| c.len() == 1).count();
            if k == 2 && singles >= 1 {
                continue;
            }
            if k == 3 && singles == 3 {
                continue;
            }
            return Some((a, b, classes));
        }
    }
    None
}

fn is_cycle(edges: &[MEdge]) -> bool {
    let mut deg: BTreeMap<u32, usize> = BTreeMap::new();
    for e in edges {
        *deg.entry(e.a).or_insert(0) += 1;
        *deg.entry(e.b).or_insert(0) += 1;
    }
    deg.len() == edges.len() && deg.values().all(|&d| d == 2)
}

struct SpqrBuilder {
    nodes: Vec<SpqrNode>,
    adj: Vec<Vec<(usize, usize)>>,
    /// node holding each side of a virtual pair
    pair_side: BTreeMap<usize, Vec<usize>>,
    next_pair: usize,
}

impl SpqrBuilder {
    fn classify(edges: &[MEdge]) -> SpqrKind {
        let verts: BTreeSet<u32> = edges.iter().flat_map(|e| [e.a, e.b]).collect();
        if verts.len() == 2 {
            SpqrKind::P
        } else if is_cycle(edges) {
            SpqrKind::S
        } else {
            SpqrKind::R
        }
    }

    fn add_leaf(&mut self, edges: Vec<MEdge>) -> usize {
        let kind = Self::classify(&edges);
        let skeleton = edges
            .into_iter()
            .map(|e| SkelEdge { a: e.a, b: e.b, kind: e.kind })
            .collect();
        self.nodes.push(SpqrNode { kind, skeleton });
        self.adj.push(Vec::new());
        let id = self.nodes.len() - 1;
        for e in &self.nodes[id].skeleton {
            if let SkelEdgeKind::Virtual(p) = e.kind {
                self.pair_side.entry(p).or_default().push(id);
            }
        }
        id
    }

    fn decompose(&mut self, edges: Vec<MEdge>) {
        let verts: BTreeSet<u32> = edges.iter().flat_map(|e| [e.a, e.b]).collect();
        if verts.len() == 2 || is_cycle(edges.as_slice()) {
            self.add_leaf(edges);
            return;
        }
        let Some((a, b, classes)) = find_separation_pair(&edges) else {
            self.add_leaf(edges);
            return;
        };
        if classes.len() == 2 {
            let pid = self.next_pair;
            self.next_pair += 1;
            for cls in classes {
                let mut piece: Vec<MEdge> = cls.iter().map(|&i| edges[i].clone()).collect();
                piece.push(MEdge { a, b, kind: SkelEdgeKind::Virtual(pid) });
                self.decompose(piece);
            }
        } else {
            let mut bond: Vec<MEdge> = Vec::new();
            let mut pieces: Vec<Vec<MEdge>> = Vec::new();
            for cls in classes {
                if cls.len() == 1 {
                    let e = &edges[cls[0]];
                    if (e.a, e.b) == (a, b) || (e.a, e.b) == (b, a) {
                        bond.push(e.clone());
                        continue;
                    }
                }
                let pid = self.next_pair;
                self.next_pair += 1;
                bond.push(MEdge { a, b, kind: SkelEdgeKind::Virtual(pid) });
                let mut piece: Vec<MEdge> = cls.iter().map(|&i| edges[i].clone()).collect();
                piece.push(MEdge { a, b, kind: SkelEdgeKind::Virtual(pid) });
                pieces.push(piece);
            }
            self.add_leaf(bond);
            for p in pieces {
                self.decompose(p);
            }
        }
    }

    /// Wire tree edges from virtual pairs, then merge adjacent same-kind
    /// S or P nodes along their shared pair until the tree is strict.
    fn finish(mut self) -> SpqrTree {
        for (pid, sides) in &self.pair_side {
            assert_eq!(sides.len(), 2, "virtual pair {} must have two sides", pid);
            let (x, y) = (sides[0], sides[1]);
            self.adj[x].push((y, *pid));
            self.adj[y].push((x, *pid));
        }
        loop {
            let mut merged = false;
            'outer: for x in 0..self.nodes.len() {
                if self.nodes[x].skeleton.is_empty() {
                    continue;
                }
                for &(y, pid) in self.adj[x].clone().iter() {
                    if self.nodes[x].kind == self.nodes[y].kind
                        && self.nodes[x].kind != SpqrKind::R
                    {
                        self.merge(x, y, pid);
                        merged = true;
                        break 'outer;
                    }
                }
            }
            if !merged {
                break;
            }
        }
        // compact out emptied nodes
        let mut remap = vec![usize::MAX; self.nodes.len()];
        let mut nodes = Vec::new();
        let mut adj = Vec::new();
        for (i, n) in self.nodes.iter().enumerate() {
            if !n.skeleton.is_empty() {
                remap[i] = nodes.len();
                nodes.push(n.clone());
                adj.push(Vec::new());
            }
        }
        for (i, nbrs) in self.adj.iter().enumerate() {
            if remap[i] == usize::MAX {
                continue;
            }
            for &(j, pid) in nbrs {
                adj[remap[i]].push((remap[j], pid));
            }
        }
        for a in adj.iter_mut() {
            a.sort();
        }
        SpqrTree { nodes, adj }
    }

    fn merge(&mut self, x: usize, y: usize, pid: usize) {
        // pull y's skeleton (minus the shared virtual) into x
        let mut extra: Vec<SkelEdge> = self.nodes[y]
            .skeleton
            .iter()
            .copied()
            .filter(|e| e.kind != SkelEdgeKind::Virtual(pid))
            .collect();
        self.nodes[x]
            .skeleton
            .retain(|e| e.kind != SkelEdgeKind::Virtual(pid));
        self.nodes[x].skeleton.append(&mut extra);
        self.nodes[y].skeleton.clear();
        let moved: Vec<(usize, usize)> = self.adj[y]
            .iter()
            .copied()
            .filter(|&(_, p)| p != pid)
            .collect();
        self.adj[y].clear();
        self.adj[x].retain(|&(_, p)| p != pid);
        for (nbr, p) in moved {
            self.adj[x].push((nbr, p));
            for entry in self.adj[nbr].iter_mut() {
                if entry.1 == p {
                    entry.0 = x;
                }
            }
        }
        // merged S nodes stay cycles; merged P nodes stay bonds
        self.nodes[x].kind = Self::classify(
            &self.nodes[x]
                .skeleton
                .iter()
                .map(|e| MEdge { a: e.a, b: e.b, kind: e.kind })
                .collect::<Vec<_>>(),
        );
    }
}

/// Strict SPQR tree of a biconnected graph with at least three edges.
pub fn spqr_tree(g: &EdgeListGraph) -> Result<SpqrTree, DecompError> {
    if g.m() < 3 {
        return Err(DecompError::TooSmall);
    }
    if blocks(g).len() != 1 {
        return Err(DecompError::NotBiconnected);
    }
    let edges: Vec<MEdge> = g
        .edges
        .iter()
        .enumerate()
        .map(|(i, &(a, b))| MEdge { a, b, kind: SkelEdgeKind::Real(i) })
        .collect();
    let mut b = SpqrBuilder {
        nodes: Vec::new(),
        adj: Vec::new(),
        pair_side: BTreeMap::new(),
        next_pair: 0,
    };
    b.decompose(edges);
    Ok(b.finish())
}

// ----- critical paths -----

/// Nodes of an SPQR tree containing `v`, excluding P nodes.
fn non_p_nodes_with(t: &SpqrTree, v: u32) -> Vec<usize> {
    (0..t.nodes.len())
        .filter(|&i| t.nodes[i].kind != SpqrKind::P && t.nodes[i].has_vertex(v))
        .collect()
}

/// The `u,v`-critical path in an SPQR tree: the tree path between non-P
/// nodes containing `u` and `v`. When several nodes house an endpoint (the
/// endpoint lies on separation pairs), the longest such path is taken, so
/// the path covers the endpoints' whole shared extent; ties break to the
/// smallest node pair.
pub fn spqr_critical_path(t: &SpqrTree, u: u32, v: u32) -> Result<Vec<usize>, DecompError> {
    let su = non_p_nodes_with(t, u);
    let sv = non_p_nodes_with(t, v);
    if su.is_empty() || sv.is_empty() {
        return Err(DecompError::NotSameBlock);
    }
    let mut best: Option<Vec<usize>> = None;
    for &a in &su {
        for &b in &sv {
            let p = t.tree_path(a, b);
            if best.as_ref().map_or(true, |q| p.len() > q.len()) {
                best = Some(p);
            }
        }
    }
    Ok(best.unwrap())
}

/// Critical path at whichever level applies: the SPQR node path of the
/// common block when `u,v` are biconnected, else the BC node path.
#[derive(Clone, Debug)]
pub enum CriticalPath {
    Spqr { bc_node: usize, nodes: Vec<usize> },
    Bc { nodes: Vec<usize> },
}

pub fn critical_path(g: &EdgeListGraph, u: u32, v: u32) -> Result<CriticalPath, DecompError> {
    let comp = g.components();
    if comp[u as usize] != comp[v as usize] {
        return Err(DecompError::DifferentComponents);
    }
    let bc = bc_tree(&component_subgraph(g, u))?;
    let shared = (0..bc.nodes.len()).find(|&i| {
        bc.nodes[i].kind == BcNodeKind::B
            && bc.nodes[i].vertices.contains(&u)
            && bc.nodes[i].vertices.contains(&v)
    });
    if let Some(b) = shared {
        let block = subgraph(g, &bc.nodes[b].edges);
        if block.m() >= 3 {
            let t = spqr_tree(&block)?;
            let nodes = spqr_critical_path(&t, u, v)?;
            return Ok(CriticalPath::Spqr { bc_node: b, nodes });
        }
    }
    let a = bc.node_of_vertex(u).ok_or(DecompError::EmptyComponent)?;
    let b = bc.node_of_vertex(v).ok_or(DecompError::EmptyComponent)?;
    Ok(CriticalPath::Bc { nodes: bc.tree_path(a, b) })
}

/// Subgraph on the full vertex range keeping only the listed edges.
pub fn subgraph(g: &EdgeListGraph, edge_idx: &[usize]) -> EdgeListGraph {
    EdgeListGraph {
        n: g.n,
        edges: edge_idx.iter().map(|&i| g.edges[i]).collect(),
    }
}

/// Edges of the component containing `v`, as a subgraph.
pub fn component_subgraph(g: &EdgeListGraph, v: u32) -> EdgeListGraph {
    let comp = g.components();
    let rep = comp[v as usize];
    EdgeListGraph {
        n: g.n,
        edges: g
            .edges
            .iter()
            .copied()
            .filter(|&(a, _)| comp[a as usize] == rep)
            .collect(),
    }
}

// ----- pre-split heavy-path decomposition -----

/// One solid path, root end first. `top_split` marks the split copy of the
/// parent node (a C node at the BC level, a P or S node at the SPQR level)
/// that heads a hanging path.
#[derive(Clone, Debug)]
pub struct SolidPath {
    pub top_split: Option<usize>,
    pub nodes: Vec<usize>,
}

/// Heavy-path decomposition of one rooted tree with a forced terminating
/// critical chain. Returns the paths and, for each node, its path index.
fn solid_paths(
    adj: &[Vec<usize>],
    weights: &[usize],
    root: usize,
    critical_chain: &[usize],
    splittable: impl Fn(usize) -> bool,
) -> (Vec<SolidPath>, Vec<usize>, usize) {
    let n = adj.len();
    let mut parent = vec![usize::MAX; n];
    let mut order = Vec::new();
    let mut q = VecDeque::new();
    q.push_back(root);
    parent[root] = root;
    while let Some(x) = q.pop_front() {
        order.push(x);
        for &y in &adj[x] {
            if parent[y] == usize::MAX {
                parent[y] = x;
                q.push_back(y);
            }
        }
    }
    let mut subtree = vec![0usize; n];
    for &x in order.iter().rev() {
        subtree[x] += weights[x];
        if parent[x] != x {
            subtree[parent[x]] += subtree[x];
        }
    }
    let mut crit_next: BTreeMap<usize, Option<usize>> = BTreeMap::new();
    for (i, &x) in critical_chain.iter().enumerate() {
        crit_next.insert(x, critical_chain.get(i + 1).copied());
    }
    // solid child per node
    let mut solid_child = vec![usize::MAX; n];
    for &x in &order {
        if let Some(next) = crit_next.get(&x) {
            // on the critical chain: forced continuation; the chain's last
            // node terminates its path
            if let Some(nx) = next {
                solid_child[x] = *nx;
            }
            continue;
        }
        let mut best: Option<(usize, usize)> = None;
        for &y in &adj[x] {
            if y == parent[x] {
                continue;
            }
            let key = (subtree[y], usize::MAX - y); // heavier wins, ties to smaller id
            if best.map_or(true, |(bw, bk)| key > (bw, bk)) {
                best = Some(key);
            }
        }
        if let Some((w, k)) = best {
            let _ = w;
            solid_child[x] = usize::MAX - k;
        }
    }
    // assemble paths from path tops
    let mut path_of = vec![usize::MAX; n];
    let mut paths: Vec<SolidPath> = Vec::new();
    for &x in &order {
        let is_top = x == root || solid_child[parent[x]] != x;
        if !is_top {
            continue;
        }
        let mut nodes = vec![x];
        let mut cur = x;
        while solid_child[cur] != usize::MAX {
            cur = solid_child[cur];
            nodes.push(cur);
        }
        // a hanging path is headed by a split copy of its parent when the
        // parent is internal on its own path and of a splittable kind
        let top_split = if x == root {
            None
        } else {
            let p = parent[x];
            let p_internal = p != root
                && solid_child[p] != usize::MAX
                && crit_next.get(&p).map_or(true, |nx| nx.is_some());
            if p_internal && splittable(p) {
                Some(p)
            } else {
                None
            }
        };
        let idx = paths.len();
        for &nd in &nodes {
            path_of[nd] = idx;
        }
        paths.push(SolidPath { top_split, nodes });
    }
    let critical_path_idx = path_of[root];
    (paths, path_of, critical_path_idx)
}

/// Pre-split decomposition of one block: the SPQR tree with terminals
/// `(x, y)`, its solid paths (the `x..y` critical path forced solid and
/// terminated at `y`'s node), and the critical path index.
#[derive(Clone, Debug)]
pub struct BlockDecomp {
    pub bc_node: usize,
    pub terminals: (u32, u32),
    /// `None` for single-edge blocks.
    pub spqr: Option<SpqrTree>,
    pub paths: Vec<SolidPath>,
    pub critical: usize,
}

/// Pre-split decomposition of the component(s) of `u` and `v` for the
/// ordered terminal pair `(u, v)`: the BC layer rooted at `u`'s node with
/// the `u..v` node path forced solid, and a pre-split SPQR layer per block
/// with terminals induced by the BC paths.
#[derive(Clone, Debug)]
pub struct SolidPathSet {
    pub graph: EdgeListGraph,
    pub bc: BcTree,
    pub bc_paths: Vec<SolidPath>,
    /// Index into `bc_paths`; absent when `v` lies in another component.
    pub bc_critical: Option<usize>,
    /// Per B node of the BC tree.
    pub blocks: BTreeMap<usize, BlockDecomp>,
}

pub fn presplit_decomposition(
    g: &EdgeListGraph,
    u: u32,
    v: u32,
) -> Result<SolidPathSet, DecompError> {
    let sub = component_subgraph(g, u);
    if sub.m() == 0 {
        return Err(DecompError::EmptyComponent);
    }
    let bc = bc_tree(&sub)?;
    let root = bc.node_of_vertex(u).ok_or(DecompError::EmptyComponent)?;
    let same_comp = bc.node_of_vertex(v).is_some() && {
        let comp = g.components();
        comp[u as usize] == comp[v as usize]
    };
    let chain: Vec<usize> = if same_comp {
        bc.tree_path(root, bc.node_of_vertex(v).unwrap())
    } else {
        vec![root]
    };
    let weights: Vec<usize> = bc.nodes.iter().map(|n| 1 + n.edges.len()).collect();
    let kinds: Vec<BcNodeKind> = bc.nodes.iter().map(|n| n.kind).collect();
    let (bc_paths, _path_of, crit_idx) = solid_paths(
        &bc.adj,
        &weights,
        root,
        &chain,
        |x| kinds[x] == BcNodeKind::C,
    );
    let bc_critical = if same_comp { Some(crit_idx) } else { None };

    // assign per-block terminals from the paths, then decompose blocks
    let mut blocks_out: BTreeMap<usize, BlockDecomp> = BTreeMap::new();
    for (pi, path) in bc_paths.iter().enumerate() {
        let is_crit = Some(pi) == bc_critical;
        // walk the B nodes of the path with the cut vertices between them
        let bn: Vec<usize> = path
            .nodes
            .iter()
            .copied()
            .filter(|&x| bc.nodes[x].kind == BcNodeKind::B)
            .collect();
        for (bi, &b) in bn.iter().enumerate() {
            let x_term: u32 = if bi == 0 {
                if is_crit && bc.nodes[root].kind == BcNodeKind::B && path.nodes[0] == b {
                    u
                } else {
                    // vertex of the C node above this block on the path, or
                    // of the split parent, or u itself at the root
                    let pos = path.nodes.iter().position(|&x| x == b).unwrap();
                    if pos > 0 {
                        bc.nodes[path.nodes[pos - 1]].vertices[0]
                    } else if let Some(c) = path.top_split {
                        bc.nodes[c].vertices[0]
                    } else if path.nodes[0] == root && bc.nodes[root].kind == BcNodeKind::B {
                        u
                    } else {
                        // path topped by a C node not split from anywhere
                        bc.nodes[path.nodes[0]].vertices[0]
                    }
                }
            } else {
                let pos = path.nodes.iter().position(|&x| x == b).unwrap();
                bc.nodes[path.nodes[pos - 1]].vertices[0]
            };
            let y_term: u32 = {
                let pos = path.nodes.iter().position(|&x| x == b).unwrap();
                if pos + 1 < path.nodes.len() {
                    bc.nodes[path.nodes[pos + 1]].vertices[0]
                } else if is_crit && same_comp {
                    v
                } else {
                    // last block of an off-critical path: smallest vertex
                    // other than the incoming terminal
                    *bc.nodes[b]
                        .vertices
                        .iter()
                        .find(|&&w| w != x_term)
                        .unwrap_or(&x_term)
                }
            };
            let block_graph = subgraph(g, &bc.nodes[b].edges);
            let decomp = if block_graph.m() < 3 {
                BlockDecomp {
                    bc_node: b,
                    terminals: (x_term, y_term),
                    spqr: None,
                    paths: vec![SolidPath { top_split: None, nodes: vec![] }],
                    critical: 0,
                }
            } else {
                let t = spqr_tree(&block_graph)?;
                let chain = spqr_critical_path(&t, x_term, y_term)?;
                let s_root = chain[0];
                let w: Vec<usize> = t.nodes.iter().map(|n| 1 + n.skeleton.len()).collect();
                let k: Vec<SpqrKind> = t.nodes.iter().map(|n| n.kind).collect();
                let plain: Vec<Vec<usize>> = t
                    .adj
                    .iter()
                    .map(|ns| ns.iter().map(|&(n, _)| n).collect())
                    .collect();
                let (paths, _, crit) = solid_paths(&plain, &w, s_root, &chain, |x| {
                    k[x] != SpqrKind::R
                });
                BlockDecomp {
                    bc_node: b,
                    terminals: (x_term, y_term),
                    spqr: Some(t),
                    paths,
                    critical: crit,
                }
            };
            blocks_out.insert(b, decomp);
        }
    }
    Ok(SolidPathSet {
        graph: g.clone(),
        bc,
        bc_paths,
        bc_critical,
        blocks: blocks_out,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn bc_fixtures() {
        let t = bc_tree(&fixtures::tri()).unwrap();
        assert_eq!(t.nodes.len(), 1);
        let t = bc_tree(&fixtures::bowtie()).unwrap();
        let bs = t.nodes.iter().filter(|n| n.kind == BcNodeKind::B).count();
        let cs = t.nodes.iter().filter(|n| n.kind == BcNodeKind::C).count();
        assert_eq!((bs, cs), (2, 1));
        let t = bc_tree(&fixtures::chain3()).unwrap();
        let bs = t.nodes.iter().filter(|n| n.kind == BcNodeKind::B).count();
        let cs = t.nodes.iter().filter(|n| n.kind == BcNodeKind::C).count();
        assert_eq!((bs, cs), (3, 2));
        // B-C-B-C-B path between the chain ends
        let p = t.tree_path(t.node_of_vertex(0).unwrap(), t.node_of_vertex(6).unwrap());
        assert_eq!(p.len(), 5);
    }

    #[test]
    fn spqr_fixtures() {
        let t = spqr_tree(&fixtures::k4()).unwrap();
        assert_eq!(t.nodes.len(), 1);
        assert_eq!(t.nodes[0].kind, SpqrKind::R);
        let c5 = EdgeListGraph::new(5, vec![(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)]).unwrap();
        let t = spqr_tree(&c5).unwrap();
        assert_eq!(t.nodes.len(), 1);
        assert_eq!(t.nodes[0].kind, SpqrKind::S);
        let t = spqr_tree(&fixtures::k2_4()).unwrap();
        let ps: Vec<_> = t.nodes.iter().filter(|n| n.kind == SpqrKind::P).collect();
        let ss: Vec<_> = t.nodes.iter().filter(|n| n.kind == SpqrKind::S).collect();
        assert_eq!(ps.len(), 1);
        assert_eq!(ss.len(), 4);
        assert_eq!(spqr_tree(&fixtures::tri()).unwrap().nodes[0].kind, SpqrKind::S);
    }

    #[test]
    fn spqr_structure_invariants() {
        for g in crate::graph_enum::connected_graphs_up_to(7) {
            for blk in blocks(&g) {
                let bg = subgraph(&g, &blk);
                if bg.m() < 3 {
                    continue;
                }
                let t = spqr_tree(&bg).unwrap();
                check_spqr(&bg, &t);
            }
        }
    }

    fn check_spqr(bg: &EdgeListGraph, t: &SpqrTree) {
        // every real edge in exactly one skeleton
        let mut seen = vec![0usize; bg.m()];
        let mut virt: BTreeMap<usize, usize> = BTreeMap::new();
        for n in &t.nodes {
            match n.kind {
                SpqrKind::S => {
                    assert!(n.skeleton.len() >= 3);
                    assert!(is_cycle(
                        &n.skeleton
                            .iter()
                            .map(|e| MEdge { a: e.a, b: e.b, kind: e.kind })
                            .collect::<Vec<_>>()
                    ));
                }
                SpqrKind::P => {
                    assert!(n.skeleton.len() >= 3);
                    assert_eq!(n.vertices().len(), 2);
                }
                SpqrKind::R => {
                    let vs = n.vertices();
                    assert!(vs.len() >= 4);
                    // simple
                    let mut pairs = BTreeSet::new();
                    for e in &n.skeleton {
                        assert!(pairs.insert((e.a.min(e.b), e.a.max(e.b))));
                    }
                }
            }
            for e in &n.skeleton {
                match e.kind {
                    SkelEdgeKind::Real(i) => seen[i] += 1,
                    SkelEdgeKind::Virtual(p) => *virt.entry(p).or_insert(0) += 1,
                }
            }
        }
        assert!(seen.iter().all(|&c| c == 1));
        assert!(virt.values().all(|&c| c == 2));
        // strictness
        for (x, nbrs) in t.adj.iter().enumerate() {
            for &(y, _) in nbrs {
                if t.nodes[x].kind != SpqrKind::R {
                    assert_ne!(t.nodes[x].kind, t.nodes[y].kind);
                }
            }
        }
        // re-gluing along virtual pairs reproduces the block's edge multiset
        let mut real: Vec<usize> = Vec::new();
        for n in &t.nodes {
            for e in &n.skeleton {
                if let SkelEdgeKind::Real(i) = e.kind {
                    real.push(i);
                }
            }
        }
        real.sort();
        let expect: Vec<usize> = (0..bg.m()).collect();
        assert_eq!(real, expect);
    }

    #[test]
    fn critical_paths() {
        let g = fixtures::k2_4();
        let CriticalPath::Spqr { nodes, bc_node: _ } = critical_path(&g, 2, 4).unwrap() else {
            panic!("expected SPQR path");
        };
        assert_eq!(nodes.len(), 3); // S - P - S
        let g = fixtures::k4();
        let CriticalPath::Spqr { nodes, .. } = critical_path(&g, 0, 3).unwrap() else {
            panic!("expected SPQR path");
        };
        assert_eq!(nodes.len(), 1);
        let g = fixtures::chain3();
        let CriticalPath::Bc { nodes } = critical_path(&g, 0, 6).unwrap() else {
            panic!("expected BC path");
        };
        assert_eq!(nodes.len(), 5);
    }

    #[test]
    fn presplit_chain3() {
        let g = fixtures::chain3();
        let s = presplit_decomposition(&g, 0, 6).unwrap();
        let crit = &s.bc_paths[s.bc_critical.unwrap()];
        assert_eq!(crit.nodes.len(), 5);
        assert_eq!(s.bc_paths.len(), 1);
        // terminals chain through the articulation vertices 2 and 4
        let terms: Vec<(u32, u32)> = s.blocks.values().map(|b| b.terminals).collect();
        assert!(terms.contains(&(0, 2)));
        assert!(terms.contains(&(2, 4)));
        assert!(terms.contains(&(4, 6)));
    }

    #[test]
    fn presplit_star_of_blocks() {
        // four triangles sharing vertex 0; the heaviest is a k4
        let mut edges = vec![(0u32, 1), (1, 2), (0, 2), (0, 3), (3, 4), (0, 4), (0, 5), (5, 6), (0, 6)];
        edges.extend([(0, 7), (7, 8), (0, 8), (7, 9), (8, 9), (0, 9)]);
        let g = EdgeListGraph::new(10, edges).unwrap();
        let s = presplit_decomposition(&g, 1, 2).unwrap();
        // critical path stays inside the first triangle
        let crit = &s.bc_paths[s.bc_critical.unwrap()];
        assert_eq!(crit.nodes.len(), 1);
        // the path hanging at the split C(0) continues into the K4 block
        let c0 = s.bc.c_node_of[&0];
        let hang: Vec<&SolidPath> = s
            .bc_paths
            .iter()
            .filter(|p| p.top_split == Some(c0) || p.nodes.first() == Some(&c0))
            .collect();
        assert!(!hang.is_empty());
        let heavy = hang
            .iter()
            .flat_map(|p| p.nodes.iter())
            .find(|&&x| s.bc.nodes[x].kind == BcNodeKind::B);
        let heavy_block = &s.bc.nodes[*heavy.unwrap()];
        assert_eq!(heavy_block.edges.len(), 6);
    }
}
