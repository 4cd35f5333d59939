//! Isomorphism-free catalogs of small connected graphs, used by the
//! exhaustive test suites. Graphs are grown edge by edge and deduplicated by
//! a canonical labelling computed with degree-class pruning; vertex counts
//! stay at or below nine for the edge budgets used here, so the brute-force
//! canonical form is cheap.

use crate::static_oracle::EdgeListGraph;
use std::collections::BTreeSet;

/// Canonical form: relabel vertices to minimize, lexicographically, the
/// sequence of adjacency columns `col_p` (bit `i` of `col_p` set when
/// positions `i < p` and `p` are adjacent), searched with branch-and-bound.
/// The sorted edge list of the minimizing labelling is returned.
pub fn canonical_form(n: usize, edges: &[(u32, u32)]) -> Vec<(u32, u32)> {
    if n == 0 {
        return Vec::new();
    }
    let mut adj = vec![vec![false; n]; n];
    for &(a, b) in edges {
        adj[a as usize][b as usize] = true;
        adj[b as usize][a as usize] = true;
    }

    struct Search<'a> {
        n: usize,
        adj: &'a [Vec<bool>],
        perm: Vec<usize>,
        cols: Vec<u16>,
        used: Vec<bool>,
        best_cols: Option<Vec<u16>>,
        best_perm: Vec<usize>,
    }

    impl Search<'_> {
        fn rec(&mut self) {
            let p = self.perm.len();
            if let Some(best) = &self.best_cols {
                // prune branches whose column prefix already exceeds the best
                if self.cols[..] > best[..p] {
                    return;
                }
            }
            if p == self.n {
                if self.best_cols.as_deref().map_or(true, |b| self.cols[..] < *b) {
                    self.best_cols = Some(self.cols.clone());
                    self.best_perm = self.perm.clone();
                }
                return;
            }
            let mut cands: Vec<(u16, usize)> = (0..self.n)
                .filter(|&v| !self.used[v])
                .map(|v| {
                    let mut col = 0u16;
                    for (i, &u) in self.perm.iter().enumerate() {
                        if self.adj[u][v] {
                            col |= 1 << (p - 1 - i);
                        }
                    }
                    (col, v)
                })
                .collect();
            cands.sort();
            for (col, v) in cands {
                self.used[v] = true;
                self.perm.push(v);
                self.cols.push(col);
                self.rec();
                self.cols.pop();
                self.perm.pop();
                self.used[v] = false;
            }
        }
    }

    let mut s = Search {
        n,
        adj: &adj,
        perm: Vec::new(),
        cols: Vec::new(),
        used: vec![false; n],
        best_cols: None,
        best_perm: Vec::new(),
    };
    s.rec();
    let inv: Vec<u32> = {
        let mut inv = vec![0u32; n];
        for (new, &old) in s.best_perm.iter().enumerate() {
            inv[old] = new as u32;
        }
        inv
    };
    let mut rel: Vec<(u32, u32)> = edges
        .iter()
        .map(|&(a, b)| {
            let (x, y) = (inv[a as usize], inv[b as usize]);
            (x.min(y), x.max(y))
        })
        .collect();
    rel.sort();
    rel
}

fn canonical_key(n: usize, edges: &[(u32, u32)]) -> (usize, Vec<(u32, u32)>) {
    (n, canonical_form(n, edges))
}

/// All connected simple graphs with `1..=max_edges` edges and no isolated
/// vertices, one representative per isomorphism class. With `max_edges <= 8`
/// every listed graph is planar.
pub fn connected_graphs_up_to(max_edges: usize) -> Vec<EdgeListGraph> {
    let mut out: Vec<EdgeListGraph> = Vec::new();
    let mut level: Vec<(usize, Vec<(u32, u32)>)> = vec![(2, vec![(0, 1)])];
    let mut seen: BTreeSet<(usize, Vec<(u32, u32)>)> = level.iter().cloned().collect();
    out.push(EdgeListGraph::new(2, vec![(0, 1)]).unwrap());
    for _ in 2..=max_edges {
        let mut next: Vec<(usize, Vec<(u32, u32)>)> = Vec::new();
        for (n, edges) in &level {
            let n = *n;
            let present: BTreeSet<(u32, u32)> = edges.iter().copied().collect();
            let mut push = |nn: usize, mut es: Vec<(u32, u32)>, next: &mut Vec<_>| {
                es.sort();
                let key = canonical_key(nn, &es);
                if seen.insert(key.clone()) {
                    next.push(key.clone());
                    out.push(EdgeListGraph::new(key.0, key.1.clone()).unwrap());
                }
            };
            // new edge between existing vertices
            for a in 0..n as u32 {
                for b in a + 1..n as u32 {
                    if present.contains(&(a, b)) {
                        continue;
                    }
                    let mut es = edges.clone();
                    es.push((a, b));
                    push(n, es, &mut next);
                }
            }
            // new pendant vertex
            for a in 0..n as u32 {
                let mut es = edges.clone();
                es.push((a, n as u32));
                push(n + 1, es, &mut next);
            }
        }
        level = next;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts_match_known_sequence() {
        // connected simple graphs by edge count, up to isomorphism
        let all = connected_graphs_up_to(6);
        let mut by_m = [0usize; 7];
        for g in &all {
            by_m[g.m()] += 1;
        }
        assert_eq!(&by_m[1..], &[1, 1, 3, 5, 12, 30]);
    }

    #[test]
    fn canonical_is_isomorphism_invariant() {
        // relabelled copies of the bowtie collapse to one key
        let a = canonical_form(5, &[(0, 1), (1, 2), (0, 2), (0, 3), (3, 4), (0, 4)]);
        let b = canonical_form(5, &[(4, 3), (3, 2), (4, 2), (4, 1), (1, 0), (4, 0)]);
        assert_eq!(a, b);
    }
}
