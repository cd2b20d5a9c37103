//! Maximum-cardinality matching in general graphs (Edmonds' blossom
//! contraction, cardinality version).

use std::collections::{BTreeSet, VecDeque};

use crate::graph::{EdgeId, Graph};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matching {
    pub edges: BTreeSet<EdgeId>,
    pub mate: Vec<Option<usize>>,
}

impl Matching {
    pub fn size(&self) -> usize {
        self.edges.len()
    }

    /// Pairwise disjoint edges of `g`, consistent with the mate map.
    pub fn is_valid(&self, g: &Graph) -> bool {
        let mut seen = vec![false; g.n()];
        for &id in &self.edges {
            let Some(e) = g.edge(id) else { return false };
            if seen[e.u] || seen[e.v] {
                return false;
            }
            seen[e.u] = true;
            seen[e.v] = true;
            if self.mate[e.u] != Some(e.v) || self.mate[e.v] != Some(e.u) {
                return false;
            }
        }
        (0..g.n()).all(|v| seen[v] == self.mate[v].is_some())
    }
}

pub fn max_matching(g: &Graph) -> Matching {
    let adj: Vec<Vec<usize>> = (0..g.n()).map(|v| g.neighbors(v).iter().map(|&(w, _)| w).collect()).collect();
    let mate = max_matching_adj(&adj);
    let edges = g
        .edges()
        .iter()
        .filter(|e| mate[e.u] == Some(e.v))
        .map(|e| e.id)
        .collect();
    Matching { edges, mate }
}

/// Mate vector of a maximum matching of the graph given by adjacency lists.
pub fn max_matching_adj(adj: &[Vec<usize>]) -> Vec<Option<usize>> {
    let n = adj.len();
    let mut search = Search::new(adj);
    // Greedy start, free vertices scanned in id order.
    for v in 0..n {
        if search.mate[v] == NONE {
            if let Some(&w) = adj[v].iter().find(|&&w| search.mate[w] == NONE && w != v) {
                search.mate[v] = w;
                search.mate[w] = v;
            }
        }
    }
    for v in 0..n {
        if search.mate[v] == NONE {
            if let Some(end) = search.find_path(v) {
                search.augment(end);
            }
        }
    }
    search.mate.iter().map(|&m| (m != NONE).then_some(m)).collect()
}

/// True if some free vertex is the root of an augmenting path.
pub fn has_augmenting_path(adj: &[Vec<usize>], mate: &[Option<usize>]) -> bool {
    let mut search = Search::new(adj);
    search.mate = mate.iter().map(|m| m.unwrap_or(NONE)).collect();
    (0..adj.len()).any(|v| search.mate[v] == NONE && search.find_path(v).is_some())
}

const NONE: usize = usize::MAX;

struct Search<'a> {
    adj: &'a [Vec<usize>],
    mate: Vec<usize>,
    parent: Vec<usize>,
    base: Vec<usize>,
    used: Vec<bool>,
    in_blossom: Vec<bool>,
    queue: VecDeque<usize>,
}

impl<'a> Search<'a> {
    fn new(adj: &'a [Vec<usize>]) -> Self {
        let n = adj.len();
        Search {
            adj,
            mate: vec![NONE; n],
            parent: vec![NONE; n],
            base: (0..n).collect(),
            used: vec![false; n],
            in_blossom: vec![false; n],
            queue: VecDeque::new(),
        }
    }

    fn lca(&self, mut a: usize, mut b: usize) -> usize {
        let mut on_path = vec![false; self.adj.len()];
        loop {
            a = self.base[a];
            on_path[a] = true;
            if self.mate[a] == NONE {
                break;
            }
            a = self.parent[self.mate[a]];
        }
        loop {
            b = self.base[b];
            if on_path[b] {
                return b;
            }
            b = self.parent[self.mate[b]];
        }
    }

    fn mark_path(&mut self, mut v: usize, b: usize, mut child: usize) {
        while self.base[v] != b {
            self.in_blossom[self.base[v]] = true;
            self.in_blossom[self.base[self.mate[v]]] = true;
            self.parent[v] = child;
            child = self.mate[v];
            v = self.parent[self.mate[v]];
        }
    }

    /// BFS over alternating paths from `root`, contracting odd cycles.
    /// Returns the free endpoint of an augmenting path.
    fn find_path(&mut self, root: usize) -> Option<usize> {
        let n = self.adj.len();
        self.used.iter_mut().for_each(|u| *u = false);
        self.parent.iter_mut().for_each(|p| *p = NONE);
        for i in 0..n {
            self.base[i] = i;
        }
        self.used[root] = true;
        self.queue.clear();
        self.queue.push_back(root);
        while let Some(v) = self.queue.pop_front() {
            for k in 0..self.adj[v].len() {
                let to = self.adj[v][k];
                if self.base[v] == self.base[to] || self.mate[v] == to {
                    continue;
                }
                if to == root || (self.mate[to] != NONE && self.parent[self.mate[to]] != NONE) {
                    let cur = self.lca(v, to);
                    self.in_blossom.iter_mut().for_each(|b| *b = false);
                    self.mark_path(v, cur, to);
                    self.mark_path(to, cur, v);
                    for i in 0..n {
                        if self.in_blossom[self.base[i]] {
                            self.base[i] = cur;
                            if !self.used[i] {
                                self.used[i] = true;
                                self.queue.push_back(i);
                            }
                        }
                    }
                } else if self.parent[to] == NONE {
                    self.parent[to] = v;
                    if self.mate[to] == NONE {
                        return Some(to);
                    }
                    let next = self.mate[to];
                    self.used[next] = true;
                    self.queue.push_back(next);
                }
            }
        }
        None
    }

    fn augment(&mut self, mut v: usize) {
        while v != NONE {
            let pv = self.parent[v];
            let ppv = self.mate[pv];
            self.mate[v] = pv;
            self.mate[pv] = v;
            v = ppv;
        }
    }
}
