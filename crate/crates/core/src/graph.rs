//! Simple undirected graphs with stable edge identifiers, capacitated
//! digraphs, and the plain edge-list text format.

use std::collections::{BTreeSet, HashSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::Rational;

/// Identifier of an edge in the graph it was first created in.
///
/// Subgraph views keep the ids of the edges they retain, so a deletion set
/// computed on a view can be reported against the input graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct EdgeId(pub usize);

impl fmt::Display for EdgeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "e{}", self.0)
    }
}

/// An undirected edge `{u, v}` stored with `u < v`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Edge {
    pub id: EdgeId,
    pub u: usize,
    pub v: usize,
}

impl Edge {
    pub fn other(&self, x: usize) -> usize {
        if x == self.u {
            self.v
        } else {
            self.u
        }
    }
}

#[derive(Clone)]
pub struct Graph {
    n: usize,
    edges: Vec<Edge>,
    adj: Vec<Vec<(usize, usize)>>,
    index: Vec<u32>,
}

const NO_INDEX: u32 = u32::MAX;

impl Graph {
    pub fn empty(n: usize) -> Self {
        Graph { n, edges: Vec::new(), adj: vec![Vec::new(); n], index: Vec::new() }
    }

    /// Builds a graph whose edge ids are the positions in `pairs`.
    pub fn from_edges(n: usize, pairs: &[(usize, usize)]) -> Result<Self> {
        let edges = pairs
            .iter()
            .enumerate()
            .map(|(i, &(u, v))| (EdgeId(i), u, v))
            .collect::<Vec<_>>();
        Self::with_ids(n, edges)
    }

    /// Builds a graph from explicit `(id, u, v)` triples.
    pub fn with_ids(n: usize, edges: impl IntoIterator<Item = (EdgeId, usize, usize)>) -> Result<Self> {
        let mut g = Graph::empty(n);
        let mut seen = HashSet::new();
        let mut ids = HashSet::new();
        for (id, a, b) in edges {
            if a >= n {
                return Err(Error::UnknownVertex(a));
            }
            if b >= n {
                return Err(Error::UnknownVertex(b));
            }
            if a == b {
                return Err(Error::Precondition(format!("loop on vertex {a}")));
            }
            let (u, v) = if a < b { (a, b) } else { (b, a) };
            if !seen.insert((u, v)) {
                return Err(Error::Precondition(format!("parallel edge {{{u}, {v}}}")));
            }
            if !ids.insert(id) {
                return Err(Error::Precondition(format!("duplicate edge id {id}")));
            }
            g.push_edge(Edge { id, u, v });
        }
        Ok(g)
    }

    fn push_edge(&mut self, e: Edge) {
        let pos = self.edges.len();
        self.adj[e.u].push((e.v, pos));
        self.adj[e.v].push((e.u, pos));
        if self.index.len() <= e.id.0 {
            self.index.resize(e.id.0 + 1, NO_INDEX);
        }
        self.index[e.id.0] = pos as u32;
        self.edges.push(e);
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge_ids(&self) -> impl Iterator<Item = EdgeId> + '_ {
        self.edges.iter().map(|e| e.id)
    }

    /// Position of an edge id in [`Graph::edges`].
    pub fn position(&self, id: EdgeId) -> Option<usize> {
        match self.index.get(id.0) {
            Some(&p) if p != NO_INDEX => Some(p as usize),
            _ => None,
        }
    }

    pub fn edge(&self, id: EdgeId) -> Option<&Edge> {
        self.position(id).map(|p| &self.edges[p])
    }

    /// `(neighbor, edge position)` pairs.
    pub fn neighbors(&self, v: usize) -> &[(usize, usize)] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && self.adj[u].iter().any(|&(w, _)| w == v)
    }

    pub fn edge_between(&self, u: usize, v: usize) -> Option<&Edge> {
        if u >= self.n {
            return None;
        }
        self.adj[u].iter().find(|&&(w, _)| w == v).map(|&(_, p)| &self.edges[p])
    }

    /// `m / n` in lowest terms; zero for the graph without vertices.
    pub fn density(&self) -> Rational {
        if self.n == 0 {
            Rational::zero()
        } else {
            Rational::new(self.m() as i64, self.n as i64)
        }
    }

    /// Subgraph induced by `vs`, relabelled monotonically to `0..|vs|`.
    /// Retained edges keep their ids.
    pub fn induced_subgraph(&self, vs: &[usize]) -> Result<Subgraph> {
        let mut vertices: Vec<usize> = vs.to_vec();
        vertices.sort_unstable();
        vertices.dedup();
        let mut local = vec![usize::MAX; self.n];
        for (i, &v) in vertices.iter().enumerate() {
            if v >= self.n {
                return Err(Error::UnknownVertex(v));
            }
            local[v] = i;
        }
        let mut g = Graph::empty(vertices.len());
        for e in &self.edges {
            let (a, b) = (local[e.u], local[e.v]);
            if a != usize::MAX && b != usize::MAX {
                g.push_edge(Edge { id: e.id, u: a, v: b });
            }
        }
        Ok(Subgraph { graph: g, vertices })
    }

    /// `G - F` on the same vertex set; survivors keep their ids.
    pub fn remove_edges<'a>(&self, f: impl IntoIterator<Item = &'a EdgeId>) -> Result<Graph> {
        let mut drop = BTreeSet::new();
        for &id in f {
            if self.position(id).is_none() {
                return Err(Error::UnknownEdge(id));
            }
            drop.insert(id);
        }
        Ok(self.retain_edges(|e| !drop.contains(&e.id)))
    }

    pub fn retain_edges(&self, mut keep: impl FnMut(&Edge) -> bool) -> Graph {
        let mut g = Graph::empty(self.n);
        for e in &self.edges {
            if keep(e) {
                g.push_edge(*e);
            }
        }
        g
    }

    /// Vertex sets of the connected components, each sorted, ordered by
    /// smallest vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut comp = vec![usize::MAX; self.n];
        let mut out = Vec::new();
        for s in 0..self.n {
            if comp[s] != usize::MAX {
                continue;
            }
            let c = out.len();
            comp[s] = c;
            let mut stack = vec![s];
            let mut members = vec![s];
            while let Some(x) = stack.pop() {
                for &(y, _) in &self.adj[x] {
                    if comp[y] == usize::MAX {
                        comp[y] = c;
                        stack.push(y);
                        members.push(y);
                    }
                }
            }
            members.sort_unstable();
            out.push(members);
        }
        out
    }

    /// Same graph with edge ids renumbered to positions.
    pub fn with_fresh_ids(&self) -> Graph {
        let pairs: Vec<_> = self.edges.iter().map(|e| (e.u, e.v)).collect();
        Graph::from_edges(self.n, &pairs).expect("already simple")
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Graph")
            .field("n", &self.n)
            .field("edges", &self.edges.iter().map(|e| (e.id.0, e.u, e.v)).collect::<Vec<_>>())
            .finish()
    }
}

/// Two graphs are equal when they have the same vertex count and the same
/// set of `(id, endpoints)` triples, regardless of storage order.
impl PartialEq for Graph {
    fn eq(&self, other: &Self) -> bool {
        let key = |g: &Graph| g.edges.iter().map(|e| (e.id, e.u, e.v)).collect::<BTreeSet<_>>();
        self.n == other.n && key(self) == key(other)
    }
}

impl Eq for Graph {}

#[derive(Debug, Clone)]
pub struct Subgraph {
    pub graph: Graph,
    /// Local vertex `i` is vertex `vertices[i]` of the parent graph.
    pub vertices: Vec<usize>,
}

pub type ArcId = usize;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Arc {
    pub tail: usize,
    pub head: usize,
    pub cap: i64,
}

/// Directed multigraph with non-negative integer capacities.
#[derive(Debug, Clone, Default)]
pub struct Digraph {
    n: usize,
    arcs: Vec<Arc>,
}

impl Digraph {
    pub fn new(n: usize) -> Self {
        Digraph { n, arcs: Vec::new() }
    }

    pub fn add_vertex(&mut self) -> usize {
        self.n += 1;
        self.n - 1
    }

    pub fn add_arc(&mut self, tail: usize, head: usize, cap: i64) -> ArcId {
        assert!(tail < self.n && head < self.n, "arc endpoint out of range");
        assert!(cap >= 0, "negative capacity");
        self.arcs.push(Arc { tail, head, cap });
        self.arcs.len() - 1
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn arcs(&self) -> &[Arc] {
        &self.arcs
    }
}

/// Parses the plain edge-list format (`n m` header, then `u v` lines,
/// 1-indexed, `#` comments) or a PACE `.gr` file (`p tw n m`, `c` comments).
pub fn read_graph(text: &str) -> Result<Graph> {
    let mut header: Option<(usize, usize)> = None;
    let mut g = Graph::empty(0);
    let mut seen = HashSet::new();
    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() || line.starts_with('c') {
            continue;
        }
        let toks: Vec<&str> = line.split_whitespace().collect();
        let parse_num = |t: &str| -> Result<usize> {
            t.parse::<usize>()
                .map_err(|_| Error::Parse { line: line_no, msg: format!("expected a non-negative integer, found `{t}`") })
        };
        match header {
            None => {
                let nums = match toks.as_slice() {
                    ["p", _, n, m] => (parse_num(n)?, parse_num(m)?),
                    [n, m] => (parse_num(n)?, parse_num(m)?),
                    _ => {
                        return Err(Error::Parse { line: line_no, msg: "expected header `n m` or `p tw n m`".into() })
                    }
                };
                header = Some(nums);
                g = Graph::empty(nums.0);
            }
            Some((n, m)) => {
                let (a, b) = match toks.as_slice() {
                    [a, b] => (parse_num(a)?, parse_num(b)?),
                    _ => return Err(Error::Parse { line: line_no, msg: "expected edge line `u v`".into() }),
                };
                for x in [a, b] {
                    if x == 0 || x > n {
                        return Err(Error::Parse { line: line_no, msg: format!("vertex {x} out of range 1..={n}") });
                    }
                }
                if a == b {
                    return Err(Error::Loop { line: line_no, vertex: a });
                }
                let (u, v) = if a < b { (a - 1, b - 1) } else { (b - 1, a - 1) };
                if !seen.insert((u, v)) {
                    return Err(Error::DuplicateEdge { line: line_no, u: u + 1, v: v + 1 });
                }
                if g.m() == m {
                    return Err(Error::Parse { line: line_no, msg: format!("more than the declared {m} edges") });
                }
                let id = EdgeId(g.m());
                g.push_edge(Edge { id, u, v });
            }
        }
    }
    match header {
        None => Err(Error::Parse { line: text.lines().count().max(1), msg: "missing header".into() }),
        Some((_, m)) if g.m() != m => Err(Error::Parse {
            line: text.lines().count().max(1),
            msg: format!("declared {m} edges but found {}", g.m()),
        }),
        Some(_) => Ok(g),
    }
}

/// Writes the plain edge-list format, edges in storage order.
pub fn write_graph(g: &Graph) -> String {
    let mut out = format!("{} {}\n", g.n(), g.m());
    for e in g.edges() {
        out.push_str(&format!("{} {}\n", e.u + 1, e.v + 1));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;

    #[test]
    fn density_examples() {
        assert_eq!(corpus::complete(4).density(), Rational::new(3, 2));
        assert_eq!(Graph::empty(0).density(), Rational::zero());
        assert_eq!(corpus::path(4).density(), Rational::new(3, 4));
    }

    #[test]
    fn induced_subgraph_examples() {
        let k4 = corpus::complete(4);
        let sub = k4.induced_subgraph(&[0, 1, 2]).unwrap();
        assert_eq!(sub.graph.n(), 3);
        assert_eq!(sub.graph.m(), 3);
        assert_eq!(k4.induced_subgraph(&[]).unwrap().graph.m(), 0);

        // {v2, v3, v4} of EX1 spans e2, e3, e5.
        let ex1 = corpus::ex1();
        let sub = ex1.induced_subgraph(&[1, 2, 3]).unwrap();
        assert_eq!(sub.graph.m(), 3);
        let ids: BTreeSet<_> = sub.graph.edge_ids().collect();
        assert_eq!(ids, [EdgeId(1), EdgeId(2), EdgeId(4)].into_iter().collect());
        assert_eq!(k4.induced_subgraph(&[7]).unwrap_err(), Error::UnknownVertex(7));
    }

    #[test]
    fn remove_edges_examples() {
        let k3 = corpus::complete(3);
        let p3 = k3.remove_edges(&[EdgeId(0)]).unwrap();
        assert_eq!(p3.m(), 2);
        assert!(p3.edge(EdgeId(0)).is_none());
        assert!(p3.edge(EdgeId(2)).is_some());

        let ex1 = corpus::ex1();
        let g = ex1.remove_edges(&[EdgeId(3)]).unwrap();
        assert_eq!((g.n(), g.m()), (4, 4));
        assert_eq!(ex1.remove_edges(&[]).unwrap(), ex1);
        assert_eq!(ex1.remove_edges(&[EdgeId(9)]).unwrap_err(), Error::UnknownEdge(EdgeId(9)));
    }

    #[test]
    fn read_examples() {
        let g = read_graph("4 5\n1 2\n2 3\n3 4\n1 3\n2 4").unwrap();
        assert_eq!(g, corpus::ex1());
        let g = read_graph("1 0").unwrap();
        assert_eq!((g.n(), g.m()), (1, 0));
        assert_eq!(read_graph("2 1\n1 1").unwrap_err(), Error::Loop { line: 2, vertex: 1 });
    }

    #[test]
    fn read_errors_carry_line_numbers() {
        assert_eq!(
            read_graph("3 2\n1 2\n# comment\n2 1").unwrap_err(),
            Error::DuplicateEdge { line: 4, u: 1, v: 2 }
        );
        assert!(matches!(read_graph("3 1\n1 x"), Err(Error::Parse { line: 2, .. })));
        assert!(matches!(read_graph("3 1\n1 4"), Err(Error::Parse { line: 2, .. })));
        assert!(matches!(read_graph("3 2\n1 2"), Err(Error::Parse { .. })));
        assert!(matches!(read_graph(""), Err(Error::Parse { .. })));
    }

    #[test]
    fn reads_pace_gr() {
        let g = read_graph("c a comment\np tw 3 2\n1 2\n2 3\n").unwrap();
        assert_eq!(g, corpus::path(3));
    }

    #[test]
    fn components_split() {
        let g = Graph::from_edges(6, &[(0, 1), (2, 3), (3, 4)]).unwrap();
        assert_eq!(g.components(), vec![vec![0, 1], vec![2, 3, 4], vec![5]]);
    }

    #[test]
    fn round_trip_canonical_corpus() {
        for g in [corpus::ex1(), corpus::complete(5), corpus::petersen(), Graph::empty(3), corpus::cycle(7)] {
            let text = write_graph(&g);
            assert_eq!(read_graph(&text).unwrap(), g);
            assert_eq!(write_graph(&read_graph(&text).unwrap()), text);
        }
    }
}
