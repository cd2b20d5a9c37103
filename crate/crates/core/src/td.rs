//! Tree decompositions: PACE `.td` I/O, validation, a min-fill heuristic,
//! and conversion to nice form with introduce-edge nodes.

use std::collections::{BTreeSet, VecDeque};
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::graph::{EdgeId, Graph};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TreeDecomposition {
    /// Number of vertices of the decomposed graph.
    pub n: usize,
    /// Sorted bags.
    pub bags: Vec<Vec<usize>>,
    pub tree: Vec<(usize, usize)>,
}

impl TreeDecomposition {
    pub fn width(&self) -> usize {
        self.bags.iter().map(Vec::len).max().unwrap_or(1).saturating_sub(1)
    }

    /// Checks that the bags form a tree, cover every vertex and edge of `g`,
    /// and that the bags holding any one vertex are connected.
    pub fn validate(&self, g: &Graph) -> Result<()> {
        let k = self.bags.len();
        if self.n != g.n() {
            return Err(Error::Decomposition(format!("decomposes {} vertices, graph has {}", self.n, g.n())));
        }
        if k == 0 {
            return if g.n() == 0 { Ok(()) } else { Err(Error::Decomposition("no bags".into())) };
        }
        if self.tree.len() != k - 1 {
            return Err(Error::Decomposition(format!("{} tree edges for {k} bags", self.tree.len())));
        }
        let adj = self.tree_adjacency()?;
        let mut seen = vec![false; k];
        let mut queue = VecDeque::from([0]);
        seen[0] = true;
        while let Some(x) = queue.pop_front() {
            for &y in &adj[x] {
                if !seen[y] {
                    seen[y] = true;
                    queue.push_back(y);
                }
            }
        }
        if seen.iter().any(|s| !s) {
            return Err(Error::Decomposition("bag tree is disconnected".into()));
        }
        let mut holders = vec![Vec::new(); g.n()];
        for (i, bag) in self.bags.iter().enumerate() {
            for &v in bag {
                if v >= g.n() {
                    return Err(Error::Decomposition(format!("bag {} holds unknown vertex {}", i + 1, v + 1)));
                }
                holders[v].push(i);
            }
        }
        for (v, hs) in holders.iter().enumerate() {
            if hs.is_empty() {
                return Err(Error::Decomposition(format!("vertex {} is in no bag", v + 1)));
            }
            // Bags holding v must induce a connected subtree.
            let inside: BTreeSet<usize> = hs.iter().copied().collect();
            let mut reached = BTreeSet::from([hs[0]]);
            let mut queue = VecDeque::from([hs[0]]);
            while let Some(x) = queue.pop_front() {
                for &y in &adj[x] {
                    if inside.contains(&y) && reached.insert(y) {
                        queue.push_back(y);
                    }
                }
            }
            if reached.len() != inside.len() {
                return Err(Error::Decomposition(format!("bags holding vertex {} are not connected", v + 1)));
            }
        }
        for e in g.edges() {
            let covered = holders[e.u].iter().any(|&i| self.bags[i].binary_search(&e.v).is_ok());
            if !covered {
                return Err(Error::Decomposition(format!("edge {{{}, {}}} is in no bag", e.u + 1, e.v + 1)));
            }
        }
        Ok(())
    }

    fn tree_adjacency(&self) -> Result<Vec<Vec<usize>>> {
        let mut adj = vec![Vec::new(); self.bags.len()];
        for &(x, y) in &self.tree {
            if x >= self.bags.len() || y >= self.bags.len() || x == y {
                return Err(Error::Decomposition(format!("bad tree edge {} {}", x + 1, y + 1)));
            }
            adj[x].push(y);
            adj[y].push(x);
        }
        Ok(adj)
    }

    /// Restriction to a vertex subset, relabelled monotonically, keeping the
    /// tree shape (bags may become empty).
    pub fn restrict(&self, vertices: &[usize]) -> TreeDecomposition {
        let mut label = vec![usize::MAX; self.n];
        for (i, &v) in vertices.iter().enumerate() {
            label[v] = i;
        }
        let bags = self
            .bags
            .iter()
            .map(|b| b.iter().filter(|&&v| label[v] != usize::MAX).map(|&v| label[v]).collect())
            .collect();
        TreeDecomposition { n: vertices.len(), bags, tree: self.tree.clone() }
    }
}

/// Parses the PACE `.td` format (1-indexed bags and vertices).
pub fn read_td(text: &str) -> Result<TreeDecomposition> {
    let parse_err = |line: usize, msg: &str| Error::Parse { line, msg: msg.to_string() };
    let mut header: Option<(usize, usize)> = None;
    let mut bags: Vec<Option<Vec<usize>>> = Vec::new();
    let mut tree = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let toks: Vec<&str> = raw.split_whitespace().collect();
        if toks.is_empty() || toks[0] == "c" {
            continue;
        }
        let nums = |ts: &[&str]| -> Result<Vec<usize>> {
            ts.iter().map(|t| t.parse::<usize>().map_err(|_| parse_err(line, &format!("bad number {t:?}")))).collect()
        };
        match toks[0] {
            "s" => {
                if toks.len() != 5 || toks[1] != "td" {
                    return Err(parse_err(line, "expected `s td <bags> <width+1> <n>`"));
                }
                let v = nums(&toks[2..])?;
                header = Some((v[0], v[2]));
                bags = vec![None; v[0]];
            }
            "b" => {
                let (count, n) = header.ok_or_else(|| parse_err(line, "bag before header"))?;
                let v = nums(&toks[1..])?;
                let id = *v.first().ok_or_else(|| parse_err(line, "missing bag id"))?;
                if id == 0 || id > count {
                    return Err(parse_err(line, &format!("bag id {id} out of range")));
                }
                let mut bag = Vec::with_capacity(v.len() - 1);
                for &x in &v[1..] {
                    if x == 0 || x > n {
                        return Err(parse_err(line, &format!("vertex {x} out of range")));
                    }
                    bag.push(x - 1);
                }
                bag.sort_unstable();
                bag.dedup();
                bags[id - 1] = Some(bag);
            }
            _ => {
                let (count, _) = header.ok_or_else(|| parse_err(line, "tree edge before header"))?;
                let v = nums(&toks)?;
                if v.len() != 2 || v.iter().any(|&x| x == 0 || x > count) {
                    return Err(parse_err(line, "expected a tree edge `i j`"));
                }
                tree.push((v[0] - 1, v[1] - 1));
            }
        }
    }
    let (_, n) = header.ok_or_else(|| parse_err(0, "missing `s td` header"))?;
    let bags = bags
        .into_iter()
        .enumerate()
        .map(|(i, b)| b.ok_or_else(|| Error::Decomposition(format!("bag {} is never listed", i + 1))))
        .collect::<Result<_>>()?;
    Ok(TreeDecomposition { n, bags, tree })
}

pub fn write_td(td: &TreeDecomposition) -> String {
    let mut out = String::new();
    writeln!(out, "s td {} {} {}", td.bags.len(), td.width() + 1, td.n).unwrap();
    for (i, bag) in td.bags.iter().enumerate() {
        write!(out, "b {}", i + 1).unwrap();
        for v in bag {
            write!(out, " {}", v + 1).unwrap();
        }
        out.push('\n');
    }
    for &(x, y) in &td.tree {
        writeln!(out, "{} {}", x + 1, y + 1).unwrap();
    }
    out
}

/// Min-fill elimination: repeatedly eliminate the vertex whose
/// neighbourhood needs the fewest fill edges (ties to the smallest id).
pub fn heuristic_td(g: &Graph) -> TreeDecomposition {
    let n = g.n();
    let mut adj: Vec<BTreeSet<usize>> = (0..n).map(|v| g.neighbors(v).iter().map(|&(w, _)| w).collect()).collect();
    let mut alive = vec![true; n];
    let mut order = Vec::with_capacity(n);
    let mut bag_of = vec![Vec::new(); n];
    for _ in 0..n {
        let fill = |v: usize| {
            let nb: Vec<usize> = adj[v].iter().copied().collect();
            let mut missing = 0;
            for (i, &x) in nb.iter().enumerate() {
                missing += nb[i + 1..].iter().filter(|&&y| !adj[x].contains(&y)).count();
            }
            missing
        };
        let v = (0..n).filter(|&v| alive[v]).min_by_key(|&v| (fill(v), v)).unwrap();
        let nb: Vec<usize> = adj[v].iter().copied().collect();
        for (i, &x) in nb.iter().enumerate() {
            for &y in &nb[i + 1..] {
                adj[x].insert(y);
                adj[y].insert(x);
            }
        }
        for &x in &nb {
            adj[x].remove(&v);
        }
        let mut bag = nb;
        bag.push(v);
        bag.sort_unstable();
        bag_of[v] = bag;
        alive[v] = false;
        order.push(v);
    }
    let mut position = vec![0; n];
    for (i, &v) in order.iter().enumerate() {
        position[v] = i;
    }
    // Bag i belongs to order[i]; its parent is the bag of the neighbour
    // eliminated next. Parentless bags are chained to keep one tree.
    let mut tree = Vec::new();
    let mut last_root: Option<usize> = None;
    for (i, &v) in order.iter().enumerate() {
        let parent = bag_of[v].iter().filter(|&&w| w != v).map(|&w| position[w]).min();
        match parent {
            Some(p) => tree.push((i, p)),
            None => {
                if let Some(r) = last_root {
                    tree.push((r, i));
                }
                last_root = Some(i);
            }
        }
    }
    let bags = order.iter().map(|&v| bag_of[v].clone()).collect();
    TreeDecomposition { n, bags, tree }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NiceKind {
    Leaf,
    Introduce(usize),
    /// Edge id and its endpoints `u < v`.
    IntroduceEdge(EdgeId, usize, usize),
    Forget(usize),
    Join,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NiceNode {
    pub kind: NiceKind,
    pub bag: Vec<usize>,
    pub children: Vec<usize>,
}

/// Nice decomposition with an empty root bag; every edge of the graph is
/// introduced exactly once.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NiceTd {
    pub nodes: Vec<NiceNode>,
    pub root: usize,
}

impl NiceTd {
    pub fn width(&self) -> usize {
        self.nodes.iter().map(|x| x.bag.len()).max().unwrap_or(1).saturating_sub(1)
    }

    /// Nodes in an order where children precede parents.
    pub fn post_order(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.nodes.len());
        let mut stack = vec![(self.root, false)];
        while let Some((x, done)) = stack.pop() {
            if done {
                out.push(x);
            } else {
                stack.push((x, true));
                for &c in self.nodes[x].children.iter().rev() {
                    stack.push((c, false));
                }
            }
        }
        out
    }

    /// Plain decomposition with the root as bag 0.
    pub fn as_td(&self, n: usize) -> TreeDecomposition {
        let mut order = vec![self.root];
        let mut i = 0;
        while i < order.len() {
            order.extend(self.nodes[order[i]].children.iter().copied());
            i += 1;
        }
        let mut index = vec![0; self.nodes.len()];
        for (i, &x) in order.iter().enumerate() {
            index[x] = i;
        }
        let bags = order.iter().map(|&x| self.nodes[x].bag.clone()).collect();
        let tree = order
            .iter()
            .flat_map(|&x| self.nodes[x].children.iter().map(move |&c| (x, c)))
            .map(|(x, c)| (index[x], index[c]))
            .collect();
        TreeDecomposition { n, bags, tree }
    }
}

struct Builder {
    nodes: Vec<NiceNode>,
}

impl Builder {
    fn push(&mut self, kind: NiceKind, bag: Vec<usize>, children: Vec<usize>) -> usize {
        self.nodes.push(NiceNode { kind, bag, children });
        self.nodes.len() - 1
    }

    /// Walks from a node with bag `from` up to bag `to` by forgetting then
    /// introducing one vertex at a time.
    fn transition(&mut self, mut top: usize, to: &[usize]) -> usize {
        let from = self.nodes[top].bag.clone();
        let mut bag = from.clone();
        for &v in from.iter().filter(|v| to.binary_search(v).is_err()) {
            bag.retain(|&x| x != v);
            top = self.push(NiceKind::Forget(v), bag.clone(), vec![top]);
        }
        for &v in to.iter().filter(|v| from.binary_search(v).is_err()) {
            let pos = bag.binary_search(&v).unwrap_err();
            bag.insert(pos, v);
            top = self.push(NiceKind::Introduce(v), bag.clone(), vec![top]);
        }
        top
    }
}

pub fn nicify(g: &Graph, td: &TreeDecomposition) -> Result<NiceTd> {
    td.validate(g)?;
    let mut b = Builder { nodes: Vec::new() };
    if td.bags.is_empty() {
        let root = b.push(NiceKind::Leaf, Vec::new(), Vec::new());
        return Ok(NiceTd { nodes: b.nodes, root });
    }
    let adj = td.tree_adjacency()?;
    let k = td.bags.len();
    let mut parent = vec![usize::MAX; k];
    let mut order = vec![0];
    let mut seen = vec![false; k];
    seen[0] = true;
    let mut i = 0;
    while i < order.len() {
        let x = order[i];
        i += 1;
        for &y in &adj[x] {
            if !seen[y] {
                seen[y] = true;
                parent[y] = x;
                order.push(y);
            }
        }
    }
    let mut children = vec![Vec::new(); k];
    for &x in &order[1..] {
        children[parent[x]].push(x);
    }
    // top[x]: nice node whose bag equals bag x, covering x's subtree.
    let mut top = vec![usize::MAX; k];
    for &x in order.iter().rev() {
        let bag = &td.bags[x];
        let mut branches: Vec<usize> = children[x].iter().map(|&c| b.transition(top[c], bag)).collect();
        if branches.is_empty() {
            let leaf = b.push(NiceKind::Leaf, Vec::new(), Vec::new());
            branches.push(b.transition(leaf, bag));
        }
        let mut acc = branches[0];
        for &other in &branches[1..] {
            acc = b.push(NiceKind::Join, bag.clone(), vec![acc, other]);
        }
        top[x] = acc;
    }
    let root = b.transition(top[0], &[]);
    let mut nodes = b.nodes;
    insert_edges(g, &mut nodes, root)?;
    Ok(NiceTd { nodes, root })
}

/// Puts an introduce-edge node for `{u, v}` just below the deeper of the
/// two forget nodes; the other endpoint is still in that bag.
fn insert_edges(g: &Graph, nodes: &mut Vec<NiceNode>, root: usize) -> Result<()> {
    let mut depth = vec![0usize; nodes.len()];
    let mut forget_at = vec![usize::MAX; g.n()];
    let mut stack = vec![root];
    while let Some(x) = stack.pop() {
        if let NiceKind::Forget(v) = nodes[x].kind {
            forget_at[v] = x;
        }
        for &c in &nodes[x].children {
            depth[c] = depth[x] + 1;
            stack.push(c);
        }
    }
    for e in g.edges() {
        let (fu, fv) = (forget_at[e.u], forget_at[e.v]);
        let at = if depth[fu] >= depth[fv] { fu } else { fv };
        let child = nodes[at].children[0];
        let bag = nodes[child].bag.clone();
        if bag.binary_search(&e.u).is_err() || bag.binary_search(&e.v).is_err() {
            return Err(Error::Internal(format!("edge {} not covered below its forget node", e.id)));
        }
        nodes.push(NiceNode { kind: NiceKind::IntroduceEdge(e.id, e.u, e.v), bag, children: vec![child] });
        let id = nodes.len() - 1;
        nodes[at].children[0] = id;
    }
    Ok(())
}
