//! Integer maximum s-t flow (Dinic), residual min cuts, and flows with
//! per-arc lower bounds.

use std::collections::VecDeque;

use crate::error::{Error, Result};
use crate::graph::Digraph;

#[derive(Debug, Clone)]
pub struct FlowNetwork {
    pub graph: Digraph,
    pub source: usize,
    pub sink: usize,
}

/// Per-arc flow, indexed by arc id, plus `val(f)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FlowAssignment {
    pub flow: Vec<i64>,
    pub value: i64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MinCut {
    /// `source_side[v]` is true for vertices reachable from `s` in the residual network.
    pub source_side: Vec<bool>,
    pub value: i64,
}

impl MinCut {
    pub fn vertices(&self) -> Vec<usize> {
        (0..self.source_side.len()).filter(|&v| self.source_side[v]).collect()
    }
}

impl FlowNetwork {
    pub fn new(graph: Digraph, source: usize, sink: usize) -> Self {
        assert_ne!(source, sink, "source and sink must differ");
        assert!(source < graph.n() && sink < graph.n());
        FlowNetwork { graph, source, sink }
    }

    pub fn max_flow(&self) -> FlowAssignment {
        let mut d = Dinic::new(&self.graph);
        let value = d.run(self.source, self.sink);
        FlowAssignment { flow: d.arc_flows(), value }
    }

    /// Max flow together with the residual cut, failing if their values differ.
    pub fn max_flow_certified(&self) -> Result<(FlowAssignment, MinCut)> {
        let f = self.max_flow();
        let cut = self.min_cut(&f)?;
        if cut.value != f.value {
            return Err(Error::Internal(format!("max-flow {} != min-cut {}", f.value, cut.value)));
        }
        Ok((f, cut))
    }

    /// Residual-reachable set from `s` and the capacity leaving it.
    pub fn min_cut(&self, f: &FlowAssignment) -> Result<MinCut> {
        let n = self.graph.n();
        let mut out: Vec<Vec<(usize, bool)>> = vec![Vec::new(); n];
        for (i, a) in self.graph.arcs().iter().enumerate() {
            if f.flow[i] < a.cap {
                out[a.tail].push((a.head, true));
            }
            if f.flow[i] > 0 {
                out[a.head].push((a.tail, true));
            }
        }
        let mut side = vec![false; n];
        side[self.source] = true;
        let mut queue = VecDeque::from([self.source]);
        while let Some(v) = queue.pop_front() {
            for &(w, _) in &out[v] {
                if !side[w] {
                    side[w] = true;
                    queue.push_back(w);
                }
            }
        }
        if side[self.sink] {
            return Err(Error::NotMaximum);
        }
        let value = self
            .graph
            .arcs()
            .iter()
            .filter(|a| side[a.tail] && !side[a.head])
            .map(|a| a.cap)
            .sum();
        Ok(MinCut { source_side: side, value })
    }

    /// Capacity and conservation check; returns the value if `f` is a flow.
    pub fn check(&self, f: &FlowAssignment) -> Option<i64> {
        let arcs = self.graph.arcs();
        if f.flow.len() != arcs.len() {
            return None;
        }
        let mut excess = vec![0i64; self.graph.n()];
        for (a, &x) in arcs.iter().zip(&f.flow) {
            if x < 0 || x > a.cap {
                return None;
            }
            excess[a.tail] += x;
            excess[a.head] -= x;
        }
        let ok = (0..self.graph.n()).all(|v| v == self.source || v == self.sink || excess[v] == 0);
        (ok && excess[self.source] == -excess[self.sink] && excess[self.source] == f.value).then_some(f.value)
    }
}

/// Residual graph for Dinic's algorithm. Residual edge `2i` is arc `i`,
/// `2i + 1` its reverse. Adjacency lists follow arc order.
struct Dinic {
    to: Vec<usize>,
    cap: Vec<i64>,
    orig: Vec<i64>,
    adj: Vec<Vec<usize>>,
    level: Vec<i32>,
    it: Vec<usize>,
}

impl Dinic {
    fn new(g: &Digraph) -> Self {
        let m = g.arcs().len();
        let mut to = Vec::with_capacity(2 * m);
        let mut cap = Vec::with_capacity(2 * m);
        let mut adj = vec![Vec::new(); g.n()];
        for (i, a) in g.arcs().iter().enumerate() {
            to.push(a.head);
            cap.push(a.cap);
            to.push(a.tail);
            cap.push(0);
            adj[a.tail].push(2 * i);
            adj[a.head].push(2 * i + 1);
        }
        let orig = g.arcs().iter().map(|a| a.cap).collect();
        Dinic { to, cap, orig, adj, level: vec![-1; g.n()], it: vec![0; g.n()] }
    }

    fn bfs(&mut self, s: usize, t: usize) -> bool {
        self.level.iter_mut().for_each(|l| *l = -1);
        self.level[s] = 0;
        let mut q = VecDeque::from([s]);
        while let Some(v) = q.pop_front() {
            for &e in &self.adj[v] {
                let w = self.to[e];
                if self.cap[e] > 0 && self.level[w] < 0 {
                    self.level[w] = self.level[v] + 1;
                    q.push_back(w);
                }
            }
        }
        self.level[t] >= 0
    }

    /// Blocking flow by repeated current-arc path search.
    fn blocking(&mut self, s: usize, t: usize) -> i64 {
        let mut total = 0i64;
        let mut path: Vec<usize> = Vec::new();
        let mut v = s;
        loop {
            if v == t {
                let push = path.iter().map(|&e| self.cap[e]).min().unwrap_or(0);
                let mut retreat = path.len();
                for (k, &e) in path.iter().enumerate() {
                    self.cap[e] -= push;
                    self.cap[e ^ 1] += push;
                    if self.cap[e] == 0 && retreat == path.len() {
                        retreat = k;
                    }
                }
                total += push;
                path.truncate(retreat);
                v = match path.last() {
                    Some(&e) => self.to[e],
                    None => s,
                };
                continue;
            }
            let mut advanced = false;
            while self.it[v] < self.adj[v].len() {
                let e = self.adj[v][self.it[v]];
                let w = self.to[e];
                if self.cap[e] > 0 && self.level[w] == self.level[v] + 1 {
                    path.push(e);
                    v = w;
                    advanced = true;
                    break;
                }
                self.it[v] += 1;
            }
            if advanced {
                continue;
            }
            if v == s {
                return total;
            }
            self.level[v] = -1;
            let e = path.pop().expect("non-source vertex has a path edge");
            v = self.to[e ^ 1];
            self.it[v] += 1;
        }
    }

    fn run(&mut self, s: usize, t: usize) -> i64 {
        let mut total = 0i64;
        while self.bfs(s, t) {
            self.it.iter_mut().for_each(|i| *i = 0);
            total += self.blocking(s, t);
        }
        total
    }

    fn arc_flows(&self) -> Vec<i64> {
        (0..self.orig.len()).map(|i| self.orig[i] - self.cap[2 * i]).collect()
    }
}

/// Arc with flow bounds `lo <= f(a) <= hi`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BoundedArc {
    pub tail: usize,
    pub head: usize,
    pub lo: i64,
    pub hi: i64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BoundedFlow {
    Feasible(FlowAssignment),
    /// Vertices reachable from the auxiliary supply node after saturating as
    /// much demand as possible; the bounds crossing this set cannot be met.
    Infeasible { witness: Vec<usize> },
}

impl BoundedFlow {
    pub fn feasible(self) -> Option<FlowAssignment> {
        match self {
            BoundedFlow::Feasible(f) => Some(f),
            BoundedFlow::Infeasible { .. } => None,
        }
    }
}

/// Some integral s-t flow meeting every arc's bounds, via the standard
/// excess-node transformation with a `t -> s` return arc.
pub fn feasible_flow_with_bounds(n: usize, arcs: &[BoundedArc], s: usize, t: usize) -> Result<BoundedFlow> {
    for a in arcs {
        if a.lo < 0 || a.lo > a.hi {
            return Err(Error::Precondition(format!("bad bounds [{}, {}]", a.lo, a.hi)));
        }
    }
    let big = arcs.iter().try_fold(1i64, |acc, a| acc.checked_add(a.hi)).ok_or_else(|| Error::Overflow("sum of upper bounds".into()))?;
    let (ss, tt) = (n, n + 1);
    let mut g = Digraph::new(n + 2);
    let mut excess = vec![0i64; n];
    for a in arcs {
        g.add_arc(a.tail, a.head, a.hi - a.lo);
        excess[a.head] += a.lo;
        excess[a.tail] -= a.lo;
    }
    let ret = g.add_arc(t, s, big);
    let mut need = 0i64;
    for (v, &x) in excess.iter().enumerate() {
        if x > 0 {
            g.add_arc(ss, v, x);
            need += x;
        } else if x < 0 {
            g.add_arc(v, tt, -x);
        }
    }
    let net = FlowNetwork::new(g, ss, tt);
    let (f, cut) = net.max_flow_certified()?;
    if f.value < need {
        let witness = (0..n).filter(|&v| cut.source_side[v]).collect();
        return Ok(BoundedFlow::Infeasible { witness });
    }
    let flow: Vec<i64> = arcs.iter().enumerate().map(|(i, a)| a.lo + f.flow[i]).collect();
    Ok(BoundedFlow::Feasible(FlowAssignment { flow, value: f.flow[ret] }))
}

/// Maximum-value integral s-t flow meeting every arc's bounds.
pub fn max_flow_with_bounds(n: usize, arcs: &[BoundedArc], s: usize, t: usize) -> Result<BoundedFlow> {
    let base = match feasible_flow_with_bounds(n, arcs, s, t)? {
        BoundedFlow::Feasible(f) => f,
        infeasible => return Ok(infeasible),
    };
    let mut g = Digraph::new(n);
    for (a, &x) in arcs.iter().zip(&base.flow) {
        g.add_arc(a.tail, a.head, a.hi - x);
        g.add_arc(a.head, a.tail, x - a.lo);
    }
    let (extra, _) = FlowNetwork::new(g, s, t).max_flow_certified()?;
    let flow = (0..arcs.len()).map(|i| base.flow[i] + extra.flow[2 * i] - extra.flow[2 * i + 1]).collect();
    Ok(BoundedFlow::Feasible(FlowAssignment { flow, value: base.value + extra.value }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;
    use crate::graph::Arc;
    use proptest::prelude::*;

    fn net(n: usize, arcs: &[(usize, usize, i64)], s: usize, t: usize) -> FlowNetwork {
        let mut g = Digraph::new(n);
        for &(a, b, c) in arcs {
            g.add_arc(a, b, c);
        }
        FlowNetwork::new(g, s, t)
    }

    /// Brute force over every integral assignment `0..=cap` per arc.
    fn brute_max_flow(n: usize, arcs: &[Arc], s: usize, t: usize) -> i64 {
        let mut best = 0;
        let mut flow = vec![0i64; arcs.len()];
        loop {
            let mut ex = vec![0i64; n];
            for (a, &x) in arcs.iter().zip(&flow) {
                ex[a.tail] += x;
                ex[a.head] -= x;
            }
            if (0..n).all(|v| v == s || v == t || ex[v] == 0) {
                best = best.max(ex[s]);
            }
            let mut i = 0;
            loop {
                if i == arcs.len() {
                    return best;
                }
                if flow[i] < arcs[i].cap {
                    flow[i] += 1;
                    break;
                }
                flow[i] = 0;
                i += 1;
            }
        }
    }

    #[test]
    fn single_arc() {
        let nw = net(2, &[(0, 1, 7)], 0, 1);
        let (f, cut) = nw.max_flow_certified().unwrap();
        assert_eq!(f.value, 7);
        assert_eq!(cut.vertices(), vec![0]);
        assert_eq!(cut.value, 7);
    }

    #[test]
    fn two_disjoint_paths() {
        let nw = net(4, &[(0, 1, 1), (1, 3, 1), (0, 2, 1), (2, 3, 1)], 0, 3);
        assert_eq!(nw.max_flow().value, 2);
    }

    #[test]
    fn series_cut_is_bottleneck() {
        let nw = net(3, &[(0, 1, 3), (1, 2, 5)], 0, 2);
        let (f, cut) = nw.max_flow_certified().unwrap();
        assert_eq!((f.value, cut.value), (3, 3));
    }

    #[test]
    fn ex1_integral_network_value_four() {
        // s -> e (1), e -> endpoints (1), v -> t (tau = 1).
        let g = corpus::ex1();
        let (s, t) = (0, 1);
        let mut d = Digraph::new(2 + g.m() + g.n());
        for (i, e) in g.edges().iter().enumerate() {
            d.add_arc(s, 2 + i, 1);
            d.add_arc(2 + i, 2 + g.m() + e.u, 1);
            d.add_arc(2 + i, 2 + g.m() + e.v, 1);
        }
        for v in 0..g.n() {
            d.add_arc(2 + g.m() + v, t, 1);
        }
        let nw = FlowNetwork::new(d, s, t);
        let (f, cut) = nw.max_flow_certified().unwrap();
        assert_eq!(f.value, 4);
        assert_eq!(cut.value, 4);
        assert_eq!(nw.check(&f), Some(4));
    }

    #[test]
    fn min_cut_rejects_non_maximum_flow() {
        let nw = net(2, &[(0, 1, 7)], 0, 1);
        let f = FlowAssignment { flow: vec![3], value: 3 };
        assert_eq!(nw.min_cut(&f), Err(Error::NotMaximum));
    }

    #[test]
    fn bounded_flow_examples() {
        let arcs = [
            BoundedArc { tail: 0, head: 1, lo: 0, hi: 5 },
            BoundedArc { tail: 1, head: 2, lo: 2, hi: 2 },
            BoundedArc { tail: 2, head: 3, lo: 0, hi: 4 },
        ];
        let f = feasible_flow_with_bounds(4, &arcs, 0, 3).unwrap().feasible().unwrap();
        assert_eq!(f.value, 2);
        assert_eq!(f.flow, vec![2, 2, 2]);

        let arcs = [
            BoundedArc { tail: 0, head: 1, lo: 3, hi: 3 },
            BoundedArc { tail: 1, head: 2, lo: 0, hi: 2 },
        ];
        assert!(matches!(
            feasible_flow_with_bounds(3, &arcs, 0, 2).unwrap(),
            BoundedFlow::Infeasible { .. }
        ));
    }

    #[test]
    fn bounded_max_flow_respects_bounds() {
        let arcs = [
            BoundedArc { tail: 0, head: 1, lo: 1, hi: 4 },
            BoundedArc { tail: 0, head: 2, lo: 0, hi: 2 },
            BoundedArc { tail: 1, head: 3, lo: 0, hi: 3 },
            BoundedArc { tail: 2, head: 3, lo: 2, hi: 2 },
        ];
        let f = max_flow_with_bounds(4, &arcs, 0, 3).unwrap().feasible().unwrap();
        assert_eq!(f.value, 5);
        for (a, &x) in arcs.iter().zip(&f.flow) {
            assert!(a.lo <= x && x <= a.hi);
        }
    }

    fn arb_network() -> impl Strategy<Value = (usize, Vec<Arc>)> {
        (3usize..=8).prop_flat_map(|n| {
            let arc = (0..n, 0..n, 0i64..=3).prop_filter_map("no loops", |(a, b, c)| {
                (a != b).then_some(Arc { tail: a, head: b, cap: c })
            });
            (Just(n), prop::collection::vec(arc, 1..=8))
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(200))]
        #[test]
        fn dinic_matches_enumeration((n, arcs) in arb_network()) {
            let mut g = Digraph::new(n);
            for a in &arcs {
                g.add_arc(a.tail, a.head, a.cap);
            }
            let nw = FlowNetwork::new(g, 0, n - 1);
            let (f, cut) = nw.max_flow_certified().unwrap();
            prop_assert_eq!(nw.check(&f), Some(f.value));
            prop_assert_eq!(cut.value, f.value);
            prop_assert_eq!(f.value, brute_max_flow(n, &arcs, 0, n - 1));
        }
    }
}
