//! Two-layer transshipment: every arc goes from a source part `U` to a sink
//! part `W` and each vertex restricts its excess to a set `B_v`. BDED is the
//! instance with `U = E(G)`, `W = V(G)`, `B_e = {0, 1}` and `B_v = [−τ, 0]`.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::flow::{max_flow_with_bounds, BoundedArc, BoundedFlow, FlowNetwork};
use crate::graph::{Digraph, EdgeId, Graph};
use crate::matching::max_matching_adj;
use crate::orientation::{orientation_from_flow, FractionalOrientation};
use crate::rational::Rational;
use crate::td::TreeDecomposition;

/// Allowed excess values of one vertex.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum ExcessSet {
    /// Sorted, deduplicated values.
    Finite { values: Vec<Rational> },
    /// The real interval `[lo, hi]`.
    Interval { lo: Rational, hi: Rational },
    /// `[lo, hi] ∩ ℤ`, kept implicit.
    Integers { lo: i64, hi: i64 },
}

impl ExcessSet {
    pub fn finite(values: impl IntoIterator<Item = Rational>) -> Self {
        let set: BTreeSet<Rational> = values.into_iter().collect();
        ExcessSet::Finite { values: set.into_iter().collect() }
    }

    pub fn finite_ints(values: &[i64]) -> Self {
        Self::finite(values.iter().map(|&v| Rational::integer(v)))
    }

    pub fn interval(lo: Rational, hi: Rational) -> Self {
        assert!(lo <= hi);
        ExcessSet::Interval { lo, hi }
    }

    pub fn contains(&self, x: &Rational) -> bool {
        match self {
            ExcessSet::Finite { values } => values.binary_search(x).is_ok(),
            ExcessSet::Interval { lo, hi } => lo <= x && x <= hi,
            ExcessSet::Integers { lo, hi } => x.is_integer() && *x >= *lo && *x <= *hi,
        }
    }

    fn bounds(&self) -> Option<(Rational, Rational)> {
        match self {
            ExcessSet::Finite { values } => Some((values.first()?.clone(), values.last()?.clone())),
            ExcessSet::Interval { lo, hi } => Some((lo.clone(), hi.clone())),
            ExcessSet::Integers { lo, hi } if lo <= hi => Some((Rational::integer(*lo), Rational::integer(*hi))),
            ExcessSet::Integers { .. } => None,
        }
    }

    pub fn is_nonnegative(&self) -> bool {
        self.bounds().map_or(true, |(lo, _)| !lo.is_negative())
    }

    pub fn is_nonpositive(&self) -> bool {
        self.bounds().map_or(true, |(_, hi)| !hi.is_positive())
    }

    pub fn scale(&self, q: &Rational) -> Self {
        match self {
            ExcessSet::Finite { values } => Self::finite(values.iter().map(|v| v * q)),
            ExcessSet::Interval { lo, hi } => {
                let (a, b) = (lo * q, hi * q);
                if a <= b {
                    ExcessSet::Interval { lo: a, hi: b }
                } else {
                    ExcessSet::Interval { lo: b, hi: a }
                }
            }
            ExcessSet::Integers { .. } if *q == 1 => self.clone(),
            ExcessSet::Integers { lo, hi } => Self::finite((*lo..=*hi).map(|v| q.mul_int(v))),
        }
    }

    /// `B ∩ ℤ`. Finite sets must already be integral and intervals must have
    /// integer endpoints.
    pub fn integralize(&self) -> Result<Self> {
        match self {
            ExcessSet::Finite { values } => {
                if let Some(bad) = values.iter().find(|v| !v.is_integer()) {
                    return Err(Error::Precondition(format!("non-integral excess value {bad}")));
                }
                Ok(self.clone())
            }
            ExcessSet::Interval { lo, hi } => match (lo.to_i64(), hi.to_i64()) {
                (Some(lo), Some(hi)) => Ok(ExcessSet::Integers { lo, hi }),
                _ => Err(Error::Precondition(format!("interval [{lo}, {hi}] has non-integral endpoints"))),
            },
            ExcessSet::Integers { .. } => Ok(self.clone()),
        }
    }

    /// `(lo, hi)` when the set is exactly the integers of `[lo, hi]`.
    pub fn integer_range(&self) -> Option<(i64, i64)> {
        match self {
            ExcessSet::Integers { lo, hi } => Some((*lo, *hi)),
            ExcessSet::Finite { values } => {
                let ints: Vec<i64> = values.iter().map(Rational::to_i64).collect::<Option<_>>()?;
                let (&lo, &hi) = (ints.first()?, ints.last()?);
                ints.windows(2).all(|w| w[1] == w[0] + 1).then_some((lo, hi))
            }
            ExcessSet::Interval { .. } => None,
        }
    }

    /// The elements as integers, if the set is finite and integral.
    pub fn integer_values(&self) -> Option<Vec<i64>> {
        match self {
            ExcessSet::Finite { values } => values.iter().map(Rational::to_i64).collect(),
            ExcessSet::Integers { lo, hi } => Some((*lo..=*hi).collect()),
            ExcessSet::Interval { .. } => None,
        }
    }
}

/// Longest run of missing integers strictly between two members.
pub fn max_gap(values: &[i64]) -> u64 {
    let mut sorted = values.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    sorted.windows(2).map(|w| (w[1] - w[0] - 1) as u64).max().unwrap_or(0)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TArc {
    pub source: usize,
    pub sink: usize,
    pub cap: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TransshipmentInstance {
    pub source_sets: Vec<ExcessSet>,
    pub sink_sets: Vec<ExcessSet>,
    pub arcs: Vec<TArc>,
}

/// Integral flow per arc (same order as the instance's arcs) and its value.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntTransshipment {
    pub flow: Vec<i64>,
    pub value: i64,
}

impl TransshipmentInstance {
    pub fn num_sources(&self) -> usize {
        self.source_sets.len()
    }

    pub fn num_sinks(&self) -> usize {
        self.sink_sets.len()
    }

    pub fn num_vertices(&self) -> usize {
        self.num_sources() + self.num_sinks()
    }

    pub fn validate(&self) -> Result<()> {
        for (i, a) in self.arcs.iter().enumerate() {
            if a.source >= self.num_sources() || a.sink >= self.num_sinks() {
                return Err(Error::Precondition(format!("arc {i} leaves the two layers")));
            }
            if a.cap.is_negative() {
                return Err(Error::Precondition(format!("arc {i} has negative capacity")));
            }
        }
        if let Some(u) = self.source_sets.iter().position(|b| !b.is_nonnegative()) {
            return Err(Error::Precondition(format!("source {u} allows negative excess")));
        }
        if let Some(w) = self.sink_sets.iter().position(|b| !b.is_nonpositive()) {
            return Err(Error::Precondition(format!("sink {w} allows positive excess")));
        }
        Ok(())
    }

    /// Checks capacities and excess sets; returns `val(f)`.
    pub fn check(&self, flow: &[Rational]) -> Result<Rational> {
        if flow.len() != self.arcs.len() {
            return Err(Error::Precondition("flow length differs from arc count".into()));
        }
        let mut out = vec![Rational::zero(); self.num_sources()];
        let mut inn = vec![Rational::zero(); self.num_sinks()];
        for (i, (a, x)) in self.arcs.iter().zip(flow).enumerate() {
            if x.is_negative() || *x > a.cap {
                return Err(Error::Precondition(format!("flow {x} on arc {i} outside [0, {}]", a.cap)));
            }
            out[a.source] += x;
            inn[a.sink] += x;
        }
        for (u, x) in out.iter().enumerate() {
            if !self.source_sets[u].contains(x) {
                return Err(Error::Precondition(format!("source {u} has excess {x}")));
            }
        }
        for (w, x) in inn.iter().enumerate() {
            if !self.sink_sets[w].contains(&-x.clone()) {
                return Err(Error::Precondition(format!("sink {w} has excess -{x}")));
            }
        }
        Ok(out.into_iter().sum())
    }

    pub fn check_int(&self, f: &IntTransshipment) -> Result<i64> {
        let flow: Vec<Rational> = f.flow.iter().map(|&x| Rational::integer(x)).collect();
        let v = self.check(&flow)?;
        if v != f.value {
            return Err(Error::Precondition(format!("reported value {} but flow carries {v}", f.value)));
        }
        Ok(f.value)
    }

    /// Multiplies capacities and every excess set by `q`.
    pub fn scale(&self, q: &Rational) -> Self {
        assert!(q.is_positive(), "scale factor must be positive");
        TransshipmentInstance {
            source_sets: self.source_sets.iter().map(|b| b.scale(q)).collect(),
            sink_sets: self.sink_sets.iter().map(|b| b.scale(q)).collect(),
            arcs: self.arcs.iter().map(|a| TArc { cap: &a.cap * q, ..a.clone() }).collect(),
        }
    }

    /// Restricts excess sets to integers and floors capacities.
    pub fn integralize(&self) -> Result<Self> {
        Ok(TransshipmentInstance {
            source_sets: self.source_sets.iter().map(ExcessSet::integralize).collect::<Result<_>>()?,
            sink_sets: self.sink_sets.iter().map(ExcessSet::integralize).collect::<Result<_>>()?,
            arcs: self.arcs.iter().map(|a| TArc { cap: Rational::from(a.cap.floor()), ..a.clone() }).collect(),
        })
    }

    fn int_caps(&self) -> Result<Vec<i64>> {
        self.arcs
            .iter()
            .map(|a| a.cap.to_i64().ok_or_else(|| Error::Precondition(format!("capacity {} is not a 64-bit integer", a.cap))))
            .collect()
    }

    /// Undirected graph on `U ∪ W` (sources first) with one edge per
    /// adjacent pair.
    pub fn underlying_graph(&self) -> Graph {
        let nu = self.num_sources();
        let pairs: BTreeSet<(usize, usize)> = self.arcs.iter().map(|a| (a.source, nu + a.sink)).collect();
        let pairs: Vec<_> = pairs.into_iter().collect();
        Graph::from_edges(self.num_vertices(), &pairs).expect("two-layer pairs are simple")
    }
}

/// A BDED instance as a transshipment: source `i` is edge `edges[i]` of the
/// graph, sink `v` is vertex `v`, and arcs `2i`, `2i + 1` go to the edge's
/// endpoints `u < v`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BdedNetwork {
    pub instance: TransshipmentInstance,
    pub edges: Vec<EdgeId>,
}

pub fn build_from_bded(g: &Graph, tau: &Rational) -> BdedNetwork {
    assert!(!tau.is_negative(), "τ must be non-negative");
    let mut arcs = Vec::with_capacity(2 * g.m());
    for (i, e) in g.edges().iter().enumerate() {
        arcs.push(TArc { source: i, sink: e.u, cap: Rational::one() });
        arcs.push(TArc { source: i, sink: e.v, cap: Rational::one() });
    }
    BdedNetwork {
        instance: TransshipmentInstance {
            source_sets: vec![ExcessSet::finite_ints(&[0, 1]); g.m()],
            sink_sets: vec![ExcessSet::interval(-tau.clone(), Rational::zero()); g.n()],
            arcs,
        },
        edges: g.edge_ids().collect(),
    }
}

impl BdedNetwork {
    /// Edges that carry no flow and the orientation of the others, for a
    /// flow on this network scaled by `scale`.
    pub fn decode(&self, g: &Graph, flow: &[i64], scale: i64) -> Result<(Vec<EdgeId>, FractionalOrientation)> {
        let mut deleted = Vec::new();
        let mut triples = Vec::with_capacity(self.edges.len());
        for (i, &e) in self.edges.iter().enumerate() {
            let (a, b) = (flow[2 * i], flow[2 * i + 1]);
            if a + b == 0 {
                deleted.push(e);
            }
            triples.push((e, a, b));
        }
        Ok((deleted, orientation_from_flow(g, triples, scale)?))
    }
}

/// Maximum transshipment when every set is an integer interval containing
/// zero: one max-flow with `s→u` capacity `hi_u` and `w→t` capacity `−lo_w`.
pub fn solve_interval(inst: &TransshipmentInstance) -> Result<IntTransshipment> {
    inst.validate()?;
    let caps = inst.int_caps()?;
    let (nu, nw) = (inst.num_sources(), inst.num_sinks());
    let range = |b: &ExcessSet, who: &str, i: usize| {
        b.integer_range()
            .filter(|&(lo, hi)| lo <= 0 && 0 <= hi)
            .ok_or_else(|| Error::Precondition(format!("{who} {i}: excess set is not an integer interval containing 0")))
    };
    let mut out_cap = vec![0i64; nu];
    let mut in_cap = vec![0i64; nw];
    for (a, &c) in inst.arcs.iter().zip(&caps) {
        out_cap[a.source] = out_cap[a.source].saturating_add(c);
        in_cap[a.sink] = in_cap[a.sink].saturating_add(c);
    }
    let (s, t) = (nu + nw, nu + nw + 1);
    let mut d = Digraph::new(nu + nw + 2);
    for (a, &c) in inst.arcs.iter().zip(&caps) {
        d.add_arc(a.source, nu + a.sink, c);
    }
    for (u, b) in inst.source_sets.iter().enumerate() {
        let (_, hi) = range(b, "source", u)?;
        d.add_arc(s, u, hi.min(out_cap[u]));
    }
    for (w, b) in inst.sink_sets.iter().enumerate() {
        let (lo, _) = range(b, "sink", w)?;
        d.add_arc(nu + w, t, (-lo).min(in_cap[w]));
    }
    let (f, _) = FlowNetwork::new(d, s, t).max_flow_certified()?;
    Ok(IntTransshipment { flow: f.flow[..inst.arcs.len()].to_vec(), value: f.value })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GadgetOutcome {
    pub flow: IntTransshipment,
    /// Size of the maximum matching in the unit/slot gadget.
    pub matching_size: usize,
}

/// Maximum transshipment when every source set is `{0, 2}` and every sink
/// set is `{−d, …, 0}`, by maximum matching.
///
/// Each source gets two unit nodes joined by a pair edge; each sink gets
/// one slot per unit of demand; every unit is adjacent to every slot of its
/// out-neighbours. A source sends 2 exactly when both units sit on slots, so
/// a matching of size `|U| + p` is a transshipment of value `2p`. Arcs must
/// have capacity at least 2, which never binds since a source sends at most 2.
pub fn solve_02_sources(inst: &TransshipmentInstance) -> Result<GadgetOutcome> {
    inst.validate()?;
    let caps = inst.int_caps()?;
    let two = ExcessSet::finite_ints(&[0, 2]);
    if let Some(u) = inst.source_sets.iter().position(|b| *b != two) {
        return Err(Error::Precondition(format!("source {u}: excess set is not {{0, 2}}")));
    }
    if let Some(i) = caps.iter().position(|&c| c < 2) {
        return Err(Error::Precondition(format!("arc {i} has capacity below 2")));
    }
    let (nu, nw) = (inst.num_sources(), inst.num_sinks());
    let mut indeg = vec![0usize; nw];
    for a in &inst.arcs {
        indeg[a.sink] += 1;
    }
    let mut slot_start = Vec::with_capacity(nw + 1);
    let mut next = 2 * nu;
    for (w, b) in inst.sink_sets.iter().enumerate() {
        let (lo, _) = b
            .integer_range()
            .filter(|&(_, hi)| hi == 0)
            .ok_or_else(|| Error::Precondition(format!("sink {w}: excess set is not {{-d, ..., 0}}")))?;
        slot_start.push(next);
        // More than two slots per incoming arc can never be filled.
        next += ((-lo) as usize).min(2 * indeg[w]);
    }
    slot_start.push(next);
    let mut adj = vec![Vec::new(); next];
    let mut slot_owner = vec![usize::MAX; next];
    for w in 0..nw {
        for slot in slot_start[w]..slot_start[w + 1] {
            slot_owner[slot] = w;
        }
    }
    for a in &inst.arcs {
        for unit in [2 * a.source, 2 * a.source + 1] {
            for slot in slot_start[a.sink]..slot_start[a.sink + 1] {
                adj[unit].push(slot);
                adj[slot].push(unit);
            }
        }
    }
    for u in 0..nu {
        adj[2 * u].push(2 * u + 1);
        adj[2 * u + 1].push(2 * u);
    }
    let mut mate = max_matching_adj(&adj);
    let mut flow = vec![0i64; inst.arcs.len()];
    let mut arcs_of = vec![Vec::new(); nu];
    for (i, a) in inst.arcs.iter().enumerate() {
        arcs_of[a.source].push(i);
    }
    for u in 0..nu {
        let (x, y) = (2 * u, 2 * u + 1);
        let on_slot = |m: Option<usize>| m.filter(|&s| s >= 2 * nu);
        match (on_slot(mate[x]), on_slot(mate[y])) {
            (Some(s1), Some(s2)) => {
                for s in [s1, s2] {
                    let w = slot_owner[s];
                    let i = *arcs_of[u].iter().find(|&&i| inst.arcs[i].sink == w).expect("slot of a neighbour");
                    flow[i] += 1;
                }
            }
            (Some(s), None) | (None, Some(s)) => {
                // Half state: release the slot and take the pair edge.
                mate[s] = None;
                mate[x] = Some(y);
                mate[y] = Some(x);
            }
            (None, None) => {
                if mate[x].is_none() {
                    mate[x] = Some(y);
                    mate[y] = Some(x);
                }
            }
        }
    }
    let matching_size = mate.iter().filter(|m| m.is_some()).count() / 2;
    let value: i64 = flow.iter().sum();
    if value != 2 * (matching_size as i64 - nu as i64) {
        return Err(Error::Internal(format!("gadget matching {matching_size} does not decode to value {value}")));
    }
    Ok(GadgetOutcome { flow: IntTransshipment { flow, value }, matching_size })
}

/// An integral maximum transshipment obtained from any feasible (possibly
/// fractional) one through a flow with lower and upper arc bounds. Every
/// set must be a subset of the integers or an interval with integer ends,
/// and capacities must be integers.
pub fn integral_maximum_from(inst: &TransshipmentInstance, f: &[Rational]) -> Result<IntTransshipment> {
    let value = inst.check(f)?;
    let caps = inst.int_caps()?;
    let (nu, nw) = (inst.num_sources(), inst.num_sinks());
    let (s, t) = (nu + nw, nu + nw + 1);
    let mut arcs: Vec<BoundedArc> = inst
        .arcs
        .iter()
        .zip(&caps)
        .map(|(a, &c)| BoundedArc { tail: a.source, head: nu + a.sink, lo: 0, hi: c })
        .collect();
    let mut out = vec![Rational::zero(); nu];
    let mut inn = vec![Rational::zero(); nw];
    for (a, x) in inst.arcs.iter().zip(f) {
        out[a.source] += x;
        inn[a.sink] += x;
    }
    let int = |x: &Rational| x.to_i64().ok_or_else(|| Error::Precondition(format!("excess {x} is not integral")));
    for (u, b) in inst.source_sets.iter().enumerate() {
        if !out[u].is_positive() {
            continue;
        }
        let (lo, hi) = match b {
            ExcessSet::Interval { lo, hi } => (int(lo)?, int(hi)?),
            _ => (int(&out[u])?, int(&out[u])?),
        };
        arcs.push(BoundedArc { tail: s, head: u, lo, hi });
    }
    for (w, b) in inst.sink_sets.iter().enumerate() {
        if !inn[w].is_positive() {
            continue;
        }
        let (lo, hi) = match b {
            ExcessSet::Interval { lo, hi } => (-int(hi)?, -int(lo)?),
            _ => (int(&inn[w])?, int(&inn[w])?),
        };
        arcs.push(BoundedArc { tail: nu + w, head: t, lo, hi });
    }
    let f2 = match max_flow_with_bounds(nu + nw + 2, &arcs, s, t)? {
        BoundedFlow::Feasible(f2) => f2,
        BoundedFlow::Infeasible { .. } => return Err(Error::Internal("bounded flow from a feasible transshipment is infeasible".into())),
    };
    let out = IntTransshipment { flow: f2.flow[..inst.arcs.len()].to_vec(), value: f2.value };
    inst.check_int(&out)?;
    if Rational::integer(out.value) < value {
        return Err(Error::Internal("integral flow lost value".into()));
    }
    Ok(out)
}

/// Subdivision vertex for copy `copy` of arc `arc`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Subdivision {
    pub arc: usize,
    pub copy: usize,
    pub vertex: usize,
    pub to_source: EdgeId,
    pub to_sink: EdgeId,
}

/// Degree-constrained subgraph instance: choose edges so that each vertex's
/// degree lies in its set. Vertices are the sources, then the sinks, then
/// the subdivision vertices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneralFactorInstance {
    pub graph: Graph,
    pub sets: Vec<Vec<i64>>,
    pub subdivisions: Vec<Subdivision>,
    pub num_sources: usize,
    pub num_sinks: usize,
}

/// Replaces each arc `(u, w)` of capacity `c` by `c` parallel `u`–`w` paths
/// of length two whose middle vertex has degree set `{0, 2}`; the other
/// vertices get `|B_v|`.
pub fn reduce_to_general_factor(inst: &TransshipmentInstance) -> Result<GeneralFactorInstance> {
    inst.validate()?;
    let caps = inst.int_caps()?;
    let (nu, nw) = (inst.num_sources(), inst.num_sinks());
    let mut sets = Vec::with_capacity(nu + nw);
    for (i, b) in inst.source_sets.iter().chain(&inst.sink_sets).enumerate() {
        let vals = b
            .integer_values()
            .ok_or_else(|| Error::Precondition(format!("vertex {i}: excess set is not a finite integer set")))?;
        let abs: BTreeSet<i64> = vals.into_iter().map(i64::abs).collect();
        sets.push(abs.into_iter().collect());
    }
    let mut pairs = Vec::new();
    let mut subdivisions = Vec::new();
    let mut next = nu + nw;
    for (i, (a, &c)) in inst.arcs.iter().zip(&caps).enumerate() {
        for copy in 0..c as usize {
            let h = next;
            next += 1;
            subdivisions.push(Subdivision {
                arc: i,
                copy,
                vertex: h,
                to_source: EdgeId(pairs.len()),
                to_sink: EdgeId(pairs.len() + 1),
            });
            pairs.push((a.source, h));
            pairs.push((h, nu + a.sink));
            sets.push(vec![0, 2]);
        }
    }
    let graph = Graph::from_edges(next, &pairs)?;
    Ok(GeneralFactorInstance { graph, sets, subdivisions, num_sources: nu, num_sinks: nw })
}

impl GeneralFactorInstance {
    pub fn is_factor(&self, factor: &BTreeSet<EdgeId>) -> bool {
        let mut deg = vec![0i64; self.graph.n()];
        for &id in factor {
            let Some(e) = self.graph.edge(id) else { return false };
            deg[e.u] += 1;
            deg[e.v] += 1;
        }
        deg.iter().zip(&self.sets).all(|(d, s)| s.binary_search(d).is_ok())
    }

    /// Largest gap over all degree sets (at least 1 because of `{0, 2}`).
    pub fn max_gap(&self) -> u64 {
        self.sets.iter().map(|s| max_gap(s)).max().unwrap_or(0)
    }

    /// The factor using the first `f(a)` copies of each arc `a`.
    pub fn lift_factor(&self, flow: &[i64]) -> Result<BTreeSet<EdgeId>> {
        let mut factor = BTreeSet::new();
        for s in &self.subdivisions {
            let x = *flow.get(s.arc).ok_or_else(|| Error::Precondition("flow shorter than arc list".into()))?;
            if (s.copy as i64) < x {
                factor.insert(s.to_source);
                factor.insert(s.to_sink);
            }
        }
        let used: i64 = flow.iter().sum();
        if factor.len() as i64 != 2 * used {
            return Err(Error::Precondition("flow exceeds an arc capacity".into()));
        }
        Ok(factor)
    }

    /// `f(a)` = number of copies of `a` whose both halves are in the factor.
    pub fn project_flow(&self, factor: &BTreeSet<EdgeId>, num_arcs: usize) -> Result<Vec<i64>> {
        if !self.is_factor(factor) {
            return Err(Error::Precondition("edge set is not a factor".into()));
        }
        let mut flow = vec![0i64; num_arcs];
        for s in &self.subdivisions {
            if factor.contains(&s.to_source) && factor.contains(&s.to_sink) {
                flow[s.arc] += 1;
            }
        }
        Ok(flow)
    }

    /// A decomposition of the factor graph from one of the network's
    /// underlying graph: each subdivision vertex gets a leaf bag
    /// `{u, w, h}` hanging off a bag that holds `u` and `w`.
    pub fn lift_decomposition(&self, inst: &TransshipmentInstance, td: &TreeDecomposition) -> Result<TreeDecomposition> {
        let nu = self.num_sources;
        let mut bags = td.bags.clone();
        let mut tree = td.tree.clone();
        for s in &self.subdivisions {
            let a = &inst.arcs[s.arc];
            let (u, w) = (a.source, nu + a.sink);
            let host = td
                .bags
                .iter()
                .position(|b| b.contains(&u) && b.contains(&w))
                .ok_or_else(|| Error::Decomposition(format!("no bag covers arc {}", s.arc)))?;
            let mut bag = vec![u, w, s.vertex];
            bag.sort_unstable();
            tree.push((host, bags.len()));
            bags.push(bag);
        }
        let out = TreeDecomposition { n: self.graph.n(), bags, tree };
        out.validate(&self.graph)?;
        Ok(out)
    }
}
