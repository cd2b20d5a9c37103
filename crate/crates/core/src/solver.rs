//! Top-level BDED solving: split into components, route each component to
//! the cheapest exact method for its `τ`, and certify the result.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{EdgeId, Graph};
use crate::matching::max_matching;
use crate::oracle::oracle_bded;
use crate::orientation::{max_indegree, FractionalOrientation, Split};
use crate::rational::Rational;
use crate::rflow::{build_from_bded, solve_02_sources, solve_interval};
use crate::td::{heuristic_td, TreeDecomposition};
use crate::twdp::solve_td;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    Trivial,
    DeleteAll,
    Matching,
    Flow,
    MatchingGadget,
    Twdp,
    Oracle,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::Trivial => "trivial",
            Method::DeleteAll => "delete-all",
            Method::Matching => "matching",
            Method::Flow => "flow",
            Method::MatchingGadget => "matching-gadget",
            Method::Twdp => "twdp",
            Method::Oracle => "oracle",
        })
    }
}

/// Which algorithm to use. `Auto` follows the complexity dichotomy; the
/// others force one path and fail if it does not apply to `τ`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Strategy {
    #[default]
    Auto,
    Flow,
    MatchingGadget,
    Twdp,
    Oracle,
}

impl FromStr for Strategy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "auto" => Strategy::Auto,
            "flow" => Strategy::Flow,
            "matching-gadget" | "gadget" => Strategy::MatchingGadget,
            "twdp" => Strategy::Twdp,
            "oracle" => Strategy::Oracle,
            _ => return Err(Error::Precondition(format!("unknown strategy {s:?}"))),
        })
    }
}

#[derive(Debug, Clone)]
pub struct Options {
    pub strategy: Strategy,
    /// Largest component (in edges) the brute-force fallback will take on.
    pub brute_limit: usize,
    /// Decomposition of the whole input graph for the DP path.
    pub td: Option<TreeDecomposition>,
    pub max_dp_states: usize,
}

impl Default for Options {
    fn default() -> Self {
        Options { strategy: Strategy::Auto, brute_limit: 16, td: None, max_dp_states: 1 << 22 }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolveStats {
    pub components: usize,
    /// `τ` actually used after rounding down to `ℓ/(ℓ+1)`, when it differs.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub snapped_tau: Option<Rational>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub dp_width: Option<usize>,
    pub dp_largest_table: usize,
    /// Every DP table stayed within `(max{a,b}+1)^(width+1)`.
    pub dp_within_bound: bool,
}

#[derive(Debug, Clone)]
pub struct Solution {
    pub tau: Rational,
    pub k: usize,
    /// Sorted ids of deleted edges (ids of the input graph).
    pub deleted: Vec<EdgeId>,
    /// Orientation of the remaining edges with in-degrees at most `τ`.
    pub witness: FractionalOrientation,
    pub methods: BTreeSet<Method>,
    pub stats: SolveStats,
}

impl Solution {
    /// Methods used, joined with `+` when components differ.
    pub fn method_tag(&self) -> String {
        if self.methods.is_empty() {
            return Method::Trivial.to_string();
        }
        self.methods.iter().map(Method::to_string).collect::<Vec<_>>().join("+")
    }

    /// Checks the witness: it orients exactly the remaining edges and no
    /// in-degree exceeds `τ`, which bounds `ρ*` of the remaining graph.
    pub fn certify(&self, g: &Graph) -> Result<()> {
        if self.deleted.len() != self.k {
            return Err(Error::Internal(format!("k = {} but {} edges deleted", self.k, self.deleted.len())));
        }
        let rest = g.remove_edges(&self.deleted)?;
        let d = max_indegree(&rest, &self.witness)?;
        if d > self.tau {
            return Err(Error::Internal(format!("witness in-degree {d} exceeds τ = {}", self.tau)));
        }
        Ok(())
    }

    /// External form: edge ids are 1-based line numbers of the edge list.
    pub fn to_json(&self) -> SolutionJson {
        SolutionJson {
            tau: self.tau.clone(),
            k: self.k,
            deleted_edges: self.deleted.iter().map(|e| e.0 + 1).collect(),
            witness: self.witness.iter().map(|(e, s)| (e.0 + 1, s.clone())).collect(),
            method: self.method_tag(),
            stats: self.stats.clone(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolutionJson {
    pub tau: Rational,
    pub k: usize,
    pub deleted_edges: Vec<usize>,
    pub witness: BTreeMap<usize, Split>,
    pub method: String,
    #[serde(default)]
    pub stats: SolveStats,
}

impl SolutionJson {
    /// Deleted edges as internal ids.
    pub fn deleted_ids(&self) -> Result<Vec<EdgeId>> {
        self.deleted_edges
            .iter()
            .map(|&i| i.checked_sub(1).map(EdgeId).ok_or(Error::UnknownEdge(EdgeId(0))))
            .collect()
    }
}

/// `ℓ/(ℓ+1)` for the largest `ℓ` with `ℓ/(ℓ+1) ≤ τ`, for `τ < 1`. Graphs of
/// density below one are forests, whose densities all have this form.
fn snap_below_one(tau: &Rational) -> Rational {
    let l = (tau / &(Rational::one() - tau)).floor();
    Rational::from(l.clone()) / Rational::from(l + 1)
}

struct Part {
    deleted: Vec<EdgeId>,
    witness: FractionalOrientation,
    method: Method,
}

/// Minimum number of edge deletions bringing `ρ*(g)` to at most `tau`.
///
/// Routing per component (`Strategy::Auto`): `τ = 0` and `τ < 1/2` delete
/// everything; `1/2 ≤ τ < 2/3` keeps a maximum matching; integral `τ` uses
/// one max-flow; half-integral `τ` uses the matching gadget; the rest goes
/// to the tree-decomposition DP (after rounding `τ < 1` down to `ℓ/(ℓ+1)`),
/// falling back to enumeration on small components if the DP outgrows its
/// state budget. `τ` depending on `n` (such as `1 − 1/n`) would slot in
/// here as another route.
pub fn solve(g: &Graph, tau: &Rational, options: &Options) -> Result<Solution> {
    if tau.is_negative() {
        return Err(Error::Precondition(format!("τ must be non-negative, got {tau}")));
    }
    let mut stats = SolveStats { dp_within_bound: true, ..SolveStats::default() };
    let mut deleted = Vec::new();
    let mut witness = FractionalOrientation::new();
    let mut methods = BTreeSet::new();
    for comp in g.components() {
        let sub = g.induced_subgraph(&comp)?;
        if sub.graph.m() == 0 {
            continue;
        }
        stats.components += 1;
        let td = options.td.as_ref().map(|td| td.restrict(&comp));
        let part = solve_component(&sub.graph, tau, options, td, &mut stats)?;
        deleted.extend(part.deleted);
        for (e, s) in part.witness.iter() {
            witness.set(e, s.clone());
        }
        methods.insert(part.method);
    }
    deleted.sort_unstable();
    let sol = Solution { tau: tau.clone(), k: deleted.len(), deleted, witness, methods, stats };
    sol.certify(g)?;
    Ok(sol)
}

fn solve_component(
    g: &Graph,
    tau: &Rational,
    options: &Options,
    td: Option<TreeDecomposition>,
    stats: &mut SolveStats,
) -> Result<Part> {
    let half = Rational::new(1, 2);
    let twice = tau.mul_int(2);
    match options.strategy {
        Strategy::Auto => {
            if tau.is_zero() {
                Ok(delete_all(g, Method::Trivial))
            } else if *tau < half {
                Ok(delete_all(g, Method::DeleteAll))
            } else if *tau < Rational::new(2, 3) {
                Ok(by_matching(g))
            } else if *tau < 1 {
                let snapped = snap_below_one(tau);
                if snapped != *tau {
                    log::info!("τ = {tau} rounded down to {snapped}");
                    stats.snapped_tau = Some(snapped.clone());
                }
                by_dp_or_oracle(g, &snapped, options, td, stats)
            } else if tau.is_integer() {
                by_flow(g, tau)
            } else if twice.is_integer() {
                by_gadget(g, tau)
            } else {
                by_dp_or_oracle(g, tau, options, td, stats)
            }
        }
        Strategy::Flow if tau.is_integer() => by_flow(g, tau),
        Strategy::Flow => Err(Error::Precondition(format!("flow path needs integral τ, got {tau}"))),
        Strategy::MatchingGadget if twice.is_integer() => by_gadget(g, tau),
        Strategy::MatchingGadget => Err(Error::Precondition(format!("matching gadget needs 2τ integral, got {tau}"))),
        Strategy::Twdp => by_dp(g, tau, options, td, stats),
        Strategy::Oracle => by_oracle(g, tau, options.brute_limit),
    }
}

fn delete_all(g: &Graph, method: Method) -> Part {
    Part { deleted: g.edge_ids().collect(), witness: FractionalOrientation::new(), method }
}

fn by_matching(g: &Graph) -> Part {
    let m = max_matching(g);
    let mut witness = FractionalOrientation::new();
    for &e in &m.edges {
        witness.set(e, Split::half());
    }
    let deleted = g.edge_ids().filter(|e| !m.edges.contains(e)).collect();
    Part { deleted, witness, method: Method::Matching }
}

fn by_flow(g: &Graph, tau: &Rational) -> Result<Part> {
    let net = build_from_bded(g, tau);
    let f = solve_interval(&net.instance.integralize()?)?;
    let (deleted, witness) = net.decode(g, &f.flow, 1)?;
    Ok(Part { deleted, witness, method: Method::Flow })
}

fn by_gadget(g: &Graph, tau: &Rational) -> Result<Part> {
    let net = build_from_bded(g, tau);
    let inst = net.instance.scale(&Rational::integer(2)).integralize()?;
    let out = solve_02_sources(&inst)?;
    let (deleted, witness) = net.decode(g, &out.flow.flow, 2)?;
    Ok(Part { deleted, witness, method: Method::MatchingGadget })
}

fn by_dp(g: &Graph, tau: &Rational, options: &Options, td: Option<TreeDecomposition>, stats: &mut SolveStats) -> Result<Part> {
    let td = td.unwrap_or_else(|| heuristic_td(g));
    let out = solve_td(g, tau, &td, options.max_dp_states)?;
    stats.dp_width = Some(stats.dp_width.unwrap_or(0).max(out.stats.width));
    stats.dp_largest_table = stats.dp_largest_table.max(out.stats.largest_table);
    stats.dp_within_bound &= out.stats.within_bound();
    Ok(Part { deleted: out.deleted, witness: out.orientation, method: Method::Twdp })
}

fn by_dp_or_oracle(
    g: &Graph,
    tau: &Rational,
    options: &Options,
    td: Option<TreeDecomposition>,
    stats: &mut SolveStats,
) -> Result<Part> {
    match by_dp(g, tau, options, td, stats) {
        Err(Error::Resource(msg)) if g.m() <= options.brute_limit => {
            log::warn!("{msg}; falling back to enumeration");
            by_oracle(g, tau, options.brute_limit)
        }
        Err(Error::Resource(msg)) => Err(Error::Resource(format!(
            "{msg}; component has {} edges, above the brute-force limit {}",
            g.m(),
            options.brute_limit
        ))),
        other => other,
    }
}

fn by_oracle(g: &Graph, tau: &Rational, limit: usize) -> Result<Part> {
    let s = oracle_bded(g, tau, limit)?;
    Ok(Part { deleted: s.deleted, witness: s.witness, method: Method::Oracle })
}

/// Is there a solution deleting at most `k` edges?
pub fn decide(g: &Graph, tau: &Rational, k: usize, options: &Options) -> Result<bool> {
    Ok(solve(g, tau, options)?.k <= k)
}
