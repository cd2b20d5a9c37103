//! Exhaustive reference implementations. They share no code with the fast
//! solvers beyond the graph type and are meant for small inputs only.

use itertools::Itertools;

use crate::densest::orientation_feasible;
use crate::error::{Error, Result};
use crate::graph::{EdgeId, Graph};
use crate::rational::Rational;
use crate::rflow::TransshipmentInstance;
use crate::solver::{Method, Solution, SolveStats};

/// `ρ*(g)` by trying every vertex subset.
pub fn oracle_densest(g: &Graph) -> Result<Rational> {
    if g.n() > 15 {
        return Err(Error::SizeLimit(format!("densest oracle needs n <= 15, got {}", g.n())));
    }
    let inside = subset_edge_masks(g)?;
    let mut best = Rational::zero();
    for (mask, &edges) in inside.iter().enumerate().skip(1) {
        let d = Rational::new(edges.count_ones() as i64, (mask as u32).count_ones() as i64);
        if d > best {
            best = d;
        }
    }
    Ok(best)
}

/// For every vertex subset (as a bit mask) the mask of edges inside it.
fn subset_edge_masks(g: &Graph) -> Result<Vec<u64>> {
    if g.m() > 64 {
        return Err(Error::SizeLimit(format!("oracle needs m <= 64, got {}", g.m())));
    }
    let n = g.n();
    let mut inside = vec![0u64; 1 << n];
    for mask in 1usize..1 << n {
        let v = mask.trailing_zeros() as usize;
        let rest = mask & (mask - 1);
        let mut bits = inside[rest];
        for (pos, e) in g.edges().iter().enumerate() {
            let other = e.other(v);
            if (e.u == v || e.v == v) && rest >> other & 1 == 1 {
                bits |= 1 << pos;
            }
        }
        inside[mask] = bits;
    }
    Ok(inside)
}

/// Maximum matching size by dynamic programming over vertex subsets.
pub fn oracle_matching(g: &Graph) -> Result<usize> {
    let n = g.n();
    if n > 10 {
        return Err(Error::SizeLimit(format!("matching oracle needs n <= 10, got {n}")));
    }
    // best[mask]: maximum matching using only vertices in mask.
    let mut best = vec![0usize; 1 << n];
    for mask in 1usize..1 << n {
        let v = mask.trailing_zeros() as usize;
        let rest = mask & !(1 << v);
        let mut b = best[rest];
        for &(w, _) in g.neighbors(v) {
            if rest >> w & 1 == 1 {
                b = b.max(1 + best[rest & !(1 << w)]);
            }
        }
        best[mask] = b;
    }
    Ok(best[(1 << n) - 1])
}

/// A smallest edge set whose removal leaves `ρ* ≤ tau`, trying sets by
/// increasing size and lexicographically within a size.
fn min_deletion(g: &Graph, tau: &Rational, limit: usize) -> Result<Vec<EdgeId>> {
    let m = g.m();
    if m > limit {
        return Err(Error::SizeLimit(format!("brute-force oracle limited to {limit} edges, got {m}")));
    }
    let ids: Vec<EdgeId> = g.edge_ids().collect();
    let fits: Box<dyn Fn(&[usize]) -> Result<bool>> = if g.n() <= 15 && m <= 64 {
        let inside = subset_edge_masks(g)?;
        let tau = tau.clone();
        Box::new(move |del: &[usize]| {
            let keep = !del.iter().fold(0u64, |acc, &p| acc | 1 << p);
            Ok(inside.iter().enumerate().skip(1).all(|(mask, &edges)| {
                let k = (edges & keep).count_ones() as i64;
                Rational::integer(k) <= tau.mul_int((mask as u32).count_ones() as i64)
            }))
        })
    } else {
        Box::new(|del: &[usize]| {
            let f: Vec<EdgeId> = del.iter().map(|&p| ids[p]).collect();
            Ok(orientation_feasible(&g.remove_edges(&f)?, tau)?.feasible)
        })
    };
    for size in 0..=m {
        for del in (0..m).combinations(size) {
            if fits(&del)? {
                return Ok(del.into_iter().map(|p| g.edges()[p].id).collect());
            }
        }
    }
    Err(Error::Internal("deleting every edge must satisfy any τ ≥ 0".into()))
}

pub fn oracle_bded_k(g: &Graph, tau: &Rational, limit: usize) -> Result<usize> {
    if tau.is_negative() {
        return Err(Error::Precondition(format!("negative τ {tau}")));
    }
    Ok(min_deletion(g, tau, limit)?.len())
}

/// Exact BDED optimum by enumeration, with a witness orientation taken from
/// the feasibility flow on the remaining graph.
pub fn oracle_bded(g: &Graph, tau: &Rational, limit: usize) -> Result<Solution> {
    if tau.is_negative() {
        return Err(Error::Precondition(format!("negative τ {tau}")));
    }
    let deleted = min_deletion(g, tau, limit)?;
    let rest = g.remove_edges(&deleted)?;
    let witness = orientation_feasible(&rest, tau)?
        .orientation
        .ok_or_else(|| Error::Internal("oracle solution has no orientation".into()))?;
    Ok(Solution {
        tau: tau.clone(),
        k: deleted.len(),
        deleted,
        witness,
        methods: [Method::Oracle].into(),
        stats: SolveStats::default(),
    })
}

/// Maximum value of an integral transshipment by trying every integral arc
/// flow, or `None` when no flow meets the excess sets. Capacities must be
/// integers; interval sets must have integer endpoints.
pub fn oracle_transshipment(inst: &TransshipmentInstance) -> Result<Option<Rational>> {
    inst.validate()?;
    let caps: Vec<i64> = inst
        .arcs
        .iter()
        .map(|a| a.cap.to_i64().ok_or_else(|| Error::Precondition(format!("capacity {} is not integral", a.cap))))
        .collect::<Result<_>>()?;
    for b in inst.source_sets.iter().chain(&inst.sink_sets) {
        b.integralize()?;
    }
    let space = caps.iter().try_fold(1u64, |acc, &c| acc.checked_mul(c as u64 + 1)).unwrap_or(u64::MAX);
    if space > 5_000_000 {
        return Err(Error::SizeLimit(format!("{space} flow assignments")));
    }
    let mut flow = vec![0i64; caps.len()];
    let mut best: Option<i64> = None;
    loop {
        let mut out = vec![0i64; inst.num_sources()];
        let mut inn = vec![0i64; inst.num_sinks()];
        for (a, &x) in inst.arcs.iter().zip(&flow) {
            out[a.source] += x;
            inn[a.sink] += x;
        }
        let ok = out.iter().zip(&inst.source_sets).all(|(&x, b)| b.contains(&Rational::integer(x)))
            && inn.iter().zip(&inst.sink_sets).all(|(&x, b)| b.contains(&Rational::integer(-x)));
        if ok {
            let v = out.iter().sum();
            best = Some(best.map_or(v, |b: i64| b.max(v)));
        }
        let mut i = 0;
        while i < flow.len() && flow[i] == caps[i] {
            flow[i] = 0;
            i += 1;
        }
        if i == flow.len() {
            break;
        }
        flow[i] += 1;
    }
    Ok(best.map(Rational::integer))
}
