//! Exact maximum subgraph density `ρ*(G)` through orientation feasibility
//! tests on a flow network, with a certified witness subgraph.

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::flow::FlowNetwork;
use crate::graph::{Digraph, EdgeId, Graph};
use crate::orientation::{orientation_from_flow, FractionalOrientation};
use crate::rational::Rational;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DensestResult {
    pub density: Rational,
    /// Vertices of a subgraph attaining `density`, sorted.
    pub witness: Vec<usize>,
}

#[derive(Debug, Clone)]
pub struct Feasibility {
    pub feasible: bool,
    /// Orientation with `Δ⁻ ≤ guess` when feasible.
    pub orientation: Option<FractionalOrientation>,
    /// When infeasible: vertex set of a subgraph denser than `guess`.
    pub dense_set: Vec<usize>,
}

/// Is there a fractional orientation of `g` with every in-degree at most
/// `guess = a/b`? Network: `s→e` and `e→endpoint` with capacity `b`, `v→t`
/// with capacity `a`; feasible iff the maximum flow is `b·m`.
pub fn orientation_feasible(g: &Graph, guess: &Rational) -> Result<Feasibility> {
    if guess.is_negative() {
        return Err(Error::Precondition(format!("negative density bound {guess}")));
    }
    let m = g.m();
    let (a, b) = guess
        .to_i64_pair()
        .ok_or_else(|| Error::Overflow(format!("density bound {guess} exceeds 64 bits")))?;
    let total = b
        .checked_mul(m as i64)
        .filter(|t| t.checked_add(a.saturating_mul(g.n() as i64)).is_some())
        .ok_or_else(|| Error::Overflow(format!("capacities for {guess} on {m} edges")))?;
    let (s, t) = (0, 1);
    let edge_node = |i: usize| 2 + i;
    let vertex_node = |v: usize| 2 + m + v;
    let mut d = Digraph::new(2 + m + g.n());
    let mut to_endpoints = Vec::with_capacity(m);
    for (i, e) in g.edges().iter().enumerate() {
        d.add_arc(s, edge_node(i), b);
        let au = d.add_arc(edge_node(i), vertex_node(e.u), b);
        let av = d.add_arc(edge_node(i), vertex_node(e.v), b);
        to_endpoints.push((au, av));
    }
    for v in 0..g.n() {
        d.add_arc(vertex_node(v), t, a);
    }
    let net = FlowNetwork::new(d, s, t);
    let (f, cut) = net.max_flow_certified()?;
    if f.value == total {
        let flows = g
            .edges()
            .iter()
            .zip(&to_endpoints)
            .map(|(e, &(au, av))| (e.id, f.flow[au], f.flow[av]));
        let phi = orientation_from_flow(g, flows, b)?;
        Ok(Feasibility { feasible: true, orientation: Some(phi), dense_set: Vec::new() })
    } else {
        let dense_set = (0..g.n()).filter(|&v| cut.source_side[vertex_node(v)]).collect();
        Ok(Feasibility { feasible: false, orientation: None, dense_set })
    }
}

fn induced_density(g: &Graph, vs: &[usize]) -> Rational {
    let mut inside = vec![false; g.n()];
    for &v in vs {
        inside[v] = true;
    }
    let m = g.edges().iter().filter(|e| inside[e.u] && inside[e.v]).count();
    if vs.is_empty() {
        Rational::zero()
    } else {
        Rational::new(m as i64, vs.len() as i64)
    }
}

/// The fraction with the smallest denominator in the closed interval
/// `[lo, hi]`, for `0 ≤ lo ≤ hi` (Stern–Brocot descent).
fn simplest_between(lo: &Rational, hi: &Rational) -> Rational {
    let fl = lo.floor();
    if Rational::from(fl.clone()) == *lo {
        return lo.clone();
    }
    if Rational::from(fl.clone() + 1) <= *hi {
        return Rational::from(fl + 1);
    }
    // Both lie in (fl, fl+1): recurse on reciprocals of the fractional parts.
    let base = Rational::from(fl);
    let inner = simplest_between(&(hi - &base).recip(), &(lo - &base).recip());
    base + inner.recip()
}

/// Exact `ρ*(g)` with a witness vertex set.
///
/// The search keeps `lo` infeasible and `hi` feasible, shrinking the
/// interval by at least a quarter per step, until it is narrower than
/// `1/(n(n−1))`; two different densities of subgraphs differ by at least that
/// much, so the interval contains exactly one candidate `m′/n′`.
pub fn densest_density(g: &Graph) -> Result<DensestResult> {
    let n = g.n();
    if g.m() == 0 {
        return Ok(DensestResult { density: Rational::zero(), witness: Vec::new() });
    }
    let spacing = Rational::new(1, (n * (n - 1)) as i64);
    let mut lo = Rational::zero();
    let mut hi = Rational::new(n as i64 - 1, 2);
    let mut below = orientation_feasible(g, &lo)?;
    while &hi - &lo >= spacing {
        let quarter = (&hi - &lo) / Rational::integer(4);
        let mid = lo.midpoint(&hi);
        // Small denominators keep the capacities small.
        let guess = simplest_between(&(&mid - &quarter), &(&mid + &quarter));
        let test = orientation_feasible(g, &guess)?;
        if test.feasible {
            hi = guess;
        } else {
            lo = guess;
            below = test;
        }
    }
    let density = grid_value_in(&lo, &hi, n)?;
    let mut witness = below.dense_set;
    if induced_density(g, &witness) != density {
        log::warn!("densest witness certificate failed, falling back to enumeration");
        witness = enumerate_witness(g, &density)?;
    }
    Ok(DensestResult { density, witness })
}

/// The unique `m′/n′` with `1 ≤ n′ ≤ n` in `(lo, hi]`.
fn grid_value_in(lo: &Rational, hi: &Rational, n: usize) -> Result<Rational> {
    let mut found: Option<Rational> = None;
    for den in 1..=n as i64 {
        let num: BigInt = (hi * &Rational::integer(den)).floor();
        let cand = Rational::from_bigints(num, den.into());
        if &cand > lo {
            match &found {
                Some(f) if *f != cand => {
                    return Err(Error::Internal(format!("two grid values {f} and {cand} in ({lo}, {hi}]")));
                }
                _ => found = Some(cand),
            }
        }
    }
    found.ok_or_else(|| Error::Internal(format!("no grid value in ({lo}, {hi}]")))
}

fn enumerate_witness(g: &Graph, density: &Rational) -> Result<Vec<usize>> {
    let n = g.n();
    if n > 20 {
        return Err(Error::Internal("densest witness certificate failed".into()));
    }
    for mask in 1u32..(1 << n) {
        let vs: Vec<usize> = (0..n).filter(|&v| mask >> v & 1 == 1).collect();
        if induced_density(g, &vs) == *density {
            return Ok(vs);
        }
    }
    Err(Error::Internal(format!("no subgraph of density {density}")))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Verdict {
    pub ok: bool,
    /// `ρ*(g − F)`.
    pub density: Rational,
    /// Vertices of a densest subgraph of `g − F`; violating when `!ok`.
    pub witness: Vec<usize>,
}

/// Does deleting `f` from `g` bring `ρ*` down to at most `tau`?
pub fn verify_solution<'a>(g: &Graph, f: impl IntoIterator<Item = &'a EdgeId>, tau: &Rational) -> Result<Verdict> {
    let rest = g.remove_edges(f)?;
    let r = densest_density(&rest)?;
    Ok(Verdict { ok: r.density <= *tau, density: r.density, witness: r.witness })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;
    use crate::oracle::oracle_densest;
    use crate::orientation::max_indegree;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn feasibility_examples() {
        let k4 = corpus::complete(4);
        assert!(orientation_feasible(&k4, &Rational::new(3, 2)).unwrap().feasible);
        assert!(!orientation_feasible(&k4, &Rational::one()).unwrap().feasible);
        let ex1 = corpus::ex1();
        let yes = orientation_feasible(&ex1, &Rational::new(5, 4)).unwrap();
        assert!(yes.feasible);
        assert!(max_indegree(&ex1, yes.orientation.as_ref().unwrap()).unwrap() <= Rational::new(5, 4));
        let no = orientation_feasible(&ex1, &Rational::new(6, 5)).unwrap();
        assert!(!no.feasible);
        assert!(induced_density(&ex1, &no.dense_set) > Rational::new(6, 5));
    }

    #[test]
    fn densest_examples() {
        let r = densest_density(&corpus::complete(4)).unwrap();
        assert_eq!(r.density, Rational::new(3, 2));
        assert_eq!(r.witness, vec![0, 1, 2, 3]);
        let r = densest_density(&corpus::ex1()).unwrap();
        assert_eq!(r.density, Rational::new(5, 4));
        assert_eq!(r.witness, vec![0, 1, 2, 3]);
        for n in 2..9 {
            assert_eq!(densest_density(&corpus::path(n)).unwrap().density, Rational::new(n as i64 - 1, n as i64));
        }
        assert_eq!(densest_density(&Graph::empty(3)).unwrap().density, 0);
    }

    #[test]
    fn simplest_fraction() {
        assert_eq!(simplest_between(&Rational::new(1, 3), &Rational::new(1, 2)), Rational::new(1, 2));
        assert_eq!(simplest_between(&Rational::new(3, 10), &Rational::new(2, 5)), Rational::new(1, 3));
        assert_eq!(simplest_between(&Rational::new(7, 5), &Rational::new(9, 5)), Rational::new(3, 2));
        assert_eq!(simplest_between(&Rational::new(1, 2), &Rational::new(1, 2)), Rational::new(1, 2));
    }

    #[test]
    fn verify_examples() {
        let ex1 = corpus::ex1();
        assert!(verify_solution(&ex1, &[EdgeId(3)], &Rational::one()).unwrap().ok);
        let v = verify_solution(&ex1, &[], &Rational::one()).unwrap();
        assert!(!v.ok);
        assert_eq!(v.density, Rational::new(5, 4));
        assert_eq!(v.witness, vec![0, 1, 2, 3]);
        let k5 = corpus::complete(5);
        let all: Vec<_> = k5.edge_ids().collect();
        assert!(verify_solution(&k5, &all, &Rational::zero()).unwrap().ok);
    }

    #[test]
    fn equals_enumeration_on_random_graphs() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..150 {
            let g = corpus::random_small(&mut rng, 1..=11, 40);
            let r = densest_density(&g).unwrap();
            assert_eq!(r.density, oracle_densest(&g).unwrap(), "{g:?}");
            assert_eq!(induced_density(&g, &r.witness), r.density);
            assert!(*r.density.denom() <= BigInt::from(g.n().max(1)));
        }
    }

    #[test]
    fn feasibility_is_monotone() {
        let g = corpus::random_graph(9, 20, 2);
        let mut last = false;
        for num in 0..=40 {
            let f = orientation_feasible(&g, &Rational::new(num, 8)).unwrap().feasible;
            assert!(f || !last);
            last = f;
        }
        assert!(last);
    }
}
