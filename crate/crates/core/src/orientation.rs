//! Fractional orientations: every edge splits one unit between its two
//! endpoints. The maximum in-degree bounds the maximum subgraph density.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{EdgeId, Graph};
use crate::rational::Rational;

/// The share of an edge `{u, v}` (with `u < v`) given to each endpoint.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct Split {
    pub to_u: Rational,
    pub to_v: Rational,
}

impl Split {
    pub fn new(to_u: Rational, to_v: Rational) -> Self {
        Split { to_u, to_v }
    }

    pub fn half() -> Self {
        Split::new(Rational::new(1, 2), Rational::new(1, 2))
    }

    /// Everything to `u` (`to_u = 1`).
    pub fn to_u_fully() -> Self {
        Split::new(Rational::one(), Rational::zero())
    }

    pub fn to_v_fully() -> Self {
        Split::new(Rational::zero(), Rational::one())
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct FractionalOrientation {
    splits: BTreeMap<EdgeId, Split>,
}

impl FractionalOrientation {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn set(&mut self, e: EdgeId, split: Split) {
        self.splits.insert(e, split);
    }

    pub fn get(&self, e: EdgeId) -> Option<&Split> {
        self.splits.get(&e)
    }

    pub fn len(&self) -> usize {
        self.splits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.splits.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (EdgeId, &Split)> {
        self.splits.iter().map(|(&e, s)| (e, s))
    }

    /// Share of `e` assigned to its endpoint `x`.
    pub fn share(&self, g: &Graph, e: EdgeId, x: usize) -> Option<&Rational> {
        let edge = g.edge(e)?;
        let s = self.splits.get(&e)?;
        if x == edge.u {
            Some(&s.to_u)
        } else if x == edge.v {
            Some(&s.to_v)
        } else {
            None
        }
    }

    /// Checks that `self` is defined on exactly `E(g)` with non-negative
    /// shares summing to one.
    pub fn validate(&self, g: &Graph) -> Result<()> {
        if self.splits.len() != g.m() {
            return Err(Error::Orientation(format!("{} splits for {} edges", self.splits.len(), g.m())));
        }
        for e in g.edges() {
            let s = self
                .splits
                .get(&e.id)
                .ok_or_else(|| Error::Orientation(format!("edge {} is not oriented", e.id)))?;
            if s.to_u.is_negative() || s.to_v.is_negative() {
                return Err(Error::Orientation(format!("negative share on {}", e.id)));
            }
            if &s.to_u + &s.to_v != Rational::one() {
                return Err(Error::Orientation(format!("shares on {} sum to {}", e.id, &s.to_u + &s.to_v)));
            }
        }
        Ok(())
    }

    /// `deg⁻(v)` for every vertex.
    pub fn indegrees(&self, g: &Graph) -> Result<Vec<Rational>> {
        self.validate(g)?;
        let mut deg = vec![Rational::zero(); g.n()];
        for e in g.edges() {
            let s = &self.splits[&e.id];
            deg[e.u] += &s.to_u;
            deg[e.v] += &s.to_v;
        }
        Ok(deg)
    }
}

/// `Δ⁻` of `phi` on `g`; zero for graphs without vertices.
pub fn max_indegree(g: &Graph, phi: &FractionalOrientation) -> Result<Rational> {
    Ok(phi.indegrees(g)?.into_iter().max().unwrap_or_else(Rational::zero))
}

/// Builds an orientation from integral per-edge flows `(to_u, to_v)` on a
/// network scaled by `scale`. Edges carrying a full `scale` units are kept and
/// oriented `to_x / scale`; edges carrying nothing are dropped.
pub fn orientation_from_flow(
    g: &Graph,
    flows: impl IntoIterator<Item = (EdgeId, i64, i64)>,
    scale: i64,
) -> Result<FractionalOrientation> {
    assert!(scale > 0);
    let mut phi = FractionalOrientation::new();
    for (e, a, b) in flows {
        if g.edge(e).is_none() {
            return Err(Error::UnknownEdge(e));
        }
        if a < 0 || b < 0 {
            return Err(Error::Orientation(format!("negative flow on {e}")));
        }
        match a + b {
            0 => {}
            s if s == scale => phi.set(e, Split::new(Rational::new(a, scale), Rational::new(b, scale))),
            s => return Err(Error::Orientation(format!("edge {e} carries {s} of {scale} units"))),
        }
    }
    Ok(phi)
}

#[derive(Debug, Clone)]
pub struct CycleShift {
    pub orientation: FractionalOrientation,
    /// Cycle edge now assigned entirely to `anchor`.
    pub edge: EdgeId,
    pub anchor: usize,
    /// Elementary steps performed, for the linear-time check.
    pub ops: usize,
}

/// Moves mass around `cycle` (a closed vertex sequence, first vertex not
/// repeated) until one of its edges belongs fully to one endpoint. Every
/// in-degree is unchanged.
pub fn shift_cycle(g: &Graph, cycle: &[usize], phi: &FractionalOrientation) -> Result<CycleShift> {
    let k = cycle.len();
    if k < 3 {
        return Err(Error::NotACycle(format!("length {k}")));
    }
    let mut seen = vec![false; g.n()];
    let mut ops = 0;
    let mut edges = Vec::with_capacity(k);
    for i in 0..k {
        let (a, b) = (cycle[i], cycle[(i + 1) % k]);
        if a >= g.n() || seen[a] {
            return Err(Error::NotACycle(format!("vertex {a} repeated or unknown")));
        }
        seen[a] = true;
        let e = g
            .edge_between(a, b)
            .ok_or_else(|| Error::NotACycle(format!("no edge between {a} and {b}")))?;
        ops += 1;
        edges.push(e.id);
    }
    // eps[i] is the share of edge i held by its tail cycle[i].
    let mut eps = Vec::with_capacity(k);
    for (i, &e) in edges.iter().enumerate() {
        let tail = phi
            .share(g, e, cycle[i])
            .ok_or_else(|| Error::Orientation(format!("edge {e} is not oriented")))?
            .clone();
        ops += 1;
        if tail == 1 {
            return Ok(CycleShift { orientation: phi.clone(), edge: e, anchor: cycle[i], ops });
        }
        if tail.is_zero() {
            return Ok(CycleShift { orientation: phi.clone(), edge: e, anchor: cycle[(i + 1) % k], ops });
        }
        eps.push(tail);
    }
    let (imin, eps_min) = eps.iter().enumerate().min_by(|a, b| a.1.cmp(b.1)).unwrap();
    let eps_min = eps_min.clone();
    let mut out = phi.clone();
    for (i, &e) in edges.iter().enumerate() {
        let edge = g.edge(e).unwrap();
        let s = out.splits.get_mut(&e).unwrap();
        if edge.u == cycle[i] {
            s.to_u -= &eps_min;
            s.to_v += &eps_min;
        } else {
            s.to_v -= &eps_min;
            s.to_u += &eps_min;
        }
        ops += 1;
    }
    Ok(CycleShift { orientation: out, edge: edges[imin], anchor: cycle[(imin + 1) % k], ops })
}

/// Some cycle of `g` as a vertex sequence, found from a DFS back edge.
pub fn find_cycle(g: &Graph) -> Option<Vec<usize>> {
    let n = g.n();
    let mut parent = vec![usize::MAX; n];
    let mut depth = vec![usize::MAX; n];
    for root in 0..n {
        if depth[root] != usize::MAX {
            continue;
        }
        depth[root] = 0;
        // (vertex, edge position used to enter it, next neighbour index)
        let mut stack = vec![(root, usize::MAX, 0usize)];
        while let Some(top) = stack.last_mut() {
            let (v, via, i) = *top;
            if i == g.neighbors(v).len() {
                stack.pop();
                continue;
            }
            top.2 += 1;
            let (w, pos) = g.neighbors(v)[i];
            if pos == via {
                continue;
            }
            if depth[w] == usize::MAX {
                depth[w] = depth[v] + 1;
                parent[w] = v;
                stack.push((w, pos, 0));
            } else if depth[w] < depth[v] {
                let mut cycle = vec![v];
                let mut x = v;
                while x != w {
                    x = parent[x];
                    cycle.push(x);
                }
                cycle.reverse();
                return Some(cycle);
            }
        }
    }
    None
}
