//! Dynamic programming over a nice tree decomposition for BDED with an
//! arbitrary rational `τ = a/b`.
//!
//! Scaling by `b`, each kept edge hands `b` units to its endpoints in
//! integer parts and each vertex may absorb at most `a`. A table entry maps
//! the absorbed amounts of the bag vertices to the most edges kept so far.

use indexmap::IndexMap;

use crate::error::{Error, Result};
use crate::graph::{EdgeId, Graph};
use crate::orientation::{FractionalOrientation, Split};
use crate::rational::Rational;
use crate::td::{nicify, NiceKind, TreeDecomposition};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Back {
    None,
    /// Counter the forgotten vertex had in the chosen child entry.
    Forgot(u32),
    /// `Some(x)`: edge kept with `x` units to its smaller endpoint.
    Edge(Option<u32>),
    /// Entry indices in the two child tables.
    Join(usize, usize),
}

type Table = IndexMap<Vec<u32>, (usize, Back)>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwdpStats {
    pub width: usize,
    pub nodes: usize,
    pub largest_table: usize,
    pub total_states: usize,
    /// `(max{a, b} + 1)^(width + 1)`, saturating.
    pub state_bound: u128,
}

impl TwdpStats {
    pub fn within_bound(&self) -> bool {
        self.largest_table as u128 <= self.state_bound
    }
}

#[derive(Debug, Clone)]
pub struct TwdpOutcome {
    pub kept: usize,
    pub deleted: Vec<EdgeId>,
    /// Orientation of the kept edges with every in-degree at most `τ`.
    pub orientation: FractionalOrientation,
    pub stats: TwdpStats,
}

/// Maximum number of edges of `g` that can stay with `ρ* ≤ tau`, using the
/// decomposition `td`. Fails with a resource error once any table would
/// exceed `max_states` entries.
pub fn solve_td(g: &Graph, tau: &Rational, td: &TreeDecomposition, max_states: usize) -> Result<TwdpOutcome> {
    if tau.is_negative() {
        return Err(Error::Precondition(format!("negative τ {tau}")));
    }
    let (a, b) = tau
        .to_i64_pair()
        .filter(|&(a, b)| a <= u32::MAX as i64 / 2 && b <= u32::MAX as i64 / 2)
        .ok_or_else(|| Error::Overflow(format!("τ = {tau} is too large for the table counters")))?;
    let (a, b) = (a as u32, b as u32);
    let nice = nicify(g, td)?;
    let order = nice.post_order();
    let mut tables: Vec<Table> = vec![Table::new(); nice.nodes.len()];
    let mut largest = 0;
    let mut total = 0;
    let (lo_split, hi_split) = (b.saturating_sub(a), a.min(b));
    for &x in &order {
        let node = &nice.nodes[x];
        let mut t = Table::new();
        match node.kind {
            NiceKind::Leaf => {
                t.insert(Vec::new(), (0, Back::None));
            }
            NiceKind::Introduce(v) => {
                let pos = node.bag.binary_search(&v).unwrap();
                for (key, &(val, _)) in &tables[node.children[0]] {
                    let mut k = key.clone();
                    k.insert(pos, 0);
                    t.insert(k, (val, Back::None));
                }
            }
            NiceKind::Forget(v) => {
                let child = &nice.nodes[node.children[0]];
                let pos = child.bag.binary_search(&v).unwrap();
                for (key, &(val, _)) in &tables[node.children[0]] {
                    let mut k = key.clone();
                    let c = k.remove(pos);
                    let better = t.get(&k).map_or(true, |&(old, _)| val > old);
                    if better {
                        t.insert(k, (val, Back::Forgot(c)));
                    }
                }
            }
            NiceKind::IntroduceEdge(_, u, v) => {
                let pu = node.bag.binary_search(&u).unwrap();
                let pv = node.bag.binary_search(&v).unwrap();
                for (key, &(val, _)) in &tables[node.children[0]] {
                    offer(&mut t, key.clone(), val, Back::Edge(None));
                    for xu in lo_split..=hi_split {
                        let xv = b - xu;
                        if key[pu] + xu <= a && key[pv] + xv <= a {
                            let mut k = key.clone();
                            k[pu] += xu;
                            k[pv] += xv;
                            offer(&mut t, k, val + 1, Back::Edge(Some(xu)));
                        }
                    }
                }
            }
            NiceKind::Join => {
                let (l, r) = (&tables[node.children[0]], &tables[node.children[1]]);
                for (i, (kl, &(vl, _))) in l.iter().enumerate() {
                    for (j, (kr, &(vr, _))) in r.iter().enumerate() {
                        let sum: Vec<u32> = kl.iter().zip(kr).map(|(p, q)| p + q).collect();
                        if sum.iter().all(|&c| c <= a) {
                            offer(&mut t, sum, vl + vr, Back::Join(i, j));
                        }
                    }
                }
            }
        }
        if t.len() > max_states {
            return Err(Error::Resource(format!(
                "tree-decomposition DP table reached {} states (limit {max_states}, width {})",
                t.len(),
                nice.width()
            )));
        }
        largest = largest.max(t.len());
        total += t.len();
        tables[x] = t;
    }
    let (kept, _) = tables[nice.root][&Vec::<u32>::new()];

    // Walk back from the root entry.
    let mut orientation = FractionalOrientation::new();
    let mut stack = vec![(nice.root, 0usize)];
    while let Some((x, idx)) = stack.pop() {
        let node = &nice.nodes[x];
        let (key, &(_, back)) = tables[x].get_index(idx).unwrap();
        match (node.kind, back) {
            (NiceKind::Leaf, _) => {}
            (NiceKind::Introduce(v), _) => {
                let pos = node.bag.binary_search(&v).unwrap();
                let mut k = key.clone();
                k.remove(pos);
                stack.push((node.children[0], tables[node.children[0]].get_index_of(&k).unwrap()));
            }
            (NiceKind::Forget(v), Back::Forgot(c)) => {
                let child = node.children[0];
                let pos = nice.nodes[child].bag.binary_search(&v).unwrap();
                let mut k = key.clone();
                k.insert(pos, c);
                stack.push((child, tables[child].get_index_of(&k).unwrap()));
            }
            (NiceKind::IntroduceEdge(e, u, v), Back::Edge(choice)) => {
                let mut k = key.clone();
                if let Some(xu) = choice {
                    let pu = node.bag.binary_search(&u).unwrap();
                    let pv = node.bag.binary_search(&v).unwrap();
                    k[pu] -= xu;
                    k[pv] -= b - xu;
                    let split = Split::new(Rational::new(xu as i64, b as i64), Rational::new((b - xu) as i64, b as i64));
                    orientation.set(e, split);
                }
                let child = node.children[0];
                stack.push((child, tables[child].get_index_of(&k).unwrap()));
            }
            (NiceKind::Join, Back::Join(i, j)) => {
                stack.push((node.children[0], i));
                stack.push((node.children[1], j));
            }
            (kind, back) => return Err(Error::Internal(format!("back-pointer {back:?} at {kind:?}"))),
        }
    }
    let deleted: Vec<EdgeId> = g.edge_ids().filter(|&e| orientation.get(e).is_none()).collect();
    if orientation.len() != kept {
        return Err(Error::Internal(format!("reconstructed {} edges, table says {kept}", orientation.len())));
    }
    let width = nice.width();
    let base = a.max(b) as u128 + 1;
    let state_bound = (0..=width).try_fold(1u128, |acc, _| acc.checked_mul(base)).unwrap_or(u128::MAX);
    let stats = TwdpStats { width, nodes: nice.nodes.len(), largest_table: largest, total_states: total, state_bound };
    Ok(TwdpOutcome { kept, deleted, orientation, stats })
}

fn offer(t: &mut Table, key: Vec<u32>, val: usize, back: Back) {
    match t.get(&key) {
        Some(&(old, _)) if old >= val => {}
        _ => {
            t.insert(key, (val, back));
        }
    }
}
