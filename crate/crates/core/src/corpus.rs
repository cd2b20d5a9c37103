//! Named graphs, seeded random graphs, and the atlas of small connected
//! graphs used by tests and benchmarks.

use std::collections::BTreeSet;

use itertools::Itertools;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::graph::Graph;

pub fn complete(n: usize) -> Graph {
    let pairs: Vec<_> = (0..n).tuple_combinations().collect();
    Graph::from_edges(n, &pairs).unwrap()
}

pub fn cycle(n: usize) -> Graph {
    assert!(n >= 3);
    let pairs: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
    Graph::from_edges(n, &pairs).unwrap()
}

pub fn path(n: usize) -> Graph {
    let pairs: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
    Graph::from_edges(n, &pairs).unwrap()
}

/// Star with `leaves` leaves; the center is vertex 0.
pub fn star(leaves: usize) -> Graph {
    let pairs: Vec<_> = (1..=leaves).map(|i| (0, i)).collect();
    Graph::from_edges(leaves + 1, &pairs).unwrap()
}

pub fn petersen() -> Graph {
    let mut pairs = Vec::new();
    for i in 0..5 {
        pairs.push((i, (i + 1) % 5));
        pairs.push((i, i + 5));
        pairs.push((5 + i, 5 + (i + 2) % 5));
    }
    Graph::from_edges(10, &pairs).unwrap()
}

/// The running four-vertex example: `e1={v1,v2}, e2={v2,v3}, e3={v3,v4},
/// e4={v1,v3}, e5={v2,v4}` (0-indexed here).
pub fn ex1() -> Graph {
    Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3), (0, 2), (1, 3)]).unwrap()
}

/// Uniform graph with exactly `min(m, n(n-1)/2)` edges.
pub fn random_graph(n: usize, m: usize, seed: u64) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let total = n * n.saturating_sub(1) / 2;
    let m = m.min(total);
    let mut pairs: Vec<(usize, usize)> = Vec::with_capacity(m);
    if m * 3 > total {
        let mut all: Vec<_> = (0..n).tuple_combinations().collect();
        all.shuffle(&mut rng);
        all.truncate(m);
        all.sort_unstable();
        pairs = all;
    } else {
        let mut seen = BTreeSet::new();
        while pairs.len() < m {
            let a = rng.gen_range(0..n);
            let b = rng.gen_range(0..n);
            if a == b {
                continue;
            }
            let key = (a.min(b), a.max(b));
            if seen.insert(key) {
                pairs.push(key);
            }
        }
    }
    Graph::from_edges(n, &pairs).unwrap()
}

/// Random graph with `n` drawn from `n_range` and `m` at most `max_m`.
pub fn random_small(rng: &mut impl Rng, n_range: std::ops::RangeInclusive<usize>, max_m: usize) -> Graph {
    let n = rng.gen_range(n_range);
    let total = n * n.saturating_sub(1) / 2;
    let m = rng.gen_range(0..=total.min(max_m));
    random_graph(n, m, rng.gen())
}

/// All connected graphs on `1..=max_n` vertices, one per isomorphism class,
/// ordered by vertex count and then by canonical code.
pub fn connected_atlas(max_n: usize) -> Vec<Graph> {
    assert!(max_n <= 7, "atlas enumeration is exponential");
    (1..=max_n).flat_map(connected_graphs_on).collect()
}

pub fn connected_graphs_on(n: usize) -> Vec<Graph> {
    let pairs: Vec<(usize, usize)> = (0..n).tuple_combinations().collect();
    let perms: Vec<Vec<usize>> = (0..n).permutations(n).collect();
    let mut pair_index = vec![vec![0usize; n]; n];
    for (i, &(a, b)) in pairs.iter().enumerate() {
        pair_index[a][b] = i;
        pair_index[b][a] = i;
    }
    let mut classes = BTreeSet::new();
    for mask in 0u64..(1u64 << pairs.len()) {
        let mut deg = vec![0usize; n];
        for (i, &(a, b)) in pairs.iter().enumerate() {
            if mask >> i & 1 == 1 {
                deg[a] += 1;
                deg[b] += 1;
            }
        }
        // Every class has a representative with non-increasing degrees.
        if deg.windows(2).any(|w| w[0] < w[1]) || !mask_connected(n, &pairs, mask) {
            continue;
        }
        let mut best = u64::MAX;
        for p in &perms {
            if (0..n).any(|v| deg[p[v]] != deg[v]) {
                continue;
            }
            let mut code = 0u64;
            for (i, &(a, b)) in pairs.iter().enumerate() {
                if mask >> i & 1 == 1 {
                    code |= 1 << pair_index[p[a]][p[b]];
                }
            }
            best = best.min(code);
        }
        classes.insert(best);
    }
    classes
        .into_iter()
        .map(|code| {
            let es: Vec<_> = pairs.iter().enumerate().filter(|(i, _)| code >> i & 1 == 1).map(|(_, &p)| p).collect();
            Graph::from_edges(n, &es).unwrap()
        })
        .collect()
}

fn mask_connected(n: usize, pairs: &[(usize, usize)], mask: u64) -> bool {
    if n == 0 {
        return true;
    }
    let mut reach = 1u64;
    loop {
        let mut next = reach;
        for (i, &(a, b)) in pairs.iter().enumerate() {
            if mask >> i & 1 == 1 && (reach >> a & 1 == 1 || reach >> b & 1 == 1) {
                next |= 1 << a | 1 << b;
            }
        }
        if next == reach {
            return reach.count_ones() as usize == n;
        }
        reach = next;
    }
}
