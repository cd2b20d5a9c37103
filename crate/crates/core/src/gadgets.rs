//! Generators for the hardness constructions: the XℓC reduction for
//! `τ = ℓ/(ℓ+1)`, the edge gadget with its two orientations, balanced graphs
//! of a prescribed density, and the vertex-cover reduction for `τ > 1`.
//!
//! Every generator checks its own output exactly before returning it.

use num_integer::Integer;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::densest::{densest_density, orientation_feasible};
use crate::error::{Error, Result};
use crate::graph::{EdgeId, Graph};
use crate::orientation::{find_cycle, shift_cycle, FractionalOrientation, Split};
use crate::rational::Rational;

/// An instance of exact cover by `ℓ`-sets over the universe `0..universe`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct XlcInstance {
    pub ell: usize,
    pub universe: usize,
    pub sets: Vec<Vec<usize>>,
}

impl XlcInstance {
    pub fn q(&self) -> usize {
        self.universe / self.ell.max(1)
    }

    /// Three 3-sets over six elements; `{0,1,2}, {3,4,5}` is an exact cover.
    pub fn demo() -> Self {
        XlcInstance { ell: 3, universe: 6, sets: vec![vec![0, 1, 2], vec![3, 4, 5], vec![0, 3, 4]] }
    }

    /// `t` random `ℓ`-sets; with `plant` the first `q` of them partition
    /// the universe.
    pub fn random(rng: &mut impl Rng, ell: usize, q: usize, t: usize, plant: bool) -> Self {
        let universe = ell * q;
        let mut sets = Vec::with_capacity(t);
        if plant {
            let mut elems: Vec<usize> = (0..universe).collect();
            elems.shuffle(rng);
            sets.extend(elems.chunks(ell).take(t).map(|c| {
                let mut s = c.to_vec();
                s.sort_unstable();
                s
            }));
        }
        while sets.len() < t {
            let mut s = rand::seq::index::sample(rng, universe, ell).into_vec();
            s.sort_unstable();
            sets.push(s);
        }
        sets.shuffle(rng);
        XlcInstance { ell, universe, sets }
    }

    fn validate(&self) -> Result<()> {
        if self.ell == 0 || self.universe % self.ell != 0 {
            return Err(Error::Generator(format!("universe size {} is not a multiple of ℓ = {}", self.universe, self.ell)));
        }
        for (j, s) in self.sets.iter().enumerate() {
            let mut sorted = s.clone();
            sorted.sort_unstable();
            sorted.dedup();
            if sorted.len() != self.ell || s.len() != self.ell {
                return Err(Error::Generator(format!("set {} does not have {} distinct elements", j + 1, self.ell)));
            }
            if let Some(x) = s.iter().find(|&&x| x >= self.universe) {
                return Err(Error::Generator(format!("set {} has element {} outside the universe", j + 1, x + 1)));
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone)]
pub struct XlcReduction {
    pub graph: Graph,
    pub k: usize,
    pub tau: Rational,
    /// Element vertices, then set vertices.
    pub y: Vec<usize>,
    pub c: Vec<usize>,
    /// Star centers with their leaves.
    pub stars: Vec<(usize, Vec<usize>)>,
}

#[derive(Debug, Clone)]
pub enum XlcOutcome {
    Reduced(XlcReduction),
    /// Fewer sets than needed to cover the universe.
    TriviallyNo { t: usize, q: usize },
}

/// BDED instance at `τ = ℓ/(ℓ+1)` that has a solution with `k` deletions
/// exactly when `inst` has an exact cover.
pub fn gen_xlc(inst: &XlcInstance) -> Result<XlcOutcome> {
    inst.validate()?;
    let (ell, q, t) = (inst.ell, inst.q(), inst.sets.len());
    if t < q {
        return Ok(XlcOutcome::TriviallyNo { t, q });
    }
    let y: Vec<usize> = (0..inst.universe).collect();
    let c: Vec<usize> = (inst.universe..inst.universe + t).collect();
    let mut next = inst.universe + t;
    let mut stars = Vec::new();
    for _ in 0..t - q {
        let center = next;
        let leaves: Vec<usize> = (next + 1..next + ell).collect();
        next += ell;
        stars.push((center, leaves));
    }
    let mut pairs = Vec::new();
    for (j, s) in inst.sets.iter().enumerate() {
        let mut s = s.clone();
        s.sort_unstable();
        pairs.extend(s.iter().map(|&x| (y[x], c[j])));
    }
    for (center, leaves) in &stars {
        pairs.extend(leaves.iter().map(|&z| (*center, z)));
    }
    for &cj in &c {
        pairs.extend(stars.iter().map(|(center, _)| (cj, *center)));
    }
    let graph = Graph::from_edges(next, &pairs)?;
    let k = graph.m() - ell * t;
    let tau = Rational::new(ell as i64, ell as i64 + 1);
    Ok(XlcOutcome::Reduced(XlcReduction { graph, k, tau, y, c, stars }))
}

impl XlcReduction {
    pub fn sidecar(&self, inst: &XlcInstance) -> Value {
        json!({
            "kind": "xlc",
            "tau": self.tau,
            "k": self.k,
            "params": { "ell": inst.ell, "q": inst.q(), "t": inst.sets.len(), "sets": one_based_sets(&inst.sets) },
            "registry": {
                "elements": one_based(&self.y),
                "sets": one_based(&self.c),
                "stars": self.stars.iter().map(|(c, l)| json!({ "center": c + 1, "leaves": one_based(l) })).collect::<Vec<_>>(),
            },
        })
    }
}

fn one_based(vs: &[usize]) -> Vec<usize> {
    vs.iter().map(|v| v + 1).collect()
}

fn one_based_sets(sets: &[Vec<usize>]) -> Vec<Vec<usize>> {
    sets.iter().map(|s| one_based(s)).collect()
}

/// Reduced `p/q` with `q > 0`.
fn reduced(p: i64, q: i64) -> Result<(i64, i64)> {
    if q <= 0 || p < 0 {
        return Err(Error::Precondition(format!("density {p}/{q} must be non-negative with a positive denominator")));
    }
    let g = p.gcd(&q).max(1);
    Ok((p / g, q / g))
}

/// First graph with `m/n = p/q`, `n ≤ n_max` whose densest subgraph is the
/// graph itself. Candidates are circulants (consecutive offsets, the last
/// offset class spread out) and then seeded near-regular random graphs.
pub fn gen_balanced(p: i64, q: i64, n_max: usize) -> Result<Graph> {
    let (p, q) = reduced(p, q)?;
    if p < q {
        return Err(Error::Precondition(format!("balanced graphs are generated for density at least 1, got {p}/{q}")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64((p as u64) << 32 | q as u64);
    let mut n = q as usize;
    while n <= n_max {
        let m = n / q as usize * p as usize;
        if m <= n * (n - 1) / 2 {
            let target = Rational::new(m as i64, n as i64);
            let circ = circulant(n, m)?;
            if is_balanced(&circ, &target)? {
                return Ok(circ);
            }
            for _ in 0..64 {
                let g = near_regular(n, m, &mut rng)?;
                if is_balanced(&g, &target)? {
                    return Ok(g);
                }
            }
        }
        n += q as usize;
    }
    Err(Error::Generator(format!("no balanced graph of density {p}/{q} found with at most {n_max} vertices")))
}

fn is_balanced(g: &Graph, rho: &Rational) -> Result<bool> {
    Ok(densest_density(g)?.density == *rho)
}

fn circulant(n: usize, m: usize) -> Result<Graph> {
    let step = (1..n).rev().filter(|s| s.gcd(&n) == 1).min_by_key(|&s| (s as f64 - n as f64 * 0.618).abs() as i64).unwrap_or(1);
    let mut pairs = Vec::with_capacity(m);
    let mut seen = std::collections::HashSet::new();
    'outer: for d in 1..=n / 2 {
        for k in 0..n {
            if pairs.len() == m {
                break 'outer;
            }
            let i = k * step % n;
            let j = (i + d) % n;
            if seen.insert((i.min(j), i.max(j))) {
                pairs.push((i, j));
            }
        }
    }
    Graph::from_edges(n, &pairs)
}

fn near_regular(n: usize, m: usize, rng: &mut ChaCha8Rng) -> Result<Graph> {
    let mut adj = vec![vec![false; n]; n];
    let mut deg = vec![0usize; n];
    let mut pairs = Vec::with_capacity(m);
    while pairs.len() < m {
        let mut cand: Vec<(usize, usize)> =
            (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).filter(|&(i, j)| !adj[i][j]).collect();
        let low = cand.iter().map(|&(i, j)| deg[i] + deg[j]).min().unwrap();
        cand.retain(|&(i, j)| deg[i] + deg[j] == low);
        let &(i, j) = cand.choose(rng).unwrap();
        adj[i][j] = true;
        deg[i] += 1;
        deg[j] += 1;
        pairs.push((i, j));
    }
    Graph::from_edges(n, &pairs)
}

/// Orientation of a balanced graph giving every vertex in-degree exactly
/// its density.
pub fn exact_orientation(g: &Graph) -> Result<FractionalOrientation> {
    let rho = g.density();
    let phi = orientation_feasible(g, &rho)?
        .orientation
        .ok_or_else(|| Error::Generator(format!("graph is denser than {rho} somewhere")))?;
    if phi.indegrees(g)?.iter().any(|d| *d != rho) {
        return Err(Error::Generator("orientation is not exact".into()));
    }
    Ok(phi)
}

/// Smallest admissible vertex count for a simple graph of density `p/q`,
/// plus a little slack for the search.
fn balanced_n_max(p: i64, q: i64) -> usize {
    let mut n = q as usize;
    while (n as i64 - 1) * q < 2 * p {
        n += q as usize;
    }
    n + 4 * q as usize
}

#[derive(Debug, Clone)]
pub struct EdgeGadget {
    pub p: i64,
    pub q: i64,
    pub c: i64,
    pub r: i64,
    pub p_prime: i64,
    /// Vertex and edge counts of the path part `W′`.
    pub n: usize,
    pub m: usize,
    pub graph: Graph,
    pub u: usize,
    pub w: usize,
    pub phi1: FractionalOrientation,
    pub phi2: FractionalOrientation,
}

impl EdgeGadget {
    pub fn tau(&self) -> Rational {
        Rational::new(self.p, self.q)
    }

    /// Checks properties (i)-(iii) of both orientations exactly.
    pub fn verify(&self) -> Result<()> {
        let tau = self.tau();
        let inv_q = Rational::new(1, self.q);
        let low = &tau - &Rational::one();
        let high = &low + &inv_q;
        for (name, phi, du, dw) in [("φ1", &self.phi1, &high, &low), ("φ2", &self.phi2, &low, &high)] {
            phi.validate(&self.graph)?;
            if phi.len() != self.graph.m() {
                return Err(Error::Generator(format!("{name} leaves edges unoriented")));
            }
            let d = phi.indegrees(&self.graph)?;
            for (v, dv) in d.iter().enumerate() {
                let want = if v == self.u {
                    du
                } else if v == self.w {
                    dw
                } else {
                    &tau
                };
                if dv != want {
                    return Err(Error::Generator(format!("{name} gives vertex {} in-degree {dv}, expected {want}", v + 1)));
                }
            }
        }
        Ok(())
    }

    pub fn sidecar(&self) -> Value {
        json!({
            "kind": "edge-gadget",
            "tau": self.tau(),
            "params": { "p": self.p, "q": self.q, "c": self.c, "r": self.r, "p_prime": self.p_prime, "n": self.n, "m": self.m },
            "registry": { "u": self.u + 1, "w": self.w + 1, "phi1": one_based_orientation(&self.phi1), "phi2": one_based_orientation(&self.phi2) },
        })
    }
}

fn one_based_orientation(phi: &FractionalOrientation) -> Value {
    phi.iter().map(|(e, s)| ((e.0 + 1).to_string(), json!(s))).collect::<serde_json::Map<_, _>>().into()
}

/// `n′` from the extended-Euclid procedure: the first `n′ ≡ −p′⁻¹ (mod q)`,
/// stepping by `q`, with `n′ + 1 ≤ m′ = (p′n′ + 1 − 2q)/q`.
fn gadget_size(p_prime: i64, q: i64) -> (i64, i64) {
    let t = p_prime.extended_gcd(&q).x.rem_euclid(q);
    let mut n = ((q - 1) * t).rem_euclid(q);
    let m = |n: i64| (p_prime * n + 1 - 2 * q) / q;
    while n + 1 > m(n) {
        n += q;
    }
    (n, m(n))
}

/// The edge gadget `W` for `τ = p/q > 1` with special vertices `u`, `w`.
pub fn gen_edge_gadget(p: i64, q: i64) -> Result<EdgeGadget> {
    if q <= 0 || p <= q {
        return Err(Error::Precondition(format!("edge gadget needs p/q > 1, got {p}/{q}")));
    }
    if p.gcd(&q) != 1 {
        return Err(Error::Precondition(format!("{p} and {q} are not coprime")));
    }
    if q == 1 {
        return Err(Error::Precondition(format!("edge gadget needs a non-integral τ, got {p}")));
    }
    if q == 2 {
        log::warn!("τ = {p}/2 is half-integral and solvable in polynomial time; building the gadget anyway");
    }
    let (c, r) = p.div_rem(&q);
    let p_prime = q + r;
    let (n, m) = gadget_size(p_prime, q);
    if n < 4 || m > 2 * n - 3 {
        return Err(Error::Generator(format!("gadget size n = {n}, m = {m} is outside 4 ≤ n, m ≤ 2n − 3")));
    }
    let n = n as usize;
    let (u, w) = (0, n - 1);

    // Orientation φ1 in units of 1/q, recorded as the share of the first
    // endpoint of each pair.
    let mut pairs: Vec<(usize, usize)> = Vec::new();
    let mut units: Vec<i64> = Vec::new();
    let mut path_pos = vec![0usize; n - 1];
    let mut to_w: Option<(usize, usize)> = None;
    let first = p_prime - q + 1;
    pairs.push((u, 1));
    units.push(first);
    let mut cur = q - first;
    for i in 1..n - 1 {
        let mut need = p_prime - cur;
        if need > q {
            match to_w {
                None => {
                    to_w = Some((i, pairs.len()));
                    pairs.push((i, w));
                }
                Some(_) => pairs.push((i, u)),
            }
            units.push(q);
            need -= q;
        }
        if !(0..=q).contains(&need) {
            return Err(Error::Generator(format!("vertex {} cannot reach τ′ = {p_prime}/{q}", i + 1)));
        }
        path_pos[i] = pairs.len();
        pairs.push((i, i + 1));
        units.push(need);
        cur = q - need;
    }
    if pairs.len() != m as usize {
        return Err(Error::Generator(format!("built {} edges, expected {m}", pairs.len())));
    }
    let (j, jw) = to_w.ok_or_else(|| Error::Generator("no edge to w was added".into()))?;

    // φ2 pushes 1/q from u along u, v2, ..., vj, w.
    let mut units2 = units.clone();
    units2[0] -= 1;
    for &pos in &path_pos[1..j] {
        units2[pos] -= 1;
    }
    units2[jw] -= 1;
    if units2.iter().any(|&x| x < 0) {
        return Err(Error::Generator("cannot push 1/q from u to w".into()));
    }
    let share = |x: i64| Rational::new(x, q);
    let mut first1: Vec<Rational> = units.iter().map(|&x| share(x)).collect();
    let mut first2: Vec<Rational> = units2.iter().map(|&x| share(x)).collect();

    let mut total_n = n;
    if c >= 2 {
        let a = gen_balanced(p, q, balanced_n_max(p, q))?;
        let phi_a = exact_orientation(&a)?;
        if a.n() < (c - 1) as usize {
            return Err(Error::Generator(format!("balanced graph has fewer than {} vertices", c - 1)));
        }
        for e in a.edges() {
            pairs.push((n + e.u, n + e.v));
            let s = phi_a.get(e.id).unwrap().to_u.clone();
            first1.push(s.clone());
            first2.push(s);
        }
        for x in 0..n {
            for d in 0..(c - 1) as usize {
                pairs.push((x, n + d));
                first1.push(Rational::one());
                first2.push(Rational::one());
            }
        }
        total_n += a.n();
    }
    let graph = Graph::from_edges(total_n, &pairs)?;
    let orient = |first: &[Rational]| {
        let mut phi = FractionalOrientation::new();
        for (i, &(a, b)) in pairs.iter().enumerate() {
            let rest = Rational::one() - &first[i];
            let split = if a < b { Split::new(first[i].clone(), rest) } else { Split::new(rest, first[i].clone()) };
            phi.set(EdgeId(i), split);
        }
        phi
    };
    let gadget = EdgeGadget {
        p,
        q,
        c,
        r,
        p_prime,
        n,
        m: m as usize,
        phi1: orient(&first1),
        phi2: orient(&first2),
        graph,
        u,
        w,
    };
    gadget.verify()?;
    Ok(gadget)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VertexGadget {
    pub vertex: usize,
    pub vertices: Vec<usize>,
    pub special_edge: EdgeId,
    pub anchor: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeGadgetPlacement {
    pub edge: EdgeId,
    pub vertices: Vec<usize>,
    /// `(w_u, w_v)` for the edge `{u, v}` with `u < v`.
    pub ports: (usize, usize),
    /// `{x_u, w_u}` and `{x_v, w_v}`.
    pub connectors: (EdgeId, EdgeId),
}

#[derive(Debug, Clone)]
pub struct VcReduction {
    pub graph: Graph,
    pub k: usize,
    pub tau: Rational,
    pub vertex_gadgets: Vec<VertexGadget>,
    pub edge_gadgets: Vec<EdgeGadgetPlacement>,
}

impl VcReduction {
    /// Deletion set matching a vertex set: the special edges of its gadgets.
    pub fn deletion_for(&self, vertices: &[usize]) -> Vec<EdgeId> {
        vertices.iter().map(|&v| self.vertex_gadgets[v].special_edge).collect()
    }

    pub fn sidecar(&self) -> Value {
        json!({
            "kind": "vc-reduction",
            "tau": self.tau,
            "k": self.k,
            "registry": {
                "vertex_gadgets": self.vertex_gadgets.iter().map(|h| json!({
                    "vertex": h.vertex + 1,
                    "vertices": one_based(&h.vertices),
                    "special_edge": h.special_edge.0 + 1,
                    "anchor": h.anchor + 1,
                })).collect::<Vec<_>>(),
                "edge_gadgets": self.edge_gadgets.iter().map(|w| json!({
                    "edge": w.edge.0 + 1,
                    "vertices": one_based(&w.vertices),
                    "ports": [w.ports.0 + 1, w.ports.1 + 1],
                    "connectors": [w.connectors.0 .0 + 1, w.connectors.1 .0 + 1],
                })).collect::<Vec<_>>(),
            },
        })
    }
}

/// Reduces vertex cover on the `q`-regular graph `g` with budget `k` to BDED
/// at `τ = p/q`.
pub fn gen_vc_reduction(g: &Graph, p: i64, q: i64, k: usize) -> Result<VcReduction> {
    if q < 3 || p <= q || p.gcd(&q) != 1 {
        return Err(Error::Precondition(format!("vertex-cover reduction needs coprime p/q > 1 with q ≥ 3, got {p}/{q}")));
    }
    if let Some(v) = (0..g.n()).find(|&v| g.degree(v) as i64 != q) {
        return Err(Error::Precondition(format!("input is not {q}-regular: vertex {} has degree {}", v + 1, g.degree(v))));
    }
    let h = gen_balanced(p, q, balanced_n_max(p, q))?;
    let phi = exact_orientation(&h)?;
    let cycle = find_cycle(&h).ok_or_else(|| Error::Generator("balanced graph has no cycle".into()))?;
    let shifted = shift_cycle(&h, &cycle, &phi)?;
    let special_pos = h.position(shifted.edge).unwrap();
    let gadget = gen_edge_gadget(p, q)?;

    let mut pairs = Vec::new();
    let mut offset = 0;
    let mut vertex_gadgets = Vec::with_capacity(g.n());
    for v in 0..g.n() {
        vertex_gadgets.push(VertexGadget {
            vertex: v,
            vertices: (offset..offset + h.n()).collect(),
            special_edge: EdgeId(pairs.len() + special_pos),
            anchor: offset + shifted.anchor,
        });
        pairs.extend(h.edges().iter().map(|e| (offset + e.u, offset + e.v)));
        offset += h.n();
    }
    let mut edge_gadgets = Vec::with_capacity(g.m());
    for e in g.edges() {
        pairs.extend(gadget.graph.edges().iter().map(|x| (offset + x.u, offset + x.v)));
        let ports = (offset + gadget.u, offset + gadget.w);
        let first = EdgeId(pairs.len());
        pairs.push((vertex_gadgets[e.u].anchor, ports.0));
        pairs.push((vertex_gadgets[e.v].anchor, ports.1));
        edge_gadgets.push(EdgeGadgetPlacement {
            edge: e.id,
            vertices: (offset..offset + gadget.graph.n()).collect(),
            ports,
            connectors: (first, EdgeId(first.0 + 1)),
        });
        offset += gadget.graph.n();
    }
    let graph = Graph::from_edges(offset, &pairs)?;
    Ok(VcReduction { graph, k, tau: Rational::new(p, q), vertex_gadgets, edge_gadgets })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;
    use crate::densest::verify_solution;
    use crate::oracle::oracle_bded_k;

    fn exact_cover(inst: &XlcInstance) -> bool {
        let t = inst.sets.len();
        (0u32..1 << t).any(|mask| {
            let mut hit = vec![0; inst.universe];
            for (j, s) in inst.sets.iter().enumerate() {
                if mask >> j & 1 == 1 {
                    for &x in s {
                        hit[x] += 1;
                    }
                }
            }
            hit.iter().all(|&h| h == 1)
        })
    }

    #[test]
    fn xlc_demo() {
        let XlcOutcome::Reduced(r) = gen_xlc(&XlcInstance::demo()).unwrap() else { panic!() };
        assert_eq!((r.graph.n(), r.graph.m(), r.k), (12, 14, 5));
        assert_eq!(oracle_bded_k(&r.graph, &r.tau, 16).unwrap(), 5);
    }

    #[test]
    fn xlc_trivial_no_and_malformed() {
        let inst = XlcInstance { ell: 3, universe: 6, sets: vec![vec![0, 1, 2]] };
        assert!(matches!(gen_xlc(&inst).unwrap(), XlcOutcome::TriviallyNo { t: 1, q: 2 }));
        let bad = XlcInstance { ell: 3, universe: 6, sets: vec![vec![0, 1]] };
        assert!(matches!(gen_xlc(&bad), Err(Error::Generator(_))));
        let bad = XlcInstance { ell: 3, universe: 5, sets: vec![] };
        assert!(gen_xlc(&bad).is_err());
    }

    #[test]
    fn xlc_single_set() {
        let inst = XlcInstance { ell: 3, universe: 3, sets: vec![vec![0, 1, 2]] };
        let XlcOutcome::Reduced(r) = gen_xlc(&inst).unwrap() else { panic!() };
        assert_eq!(r.k, r.graph.m() - 3);
        assert_eq!(oracle_bded_k(&r.graph, &r.tau, 16).unwrap(), r.k);
    }

    #[test]
    fn xlc_fidelity() {
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        let mut seen = [0; 2];
        while seen.iter().sum::<usize>() < 12 {
            let ell = rng.gen_range(2..=3);
            let q = rng.gen_range(1..=2);
            let t = rng.gen_range(q..=3);
            let plant = rng.gen_bool(0.5);
            let inst = XlcInstance::random(&mut rng, ell, q, t, plant);
            let XlcOutcome::Reduced(r) = gen_xlc(&inst).unwrap() else { unreachable!() };
            if r.graph.m() > 14 {
                continue;
            }
            let yes = oracle_bded_k(&r.graph, &r.tau, 16).unwrap() <= r.k;
            assert_eq!(yes, exact_cover(&inst), "{inst:?}");
            seen[yes as usize] += 1;
        }
    }

    #[test]
    fn footnote_sizes() {
        for (p, q, n, m) in [(7, 5, 7, 8), (4, 3, 8, 9), (3, 2, 5, 6)] {
            let g = gen_edge_gadget(p, q).unwrap();
            assert_eq!((g.n, g.m), (n, m), "{p}/{q}");
        }
    }

    #[test]
    fn edge_gadget_7_5() {
        let g = gen_edge_gadget(7, 5).unwrap();
        let d = g.phi1.indegrees(&g.graph).unwrap();
        assert_eq!(d[g.u], Rational::new(3, 5));
        assert_eq!(d[g.w], Rational::new(2, 5));
        assert!((1..6).all(|v| d[v] == Rational::new(7, 5)));
    }

    #[test]
    fn edge_gadget_with_dense_part() {
        for (p, q) in [(11, 5), (17, 3), (15, 7)] {
            let g = gen_edge_gadget(p, q).unwrap();
            assert!(g.c >= 2);
            g.verify().unwrap();
            assert!(g.graph.n() > g.n);
        }
    }

    #[test]
    fn edge_gadget_rejects() {
        assert!(gen_edge_gadget(6, 4).is_err());
        assert!(gen_edge_gadget(3, 1).is_err());
        assert!(gen_edge_gadget(2, 3).is_err());
    }

    #[test]
    fn balanced_examples() {
        let k4 = gen_balanced(3, 2, 6).unwrap();
        assert_eq!((k4.n(), k4.m()), (4, 6));
        let g = gen_balanced(7, 5, 10).unwrap();
        assert_eq!((g.n(), g.m()), (5, 7));
        assert_eq!(densest_density(&g).unwrap().density, Rational::new(7, 5));
        let c3 = gen_balanced(1, 1, 3).unwrap();
        assert_eq!((c3.n(), c3.m()), (3, 3));
        assert!(matches!(gen_balanced(7, 5, 4), Err(Error::Generator(_))));
    }

    #[test]
    fn balanced_outputs_are_certified() {
        for (p, q) in [(4, 3), (5, 3), (7, 4), (9, 7), (5, 2), (13, 5)] {
            let g = gen_balanced(p, q, balanced_n_max(p, q)).unwrap();
            assert_eq!(densest_density(&g).unwrap().density, Rational::new(p, q));
            exact_orientation(&g).unwrap();
        }
    }

    #[test]
    fn vc_reduction_on_k4() {
        let g = corpus::complete(4);
        let red = gen_vc_reduction(&g, 4, 3, 3).unwrap();
        assert_eq!(red.vertex_gadgets.len(), 4);
        assert_eq!(red.edge_gadgets.len(), 6);
        let tau = Rational::new(4, 3);
        let good = red.deletion_for(&[0, 1, 2]);
        assert!(verify_solution(&red.graph, &good, &tau).unwrap().ok);
        let bad = red.deletion_for(&[0, 1]);
        assert!(!verify_solution(&red.graph, &bad, &tau).unwrap().ok);
    }

    #[test]
    fn vc_reduction_rejects_irregular() {
        assert!(gen_vc_reduction(&corpus::path(4), 4, 3, 1).is_err());
        assert!(gen_vc_reduction(&corpus::complete(4), 3, 2, 1).is_err());
    }
}
