//! End-to-end acceptance run. Prints one PASS/FAIL line per criterion and
//! exits non-zero if any fails.

use std::collections::BTreeSet;
use std::panic;
use std::time::Instant;

use itertools::Itertools;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use bded_core::corpus;
use bded_core::densest::{densest_density, verify_solution};
use bded_core::flow::FlowNetwork;
use bded_core::gadgets::{gen_edge_gadget, gen_vc_reduction, gen_xlc, XlcInstance, XlcOutcome};
use bded_core::graph::{Digraph, EdgeId};
use bded_core::matching::max_matching;
use bded_core::oracle::{oracle_bded_k, oracle_densest, oracle_matching, oracle_transshipment};
use bded_core::orientation::{shift_cycle, FractionalOrientation, Split};
use bded_core::rflow::{reduce_to_general_factor, solve_interval, ExcessSet, IntTransshipment, TArc, TransshipmentInstance};
use bded_core::solver::{solve, Options, Strategy};
use bded_core::td::heuristic_td;
use bded_core::twdp::solve_td;
use bded_core::{Graph, Rational};

type Outcome = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        if !$cond {
            return Err(format!($($fmt)+));
        }
    };
}

fn ok<T, E: std::fmt::Display>(r: Result<T, E>) -> Result<T, String> {
    r.map_err(|e| e.to_string())
}

fn r(a: i64, b: i64) -> Rational {
    Rational::new(a, b)
}

const SWEEP_TAUS: [(i64, i64); 8] = [(0, 1), (1, 2), (2, 3), (3, 4), (1, 1), (4, 3), (3, 2), (2, 1)];

/// In-degrees summed directly from the splits.
fn indegrees(g: &Graph, phi: &FractionalOrientation) -> Vec<Rational> {
    let mut d = vec![Rational::zero(); g.n()];
    for e in g.edges() {
        if let Some(s) = phi.get(e.id) {
            d[e.u] += s.to_u.clone();
            d[e.v] += s.to_v.clone();
        }
    }
    d
}

fn c1_oracle_sweep() -> Outcome {
    let atlas = corpus::connected_atlas(6);
    ensure!(atlas.len() == 143, "atlas has {} graphs", atlas.len());
    ensure!(corpus::connected_graphs_on(6).len() == 112, "wrong count on 6 vertices");
    let mut solves = 0;
    for g in &atlas {
        for &(a, b) in &SWEEP_TAUS {
            let tau = r(a, b);
            let s = ok(solve(g, &tau, &Options::default()))?;
            let want = ok(oracle_bded_k(g, &tau, 16))?;
            ensure!(s.k == want, "{g:?} τ={tau}: solve {} oracle {want}", s.k);
            ensure!(s.stats.dp_within_bound, "{g:?} τ={tau}: DP table above bound");
            solves += 1;
        }
    }
    Ok(format!("{} graphs, {solves} solves", atlas.len()))
}

fn c2_cross_solver() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for i in 0..200 {
        let g = corpus::random_small(&mut rng, 1..=10, 20);
        for tau in [r(1, 1), r(2, 1)] {
            let k: Vec<usize> = [Strategy::Flow, Strategy::MatchingGadget, Strategy::Twdp]
                .into_iter()
                .map(|strategy| solve(&g, &tau, &Options { strategy, ..Options::default() }).map(|s| s.k))
                .collect::<Result<_, _>>()
                .map_err(|e| e.to_string())?;
            ensure!(k.iter().all_equal(), "graph {i} τ={tau}: {k:?}");
        }
    }
    Ok("200 graphs × 2 τ, three paths agree".into())
}

fn c3_densest() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..500 {
        let g = corpus::random_small(&mut rng, 1..=12, 30);
        let d = ok(densest_density(&g))?;
        let want = ok(oracle_densest(&g))?;
        ensure!(d.density == want, "{g:?}: {} vs oracle {want}", d.density);
        let w = ok(g.induced_subgraph(&d.witness))?.graph;
        let wd = if w.n() == 0 { Rational::zero() } else { r(w.m() as i64, w.n() as i64) };
        ensure!(wd == d.density, "{g:?}: witness density {wd} vs {}", d.density);
        ensure!(*d.density.denom() <= (g.n() as i64).max(1).into(), "{g:?}: denominator {}", d.density.denom());
    }
    Ok("500 graphs".into())
}

fn c4_canonical() -> Outcome {
    let ex1 = corpus::ex1();
    let d = ok(densest_density(&ex1))?.density;
    ensure!(d == r(5, 4) && ok(oracle_densest(&ex1))? == d, "EX1 ρ* = {d}");
    let cases = [
        ("EX1", ex1.clone(), r(1, 1), 1),
        ("EX1", ex1, r(1, 2), 3),
        ("K5", corpus::complete(5), r(3, 2), 3),
        ("C5", corpus::cycle(5), r(3, 4), 2),
        ("P4", corpus::path(4), r(2, 3), 1),
    ];
    for (name, g, tau, want) in cases {
        let oracle = ok(oracle_bded_k(&g, &tau, 16))?;
        let k = ok(solve(&g, &tau, &Options::default()))?.k;
        ensure!(oracle == want && k == want, "{name} τ={tau}: solve {k}, oracle {oracle}, expected {want}");
    }
    Ok("6 values".into())
}

fn c5_edge_gadgets() -> Outcome {
    let mut count = 0;
    for q in 2..=7i64 {
        for p in q + 1..=21 {
            if num_integer::gcd(p, q) != 1 {
                continue;
            }
            let w = ok(gen_edge_gadget(p, q))?;
            let tau = r(p, q);
            let low = &tau - &Rational::one();
            let high = &low + &r(1, q);
            for (name, phi, du, dw) in [("φ1", &w.phi1, &high, &low), ("φ2", &w.phi2, &low, &high)] {
                for e in w.graph.edges() {
                    let s = phi.get(e.id).ok_or(format!("{p}/{q} {name}: edge {:?} unoriented", e.id))?;
                    ensure!(
                        s.to_u.clone() + s.to_v.clone() == Rational::one() && !s.to_u.is_negative() && !s.to_v.is_negative(),
                        "{p}/{q} {name}: bad split on {:?}",
                        e.id
                    );
                }
                let d = indegrees(&w.graph, phi);
                ensure!(d[w.u] == *du && d[w.w] == *dw, "{p}/{q} {name}: u {} w {}", d[w.u], d[w.w]);
                for (v, dv) in d.iter().enumerate() {
                    ensure!(v == w.u || v == w.w || *dv == tau, "{p}/{q} {name}: vertex {v} has {dv}");
                }
            }
            count += 1;
        }
    }
    let w = ok(gen_edge_gadget(7, 5))?;
    ensure!((w.n, w.m) == (7, 8), "(7,5) gives n={}, m={}", w.n, w.m);
    Ok(format!("{count} gadgets"))
}

fn c6_vc_reduction() -> Outcome {
    let k4 = corpus::complete(4);
    let red = ok(gen_vc_reduction(&k4, 4, 3, 3))?;
    let tau = r(4, 3);
    let g = &red.graph;
    for cover in (0..4).combinations(3) {
        let f = red.deletion_for(&cover);
        ensure!(ok(verify_solution(g, &f, &tau))?.ok, "cover {cover:?} fails");
    }
    for pair in (0..4).combinations(2) {
        let f = red.deletion_for(&pair);
        ensure!(!ok(verify_solution(g, &f, &tau))?.ok, "non-cover {pair:?} passes");
    }
    // No two deletions of any kind suffice either.
    let ids: Vec<EdgeId> = g.edge_ids().collect();
    for f in ids.iter().copied().combinations(2) {
        ensure!(!ok(verify_solution(g, &f, &tau))?.ok, "{f:?} passes with 2 deletions");
    }
    let nv = red.vertex_gadgets[0].vertices.len();
    for w in &red.edge_gadgets {
        let e = k4.edge(w.edge).unwrap();
        let mut vs = w.vertices.clone();
        vs.extend(&red.vertex_gadgets[e.u].vertices);
        vs.extend(&red.vertex_gadgets[e.v].vertices);
        let m = ok(g.induced_subgraph(&vs))?.graph.m();
        let want = tau.mul_int((2 * nv + w.vertices.len()) as i64) + r(1, 3);
        ensure!(Rational::integer(m as i64) == want, "union has {m} edges, expected {want}");
    }
    Ok(format!("n′={}, m′={}, {} pairs rejected", g.n(), g.m(), ids.len() * (ids.len() - 1) / 2))
}

fn exact_cover(inst: &XlcInstance) -> bool {
    (0..inst.sets.len()).powerset().any(|chosen| {
        let mut hit = vec![0; inst.universe];
        chosen.iter().flat_map(|&j| &inst.sets[j]).for_each(|&x| hit[x] += 1);
        hit.iter().all(|&h| h == 1)
    })
}

fn c7_xlc() -> Outcome {
    let XlcOutcome::Reduced(demo) = ok(gen_xlc(&XlcInstance::demo()))? else {
        return Err("demo reduced to a trivial no".into());
    };
    ensure!(demo.k == 5, "demo k = {}", demo.k);
    ensure!(ok(oracle_bded_k(&demo.graph, &demo.tau, 16))? == 5, "oracle disagrees on the demo");
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let (mut done, mut yes_count) = (0, 0);
    while done < 20 {
        let ell = rng.gen_range(2..=3);
        let q = rng.gen_range(1..=2);
        let t = rng.gen_range(q..=3);
        let plant = rng.gen_bool(0.5);
        let inst = XlcInstance::random(&mut rng, ell, q, t, plant);
        let XlcOutcome::Reduced(red) = ok(gen_xlc(&inst))? else { continue };
        if red.graph.m() > 14 {
            continue;
        }
        let yes = ok(oracle_bded_k(&red.graph, &red.tau, 16))? <= red.k;
        ensure!(yes == exact_cover(&inst), "{inst:?}: BDED {yes}");
        yes_count += yes as usize;
        done += 1;
    }
    Ok(format!("demo k=5, 20 random ({yes_count} yes)"))
}

fn c8_shift_cycle() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut worst = 0.0f64;
    for _ in 0..100 {
        let n = rng.gen_range(3..=10);
        let mut order: Vec<usize> = (0..n).collect();
        rand::seq::SliceRandom::shuffle(order.as_mut_slice(), &mut rng);
        let cycle: Vec<usize> = order[..rng.gen_range(3..=n)].to_vec();
        let mut pairs: BTreeSet<(usize, usize)> =
            cycle.iter().zip(cycle.iter().cycle().skip(1)).map(|(&a, &b)| (a.min(b), a.max(b))).collect();
        for _ in 0..rng.gen_range(0..=n) {
            let (a, b) = (rng.gen_range(0..n), rng.gen_range(0..n));
            if a != b {
                pairs.insert((a.min(b), a.max(b)));
            }
        }
        let g = ok(Graph::from_edges(n, &pairs.into_iter().collect::<Vec<_>>()))?;
        let mut phi = FractionalOrientation::new();
        for e in g.edges() {
            let den = rng.gen_range(1..=7);
            let x = rng.gen_range(0..=den);
            phi.set(e.id, Split::new(r(x, den), r(den - x, den)));
        }
        let out = ok(shift_cycle(&g, &cycle, &phi))?;
        ensure!(indegrees(&g, &phi) == indegrees(&g, &out.orientation), "in-degrees changed");
        let e = g.edge(out.edge).ok_or("unknown edge")?;
        let on_cycle = (0..cycle.len()).any(|i| {
            let (a, b) = (cycle[i], cycle[(i + 1) % cycle.len()]);
            (a.min(b), a.max(b)) == (e.u, e.v)
        });
        ensure!(on_cycle, "edge {:?} is not on the cycle", out.edge);
        let s = out.orientation.get(out.edge).unwrap();
        let full = if out.anchor == e.u { &s.to_u } else { &s.to_v };
        ensure!(out.anchor == e.u || out.anchor == e.v, "anchor is not an endpoint");
        ensure!(*full == 1, "edge not fully assigned to the anchor");
        ensure!(out.ops <= 3 * g.m(), "{} ops on {} edges", out.ops, g.m());
        worst = worst.max(out.ops as f64 / g.m() as f64);
    }
    Ok(format!("100 triples, ops/m ≤ {worst:.2} (bound 3)"))
}

fn random_interval_instance(rng: &mut ChaCha8Rng) -> TransshipmentInstance {
    let (nu, nw) = (rng.gen_range(1..=3), rng.gen_range(1..=3));
    let mut arcs = Vec::new();
    for (u, w) in (0..nu).cartesian_product(0..nw) {
        if arcs.len() < 4 && rng.gen_bool(0.6) {
            arcs.push(TArc { source: u, sink: w, cap: Rational::integer(rng.gen_range(1..=2)) });
        }
    }
    TransshipmentInstance {
        source_sets: (0..nu).map(|_| ExcessSet::interval(Rational::zero(), Rational::integer(rng.gen_range(0..=3)))).collect(),
        sink_sets: (0..nw).map(|_| ExcessSet::interval(Rational::integer(-rng.gen_range(0..=3)), Rational::zero())).collect(),
        arcs,
    }
}

fn c9_engine() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    // Max-flow = min-cut on the network behind every integral-τ solve; the
    // flow value is the number of edges kept.
    for _ in 0..200 {
        let g = corpus::random_small(&mut rng, 1..=10, 14);
        for tau in [1i64, 2] {
            let mut d = Digraph::new(g.m() + g.n() + 2);
            let (s, t) = (g.m() + g.n(), g.m() + g.n() + 1);
            let mut caps = Vec::new();
            for (i, e) in g.edges().iter().enumerate() {
                for (tail, head) in [(s, i), (i, g.m() + e.u), (i, g.m() + e.v)] {
                    d.add_arc(tail, head, 1);
                    caps.push((tail, head, 1));
                }
            }
            for v in 0..g.n() {
                d.add_arc(g.m() + v, t, tau);
                caps.push((g.m() + v, t, tau));
            }
            let (f, cut) = ok(FlowNetwork::new(d, s, t).max_flow_certified())?;
            let cut_cap: i64 =
                caps.iter().filter(|&&(a, b, _)| cut.source_side[a] && !cut.source_side[b]).map(|&(_, _, c)| c).sum();
            ensure!(f.value == cut.value && cut.value == cut_cap, "flow {} cut {} recount {cut_cap}", f.value, cut.value);
            let k = ok(oracle_bded_k(&g, &Rational::integer(tau), 14))?;
            ensure!(f.value as usize == g.m() - k, "flow {} but m − k = {}", f.value, g.m() - k);
        }
    }
    for _ in 0..300 {
        let g = corpus::random_small(&mut rng, 1..=8, 16);
        let m = max_matching(&g);
        ensure!(m.is_valid(&g), "invalid matching");
        ensure!(m.size() == ok(oracle_matching(&g))?, "{g:?}: blossom {}", m.size());
    }
    for _ in 0..100 {
        let inst = random_interval_instance(&mut rng);
        let base = ok(solve_interval(&ok(inst.integralize())?))?.value;
        ensure!(ok(oracle_transshipment(&inst))? == Some(Rational::integer(base)), "interval solver vs enumeration");
        for q in 2..=4 {
            let scaled = ok(solve_interval(&ok(inst.scale(&Rational::integer(q)).integralize())?))?.value;
            ensure!(scaled == q * base, "opt(×{q}) = {scaled}, q·opt = {}", q * base);
        }
    }
    let mut factors_seen = 0;
    for _ in 0..40 {
        let nu = rng.gen_range(1..=3);
        let nw = rng.gen_range(1..=2);
        let mut arcs = Vec::new();
        for (u, w) in (0..nu).cartesian_product(0..nw) {
            if arcs.len() < 4 && rng.gen_bool(0.6) {
                arcs.push(TArc { source: u, sink: w, cap: Rational::integer(rng.gen_range(1..=2)) });
            }
        }
        let inst = TransshipmentInstance {
            source_sets: (0..nu).map(|_| ExcessSet::finite_ints(&[0, rng.gen_range(1..=2)])).collect(),
            sink_sets: (0..nw).map(|_| ExcessSet::finite_ints(&[-rng.gen_range(0..=3), 0])).collect(),
            arcs,
        };
        let gf = ok(reduce_to_general_factor(&inst))?;
        let ids: Vec<EdgeId> = gf.graph.edge_ids().collect();
        ensure!(ids.len() <= 16, "too many edges to enumerate");
        let mut best = None;
        for mask in 0u32..1 << ids.len() {
            let f: BTreeSet<EdgeId> = ids.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &e)| e).collect();
            if !gf.is_factor(&f) {
                continue;
            }
            factors_seen += 1;
            let flow = ok(gf.project_flow(&f, inst.arcs.len()))?;
            let value = ok(inst.check_int(&IntTransshipment { value: flow.iter().sum(), flow: flow.clone() }))?;
            ensure!(f.len() as i64 == 2 * value, "factor {} vs flow {value}", f.len());
            let back = ok(gf.project_flow(&ok(gf.lift_factor(&flow))?, inst.arcs.len()))?;
            ensure!(back == flow, "lift/project round trip changed the flow");
            best = best.max(Some(value));
        }
        ensure!(best.map(Rational::integer) == ok(oracle_transshipment(&inst))?, "best factor vs enumeration");
    }
    Ok(format!("400 cuts, 300 matchings, 100 scalings, {factors_seen} factors"))
}

fn c10_performance() -> Outcome {
    let g = corpus::random_graph(20_000, 100_000, 10);
    ensure!(g.m() == 100_000, "generated {} edges", g.m());
    let start = Instant::now();
    let s = ok(solve(&g, &Rational::integer(2), &Options::default()))?;
    let secs = start.elapsed().as_secs_f64();
    ensure!(secs < 10.0, "took {secs:.2}s");
    ensure!(s.method_tag() == "flow", "method {}", s.method_tag());
    Ok(format!("m=10^5, k={}, {secs:.2}s", s.k))
}

fn c11_state_bound() -> Outcome {
    let mut graphs = corpus::connected_atlas(6);
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    graphs.extend((0..100).map(|_| corpus::random_small(&mut rng, 1..=10, 20)));
    graphs.extend([corpus::ex1(), corpus::petersen(), corpus::complete(5), corpus::cycle(5), corpus::path(4)]);
    let taus = [r(2, 3), r(3, 4), r(4, 5), r(1, 1), r(4, 3), r(7, 5), r(3, 2), r(5, 3), r(2, 1)];
    let (mut tables, mut worst) = (0, 0.0f64);
    for g in &graphs {
        let td = heuristic_td(g);
        for tau in &taus {
            let out = ok(solve_td(g, tau, &td, 1 << 22))?;
            ensure!(
                out.stats.largest_table as u128 <= out.stats.state_bound,
                "{g:?} τ={tau}: table {} > bound {}",
                out.stats.largest_table,
                out.stats.state_bound
            );
            worst = worst.max(out.stats.largest_table as f64 / out.stats.state_bound as f64);
            tables += out.stats.nodes;
        }
    }
    Ok(format!("{tables} tables, largest/bound ≤ {worst:.3}"))
}

fn main() {
    let criteria: [(u32, &str, fn() -> Outcome); 11] = [
        (1, "oracle optimality sweep", c1_oracle_sweep),
        (2, "cross-solver agreement", c2_cross_solver),
        (3, "densest exactness", c3_densest),
        (4, "canonical values", c4_canonical),
        (5, "edge-gadget certification", c5_edge_gadgets),
        (6, "vc-reduction soundness on K4", c6_vc_reduction),
        (7, "xlc generator fidelity", c7_xlc),
        (8, "cycle shifting", c8_shift_cycle),
        (9, "engine invariants", c9_engine),
        (10, "performance smoke", c10_performance),
        (11, "twdp state bound", c11_state_bound),
    ];
    panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for (id, name, check) in criteria {
        let start = Instant::now();
        let result = panic::catch_unwind(check).unwrap_or_else(|p| {
            Err(p.downcast_ref::<String>().cloned().or(p.downcast_ref::<&str>().map(|s| s.to_string())).unwrap_or_default())
        });
        let secs = start.elapsed().as_secs_f64();
        match result {
            Ok(detail) => println!("PASS {id:>2} {name}: {detail} [{secs:.1}s]"),
            Err(why) => {
                failed += 1;
                println!("FAIL {id:>2} {name}: {why} [{secs:.1}s]");
            }
        }
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
}
