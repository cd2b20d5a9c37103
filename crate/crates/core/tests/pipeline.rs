use proptest::prelude::*;

use bded_core::corpus;
use bded_core::densest::verify_solution;
use bded_core::graph::{read_graph, write_graph};
use bded_core::oracle::oracle_bded_k;
use bded_core::solver::{self, solve, Options, SolutionJson};
use bded_core::td::{heuristic_td, read_td, write_td};
use bded_core::{Error, Graph, Rational};

#[test]
fn text_to_json_and_back() {
    let g = read_graph("# EX1\n4 5\n1 2\n1 3\n1 4\n2 3\n3 4\n").unwrap();
    let tau = Rational::one();
    let sol = solve(&g, &tau, &Options::default()).unwrap();
    let text = serde_json::to_string(&sol.to_json()).unwrap();
    let back: SolutionJson = serde_json::from_str(&text).unwrap();
    let f = back.deleted_ids().unwrap();
    assert_eq!(f.len(), 1);
    assert!(verify_solution(&g, &f, &back.tau).unwrap().ok);
    assert_eq!(read_graph(&write_graph(&g)).unwrap(), g);
}

#[test]
fn decomposition_file_drives_the_dp() {
    let g = corpus::petersen();
    let td = read_td(&write_td(&heuristic_td(&g))).unwrap();
    let o = Options { td: Some(td), strategy: solver::Strategy::Twdp, ..Options::default() };
    let s = solve(&g, &Rational::new(5, 4), &o).unwrap();
    assert_eq!(s.k, solve(&g, &Rational::new(5, 4), &Options::default()).unwrap().k);
    assert!(s.stats.dp_within_bound);

    let bad = read_td("s td 1 2 10\nb 1 1 2\n").unwrap();
    let o = Options { td: Some(bad), strategy: solver::Strategy::Twdp, ..Options::default() };
    assert!(matches!(solve(&g, &Rational::new(5, 4), &o), Err(Error::Decomposition(_))));
}

#[test]
fn disjoint_union_adds_up() {
    let a = corpus::complete(5);
    let b = corpus::petersen();
    let mut pairs: Vec<(usize, usize)> = a.edges().iter().map(|e| (e.u, e.v)).collect();
    pairs.extend(b.edges().iter().map(|e| (e.u + 5, e.v + 5)));
    let g = Graph::from_edges(15, &pairs).unwrap();
    for (p, q) in [(1, 2), (2, 3), (1, 1), (5, 4), (3, 2), (2, 1)] {
        let tau = Rational::new(p, q);
        let k = |g: &Graph| solve(g, &tau, &Options::default()).unwrap().k;
        assert_eq!(k(&g), k(&a) + k(&b), "τ = {tau}");
    }
}

fn small_graph() -> impl Strategy<Value = Graph> {
    (1usize..=7).prop_flat_map(|n| {
        let all: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
        proptest::sample::subsequence(all.clone(), 0..=all.len().min(11))
            .prop_map(move |pairs| Graph::from_edges(n, &pairs).unwrap())
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(120))]

    #[test]
    fn solve_is_optimal_and_certified(g in small_graph(), p in 0i64..=9, q in 1i64..=4) {
        let tau = Rational::new(p, q);
        let s = solve(&g, &tau, &Options::default()).unwrap();
        prop_assert_eq!(s.k, oracle_bded_k(&g, &tau, 16).unwrap());
        prop_assert!(verify_solution(&g, &s.deleted, &tau).unwrap().ok);
        s.certify(&g).unwrap();
    }

    #[test]
    fn k_is_monotone_in_tau(g in small_graph(), p in 0i64..=8, q in 1i64..=3) {
        let lo = Rational::new(p, q);
        let hi = &lo + &Rational::new(1, 6);
        let k = |t: &Rational| solve(&g, t, &Options::default()).unwrap().k;
        prop_assert!(k(&hi) <= k(&lo));
    }
}
