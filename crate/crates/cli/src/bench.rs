use std::time::Instant;

use clap::ValueEnum;
use rayon::prelude::*;
use serde::Serialize;

use bded_core::corpus;
use bded_core::solver::{solve, Options};
use bded_core::{Graph, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    /// Every connected graph on at most 6 vertices.
    Atlas,
    /// Small named graphs.
    Canonical,
    /// Random graphs with 10^5 edges at integral τ.
    Perf,
}

#[derive(Debug, Clone, Serialize)]
pub struct Row {
    pub instance: String,
    pub n: usize,
    pub m: usize,
    pub tau: String,
    pub k: usize,
    pub method: String,
    pub millis: f64,
}

pub const ATLAS_TAUS: [(i64, i64); 8] = [(0, 1), (1, 2), (2, 3), (3, 4), (1, 1), (4, 3), (3, 2), (2, 1)];

fn instances(suite: Suite) -> Vec<(String, Graph, Vec<Rational>)> {
    let r = |a, b| Rational::new(a, b);
    match suite {
        Suite::Atlas => {
            let taus: Vec<Rational> = ATLAS_TAUS.iter().map(|&(a, b)| r(a, b)).collect();
            corpus::connected_atlas(6)
                .into_iter()
                .enumerate()
                .map(|(i, g)| (format!("atlas-{}", i + 1), g, taus.clone()))
                .collect()
        }
        Suite::Canonical => vec![
            ("ex1".into(), corpus::ex1(), vec![r(1, 1), r(1, 2)]),
            ("k5".into(), corpus::complete(5), vec![r(3, 2)]),
            ("c5".into(), corpus::cycle(5), vec![r(3, 4)]),
            ("p4".into(), corpus::path(4), vec![r(2, 3)]),
            ("k4".into(), corpus::complete(4), vec![r(4, 3)]),
            ("petersen".into(), corpus::petersen(), vec![r(1, 1), r(5, 4)]),
        ],
        Suite::Perf => vec![
            ("random-20000-100000".into(), corpus::random_graph(20_000, 100_000, 1), vec![r(2, 1), r(3, 1)]),
            ("random-5000-100000".into(), corpus::random_graph(5_000, 100_000, 2), vec![r(10, 1)]),
        ],
    }
}

/// Solves every instance of the suite; row order does not depend on `jobs`.
pub fn run(suite: Suite, jobs: usize) -> anyhow::Result<Vec<Row>> {
    let tasks: Vec<(String, Graph, Rational)> = instances(suite)
        .into_iter()
        .flat_map(|(name, g, taus)| taus.into_iter().map(move |t| (name.clone(), g.clone(), t)))
        .collect();
    let pool = rayon::ThreadPoolBuilder::new().num_threads(jobs.max(1)).build()?;
    pool.install(|| {
        tasks
            .par_iter()
            .map(|(name, g, tau)| {
                let start = Instant::now();
                let sol = solve(g, tau, &Options::default())?;
                Ok(Row {
                    instance: name.clone(),
                    n: g.n(),
                    m: g.m(),
                    tau: tau.to_string(),
                    k: sol.k,
                    method: sol.method_tag(),
                    millis: start.elapsed().as_secs_f64() * 1e3,
                })
            })
            .collect()
    })
}

pub fn table(rows: &[Row]) -> String {
    let header = ["instance", "n", "m", "tau", "k", "method", "ms"];
    let cells: Vec<[String; 7]> = rows
        .iter()
        .map(|r| {
            [
                r.instance.clone(),
                r.n.to_string(),
                r.m.to_string(),
                r.tau.clone(),
                r.k.to_string(),
                r.method.clone(),
                format!("{:.1}", r.millis),
            ]
        })
        .collect();
    let mut width: Vec<usize> = header.iter().map(|h| h.len()).collect();
    for row in &cells {
        for (w, c) in width.iter_mut().zip(row) {
            *w = (*w).max(c.chars().count());
        }
    }
    let mut out = String::new();
    let mut line = |cols: Vec<&str>| {
        let parts: Vec<String> = cols.iter().zip(&width).map(|(c, w)| format!("{c:<w$}")).collect();
        out.push_str(parts.join("  ").trim_end());
        out.push('\n');
    };
    line(header.to_vec());
    for row in &cells {
        line(row.iter().map(String::as_str).collect());
    }
    out
}
