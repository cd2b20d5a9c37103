use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{anyhow, bail, Context};
use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use bded_core::densest::{densest_density, verify_solution};
use bded_core::gadgets::{gen_balanced, gen_edge_gadget, gen_vc_reduction, gen_xlc, XlcInstance, XlcOutcome};
use bded_core::graph::{read_graph, write_graph};
use bded_core::solver::{solve, Options, SolutionJson, Strategy};
use bded_core::td::read_td;
use bded_core::{Error, Graph, Rational};

mod bench;

#[derive(Parser)]
#[command(name = "bded", version, about = "Exact solvers for bounded-density edge deletion")]
struct Cli {
    /// Also write a JSON run report (command, input digest, result, timing).
    #[arg(long, global = true, value_name = "PATH")]
    report: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Maximum subgraph density and a densest vertex set.
    Density { graph: PathBuf },
    /// Minimum number of edge deletions to reach density at most τ.
    Solve(SolveArgs),
    /// Check that deleting the edges of a solution file reaches density τ.
    Verify {
        graph: PathBuf,
        /// Defaults to the τ stored in the solution.
        #[arg(long)]
        tau: Option<Rational>,
        /// Solution JSON, or a plain list of 1-based edge ids.
        #[arg(long)]
        solution: PathBuf,
    },
    /// Generate hardness instances and gadgets.
    Gen {
        #[command(subcommand)]
        kind: GenKind,
        /// Write PREFIX.graph and PREFIX.json instead of printing.
        #[arg(long, global = true, value_name = "PREFIX")]
        out: Option<PathBuf>,
    },
    /// Run a benchmark suite and print a table.
    Bench {
        #[arg(value_enum)]
        suite: bench::Suite,
        /// CSV instead of an aligned table.
        #[arg(long)]
        csv: bool,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
}

#[derive(Args)]
struct SolveArgs {
    graph: PathBuf,
    /// Target density, `a/b` or an integer.
    #[arg(long)]
    tau: Rational,
    /// Decide whether `k` deletions suffice (exit 0 yes, 1 no).
    #[arg(long)]
    k: Option<usize>,
    /// Tree decomposition in PACE `.td` format.
    #[arg(long)]
    td: Option<PathBuf>,
    #[arg(long)]
    json: bool,
    /// auto, flow, matching-gadget, twdp or oracle.
    #[arg(long, default_value = "auto")]
    strategy: Strategy,
    #[arg(long, env = "BDED_BRUTE_LIMIT", default_value_t = 16)]
    brute_limit: usize,
    #[arg(long, default_value_t = 1 << 22)]
    max_dp_states: usize,
}

#[derive(Subcommand)]
enum GenKind {
    /// Exact cover by ℓ-sets to τ = ℓ/(ℓ+1). Without --sets, a small demo.
    Xlc {
        /// Sets of 1-based elements, e.g. "1,2,3;4,5,6;1,4,5".
        #[arg(long)]
        sets: Option<String>,
        /// Universe size; defaults to the largest element.
        #[arg(long)]
        universe: Option<usize>,
    },
    /// Edge gadget for τ = p/q.
    EdgeGadget { p: i64, q: i64 },
    /// Vertex cover on a q-regular graph to τ = p/q.
    VcReduction {
        graph: PathBuf,
        #[arg(long)]
        tau: Rational,
        #[arg(long)]
        k: usize,
    },
    /// Balanced graph of density p/q.
    Balanced {
        p: i64,
        q: i64,
        #[arg(long, default_value_t = 64)]
        n_max: usize,
    },
}

struct Outcome {
    code: u8,
    payload: Value,
    method: Option<String>,
}

impl Outcome {
    fn ok(payload: Value) -> Self {
        Outcome { code: 0, payload, method: None }
    }
}

#[derive(Serialize)]
struct RunReport {
    command: String,
    input_digest: String,
    payload: Value,
    wall_time_ms: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    method: Option<String>,
}

/// Reads every input file through one hasher so the report can name them.
#[derive(Default)]
struct Inputs {
    hasher: Sha256,
}

impl Inputs {
    fn read(&mut self, path: &Path) -> anyhow::Result<String> {
        let bytes = fs::read(path).with_context(|| format!("cannot read {}", path.display()))?;
        self.hasher.update(&bytes);
        String::from_utf8(bytes).with_context(|| format!("{} is not UTF-8", path.display()))
    }

    fn graph(&mut self, path: &Path) -> anyhow::Result<Graph> {
        let text = self.read(path)?;
        let g = read_graph(&text).with_context(|| format!("in {}", path.display()))?;
        log::info!("{}: n = {}, m = {}", path.display(), g.n(), g.m());
        Ok(g)
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    let start = Instant::now();
    let mut inputs = Inputs::default();
    let result = run(cli.command, &mut inputs);
    match result {
        Ok(out) => {
            if let Some(path) = cli.report {
                let report = RunReport {
                    command: std::env::args().skip(1).collect::<Vec<_>>().join(" "),
                    input_digest: hex::encode(inputs.hasher.finalize()),
                    payload: out.payload,
                    wall_time_ms: start.elapsed().as_secs_f64() * 1e3,
                    method: out.method,
                };
                let text = serde_json::to_string_pretty(&report).expect("report serializes");
                if let Err(e) = fs::write(&path, text) {
                    eprintln!("error: cannot write report {}: {e}", path.display());
                    return ExitCode::from(2);
                }
            }
            ExitCode::from(out.code)
        }
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(exit_code(&err))
        }
    }
}

fn exit_code(err: &anyhow::Error) -> u8 {
    match err.downcast_ref::<Error>() {
        Some(Error::Resource(_) | Error::SizeLimit(_)) => 3,
        _ => 2,
    }
}

fn run(command: Command, inputs: &mut Inputs) -> anyhow::Result<Outcome> {
    match command {
        Command::Density { graph } => cmd_density(&inputs.graph(&graph)?),
        Command::Solve(args) => cmd_solve(args, inputs),
        Command::Verify { graph, tau, solution } => {
            let g = inputs.graph(&graph)?;
            let text = inputs.read(&solution)?;
            cmd_verify(&g, tau, &text)
        }
        Command::Gen { kind, out } => cmd_gen(kind, out.as_deref(), inputs),
        Command::Bench { suite, csv, jobs } => {
            let rows = bench::run(suite, jobs)?;
            if csv {
                let mut w = csv::Writer::from_writer(std::io::stdout());
                for r in &rows {
                    w.serialize(r)?;
                }
                w.flush()?;
            } else {
                print!("{}", bench::table(&rows));
            }
            Ok(Outcome::ok(serde_json::to_value(&rows)?))
        }
    }
}

fn one_based(vs: &[usize]) -> Vec<usize> {
    vs.iter().map(|v| v + 1).collect()
}

fn joined(vs: &[usize]) -> String {
    vs.iter().map(usize::to_string).collect::<Vec<_>>().join(" ")
}

fn cmd_density(g: &Graph) -> anyhow::Result<Outcome> {
    let d = densest_density(g)?;
    let witness = one_based(&d.witness);
    println!("{}", d.density);
    println!("witness: {}", joined(&witness));
    Ok(Outcome::ok(json!({ "density": d.density, "witness": witness })))
}

fn cmd_solve(args: SolveArgs, inputs: &mut Inputs) -> anyhow::Result<Outcome> {
    let g = inputs.graph(&args.graph)?;
    let td = match &args.td {
        Some(path) => Some(read_td(&inputs.read(path)?).with_context(|| format!("in {}", path.display()))?),
        None => None,
    };
    let options =
        Options { strategy: args.strategy, brute_limit: args.brute_limit, td, max_dp_states: args.max_dp_states };
    let sol = solve(&g, &args.tau, &options)?;
    let out = sol.to_json();
    let yes = args.k.map(|k| sol.k <= k);
    if args.json {
        println!("{}", serde_json::to_string_pretty(&out)?);
    } else {
        if let Some(yes) = yes {
            println!("{}", if yes { "YES" } else { "NO" });
        }
        println!("k = {}", out.k);
        println!("deleted: {}", joined(&out.deleted_edges));
        println!("method: {}", out.method);
    }
    Ok(Outcome { code: if yes == Some(false) { 1 } else { 0 }, method: Some(out.method.clone()), payload: serde_json::to_value(out)? })
}

/// Deleted edges and stored τ from a solution file.
fn parse_solution(text: &str) -> anyhow::Result<(Vec<usize>, Option<Rational>)> {
    if text.trim_start().starts_with('{') {
        let s: SolutionJson = serde_json::from_str(text).context("malformed solution JSON")?;
        return Ok((s.deleted_edges, Some(s.tau)));
    }
    let ids = text
        .split(|c: char| c.is_whitespace() || c == ',')
        .filter(|t| !t.is_empty())
        .map(|t| t.parse::<usize>().map_err(|_| anyhow!("expected an edge id, found `{t}`")))
        .collect::<anyhow::Result<_>>()?;
    Ok((ids, None))
}

fn cmd_verify(g: &Graph, tau: Option<Rational>, text: &str) -> anyhow::Result<Outcome> {
    let (ids, stored) = parse_solution(text)?;
    let tau = tau.or(stored).ok_or_else(|| anyhow!("no τ given and none stored in the solution"))?;
    let mut f = Vec::with_capacity(ids.len());
    for id in ids {
        if id == 0 || id > g.m() {
            bail!("edge id {id} out of range 1..={}", g.m());
        }
        f.push(g.edges()[id - 1].id);
    }
    let verdict = verify_solution(g, &f, &tau)?;
    let witness = one_based(&verdict.witness);
    if verdict.ok {
        println!("OK: remaining density {} <= {tau}", verdict.density);
    } else {
        println!("VIOLATED: remaining density {} > {tau}", verdict.density);
        println!("witness: {}", joined(&witness));
    }
    Ok(Outcome {
        code: if verdict.ok { 0 } else { 1 },
        payload: json!({ "ok": verdict.ok, "density": verdict.density, "witness": witness }),
        method: None,
    })
}

fn parse_sets(text: &str) -> anyhow::Result<Vec<Vec<usize>>> {
    text.split(';')
        .filter(|s| !s.trim().is_empty())
        .map(|s| {
            s.split(',')
                .map(|x| match x.trim().parse::<usize>() {
                    Ok(v) if v >= 1 => Ok(v - 1),
                    _ => Err(anyhow!("bad element `{}` in set `{s}`", x.trim())),
                })
                .collect()
        })
        .collect()
}

fn fraction(tau: &Rational) -> anyhow::Result<(i64, i64)> {
    tau.to_i64_pair().ok_or_else(|| anyhow!("τ = {tau} is too large"))
}

fn cmd_gen(kind: GenKind, out: Option<&Path>, inputs: &mut Inputs) -> anyhow::Result<Outcome> {
    let (graph, sidecar) = match kind {
        GenKind::Xlc { sets, universe } => {
            let inst = match sets {
                None => XlcInstance::demo(),
                Some(text) => {
                    let sets = parse_sets(&text)?;
                    let ell = sets.first().map_or(0, Vec::len);
                    let universe = universe.unwrap_or_else(|| sets.iter().flatten().map(|&x| x + 1).max().unwrap_or(0));
                    XlcInstance { ell, universe, sets }
                }
            };
            match gen_xlc(&inst)? {
                XlcOutcome::Reduced(r) => {
                    let s = r.sidecar(&inst);
                    (Some(r.graph), s)
                }
                XlcOutcome::TriviallyNo { t, q } => {
                    (None, json!({ "kind": "xlc", "trivially_no": true, "params": { "ell": inst.ell, "q": q, "t": t } }))
                }
            }
        }
        GenKind::EdgeGadget { p, q } => {
            let w = gen_edge_gadget(p, q)?;
            let s = w.sidecar();
            (Some(w.graph), s)
        }
        GenKind::VcReduction { graph, tau, k } => {
            let g = inputs.graph(&graph)?;
            let (p, q) = fraction(&tau)?;
            let r = gen_vc_reduction(&g, p, q, k)?;
            let s = r.sidecar();
            (Some(r.graph), s)
        }
        GenKind::Balanced { p, q, n_max } => {
            let g = gen_balanced(p, q, n_max)?;
            let s = json!({ "kind": "balanced", "tau": Rational::new(p, q), "params": { "p": p, "q": q, "n_max": n_max } });
            (Some(g), s)
        }
    };
    let text = graph.as_ref().map(write_graph);
    match out {
        Some(prefix) => {
            let base = prefix.display();
            if let Some(text) = &text {
                fs::write(format!("{base}.graph"), text).with_context(|| format!("cannot write {base}.graph"))?;
            }
            fs::write(format!("{base}.json"), serde_json::to_string_pretty(&sidecar)?)
                .with_context(|| format!("cannot write {base}.json"))?;
        }
        None => {
            match &text {
                Some(text) => print!("{text}"),
                None => println!("# trivially no: fewer sets than needed for a cover"),
            }
            println!("# sidecar: {sidecar}");
        }
    }
    Ok(Outcome::ok(sidecar))
}
