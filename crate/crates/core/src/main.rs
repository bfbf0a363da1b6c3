//! `hamlab` command-line front end.
//!
//! Exit codes: 0 ran clean with no disagreements, 10 ran clean and found
//! disagreements, 1 internal or usage error.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use hamlab::graph::{named_graph, parse_graph, Graph};
use hamlab::harness::{
    bench, campaign_random, diff_run, minimize, sweep_exhaustive, DiffConfig, Predicate,
    SweepReport,
};
use hamlab::layered::{exact_build, exact_decide, ExactBudget};
use hamlab::oracle::{oracle_has_circuit_within, oracle_level_sets, OracleError};
use hamlab::stateset::{fuzzy_build, fuzzy_decide, FuzzyConfig};
use hamlab::Parallelism;
use serde_json::json;

const EXIT_CLEAN: u8 = 0;
const EXIT_DISAGREEMENT: u8 = 10;
const EXIT_ERROR: u8 = 1;

#[derive(Parser)]
#[command(
    name = "hamlab",
    version,
    about = "Differential Hamiltonian-circuit laboratory"
)]
struct Cli {
    /// Run everything on the calling thread.
    #[arg(long, global = true)]
    sequential: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Algo {
    Oracle,
    Exact,
    Fuzzy,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Decide one instance with one algorithm.
    Solve {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long, value_enum, default_value = "fuzzy")]
        algo: Algo,
        #[arg(long, default_value_t = 0)]
        start: usize,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        /// Print the underlying structure dump (exact or fuzzy only).
        #[arg(long)]
        dump: bool,
    },
    /// Run all three algorithms on one instance and compare them.
    Diff {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long, default_value_t = 0)]
        start: usize,
        /// Include wall-clock timings in the report.
        #[arg(long)]
        timings: bool,
    },
    /// Diff every labelled graph on 3..=N vertices.
    Sweep {
        #[arg(long)]
        max_n: usize,
        #[arg(long)]
        connected_only: bool,
        /// Permit max-n above the default cap of 6.
        #[arg(long)]
        allow_large: bool,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Diff seeded Erdős–Rényi instances.
    Random {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        p: f64,
        #[arg(long)]
        trials: usize,
        #[arg(long)]
        seed: u64,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Shrink an instance to a 1-minimal one that keeps a property.
    Minimize {
        #[command(flatten)]
        input: InputArgs,
        /// One of: oracle-hamiltonian, oracle-non-hamiltonian,
        /// fuzzy-oracle-disagree, fuzzy-positive-oracle-negative,
        /// fuzzy-negative-oracle-positive, extraction-failure,
        /// containment-violation, levelsets-differ, exact-oracle-mismatch.
        #[arg(long)]
        predicate: Predicate,
    },
    /// Time the state-set decider over several sizes and fit its exponent.
    Bench {
        /// Comma-separated vertex counts, e.g. 10,20,40,60.
        #[arg(long, value_delimiter = ',')]
        n_list: Vec<usize>,
        #[arg(long)]
        p: f64,
        #[arg(long)]
        trials: usize,
        #[arg(long)]
        seed: u64,
    },
}

#[derive(clap::Args)]
struct InputArgs {
    /// Edge-list file.
    #[arg(long, conflicts_with = "graph", required_unless_present = "graph")]
    input: Option<PathBuf>,
    /// Catalog graph name instead of a file (k3..k9, p3, p4, c5, c6, star,
    /// k2_3, k3_3, cube, petersen).
    #[arg(long)]
    graph: Option<String>,
}

impl InputArgs {
    fn load(&self) -> Result<Graph, String> {
        match (&self.input, &self.graph) {
            (Some(path), _) => read_graph(path),
            (None, Some(name)) => named_graph(name).map_err(|e| e.to_string()),
            (None, None) => Err("either --input or --graph is required".into()),
        }
    }
}

#[derive(clap::Args)]
struct OutputArgs {
    /// Include wall-clock timings (reports are then not byte-reproducible).
    #[arg(long)]
    timings: bool,
    /// Also write per-n CSV summary rows to this file.
    #[arg(long)]
    csv: Option<PathBuf>,
}

fn read_graph(path: &Path) -> Result<Graph, String> {
    let text = fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    parse_graph(&text).map_err(|e| format!("{}: {e}", path.display()))
}

fn check_start(g: &Graph, start: usize) -> Result<(), String> {
    if start < g.n() {
        Ok(())
    } else {
        Err(format!("start {start} out of range for {} vertices", g.n()))
    }
}

fn to_json<T: serde::Serialize>(v: &T) -> String {
    serde_json::to_string_pretty(v).expect("serializable")
}

fn emit_sweep(report: &SweepReport, out: &OutputArgs) -> Result<u8, String> {
    report.validate()?;
    println!("{}", report.to_json());
    if let Some(path) = &out.csv {
        fs::write(path, report.csv_summary()).map_err(|e| format!("{}: {e}", path.display()))?;
    }
    Ok(if report.has_disagreements() {
        EXIT_DISAGREEMENT
    } else {
        EXIT_CLEAN
    })
}

fn run(cli: Cli) -> Result<u8, String> {
    let par = if cli.sequential {
        Parallelism::Sequential
    } else {
        Parallelism::default()
    };
    let mut cfg = DiffConfig::from_env()?;
    cfg.instances = par;
    match cli.command {
        Command::Solve {
            input,
            algo,
            start,
            format,
            dump,
        } => {
            let g = input.load()?;
            check_start(&g, start)?;
            solve(&g, algo, start, format, dump, &cfg, par)
        }
        Command::Diff {
            input,
            start,
            timings,
        } => {
            let g = input.load()?;
            check_start(&g, start)?;
            cfg.record_timings = timings;
            cfg.fuzzy.par = par;
            let report = diff_run(&g, start, &cfg);
            println!("{}", to_json(&report));
            Ok(if report.disagreements().is_empty() {
                EXIT_CLEAN
            } else {
                EXIT_DISAGREEMENT
            })
        }
        Command::Sweep {
            max_n,
            connected_only,
            allow_large,
            out,
        } => {
            cfg.record_timings = out.timings;
            let report = sweep_exhaustive(max_n, connected_only, allow_large, &cfg)
                .map_err(|e| e.to_string())?;
            emit_sweep(&report, &out)
        }
        Command::Random {
            n,
            p,
            trials,
            seed,
            out,
        } => {
            cfg.record_timings = out.timings;
            let report = campaign_random(n, p, trials, seed, &cfg).map_err(|e| e.to_string())?;
            emit_sweep(&report, &out)
        }
        Command::Minimize { input, predicate } => {
            let g = input.load()?;
            let m = minimize(&g, predicate, &cfg).map_err(|e| e.to_string())?;
            print!(
                "# minimized under {predicate}: {} -> {} vertices, {} -> {} edges\n{}",
                g.n(),
                m.n(),
                g.edge_count(),
                m.edge_count(),
                m.to_edge_list()
            );
            Ok(EXIT_CLEAN)
        }
        Command::Bench {
            n_list,
            p,
            trials,
            seed,
        } => {
            if n_list.is_empty() || trials == 0 {
                return Err("bench needs a non-empty --n-list and --trials >= 1".into());
            }
            let fuzzy = FuzzyConfig {
                par,
                ..FuzzyConfig::default()
            };
            let report = bench(&n_list, p, trials, seed, fuzzy).map_err(|e| e.to_string())?;
            println!("{}", to_json(&report));
            Ok(EXIT_CLEAN)
        }
    }
}

fn solve(
    g: &Graph,
    algo: Algo,
    start: usize,
    format: Format,
    dump: bool,
    cfg: &DiffConfig,
    par: Parallelism,
) -> Result<u8, String> {
    let fuzzy_cfg = FuzzyConfig { par, ..cfg.fuzzy };
    let budget: ExactBudget = cfg.exact_budget;
    let (verdict, circuit, value) = match algo {
        Algo::Oracle => {
            let found = oracle_has_circuit_within(g, start, cfg.oracle_max_steps);
            let levels = oracle_level_sets(g, start, cfg.level_cap).ok();
            match found {
                Ok(w) => (
                    if w.is_some() { "yes" } else { "no" },
                    w.clone(),
                    json!({"algo": "oracle", "has_circuit": w.is_some(), "witness": w, "level_sets": levels}),
                ),
                Err(OracleError::StepBudget(steps)) => (
                    "unknown",
                    None,
                    json!({"algo": "oracle", "has_circuit": null, "step_budget": steps, "level_sets": levels}),
                ),
                Err(e) => return Err(e.to_string()),
            }
        }
        Algo::Exact => {
            if dump {
                let dag = exact_build(g, start, budget, par).map_err(|e| e.to_string())?;
                print!("{}", dag.dump());
            }
            let d = exact_decide(g, start, budget, par).map_err(|e| e.to_string())?;
            (
                if d.has_circuit { "yes" } else { "no" },
                d.witness.clone(),
                json!({"algo": "exact", "has_circuit": d.has_circuit, "witness": d.witness,
                       "level_sets": d.level_sets, "stats": d.stats, "budget": budget}),
            )
        }
        Algo::Fuzzy => {
            if dump {
                let dag = fuzzy_build(g, start, fuzzy_cfg).map_err(|e| e.to_string())?;
                print!("{}", dag.dump());
            }
            let d = fuzzy_decide(g, start, fuzzy_cfg).map_err(|e| e.to_string())?;
            (
                if d.nonempty { "yes" } else { "no" },
                d.candidate.clone(),
                json!({"algo": "fuzzy", "nonempty": d.nonempty, "candidate": d.candidate,
                       "candidate_verified": d.candidate_verified, "extraction": d.extraction,
                       "level_sets": d.level_sets, "within_size_bounds": d.within_size_bounds,
                       "stats": d.stats}),
            )
        }
    };
    match format {
        Format::Json => println!("{}", to_json(&value)),
        Format::Text => {
            println!("verdict: {verdict}");
            if let Some(c) = circuit {
                println!("circuit: {c}");
            }
        }
    }
    Ok(EXIT_CLEAN)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_ERROR)
        }
    }
}
