//! `qmis`: solve, generate, verify and benchmark maximum independent set
//! instances from the command line.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Duration;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use qmis_core::io::{parse_mean_vector, read_graph, write_graph, GraphFormat};
use qmis_core::report::InstanceMeta;
use qmis_core::{
    bench_suite, direct_mis_check, exact_mis, fast_mis_check, gamma_select, gen_er, gen_gnm,
    gnm_half_density_edges, greedy_min_degree, solve, summary_table, write_report, BinaryVector,
    GammaMode, Graph, InitScheme, NodeSet, Preset, ReportDocument, ReportFormat, SolverConfig,
    SuiteSpec, WORKERS_ENV,
};
use serde_json::json;

#[derive(Parser)]
#[command(
    name = "qmis",
    version,
    about = "Dataless gradient-based maximum independent set solver"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve one graph and print a report.
    Solve(SolveArgs),
    /// Generate a seeded random graph.
    Gen(GenArgs),
    /// Exact maximum independent set (up to 64 nodes) and the greedy baseline.
    Oracle(OracleArgs),
    /// Check whether a node set is a maximal independent set.
    Check(CheckArgs),
    /// Run a suite of instances described by a JSON file.
    Bench(BenchArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Dimacs,
    Edges,
}

impl From<FormatArg> for GraphFormat {
    fn from(f: FormatArg) -> Self {
        match f {
            FormatArg::Dimacs => GraphFormat::Dimacs,
            FormatArg::Edges => GraphFormat::EdgeList,
        }
    }
}

#[derive(Args)]
struct GraphInput {
    /// Graph file (DIMACS or 0-based edge list).
    graph: PathBuf,
    /// Input format; inferred from the extension when omitted.
    #[arg(long)]
    format: Option<FormatArg>,
}

impl GraphInput {
    fn load(&self) -> Result<Graph> {
        read_graph(&self.graph, self.format.map(Into::into))
            .with_context(|| format!("reading {}", self.graph.display()))
    }
}

#[derive(Args)]
struct SolverArgs {
    /// Start from a named hyperparameter preset.
    #[arg(long)]
    preset: Option<Preset>,
    /// Edge penalty: `wei`, `n`, or a number.
    #[arg(long)]
    gamma: Option<GammaMode>,
    /// Adam learning rate.
    #[arg(long)]
    lr: Option<f64>,
    /// Iterations per initialization.
    #[arg(long)]
    iters: Option<usize>,
    /// Initializations per batch.
    #[arg(long)]
    batch_size: Option<usize>,
    /// Number of batches.
    #[arg(long)]
    batches: Option<usize>,
    /// `random`, `degree`, or `mean:<file>`.
    #[arg(long)]
    init: Option<String>,
    /// Variance of Gaussian starts.
    #[arg(long)]
    eta: Option<f64>,
    #[arg(long)]
    seed: Option<u64>,
    /// Soft wall-clock limit in seconds, checked between batches.
    #[arg(long)]
    time_limit: Option<f64>,
    /// Drop the complement-graph term from the objective.
    #[arg(long)]
    no_complement_term: bool,
    /// Worker threads.
    #[arg(long, env = WORKERS_ENV)]
    workers: Option<usize>,
}

impl SolverArgs {
    fn config(&self, g: &Graph) -> Result<SolverConfig> {
        let mut cfg = self.preset.map(SolverConfig::preset).unwrap_or_default();
        if let Some(v) = self.gamma {
            cfg.gamma = v;
        }
        if let Some(v) = self.lr {
            cfg.alpha = v;
        }
        if let Some(v) = self.iters {
            cfg.iterations = v;
        }
        if let Some(v) = self.batch_size {
            cfg.batch_size = v;
        }
        if let Some(v) = self.batches {
            cfg.batches = v;
        }
        if let Some(spec) = &self.init {
            cfg.init = parse_init(spec, g.n())?;
        }
        if let Some(v) = self.eta {
            cfg.eta = v;
        }
        if let Some(v) = self.seed {
            cfg.seed = v;
        }
        if let Some(secs) = self.time_limit {
            cfg.time_limit =
                Some(Duration::try_from_secs_f64(secs).context("invalid --time-limit")?);
        }
        if self.no_complement_term {
            cfg.complement_term = false;
        }
        if self.workers.is_some() {
            cfg.workers = self.workers;
        }
        cfg.validate()?;
        Ok(cfg)
    }
}

fn parse_init(spec: &str, n: usize) -> Result<InitScheme> {
    match spec {
        "random" => Ok(InitScheme::Random),
        "degree" => Ok(InitScheme::Degree),
        _ => match spec.strip_prefix("mean:") {
            Some(path) => {
                let text = fs::read_to_string(path).with_context(|| format!("reading {path}"))?;
                let mean =
                    parse_mean_vector(&text, n).with_context(|| format!("parsing {path}"))?;
                Ok(InitScheme::ExternalMean(mean))
            }
            None => bail!("unknown init scheme `{spec}` (expected random, degree or mean:<file>)"),
        },
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum OutputArg {
    Json,
    Csv,
}

impl From<OutputArg> for ReportFormat {
    fn from(o: OutputArg) -> Self {
        match o {
            OutputArg::Json => ReportFormat::Json,
            OutputArg::Csv => ReportFormat::Csv,
        }
    }
}

#[derive(Args)]
struct SolveArgs {
    #[command(flatten)]
    input: GraphInput,
    #[command(flatten)]
    solver: SolverArgs,
    /// `json` for the full report, `csv` for the convergence trace.
    #[arg(long, value_enum, default_value = "json")]
    output: OutputArg,
    /// Write the report here instead of stdout.
    #[arg(long, short)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct GenArgs {
    #[command(subcommand)]
    model: GenModel,
    /// Output format.
    #[arg(long, value_enum, default_value = "edges", global = true)]
    format: FormatArg,
    /// Write the graph here instead of stdout.
    #[arg(long, short, global = true)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum GenModel {
    /// G(n, p).
    Er {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        p: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// G(n, m); `m` defaults to half of all pairs, rounded up.
    Gnm {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Args)]
struct OracleArgs {
    #[command(flatten)]
    input: GraphInput,
    /// Also list every maximum independent set (up to 16 nodes).
    #[arg(long)]
    all: bool,
}

#[derive(Args)]
struct CheckArgs {
    #[command(flatten)]
    input: GraphInput,
    /// Comma-separated 0-based node indices.
    #[arg(long, value_delimiter = ',', required = true)]
    set: Vec<usize>,
    /// Edge penalty for the fixed-point test.
    #[arg(long, default_value = "n")]
    gamma: GammaMode,
}

#[derive(Args)]
struct BenchArgs {
    /// Suite description (JSON).
    suite: PathBuf,
    /// Solve instances concurrently.
    #[arg(long)]
    parallel: bool,
    /// Override every instance's time limit, in seconds.
    #[arg(long)]
    time_limit: Option<f64>,
    /// Print the full JSON summary instead of a table.
    #[arg(long)]
    json: bool,
}

fn emit(text: &str, out: Option<&Path>) -> Result<()> {
    match out {
        Some(path) => fs::write(path, text).with_context(|| format!("writing {}", path.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn run_solve(args: SolveArgs) -> Result<()> {
    let g = args.input.load()?;
    let cfg = args.solver.config(&g)?;
    let report = solve(&g, &cfg)?;
    let meta = InstanceMeta::new(&g, args.input.graph.display().to_string(), None);
    let doc = ReportDocument::new(meta, &cfg, &report);
    emit(
        &write_report(&doc, args.output.into())?,
        args.out.as_deref(),
    )
}

fn run_gen(args: GenArgs) -> Result<()> {
    let g = match args.model {
        GenModel::Er { n, p, seed } => gen_er(n, p, seed)?,
        GenModel::Gnm { n, m, seed } => {
            gen_gnm(n, m.unwrap_or_else(|| gnm_half_density_edges(n)), seed)?
        }
    };
    emit(&write_graph(&g, args.format.into()), args.out.as_deref())
}

fn run_oracle(args: OracleArgs) -> Result<()> {
    let g = args.input.load()?;
    let r = exact_mis(&g, args.all)?;
    let greedy = greedy_min_degree(&g);
    let mut doc = json!({
        "n": g.n(),
        "m": g.m(),
        "optimum_size": r.optimum_size,
        "optimum": r.one_optimum,
        "greedy_size": greedy.len(),
        "greedy": greedy,
    });
    if let Some(all) = r.all_optima {
        doc["all_optima"] = json!(all);
    }
    println!("{}", serde_json::to_string_pretty(&doc)?);
    Ok(())
}

fn run_check(args: CheckArgs) -> Result<()> {
    let g = args.input.load()?;
    if let Some(&v) = args.set.iter().find(|&&v| v >= g.n()) {
        bail!("node {v} out of range for a graph with {} nodes", g.n());
    }
    let set = NodeSet::from_unsorted(args.set);
    let z = BinaryVector::indicator(&set, g.n());
    let params = gamma_select(&g, args.gamma)?;
    let doc = json!({
        "set": set,
        "independent": g.is_independent(&set),
        "maximal_independent": direct_mis_check(&g, &z),
        "fixed_point": fast_mis_check(&g, &params, &z)?,
        "gamma": params.gamma(),
        "fixed_point_is_exact": params.boundary_check_is_exact(g.n()),
    });
    println!("{}", serde_json::to_string_pretty(&doc)?);
    Ok(())
}

fn run_bench(args: BenchArgs) -> Result<()> {
    let text = fs::read_to_string(&args.suite)
        .with_context(|| format!("reading {}", args.suite.display()))?;
    let mut spec: SuiteSpec =
        serde_json::from_str(&text).with_context(|| format!("parsing {}", args.suite.display()))?;
    spec.parallel_instances |= args.parallel;
    if args.time_limit.is_some() {
        spec.time_limit_secs = args.time_limit;
    }
    let summary = bench_suite(&spec)?;
    if args.json {
        println!("{}", serde_json::to_string_pretty(&summary)?);
    } else {
        print!("{}", summary_table(&summary));
    }
    Ok(())
}

fn main() -> ExitCode {
    let result = match Cli::parse().command {
        Command::Solve(a) => run_solve(a),
        Command::Gen(a) => run_gen(a),
        Command::Oracle(a) => run_oracle(a),
        Command::Check(a) => run_check(a),
        Command::Bench(a) => run_bench(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
