//! Command-line experiment harness for the `tsp-qls` library.
//!
//! Exit status: 0 on success, 2 on configuration errors (bad flags, bad
//! instance content, invalid cluster counts), 3 on I/O errors.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use tsp_qls::experiment::{emit_report, run_experiment, ExperimentSettings, ReportFormat};
use tsp_qls::search::SolverBackend;
use tsp_qls::slicing::Strategy;
use tsp_qls::solver::SaParams;
use tsp_qls::tsplib::parse_instance;
use tsp_qls::Error;

#[derive(Parser)]
#[command(name = "tsp-qls", version, about = "Path-sliced local search for TSP instances")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a batch of search experiments on one TSPLIB instance.
    Solve(SolveArgs),
}

#[derive(Args)]
struct SolveArgs {
    /// TSPLIB .tsp instance file.
    #[arg(long)]
    instance: PathBuf,

    /// Slicing strategy: kmeans|anti-kmeans|random|hybrid|hybrid-anti.
    #[arg(long)]
    strategy: String,

    /// Number of slices per iteration (k).
    #[arg(long)]
    clusters: usize,

    /// Local-search iterations per run.
    #[arg(long, default_value_t = 100)]
    iterations: usize,

    /// Independent runs; run i uses seed + i.
    #[arg(long, default_value_t = 100)]
    runs: usize,

    /// Base RNG seed.
    #[arg(long, default_value_t = 0)]
    seed: u64,

    /// Subproblem solver: sa|exact.
    #[arg(long, default_value = "sa")]
    solver: String,

    /// Annealing sweeps per read.
    #[arg(long, default_value_t = 1000)]
    sweeps: usize,

    /// Annealing reads (restarts) per subproblem.
    #[arg(long, default_value_t = 10)]
    reads: usize,

    /// Report file; stdout when omitted.
    #[arg(long)]
    output: Option<PathBuf>,

    /// Report format: json|csv.
    #[arg(long, default_value = "json")]
    format: String,

    /// Include per-iteration length traces in the report.
    #[arg(long)]
    trace: bool,

    /// Run experiments (and slice solves) concurrently.
    #[arg(long)]
    parallel: bool,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let Command::Solve(args) = cli.command;
    match solve(&args) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(exit_code_for(&err))
        }
    }
}

fn exit_code_for(err: &Error) -> u8 {
    match err {
        Error::Io(_) => 3,
        _ => 2,
    }
}

fn solve(args: &SolveArgs) -> Result<(), Error> {
    let strategy: Strategy = args.strategy.parse()?;
    let solver: SolverBackend = args.solver.parse()?;
    let format: ReportFormat = args.format.parse()?;

    let content = std::fs::read_to_string(&args.instance)?;
    let instance = parse_instance(&content)?;

    let settings = ExperimentSettings {
        strategy,
        clusters: args.clusters,
        iterations: args.iterations,
        runs: args.runs,
        seed: args.seed,
        solver,
        sa_params: SaParams { sweeps: args.sweeps, reads: args.reads, ..Default::default() },
        parallel: args.parallel,
        collect_traces: args.trace,
    };
    let report = run_experiment(&instance, &settings)?;
    let rendered = emit_report(&report, format);

    match &args.output {
        Some(path) => std::fs::write(path, rendered)?,
        None => print!("{rendered}"),
    }
    Ok(())
}
