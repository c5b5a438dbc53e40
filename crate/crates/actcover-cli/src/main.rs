//! `actcover`: generate, reduce, solve, verify, and benchmark activation
//! edge-multicover instances from the command line.
//!
//! Exit codes: 0 success, 1 input error, 2 infeasible instance,
//! 3 verification failure, 4 bound violation.

mod commands;
mod compare;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use actcover::{Error, SolveConfig};

#[derive(Parser)]
#[command(name = "actcover", version, about = "Activation edge-multicover toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a random instance and write its canonical JSON
    Gen(GenArgs),
    /// Rewrite an instance through one of the solver's reductions
    Reduce(ReduceArgs),
    /// Solve an instance and write the report JSON
    Solve(SolveArgs),
    /// Recheck a solution file against its instance
    Verify(VerifyArgs),
    /// Compute the exact optimum by branch and bound (small instances)
    Oracle(OracleArgs),
    /// Solve a directory of instances and emit a CSV against the oracle
    Compare(CompareArgs),
}

#[derive(Args)]
struct GenArgs {
    /// Number of nodes
    #[arg(long)]
    n: usize,
    /// Number of edges
    #[arg(long)]
    m: usize,
    /// Requirements are drawn uniformly from 0..=k_max, then clipped
    #[arg(long, default_value_t = 1)]
    k_max: usize,
    /// Target per-edge cost ratio; accepts plain numbers or "inf"
    #[arg(long, default_value_t = 1.0)]
    theta: f64,
    /// Upper end of the base cost range
    #[arg(long, default_value_t = 100)]
    cost_scale: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Only generate edges crossing a fixed bisection of the nodes
    #[arg(long)]
    bipartite: bool,
    /// Output file; standard output when omitted
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ReduceMode {
    /// Split every node into a center copy and a covered copy
    DoubleCover,
    /// Quantize costs under a cost ceiling
    Scale,
}

#[derive(Args)]
struct ReduceArgs {
    #[arg(long = "in")]
    input: PathBuf,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = ReduceMode::DoubleCover)]
    mode: ReduceMode,
    /// Cost ceiling (scale mode): edges with a more expensive endpoint are dropped
    #[arg(long, required_if_eq("mode", "scale"))]
    ceiling: Option<f64>,
    /// Ratio target the scaled costs are budgeted for (scale mode)
    #[arg(long, default_value_t = 1.0)]
    rho: f64,
    /// Accuracy of the quantization (scale mode)
    #[arg(long, default_value_t = 0.25)]
    eps: f64,
}

/// Solver knobs shared by `solve` and `compare`.
#[derive(Args)]
struct SolverFlags {
    /// Covered-side budget multiplier
    #[arg(long, default_value_t = 2.0)]
    gamma: f64,
    /// Slack granted to the per-round coverage subsolver
    #[arg(long, default_value_t = 0.5 - std::f64::consts::E.recip())]
    epsilon: f64,
    /// Never rewrite costs, whatever the instance's cost ratios
    #[arg(long)]
    no_scale: bool,
    /// Accuracy of the cost-scaling pass
    #[arg(long, default_value_t = 0.25)]
    scaling_eps: f64,
    /// Solve each round's coverage subproblem exactly (small pools only)
    #[arg(long)]
    exact_inner: bool,
}

impl SolverFlags {
    fn config(&self) -> Result<SolveConfig, Failure> {
        let mut cfg = SolveConfig::with_parameters(self.gamma, self.epsilon).map_err(lib_failure)?;
        cfg.enable_scaling = !self.no_scale;
        cfg.scaling_eps = self.scaling_eps;
        cfg.use_exact_inner = self.exact_inner;
        cfg.validate().map_err(lib_failure)?;
        Ok(cfg)
    }
}

#[derive(Args)]
struct SolveArgs {
    #[arg(long = "in")]
    input: PathBuf,
    #[arg(long)]
    out: Option<PathBuf>,
    #[command(flatten)]
    solver: SolverFlags,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long)]
    instance: PathBuf,
    #[arg(long)]
    solution: PathBuf,
}

#[derive(Args)]
struct OracleArgs {
    #[arg(long = "in")]
    input: PathBuf,
    #[arg(long)]
    out: Option<PathBuf>,
    /// Refuse instances with more edges than this
    #[arg(long, default_value_t = 24)]
    oracle_guard: usize,
}

#[derive(Args)]
struct CompareArgs {
    /// Directory whose *.json files are the instances
    #[arg(long)]
    dir: PathBuf,
    /// CSV output; standard output when omitted
    #[arg(long)]
    out: Option<PathBuf>,
    /// Skip the oracle (empty opt/ratio columns) above this edge count
    #[arg(long, default_value_t = 24)]
    oracle_guard: usize,
    #[command(flatten)]
    solver: SolverFlags,
}

/// A command failure carrying its exit code.
enum Failure {
    Input(String),
    Infeasible(String),
    Verification(String),
    Bound(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Input(_) => 1,
            Failure::Infeasible(_) => 2,
            Failure::Verification(_) => 3,
            Failure::Bound(_) => 4,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Input(m) | Failure::Infeasible(m) | Failure::Verification(m) | Failure::Bound(m) => m,
        }
    }
}

fn lib_failure(e: Error) -> Failure {
    match e {
        Error::Infeasible { .. } | Error::InfeasibleAtCeiling { .. } => Failure::Infeasible(e.to_string()),
        other => Failure::Input(other.to_string()),
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Gen(args) => commands::gen(&args),
        Command::Reduce(args) => commands::reduce(&args),
        Command::Solve(args) => commands::solve(&args),
        Command::Verify(args) => commands::verify(&args),
        Command::Oracle(args) => commands::oracle(&args),
        Command::Compare(args) => compare::compare(&args),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let ok = e.exit_code() == 0;
            let _ = e.print();
            return if ok { ExitCode::SUCCESS } else { ExitCode::from(1) };
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(failure) => {
            eprintln!("error: {}", failure.message());
            ExitCode::from(failure.code())
        }
    }
}
