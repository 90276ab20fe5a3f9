use std::fs::File;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use subcover::harness::{run_baseline, run_experiment_on, write_csv, Algorithm, ExperimentConfig, TauMode};
use subcover::ingest::{load_dataset, DatasetSpec};
use subcover::usm::UsmKind;
use subcover::Error;

#[derive(Parser)]
#[command(name = "subcover", version, about = "Streaming bicriteria submodular cover and knapsack maximization")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the randomized double greedy baseline and print f0, c0, q0.
    Baseline(Common),
    /// Multi-pass submodular cover.
    CoverMulti(Common),
    /// One-pass submodular cover.
    CoverSingle(Common),
    /// One-pass knapsack-constrained maximization.
    KcsmSingleMax(Common),
    /// Several algorithms over the same ε, τ and κ grid.
    Sweep {
        #[command(flatten)]
        common: Common,
        /// Comma-separated list of multi, single, singlemax, dg-baseline.
        #[arg(long, value_delimiter = ',', default_value = "multi,single")]
        algorithms: Vec<String>,
    },
}

#[derive(Args)]
struct Common {
    /// snap:<path>, tagged:<path>, tagged-cost:<path> or synth:<kind>:k=v,..
    #[arg(long)]
    dataset: String,
    /// Tab-separated element id and cost per line.
    #[arg(long)]
    cost_file: Option<PathBuf>,
    #[arg(long, value_delimiter = ',')]
    epsilon: Vec<f64>,
    /// Absolute thresholds.
    #[arg(long, value_delimiter = ',', conflicts_with = "tau_frac")]
    tau: Vec<f64>,
    /// Thresholds as fractions of the baseline value f0.
    #[arg(long, value_delimiter = ',')]
    tau_frac: Vec<f64>,
    /// Upper bound on the optimal cost for one-pass cover.
    #[arg(long)]
    upper_bound: Option<f64>,
    #[arg(long, value_delimiter = ',')]
    kappa: Vec<f64>,
    /// dg, dg-det, rs, ls or exact.
    #[arg(long)]
    usm: Option<String>,
    #[arg(long, default_value_t = 50)]
    reps: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// CSV destination; stdout when absent.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Exit with status 4 when any row is not feasible.
    #[arg(long)]
    require_feasible: bool,
    /// Record wall time in milliseconds.
    #[arg(long)]
    wall_time: bool,
}

enum Failure {
    Config(String),
    Dataset(String),
    Infeasible,
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Config(_) => 2,
            Failure::Dataset(_) => 3,
            Failure::Infeasible => 4,
        }
    }
}

fn config_error(e: Error) -> Failure {
    Failure::Config(e.to_string())
}

fn build_config(common: &Common, algorithms: Vec<Algorithm>) -> Result<ExperimentConfig, Failure> {
    let dataset: DatasetSpec = common.dataset.parse().map_err(config_error)?;
    let mut config = ExperimentConfig::new(dataset);
    config.cost_file = common.cost_file.clone();
    config.algorithms = algorithms;
    config.usm = common.usm.as_deref().map(str::parse::<UsmKind>).transpose().map_err(config_error)?;
    config.repetitions = common.reps;
    config.seed = common.seed;
    config.epsilons = common.epsilon.clone();
    config.tau = if !common.tau.is_empty() {
        Some(TauMode::Absolute(common.tau.clone()))
    } else if !common.tau_frac.is_empty() {
        Some(TauMode::FractionOfF0(common.tau_frac.clone()))
    } else {
        None
    };
    config.upper_bound = common.upper_bound;
    config.kappa = common.kappa.clone();
    config.record_wall_time = common.wall_time;
    config.validate().map_err(config_error)?;
    Ok(config)
}

fn output(common: &Common) -> Result<Box<dyn Write>, Failure> {
    match &common.out {
        Some(path) => File::create(path)
            .map(|f| Box::new(f) as Box<dyn Write>)
            .map_err(|e| Failure::Config(format!("cannot create {}: {e}", path.display()))),
        None => Ok(Box::new(io::stdout().lock())),
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    let (common, algorithms) = match &cli.command {
        Command::Baseline(c) => (c, vec![Algorithm::Baseline]),
        Command::CoverMulti(c) => (c, vec![Algorithm::Multi]),
        Command::CoverSingle(c) => (c, vec![Algorithm::Single]),
        Command::KcsmSingleMax(c) => (c, vec![Algorithm::SingleMax]),
        Command::Sweep { common, algorithms } => {
            let parsed = algorithms.iter().map(|a| a.parse()).collect::<Result<Vec<Algorithm>, Error>>().map_err(config_error)?;
            (common, parsed)
        }
    };
    let config = build_config(common, algorithms)?;
    let dataset = load_dataset(&config.dataset, config.cost_file.as_deref()).map_err(|e| Failure::Dataset(e.to_string()))?;
    if matches!(cli.command, Command::Baseline(_)) && common.out.is_none() {
        let b = run_baseline(&dataset, config.repetitions, config.seed).map_err(config_error)?;
        println!("f0={} c0={} q0={}", b.f0, b.c0, b.q0);
        return Ok(());
    }
    let rows = run_experiment_on(&config, &dataset).map_err(config_error)?;
    write_csv(&rows, output(common)?).map_err(|e| Failure::Config(e.to_string()))?;
    if common.require_feasible && rows.iter().any(|r| !r.feasible || !r.error.is_empty()) {
        return Err(Failure::Infeasible);
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            match &f {
                Failure::Config(m) => eprintln!("error: {m}"),
                Failure::Dataset(m) => eprintln!("dataset error: {m}"),
                Failure::Infeasible => eprintln!("error: a result was flagged infeasible"),
            }
            ExitCode::from(f.code())
        }
    }
}
