//! Experiment harness: a double greedy baseline for normalization, then one
//! CSV row per (algorithm, ε, τ or κ) cell.

use std::fmt;
use std::io::Write;
use std::path::PathBuf;
use std::str::FromStr;
use std::time::Instant;

use serde::Serialize;

use crate::cover::{multi, multi_bounds, single_bounds, single_max_bounds, single_with, BoundReport, CoverInstance, SingleOptions};
use crate::error::{Error, Result};
use crate::ingest::{load_dataset, Dataset, DatasetSpec};
use crate::kcsm::{single_max, KcsmInstance};
use crate::objectives::{InstrumentedOracle, SubmodularOracle};
use crate::usm::{UsmAlgorithm, UsmKind, DEFAULT_REPETITIONS};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Algorithm {
    Baseline,
    Multi,
    Single,
    SingleMax,
}

impl Algorithm {
    pub fn label(self) -> &'static str {
        match self {
            Algorithm::Baseline => "dg-baseline",
            Algorithm::Multi => "multi",
            Algorithm::Single => "single",
            Algorithm::SingleMax => "singlemax",
        }
    }

    /// USM routine used when none is configured.
    pub fn default_usm(self) -> UsmKind {
        match self {
            Algorithm::Single => UsmKind::RandomSet,
            _ => UsmKind::DoubleGreedy,
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl FromStr for Algorithm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "dg-baseline" | "baseline" => Ok(Algorithm::Baseline),
            "multi" => Ok(Algorithm::Multi),
            "single" => Ok(Algorithm::Single),
            "singlemax" | "single-max" => Ok(Algorithm::SingleMax),
            other => Err(Error::Config(format!("unknown algorithm '{other}'"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum TauMode {
    Absolute(Vec<f64>),
    /// Fractions of the baseline value `f0`.
    FractionOfF0(Vec<f64>),
}

#[derive(Debug, Clone)]
pub struct ExperimentConfig {
    pub dataset: DatasetSpec,
    pub cost_file: Option<PathBuf>,
    pub algorithms: Vec<Algorithm>,
    /// Overrides each algorithm's default routine.
    pub usm: Option<UsmKind>,
    pub repetitions: usize,
    pub seed: u64,
    pub epsilons: Vec<f64>,
    pub tau: Option<TauMode>,
    /// Upper bound on OPT for the one-pass cover driver; without it a
    /// preliminary pass sets it to `w(U)`.
    pub upper_bound: Option<f64>,
    pub kappa: Vec<f64>,
    /// Report wall time; off by default so output is reproducible.
    pub record_wall_time: bool,
}

impl ExperimentConfig {
    pub fn new(dataset: DatasetSpec) -> Self {
        Self {
            dataset,
            cost_file: None,
            algorithms: Vec::new(),
            usm: None,
            repetitions: DEFAULT_REPETITIONS,
            seed: 0,
            epsilons: Vec::new(),
            tau: None,
            upper_bound: None,
            kappa: Vec::new(),
            record_wall_time: false,
        }
    }

    pub fn usm_for(&self, algorithm: Algorithm) -> UsmAlgorithm {
        let kind = self.usm.unwrap_or_else(|| algorithm.default_usm());
        UsmAlgorithm { repetitions: self.repetitions, seed: self.seed, ..UsmAlgorithm::new(kind) }
    }

    pub fn validate(&self) -> Result<()> {
        if self.algorithms.is_empty() {
            return Err(Error::Config("no algorithm selected".into()));
        }
        let cover = self.algorithms.iter().any(|a| matches!(a, Algorithm::Multi | Algorithm::Single));
        let algorithmic = self.algorithms.iter().any(|a| *a != Algorithm::Baseline);
        if algorithmic && self.epsilons.is_empty() {
            return Err(Error::Config("at least one epsilon is required".into()));
        }
        if let Some(e) = self.epsilons.iter().find(|e| !(**e > 0.0 && **e < 1.0)) {
            return Err(Error::Config(format!("epsilon must lie in (0, 1), got {e}")));
        }
        if cover {
            match &self.tau {
                None => return Err(Error::Config("cover algorithms need --tau or --tau-frac".into())),
                Some(TauMode::Absolute(v) | TauMode::FractionOfF0(v)) => {
                    if v.is_empty() {
                        return Err(Error::Config("threshold list is empty".into()));
                    }
                    if let Some(t) = v.iter().find(|t| !t.is_finite()) {
                        return Err(Error::Config(format!("threshold must be finite, got {t}")));
                    }
                }
            }
        }
        if self.algorithms.contains(&Algorithm::SingleMax) {
            if self.kappa.is_empty() {
                return Err(Error::Config("single-max needs --kappa".into()));
            }
            if let Some(k) = self.kappa.iter().find(|k| !(**k > 0.0 && k.is_finite())) {
                return Err(Error::Config(format!("budget must be positive, got {k}")));
            }
        }
        if let Some(b) = self.upper_bound {
            if !(b > 0.0 && b.is_finite()) {
                return Err(Error::Config(format!("upper bound must be positive, got {b}")));
            }
        }
        if self.repetitions == 0 {
            return Err(Error::Config("repetitions must be at least 1".into()));
        }
        Ok(())
    }
}

/// Value, cost and query count of the baseline run.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Baseline {
    pub f0: f64,
    pub c0: f64,
    pub q0: u64,
}

/// Best of `repetitions` randomized double greedy runs over the whole
/// universe. `q0` counts every query of the phase, including the final
/// evaluation.
pub fn run_baseline(dataset: &Dataset<f64>, repetitions: usize, seed: u64) -> Result<Baseline> {
    let oracle = InstrumentedOracle::new(&dataset.objective);
    let usm = UsmAlgorithm::double_greedy(repetitions, seed);
    let set = usm.run(&oracle, dataset.universe.order())?;
    let f0 = oracle.evaluate(&set);
    Ok(Baseline { f0, c0: dataset.universe.cost_of(&set), q0: oracle.queries() })
}

/// One CSV row. Normalized columns are 0 when their divisor is 0; bound
/// columns are empty when the bound is undefined or not finite.
#[derive(Debug, Clone, Serialize, PartialEq)]
pub struct ExperimentRow {
    pub dataset: String,
    pub algorithm: String,
    pub usm: String,
    pub epsilon: f64,
    pub tau_abs: f64,
    pub tau_norm: f64,
    pub kappa: f64,
    pub upper_bound: f64,
    pub upper_bound_source: String,
    pub f: f64,
    pub f_norm: f64,
    pub cost: f64,
    pub cost_norm: f64,
    pub queries: u64,
    pub queries_norm: f64,
    pub passes: u32,
    pub peak_stored_cost: f64,
    pub peak_stored_norm: f64,
    pub feasible: bool,
    pub seed: u64,
    pub wall_ms: u64,
    pub f0: f64,
    pub c0: f64,
    pub q0: u64,
    pub bound_opt: Option<f64>,
    pub bound_cost: Option<f64>,
    pub bound_passes: Option<f64>,
    pub bound_peak_stored: Option<f64>,
    pub bound_queries: Option<f64>,
    pub error: String,
}

fn ratio(a: f64, b: f64) -> f64 {
    if b == 0.0 {
        0.0
    } else {
        a / b
    }
}

fn finite(x: f64) -> Option<f64> {
    x.is_finite().then_some(x)
}

struct Cell {
    algorithm: Algorithm,
    epsilon: f64,
    tau: f64,
    kappa: f64,
}

struct Outcome {
    f: f64,
    cost: f64,
    queries: u64,
    passes: u32,
    peak: f64,
    feasible: bool,
    upper_bound: f64,
    upper_bound_source: &'static str,
    bound_opt: Option<f64>,
    bounds: Option<BoundReport>,
    per_element_scale: f64,
}

fn run_cell(config: &ExperimentConfig, dataset: &Dataset<f64>, base: &Baseline, cell: &Cell) -> Result<Outcome> {
    let universe = &dataset.universe;
    let oracle: &dyn SubmodularOracle<f64> = &dataset.objective;
    let usm = config.usm_for(cell.algorithm);
    let n = universe.len();
    let w_min = universe.w_min();
    // Any set known to reach τ bounds OPT from above.
    let opt_upper = if base.f0 >= cell.tau { Some(base.c0.max(w_min)) } else { None };
    match cell.algorithm {
        Algorithm::Baseline => Ok(Outcome {
            f: base.f0,
            cost: base.c0,
            queries: base.q0,
            passes: 1,
            peak: 0.0,
            feasible: true,
            upper_bound: 0.0,
            upper_bound_source: "",
            bound_opt: None,
            bounds: None,
            per_element_scale: 1.0,
        }),
        Algorithm::Multi => {
            let instance = CoverInstance::new(universe, oracle, cell.tau)?;
            let s = multi(&instance, cell.epsilon, &usm)?;
            let bounds = opt_upper.map(|opt| multi_bounds(cell.epsilon, opt, w_min, n, &usm));
            Ok(Outcome {
                f: s.value,
                cost: s.cost,
                queries: s.metrics.queries,
                passes: s.metrics.passes,
                peak: s.metrics.peak_stored_cost,
                feasible: s.feasible,
                upper_bound: 0.0,
                upper_bound_source: "",
                bound_opt: opt_upper,
                bounds,
                per_element_scale: 1.0,
            })
        }
        Algorithm::Single => {
            let (b, source, extra_pass) = match config.upper_bound {
                Some(b) => (b, "given", 0),
                None => (universe.total_cost(), "preliminary", 1),
            };
            let instance = CoverInstance::new(universe, oracle, cell.tau)?;
            let (s, _) = single_with(&instance, cell.epsilon, b, &usm, SingleOptions::default())?;
            let bounds = s.metrics.xi.map(|xi| single_bounds(cell.epsilon, b, cell.tau, xi, w_min, n, &usm));
            Ok(Outcome {
                f: s.value,
                cost: s.cost,
                queries: s.metrics.queries,
                passes: s.metrics.passes + extra_pass,
                peak: s.metrics.peak_stored_cost,
                feasible: s.feasible,
                upper_bound: b,
                upper_bound_source: source,
                bound_opt: Some(b),
                bounds,
                per_element_scale: n as f64,
            })
        }
        Algorithm::SingleMax => {
            let instance = KcsmInstance::new(universe, oracle, cell.kappa)?;
            let s = single_max(&instance, cell.epsilon, &usm)?;
            Ok(Outcome {
                f: s.value,
                cost: s.cost,
                queries: s.metrics.queries,
                passes: s.metrics.passes,
                peak: s.metrics.peak_stored_cost,
                feasible: s.feasible,
                upper_bound: 0.0,
                upper_bound_source: "",
                bound_opt: None,
                bounds: Some(single_max_bounds(cell.epsilon, cell.kappa, w_min, n, &usm)),
                per_element_scale: 1.0,
            })
        }
    }
}

fn cells(config: &ExperimentConfig, base: &Baseline) -> Vec<Cell> {
    let taus: Vec<f64> = match &config.tau {
        Some(TauMode::Absolute(v)) => v.clone(),
        Some(TauMode::FractionOfF0(v)) => v.iter().map(|x| x * base.f0).collect(),
        None => Vec::new(),
    };
    let mut algorithms = config.algorithms.clone();
    algorithms.sort_unstable();
    algorithms.dedup();
    let mut epsilons = config.epsilons.clone();
    epsilons.sort_by(f64::total_cmp);
    epsilons.dedup();
    let mut out = Vec::new();
    for algorithm in algorithms {
        match algorithm {
            Algorithm::Baseline => out.push(Cell { algorithm, epsilon: 0.0, tau: 0.0, kappa: 0.0 }),
            Algorithm::Multi | Algorithm::Single => {
                for &epsilon in &epsilons {
                    for &tau in &taus {
                        out.push(Cell { algorithm, epsilon, tau, kappa: 0.0 });
                    }
                }
            }
            Algorithm::SingleMax => {
                for &epsilon in &epsilons {
                    for &kappa in &config.kappa {
                        out.push(Cell { algorithm, epsilon, tau: 0.0, kappa });
                    }
                }
            }
        }
    }
    out
}

/// Runs the baseline and then every cell. A failing cell becomes a row with
/// the `error` column set.
pub fn run_experiment(config: &ExperimentConfig) -> Result<Vec<ExperimentRow>> {
    config.validate()?;
    let dataset: Dataset<f64> = load_dataset(&config.dataset, config.cost_file.as_deref())?;
    run_experiment_on(config, &dataset)
}

pub fn run_experiment_on(config: &ExperimentConfig, dataset: &Dataset<f64>) -> Result<Vec<ExperimentRow>> {
    config.validate()?;
    let base = run_baseline(dataset, config.repetitions, config.seed)?;
    let n = dataset.universe.len() as f64;
    let mut rows = Vec::new();
    for cell in cells(config, &base) {
        let usm = if cell.algorithm == Algorithm::Baseline { UsmKind::DoubleGreedy } else { config.usm_for(cell.algorithm).kind };
        let started = Instant::now();
        let result = run_cell(config, dataset, &base, &cell);
        let wall_ms = if config.record_wall_time { started.elapsed().as_millis() as u64 } else { 0 };
        let mut row = ExperimentRow {
            dataset: dataset.name.clone(),
            algorithm: cell.algorithm.label().to_owned(),
            usm: usm.label().to_owned(),
            epsilon: cell.epsilon,
            tau_abs: cell.tau,
            tau_norm: ratio(cell.tau, base.f0),
            kappa: cell.kappa,
            upper_bound: 0.0,
            upper_bound_source: String::new(),
            f: 0.0,
            f_norm: 0.0,
            cost: 0.0,
            cost_norm: 0.0,
            queries: 0,
            queries_norm: 0.0,
            passes: 0,
            peak_stored_cost: 0.0,
            peak_stored_norm: 0.0,
            feasible: false,
            seed: config.seed,
            wall_ms,
            f0: base.f0,
            c0: base.c0,
            q0: base.q0,
            bound_opt: None,
            bound_cost: None,
            bound_passes: None,
            bound_peak_stored: None,
            bound_queries: None,
            error: String::new(),
        };
        match result {
            Ok(o) => {
                row.upper_bound = o.upper_bound;
                row.upper_bound_source = o.upper_bound_source.to_owned();
                row.f = o.f;
                row.f_norm = ratio(o.f, base.f0);
                row.cost = o.cost;
                row.cost_norm = ratio(o.cost, base.c0);
                row.queries = o.queries;
                row.queries_norm = ratio(o.queries as f64, base.q0 as f64);
                row.passes = o.passes;
                row.peak_stored_cost = o.peak;
                row.peak_stored_norm = ratio(o.peak, n);
                row.feasible = o.feasible;
                row.bound_opt = o.bound_opt.and_then(finite);
                if let Some(b) = o.bounds {
                    row.bound_cost = finite(b.cost);
                    row.bound_passes = b.passes.and_then(finite);
                    row.bound_peak_stored = finite(b.peak_stored);
                    row.bound_queries = finite(b.queries * o.per_element_scale);
                }
            }
            Err(e) => row.error = e.to_string(),
        }
        rows.push(row);
    }
    Ok(rows)
}

pub fn write_csv(rows: &[ExperimentRow], out: impl Write) -> Result<()> {
    let mut writer = csv::Writer::from_writer(out);
    for row in rows {
        writer.serialize(row)?;
    }
    writer.flush()?;
    Ok(())
}
