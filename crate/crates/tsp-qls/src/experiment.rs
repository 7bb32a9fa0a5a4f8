//! Batch experiment harness: many independent search runs over one
//! instance, aggregated into a machine-readable report.
//!
//! Run `i` uses master seed `seed + i`, so a report is a pure function of
//! (instance, settings) whether or not the runs execute concurrently.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::search::{run_qls, QlsConfig, QlsTrace, SolverBackend};
use crate::slicing::Strategy;
use crate::solver::SaParams;
use crate::tsplib::Instance;

/// Settings for one experiment batch.
#[derive(Debug, Clone)]
pub struct ExperimentSettings {
    pub strategy: Strategy,
    pub clusters: usize,
    pub iterations: usize,
    pub runs: usize,
    /// Base seed; run `i` gets `seed + i`.
    pub seed: u64,
    pub solver: SolverBackend,
    pub sa_params: SaParams,
    /// Execute runs (and slice solves within each run) concurrently.
    pub parallel: bool,
    /// Include per-iteration length traces in the report.
    pub collect_traces: bool,
}

impl Default for ExperimentSettings {
    fn default() -> Self {
        ExperimentSettings {
            strategy: Strategy::Hybrid,
            clusters: 2,
            iterations: 100,
            runs: 100,
            seed: 0,
            solver: SolverBackend::Sa,
            sa_params: SaParams::default(),
            parallel: false,
            collect_traces: false,
        }
    }
}

/// Variable-count statistics over every solved subproblem of a batch.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SubproblemStats {
    pub mean: f64,
    pub min: usize,
    pub max: usize,
    /// Number of solved subproblems the statistics cover.
    pub solved: usize,
}

/// Aggregated outcome of an experiment batch.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentReport {
    pub instance: String,
    pub strategy: String,
    pub clusters: usize,
    pub iterations: usize,
    pub runs: usize,
    pub seed: u64,
    pub solver: String,
    /// `n^2`: variables a monolithic closed-tour encoding would need.
    pub full_problem_variables: usize,
    /// Best (= final) tour length per run, in run order.
    pub per_run_best: Vec<f64>,
    pub min: f64,
    pub mean: f64,
    /// Population standard deviation over the per-run best lengths.
    pub std: f64,
    pub subproblems: SubproblemStats,
    /// Per-run length series (initial length, then one value per iteration);
    /// omitted unless traces were collected.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub traces: Option<Vec<Vec<f64>>>,
}

/// Runs `settings.runs` independent searches and aggregates them.
pub fn run_experiment(instance: &Instance, settings: &ExperimentSettings) -> Result<ExperimentReport> {
    if settings.runs < 1 {
        return Err(Error::InvalidConfig("runs must be at least 1".into()));
    }
    let config_for = |run: usize| QlsConfig {
        strategy: settings.strategy,
        clusters: settings.clusters,
        iterations: settings.iterations,
        solver: settings.solver,
        sa_params: settings.sa_params.clone(),
        seed: settings.seed.wrapping_add(run as u64),
        parallel_slices: settings.parallel,
        record_tours: false,
    };

    let traces: Vec<QlsTrace> = if settings.parallel {
        (0..settings.runs)
            .into_par_iter()
            .map(|run| run_qls(instance, &config_for(run)))
            .collect::<Result<_>>()?
    } else {
        (0..settings.runs)
            .map(|run| run_qls(instance, &config_for(run)))
            .collect::<Result<_>>()?
    };

    let per_run_best: Vec<f64> = traces.iter().map(|t| t.best_length()).collect();
    let min = per_run_best.iter().copied().fold(f64::INFINITY, f64::min);
    let mean = per_run_best.iter().sum::<f64>() / per_run_best.len() as f64;
    let variance =
        per_run_best.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / per_run_best.len() as f64;
    let std = variance.sqrt();

    let mut solved = 0usize;
    let mut var_sum = 0usize;
    let mut var_min = usize::MAX;
    let mut var_max = 0usize;
    for trace in &traces {
        for record in &trace.iterations {
            for slice in &record.slices {
                solved += 1;
                var_sum += slice.variables;
                var_min = var_min.min(slice.variables);
                var_max = var_max.max(slice.variables);
            }
        }
    }
    let subproblems = SubproblemStats {
        mean: if solved > 0 { var_sum as f64 / solved as f64 } else { 0.0 },
        min: if solved > 0 { var_min } else { 0 },
        max: var_max,
        solved,
    };

    let collected = settings
        .collect_traces
        .then(|| traces.iter().map(|t| t.length_series()).collect::<Vec<_>>());

    Ok(ExperimentReport {
        instance: instance.name().to_string(),
        strategy: settings.strategy.to_string(),
        clusters: settings.clusters,
        iterations: settings.iterations,
        runs: settings.runs,
        seed: settings.seed,
        solver: settings.solver.to_string(),
        full_problem_variables: instance.dimension() * instance.dimension(),
        per_run_best,
        min,
        mean,
        std,
        subproblems,
        traces: collected,
    })
}

/// Output format of [`emit_report`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReportFormat {
    Json,
    Csv,
}

impl std::str::FromStr for ReportFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "json" => Ok(ReportFormat::Json),
            "csv" => Ok(ReportFormat::Csv),
            other => {
                Err(Error::InvalidConfig(format!("unsupported format `{other}` (expected json|csv)")))
            }
        }
    }
}

/// Renders a report. JSON round-trips losslessly through
/// [`parse_json_report`]; CSV carries one row per run, a summary row, and
/// (when traces were collected) one row per traced iteration.
pub fn emit_report(report: &ExperimentReport, format: ReportFormat) -> String {
    match format {
        ReportFormat::Json => {
            let mut text = serde_json::to_string_pretty(report).expect("report serializes");
            text.push('\n');
            text
        }
        ReportFormat::Csv => emit_csv(report),
    }
}

/// Parses a JSON report back (the emit/parse pair is byte-stable).
pub fn parse_json_report(text: &str) -> Result<ExperimentReport> {
    serde_json::from_str(text).map_err(|e| Error::InvalidConfig(format!("bad report JSON: {e}")))
}

fn emit_csv(report: &ExperimentReport) -> String {
    let mut out = String::from(
        "instance,strategy,clusters,record,run,seed,iteration,length,min,mean,std,subproblem_mean,subproblem_min,subproblem_max,full_problem_variables\n",
    );
    let prefix = format!("{},{},{}", report.instance, report.strategy, report.clusters);
    for (run, best) in report.per_run_best.iter().enumerate() {
        let seed = report.seed.wrapping_add(run as u64);
        out.push_str(&format!("{prefix},run,{run},{seed},,{best},,,,,,,\n"));
    }
    out.push_str(&format!(
        "{prefix},summary,,,,,{},{},{},{},{},{},{}\n",
        report.min,
        report.mean,
        report.std,
        report.subproblems.mean,
        report.subproblems.min,
        report.subproblems.max,
        report.full_problem_variables,
    ));
    if let Some(traces) = &report.traces {
        for (run, series) in traces.iter().enumerate() {
            for (iteration, length) in series.iter().enumerate() {
                out.push_str(&format!("{prefix},trace,{run},,{iteration},{length},,,,,,,\n"));
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tsplib::parse_instance;

    fn tiny_settings() -> ExperimentSettings {
        ExperimentSettings {
            strategy: Strategy::Hybrid,
            clusters: 2,
            iterations: 3,
            runs: 4,
            seed: 42,
            solver: SolverBackend::Sa,
            sa_params: SaParams { sweeps: 30, reads: 1, ..Default::default() },
            parallel: false,
            collect_traces: false,
        }
    }

    fn ulysses() -> Instance {
        parse_instance(include_str!("../../../instances/ulysses16.tsp")).unwrap()
    }

    #[test]
    fn single_run_statistics_degenerate() {
        let inst = ulysses();
        let settings = ExperimentSettings { runs: 1, ..tiny_settings() };
        let report = run_experiment(&inst, &settings).unwrap();
        assert_eq!(report.per_run_best.len(), 1);
        assert_eq!(report.min, report.mean);
        assert_eq!(report.std, 0.0);
    }

    #[test]
    fn statistics_recompute_from_the_run_list() {
        let inst = ulysses();
        let report = run_experiment(&inst, &tiny_settings()).unwrap();
        let min = report.per_run_best.iter().copied().fold(f64::INFINITY, f64::min);
        let mean = report.per_run_best.iter().sum::<f64>() / report.runs as f64;
        let std = (report.per_run_best.iter().map(|x| (x - mean).powi(2)).sum::<f64>()
            / report.runs as f64)
            .sqrt();
        assert!((report.min - min).abs() < 1e-9);
        assert!((report.mean - mean).abs() < 1e-9);
        assert!((report.std - std).abs() < 1e-9);
        assert_eq!(report.full_problem_variables, 256);
    }

    #[test]
    fn reports_are_reproducible_and_parallel_invariant() {
        let inst = ulysses();
        let settings = tiny_settings();
        let a = run_experiment(&inst, &settings).unwrap();
        let b = run_experiment(&inst, &settings).unwrap();
        assert_eq!(emit_report(&a, ReportFormat::Json), emit_report(&b, ReportFormat::Json));

        let parallel = ExperimentSettings { parallel: true, ..settings };
        let c = run_experiment(&inst, &parallel).unwrap();
        assert_eq!(emit_report(&a, ReportFormat::Json), emit_report(&c, ReportFormat::Json));
        assert_eq!(emit_report(&a, ReportFormat::Csv), emit_report(&c, ReportFormat::Csv));
    }

    #[test]
    fn json_emit_parse_emit_is_byte_identical() {
        let inst = ulysses();
        let settings = ExperimentSettings { collect_traces: true, ..tiny_settings() };
        let report = run_experiment(&inst, &settings).unwrap();
        let text = emit_report(&report, ReportFormat::Json);
        let parsed = parse_json_report(&text).unwrap();
        assert_eq!(parsed, report);
        assert_eq!(emit_report(&parsed, ReportFormat::Json), text);
    }

    #[test]
    fn csv_has_one_row_per_run_plus_summary() {
        let inst = ulysses();
        let report = run_experiment(&inst, &tiny_settings()).unwrap();
        let csv = emit_report(&report, ReportFormat::Csv);
        let lines: Vec<&str> = csv.lines().collect();
        // header + runs + summary
        assert_eq!(lines.len(), 1 + report.runs + 1);
        assert!(lines[0].starts_with("instance,"));
        assert!(lines[lines.len() - 1].contains(",summary,"));
    }

    #[test]
    fn traces_appear_only_when_collected() {
        let inst = ulysses();
        let without = run_experiment(&inst, &tiny_settings()).unwrap();
        assert!(without.traces.is_none());
        let json = emit_report(&without, ReportFormat::Json);
        assert!(!json.contains("\"traces\""));

        let settings = ExperimentSettings { collect_traces: true, ..tiny_settings() };
        let with = run_experiment(&inst, &settings).unwrap();
        let series = with.traces.as_ref().unwrap();
        assert_eq!(series.len(), 4);
        for s in series {
            assert_eq!(s.len(), 1 + 3); // initial + one per iteration
            for pair in s.windows(2) {
                assert!(pair[1] <= pair[0] + 1e-9);
            }
        }
        let csv = emit_report(&with, ReportFormat::Csv);
        assert!(csv.contains(",trace,"));
    }

    #[test]
    fn format_parsing() {
        assert_eq!("json".parse::<ReportFormat>().unwrap(), ReportFormat::Json);
        assert_eq!("csv".parse::<ReportFormat>().unwrap(), ReportFormat::Csv);
        assert!(matches!("xml".parse::<ReportFormat>(), Err(Error::InvalidConfig(_))));
    }

    #[test]
    fn rejects_zero_runs() {
        let inst = ulysses();
        let settings = ExperimentSettings { runs: 0, ..tiny_settings() };
        assert!(matches!(run_experiment(&inst, &settings), Err(Error::InvalidConfig(_))));
    }
}
