//! The quantum-local-search driver: initialize, slice, solve, accept or
//! reject, iterate to a fixed budget.
//!
//! Each iteration plans its slices once against the iteration-start tour,
//! solves every slice with at least one interior city (concurrently when
//! configured), then splices accepted proposals back in ascending slice
//! order. Slice interiors are disjoint, so proposals commute; acceptance is
//! strict (`new open length < old`), which makes the per-iteration tour
//! length non-increasing by construction. A solver failure on a slice just
//! rejects that slice, never the run.
//!
//! Per-slice solver seeds derive from (master seed, iteration, slice index),
//! so parallel and sequential execution produce identical traces.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::init::convex_hull_insertion;
use crate::qubo::{build_slice_qubo, decode_solution, default_penalty};
use crate::slicing::{plan_for_iteration, Strategy};
use crate::solver::{ExactSolver, SaParams, SaSolver, SliceSolver};
use crate::tour::{splice_segment, tour_length, Segment, Tour};
use crate::tsplib::{DistanceMatrix, Instance};

/// Which built-in backend solves the slice QUBOs.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SolverBackend {
    /// Simulated annealing with [`SaParams`].
    Sa,
    /// Exhaustive enumeration; slices beyond its variable cap are rejected.
    Exact,
}

impl std::fmt::Display for SolverBackend {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            SolverBackend::Sa => f.write_str("sa"),
            SolverBackend::Exact => f.write_str("exact"),
        }
    }
}

impl std::str::FromStr for SolverBackend {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "sa" => Ok(SolverBackend::Sa),
            "exact" => Ok(SolverBackend::Exact),
            other => {
                Err(Error::InvalidConfig(format!("unknown solver `{other}` (expected sa|exact)")))
            }
        }
    }
}

/// Configuration for one search run.
#[derive(Debug, Clone)]
pub struct QlsConfig {
    pub strategy: Strategy,
    /// Cluster count `k` passed to the slicing strategy.
    pub clusters: usize,
    /// Fixed iteration budget; no early exit.
    pub iterations: usize,
    pub solver: SolverBackend,
    pub sa_params: SaParams,
    /// Master seed; everything else derives from it.
    pub seed: u64,
    /// Solve the slices of one iteration concurrently.
    pub parallel_slices: bool,
    /// Keep a tour snapshot per iteration in the trace (for diagnostics and
    /// invariant checks; off by default).
    pub record_tours: bool,
}

impl Default for QlsConfig {
    fn default() -> Self {
        QlsConfig {
            strategy: Strategy::Hybrid,
            clusters: 2,
            iterations: 100,
            solver: SolverBackend::Sa,
            sa_params: SaParams::default(),
            seed: 0,
            parallel_slices: false,
            record_tours: false,
        }
    }
}

/// Outcome of one slice within one iteration.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SliceRecord {
    /// QUBO variable count, `(m - 2)^2` for a slice of `m` cities.
    pub variables: usize,
    pub accepted: bool,
}

/// Per-iteration record: the tour length after the iteration and the
/// outcome of every solved slice (slices without interior cities are
/// skipped, not recorded).
#[derive(Debug, Clone, PartialEq)]
pub struct IterationRecord {
    pub iteration: usize,
    pub length: f64,
    pub slices: Vec<SliceRecord>,
}

/// Full trace of a run.
#[derive(Debug, Clone, PartialEq)]
pub struct QlsTrace {
    /// Length of the initial tour (iteration-0 baseline).
    pub initial_length: f64,
    pub iterations: Vec<IterationRecord>,
    pub final_tour: Tour,
    /// Tour snapshots per iteration when `record_tours` is set.
    pub tours: Vec<Tour>,
}

impl QlsTrace {
    /// Tour length after each iteration, preceded by the initial length.
    pub fn length_series(&self) -> Vec<f64> {
        let mut series = Vec::with_capacity(self.iterations.len() + 1);
        series.push(self.initial_length);
        series.extend(self.iterations.iter().map(|r| r.length));
        series
    }

    /// Best (= final, by monotone acceptance) length of the run.
    pub fn best_length(&self) -> f64 {
        self.final_tour.length()
    }
}

fn validate_config(config: &QlsConfig) -> Result<()> {
    if config.iterations < 1 {
        return Err(Error::InvalidConfig("iterations must be at least 1".into()));
    }
    if config.clusters < 2 {
        return Err(Error::InvalidConfig("clusters must be at least 2".into()));
    }
    Ok(())
}

/// Runs quantum local search with the configured built-in backend.
pub fn run_qls(instance: &Instance, config: &QlsConfig) -> Result<QlsTrace> {
    validate_config(config)?;
    match config.solver {
        SolverBackend::Sa => {
            let solver = SaSolver::new(config.sa_params.clone());
            run_qls_with_solver(instance, config, &solver)
        }
        SolverBackend::Exact => run_qls_with_solver(instance, config, &ExactSolver),
    }
}

/// Runs quantum local search with a caller-provided slice solver.
pub fn run_qls_with_solver(
    instance: &Instance,
    config: &QlsConfig,
    solver: &(dyn SliceSolver + Sync),
) -> Result<QlsTrace> {
    validate_config(config)?;
    let matrix = instance.distance_matrix();
    let mut tour = convex_hull_insertion(instance, &matrix)?;
    let initial_length = tour.length();

    let mut records = Vec::with_capacity(config.iterations);
    let mut tours = Vec::new();
    for iteration in 0..config.iterations {
        let mut plan_rng = ChaCha8Rng::seed_from_u64(derive_seed(config.seed, iteration as u64, PLAN_STREAM));
        let plan = plan_for_iteration(
            config.strategy,
            iteration,
            &tour,
            &matrix,
            config.clusters,
            &mut plan_rng,
        )?;
        let segments = plan.segments(&tour);

        let solve_one = |(index, segment): (usize, &Segment)| -> Option<(usize, usize, Option<Vec<usize>>)> {
            if segment.interior_count() == 0 {
                return None;
            }
            let seed = derive_seed(config.seed, iteration as u64, index as u64);
            let proposal = solve_slice(segment, &matrix, solver, seed);
            let variables = segment.interior_count().pow(2);
            Some((index, variables, proposal))
        };

        let outcomes: Vec<(usize, usize, Option<Vec<usize>>)> = if config.parallel_slices {
            segments.par_iter().enumerate().filter_map(solve_one).collect()
        } else {
            segments.iter().enumerate().filter_map(solve_one).collect()
        };

        let mut slice_records = Vec::with_capacity(outcomes.len());
        for (index, variables, proposal) in outcomes {
            let mut accepted = false;
            if let Some(order) = proposal {
                let segment = &segments[index];
                let old_open = segment.open_length(&matrix);
                let new_open = open_length_of(segment, &order, &matrix);
                if new_open < old_open {
                    tour = splice_segment(&tour, segment, &order, &matrix)?;
                    accepted = true;
                }
            }
            slice_records.push(SliceRecord { variables, accepted });
        }

        records.push(IterationRecord { iteration, length: tour.length(), slices: slice_records });
        if config.record_tours {
            tours.push(tour.clone());
        }
    }

    Ok(QlsTrace { initial_length, iterations: records, final_tour: tour, tours })
}

/// Builds, solves and decodes one slice; any failure means no proposal.
fn solve_slice(
    segment: &Segment,
    matrix: &DistanceMatrix,
    solver: &(dyn SliceSolver + Sync),
    seed: u64,
) -> Option<Vec<usize>> {
    let penalty = default_penalty(segment, matrix);
    let qubo = build_slice_qubo(segment, matrix, penalty).ok()?;
    let result = solver.solve(&qubo, seed).ok()?;
    decode_solution(&result.bits, &qubo, segment).ok()?.ok()
}

fn open_length_of(segment: &Segment, interior: &[usize], matrix: &DistanceMatrix) -> f64 {
    let mut path = Vec::with_capacity(segment.city_count());
    path.push(segment.start_city());
    path.extend_from_slice(interior);
    path.push(segment.end_city());
    tour_length(&path, matrix, false)
}

/// Solves one slice and splices the proposal in if it strictly shortens the
/// tour. Solver failures and invalid decodes are rejections, never errors.
pub fn improve_slice(
    tour: &Tour,
    slice: &Segment,
    solver: &(dyn SliceSolver + Sync),
    matrix: &DistanceMatrix,
    seed: u64,
) -> (bool, Tour) {
    if slice.interior_count() == 0 {
        return (false, tour.clone());
    }
    let Some(order) = solve_slice(slice, matrix, solver, seed) else {
        return (false, tour.clone());
    };
    let old_open = slice.open_length(matrix);
    let new_open = open_length_of(slice, &order, matrix);
    if new_open < old_open {
        match splice_segment(tour, slice, &order, matrix) {
            Ok(next) => (true, next),
            Err(_) => (false, tour.clone()),
        }
    } else {
        (false, tour.clone())
    }
}

const PLAN_STREAM: u64 = u64::MAX;

/// splitmix64-style mixing of (master seed, iteration, stream index) into a
/// per-call RNG seed.
pub(crate) fn derive_seed(master: u64, iteration: u64, stream: u64) -> u64 {
    fn mix(mut z: u64) -> u64 {
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }
    let a = mix(master.wrapping_add(0x9E37_79B9_7F4A_7C15));
    let b = mix(a ^ iteration.wrapping_mul(0xD1B5_4A32_D192_ED03));
    mix(b ^ stream.wrapping_mul(0x8CB9_2BA7_2F3D_8DD7))
}
