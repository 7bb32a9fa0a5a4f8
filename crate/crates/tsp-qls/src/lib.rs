//! A Traveling Salesman Problem solver built around quantum local search
//! with path slicing: a classically constructed tour is repeatedly cut into
//! contiguous segments, each segment interior is re-optimized as a small
//! fixed-endpoint QUBO by a pluggable annealing-style solver, and
//! improvements are accepted greedily.
//!
//! The pipeline, end to end:
//!
//! 1. parse a TSPLIB instance and build its exact distance matrix
//!    ([`tsplib`]);
//! 2. construct the initial closed tour with the convex hull insertion
//!    heuristic ([`init`]);
//! 3. each iteration, slice the tour into `k` contiguous segments using one
//!    of five strategies: k-means or anti-k-means on a circle embedding of
//!    the tour, bounded random cuts, or hybrids alternating the two
//!    ([`slicing`]);
//! 4. encode every segment interior as a fixed-endpoint open-path QUBO
//!    ([`qubo`]), solve it ([`solver`]), and splice the result back in only
//!    when it strictly shortens the tour ([`search`]);
//! 5. batch runs into reproducible experiments with aggregate statistics
//!    ([`experiment`]).
//!
//! ```
//! use tsp_qls::prelude::*;
//!
//! let text = "NAME: tiny\nTYPE: TSP\nDIMENSION: 5\nEDGE_WEIGHT_TYPE: EUC_2D\n\
//!             NODE_COORD_SECTION\n1 0 0\n2 10 0\n3 10 10\n4 0 10\n5 5 2\nEOF\n";
//! let instance = parse_instance(text)?;
//! let matrix = instance.distance_matrix();
//! let tour = convex_hull_insertion(&instance, &matrix)?;
//! assert!(validate_tour(&tour, instance.dimension(), &matrix).is_ok());
//! # Ok::<(), tsp_qls::Error>(())
//! ```

pub mod error;
pub mod experiment;
#[cfg(test)]
pub(crate) mod testutil;
pub mod init;
pub mod qubo;
pub mod search;
pub mod slicing;
pub mod solver;
pub mod tour;
pub mod tsplib;

pub use error::{Error, ParseError, Result};

/// The commonly used names in one import.
pub mod prelude {
    pub use crate::error::{Error, Result};
    pub use crate::experiment::{emit_report, run_experiment, ExperimentReport, ExperimentSettings, ReportFormat};
    pub use crate::init::{convex_hull, convex_hull_insertion, Hull};
    pub use crate::qubo::{build_slice_qubo, decode_solution, default_penalty, Qubo};
    pub use crate::search::{improve_slice, run_qls, QlsConfig, QlsTrace, SolverBackend};
    pub use crate::slicing::{
        anti_kmeans_slices, embed_on_circle, kmeans_slices, plan_for_iteration, random_slices,
        CircleEmbedding, SlicePlan, Strategy,
    };
    pub use crate::solver::{
        permutation_oracle, solve_exact, solve_sa, SaParams, SliceSolver, SolverResult,
    };
    pub use crate::tour::{
        splice_segment, tour_length, validate_tour, Segment, Tour, TourViolation,
    };
    pub use crate::tsplib::{parse_instance, DistanceMatrix, Instance, Metric};
}

// The guide chapters under book/src/ double as doc-tests so their code
// snippets can never drift from the library.
#[cfg(doctest)]
mod book {
    macro_rules! chapter {
        ($name:ident, $path:literal) => {
            #[doc = include_str!(concat!("../../../book/src/", $path))]
            mod $name {}
        };
    }

    chapter!(introduction, "introduction.md");
    chapter!(instances, "instances.md");
    chapter!(tours, "tours.md");
    chapter!(initialization, "initialization.md");
    chapter!(slicing, "slicing.md");
    chapter!(qubo, "qubo.md");
    chapter!(solvers, "solvers.md");
    chapter!(search, "search.md");
    chapter!(experiments, "experiments.md");
}
