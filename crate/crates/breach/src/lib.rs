//! Fair max-min diversification: select `k` points maximizing the
//! minimum pairwise distance while keeping each color's count inside
//! per-color bounds.
//!
//! The solver guesses the optimal diversity over a geometric grid and,
//! for each guess, runs a three-stage pipeline:
//!
//! 1. [`prune::prune`] thins the dataset so same-color points are far
//!    apart while an approximate solution survives;
//! 2. [`decompose::ckr_decompose`] randomly partitions the survivors
//!    into well-separated clusters via a random-permutation,
//!    random-radius graph decomposition with guard removal;
//! 3. [`flow::build_flow_network`] assigns clusters to colors by
//!    integral maximum flow and extracts one representative per chosen
//!    cluster.
//!
//! A feasible extraction is guaranteed to have diversity at least
//! `gamma2 * alpha` where `alpha = sqrt(ln m) / m`, which yields an
//! `sqrt(ln m) / (3 m (1 + epsilon))` approximation for the slow
//! variant (`/ 5m` for the fast one) when `k <= m`, with success
//! probability controlled by the repetition budget. Instances with
//! `k > m` run over a widened color space with empty zero-bound
//! classes.
//!
//! [`oracle`] holds exhaustive reference procedures and the greedy
//! baseline used for testing and benchmarking; [`synth`], [`io`] and
//! [`bench`] support the command-line tool. Start with [`solve`].
//!
//! ```
//! use breach::{solve, BreachConfig, Dataset, FairnessSpec};
//!
//! let dataset = Dataset::euclidean(
//!     vec![vec![0.0, 0.0], vec![4.0, 0.0], vec![0.0, 5.0], vec![4.0, 5.0]],
//!     vec![0, 0, 1, 1],
//!     2,
//! )
//! .unwrap();
//! let spec = FairnessSpec::new(2, vec![1, 1], vec![1, 1]).unwrap();
//! let solution = solve(&dataset, &spec, &BreachConfig::default()).unwrap();
//! assert_eq!(solution.indices.len(), 2);
//! assert!(spec.validate(&dataset, &solution.indices));
//! ```

pub mod bench;
pub mod cli;
pub mod dataset;
pub mod decompose;
pub mod error;
pub mod fairness;
pub mod flow;
pub mod io;
pub mod oracle;
pub mod prune;
pub mod rng;
pub mod solution;
pub mod solver;
pub mod synth;

pub use dataset::{Dataset, DistanceExtremes, MetricKind};
pub use error::{DataError, Infeasibility, OracleError, SolveError, SpecError};
pub use fairness::FairnessSpec;
pub use prune::{prune, PruneMode, PruneParams};
pub use solution::{Provenance, Solution};
pub use solver::{
    breach_fixed, candidate_grid, extend_for_large_k, grid_search, solve, solve_timed,
    BreachConfig, GridCandidate, RepeatSchedule, SolveTimings, Variant,
};
