#![no_std]
// `!(x <= tol)` style checks are deliberate: they also reject NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]
//! Asexual reproduction optimization (ARO) for the cardinality-constrained
//! mean-variance portfolio selection problem.
//!
//! The crate is `no_std` with `alloc`. It contains the whole algorithmic
//! surface: OR-Library text parsing, the portfolio model and its bound
//! repair, the ARO search loop, and the frontier error metrics. File IO,
//! the CLI and report rendering live in the `aro-bench` companion crate.
//!
//! ```
//! use aro_core::{aro_run, AroParams, AssetUniverse, Bounds, LambdaObjective};
//!
//! let universe = AssetUniverse::new(
//!     vec![0.01, 0.02, 0.015],
//!     vec![
//!         0.0004, 0.0001, 0.0000,
//!         0.0001, 0.0009, 0.0002,
//!         0.0000, 0.0002, 0.0006,
//!     ],
//! )
//! .unwrap();
//! let bounds = Bounds::uniform(3, 0.01, 1.0).unwrap();
//! let params = AroParams { t_max: 500, ..AroParams::default() };
//! let outcome = aro_run(&universe, 2, &bounds, LambdaObjective::new(0.5).unwrap(), &params).unwrap();
//! assert_eq!(outcome.best.len(), 2);
//! ```

extern crate alloc;

pub mod aro;
pub mod benchmark;
mod error;
pub mod frontier;
pub mod orlib;
pub mod portfolio;
pub mod repair;
pub mod rng;

pub use aro::{
    aro_run, aro_run_with_stream, selection_pressure, AroOutcome, AroParams, AroState, PressureForm,
};
pub use benchmark::{
    benchmark_table, BenchmarkDataset, BenchmarkRow, BenchmarkTable, ComputedRow, PublishedRow,
    TABLE5, TABLE5_AVERAGE,
};
pub use error::{Error, Result};
pub use frontier::{
    errors_at, interpolate_frontier, lambda_grid, mean_percentage_error, point_errors,
    solve_lambda_point, sort_frontier, trace_frontier, Axis, ErrorReport, FrontierPoint,
    Interpolated, PointErrors, RunStats,
};
pub use orlib::{
    build_covariance, parse_reference_frontier, parse_universe, AssetUniverse, CorrelationEntry,
    RawUniverse, ReferenceFrontier, ReferencePoint,
};
pub use portfolio::{
    evaluate_objective, portfolio_moments, random_portfolio, validate_portfolio, Bounds,
    FeasibilityReport, LambdaObjective, Moments, Portfolio, Violation,
};
pub use repair::{lower_pass, repair_weights, FEASIBILITY_TOL};
pub use rng::{derive_seed, RandomStream};
