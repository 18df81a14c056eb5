//! Heuristic frontier tracing and deviation from the reference frontier.
//!
//! A traced point `(s_p, R_p)` is compared with the reference twice: its
//! stddev against the reference stddev at the same return, and its return
//! against the reference return at the same stddev. The point's percentage
//! error is the smaller of the two relative deviations, in percent.

use alloc::format;
use alloc::vec::Vec;

use crate::aro::{aro_run_with_stream, check_config, AroParams};
use crate::orlib::{AssetUniverse, ReferenceFrontier, ReferencePoint};
use crate::portfolio::{Bounds, LambdaObjective, Portfolio};
use crate::rng::RandomStream;
use crate::{Error, Result};

/// Search statistics carried alongside a traced point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RunStats {
    pub iterations: u64,
    pub replacements: u64,
    /// Whether parent fitness never decreased during the run.
    pub trace_monotone: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct FrontierPoint {
    pub lambda: f64,
    pub expected_return: f64,
    pub stddev: f64,
    pub variance: f64,
    pub portfolio: Portfolio,
    pub stats: RunStats,
}

/// `count` values spaced evenly over `[0, 1]`, both ends included.
pub fn lambda_grid(count: usize) -> Vec<f64> {
    let last = (count.max(2) - 1) as f64;
    (0..count).map(|e| e as f64 / last).collect()
}

/// Solves the `index`-th of `count` grid points on its own stream
/// `(params.seed, index)`.
pub fn solve_lambda_point(
    u: &AssetUniverse,
    k: usize,
    bounds: &Bounds,
    params: &AroParams,
    index: usize,
    count: usize,
) -> Result<FrontierPoint> {
    if count < 2 || index >= count {
        return Err(Error::Config(format!(
            "point {index} of {count} (need count >= 2)"
        )));
    }
    let lambda = index as f64 / (count - 1) as f64;
    let mut rng = RandomStream::split(params.seed, index as u64);
    let out = aro_run_with_stream(
        u,
        k,
        bounds,
        LambdaObjective::new(lambda)?,
        params,
        &mut rng,
    )?;
    let variance = out.moments.variance;
    Ok(FrontierPoint {
        lambda,
        expected_return: out.moments.expected_return,
        stddev: libm::sqrt(variance.max(0.0)),
        variance,
        stats: RunStats {
            iterations: out.trace.len() as u64,
            replacements: out.replacements,
            trace_monotone: out.trace_is_monotone(),
        },
        portfolio: out.best,
    })
}

/// Orders traced points by expected return, then by lambda.
pub fn sort_frontier(points: &mut [FrontierPoint]) {
    points.sort_by(|a, b| {
        a.expected_return
            .total_cmp(&b.expected_return)
            .then(a.lambda.total_cmp(&b.lambda))
    });
}

/// Runs the solver once per grid value of lambda and returns the points
/// sorted by expected return.
pub fn trace_frontier(
    u: &AssetUniverse,
    k: usize,
    bounds: &Bounds,
    params: &AroParams,
    count: usize,
) -> Result<Vec<FrontierPoint>> {
    if count < 2 {
        return Err(Error::Config(format!(
            "a frontier needs at least 2 points, got {count}"
        )));
    }
    check_config(u, k, bounds, params)?;
    let mut points = (0..count)
        .map(|e| solve_lambda_point(u, k, bounds, params, e, count))
        .collect::<Result<Vec<_>>>()?;
    sort_frontier(&mut points);
    Ok(points)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Axis {
    /// Query a return, read the stddev.
    ByReturn,
    /// Query a stddev, read the return.
    ByStddev,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Interpolated {
    pub value: f64,
    /// The query fell outside the reference range and the end segment was
    /// extended.
    pub extrapolated: bool,
}

/// Piecewise-linear lookup on the reference frontier. Out-of-range queries
/// extend the nearest end segment and are flagged.
pub fn interpolate_frontier(reference: &ReferenceFrontier, query: f64, axis: Axis) -> Interpolated {
    type Coord = fn(&ReferencePoint) -> f64;
    let (pts, x, y): (&[ReferencePoint], Coord, Coord) = match axis {
        Axis::ByReturn => (reference.points(), |p| p.mean_return, |p| p.stddev),
        Axis::ByStddev => (
            reference.points_by_stddev(),
            |p| p.stddev,
            |p| p.mean_return,
        ),
    };
    let idx = pts.partition_point(|p| x(p) < query);
    if idx < pts.len() && x(&pts[idx]) == query {
        return Interpolated {
            value: y(&pts[idx]),
            extrapolated: false,
        };
    }
    let (lo, hi, extrapolated) = match idx {
        0 => (0, 1, true),
        i if i == pts.len() => (i - 2, i - 1, true),
        i => (i - 1, i, false),
    };
    let (x0, y0, x1, y1) = (x(&pts[lo]), y(&pts[lo]), x(&pts[hi]), y(&pts[hi]));
    Interpolated {
        value: y0 + (y1 - y0) * (query - x0) / (x1 - x0),
        extrapolated,
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PointErrors {
    /// Reference stddev at the point's return.
    pub stddev_ref: f64,
    /// Reference return at the point's stddev.
    pub return_ref: f64,
    pub stddev_error: f64,
    pub return_error: f64,
    pub percentage_error: f64,
    pub extrapolated: bool,
}

/// Deviation of one traced point from the reference frontier, in percent.
pub fn point_errors(point: &FrontierPoint, reference: &ReferenceFrontier) -> Result<PointErrors> {
    errors_at(point.stddev, point.expected_return, reference)
}

/// [`point_errors`] for a bare `(stddev, return)` pair.
pub fn errors_at(
    stddev: f64,
    expected_return: f64,
    reference: &ReferenceFrontier,
) -> Result<PointErrors> {
    let s_ref = interpolate_frontier(reference, expected_return, Axis::ByReturn);
    let r_ref = interpolate_frontier(reference, stddev, Axis::ByStddev);
    if s_ref.value == 0.0 || r_ref.value == 0.0 {
        return Err(Error::DegenerateReference(format!(
            "interpolated reference stddev {} / return {} at point ({stddev}, {expected_return})",
            s_ref.value, r_ref.value
        )));
    }
    let stddev_error = 100.0 * ((stddev - s_ref.value) / s_ref.value).abs();
    let return_error = 100.0 * ((expected_return - r_ref.value) / r_ref.value).abs();
    Ok(PointErrors {
        stddev_ref: s_ref.value,
        return_ref: r_ref.value,
        stddev_error,
        return_error,
        percentage_error: stddev_error.min(return_error),
        extrapolated: s_ref.extrapolated || r_ref.extrapolated,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct ErrorReport {
    pub per_point: Vec<PointErrors>,
    pub mean_percentage_error: f64,
    pub extrapolation_flags: Vec<bool>,
}

/// Per-point errors and their arithmetic mean.
pub fn mean_percentage_error(
    points: &[FrontierPoint],
    reference: &ReferenceFrontier,
) -> Result<ErrorReport> {
    if points.is_empty() {
        return Err(Error::EmptyInput("no frontier points to score".into()));
    }
    let per_point = points
        .iter()
        .map(|p| point_errors(p, reference))
        .collect::<Result<Vec<_>>>()?;
    Ok(ErrorReport {
        mean_percentage_error: order_free_mean(per_point.iter().map(|e| e.percentage_error)),
        extrapolation_flags: per_point.iter().map(|e| e.extrapolated).collect(),
        per_point,
    })
}

/// Mean summed in ascending order, so the result does not depend on the
/// order the values arrive in.
pub(crate) fn order_free_mean(values: impl Iterator<Item = f64>) -> f64 {
    let mut v: Vec<f64> = values.collect();
    v.sort_by(f64::total_cmp);
    v.iter().sum::<f64>() / v.len() as f64
}
