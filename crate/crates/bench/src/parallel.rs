//! Multi-threaded frontier tracing. Each grid point runs on its own random
//! stream, so the result is identical to the sequential
//! [`aro_core::trace_frontier`] regardless of scheduling.

use aro_core::frontier::{solve_lambda_point, sort_frontier};
use aro_core::{AroParams, AssetUniverse, Bounds, FrontierPoint, Result};
use rayon::prelude::*;

pub fn trace_frontier_parallel(
    u: &AssetUniverse,
    k: usize,
    bounds: &Bounds,
    params: &AroParams,
    count: usize,
) -> Result<Vec<FrontierPoint>> {
    if count < 2 {
        return aro_core::trace_frontier(u, k, bounds, params, count);
    }
    let mut points = (0..count)
        .into_par_iter()
        .map(|e| solve_lambda_point(u, k, bounds, params, e, count))
        .collect::<Result<Vec<_>>>()?;
    sort_frontier(&mut points);
    Ok(points)
}
