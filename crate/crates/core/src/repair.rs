//! Weight repair: maps non-negative raw weights onto the feasible set
//! `sum(w) = 1`, `lower_i <= w_i <= upper_i`.
//!
//! The lower pass shifts every weight to its floor and shares the remaining
//! budget in proportion to the raw weights:
//!
//! ```text
//! w'_i = lower_i + w_i * (1 - sum_Q lower) / sum_Q w
//! ```
//!
//! Upper limits are then enforced iteratively. A set `R` of assets pinned at
//! their cap grows by one asset per round (the largest violator, ties to the
//! smallest asset id) and the free assets re-share what is left:
//!
//! ```text
//! w'_i = upper_i                                                   i in R
//! w'_i = lower_i + w_i * (1 - sum_{Q\R} lower - sum_R upper) / sum_{Q\R} w   otherwise
//! ```
//!
//! `R` only grows, so the loop ends after at most `K` rounds.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::portfolio::{Bounds, Portfolio};
use crate::{Error, Result};

/// Absolute tolerance for sum-to-one and per-asset bound checks.
pub const FEASIBILITY_TOL: f64 = 1e-9;

/// The lower-bound pass on its own. `lower[k]` is the floor for `raw[k]`.
pub fn lower_pass(raw: &[f64], lower: &[f64]) -> Result<Vec<f64>> {
    let total: f64 = raw.iter().sum();
    if !(total > 0.0) {
        return Err(Error::DegenerateInput(format!(
            "raw weights sum to {total}"
        )));
    }
    let budget = 1.0 - lower.iter().sum::<f64>();
    Ok(raw
        .iter()
        .zip(lower)
        .map(|(&w, &lo)| lo + w * budget / total)
        .collect())
}

/// Repairs the weights of `p` against `bounds`; asset ids are left untouched.
///
/// Weights that already satisfy every constraint within [`FEASIBILITY_TOL`]
/// are returned unchanged, which makes the repair idempotent.
pub fn repair_weights(p: &Portfolio, bounds: &Bounds) -> Result<Portfolio> {
    let mut out = p.clone();
    repair_in_place(&mut out, bounds)?;
    Ok(out)
}

pub(crate) fn repair_in_place(p: &mut Portfolio, bounds: &Bounds) -> Result<()> {
    let k = p.assets.len();
    if p.weights.len() != k {
        return Err(Error::DegenerateInput(format!(
            "{k} assets but {} weights",
            p.weights.len()
        )));
    }
    if let Some(&a) = p.assets.iter().find(|&&a| a == 0 || a > bounds.n_assets()) {
        return Err(Error::DegenerateInput(format!(
            "asset id {a} has no bounds"
        )));
    }
    if let Some(w) = p.weights.iter().find(|w| !(**w >= 0.0 && w.is_finite())) {
        return Err(Error::DegenerateInput(format!(
            "raw weight {w} is not a finite non-negative value"
        )));
    }

    let lower: Vec<f64> = p.assets.iter().map(|&a| bounds.lower(a)).collect();
    let upper: Vec<f64> = p.assets.iter().map(|&a| bounds.upper(a)).collect();
    let sum_lower: f64 = lower.iter().sum();
    let sum_upper: f64 = upper.iter().sum();
    if sum_lower > 1.0 + FEASIBILITY_TOL || sum_upper < 1.0 - FEASIBILITY_TOL {
        return Err(Error::Infeasible(format!(
            "held assets need sum(lower) = {sum_lower} <= 1 <= sum(upper) = {sum_upper}"
        )));
    }
    let total: f64 = p.weights.iter().sum();
    if !(total > 0.0) {
        return Err(Error::DegenerateInput("all raw weights are zero".into()));
    }

    if is_feasible(&p.weights, &lower, &upper) {
        return Ok(());
    }

    let raw = &p.weights;
    let mut pinned = vec![false; k];
    let mut repaired = vec![0.0; k];
    loop {
        let mut free_raw = 0.0;
        let mut free_lower = 0.0;
        let mut pinned_upper = 0.0;
        let mut free_count = 0usize;
        for i in 0..k {
            if pinned[i] {
                pinned_upper += upper[i];
            } else {
                free_raw += raw[i];
                free_lower += lower[i];
                free_count += 1;
            }
        }
        if free_count == 0 {
            repaired.copy_from_slice(&upper);
            break;
        }
        let budget = 1.0 - free_lower - pinned_upper;
        // every free raw weight is zero: share the budget equally
        let share = |i: usize| {
            if free_raw > 0.0 {
                raw[i] / free_raw
            } else {
                1.0 / free_count as f64
            }
        };

        let mut worst: Option<(usize, f64)> = None;
        for i in 0..k {
            if pinned[i] {
                repaired[i] = upper[i];
                continue;
            }
            let w = lower[i] + share(i) * budget;
            repaired[i] = w;
            let excess = w - upper[i];
            if excess > 0.0 {
                let better = match worst {
                    None => true,
                    Some((j, e)) => excess > e || (excess == e && p.assets[i] < p.assets[j]),
                };
                if better {
                    worst = Some((i, excess));
                }
            }
        }
        match worst {
            Some((i, _)) => pinned[i] = true,
            None => break,
        }
    }
    p.weights.copy_from_slice(&repaired);
    Ok(())
}

fn is_feasible(w: &[f64], lower: &[f64], upper: &[f64]) -> bool {
    let sum: f64 = w.iter().sum();
    (sum - 1.0).abs() <= FEASIBILITY_TOL
        && w.iter()
            .zip(lower.iter().zip(upper))
            .all(|(&x, (&lo, &hi))| x >= lo - FEASIBILITY_TOL && x <= hi + FEASIBILITY_TOL)
}
