use std::io::Write;
use std::path::Path;

use super::Style;
use crate::diagnostics::{covariance_diagnostics, PSD_TOL};
use crate::io::{load_frontier, load_raw_universe};
use crate::CliError;

/// `validate`: parse both files and print structural diagnostics.
/// Returns 0 when every structural check passes and 1 otherwise; an
/// indefinite covariance only warns.
pub fn run_validate(
    data: &Path,
    frontier: &Path,
    expect_points: usize,
    out: &mut impl Write,
    style: Style,
) -> Result<i32, CliError> {
    let raw = load_raw_universe(data)?;
    let universe = aro_core::AssetUniverse::from_raw(&raw).map_err(|source| CliError::Data {
        path: data.to_path_buf(),
        source,
    })?;
    let reference = load_frontier(frontier)?;

    let range = |v: &[f64]| {
        v.iter()
            .fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), &x| {
                (a.min(x), b.max(x))
            })
    };
    let (mu_lo, mu_hi) = range(universe.mean_returns());
    let (sd_lo, sd_hi) = range(universe.stddevs());
    let diag = covariance_diagnostics(&universe);
    let mut ok = true;

    let _ = writeln!(
        out,
        "N={}, frontier points={}",
        universe.n_assets(),
        reference.source_len()
    );
    let _ = writeln!(out, "mean return range: [{mu_lo:.6}, {mu_hi:.6}]");
    let _ = writeln!(out, "stddev range: [{sd_lo:.6}, {sd_hi:.6}]");
    let _ = writeln!(out, "correlation entries: {}", raw.correlations.len());
    if reference.len() != reference.source_len() {
        let _ = writeln!(
            out,
            "{}",
            style.warn(&format!(
                "{} duplicate frontier returns collapsed",
                reference.source_len() - reference.len()
            ))
        );
    }
    if reference.source_len() != expect_points {
        ok = false;
        let _ = writeln!(
            out,
            "{}",
            style.bad(&format!(
                "point-count mismatch: expected {expect_points} frontier points, found {}",
                reference.source_len()
            ))
        );
    }
    if diag.symmetric {
        let _ = writeln!(out, "covariance symmetric: yes");
    } else {
        ok = false;
        let _ = writeln!(out, "{}", style.bad("covariance symmetric: no"));
    }
    if diag.diagonal_gap > 1e-12 {
        ok = false;
        let _ = writeln!(
            out,
            "{}",
            style.bad(&format!(
                "diagonal differs from stddev^2 by {:e}",
                diag.diagonal_gap
            ))
        );
    }
    if diag.is_psd() {
        let _ = writeln!(
            out,
            "covariance PSD: yes (min eigenvalue {:e})",
            diag.min_eigenvalue
        );
    } else {
        let _ = writeln!(
            out,
            "{}",
            style.warn(&format!(
                "warning: covariance indefinite, min eigenvalue {:e} < {PSD_TOL:e}",
                diag.min_eigenvalue
            ))
        );
    }
    let _ = writeln!(
        out,
        "{}",
        if ok {
            style.good("structure: ok")
        } else {
            style.bad("structure: FAILED")
        }
    );
    Ok(if ok { 0 } else { 1 })
}
