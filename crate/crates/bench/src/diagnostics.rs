//! Structural checks on a parsed universe.

use aro_core::AssetUniverse;
use nalgebra::{DMatrix, SymmetricEigen};

/// Eigenvalues below this are reported as indefiniteness.
pub const PSD_TOL: f64 = -1e-8;

#[derive(Debug, Clone, PartialEq)]
pub struct CovarianceDiagnostics {
    pub symmetric: bool,
    /// Largest relative gap between a diagonal entry and its stddev squared.
    pub diagonal_gap: f64,
    pub min_eigenvalue: f64,
}

impl CovarianceDiagnostics {
    pub fn is_psd(&self) -> bool {
        self.min_eigenvalue >= PSD_TOL
    }
}

pub fn covariance_diagnostics(u: &AssetUniverse) -> CovarianceDiagnostics {
    let n = u.n_assets();
    let m = DMatrix::from_row_slice(n, n, u.covariance());
    let symmetric = (0..n).all(|i| (0..i).all(|j| m[(i, j)] == m[(j, i)]));
    let diagonal_gap = (0..n)
        .map(|i| {
            let s2 = u.stddevs()[i] * u.stddevs()[i];
            if s2 == 0.0 {
                m[(i, i)].abs()
            } else {
                ((m[(i, i)] - s2) / s2).abs()
            }
        })
        .fold(0.0, f64::max);
    let min_eigenvalue = SymmetricEigen::new(m)
        .eigenvalues
        .iter()
        .copied()
        .fold(f64::INFINITY, f64::min);
    CovarianceDiagnostics {
        symmetric,
        diagonal_gap,
        min_eigenvalue,
    }
}
