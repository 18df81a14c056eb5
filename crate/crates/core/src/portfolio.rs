//! The cardinality-constrained mean-variance model.

use alloc::format;
use alloc::vec::Vec;

use crate::orlib::AssetUniverse;
use crate::repair::{repair_weights, FEASIBILITY_TOL};
use crate::rng::RandomStream;
use crate::{Error, Result};

/// A candidate solution: `K` distinct 1-based asset ids and their weights.
///
/// This is the `2K` chromosome the search operates on. `assets[k]` holds
/// `weights[k]`; an asset is held exactly when its id appears in `assets`.
#[derive(Debug, Clone, PartialEq)]
pub struct Portfolio {
    pub assets: Vec<usize>,
    pub weights: Vec<f64>,
}

impl Portfolio {
    pub fn new(assets: Vec<usize>, weights: Vec<f64>) -> Self {
        Self { assets, weights }
    }

    /// Cardinality `K`.
    pub fn len(&self) -> usize {
        self.assets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.assets.is_empty()
    }

    /// `(asset, weight)` pairs sorted by asset id.
    pub fn holdings_sorted(&self) -> Vec<(usize, f64)> {
        let mut h: Vec<_> = self
            .assets
            .iter()
            .copied()
            .zip(self.weights.iter().copied())
            .collect();
        h.sort_by_key(|&(a, _)| a);
        h
    }
}

/// Per-asset weight limits `lower[i] <= w_i <= upper[i]` for held assets.
#[derive(Debug, Clone, PartialEq)]
pub struct Bounds {
    lower: Vec<f64>,
    upper: Vec<f64>,
}

impl Bounds {
    pub fn new(lower: Vec<f64>, upper: Vec<f64>) -> Result<Self> {
        if lower.len() != upper.len() {
            return Err(Error::Config(format!(
                "{} lower bounds but {} upper bounds",
                lower.len(),
                upper.len()
            )));
        }
        for (i, (&lo, &hi)) in lower.iter().zip(&upper).enumerate() {
            if !(0.0 <= lo && lo <= hi && hi <= 1.0) {
                return Err(Error::Config(format!(
                    "asset {}: bounds [{lo}, {hi}] must satisfy 0 <= lower <= upper <= 1",
                    i + 1
                )));
            }
        }
        Ok(Self { lower, upper })
    }

    pub fn uniform(n_assets: usize, lower: f64, upper: f64) -> Result<Self> {
        Self::new(alloc::vec![lower; n_assets], alloc::vec![upper; n_assets])
    }

    pub fn n_assets(&self) -> usize {
        self.lower.len()
    }

    #[inline]
    pub fn lower(&self, asset: usize) -> f64 {
        self.lower[asset - 1]
    }

    #[inline]
    pub fn upper(&self, asset: usize) -> f64 {
        self.upper[asset - 1]
    }

    /// Rejects configurations where some `K`-subset could be infeasible:
    /// requires `K * max(lower) <= 1 <= K * min(upper)`.
    pub fn check_cardinality(&self, k: usize) -> Result<()> {
        if k == 0 || k > self.n_assets() {
            return Err(Error::Config(format!(
                "cardinality K={k} must lie in 1..={}",
                self.n_assets()
            )));
        }
        let max_lo = self.lower.iter().copied().fold(0.0, f64::max);
        let min_hi = self.upper.iter().copied().fold(1.0, f64::min);
        let kf = k as f64;
        if kf * max_lo > 1.0 + FEASIBILITY_TOL {
            return Err(Error::Config(format!(
                "K * max(lower) = {} exceeds 1",
                kf * max_lo
            )));
        }
        if kf * min_hi < 1.0 - FEASIBILITY_TOL {
            return Err(Error::Config(format!(
                "K * min(upper) = {} is below 1",
                kf * min_hi
            )));
        }
        Ok(())
    }
}

/// Risk-aversion weight `lambda` in `[0, 1]`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct LambdaObjective(f64);

impl LambdaObjective {
    pub fn new(lambda: f64) -> Result<Self> {
        if (0.0..=1.0).contains(&lambda) {
            Ok(Self(lambda))
        } else {
            Err(Error::Config(format!("lambda {lambda} outside [0, 1]")))
        }
    }

    pub fn value(self) -> f64 {
        self.0
    }

    /// `lambda * variance - (1 - lambda) * expected_return`. Lower is better.
    #[inline]
    pub fn score(self, m: Moments) -> f64 {
        self.0 * m.variance - (1.0 - self.0) * m.expected_return
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Moments {
    pub expected_return: f64,
    pub variance: f64,
}

/// Expected return and variance over the held assets.
pub fn portfolio_moments(p: &Portfolio, u: &AssetUniverse) -> Moments {
    let mu = u.mean_returns();
    let mut expected_return = 0.0;
    let mut variance = 0.0;
    for (a, (&ia, &wa)) in p.assets.iter().zip(&p.weights).enumerate() {
        let ia = ia - 1;
        expected_return += wa * mu[ia];
        let mut cross = 0.0;
        for (&ib, &wb) in p.assets[..a].iter().zip(&p.weights[..a]) {
            cross += wb * u.cov(ia, ib - 1);
        }
        variance += wa * (wa * u.cov(ia, ia) + 2.0 * cross);
    }
    Moments {
        expected_return,
        variance,
    }
}

/// The weighted objective to minimise. The search maximises its negation.
pub fn evaluate_objective(p: &Portfolio, u: &AssetUniverse, lambda: LambdaObjective) -> f64 {
    lambda.score(portfolio_moments(p, u))
}

/// Draws `K` distinct assets uniformly and uniform raw weights, then repairs.
pub fn random_portfolio(
    u: &AssetUniverse,
    k: usize,
    bounds: &Bounds,
    rng: &mut RandomStream,
) -> Result<Portfolio> {
    let n = u.n_assets();
    if k == 0 || k > n {
        return Err(Error::Config(format!(
            "cardinality K={k} must lie in 1..={n}"
        )));
    }
    let assets: Vec<usize> = rand::seq::index::sample(rng, n, k)
        .into_iter()
        .map(|i| i + 1)
        .collect();
    loop {
        let weights: Vec<f64> = (0..k).map(|_| rng.unit()).collect();
        if weights.iter().any(|&w| w > 0.0) {
            return repair_weights(&Portfolio { assets, weights }, bounds);
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Violation {
    Cardinality {
        expected: usize,
        found: usize,
    },
    LengthMismatch {
        assets: usize,
        weights: usize,
    },
    DuplicateAsset {
        asset: usize,
    },
    AssetOutOfRange {
        asset: usize,
    },
    SumToOne {
        sum: f64,
    },
    BelowLower {
        asset: usize,
        weight: f64,
        bound: f64,
    },
    AboveUpper {
        asset: usize,
        weight: f64,
        bound: f64,
    },
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct FeasibilityReport {
    pub violations: Vec<Violation>,
}

impl FeasibilityReport {
    pub fn is_feasible(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Lists every violated constraint; bounds and sum use [`FEASIBILITY_TOL`].
pub fn validate_portfolio(
    p: &Portfolio,
    u: &AssetUniverse,
    b: &Bounds,
    k: usize,
) -> FeasibilityReport {
    let n = u.n_assets();
    let mut violations = Vec::new();
    if p.assets.len() != k {
        violations.push(Violation::Cardinality {
            expected: k,
            found: p.assets.len(),
        });
    }
    if p.assets.len() != p.weights.len() {
        violations.push(Violation::LengthMismatch {
            assets: p.assets.len(),
            weights: p.weights.len(),
        });
    }
    let mut seen = alloc::vec![false; n + 1];
    for &a in &p.assets {
        if a == 0 || a > n {
            violations.push(Violation::AssetOutOfRange { asset: a });
        } else if seen[a] {
            violations.push(Violation::DuplicateAsset { asset: a });
        } else {
            seen[a] = true;
        }
    }
    let sum: f64 = p.weights.iter().sum();
    if !((sum - 1.0).abs() <= FEASIBILITY_TOL) {
        violations.push(Violation::SumToOne { sum });
    }
    for (&a, &w) in p.assets.iter().zip(&p.weights) {
        if a == 0 || a > n || a > b.n_assets() {
            continue;
        }
        let (lo, hi) = (b.lower(a), b.upper(a));
        if !(w >= lo - FEASIBILITY_TOL) {
            violations.push(Violation::BelowLower {
                asset: a,
                weight: w,
                bound: lo,
            });
        }
        if w > hi + FEASIBILITY_TOL {
            violations.push(Violation::AboveUpper {
                asset: a,
                weight: w,
                bound: hi,
            });
        }
    }
    FeasibilityReport { violations }
}
