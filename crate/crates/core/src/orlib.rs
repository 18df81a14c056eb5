//! OR-Library portfolio instances (`port1`..`port5`) and their unconstrained
//! efficient frontiers (`portef1`..`portef5`).
//!
//! Universe files are a whitespace-separated token stream: the asset count
//! `N`, then `N` pairs of (mean return, return stddev), then triples
//! `(i, j, correlation)` with 1-based indices covering every `i <= j`.
//! Frontier files are a stream of (mean return, variance) pairs.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt::Write as _;

use crate::{Error, Result};

/// Tolerance for correlation magnitude and unit diagonal checks.
const CORRELATION_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy)]
struct Token<'a> {
    text: &'a str,
    line: usize,
}

fn tokenize(text: &str) -> Vec<Token<'_>> {
    text.lines()
        .enumerate()
        .flat_map(|(n, l)| {
            l.split_whitespace().map(move |t| Token {
                text: t,
                line: n + 1,
            })
        })
        .collect()
}

fn real(tok: Token<'_>) -> Result<f64> {
    match tok.text.parse::<f64>() {
        Ok(v) if v.is_finite() => Ok(v),
        _ => Err(Error::Parse {
            line: tok.line,
            message: format!("expected a number, found {:?}", tok.text),
        }),
    }
}

fn integer(tok: Token<'_>) -> Result<i64> {
    tok.text.parse::<i64>().map_err(|_| Error::Parse {
        line: tok.line,
        message: format!("expected an integer, found {:?}", tok.text),
    })
}

/// One `(i, j, correlation)` record; indices are 1-based as in the file.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CorrelationEntry {
    pub i: usize,
    pub j: usize,
    pub rho: f64,
}

/// The components of a universe file, read back verbatim.
#[derive(Debug, Clone, PartialEq)]
pub struct RawUniverse {
    pub n_assets: usize,
    pub mean_returns: Vec<f64>,
    pub stddevs: Vec<f64>,
    pub correlations: Vec<CorrelationEntry>,
}

impl RawUniverse {
    /// Renders the universe in the OR-Library layout. Floats use the shortest
    /// representation that parses back to the same value.
    pub fn to_orlib_string(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, " {}", self.n_assets);
        for (m, s) in self.mean_returns.iter().zip(&self.stddevs) {
            let _ = writeln!(out, " {m:?} {s:?}");
        }
        for c in &self.correlations {
            let _ = writeln!(out, " {} {} {:?}", c.i, c.j, c.rho);
        }
        out
    }
}

/// Parses a universe file into its raw components.
pub fn parse_universe(text: &str) -> Result<RawUniverse> {
    let tokens = tokenize(text);
    let mut it = tokens.iter().copied();

    let first = it.next().ok_or_else(|| Error::Parse {
        line: 1,
        message: "empty input, expected the asset count".into(),
    })?;
    let n = integer(first)?;
    if n < 2 {
        return Err(Error::Validation(format!(
            "line {}: a universe needs at least 2 assets, found {n}",
            first.line
        )));
    }
    let n = n as usize;

    let mut mean_returns = Vec::with_capacity(n);
    let mut stddevs = Vec::with_capacity(n);
    for k in 0..n {
        let (Some(m), Some(s)) = (it.next(), it.next()) else {
            return Err(Error::IncompleteData(format!(
                "expected {n} (mean, stddev) pairs, found {k}"
            )));
        };
        let s_val = real(s)?;
        if s_val < 0.0 {
            return Err(Error::Validation(format!(
                "line {}: negative stddev {s_val} for asset {}",
                s.line,
                k + 1
            )));
        }
        mean_returns.push(real(m)?);
        stddevs.push(s_val);
    }

    let rest: Vec<Token<'_>> = it.collect();
    if rest.len() % 3 != 0 {
        return Err(Error::IncompleteData(format!(
            "truncated correlation triple near line {}",
            rest.last().map_or(0, |t| t.line)
        )));
    }
    let mut covered = vec![false; n * n];
    let mut correlations = Vec::with_capacity(rest.len() / 3);
    for triple in rest.chunks_exact(3) {
        let index = |tok: Token<'_>| -> Result<usize> {
            let v = integer(tok)?;
            if v < 1 || v as usize > n {
                return Err(Error::IndexOutOfRange {
                    index: v,
                    n,
                    line: tok.line,
                });
            }
            Ok(v as usize)
        };
        let i = index(triple[0])?;
        let j = index(triple[1])?;
        let rho = real(triple[2])?;
        let (lo, hi) = if i <= j { (i, j) } else { (j, i) };
        covered[(lo - 1) * n + (hi - 1)] = true;
        correlations.push(CorrelationEntry { i, j, rho });
    }
    for i in 0..n {
        for j in i..n {
            if !covered[i * n + j] {
                return Err(Error::IncompleteData(format!(
                    "missing correlation for pair ({}, {})",
                    i + 1,
                    j + 1
                )));
            }
        }
    }

    Ok(RawUniverse {
        n_assets: n,
        mean_returns,
        stddevs,
        correlations,
    })
}

/// Builds the row-major `N x N` covariance `rho_ij * s_i * s_j`, mirrored to
/// both triangles. Pairs without an entry are left at zero.
pub fn build_covariance(stddevs: &[f64], entries: &[CorrelationEntry]) -> Result<Vec<f64>> {
    let n = stddevs.len();
    let mut cov = vec![0.0; n * n];
    let mut diagonal = vec![false; n];
    for e in entries {
        if e.i < 1 || e.i > n || e.j < 1 || e.j > n {
            return Err(Error::Validation(format!(
                "correlation entry ({}, {}) outside 1..={n}",
                e.i, e.j
            )));
        }
        if !(e.rho.abs() <= 1.0 + CORRELATION_TOL) {
            return Err(Error::Validation(format!(
                "correlation {} for ({}, {}) outside [-1, 1]",
                e.rho, e.i, e.j
            )));
        }
        let (a, b) = (e.i - 1, e.j - 1);
        if a == b {
            if (e.rho - 1.0).abs() > CORRELATION_TOL {
                return Err(Error::Validation(format!(
                    "diagonal correlation for asset {} is {}, expected 1",
                    e.i, e.rho
                )));
            }
            diagonal[a] = true;
            cov[a * n + a] = stddevs[a] * stddevs[a];
        } else {
            let v = e.rho * stddevs[a] * stddevs[b];
            cov[a * n + b] = v;
            cov[b * n + a] = v;
        }
    }
    if let Some(missing) = diagonal.iter().position(|d| !d) {
        return Err(Error::IncompleteData(format!(
            "missing diagonal correlation for asset {}",
            missing + 1
        )));
    }
    Ok(cov)
}

/// An immutable problem instance: mean returns and a full covariance matrix.
///
/// Slices are indexed by 0-based position; the asset id used in portfolios
/// and output files is position + 1.
#[derive(Debug, Clone, PartialEq)]
pub struct AssetUniverse {
    mean_returns: Vec<f64>,
    stddevs: Vec<f64>,
    covariance: Vec<f64>,
}

impl AssetUniverse {
    /// Builds a universe from mean returns and a row-major covariance matrix.
    pub fn new(mean_returns: Vec<f64>, covariance: Vec<f64>) -> Result<Self> {
        let n = mean_returns.len();
        if n < 2 {
            return Err(Error::Validation(format!(
                "need at least 2 assets, found {n}"
            )));
        }
        if covariance.len() != n * n {
            return Err(Error::Validation(format!(
                "covariance has {} entries, expected {}",
                covariance.len(),
                n * n
            )));
        }
        if mean_returns
            .iter()
            .chain(&covariance)
            .any(|v| !v.is_finite())
        {
            return Err(Error::Validation("non-finite value in universe".into()));
        }
        for i in 0..n {
            if covariance[i * n + i] < 0.0 {
                return Err(Error::Validation(format!(
                    "negative variance for asset {}",
                    i + 1
                )));
            }
            for j in i + 1..n {
                if covariance[i * n + j] != covariance[j * n + i] {
                    return Err(Error::Validation(format!(
                        "covariance not symmetric at ({}, {})",
                        i + 1,
                        j + 1
                    )));
                }
            }
        }
        let stddevs = (0..n).map(|i| libm::sqrt(covariance[i * n + i])).collect();
        Ok(Self {
            mean_returns,
            stddevs,
            covariance,
        })
    }

    pub fn from_raw(raw: &RawUniverse) -> Result<Self> {
        let covariance = build_covariance(&raw.stddevs, &raw.correlations)?;
        let mut u = Self::new(raw.mean_returns.clone(), covariance)?;
        // keep the file's stddevs rather than sqrt of their square
        u.stddevs.clone_from(&raw.stddevs);
        Ok(u)
    }

    pub fn parse(text: &str) -> Result<Self> {
        Self::from_raw(&parse_universe(text)?)
    }

    #[inline]
    pub fn n_assets(&self) -> usize {
        self.mean_returns.len()
    }

    pub fn mean_returns(&self) -> &[f64] {
        &self.mean_returns
    }

    pub fn stddevs(&self) -> &[f64] {
        &self.stddevs
    }

    /// Row-major covariance matrix.
    pub fn covariance(&self) -> &[f64] {
        &self.covariance
    }

    #[inline]
    pub fn cov(&self, i: usize, j: usize) -> f64 {
        self.covariance[i * self.n_assets() + j]
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReferencePoint {
    pub mean_return: f64,
    pub variance: f64,
    pub stddev: f64,
}

/// The unconstrained efficient frontier, sorted strictly ascending by return.
///
/// A second view sorted strictly ascending by stddev backs interpolation on
/// the risk axis.
#[derive(Debug, Clone, PartialEq)]
pub struct ReferenceFrontier {
    points: Vec<ReferencePoint>,
    by_stddev: Vec<ReferencePoint>,
    source_len: usize,
}

impl ReferenceFrontier {
    /// Builds a frontier from (mean return, variance) pairs in any order.
    pub fn from_pairs<I>(pairs: I) -> Result<Self>
    where
        I: IntoIterator<Item = (f64, f64)>,
    {
        let mut points = Vec::new();
        for (mean_return, variance) in pairs {
            if !mean_return.is_finite() || !variance.is_finite() {
                return Err(Error::Validation("non-finite frontier value".into()));
            }
            if variance < 0.0 {
                return Err(Error::Validation(format!(
                    "negative variance {variance} at return {mean_return}"
                )));
            }
            points.push(ReferencePoint {
                mean_return,
                variance,
                stddev: libm::sqrt(variance),
            });
        }
        let source_len = points.len();

        points.sort_by(|a, b| {
            a.mean_return
                .total_cmp(&b.mean_return)
                .then(a.variance.total_cmp(&b.variance))
        });
        // first of each equal-return run has the smallest variance
        points.dedup_by(|later, kept| later.mean_return == kept.mean_return);

        let mut by_stddev = points.clone();
        by_stddev.sort_by(|a, b| {
            a.stddev
                .total_cmp(&b.stddev)
                .then(b.mean_return.total_cmp(&a.mean_return))
        });
        by_stddev.dedup_by(|later, kept| later.stddev == kept.stddev);

        if points.len() < 2 || by_stddev.len() < 2 {
            return Err(Error::InsufficientData(format!(
                "a reference frontier needs at least 2 distinct points, found {}",
                points.len().min(by_stddev.len())
            )));
        }
        Ok(Self {
            points,
            by_stddev,
            source_len,
        })
    }

    /// Points sorted by mean return.
    pub fn points(&self) -> &[ReferencePoint] {
        &self.points
    }

    /// Points sorted by stddev.
    pub fn points_by_stddev(&self) -> &[ReferencePoint] {
        &self.by_stddev
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Number of pairs read before duplicate returns were collapsed.
    pub fn source_len(&self) -> usize {
        self.source_len
    }
}

/// Parses a frontier file of (mean return, variance) pairs.
pub fn parse_reference_frontier(text: &str) -> Result<ReferenceFrontier> {
    let tokens = tokenize(text);
    if tokens.len() % 2 != 0 {
        return Err(Error::IncompleteData(format!(
            "odd number of values; last pair near line {} is truncated",
            tokens.last().map_or(0, |t| t.line)
        )));
    }
    let pairs = tokens
        .chunks_exact(2)
        .map(|p| Ok((real(p[0])?, real(p[1])?)))
        .collect::<Result<Vec<_>>>()?;
    ReferenceFrontier::from_pairs(pairs)
}
