//! Synthetic OR-Library style fixtures.
#![allow(dead_code)]

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use aro_core::RandomStream;

/// A one-factor universe in OR-Library layout: `N`, then `mean stddev` per
/// asset, then `i j rho` for every `i <= j`.
pub fn universe_text(n: usize, seed: u64) -> String {
    let mut rng = RandomStream::new(seed);
    let beta: Vec<f64> = (0..n).map(|_| 0.3 + 0.6 * rng.unit()).collect();
    let mut s = format!("{n}\n");
    for i in 0..n {
        let frac = i as f64 / (n - 1) as f64;
        let mean = 0.001 + 0.008 * frac + 0.0005 * rng.unit();
        let sd = 0.03 + 0.03 * frac + 0.005 * rng.unit();
        writeln!(s, "{mean} {sd}").unwrap();
    }
    for i in 0..n {
        for j in i..n {
            let rho = if i == j { 1.0 } else { beta[i] * beta[j] };
            writeln!(s, "{} {} {rho}", i + 1, j + 1).unwrap();
        }
    }
    s
}

/// A convex, increasing reference curve with `points` pairs of
/// `mean variance`.
pub fn frontier_text(points: usize) -> String {
    let mut s = String::new();
    for p in 0..points {
        let r = 0.001 + 0.0085 * p as f64 / (points - 1) as f64;
        let sd = 0.025 + 2.5 * (r - 0.001) * (r - 0.001) * 100.0;
        writeln!(s, "{r} {}", sd * sd).unwrap();
    }
    s
}

pub struct Fixture {
    pub dir: tempfile::TempDir,
    pub data: PathBuf,
    pub frontier: PathBuf,
}

pub fn fixture(n: usize, seed: u64) -> Fixture {
    let dir = tempfile::tempdir().unwrap();
    let data = dir.path().join("port1.txt");
    let frontier = dir.path().join("portef1.txt");
    fs::write(&data, universe_text(n, seed)).unwrap();
    fs::write(&frontier, frontier_text(2000)).unwrap();
    Fixture {
        dir,
        data,
        frontier,
    }
}

/// Writes `port{i}.txt` and `portef{i}.txt` for the five indices.
pub fn benchmark_dir(dir: &Path, sizes: [usize; 5]) {
    for (i, n) in sizes.into_iter().enumerate() {
        fs::write(
            dir.join(format!("port{}.txt", i + 1)),
            universe_text(n, i as u64),
        )
        .unwrap();
        fs::write(dir.join(format!("portef{}.txt", i + 1)), frontier_text(500)).unwrap();
    }
}

/// Runs the CLI in-process; returns (exit status, stdout, stderr).
pub fn run_cli(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("aro-bench").chain(args.iter().copied());
    let code = aro_bench::cli::run(
        argv,
        &mut out,
        &mut err,
        aro_bench::commands::Style::default(),
    );
    (
        code,
        String::from_utf8(out).unwrap(),
        String::from_utf8(err).unwrap(),
    )
}

pub fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}
