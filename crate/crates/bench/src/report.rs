//! CSV rendering. Fixed column order, `.` decimals, `\n` line ends and 17
//! significant digits, so equal inputs give equal bytes.

use std::fmt::Write as _;

use aro_core::benchmark::TABLE5_AVERAGE;
use aro_core::{BenchmarkTable, ErrorReport, FrontierPoint};

/// 17 significant digits in scientific notation.
pub fn real(x: f64) -> String {
    format!("{x:.16e}")
}

/// `frontier.csv`: one row per traced point, then its `K` holdings sorted by
/// asset id.
pub fn frontier_csv(points: &[FrontierPoint], report: &ErrorReport) -> String {
    let k = points.iter().map(|p| p.portfolio.len()).max().unwrap_or(0);
    let mut out = String::from("lambda,return,stddev,variance,percentage_error,extrapolated");
    for i in 1..=k {
        let _ = write!(out, ",asset_{i},weight_{i}");
    }
    out.push('\n');
    for (p, e) in points.iter().zip(&report.per_point) {
        let _ = write!(
            out,
            "{},{},{},{},{},{}",
            real(p.lambda),
            real(p.expected_return),
            real(p.stddev),
            real(p.variance),
            real(e.percentage_error),
            e.extrapolated
        );
        for (asset, weight) in p.portfolio.holdings_sorted() {
            let _ = write!(out, ",{asset},{}", real(weight));
        }
        out.push('\n');
    }
    out
}

/// Run metadata appended to `errors.csv` as `#` comment lines.
#[derive(Debug, Clone, Default)]
pub struct RunNotes {
    pub iterations: u64,
    /// Wall-clock seconds; only rendered when present.
    pub wall_clock: Option<f64>,
}

/// `errors.csv`: per-point metrics and a final `mean` row.
pub fn errors_csv(points: &[FrontierPoint], report: &ErrorReport, notes: &RunNotes) -> String {
    let mut out = String::from(
        "lambda,return,stddev,stddev_ref,return_ref,stddev_error,return_error,percentage_error,extrapolated\n",
    );
    for (p, e) in points.iter().zip(&report.per_point) {
        let _ = writeln!(
            out,
            "{},{},{},{},{},{},{},{},{}",
            real(p.lambda),
            real(p.expected_return),
            real(p.stddev),
            real(e.stddev_ref),
            real(e.return_ref),
            real(e.stddev_error),
            real(e.return_error),
            real(e.percentage_error),
            e.extrapolated
        );
    }
    let _ = writeln!(out, "mean,,,,,,,{},", real(report.mean_percentage_error));
    let _ = writeln!(
        out,
        "# points={} bud_evaluations={} extrapolated={}",
        points.len(),
        notes.iterations,
        report.extrapolation_flags.iter().filter(|&&f| f).count()
    );
    if let Some(secs) = notes.wall_clock {
        let _ = writeln!(
            out,
            "# wall_clock_s={secs:.3} buds_per_s={:.0}",
            notes.iterations as f64 / secs.max(1e-9)
        );
    }
    out
}

/// `table5.csv`: published columns next to the computed ARO column.
pub fn table5_csv(table: &BenchmarkTable) -> String {
    let mut out = String::from("index_name,N,GA,SA,TS,PSO,ARO\n");
    for row in &table.rows {
        let n = row.n_assets.or(row.published().map(|p| p.n_assets));
        let n = n.map_or_else(|| "-".to_string(), |n| n.to_string());
        let aro = row.aro().map_or_else(|| "FAILED".to_string(), real);
        match row.published() {
            Some(p) => {
                let _ = writeln!(
                    out,
                    "{},{n},{},{},{},{},{aro}",
                    row.name, p.ga, p.sa, p.ts, p.pso
                );
            }
            None => {
                let _ = writeln!(out, "{},{n},,,,,{aro}", row.name);
            }
        }
    }
    let a = TABLE5_AVERAGE;
    let avg = table.average().map_or_else(|| "FAILED".to_string(), real);
    let _ = writeln!(out, "Average,-,{},{},{},{},{avg}", a.ga, a.sa, a.ts, a.pso);
    out
}
