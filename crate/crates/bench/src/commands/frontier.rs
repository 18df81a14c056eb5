use std::io::Write;
use std::path::Path;
use std::time::Instant;

use aro_core::{
    mean_percentage_error, AssetUniverse, Bounds, ErrorReport, FrontierPoint, ReferenceFrontier,
};

use super::Style;
use crate::config::RunConfig;
use crate::io::{ensure_dir, load_frontier, load_universe, write_atomic};
use crate::parallel::trace_frontier_parallel;
use crate::report::{errors_csv, frontier_csv, RunNotes};
use crate::svg::frontier_svg;
use crate::CliError;

/// A traced and scored frontier.
#[derive(Debug, Clone)]
pub struct FrontierRun {
    pub points: Vec<FrontierPoint>,
    pub report: ErrorReport,
    pub seconds: f64,
}

impl FrontierRun {
    pub fn iterations(&self) -> u64 {
        self.points.iter().map(|p| p.stats.iterations).sum()
    }

    pub fn elitist(&self) -> bool {
        self.points.iter().all(|p| p.stats.trace_monotone)
    }
}

pub(crate) fn check_solver_config(cfg: &RunConfig) -> Result<(), CliError> {
    if cfg.points < 2 {
        return Err(CliError::Config(format!(
            "--points must be at least 2, got {}",
            cfg.points
        )));
    }
    cfg.params().validate()?;
    Ok(())
}

pub(crate) fn trace_and_score(
    cfg: &RunConfig,
    seed: u64,
    universe: &AssetUniverse,
    reference: &ReferenceFrontier,
) -> Result<FrontierRun, CliError> {
    let bounds = Bounds::uniform(universe.n_assets(), cfg.epsilon, cfg.delta)?;
    let params = aro_core::AroParams {
        seed,
        ..cfg.params()
    };
    let start = Instant::now();
    let points = trace_frontier_parallel(universe, cfg.k, &bounds, &params, cfg.points)?;
    let seconds = start.elapsed().as_secs_f64();
    let report = mean_percentage_error(&points, reference)?;
    Ok(FrontierRun {
        points,
        report,
        seconds,
    })
}

/// Writes `frontier.csv`, `errors.csv` and `frontier.svg` (with `prefix`).
pub(crate) fn write_frontier_files(
    cfg: &RunConfig,
    dir: &Path,
    prefix: &str,
    title: &str,
    reference: &ReferenceFrontier,
    run: &FrontierRun,
) -> Result<(), CliError> {
    ensure_dir(dir)?;
    let notes = RunNotes {
        iterations: run.iterations(),
        wall_clock: cfg.timings.then_some(run.seconds),
    };
    write_atomic(
        &dir.join(format!("{prefix}frontier.csv")),
        frontier_csv(&run.points, &run.report).as_bytes(),
    )?;
    write_atomic(
        &dir.join(format!("{prefix}errors.csv")),
        errors_csv(&run.points, &run.report, &notes).as_bytes(),
    )?;
    write_atomic(
        &dir.join(format!("{prefix}frontier.svg")),
        frontier_svg(title, reference, &run.points, &run.report).as_bytes(),
    )?;
    Ok(())
}

/// `frontier`: trace one dataset and report its mean percentage error.
pub fn run_frontier(
    cfg: &RunConfig,
    out: &mut impl Write,
    style: Style,
) -> Result<FrontierRun, CliError> {
    check_solver_config(cfg)?;
    let data = cfg
        .data
        .as_deref()
        .ok_or_else(|| CliError::Config("--data is required".into()))?;
    let frontier = cfg
        .frontier
        .as_deref()
        .ok_or_else(|| CliError::Config("--frontier is required".into()))?;
    let universe = load_universe(data)?;
    let reference = load_frontier(frontier)?;

    let run = trace_and_score(cfg, cfg.seed, &universe, &reference)?;
    let title = format!(
        "{} (N={}, K={})",
        data.display(),
        universe.n_assets(),
        cfg.k
    );
    write_frontier_files(cfg, &cfg.out, "", &title, &reference, &run)?;

    let flagged = run
        .report
        .extrapolation_flags
        .iter()
        .filter(|&&f| f)
        .count();
    let _ = writeln!(
        out,
        "mean percentage error: {:.4}",
        run.report.mean_percentage_error
    );
    if flagged > 0 {
        let _ = writeln!(
            out,
            "{}",
            style.warn(&format!("{flagged} point(s) outside the reference range"))
        );
    }
    if !run.elitist() {
        let _ = writeln!(
            out,
            "{}",
            style.bad("fitness trace decreased in at least one run")
        );
    }
    Ok(run)
}
