use std::io::Write;
use std::path::{Path, PathBuf};

use aro_core::benchmark::{run_seed, TABLE5};
use aro_core::{BenchmarkRow, BenchmarkTable};
use rayon::prelude::*;

use super::frontier::{check_solver_config, trace_and_score, write_frontier_files, FrontierRun};
use super::Style;
use crate::config::RunConfig;
use crate::io::{ensure_dir, find_dataset_file, load_frontier, load_universe, write_atomic};
use crate::report::{real, table5_csv};
use crate::CliError;

#[derive(Debug, Clone, PartialEq)]
pub struct DatasetPaths {
    pub name: &'static str,
    /// Stem used for per-dataset output files, e.g. `port1`.
    pub stem: String,
    pub data: PathBuf,
    pub frontier: PathBuf,
}

/// `port{i}` / `portef{i}` for the five market indices in `dir`.
pub fn dataset_paths(dir: &Path) -> Vec<DatasetPaths> {
    TABLE5
        .iter()
        .map(|r| DatasetPaths {
            name: r.index_name,
            stem: format!("port{}", r.file),
            data: find_dataset_file(dir, &format!("port{}", r.file)),
            frontier: find_dataset_file(dir, &format!("portef{}", r.file)),
        })
        .collect()
}

struct DatasetResult {
    row: BenchmarkRow,
    runs: Vec<FrontierRun>,
}

fn run_dataset(cfg: &RunConfig, d: &DatasetPaths) -> DatasetResult {
    let failed = |n: Option<usize>, e: CliError| DatasetResult {
        row: BenchmarkRow::failed(d.name, n, e.to_string()),
        runs: Vec::new(),
    };
    let universe = match load_universe(&d.data) {
        Ok(u) => u,
        Err(e) => return failed(None, e),
    };
    let n = universe.n_assets();
    let reference = match load_frontier(&d.frontier) {
        Ok(r) => r,
        Err(e) => return failed(Some(n), e),
    };
    let mut runs = Vec::with_capacity(cfg.runs);
    for r in 0..cfg.runs.max(1) as u64 {
        match trace_and_score(cfg, run_seed(cfg.seed, r), &universe, &reference) {
            Ok(run) => runs.push(run),
            Err(e) => return failed(Some(n), e),
        }
    }
    let traced: Vec<_> = runs.iter().map(|r| r.points.clone()).collect();
    let row = match BenchmarkRow::computed(d.name, n, &traced, &reference) {
        Ok(row) => row,
        Err(e) => return failed(Some(n), e.into()),
    };
    let title = format!("{} (N={n}, K={})", d.name, cfg.k);
    if let Err(e) = write_frontier_files(
        cfg,
        &cfg.out,
        &format!("{}_", d.stem),
        &title,
        &reference,
        &runs[0],
    ) {
        return failed(Some(n), e);
    }
    DatasetResult { row, runs }
}

/// `benchmark`: all five datasets, written to `table5.csv` and `runs.csv`.
/// Returns the exit status: 0 if every row was computed, 1 otherwise.
pub fn run_benchmark(
    cfg: &RunConfig,
    out: &mut impl Write,
    style: Style,
) -> Result<(i32, BenchmarkTable), CliError> {
    check_solver_config(cfg)?;
    let dir = cfg
        .data_dir
        .as_deref()
        .ok_or_else(|| CliError::Config("--data-dir is required".into()))?;
    ensure_dir(&cfg.out)?;
    let datasets = dataset_paths(dir);
    let results: Vec<DatasetResult> = datasets.par_iter().map(|d| run_dataset(cfg, d)).collect();

    let mut runs_csv =
        String::from("index_name,run,seed,mean_percentage_error,elitist,bud_evaluations\n");
    for (d, res) in datasets.iter().zip(&results) {
        for (r, run) in res.runs.iter().enumerate() {
            runs_csv.push_str(&format!(
                "{},{r},{},{},{},{}\n",
                d.name,
                run_seed(cfg.seed, r as u64),
                real(run.report.mean_percentage_error),
                run.elitist(),
                run.iterations()
            ));
        }
    }
    let table = BenchmarkTable {
        rows: results.into_iter().map(|r| r.row).collect(),
    };
    write_atomic(&cfg.out.join("table5.csv"), table5_csv(&table).as_bytes())?;
    write_atomic(&cfg.out.join("runs.csv"), runs_csv.as_bytes())?;

    let _ = writeln!(out, "{:<10} {:>4} {:>8} {:>8}", "index", "N", "PSO", "ARO");
    for row in &table.rows {
        let n = row.n_assets.map_or("-".into(), |n| n.to_string());
        let pso = row
            .published()
            .map_or(String::new(), |p| format!("{:.4}", p.pso));
        match &row.outcome {
            Ok(c) => {
                let _ = writeln!(
                    out,
                    "{:<10} {n:>4} {pso:>8} {:>8.4}",
                    row.name, c.mean_percentage_error
                );
                if !c.elitist {
                    let _ = writeln!(out, "{}", style.bad("  fitness trace decreased"));
                }
            }
            Err(msg) => {
                let _ = writeln!(
                    out,
                    "{:<10} {n:>4} {pso:>8} {:>8}",
                    row.name,
                    style.bad("FAILED")
                );
                let _ = writeln!(out, "  {msg}");
            }
        }
    }
    match table.average() {
        Some(avg) => {
            let _ = writeln!(
                out,
                "{:<10} {:>4} {:>8.4} {:>8.4}",
                "Average",
                "-",
                aro_core::TABLE5_AVERAGE.pso,
                avg
            );
        }
        None => {
            let _ = writeln!(
                out,
                "{:<10} {:>4} {:>8.4} {:>8}",
                "Average",
                "-",
                aro_core::TABLE5_AVERAGE.pso,
                style.bad("FAILED")
            );
        }
    }
    Ok((if table.all_computed() { 0 } else { 1 }, table))
}
