//! Argument parsing and dispatch.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use crate::commands::{run_benchmark, run_frontier, run_validate, Style};
use crate::config::RunConfig;
use crate::CliError;

#[derive(Debug, Parser)]
#[command(
    name = "aro-bench",
    version,
    about = "Cardinality-constrained portfolio frontiers with asexual reproduction optimization"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Trace one frontier and score it against a reference frontier.
    Frontier(SolverArgs),
    /// Run all five market indices and write table5.csv.
    Benchmark(SolverArgs),
    /// Parse a dataset and report structural diagnostics.
    Validate(ValidateArgs),
}

/// Solver flags. Unset flags fall back to `--config`, then to defaults.
#[derive(Debug, Args, Default)]
pub struct SolverArgs {
    /// OR-Library asset file (`portN.txt`).
    #[arg(long)]
    pub data: Option<PathBuf>,
    /// Reference frontier (`portefN.txt`).
    #[arg(long)]
    pub frontier: Option<PathBuf>,
    /// Directory holding port1..5 and portef1..5 (benchmark only).
    #[arg(long)]
    pub data_dir: Option<PathBuf>,
    /// Cardinality.
    #[arg(short = 'K', long = "cardinality")]
    pub k: Option<usize>,
    /// Lower weight bound for every asset.
    #[arg(long)]
    pub epsilon: Option<f64>,
    /// Upper weight bound for every asset.
    #[arg(long)]
    pub delta: Option<f64>,
    /// Buds per lambda.
    #[arg(long)]
    pub tmax: Option<u64>,
    /// Lambda grid size.
    #[arg(long)]
    pub points: Option<usize>,
    #[arg(long)]
    pub seed: Option<u64>,
    /// Selection pressure form: monotone or literal.
    #[arg(long)]
    pub eq18: Option<String>,
    /// Independent runs per dataset; the table reports the median.
    #[arg(long)]
    pub runs: Option<usize>,
    /// Output directory.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// `key=value` settings file.
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Record wall-clock time in errors.csv (breaks byte-identical reruns).
    #[arg(long)]
    pub timings: bool,
}

#[derive(Debug, Args)]
pub struct ValidateArgs {
    #[arg(long)]
    pub data: PathBuf,
    #[arg(long)]
    pub frontier: PathBuf,
    /// Expected number of reference frontier points.
    #[arg(long, default_value_t = 2000)]
    pub expect_points: usize,
}

impl SolverArgs {
    /// Defaults, then the config file, then explicit flags.
    pub fn resolve(&self) -> Result<RunConfig, CliError> {
        let mut cfg = RunConfig::default();
        if let Some(path) = &self.config {
            cfg.apply_file(path)?;
        }
        let path = |p: &Option<PathBuf>| p.as_ref().map(|p| p.display().to_string());
        let flags = [
            ("data", path(&self.data)),
            ("frontier", path(&self.frontier)),
            ("data_dir", path(&self.data_dir)),
            ("K", self.k.map(|v| v.to_string())),
            ("epsilon", self.epsilon.map(|v| v.to_string())),
            ("delta", self.delta.map(|v| v.to_string())),
            ("tmax", self.tmax.map(|v| v.to_string())),
            ("points", self.points.map(|v| v.to_string())),
            ("seed", self.seed.map(|v| v.to_string())),
            ("eq18", self.eq18.clone()),
            ("runs", self.runs.map(|v| v.to_string())),
        ];
        for (key, value) in flags {
            if let Some(v) = value {
                cfg.set(key, &v)?;
            }
        }
        // paths are kept as given rather than round-tripped through strings
        cfg.data = self.data.clone().or(cfg.data);
        cfg.frontier = self.frontier.clone().or(cfg.frontier);
        cfg.data_dir = self.data_dir.clone().or(cfg.data_dir);
        if let Some(out) = &self.out {
            cfg.out = out.clone();
        }
        cfg.timings |= self.timings;
        Ok(cfg)
    }
}

/// Parses `args` (including the program name), runs the command and returns
/// the process exit status.
pub fn run<I, T>(args: I, out: &mut impl Write, err: &mut impl Write, style: Style) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 3 } else { 0 };
            let _ = if e.use_stderr() {
                write!(err, "{e}")
            } else {
                write!(out, "{e}")
            };
            return code;
        }
    };
    let result = match &cli.command {
        Command::Frontier(a) => a
            .resolve()
            .and_then(|cfg| run_frontier(&cfg, out, style))
            .map(|_| 0),
        Command::Benchmark(a) => a
            .resolve()
            .and_then(|cfg| run_benchmark(&cfg, out, style))
            .map(|(c, _)| c),
        Command::Validate(a) => run_validate(&a.data, &a.frontier, a.expect_points, out, style),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "{} {e}", style.bad("error:"));
            e.exit_code()
        }
    }
}
