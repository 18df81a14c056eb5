//! Run configuration: command-line flags over a `key=value` file over
//! defaults.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use aro_core::aro::PressureForm;
use aro_core::AroParams;

use crate::io::read_text;
use crate::CliError;

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub data: Option<PathBuf>,
    pub frontier: Option<PathBuf>,
    pub data_dir: Option<PathBuf>,
    pub k: usize,
    pub epsilon: f64,
    pub delta: f64,
    pub t_max: u64,
    pub points: usize,
    pub seed: u64,
    pub pressure: PressureForm,
    pub share_probability: f64,
    pub runs: usize,
    pub out: PathBuf,
    pub timings: bool,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            data: None,
            frontier: None,
            data_dir: None,
            k: 10,
            epsilon: 0.01,
            delta: 1.0,
            t_max: 20_000,
            points: 50,
            seed: 1,
            pressure: PressureForm::Monotone,
            share_probability: 0.5,
            runs: 1,
            out: PathBuf::from("."),
            timings: false,
        }
    }
}

impl RunConfig {
    pub fn params(&self) -> AroParams {
        AroParams {
            t_max: self.t_max,
            seed: self.seed,
            share_mutation_probability: self.share_probability,
            pressure: self.pressure,
        }
    }

    /// Applies one `key=value` setting.
    pub fn set(&mut self, key: &str, value: &str) -> Result<(), CliError> {
        fn num<T: std::str::FromStr>(key: &str, v: &str) -> Result<T, CliError> {
            v.parse()
                .map_err(|_| CliError::Config(format!("{key}: cannot parse {v:?}")))
        }
        match key {
            "data" => self.data = Some(PathBuf::from(value)),
            "frontier" => self.frontier = Some(PathBuf::from(value)),
            "data_dir" | "data-dir" => self.data_dir = Some(PathBuf::from(value)),
            "K" | "k" | "cardinality" => self.k = num(key, value)?,
            "epsilon" => self.epsilon = num(key, value)?,
            "delta" => self.delta = num(key, value)?,
            "tmax" | "t_max" => self.t_max = num(key, value)?,
            "points" => self.points = num(key, value)?,
            "seed" => self.seed = num(key, value)?,
            "eq18" => {
                self.pressure = value
                    .parse()
                    .map_err(|e: aro_core::Error| CliError::Config(e.to_string()))?
            }
            "share_probability" => self.share_probability = num(key, value)?,
            "runs" => self.runs = num(key, value)?,
            "out" => self.out = PathBuf::from(value),
            "timings" => self.timings = num(key, value)?,
            other => return Err(CliError::Config(format!("unknown setting {other:?}"))),
        }
        Ok(())
    }

    /// Applies every setting of a config file on top of `self`.
    pub fn apply_file(&mut self, path: &Path) -> Result<(), CliError> {
        let text = read_text(path)?;
        for (key, value) in parse_config_text(&text)? {
            self.set(&key, &value)?;
        }
        Ok(())
    }
}

/// Parses `key = value` lines. Blank lines and `#` comments are skipped.
pub fn parse_config_text(text: &str) -> Result<BTreeMap<String, String>, CliError> {
    let mut map = BTreeMap::new();
    for (n, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (k, v) = line.split_once('=').ok_or_else(|| {
            CliError::Config(format!("config line {}: expected key=value", n + 1))
        })?;
        map.insert(k.trim().to_string(), v.trim().to_string());
    }
    Ok(map)
}
