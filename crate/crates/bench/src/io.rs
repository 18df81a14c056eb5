//! File loading and atomic output.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use aro_core::{
    parse_reference_frontier, parse_universe, AssetUniverse, RawUniverse, ReferenceFrontier,
};

use crate::CliError;

pub fn read_text(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|source| CliError::Read {
        path: path.to_path_buf(),
        source,
    })
}

pub fn load_raw_universe(path: &Path) -> Result<RawUniverse, CliError> {
    parse_universe(&read_text(path)?).map_err(|source| CliError::Data {
        path: path.to_path_buf(),
        source,
    })
}

pub fn load_universe(path: &Path) -> Result<AssetUniverse, CliError> {
    let raw = load_raw_universe(path)?;
    AssetUniverse::from_raw(&raw).map_err(|source| CliError::Data {
        path: path.to_path_buf(),
        source,
    })
}

pub fn load_frontier(path: &Path) -> Result<ReferenceFrontier, CliError> {
    parse_reference_frontier(&read_text(path)?).map_err(|source| CliError::Data {
        path: path.to_path_buf(),
        source,
    })
}

/// Writes `contents` to a temporary file in the target directory and renames
/// it over `path`.
pub fn write_atomic(path: &Path, contents: &[u8]) -> Result<(), CliError> {
    let err = |source| CliError::Write {
        path: path.to_path_buf(),
        source,
    };
    let dir = path
        .parent()
        .filter(|d| !d.as_os_str().is_empty())
        .unwrap_or(Path::new("."));
    let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(err)?;
    tmp.write_all(contents).map_err(err)?;
    tmp.as_file().sync_all().map_err(err)?;
    tmp.persist(path).map_err(|e| err(e.error))?;
    Ok(())
}

pub fn ensure_dir(dir: &Path) -> Result<(), CliError> {
    fs::create_dir_all(dir).map_err(|source| CliError::Write {
        path: dir.to_path_buf(),
        source,
    })
}

/// Locates `stem` in `dir`, accepting it with or without a `.txt` suffix.
pub fn find_dataset_file(dir: &Path, stem: &str) -> PathBuf {
    let txt = dir.join(format!("{stem}.txt"));
    if txt.exists() {
        txt
    } else if dir.join(stem).exists() {
        dir.join(stem)
    } else {
        txt
    }
}
