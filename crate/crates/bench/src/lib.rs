//! Benchmark harness and CLI for [`aro_core`]: OR-Library file loading,
//! parallel frontier tracing, CSV and SVG reports.

pub mod cli;
pub mod commands;
pub mod config;
pub mod diagnostics;
mod error;
pub mod io;
pub mod parallel;
pub mod report;
pub mod svg;

pub use error::CliError;
