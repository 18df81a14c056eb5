use std::path::PathBuf;

/// Failures of a CLI command, partitioned by exit status.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Read {
        path: PathBuf,
        source: std::io::Error,
    },

    #[error("{path}: {source}")]
    Data {
        path: PathBuf,
        source: aro_core::Error,
    },

    #[error("cannot write {path}: {source}")]
    Write {
        path: PathBuf,
        source: std::io::Error,
    },

    #[error("configuration: {0}")]
    Config(String),

    #[error(transparent)]
    Solver(aro_core::Error),
}

impl CliError {
    /// 2 for unreadable or malformed input and output failures, 3 for
    /// configuration errors.
    pub fn exit_code(&self) -> i32 {
        match self {
            Self::Read { .. } | Self::Data { .. } | Self::Write { .. } => 2,
            Self::Config(_) => 3,
            Self::Solver(e) => match e {
                aro_core::Error::Config(_) | aro_core::Error::Infeasible(_) => 3,
                _ => 2,
            },
        }
    }
}

impl From<aro_core::Error> for CliError {
    fn from(e: aro_core::Error) -> Self {
        Self::Solver(e)
    }
}
