use alloc::string::String;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("incomplete data: {0}")]
    IncompleteData(String),

    #[error("index {index} out of range 1..={n} at line {line}")]
    IndexOutOfRange { index: i64, n: usize, line: usize },

    #[error("validation failed: {0}")]
    Validation(String),

    #[error("insufficient data: {0}")]
    InsufficientData(String),

    #[error("degenerate input: {0}")]
    DegenerateInput(String),

    #[error("infeasible bounds: {0}")]
    Infeasible(String),

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("degenerate reference frontier: {0}")]
    DegenerateReference(String),

    #[error("empty input: {0}")]
    EmptyInput(String),
}
