use thiserror::Error;

/// Errors raised across the crate.
#[derive(Debug, Error)]
pub enum LpcaError {
    /// An argument lies outside the mathematical domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),
    /// Invalid fit or generator configuration.
    #[error("config error: {0}")]
    Config(String),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    /// Malformed input text. `row` and `column` are 1-based; row 1 is the header.
    #[error("parse error at row {row}, column {column}: {message}")]
    Parse {
        row: usize,
        column: usize,
        message: String,
    },
    /// Input that parses but violates a data invariant.
    #[error("data error: {0}")]
    Data(String),
    #[error("correlation undefined: {0}")]
    UndefinedCorrelation(String),
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
    #[error("csv error: {0}")]
    Csv(#[from] csv::Error),
}

pub type Result<T> = std::result::Result<T, LpcaError>;
