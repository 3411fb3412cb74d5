use thiserror::Error;

use crate::symexpr::{ParseError, ZeroTestError};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GgError {
    #[error("chart mismatch: {0}")]
    ChartMismatch(String),
    #[error("unknown coordinate '{symbol}' on chart {chart}")]
    UnknownCoordinate { chart: String, symbol: String },
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("singular matrix: {0}")]
    Singular(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("parse error in {field}: {source}")]
    Parse { field: String, source: ParseError },
    #[error(transparent)]
    ZeroTest(#[from] ZeroTestError),
    #[error("scenario error at {location}: {msg}")]
    Scenario { location: String, msg: String },
    #[error("{0}")]
    Unsupported(String),
}

pub type Result<T> = std::result::Result<T, GgError>;
