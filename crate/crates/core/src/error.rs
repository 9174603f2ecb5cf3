use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GvError {
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("algebra mismatch: {0}")]
    AlgebraMismatch(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("validation failed: {0}")]
    Validation(String),
    #[error("unsupported case: {0}")]
    Unsupported(String),
    #[error("parse error: {0}")]
    Parse(String),
    /// Two independent constructions of the same map disagreed.
    #[error("internal consistency failure: {0}")]
    Consistency(String),
}

pub type Result<T, E = GvError> = std::result::Result<T, E>;
