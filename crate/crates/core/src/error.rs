use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum WhaError {
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("no solution")]
    NoSolution,
    #[error("not a weak Hopf algebra: {0}")]
    NotAWha(String),
    #[error("internal consistency failure: {0}")]
    Inconsistent(String),
    #[error("no dual pair: {0}")]
    NoDualPair(String),
    #[error("degenerate functional: {0}")]
    Degenerate(String),
    #[error("not positive: {0}")]
    NotPositive(String),
    #[error("split failed: {0}")]
    SplitFailed(String),
    #[error("index must be 1: {0}")]
    IndexNotOne(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("invalid construction input: {0}")]
    InvalidInput(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, WhaError>;
