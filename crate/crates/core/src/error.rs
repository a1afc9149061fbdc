use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("not a field: {0}")]
    NotAField(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("budget exceeded: {0}")]
    BudgetExceeded(String),
    #[error("invalid combination: {0}")]
    InvalidCombination(String),
    #[error("out of family: {0}")]
    OutOfFamily(String),
    #[error("trivial-norm violation: {0}")]
    TrivialNorm(String),
    #[error("internal error: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
