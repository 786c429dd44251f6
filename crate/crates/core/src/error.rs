use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("hypothesis failed: {0}")]
    Hypothesis(String),
    #[error("unknown name: {0}")]
    Unknown(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn dim_check(what: &str, expected: usize, got: usize) -> Result<()> {
    if expected == got {
        Ok(())
    } else {
        Err(Error::Dimension(format!("{what}: expected {expected}, got {got}")))
    }
}
