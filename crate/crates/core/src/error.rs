use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("n = {n} is outside the supported range 1..={limit} for {what}")]
    Size { n: usize, limit: usize, what: &'static str },
    #[error("invalid input: {0}")]
    Validation(String),
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("integer overflow: {0}")]
    Overflow(String),
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn check_size(n: usize, limit: usize, what: &'static str) -> Result<()> {
    if n == 0 || n > limit {
        return Err(Error::Size { n, limit, what });
    }
    Ok(())
}
