use thiserror::Error;

#[derive(Debug, Error)]
pub enum LyError {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("operation requires a nonzero polynomial")]
    ZeroPolynomial,

    #[error("polynomial is not self-dual (max deviation {deviation:e})")]
    NotSelfDual { deviation: f64 },

    #[error("not a Lee-Yang polynomial: {0}")]
    NotLeeYang(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, LyError>;

pub(crate) fn invalid<T>(msg: impl Into<String>) -> Result<T> {
    Err(LyError::InvalidInput(msg.into()))
}
