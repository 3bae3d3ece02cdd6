use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: r = {left} vs r = {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("not applicable: {0}")]
    NotApplicable(String),

    #[error("coefficient outside the supported range |x| <= 2^40")]
    Overflow,

    #[error("cannot parse class {input:?}: {reason}")]
    Parse { input: String, reason: String },

    #[error("refused: {0}")]
    Refused(String),

    #[error("invalid prime {prime}: {reason}")]
    InvalidPrime { prime: u64, reason: String },

    #[error("could not draw {points} distinct points after {attempts} attempts")]
    RetryExhausted { points: usize, attempts: usize },
}

pub type Result<T> = std::result::Result<T, Error>;
