use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("computation too large: {0}")]
    TooLarge(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("parse error at column {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("division by zero in the base field")]
    DivisionByZero,
    #[error("singular matrix")]
    Singular,
    #[error("ring mismatch: {0}")]
    RingMismatch(String),
    #[error("sampling failed after {0} attempts")]
    RetryExhausted(usize),
    #[error("interpolation did not stabilize in degree {0}")]
    NotStabilized(u32),
    #[error("projection is not generically finite: {0}")]
    NotFinite(String),
    #[error("check failed: {0}")]
    Mismatch(String),
}

pub type Result<T> = std::result::Result<T, Error>;
