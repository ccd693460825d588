use thiserror::Error;

/// Errors produced by channel construction, transforms and the codec.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("channel is not symmetric")]
    Asymmetric,

    #[error("pattern of length {len} exceeds the explicit-construction limit {max}")]
    PatternTooLong { len: usize, max: usize },

    #[error("order {order} outside supported range {min}..={max}")]
    OrderOutOfRange { order: u32, min: u32, max: u32 },

    #[error("mixture grew to {parts} parts, exceeding the cap of {cap}")]
    PartBudgetExceeded { parts: usize, cap: usize },

    #[error("length mismatch: expected {expected}, got {actual}")]
    LengthMismatch { expected: usize, actual: usize },

    #[error("no printed bound for pattern {0:?}")]
    UnsupportedPattern(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
