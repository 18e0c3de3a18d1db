use thiserror::Error;

/// Errors produced by the analysis routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("arity {n} exceeds the limit {max} for {what}")]
    ArityTooLarge {
        n: usize,
        max: usize,
        what: &'static str,
    },
    #[error("arity must be at least {min}, got {n}")]
    ArityTooSmall { n: usize, min: usize },
    #[error("arity mismatch: {left} vs {right}")]
    ArityMismatch { left: usize, right: usize },
    #[error("function index {index} out of range for n = {n}")]
    IndexOutOfRange { n: usize, index: u64 },
    #[error("{what} = {value} is out of range")]
    ValueOutOfRange { what: &'static str, value: i64 },
    #[error("expected {expected} values, got {got}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("not the Walsh-Hadamard spectrum of a boolean function")]
    InvalidSpectrum,
    #[error("correlation entry {index} = {value} exceeds 1 in magnitude")]
    InvalidCorrelation { index: usize, value: f64 },
    #[error("no value supplied for variable x{0}")]
    MissingVariable(u32),
    #[error("no color assigned to grid value {0}")]
    UnmappedValue(String),
}

pub type Result<T> = std::result::Result<T, Error>;
