use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// Quantum numbers or angles outside their allowed range.
    #[error("domain error: {0}")]
    Domain(String),
    #[error("vector {0:?} is not a unit vector")]
    NotUnit([f64; 3]),
    #[error("degenerate input: {0}")]
    Degenerate(String),
    #[error("invalid shell n = {0}")]
    InvalidShell(usize),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;
