use thiserror::Error;

/// Errors raised by constructors and operations of this crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid partition: {0}")]
    InvalidPartition(String),
    #[error("invalid dynamics: {0}")]
    InvalidDynamics(String),
    #[error("invalid reversion: {0}")]
    InvalidReversion(String),
    #[error("dynamics is not invertible")]
    NotInvertible,
    #[error("system is not equilibrium bound: orbit {orbit:?} never meets the equilibrium set")]
    NotEquilibriumBound { orbit: Vec<usize> },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("size limit exceeded: {0}")]
    TooLarge(String),
    #[error("polytope is unbounded: {0}")]
    Unbounded(String),
    #[error("solver failure: {0}")]
    Solver(String),
}

pub type Result<T> = std::result::Result<T, Error>;
