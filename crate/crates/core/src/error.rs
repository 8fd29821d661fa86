use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// Lower parameter of a hypergeometric series sits on a pole.
    #[error("pole: {0}")]
    Pole(String),
    #[error("series did not converge: {0}")]
    NonConvergence(String),
    #[error("argument outside domain: {0}")]
    Domain(String),
    #[error("index out of range: {0}")]
    Index(String),
    #[error("invalid state: {0}")]
    State(String),
    /// Adaptive step control could not reach the requested tolerance.
    #[error("integration step failure: {0}")]
    StepFailure(String),
    #[error("overflow: {0}")]
    Overflow(String),
}

pub type Result<T> = std::result::Result<T, Error>;
