use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("invalid argument: {0}")]
    Argument(String),
    #[error("resource limit exceeded: {0}")]
    Resource(String),
    /// The postselected branch has (numerically) zero weight.
    #[error("postselection annihilates the state (probability {probability:e})")]
    Annihilated { probability: f64 },
    #[error("low-energy space is not connected to the constrained subspace (smallest overlap {overlap:e})")]
    Degenerate { overlap: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;
