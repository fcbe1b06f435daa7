use thiserror::Error;

/// Errors produced by the model constructors and operations.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("empty product")]
    EmptyProduct,
    #[error("non-unit direction: |n| = {0}")]
    NonUnitDirection(f64),
    #[error("outside Bloch ball: |r| = {0}")]
    OutsideBlochBall(f64),
    #[error("invalid distribution: {0}")]
    InvalidDistribution(String),
    #[error("invalid model: {0}")]
    InvalidModel(String),
    #[error("invalid grid: {0} steps (need at least 4)")]
    InvalidGrid(usize),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("breaks antipodal constraint: {0}")]
    BreaksAntipodalConstraint(String),
    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),
    #[error("invalid mixture: {0}")]
    InvalidMixture(String),
    #[error("negative weight at lambda = {0}; signed distributions cannot be sampled")]
    NegativeWeight(u8),
}

pub type Result<T> = std::result::Result<T, Error>;
