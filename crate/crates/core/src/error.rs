//! Shared error type for the whole crate.

use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum Error {
    #[error("denominator is zero")]
    ZeroDenominator,

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("n = {n} outside supported range {min}..={max}")]
    NOutOfRange { n: usize, min: usize, max: usize },

    #[error("epsilon must be positive, got {0}")]
    NonPositiveEpsilon(String),

    #[error("invalid permutation image: {0}")]
    InvalidPermutation(String),

    #[error("permutation is not a single n-cycle")]
    NotATour,

    #[error("invalid shape: {0}")]
    BadShape(String),

    #[error("cannot parse rational from {0:?}")]
    ParseRational(String),

    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("invalid bracket: {0}")]
    BadBracket(String),

    #[error("epsilon is not verified good for this n and no override was given")]
    EpsilonNotVerified,

    #[error("projected dimension {dim} exceeds the default facet-enumeration guard ({limit}); pass the large-input override to proceed")]
    FacetSizeGuard { dim: usize, limit: usize },

    #[error("point set is not full-dimensional: affine dimension {found} < ambient dimension {ambient}")]
    NotFullDimensional { found: usize, ambient: usize },

    #[error("internal invariant violated: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
