use thiserror::Error;

/// Errors raised by the library. Messages name the violated hypothesis.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("empty point set")]
    EmptyPointSet,
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("dimension must be at least 1")]
    ZeroDimension,
    #[error("duplicate point {0}")]
    DuplicatePoint(String),
    #[error("degenerate simplex")]
    DegenerateSimplex,
    #[error("k must be ≥ 1")]
    KZero,
    #[error("k must be ≥ 2 (bound divides by k−1)")]
    SubsumArity,
    #[error("set A_{0} is empty")]
    EmptySummand(usize),
    #[error("need at least {needed} points, got {got}")]
    TooFewPoints { needed: usize, got: usize },
    #[error("apex not exterior")]
    ApexNotExterior,
    #[error("apex lies outside the affine hull of the ground set")]
    ApexOffHull,
    #[error("point {0} is not in conv of the ground set")]
    PointOutsideHull(String),
    #[error("{0}")]
    Hypothesis(String),
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("invalid decomposition: {0}")]
    InvalidDecomposition(String),
    #[error("invalid generator config: {0}")]
    InvalidConfig(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
