use thiserror::Error;

/// Errors surfaced by the library.
///
/// Variants are grouped so a front end can map them onto exit classes:
/// input/validation problems, violated hypotheses (the math is fine, the
/// input does not satisfy a theorem's assumptions), grid instability in the
/// Hilbert-function fits, and internal invariant violations.
#[derive(Error, Debug)]
pub enum Error {
    #[error("exponent vectors have mixed lengths: {0} vs {1}")]
    MixedLengths(usize, usize),

    #[error("ambient variable count mismatch: {0} vs {1}")]
    AmbientMismatch(usize, usize),

    #[error("variable index {index} out of range for {nvars} variables")]
    VariableIndex { index: usize, nvars: usize },

    #[error("operation requires a nonzero ideal")]
    ZeroIdeal,

    #[error("empty point set has no convex hull")]
    EmptyPointSet,

    #[error("ambient dimension {0} unsupported (exact hulls are limited to dimension <= 4)")]
    AmbientTooLarge(usize),

    #[error("multiset multiplicities sum to {got}, ambient dimension is {want}")]
    MultisetArity { got: usize, want: usize },

    #[error("invalid input: {0}")]
    Validation(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("hypothesis violated: {0}")]
    Hypothesis(String),

    #[error("hilbert fit unstable: {0}")]
    Stability(String),

    #[error("internal invariant violated: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
