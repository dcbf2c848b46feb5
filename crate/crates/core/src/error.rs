use thiserror::Error;

/// Errors produced by metric, contraction, iteration and stability routines.
#[derive(Debug, Error)]
pub enum Error {
    /// A point or table does not have the dimension the space expects.
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    /// An input violates a documented precondition.
    #[error("rejected input: {0}")]
    RejectedInput(String),

    /// The operation is not defined for the requested contraction kind.
    #[error("unsupported contraction kind {kind}: {reason}")]
    UnsupportedKind {
        kind: &'static str,
        reason: &'static str,
    },

    /// A coefficient tuple fails its admissibility constraint.
    #[error("invalid coefficients: {0}")]
    InvalidCoefficients(String),

    /// A numeric argument lies outside the formula's domain.
    #[error("domain error: {0}")]
    Domain(String),

    /// Iteration produced a non-finite value.
    #[error("divergence at step {step}: iterate has a non-finite coordinate")]
    Divergence { step: usize },

    /// A truncated series cannot reach the requested tail tolerance.
    #[error(
        "series truncation: tail bound {tail_bound} still above {tail_tol} after {terms} terms"
    )]
    Truncation {
        tail_bound: f64,
        tail_tol: f64,
        terms: usize,
    },

    /// Two independent computations of the same quantity disagree.
    #[error("internal inconsistency: {0}")]
    Inconsistency(String),
}

pub type Result<T> = std::result::Result<T, Error>;
