use thiserror::Error;

/// Errors raised by horokit operations.
///
/// Audit failures (a Lipschitz violation found in a sample, a functional that
/// does not attain its minimum) are *not* errors: they are returned as
/// [`crate::Audit`] values. Errors describe inputs that cannot be processed.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid space: distance between {a} and {b} is {reason}")]
    InvalidSpace {
        a: String,
        b: String,
        reason: String,
    },

    #[error("invalid point: {0}")]
    InvalidPoint(String),

    #[error("invalid distortion: {0}")]
    InvalidDistortion(String),

    #[error("point outside domain: {0}")]
    Domain(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("group family mismatch: {0}")]
    FamilyMismatch(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("ball size limit {limit} exceeded at radius {radius}")]
    ResourceLimit { limit: usize, radius: usize },

    #[error("budget exhausted after {iterations} iterations: {what}")]
    BudgetExhausted { what: String, iterations: usize },

    #[error("function is not 1-Lipschitz: |f({a}) - f({b})| = {gap} > d = {dist}")]
    NotLipschitz {
        a: String,
        b: String,
        gap: String,
        dist: String,
    },

    #[error("measure is not invariant: {0}")]
    NonInvariant(String),

    #[error("orbit is not monotone at index {index}")]
    NotMonotone { index: usize },

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
