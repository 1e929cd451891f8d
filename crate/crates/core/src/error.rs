//! Error type shared by every module of the crate.

use thiserror::Error;

/// Failure modes of the entropy computations.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument lies outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// Model parameters rejected at construction.
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// An integral that is infinite, detected from non-Cauchy partial sums.
    #[error("integral diverges (partial value {partial:.6e} when the budget ran out)")]
    Divergent { partial: f64 },

    /// The quadrature budget was exhausted before the tolerance was met.
    #[error("quadrature did not converge: value {partial:.6e}, error estimate {error_estimate:.3e}")]
    NotConverged { partial: f64, error_estimate: f64 },

    /// The integrand produced a NaN or infinity at an interior node.
    #[error("integrand is not finite at x = {at:e}")]
    NonFinite { at: f64 },

    /// A requested evaluation route does not exist for this model.
    #[error("unsupported: {0}")]
    Unsupported(String),

    /// A hypothesis needed by a bound construction does not hold.
    #[error("precondition failed: {0}")]
    Precondition(String),

    /// Malformed textual input (model specification, ranges).
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Domain(msg.into()))
}
