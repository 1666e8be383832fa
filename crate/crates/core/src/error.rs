//! Error taxonomy shared by every numerical routine in this crate.
//!
//! Routines distinguish between *caller* mistakes (parameters outside the
//! documented domain, stencils that would step outside a chart, evaluation at
//! a pole) and *numerical* breakdowns (quadrature that cannot reach the
//! requested tolerance, series that trip the divergence guard, catastrophic
//! cancellation in a denominator). The distinction matters to the CLI, which
//! maps the first group to exit code 2 and the second to exit code 3.

use thiserror::Error;

/// Everything that can go wrong while evaluating a quantity.
#[derive(Debug, Clone, Error)]
pub enum Error {
    /// A documented precondition on the inputs was violated. The message
    /// names the violated constraint.
    #[error("precondition violated: {0}")]
    Precondition(String),

    /// Evaluation was requested at (or numerically indistinguishable from) a
    /// pole of the quantity.
    #[error("pole: {0}")]
    Pole(String),

    /// A finite-difference stencil would leave the domain of the chart, or a
    /// point lies outside the model domain.
    #[error("domain: {0}")]
    Domain(String),

    /// Adaptive quadrature exhausted its subdivision budget before reaching
    /// the requested tolerance; `residual` is the error estimate it got
    /// stuck at.
    #[error("quadrature failure in {what}: residual estimate {residual:.3e}")]
    Quadrature { what: String, residual: f64 },

    /// A series summation tripped its divergence guard or ran out of terms.
    #[error("series failure in {what} after {terms} terms")]
    Series { what: String, terms: usize },

    /// A denominator is too close to zero for the result to carry meaning;
    /// `magnitude` is the offending modulus.
    #[error("conditioning failure in {what}: |denominator| = {magnitude:.3e}")]
    Conditioning { what: String, magnitude: f64 },
}

impl Error {
    /// Shorthand used all over the crate.
    pub fn precondition(msg: impl Into<String>) -> Self {
        Error::Precondition(msg.into())
    }

    /// True for errors the CLI reports as "bad input" (exit code 2) rather
    /// than "numerical failure" (exit code 3).
    pub fn is_input_error(&self) -> bool {
        matches!(
            self,
            Error::Precondition(_) | Error::Pole(_) | Error::Domain(_)
        )
    }
}

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;
