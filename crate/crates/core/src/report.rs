//! Structured pass/fail records for numerical identity checks.

use std::fmt;

use serde::{Deserialize, Serialize};

/// The outcome of one verification: an identity tested at some number of
/// points, the worst residual observed, and the tolerance it was held to.
/// `identity` spells out the formula or property under test so the record
/// is self-describing in JSON output.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct VerificationReport {
    pub check: String,
    pub identity: String,
    pub points: usize,
    pub max_residual: f64,
    pub tolerance: f64,
    pub pass: bool,
}

impl VerificationReport {
    /// Build a report; a non-finite residual always fails.
    pub fn from_residual(
        check: impl Into<String>,
        identity: impl Into<String>,
        points: usize,
        max_residual: f64,
        tolerance: f64,
    ) -> Self {
        VerificationReport {
            check: check.into(),
            identity: identity.into(),
            points,
            max_residual,
            tolerance,
            pass: max_residual.is_finite() && max_residual <= tolerance,
        }
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[{}] {}: max residual {:.3e} (tolerance {:.1e}, {} point{})",
            if self.pass { "PASS" } else { "FAIL" },
            self.check,
            self.max_residual,
            self.tolerance,
            self.points,
            if self.points == 1 { "" } else { "s" },
        )
    }
}
