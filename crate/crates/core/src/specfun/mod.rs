//! Special functions: gamma, Bessel, Gauss/Appell hypergeometric, Whittaker,
//! and the arithmetic sums feeding Fourier coefficients.
//!
//! Everything here is scalar, deterministic, and tolerance-driven: series
//! are controlled by a [`SeriesSpec`], integral representations by a
//! [`crate::quad::QuadratureSpec`]. The split matters because several
//! functions exist in both forms and the pair is used as a cross-check.

pub mod bessel;
pub mod dirichlet;
pub mod gamma;
pub mod hyper;
pub mod kernels;
pub mod whittaker;

pub use bessel::{bessel_k, bessel_k_scaled, i0_scaled};
pub use dirichlet::{ramanujan_phi, ramanujan_sum};
pub use gamma::{gamma, gamma_real, ln_gamma};
pub use hyper::{appell_f3, appell_f3_integral, gauss_2f1};
pub use kernels::{g_kernel, g_kernel_weighted, h_kernel};
pub use whittaker::{confluent_psi, weyl_fractional, whittaker_w};

use crate::error::{Error, Result};

/// Controls for direct series summation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesSpec {
    /// Hard cap on the number of terms (or diagonal blocks) summed.
    pub max_terms: usize,
    /// Relative tail threshold: summation stops once consecutive terms fall
    /// below `tail_tol * (1 + |partial sum|)`.
    pub tail_tol: f64,
    /// A term larger than this aborts the sum as divergent.
    pub divergence_guard: f64,
}

impl Default for SeriesSpec {
    fn default() -> Self {
        Self {
            max_terms: 4000,
            tail_tol: 1e-15,
            divergence_guard: 1e120,
        }
    }
}

impl SeriesSpec {
    pub fn validate(&self) -> Result<()> {
        if self.max_terms == 0 {
            return Err(Error::precondition("SeriesSpec: max_terms must be positive"));
        }
        if !(self.tail_tol > 0.0 && self.tail_tol < 1.0) {
            return Err(Error::precondition(
                "SeriesSpec: tail_tol must lie strictly between 0 and 1",
            ));
        }
        if !(self.divergence_guard > 1.0) {
            return Err(Error::precondition(
                "SeriesSpec: divergence_guard must exceed 1",
            ));
        }
        Ok(())
    }
}
