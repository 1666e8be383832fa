//! Central-binomial and truncated confluent series used by the Fourier
//! layer.
//!
//! The weight
//!
//! ```text
//! G(z) = Σ_{k≥0} C(2k, k) z^k / (2^k k!)
//! ```
//!
//! satisfies `G(z) = e^z I_0(z)` (match the coefficients of both sides), so
//! the combination `e^{-2z} G(z)` that actually appears inside integrals is
//! the scaled Bessel function `e^{-z} I_0(z)` — bounded by 1 on z ≥ 0 and
//! safe at arguments where `G` alone overflows.
//!
//! The companion series
//!
//! ```text
//! H_n(z) = Σ_{k ≥ n-1} (q)_k (2z)^k / (k! (k-n+1)!),   q = 1 - n/2,
//! ```
//!
//! starts at k = n-1 and terminates (identically zero) for every even
//! dimension n, because then q is a nonpositive integer and (q)_k dies
//! before the series starts. That degeneracy is real, not a bug, and
//! [`h_kernel`] reports it exactly.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::specfun::bessel::i0_scaled;
use crate::specfun::SeriesSpec;

/// The central-binomial weight `G(z) = Σ C(2k,k) z^k / (2^k k!)`, an entire
/// function. Overflows (and errors) for large positive z — use
/// [`g_kernel_weighted`] inside integrands.
pub fn g_kernel(z: Complex64, series: &SeriesSpec) -> Result<Complex64> {
    series.validate()?;
    let mut term = Complex64::new(1.0, 0.0);
    let mut sum = term;
    let mut quiet = 0u32;
    for k in 0..series.max_terms {
        let kf = k as f64;
        // t_{k+1}/t_k = z (2k+1) / (k+1)^2.
        term *= z * (2.0 * kf + 1.0) / ((kf + 1.0) * (kf + 1.0));
        sum += term;
        if !sum.is_finite() || term.norm() > series.divergence_guard {
            return Err(Error::Series {
                what: "g_kernel".into(),
                terms: k + 1,
            });
        }
        if term.norm() <= series.tail_tol * (1.0 + sum.norm()) {
            quiet += 1;
            if quiet >= 2 {
                return Ok(sum);
            }
        } else {
            quiet = 0;
        }
    }
    Err(Error::Series {
        what: "g_kernel (term budget exhausted)".into(),
        terms: series.max_terms,
    })
}

/// `e^{-2z} G(z)` for real z ≥ 0, computed as the scaled Bessel function
/// `e^{-z} I_0(z)` so that no intermediate overflows or underflows. This is
/// the form every integrand should use.
pub fn g_kernel_weighted(z: f64) -> Result<f64> {
    if !(z >= 0.0) {
        return Err(Error::precondition("g_kernel_weighted requires z >= 0"));
    }
    Ok(i0_scaled(z))
}

/// The truncated confluent series `H_n(z)` (module docs). Exactly zero for
/// even n; a polynomial-free entire series for odd n.
pub fn h_kernel(n: u32, z: Complex64, series: &SeriesSpec) -> Result<Complex64> {
    series.validate()?;
    if n == 0 {
        return Err(Error::precondition("h_kernel requires n >= 1"));
    }
    if n % 2 == 0 {
        // q = 1 - n/2 is a nonpositive integer, so (q)_k = 0 for all
        // k >= n/2; the series starts at k = n-1 >= n/2 and has no terms.
        return Ok(Complex64::default());
    }
    let q = 1.0 - n as f64 / 2.0;

    // Head term t_{n-1} = (q)_{n-1} (2z)^{n-1} / ((n-1)! 0!).
    let mut head = Complex64::new(1.0, 0.0);
    for i in 0..(n - 1) {
        let i = i as f64;
        head *= (q + i) * 2.0 * z / (i + 1.0);
    }
    let mut term = head;
    let mut sum = term;
    let mut quiet = 0u32;
    for k in (n - 1) as usize..series.max_terms {
        let kf = k as f64;
        // t_{k+1}/t_k = 2z (q + k) / ((k+1)(k-n+2)).
        term *= 2.0 * z * (q + kf) / ((kf + 1.0) * (kf - n as f64 + 2.0));
        sum += term;
        if !sum.is_finite() || term.norm() > series.divergence_guard {
            return Err(Error::Series {
                what: "h_kernel".into(),
                terms: k + 1,
            });
        }
        if term.norm() <= series.tail_tol * (1.0 + sum.norm()) {
            quiet += 1;
            if quiet >= 2 {
                return Ok(sum);
            }
        } else {
            quiet = 0;
        }
    }
    Err(Error::Series {
        what: "h_kernel (term budget exhausted)".into(),
        terms: series.max_terms,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use num_complex::Complex64;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    fn series() -> SeriesSpec {
        SeriesSpec::default()
    }

    #[test]
    fn g_kernel_value_at_one() {
        // Partial sum of Σ C(2k,k)/(2^k k!) through k = 20, accumulated from
        // the raw binomial definition as an independent check (the tail
        // beyond k = 20 is below 1e-13 relative).
        let mut expected = 0.0f64;
        let mut binom = 1.0f64; // C(0,0)
        let mut pow = 1.0f64; // 2^k k!
        for k in 0..=20u32 {
            if k > 0 {
                let kf = k as f64;
                binom *= (2.0 * kf - 1.0) * 2.0 * kf / (kf * kf);
                pow *= 2.0 * kf;
            }
            expected += binom / pow;
        }
        let g = g_kernel(c(1.0), &series()).unwrap();
        assert_relative_eq!(g.re, expected, max_relative = 1e-12);
    }

    #[test]
    fn g_kernel_at_zero() {
        assert_relative_eq!(g_kernel(c(0.0), &series()).unwrap().re, 1.0);
    }

    #[test]
    fn weighted_form_matches_plain_product() {
        // e^{-2z} G(z) computed the stable way vs the naive product, on the
        // range where the naive product is still representable.
        for &z in &[0.5f64, 1.0, 5.0, 20.0, 50.0] {
            let plain = (-2.0 * z).exp() * g_kernel(c(z), &series()).unwrap().re;
            let weighted = g_kernel_weighted(z).unwrap();
            assert_relative_eq!(weighted, plain, max_relative = 1e-11);
        }
    }

    #[test]
    fn weighted_form_survives_extreme_arguments() {
        // At z = 1e4 the plain G overflows f64, the weighted form must not.
        let w = g_kernel_weighted(1e4).unwrap();
        assert!(w.is_finite() && w > 0.0 && w < 1.0);
    }

    #[test]
    fn h_kernel_even_dimension_collapses() {
        for &n in &[2u32, 4, 6] {
            for &z in &[0.0, 0.3, 2.0] {
                assert_eq!(h_kernel(n, c(z), &series()).unwrap(), Complex64::default());
            }
        }
    }

    #[test]
    fn h_kernel_odd_dimension_heads() {
        // n = 1: series starts at k = 0 with t_0 = 1.
        let h = h_kernel(1, c(0.0), &series()).unwrap();
        assert_relative_eq!(h.re, 1.0);
        // n = 3: head term is (q)_2 (2z)^2 / 2! = -z^2/2 with q = -1/2.
        let z = 1e-3;
        let h = h_kernel(3, c(z), &series()).unwrap();
        assert_relative_eq!(h.re, -z * z / 2.0, max_relative = 1e-2);
    }
}
