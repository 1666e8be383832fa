//! Whittaker W function, Tricomi's confluent function, and the Weyl
//! fractional integral.
//!
//! Tricomi's function is computed from its Laplace-type representation
//!
//! ```text
//! Ψ(a, c; x) = Γ(a)^{-1} ∫_0^∞ e^{-x t} t^{a-1} (1+t)^{c-a-1} dt,
//!     Re a > 0, Re x > 0,
//! ```
//!
//! and the Whittaker function is its exponentially weighted form
//!
//! ```text
//! W_{κ,μ}(x) = e^{-x/2} x^{μ+1/2} Ψ(1/2 - κ + μ, 1 + 2μ; x).
//! ```
//!
//! The Weyl fractional integral of order μ,
//!
//! ```text
//! h(y) = Γ(μ)^{-1} ∫_y^∞ f(x) (x - y)^{μ-1} dx,
//! ```
//!
//! is what carries a Bessel-type decay profile into a Whittaker one; the
//! pairing is pinned down by the tests and reused by the Fourier layer.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::quad::QuadratureSpec;
use crate::specfun::gamma::ln_gamma;

/// Tricomi confluent function Ψ(a, c; x) for Re a > 0, Re x > 0.
pub fn confluent_psi(
    a: Complex64,
    c: Complex64,
    x: Complex64,
    spec: &QuadratureSpec,
) -> Result<Complex64> {
    spec.validate()?;
    if !(a.re > 0.0) {
        return Err(Error::precondition("confluent_psi requires Re a > 0"));
    }
    if !(x.re > 0.0) {
        return Err(Error::precondition("confluent_psi requires Re x > 0"));
    }
    let lg = ln_gamma(a)?;
    // t^{a-1} is integrable at 0 but singular for Re a < 1; substitute
    // t = e^u (u over the whole line) which regularizes both endpoints:
    // integrand e^{-x e^u + a u} (1 + e^u)^{c-a-1}.
    let integrand = move |u: f64| -> Complex64 {
        let t = u.exp();
        if !t.is_finite() {
            return Complex64::default();
        }
        let log_term = -x * t + a * u + (c - a - 1.0) * (1.0 + t).ln();
        let v = log_term.exp();
        if v.is_finite() {
            v
        } else {
            Complex64::default()
        }
    };
    // The bulk sits near t ≈ a/x for large x, i.e. u ≈ ln(a.re/x.re); the
    // scanning integrator walks outward from there.
    let (value, _err) = crate::quad::integrate_scan(
        integrand,
        (a.re / x.re).max(1e-8).ln(),
        spec,
    )?;
    Ok((-lg).exp() * value)
}

/// Whittaker function W_{κ,μ}(x) for real x > 0, on the parameter range
/// Re(1/2 - κ + μ) > 0 where the Ψ integral converges.
pub fn whittaker_w(
    kappa: Complex64,
    mu: Complex64,
    x: f64,
    spec: &QuadratureSpec,
) -> Result<Complex64> {
    if !(x > 0.0) {
        return Err(Error::precondition("whittaker_w requires x > 0"));
    }
    let a = Complex64::new(0.5, 0.0) - kappa + mu;
    let c = Complex64::new(1.0, 0.0) + 2.0 * mu;
    let psi = confluent_psi(a, c, Complex64::new(x, 0.0), spec)?;
    let head = ((mu + 0.5) * x.ln() - x / 2.0).exp();
    Ok(head * psi)
}

/// Weyl fractional integral of order μ > 0 of `f`, evaluated at `y`:
/// `Γ(μ)^{-1} ∫_y^∞ f(x) (x-y)^{μ-1} dx`. The profile `f` must decay fast
/// enough for the integral to converge; all callers here feed exponentially
/// decaying profiles.
pub fn weyl_fractional<F>(f: F, mu: f64, y: f64, spec: &QuadratureSpec) -> Result<Complex64>
where
    F: Fn(f64) -> Complex64,
{
    if !(mu > 0.0) {
        return Err(Error::precondition("weyl_fractional requires μ > 0"));
    }
    let lg = ln_gamma(Complex64::new(mu, 0.0))?;
    // Substitute x = y + e^u by hand: the weight becomes
    // (x-y)^{μ-1} dx = e^{μu} du with x-y held exactly as e^u, so the
    // μ < 1 endpoint singularity never meets the rounding of y + e^u.
    let (value, _err) = crate::quad::integrate_scan(
        |u| {
            let step = u.exp();
            if !step.is_finite() {
                return Complex64::default();
            }
            f(y + step) * (mu * u).exp()
        },
        0.0,
        spec,
    )?;
    Ok((-lg).exp() * value)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quad::QuadratureSpec;
    use crate::specfun::bessel::bessel_k_scaled;
    use approx::assert_relative_eq;
    use num_complex::Complex64;
    use std::f64::consts::PI;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn psi_elementary_value() {
        // Ψ(1, 2; x) = 1/x exactly: ∫_0^∞ e^{-xt} dt · (1+t)^0 … with a = 1,
        // c = 2 the weight (1+t)^{c-a-1} is 1.
        let spec = QuadratureSpec::default();
        let v = confluent_psi(c(1.0), c(2.0), c(2.0), &spec).unwrap();
        assert_relative_eq!(v.re, 0.5, max_relative = 1e-10);
        assert!(v.im.abs() < 1e-12);
    }

    #[test]
    fn psi_kummer_consistency() {
        // Ψ(a, a+1; x) = x^{-a}: the integral becomes Γ(a)^{-1}∫ e^{-xt}t^{a-1}dt.
        let spec = QuadratureSpec::default();
        for &(a, x) in &[(0.5, 1.0), (1.7, 3.0), (2.5, 0.4)] {
            let v = confluent_psi(c(a), c(a + 1.0), c(x), &spec).unwrap();
            assert_relative_eq!(v.re, x.powf(-a), max_relative = 1e-9);
        }
    }

    #[test]
    fn whittaker_matches_bessel_k_identity() {
        // W_{0,ν}(2x) = √(x/π) · 2 K_ν(x) — equivalently
        // K_ν(x) = √(π/(2x)) W_{0,ν}(2x).
        let spec = QuadratureSpec::default();
        for &(nu, x) in &[(0.3, 0.8), (0.0, 1.5), (0.45, 2.2)] {
            let w = whittaker_w(c(0.0), c(nu), 2.0 * x, &spec).unwrap();
            let k = bessel_k_scaled(c(nu), x, &spec).unwrap() * (-x).exp();
            assert_relative_eq!(
                (PI / (2.0 * x)).sqrt() * w.re,
                k.re,
                max_relative = 1e-9
            );
        }
    }

    #[test]
    fn weyl_order_one_is_plain_integration() {
        // μ = 1 reduces to ∫_y^∞ f, so for f = e^{-x} the result is e^{-y}.
        let spec = QuadratureSpec::default();
        let h = weyl_fractional(|x| c((-x).exp()), 1.0, 0.7, &spec).unwrap();
        assert_relative_eq!(h.re, (-0.7f64).exp(), max_relative = 1e-10);
    }

    #[test]
    fn weyl_exponential_reproduces_itself() {
        // For f = e^{-x}: Γ(μ)^{-1} ∫_y^∞ e^{-x}(x-y)^{μ-1} dx = e^{-y}
        // for every μ > 0, including the singular-endpoint range μ < 1.
        let spec = QuadratureSpec::default();
        for &mu in &[0.4, 2.0, 3.3] {
            let h = weyl_fractional(|x| c((-x).exp()), mu, 1.0, &spec).unwrap();
            assert_relative_eq!(h.re, (-1.0f64).exp(), max_relative = 1e-9);
        }
    }

    #[test]
    fn weyl_of_bessel_profile_is_whittaker() {
        // The transform pairing used by the Fourier layer: for
        // f(x) = x^{-ν} e^{-αx} K_ν(αx) (written via the scaled K so the
        // product never underflows),
        //   Γ(μ)^{-1}∫_y^∞ f(x)(x-y)^{μ-1}dx
        //     = √π (2α)^{-μ/2-1/2} y^{μ/2-ν-1/2} e^{-αy} W_{-μ/2, ν-μ/2}(2αy).
        let spec = QuadratureSpec::default();
        let (nu, alpha, mu, y) = (0.3, 1.0, 0.8, 0.9);
        let f = |x: f64| {
            let k = bessel_k_scaled(c(nu), alpha * x, &spec).unwrap();
            c(x.powf(-nu) * (-2.0 * alpha * x).exp()) * k
        };
        let lhs = weyl_fractional(f, mu, y, &spec).unwrap();
        let w = whittaker_w(c(-mu / 2.0), c(nu - mu / 2.0), 2.0 * alpha * y, &spec).unwrap();
        let rhs = PI.sqrt()
            * (2.0 * alpha).powf(-mu / 2.0 - 0.5)
            * y.powf(mu / 2.0 - nu - 0.5)
            * (-alpha * y).exp()
            * w;
        assert_relative_eq!(lhs.re, rhs.re, max_relative = 1e-8);
        assert!(lhs.im.abs() < 1e-10);
    }

    #[test]
    fn preconditions() {
        let spec = QuadratureSpec::default();
        assert!(confluent_psi(c(-0.5), c(1.0), c(1.0), &spec).is_err());
        assert!(confluent_psi(c(1.0), c(1.0), c(-1.0), &spec).is_err());
        assert!(whittaker_w(c(0.0), c(0.3), -1.0, &spec).is_err());
        assert!(weyl_fractional(|_| c(0.0), 0.0, 1.0, &spec).is_err());
    }
}
