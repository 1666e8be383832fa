//! Gauss and Appell hypergeometric functions.
//!
//! `gauss_2f1` sums the defining series
//!
//! ```text
//! 2F1(a, b; c; z) = Σ_k (a)_k (b)_k / ((c)_k k!) z^k,    |z| < 1,
//! ```
//!
//! and reaches real z < -1 through the connection
//! `2F1(a,b;c;z) = (1-z)^{-a} 2F1(a, c-b; c; z/(z-1))`, which maps the whole
//! negative axis into [0, 1). That is exactly the region the radial kernels
//! live on (their argument is `-1/x` with x > 0).
//!
//! The third Appell function
//!
//! ```text
//! F3(α, α'; β, β'; γ; x, y) = Σ_{m,n} (α)_m (α')_n (β)_m (β')_n
//!                             / ((γ)_{m+n} m! n!) x^m y^n
//! ```
//!
//! is summed by diagonal blocks m+n = k inside the unit bidisk, and
//! evaluated for the kernel arguments through its integral representation
//! over the standard simplex
//!
//! ```text
//! F3 = Γ(γ) / (Γ(β) Γ(β') Γ(γ-β-β')) ∬_{u,v ≥ 0, u+v ≤ 1}
//!      u^{β-1} v^{β'-1} (1-u-v)^{γ-β-β'-1} (1-ux)^{-α} (1-vy)^{-α'} du dv,
//! ```
//!
//! valid for Re β > 0, Re β' > 0, Re(γ-β-β') > 0. The simplex is split as
//! `u = ξζ, v = ξ(1-ζ)` and both one-dimensional factors go through the
//! tanh–sinh rule, which absorbs all three Beta-type endpoint weights.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::quad::{QuadratureSpec, TanhSinh};
use crate::specfun::gamma::ln_gamma;
use crate::specfun::SeriesSpec;

/// z^e for real z > 0 and complex e, on the principal branch.
pub fn pow_real(z: f64, e: Complex64) -> Complex64 {
    debug_assert!(z > 0.0);
    (e * z.ln()).exp()
}

/// z^e on the principal branch, restricted to bases in the right half
/// plane. All power laws in this crate stay there by construction; a base
/// drifting out signals a bug or an out-of-domain call, so it is an error.
pub fn pow_principal(z: Complex64, e: Complex64) -> Result<Complex64> {
    if !(z.re > 0.0) {
        return Err(Error::Domain(format!(
            "principal power of a base outside the right half plane: {z}"
        )));
    }
    Ok((e * z.ln()).exp())
}

fn near_nonpositive_int(z: Complex64) -> bool {
    z.im.abs() < 1e-12 && (z.re - z.re.round()).abs() < 1e-12 && z.re.round() <= 0.0
}

/// Gauss hypergeometric function for |z| < 1, plus the continuation to the
/// whole negative real axis described in the module docs.
pub fn gauss_2f1(
    a: Complex64,
    b: Complex64,
    c: Complex64,
    z: Complex64,
    series: &SeriesSpec,
) -> Result<Complex64> {
    series.validate()?;
    if near_nonpositive_int(c) {
        return Err(Error::Pole(
            "gauss_2f1: lower parameter at a nonpositive integer".into(),
        ));
    }
    if z.norm() < 0.75 {
        return gauss_2f1_series(a, b, c, z, series);
    }
    if z.im == 0.0 && z.re < 0.0 {
        // Map z ∈ (-∞, 0) to z/(z-1) ∈ (0, 1).
        let zt = z / (z - 1.0);
        let head = pow_principal(Complex64::new(1.0, 0.0) - z, -a)?;
        return Ok(head * gauss_2f1_series(a, c - b, c, zt, series)?);
    }
    if z.norm() < 1.0 {
        return gauss_2f1_series(a, b, c, z, series);
    }
    Err(Error::precondition(
        "gauss_2f1: argument must satisfy |z| < 1 or be real negative",
    ))
}

fn gauss_2f1_series(
    a: Complex64,
    b: Complex64,
    c: Complex64,
    z: Complex64,
    series: &SeriesSpec,
) -> Result<Complex64> {
    let mut term = Complex64::new(1.0, 0.0);
    let mut sum = term;
    let mut quiet = 0u32;
    for k in 0..series.max_terms {
        let kf = k as f64;
        term *= (a + kf) * (b + kf) * z / ((c + kf) * (kf + 1.0));
        sum += term;
        if !sum.is_finite() || term.norm() > series.divergence_guard {
            return Err(Error::Series {
                what: "gauss_2f1".into(),
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
        what: "gauss_2f1 (term budget exhausted)".into(),
        terms: series.max_terms,
    })
}

/// Appell F3 by its double series; requires |x| < 1 and |y| < 1.
pub fn appell_f3(
    alpha: Complex64,
    alpha_p: Complex64,
    beta: Complex64,
    beta_p: Complex64,
    gamma_low: Complex64,
    x: Complex64,
    y: Complex64,
    series: &SeriesSpec,
) -> Result<Complex64> {
    series.validate()?;
    if x.norm() >= 1.0 || y.norm() >= 1.0 {
        return Err(Error::precondition(
            "appell_f3 series requires |x| < 1 and |y| < 1",
        ));
    }
    if near_nonpositive_int(gamma_low) {
        return Err(Error::Pole(
            "appell_f3: lower parameter at a nonpositive integer".into(),
        ));
    }

    // Row coefficients A_m = (α)_m (β)_m x^m / m! and
    // B_n = (α')_n (β')_n y^n / n!, built incrementally; the diagonal block
    // k shares the single factor 1/(γ)_k.
    let mut row_a: Vec<Complex64> = vec![Complex64::new(1.0, 0.0)];
    let mut row_b: Vec<Complex64> = vec![Complex64::new(1.0, 0.0)];
    let mut poch_gamma = Complex64::new(1.0, 0.0); // (γ)_k
    let mut sum = Complex64::new(1.0, 0.0); // k = 0 block
    let mut quiet = 0u32;

    for k in 1..series.max_terms {
        let kf = (k - 1) as f64;
        let last_a = *row_a.last().expect("nonempty");
        row_a.push(last_a * (alpha + kf) * (beta + kf) * x / (kf + 1.0));
        let last_b = *row_b.last().expect("nonempty");
        row_b.push(last_b * (alpha_p + kf) * (beta_p + kf) * y / (kf + 1.0));
        poch_gamma *= gamma_low + kf;
        if poch_gamma.norm() < 1e-280 {
            return Err(Error::Pole(
                "appell_f3: lower-parameter Pochhammer vanished".into(),
            ));
        }

        let mut block = Complex64::default();
        for m in 0..=k {
            block += row_a[m] * row_b[k - m];
        }
        block /= poch_gamma;
        sum += block;

        if !sum.is_finite() || block.norm() > series.divergence_guard {
            return Err(Error::Series {
                what: "appell_f3".into(),
                terms: k,
            });
        }
        if block.norm() <= series.tail_tol * (1.0 + sum.norm()) {
            quiet += 1;
            if quiet >= 2 {
                return Ok(sum);
            }
        } else {
            quiet = 0;
        }
    }
    Err(Error::Series {
        what: "appell_f3 (term budget exhausted)".into(),
        terms: series.max_terms,
    })
}

/// Appell F3 through the simplex integral (module docs); needs
/// Re β > 0, Re β' > 0, Re(γ-β-β') > 0, and both `1-ux`, `1-vy` staying in
/// the right half plane over the simplex — guaranteed when Re(1-x) > 0 and
/// Re(1-y) > 0, which is checked.
///
/// This is the route that reaches the kernel arguments (real x, y ≤ 0 of
/// any size), where the double series diverges.
pub fn appell_f3_integral(
    alpha: Complex64,
    alpha_p: Complex64,
    beta: Complex64,
    beta_p: Complex64,
    gamma_low: Complex64,
    x: Complex64,
    y: Complex64,
    spec: &QuadratureSpec,
) -> Result<Complex64> {
    spec.validate()?;
    let excess = gamma_low - beta - beta_p;
    if !(beta.re > 0.0) || !(beta_p.re > 0.0) || !(excess.re > 0.0) {
        return Err(Error::precondition(
            "appell_f3_integral requires Re β > 0, Re β' > 0, Re(γ-β-β') > 0",
        ));
    }
    if !((Complex64::new(1.0, 0.0) - x).re > 0.0) || !((Complex64::new(1.0, 0.0) - y).re > 0.0) {
        return Err(Error::precondition(
            "appell_f3_integral requires Re(1-x) > 0 and Re(1-y) > 0",
        ));
    }

    let mut prev: Option<Complex64> = None;
    for level in 4..=7u32 {
        let value = appell_f3_integral_at_level(alpha, alpha_p, beta, beta_p, gamma_low, x, y, level)?;
        if let Some(p) = prev {
            if (value - p).norm() <= spec.abs_tol.max(spec.rel_tol * value.norm()) * 4.0 {
                return Ok(value);
            }
        }
        prev = Some(value);
    }
    Err(Error::Quadrature {
        what: "appell_f3_integral (levels exhausted)".into(),
        residual: f64::NAN,
    })
}

/// Fixed-level evaluation of the simplex integral. Finite-difference
/// drivers use this directly: a frozen node set makes the quadrature error
/// a smooth function of (x, y), so second differences do not amplify it.
#[allow(clippy::too_many_arguments)]
pub fn appell_f3_integral_at_level(
    alpha: Complex64,
    alpha_p: Complex64,
    beta: Complex64,
    beta_p: Complex64,
    gamma_low: Complex64,
    x: Complex64,
    y: Complex64,
    level: u32,
) -> Result<Complex64> {
    let excess = gamma_low - beta - beta_p;
    let one = Complex64::new(1.0, 0.0);

    // Γ(γ) / (Γ(β) Γ(β') Γ(γ-β-β')).
    let prefactor =
        (ln_gamma(gamma_low)? - ln_gamma(beta)? - ln_gamma(beta_p)? - ln_gamma(excess)?).exp();

    let outer = TanhSinh::new(level);
    let inner = TanhSinh::new(level);

    // ∫_0^1 ξ^{β+β'-1} (1-ξ)^{γ-β-β'-1} J(ξ) dξ with
    // J(ξ) = ∫_0^1 ζ^{β-1} (1-ζ)^{β'-1} (1-ξζx)^{-α} (1-ξ(1-ζ)y)^{-α'} dζ.
    let value = outer.integrate(|xi, one_minus_xi| {
        let j = inner.integrate(|zeta, one_minus_zeta| {
            let f1 = (-(alpha) * (one - xi * zeta * x).ln()).exp();
            let f2 = (-(alpha_p) * (one - xi * one_minus_zeta * y).ln()).exp();
            let w = ((beta - 1.0) * zeta.ln() + (beta_p - 1.0) * one_minus_zeta.ln()).exp();
            w * f1 * f2
        });
        let w = ((beta + beta_p - 1.0) * xi.ln() + (excess - 1.0) * one_minus_xi.ln()).exp();
        w * j
    });
    Ok(prefactor * value)
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
    fn gauss_2f1_log_value() {
        // 2F1(1, 1; 2; -1) = ln 2.
        let v = gauss_2f1(c(1.0), c(1.0), c(2.0), c(-1.0), &series()).unwrap();
        assert_relative_eq!(v.re, 2.0f64.ln(), max_relative = 1e-12);
    }

    #[test]
    fn gauss_2f1_arcsin_value() {
        // 2F1(1/2, 1/2; 3/2; z²) = arcsin(z)/z; at z = 1/2 this is π/3.
        let v = gauss_2f1(c(0.5), c(0.5), c(1.5), c(0.25), &series()).unwrap();
        assert_relative_eq!(v.re, std::f64::consts::FRAC_PI_3, max_relative = 1e-13);
    }

    #[test]
    fn gauss_2f1_at_zero_and_poles() {
        let v = gauss_2f1(c(1.3), c(0.7), c(2.1), c(0.0), &series()).unwrap();
        assert_relative_eq!(v.re, 1.0, max_relative = 1e-15);
        assert!(gauss_2f1(c(1.0), c(1.0), c(0.0), c(0.5), &series()).is_err());
        assert!(gauss_2f1(c(1.0), c(1.0), c(-2.0), c(0.5), &series()).is_err());
    }

    #[test]
    fn gauss_2f1_far_negative_axis() {
        // 2F1(1, 1; 2; z) = -ln(1-z)/z, valid on the whole negative axis.
        for &z in &[-0.9, -3.0, -40.0] {
            let v = gauss_2f1(c(1.0), c(1.0), c(2.0), c(z), &series()).unwrap();
            assert_relative_eq!(v.re, -(1.0 - z).ln() / z, max_relative = 1e-11);
        }
    }

    #[test]
    fn f3_collapses_to_gauss_on_the_axis() {
        // With y = 0 only n = 0 survives and F3 must agree with 2F1 term by
        // term, hence to full precision.
        let (a, ap, b, bp, g) = (c(1.2), c(0.9), c(0.8), c(1.1), c(2.5));
        let x = c(0.35);
        let f3 = appell_f3(a, ap, b, bp, g, x, c(0.0), &series()).unwrap();
        let f21 = gauss_2f1(a, b, g, x, &series()).unwrap();
        assert_relative_eq!(f3.re, f21.re, max_relative = 1e-14);
        assert_relative_eq!(f3.im, f21.im, max_relative = 1e-14);
    }

    #[test]
    fn f3_at_origin_and_domain_guard() {
        let v = appell_f3(c(1.0), c(1.0), c(1.0), c(1.0), c(3.0), c(0.0), c(0.0), &series())
            .unwrap();
        assert_relative_eq!(v.re, 1.0, max_relative = 1e-15);
        assert!(appell_f3(c(1.0), c(1.0), c(1.0), c(1.0), c(3.0), c(1.2), c(0.0), &series())
            .is_err());
    }

    #[test]
    fn f3_series_and_integral_agree_on_the_overlap() {
        // Same parameters both ways at points where both representations
        // converge; the spread of parameters exercises all endpoint weights.
        let cases = [
            (1.2, 1.4, 1.2, 1.4, 3.0, 0.3, 0.2),
            (0.9, 1.1, 0.7, 1.3, 2.6, -0.4, 0.5),
            (1.5, 0.8, 1.1, 0.9, 2.4, 0.25, -0.35),
        ];
        let spec = QuadratureSpec::default();
        for &(a, ap, b, bp, g, x, y) in &cases {
            let s = appell_f3(c(a), c(ap), c(b), c(bp), c(g), c(x), c(y), &series()).unwrap();
            let i =
                appell_f3_integral(c(a), c(ap), c(b), c(bp), c(g), c(x), c(y), &spec).unwrap();
            assert_relative_eq!(s.re, i.re, max_relative = 1e-8);
            assert!((s - i).norm() < 1e-8 * (1.0 + s.norm()));
        }
    }

    #[test]
    fn f3_integral_preconditions() {
        let spec = QuadratureSpec::default();
        // Re β' ≤ 0 rejected.
        assert!(appell_f3_integral(c(1.0), c(1.0), c(1.0), c(-0.2), c(3.0), c(0.3), c(0.2), &spec)
            .is_err());
        // Re(γ-β-β') ≤ 0 rejected.
        assert!(appell_f3_integral(c(1.0), c(1.0), c(1.5), c(1.5), c(3.0), c(0.3), c(0.2), &spec)
            .is_err());
    }
}
