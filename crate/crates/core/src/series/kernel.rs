//! Radial point-pair kernels: annihilated by the pair operator M
//! (see [`crate::operator::apply_radial_operator`]) and summed over the
//! group to build Poincaré series.
//!
//! In the invariant pair coordinates x, y > 0:
//!
//! ```text
//! kernel_x   (x)    = x^{-s} ₂F₁(s, s;     2s-n; -1/x)
//! kernel_y   (y)    = y^{-s} ₂F₁(s, s-n+1; 2s-n; -1/y)
//! kernel_sum (x+y)  = w^{-s} ₂F₁(s, s-n;   2s-n; -1/w),  w = x+y
//! kernel_xy  (x, y) = x^{-a} y^{-b} F₃(a, b; a, b-n+1; 2s-n; -1/x, -1/y),
//!                     a + b = s
//! ```
//!
//! The two-variable kernel is evaluated through the fixed-level tanh-sinh
//! integral representation of F₃ rather than adaptively: the frozen node
//! set makes the kernel a smooth function of (x, y), so finite-difference
//! stencils see quadrature error as a smooth bias instead of step noise.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::specfun::hyper::{appell_f3_integral_at_level, gauss_2f1, pow_real};
use crate::specfun::SeriesSpec;

/// Which radial kernel profile a Poincaré sum uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum RadialKernel {
    /// x-only profile (the free Green kernel's shape).
    XProfile,
    /// y-only profile.
    YProfile,
    /// profile in w = x + y.
    SumProfile,
    /// full two-variable kernel, via the split s = a + b.
    TwoVariable,
}

/// Tanh-sinh level for the two-variable kernel's integral representation;
/// fixed so the kernel is smooth in (x, y) (see module docs).
const F3_LEVEL: u32 = 5;

fn hyper_spec() -> SeriesSpec {
    SeriesSpec::default()
}

fn require_positive(name: &str, v: f64) -> Result<()> {
    if v > 0.0 && v.is_finite() {
        Ok(())
    } else {
        Err(Error::Pole(format!(
            "radial kernel needs {name} > 0, got {v} (evaluation point on the orbit or boundary)"
        )))
    }
}

/// x^{-s} ₂F₁(s, s; 2s-n; -1/x).
pub fn kernel_x(n: usize, s: Complex64, x: f64) -> Result<Complex64> {
    require_positive("x", x)?;
    let f = gauss_2f1(
        s,
        s,
        2.0 * s - n as f64,
        Complex64::new(-1.0 / x, 0.0),
        &hyper_spec(),
    )?;
    Ok(pow_real(x, -s) * f)
}

/// y^{-s} ₂F₁(s, s-n+1; 2s-n; -1/y).
pub fn kernel_y(n: usize, s: Complex64, y: f64) -> Result<Complex64> {
    require_positive("y", y)?;
    let f = gauss_2f1(
        s,
        s - (n as f64 - 1.0),
        2.0 * s - n as f64,
        Complex64::new(-1.0 / y, 0.0),
        &hyper_spec(),
    )?;
    Ok(pow_real(y, -s) * f)
}

/// w^{-s} ₂F₁(s, s-n; 2s-n; -1/w) at w = x + y.
pub fn kernel_sum(n: usize, s: Complex64, w: f64) -> Result<Complex64> {
    require_positive("x + y", w)?;
    let f = gauss_2f1(
        s,
        s - n as f64,
        2.0 * s - n as f64,
        Complex64::new(-1.0 / w, 0.0),
        &hyper_spec(),
    )?;
    Ok(pow_real(w, -s) * f)
}

/// x^{-a} y^{-b} F₃(a, b; a, b-n+1; 2s-n; -1/x, -1/y) with s = a + b.
///
/// The split must satisfy Re a > 0 and Re(b - n + 1) > 0 (so the F₃
/// integral representation applies) — both hold for the midpoint split of
/// [`crate::spectral::SpectralParam::default_split`] whenever Re s > n.
pub fn kernel_xy(n: usize, a: Complex64, b: Complex64, x: f64, y: f64) -> Result<Complex64> {
    require_positive("x", x)?;
    require_positive("y", y)?;
    let s = a + b;
    let f = appell_f3_integral_at_level(
        a,
        b,
        a,
        b - (n as f64 - 1.0),
        2.0 * s - n as f64,
        Complex64::new(-1.0 / x, 0.0),
        Complex64::new(-1.0 / y, 0.0),
        F3_LEVEL,
    )?;
    Ok(pow_real(x, -a) * pow_real(y, -b) * f)
}

/// Dispatch by kernel kind. The split (a, b) is only read by
/// [`RadialKernel::TwoVariable`].
pub fn eval_kernel(
    kind: RadialKernel,
    n: usize,
    s: Complex64,
    split: (Complex64, Complex64),
    x: f64,
    y: f64,
) -> Result<Complex64> {
    match kind {
        RadialKernel::XProfile => kernel_x(n, s, x),
        RadialKernel::YProfile => kernel_y(n, s, y),
        RadialKernel::SumProfile => kernel_sum(n, s, x + y),
        RadialKernel::TwoVariable => {
            let (a, b) = split;
            if (a + b - s).norm() > 1e-12 {
                return Err(Error::precondition(
                    "kernel split must satisfy a + b = s",
                ));
            }
            kernel_xy(n, a, b, x, y)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::operator::{apply_radial_operator, Chart, ScalarField, StencilSpec};
    use crate::specfun::hyper::appell_f3;
    use crate::spectral::SpectralParam;
    use approx::assert_relative_eq;

    fn s_re(x: f64) -> Complex64 {
        Complex64::new(x, 0.0)
    }

    #[test]
    fn two_variable_kernel_matches_its_series_where_both_converge() {
        // For x, y > 1 the F₃ series converges directly; the integral
        // representation must agree.
        let n = 1usize;
        let p = SpectralParam::from_real(2.6);
        let (a, b) = p.default_split(n);
        let (x, y) = (1.5, 2.0);
        let integral = kernel_xy(n, a, b, x, y).unwrap();
        let series = appell_f3(
            a,
            b,
            a,
            b - (n as f64 - 1.0),
            2.0 * p.s - n as f64,
            Complex64::new(-1.0 / x, 0.0),
            Complex64::new(-1.0 / y, 0.0),
            &SeriesSpec::default(),
        )
        .unwrap()
            * pow_real(x, -a)
            * pow_real(y, -b);
        assert_relative_eq!(integral.re, series.re, max_relative = 1e-8);
        assert!(integral.im.abs() < 1e-12);
    }

    #[test]
    fn all_four_kernels_are_annihilated_by_the_pair_operator() {
        let st = StencilSpec::default();
        for n in 1..=2usize {
            let s_val = if n == 1 { 2.5 } else { 2.7 };
            let p = SpectralParam::from_real(s_val);
            let split = p.default_split(n);
            for kind in [
                RadialKernel::XProfile,
                RadialKernel::YProfile,
                RadialKernel::SumProfile,
                RadialKernel::TwoVariable,
            ] {
                let s = p.s;
                let field = ScalarField::new(Chart::RadialXy, n, move |c| {
                    eval_kernel(kind, n, s, split, c[0], c[1])
                        .unwrap_or(Complex64::new(f64::NAN, f64::NAN))
                });
                let coords = [0.9, 1.3];
                let mg = apply_radial_operator(&field, p.s, &coords, &st).unwrap();
                // Order-2 stencil truncation on these profiles sits near
                // 1e-6; the bound must stay above that floor.
                let tol = 1e-5;
                assert!(
                    mg.norm() < tol,
                    "n = {n}, {kind:?}: |Mg| = {:e}",
                    mg.norm()
                );
            }
        }
    }

    #[test]
    fn dispatch_selects_the_right_profile() {
        let n = 2usize;
        let p = SpectralParam::from_real(2.7);
        let split = p.default_split(n);
        let (x, y) = (0.8, 1.1);
        let gx = eval_kernel(RadialKernel::XProfile, n, p.s, split, x, y).unwrap();
        assert_eq!(gx, kernel_x(n, p.s, x).unwrap());
        let gy = eval_kernel(RadialKernel::YProfile, n, p.s, split, x, y).unwrap();
        assert_eq!(gy, kernel_y(n, p.s, y).unwrap());
        let gw = eval_kernel(RadialKernel::SumProfile, n, p.s, split, x, y).unwrap();
        assert_eq!(gw, kernel_sum(n, p.s, x + y).unwrap());
        let gxy = eval_kernel(RadialKernel::TwoVariable, n, p.s, split, x, y).unwrap();
        assert_eq!(gxy, kernel_xy(n, split.0, split.1, x, y).unwrap());
    }

    #[test]
    fn kernels_reject_the_orbit_pole() {
        assert!(kernel_x(1, s_re(2.0), 0.0).is_err());
        assert!(kernel_y(1, s_re(2.0), -0.5).is_err());
        assert!(kernel_xy(1, s_re(1.2), s_re(1.2), 1.0, 0.0).is_err());
        let bad_split = eval_kernel(
            RadialKernel::TwoVariable,
            1,
            s_re(2.5),
            (s_re(1.0), s_re(1.0)),
            1.0,
            1.0,
        );
        assert!(bad_split.is_err());
    }

    #[test]
    fn kernel_decay_at_large_argument() {
        // kernel_x ~ x^{-s} for large x: ratio at x and 2x approaches 2^{-s}.
        let n = 1usize;
        let s = s_re(3.0);
        let v1 = kernel_x(n, s, 4.0e3).unwrap();
        let v2 = kernel_x(n, s, 8.0e3).unwrap();
        assert_relative_eq!((v2 / v1).re, 0.125, max_relative = 1e-3);
    }
}
