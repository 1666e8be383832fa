//! Ready-made scalar fields: the eigenfunction families the operator tests
//! and the verification suites drive through the chart Laplacians.
//!
//! All constructors return [`ScalarField`]s whose closures yield NaN outside
//! their domain; the appliers in the parent module convert that to an error.
//!
//! ```text
//! rho_power_field      ρ^s                     eigenvalue s(s-n-1)
//! bessel_family_field  ρ^{(n+1)/2} K_{s-(n+1)/2}(2π|m|ρ)
//!                        · ∏_j K_0(2π|m|β_j) · e^{2πimt}
//!                                              eigenvalue s(s-n-1)
//! singular_field       ω^{n+1} K_{2s-(n+1)}(2π|a|ω) e^{2πi a·τ}
//!                                              eigenvalue s(s-n-1)
//! poisson_power_field  [ρ/((t-ζ)² + (ρ+β)²)]^s eigenvalue s(s-n-1)
//! cygan_field          W ↦ gauge distance from a fixed anchor to W;
//!                      annihilated by L away from the anchor
//! ```

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::geometry::{cygan_distance, SiegelPoint};
use crate::quad::QuadratureSpec;
use crate::specfun::bessel_k;

use super::{Chart, ScalarField};

const NAN_C: Complex64 = Complex64::new(f64::NAN, f64::NAN);

/// Quadrature budget for Bessel evaluations that sit inside finite-difference
/// stencils: adaptive-refinement jumps of size rel_tol·|f| get amplified by
/// 1/h² ≈ 1e6, so the tolerances are pulled two decades below the default.
fn stencil_grade_quadrature() -> QuadratureSpec {
    QuadratureSpec {
        abs_tol: 1e-14,
        rel_tol: 1e-12,
        max_subdiv: 4000,
    }
}

fn complex_power(base: f64, s: Complex64) -> Complex64 {
    if base > 0.0 {
        (s * base.ln()).exp()
    } else {
        NAN_C
    }
}

/// The height power ρ^s in any chart that can see the height, including the
/// ball chart (through the chart transition) and the radial chart (ρ = ω²).
pub fn rho_power_field(chart: Chart, n: usize, s: Complex64) -> Result<ScalarField> {
    let eval: Box<dyn Fn(&[f64]) -> Complex64 + Send + Sync> = match chart {
        Chart::SiegelReal | Chart::BetaTheta => Box::new(move |c: &[f64]| {
            complex_power(c[c.len() - 1], s)
        }),
        Chart::Aggregate => Box::new(move |c: &[f64]| complex_power(c[2], s)),
        Chart::SiegelZ => Box::new(move |c: &[f64]| {
            let d = c.len();
            let beta: f64 = c[..d - 2].chunks_exact(2).map(|p| p[0] * p[0] + p[1] * p[1]).sum();
            complex_power(c[d - 1] - beta, s)
        }),
        Chart::Ball => Box::new(move |c: &[f64]| {
            let d = c.len();
            let norm_sqr: f64 = c.iter().map(|v| v * v).sum();
            let denom = (1.0 - c[d - 2]).powi(2) + c[d - 1].powi(2);
            complex_power((1.0 - norm_sqr) / denom, s)
        }),
        Chart::RadialTauOmega => Box::new(move |c: &[f64]| {
            let omega = c[c.len() - 1];
            complex_power(omega * omega, s)
        }),
        Chart::RadialXy => {
            return Err(Error::precondition(
                "the pair-kernel chart has no height coordinate",
            ))
        }
    };
    Ok(ScalarField {
        chart,
        n,
        eval,
    })
}

/// The separated eigenfunction with frequency m ≠ 0 in the (β, θ, t, ρ)
/// chart (independent of every θ_j):
///
/// ```text
/// f = ρ^{(n+1)/2} K_{s-(n+1)/2}(2π|m|ρ) · ∏_{j=1}^n K_0(2π|m|β_j) · e^{2πimt}.
/// ```
pub fn bessel_family_field(n: usize, m: i64, s: Complex64) -> Result<ScalarField> {
    if m == 0 {
        return Err(Error::precondition("the separated family needs m ≠ 0"));
    }
    let spec = stencil_grade_quadrature();
    let two_pi_m = 2.0 * std::f64::consts::PI * (m.abs() as f64);
    let order = s - (n as f64 + 1.0) / 2.0;
    let eval = move |c: &[f64]| -> Complex64 {
        let d = c.len();
        let (t, rho) = (c[d - 2], c[d - 1]);
        if !(rho > 0.0) {
            return NAN_C;
        }
        let mut acc = match bessel_k(order, Complex64::new(two_pi_m * rho, 0.0), &spec) {
            Ok(v) => v,
            Err(_) => return NAN_C,
        };
        acc *= complex_power(rho, Complex64::new((n as f64 + 1.0) / 2.0, 0.0));
        for j in 0..n {
            let bj = c[2 * j];
            if !(bj > 0.0) {
                return NAN_C;
            }
            match bessel_k(Complex64::default(), Complex64::new(two_pi_m * bj, 0.0), &spec) {
                Ok(v) => acc *= v,
                Err(_) => return NAN_C,
            }
        }
        let phase = 2.0 * std::f64::consts::PI * (m as f64) * t;
        acc * Complex64::new(phase.cos(), phase.sin())
    };
    Ok(ScalarField::new(Chart::BetaTheta, n, eval))
}

/// The singular-expansion eigenfunction in the radial chart
/// (τ ∈ R^{2n+1}, ω), with nonzero frequency vector `a`:
///
/// ```text
/// f = ω^{n+1} K_{2s-(n+1)}(2π|a|ω) e^{2πi a·τ}.
/// ```
pub fn singular_field(n: usize, a: Vec<f64>, s: Complex64) -> Result<ScalarField> {
    if a.len() != 2 * n + 1 {
        return Err(Error::precondition(format!(
            "frequency vector needs length {}, got {}",
            2 * n + 1,
            a.len()
        )));
    }
    let a_norm = a.iter().map(|v| v * v).sum::<f64>().sqrt();
    if !(a_norm > 0.0) {
        return Err(Error::precondition("frequency vector must be nonzero"));
    }
    let spec = stencil_grade_quadrature();
    let order = 2.0 * s - (n as f64 + 1.0);
    let eval = move |c: &[f64]| -> Complex64 {
        let d = c.len();
        let omega = c[d - 1];
        if !(omega > 0.0) {
            return NAN_C;
        }
        let k = match bessel_k(
            order,
            Complex64::new(2.0 * std::f64::consts::PI * a_norm * omega, 0.0),
            &spec,
        ) {
            Ok(v) => v,
            Err(_) => return NAN_C,
        };
        let dot: f64 = a.iter().zip(&c[..d - 1]).map(|(ai, ti)| ai * ti).sum();
        let phase = 2.0 * std::f64::consts::PI * dot;
        omega.powi(n as i32 + 1) * k * Complex64::new(phase.cos(), phase.sin())
    };
    Ok(ScalarField::new(Chart::RadialTauOmega, n, eval))
}

/// The boundary-kernel power [P(Z, ζ)]^s for a real boundary parameter ζ,
/// with P = ρ / ((t-ζ)² + (ρ+β)²), in the aggregate or full Siegel chart.
pub fn poisson_power_field(
    chart: Chart,
    n: usize,
    s: Complex64,
    zeta: f64,
) -> Result<ScalarField> {
    let eval: Box<dyn Fn(&[f64]) -> Complex64 + Send + Sync> = match chart {
        Chart::Aggregate => Box::new(move |c: &[f64]| {
            let (beta, t, rho) = (c[0], c[1], c[2]);
            let denom = (t - zeta).powi(2) + (rho + beta).powi(2);
            complex_power(rho / denom, s)
        }),
        Chart::SiegelReal => Box::new(move |c: &[f64]| {
            let d = c.len();
            let (t, rho) = (c[d - 2], c[d - 1]);
            let beta: f64 = c[..d - 2].chunks_exact(2).map(|p| p[0] * p[0] + p[1] * p[1]).sum();
            let denom = (t - zeta).powi(2) + (rho + beta).powi(2);
            complex_power(rho / denom, s)
        }),
        _ => {
            return Err(Error::precondition(
                "boundary-kernel fields live in the Aggregate or SiegelReal chart",
            ))
        }
    };
    Ok(ScalarField {
        chart,
        n,
        eval,
    })
}

/// The gauge-distance field W ↦ d(anchor, W) over the full Siegel chart.
/// With the anchor in the first slot this is annihilated by the Laplacian
/// in W (away from W = anchor); the swapped orientation is not.
pub fn cygan_field(anchor: SiegelPoint) -> ScalarField {
    let n = anchor.n();
    let eval = move |c: &[f64]| -> Complex64 {
        match moving_point(n, c) {
            Some(w) => match cygan_distance(&anchor, &w) {
                Ok(v) => Complex64::new(v, 0.0),
                Err(_) => NAN_C,
            },
            None => NAN_C,
        }
    };
    ScalarField::new(Chart::SiegelReal, n, eval)
}

/// The swapped-slot gauge field W ↦ d(W, anchor); kept for orientation
/// tests — this one is NOT harmonic.
pub fn cygan_field_swapped(anchor: SiegelPoint) -> ScalarField {
    let n = anchor.n();
    let eval = move |c: &[f64]| -> Complex64 {
        match moving_point(n, c) {
            Some(w) => match cygan_distance(&w, &anchor) {
                Ok(v) => Complex64::new(v, 0.0),
                Err(_) => NAN_C,
            },
            None => NAN_C,
        }
    };
    ScalarField::new(Chart::SiegelReal, n, eval)
}

fn moving_point(n: usize, c: &[f64]) -> Option<SiegelPoint> {
    if c.len() != 2 * n + 2 {
        return None;
    }
    let z: Vec<Complex64> = (0..n).map(|j| Complex64::new(c[2 * j], c[2 * j + 1])).collect();
    SiegelPoint::from_chart(z, c[2 * n], c[2 * n + 1]).ok()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::operator::{apply_laplacian, coords_from_siegel, eigen_residual, StencilSpec};

    fn st() -> StencilSpec {
        StencilSpec::default()
    }

    #[test]
    fn separated_family_satisfies_the_eigen_equation() {
        let n = 1usize;
        let s = Complex64::new(1.8, 0.0);
        let lambda = s * (s - 2.0);
        let field = bessel_family_field(n, 1, s).unwrap();
        let points = vec![
            vec![0.45, 0.3, 0.2, 0.8],
            vec![0.6, -0.9, -0.1, 0.55],
        ];
        let res = eigen_residual(&field, lambda, &points, &st()).unwrap();
        assert!(res < 1e-4, "residual {res:e}");
    }

    #[test]
    fn singular_radial_family_satisfies_the_eigen_equation() {
        let n = 1usize;
        let s = Complex64::new(1.7, 0.0);
        let lambda = s * (s - 2.0);
        let field = singular_field(n, vec![0.3, -0.4, 0.2], s).unwrap();
        let points = vec![
            vec![0.2, 0.1, -0.3, 0.7],
            vec![-0.5, 0.4, 0.2, 1.1],
        ];
        let res = eigen_residual(&field, lambda, &points, &st()).unwrap();
        assert!(res < 1e-4, "residual {res:e}");

        // Elementary cross-check of the radial normalization: ω^{2s} is the
        // zero-frequency member of the same family.
        let plain = rho_power_field(super::Chart::RadialTauOmega, n, s).unwrap();
        let res0 = eigen_residual(&plain, lambda, &points, &st()).unwrap();
        assert!(res0 < 1e-6, "residual {res0:e}");
    }

    #[test]
    fn boundary_kernel_power_satisfies_the_eigen_equation() {
        for n in 1..=2usize {
            let s = Complex64::new(2.1, 0.0);
            let lambda = s * (s - (n as f64 + 1.0));
            for chart in [Chart::Aggregate, Chart::SiegelReal] {
                let field = poisson_power_field(chart, n, s, 0.3).unwrap();
                let coords = match chart {
                    Chart::Aggregate => vec![0.4, -0.2, 0.9],
                    _ => {
                        let z = SiegelPoint::from_chart(
                            (0..n).map(|j| Complex64::new(0.3, 0.1 * (j as f64 + 1.0))).collect(),
                            -0.2,
                            0.9,
                        )
                        .unwrap();
                        coords_from_siegel(chart, &z).unwrap()
                    }
                };
                let res = eigen_residual(&field, lambda, &[coords], &st()).unwrap();
                assert!(res < 1e-5, "chart {chart:?}, n = {n}: residual {res:e}");
            }
        }
    }

    #[test]
    fn gauge_distance_is_harmonic_in_its_second_slot_only() {
        let anchor = SiegelPoint::from_chart(
            vec![Complex64::new(0.1, 0.3)],
            0.2,
            0.8,
        )
        .unwrap();
        let points = vec![
            vec![0.6, -0.2, 1.0, 1.3],
            vec![-0.4, 0.5, -0.7, 0.6],
        ];
        let harmonic = cygan_field(anchor.clone());
        let res = eigen_residual(&harmonic, Complex64::default(), &points, &st()).unwrap();
        assert!(res < 1e-4, "harmonic orientation residual {res:e}");

        let swapped = cygan_field_swapped(anchor);
        let lv = apply_laplacian(&swapped, &points[0], &st()).unwrap();
        assert!(lv.norm() > 0.5, "swapped orientation should not be harmonic: {lv}");
    }

    #[test]
    fn field_constructors_validate_their_inputs() {
        assert!(rho_power_field(Chart::RadialXy, 1, Complex64::new(2.0, 0.0)).is_err());
        assert!(bessel_family_field(1, 0, Complex64::new(2.0, 0.0)).is_err());
        assert!(singular_field(1, vec![0.0, 0.0, 0.0], Complex64::new(2.0, 0.0)).is_err());
        assert!(singular_field(1, vec![1.0], Complex64::new(2.0, 0.0)).is_err());
        assert!(poisson_power_field(Chart::Ball, 1, Complex64::new(2.0, 0.0), 0.0).is_err());
    }
}
