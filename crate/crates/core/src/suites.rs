//! Named verification suites: bundles of numerical identity checks, each
//! returning structured [`VerificationReport`]s. The command-line `verify`
//! subcommand runs these; the same entry points back the integration
//! tests, so both always agree on what was checked.
//!
//! Every suite draws its sample points from a seeded generator, so runs
//! are reproducible given (n, seed).

use num_complex::Complex64;
use num_rational::Rational64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::geometry::{act, act_boundary, GroupElement, SiegelPoint};
use crate::modular::{
    check_local_boundedness, eisenstein_km_partial, j_invariant, verify_degenerate_reduction,
    verify_inversion_identity, verify_translation_identity, WeightIndex,
};
use crate::operator::fields::{
    bessel_family_field, poisson_power_field, rho_power_field, singular_field,
};
use crate::operator::{eigen_residual, harmonicity_residual_cygan, Chart, StencilSpec};
use crate::quad::QuadratureSpec;
use crate::report::VerificationReport;
use crate::series::boundary::{green_boundary_limit, poisson_kernel, scattering_partial};
use crate::series::fourier::{fourier_a_m, fourier_b_m, verify_a_chain, verify_key_integral};
use crate::series::kernel::{eval_kernel, RadialKernel};
use crate::series::Truncation;
use crate::spectral::SpectralParam;

fn rng_for(seed: u64, salt: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed ^ salt)
}

/// Every suite samples points with at least one horizontal coordinate.
fn require_dim(n: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::precondition(
            "suites need a horizontal dimension n of at least 1",
        ));
    }
    Ok(())
}

/// Random coordinate vectors lying safely inside each chart's domain.
fn random_chart_points(
    chart: Chart,
    n: usize,
    count: usize,
    rng: &mut ChaCha8Rng,
) -> Vec<Vec<f64>> {
    (0..count)
        .map(|_| match chart {
            Chart::SiegelReal => {
                let mut c: Vec<f64> = (0..2 * n).map(|_| rng.gen_range(-0.5..0.5)).collect();
                c.push(rng.gen_range(-1.0..1.0));
                c.push(rng.gen_range(0.5..1.5));
                c
            }
            Chart::BetaTheta => {
                let mut c = Vec::with_capacity(2 * n + 2);
                for _ in 0..n {
                    c.push(rng.gen_range(0.2..0.8));
                    c.push(rng.gen_range(0.0..6.2));
                }
                c.push(rng.gen_range(-1.0..1.0));
                c.push(rng.gen_range(0.5..1.5));
                c
            }
            Chart::Aggregate => vec![
                rng.gen_range(0.2..0.8),
                rng.gen_range(-1.0..1.0),
                rng.gen_range(0.5..1.5),
            ],
            Chart::RadialTauOmega => {
                let mut c: Vec<f64> = (0..2 * n + 1).map(|_| rng.gen_range(-1.0..1.0)).collect();
                c.push(rng.gen_range(0.5..1.5));
                c
            }
            Chart::Ball => (0..2 * n + 2).map(|_| rng.gen_range(-0.25..0.25)).collect(),
            Chart::SiegelZ => {
                let mut c: Vec<f64> = (0..2 * n).map(|_| rng.gen_range(-0.5..0.5)).collect();
                let beta: f64 = c.chunks_exact(2).map(|p| p[0] * p[0] + p[1] * p[1]).sum();
                c.push(rng.gen_range(-1.0..1.0));
                c.push(beta + rng.gen_range(0.5..1.5));
                c
            }
            Chart::RadialXy => vec![rng.gen_range(0.3..2.0), rng.gen_range(0.3..2.0)],
        })
        .collect()
}

fn random_interior_point(n: usize, rng: &mut ChaCha8Rng) -> SiegelPoint {
    let horizontal: Vec<Complex64> = (0..n)
        .map(|_| Complex64::new(rng.gen_range(-0.5..0.5), rng.gen_range(-0.5..0.5)))
        .collect();
    SiegelPoint::from_chart(horizontal, rng.gen_range(-1.0..1.0), rng.gen_range(0.5..1.5))
        .expect("positive height")
}

/// Laplace-operator checks: eigenfield residuals in several charts and
/// harmonicity of the gauge-distance field.
pub fn operators_suite(n: usize, seed: u64, quick: bool) -> Result<Vec<VerificationReport>> {
    require_dim(n)?;
    let st = StencilSpec::default();
    let count = if quick { 3 } else { 8 };
    let mut reports = Vec::new();

    let cases: [(&str, Chart, crate::operator::ScalarField, Complex64); 5] = {
        let s_pow = SpectralParam::from_real(1.7);
        let s_bes = SpectralParam::from_real(1.8);
        let s_sing = SpectralParam::from_real(1.9);
        let s_poi = SpectralParam::from_real(1.6);
        let mut a = vec![0.6; 2 * n + 1];
        a[0] = -0.8;
        [
            (
                "height-power-eigenfield",
                Chart::SiegelReal,
                rho_power_field(Chart::SiegelReal, n, s_pow.s)?,
                s_pow.lambda(n),
            ),
            (
                "height-power-eigenfield-ball",
                Chart::Ball,
                rho_power_field(Chart::Ball, n, s_pow.s)?,
                s_pow.lambda(n),
            ),
            (
                "bessel-mode-eigenfield",
                Chart::BetaTheta,
                bessel_family_field(n, 1, s_bes.s)?,
                s_bes.lambda(n),
            ),
            (
                "singular-mode-eigenfield",
                Chart::RadialTauOmega,
                singular_field(n, a, s_sing.s)?,
                s_sing.lambda(n),
            ),
            (
                "boundary-kernel-power-eigenfield",
                Chart::Aggregate,
                poisson_power_field(Chart::Aggregate, n, s_poi.s, 0.3)?,
                s_poi.lambda(n),
            ),
        ]
    };
    for (name, chart, field, lambda) in cases {
        let mut rng = rng_for(seed, 0x10 + chart as u64);
        let points = random_chart_points(chart, n, count, &mut rng);
        let residual = eigen_residual(&field, lambda, &points, &st)?;
        reports.push(VerificationReport::from_residual(
            name,
            "L f = s (s − n − 1) f on the model eigenfield",
            count,
            residual,
            1e-4,
        ));
    }

    let mut rng = rng_for(seed, 0x99);
    let anchor = random_interior_point(n, &mut rng);
    let points = random_chart_points(Chart::SiegelReal, n, count, &mut rng);
    let residual = harmonicity_residual_cygan(&anchor, &points, &st)?;
    reports.push(VerificationReport::from_residual(
        "gauge-distance-harmonicity",
        "L[W ↦ d(anchor, W)] = 0 away from the anchor",
        count,
        residual,
        1e-4,
    ));
    Ok(reports)
}

/// Fourier-side checks: the mode-extraction integral, the β-integral
/// chain, and the n = 1 coincidence of the two coefficient families.
pub fn fourier_suite(n: usize, seed: u64, quick: bool) -> Result<Vec<VerificationReport>> {
    require_dim(n)?;
    let quad = QuadratureSpec::default();
    let mut reports = Vec::new();
    reports.push(verify_key_integral(1.0, Complex64::new(2.0, 0.0), &quad)?);
    if !quick {
        reports.push(verify_key_integral(0.5, Complex64::new(2.5, 0.0), &quad)?);
    }
    let mut rng = rng_for(seed, 0x21);
    let s = Complex64::new(n as f64 / 2.0 + 1.5, 0.0);
    let rho = rng.gen_range(0.3..2.0);
    reports.push(verify_a_chain(1, s, n, rho, &quad)?);
    if n == 1 {
        let s1 = Complex64::new(2.5, 0.0);
        let a = fourier_a_m(2, 0.7, s1, 1, 30, &quad)?;
        let b = fourier_b_m(2, 0.7, s1, 1, 30, &quad)?;
        reports.push(VerificationReport::from_residual(
            "coefficient-families-coincide",
            "b_m = a_m when the correction sum is empty (n = 1)",
            1,
            (a - b).norm() / a.norm(),
            1e-12,
        ));
    }
    Ok(reports)
}

/// Radial-kernel checks: each kernel profile is annihilated by the radial
/// pair operator at random points.
pub fn kernels_suite(n: usize, seed: u64, quick: bool) -> Result<Vec<VerificationReport>> {
    require_dim(n)?;
    let st = StencilSpec::default();
    let count = if quick { 2 } else { 4 };
    let s = Complex64::new(n as f64 + 0.7, 0.0);
    let p = SpectralParam::new(s);
    let split = p.default_split(n);
    let mut reports = Vec::new();
    for (salt, kind) in [
        (0x31u64, RadialKernel::XProfile),
        (0x32, RadialKernel::YProfile),
        (0x33, RadialKernel::SumProfile),
        (0x34, RadialKernel::TwoVariable),
    ] {
        let mut rng = rng_for(seed, salt);
        let points = random_chart_points(Chart::RadialXy, n, count, &mut rng);
        let field = crate::operator::ScalarField::new(Chart::RadialXy, n, move |c| {
            eval_kernel(kind, n, s, split, c[0], c[1])
                .unwrap_or(Complex64::new(f64::NAN, f64::NAN))
        });
        let mut worst = 0.0f64;
        for pt in &points {
            let mg = crate::operator::apply_radial_operator(&field, s, pt, &st)?;
            worst = worst.max(mg.norm());
        }
        reports.push(VerificationReport::from_residual(
            match kind {
                RadialKernel::XProfile => "x-profile-annihilated",
                RadialKernel::YProfile => "y-profile-annihilated",
                RadialKernel::SumProfile => "sum-profile-annihilated",
                RadialKernel::TwoVariable => "two-variable-kernel-annihilated",
            },
            "M g = 0 for the radial pair operator at spectral parameter s",
            count,
            worst,
            1e-5,
        ));
    }
    Ok(reports)
}

/// Boundary-series checks: kernel covariance, two-point symmetry, and the
/// wall limit tying the radial kernel to the boundary kernel.
pub fn boundary_suite(n: usize, seed: u64, quick: bool) -> Result<Vec<VerificationReport>> {
    require_dim(n)?;
    let mut reports = Vec::new();

    let mut rng = rng_for(seed, 0x41);
    let count = if quick { 5 } else { 20 };
    let mut worst = 0.0f64;
    for _ in 0..count {
        let z = random_interior_point(n, &mut rng);
        let g = GroupElement::random_walk(n, 5, &mut rng);
        let zeta = rng.gen_range(-1.0..1.0);
        let Ok((image, deriv)) = act_boundary(&g, zeta) else {
            continue;
        };
        let moved = act(&g, &z)?;
        let lhs = poisson_kernel(&moved, image) * deriv;
        let rhs = poisson_kernel(&z, zeta);
        worst = worst.max((lhs - rhs).abs() / rhs);
    }
    reports.push(VerificationReport::from_residual(
        "boundary-kernel-covariance",
        "P(γZ, γζ) |γ'(ζ)| = P(Z, ζ)",
        count,
        worst,
        1e-11,
    ));

    let tr = Truncation::new(2)?;
    let s = Complex64::new(1.8, 0.0);
    let a = scattering_partial(n, 0.3, 1.7, s, &tr)?;
    let b = scattering_partial(n, 1.7, 0.3, s, &tr)?;
    reports.push(VerificationReport::from_residual(
        "two-point-series-symmetry",
        "Σ |γ'(ζ)|^s |γζ − η|^{−2s} is symmetric in (ζ, η) over an inverse-closed set",
        1,
        (a - b).norm() / a.norm(),
        1e-12,
    ));

    let mut rng = rng_for(seed, 0x42);
    let zs: Vec<SiegelPoint> = (0..3).map(|_| random_interior_point(n, &mut rng)).collect();
    reports.push(green_boundary_limit(&zs, 0.2, Complex64::new(3.0, 0.0))?);
    Ok(reports)
}

/// Weighted-series checks: inversion/translation identities, the
/// horizontal-slice collapse of j, invariance of j off the slice, and the
/// growth-slope discriminator.
pub fn modular_suite(n: usize, seed: u64, quick: bool) -> Result<Vec<VerificationReport>> {
    require_dim(n)?;
    let mut rng = rng_for(seed, 0x51);
    let mut reports = Vec::new();
    let w = WeightIndex::new(4, Rational64::new(1, 1))?;

    let horizontal: Vec<Complex64> = (0..n)
        .map(|_| Complex64::new(rng.gen_range(-0.4..0.4), rng.gen_range(-0.4..0.4)))
        .collect();
    let z = SiegelPoint::from_chart(horizontal.clone(), rng.gen_range(-0.5..0.5), 2.0)?;

    reports.push(verify_inversion_identity(
        &z,
        &w,
        &Truncation::new(if quick { 4 } else { 8 })?,
    )?);
    reports.push(verify_translation_identity(&z, &w, &Truncation::new(200)?)?);
    reports.push(verify_degenerate_reduction(&Truncation::new(500)?)?);

    let tr_j = Truncation::new(if quick { 20 } else { 40 })?;
    let m = Rational64::new(1, 1);
    let gamma0 = GroupElement::new(crate::geometry::Permutation::identity(n), 0, -1, 1, 0)?;
    let moved = act(&gamma0, &z)?;
    let a = j_invariant(&z, m, &tr_j)?;
    let b = j_invariant(&moved, m, &tr_j)?;
    reports.push(VerificationReport::from_residual(
        "j-function-invariance",
        "j(γ₀ Z) = j(Z): weight and phase factors cancel in the ratio",
        1,
        (a - b).norm() / a.norm(),
        1e-9,
    ));

    let tr_b = Truncation::new(30)?;
    let mut bounded_h = horizontal;
    if let Some(first) = bounded_h.first_mut() {
        *first += Complex64::new(1.0, 0.0);
    }
    reports.push(check_local_boundedness(
        |pt| eisenstein_km_partial(pt, &w, &tr_b),
        bounded_h,
        0.37,
    )?);
    Ok(reports)
}

/// Every suite in sequence.
pub fn all_suites(n: usize, seed: u64, quick: bool) -> Result<Vec<VerificationReport>> {
    require_dim(n)?;
    let mut reports = operators_suite(n, seed, quick)?;
    reports.extend(fourier_suite(n, seed, quick)?);
    reports.extend(kernels_suite(n, seed, quick)?);
    reports.extend(boundary_suite(n, seed, quick)?);
    reports.extend(modular_suite(n, seed, quick)?);
    Ok(reports)
}
