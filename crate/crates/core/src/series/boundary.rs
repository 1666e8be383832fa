//! Boundary-kernel series: sums of powers of the wall kernel
//! P(Z, ζ) = ρ / ((t − ζ)² + (ρ + β)²) over group orbits, their boundary
//! degeneration (a two-point series on the wall line), and the limit that
//! ties the radial two-point kernel to a power of P at the wall.
//!
//! ```text
//! E(Z, ζ; s)  = Σ_γ P(γZ, ζ)^s
//! S(ζ, η; s)  = Σ_γ |γ'(ζ)|^s / |γζ − η|^{2s}
//! covariance    P(γZ, γζ) · |γ'(ζ)| = P(Z, ζ)
//! degeneration  ρ^{-s} E((0, t + iρ), ζ; s) → S(t, ζ; s)   as ρ → 0
//! wall limit    (ρ')^{-s} r_s(x(Z, Z')) → c(s) · P(Z, t')^s as Z' = (0, t'+iρ'), ρ' → 0
//! ```
//!
//! All sums here run over exactly the element list supplied (or the box
//! enumeration) with no symmetrization factor; duplicate elements
//! contribute twice.

use num_complex::Complex64;
use rayon::prelude::*;

use super::{cpow, group_elements_box, KahanSum, Truncation};
use crate::error::{Error, Result};
use crate::geometry::{act, act_boundary, pair_invariants_xy, GroupElement, SiegelPoint};
use crate::report::VerificationReport;
use crate::series::kernel::kernel_x;

/// The wall kernel P(Z, ζ) = ρ / ((t − ζ)² + (ρ + β)²); strictly positive
/// on interior points.
pub fn poisson_kernel(z: &SiegelPoint, zeta: f64) -> f64 {
    let dt = z.t() - zeta;
    let h = z.rho() + z.beta();
    z.rho() / (dt * dt + h * h)
}

/// Σ_γ P(γZ, ζ)^s over the explicit element list, accumulated in list
/// order with compensated summation.
pub fn boundary_eisenstein_over(
    elements: &[GroupElement],
    z: &SiegelPoint,
    zeta: f64,
    s: Complex64,
) -> Result<Complex64> {
    let terms: Vec<Result<Complex64>> = elements
        .par_iter()
        .map(|g| {
            let w = act(g, z)?;
            cpow(poisson_kernel(&w, zeta), s)
        })
        .collect();
    let mut acc = KahanSum::default();
    for t in terms {
        acc.add(t?);
    }
    let total = acc.value();
    if total.is_finite() {
        Ok(total)
    } else {
        Err(Error::Domain("boundary series overflowed".into()))
    }
}

/// Σ_γ P(γZ, ζ)^s over the max-entry box enumeration.
pub fn boundary_eisenstein_partial(
    z: &SiegelPoint,
    zeta: f64,
    s: Complex64,
    tr: &Truncation,
) -> Result<Complex64> {
    let elements = group_elements_box(z.n(), tr)?;
    boundary_eisenstein_over(&elements, z, zeta, s)
}

/// Σ_γ |γ'(ζ)|^s / |γζ − η|^{2s} over the explicit element list. Fails
/// with a pole error when some γζ hits the line's point at infinity
/// (cζ + d = 0) or collides with η.
pub fn scattering_over(
    elements: &[GroupElement],
    zeta: f64,
    eta: f64,
    s: Complex64,
) -> Result<Complex64> {
    let terms: Vec<Result<Complex64>> = elements
        .par_iter()
        .map(|g| {
            let (image, deriv) = act_boundary(g, zeta)?;
            let gap = image - eta;
            if gap.abs() <= 1e-12 * (1.0 + eta.abs()) {
                return Err(Error::Pole(format!(
                    "orbit point {image} collides with the target {eta}"
                )));
            }
            Ok(cpow(deriv, s)? * cpow(gap * gap, -s)?)
        })
        .collect();
    let mut acc = KahanSum::default();
    for t in terms {
        acc.add(t?);
    }
    let total = acc.value();
    if total.is_finite() {
        Ok(total)
    } else {
        Err(Error::Domain("two-point boundary series overflowed".into()))
    }
}

/// Σ_γ |γ'(ζ)|^s / |γζ − η|^{2s} over the max-entry box enumeration for
/// horizontal dimension `n`.
pub fn scattering_partial(
    n: usize,
    zeta: f64,
    eta: f64,
    s: Complex64,
    tr: &Truncation,
) -> Result<Complex64> {
    let elements = group_elements_box(n, tr)?;
    scattering_over(&elements, zeta, eta, s)
}

/// Checks that (ρ')^{-s} · r_s(x(Z, Z')) / P(Z, t')^s, with r_s the
/// x-profile radial kernel and Z' = (0, t' + iρ'), approaches a constant
/// independent of Z as ρ' → 0: reports the spread across the sample
/// points at the smallest height together with the gap between the two
/// smallest heights.
pub fn green_boundary_limit(
    zs: &[SiegelPoint],
    tprime: f64,
    s: Complex64,
) -> Result<VerificationReport> {
    if zs.is_empty() {
        return Err(Error::precondition("need at least one interior sample point"));
    }
    let n = zs[0].n();
    if zs.iter().any(|z| z.n() != n) {
        return Err(Error::precondition("sample points must share one dimension"));
    }
    let heights = [1e-3, 1e-4, 1e-5];
    let mut ratios = vec![Vec::with_capacity(zs.len()); heights.len()];
    for (level, &rho_p) in heights.iter().enumerate() {
        let zp = SiegelPoint::from_chart(vec![Complex64::default(); n], tprime, rho_p)?;
        for z in zs {
            let (x, _y) = pair_invariants_xy(z, &zp);
            let r = kernel_x(n, s, x)?;
            let ratio = cpow(rho_p, -s)? * r * cpow(poisson_kernel(z, tprime), -s)?;
            ratios[level].push(ratio);
        }
    }
    let finest = &ratios[heights.len() - 1];
    let base = finest[0];
    let spread = finest
        .iter()
        .map(|r| (r - base).norm() / base.norm())
        .fold(0.0f64, f64::max);
    let cauchy = ratios[heights.len() - 2]
        .iter()
        .zip(finest)
        .map(|(coarse, fine)| (coarse - fine).norm() / fine.norm())
        .fold(0.0f64, f64::max);
    Ok(VerificationReport::from_residual(
        "wall-limit-of-radial-kernel",
        "(ρ')^{−s} r_s(x(Z, Z')) → c(s) P(Z, t')^s  as  Z' = (0, t'+iρ'), ρ' → 0",
        zs.len(),
        spread.max(cauchy),
        1e-2,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn s_re(x: f64) -> Complex64 {
        Complex64::new(x, 0.0)
    }

    fn sample_point() -> SiegelPoint {
        SiegelPoint::from_chart(vec![Complex64::new(0.2, -0.1)], 0.4, 0.9).unwrap()
    }

    #[test]
    fn wall_kernel_reference_value_and_decay() {
        let base = SiegelPoint::from_chart(vec![Complex64::default()], 0.0, 1.0).unwrap();
        assert_relative_eq!(poisson_kernel(&base, 0.0), 1.0, max_relative = 1e-15);
        // Far along the wall the kernel decays like ζ^{-2}.
        let far = poisson_kernel(&base, 200.0) / poisson_kernel(&base, 400.0);
        assert_relative_eq!(far, 4.0, max_relative = 1e-3);
    }

    #[test]
    fn kernel_covariance_under_the_group() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let z = sample_point();
        for _ in 0..20 {
            let g = GroupElement::random_walk(1, 6, &mut rng);
            let zeta = 0.37;
            let Ok((image, deriv)) = act_boundary(&g, zeta) else {
                continue;
            };
            let w = act(&g, &z).unwrap();
            let lhs = poisson_kernel(&w, image) * deriv;
            let rhs = poisson_kernel(&z, zeta);
            assert_relative_eq!(lhs, rhs, max_relative = 1e-11);
        }
    }

    #[test]
    fn identity_truncation_recovers_single_kernels() {
        let z = sample_point();
        let id = vec![GroupElement::identity(1)];
        let s = s_re(2.0);
        let e = boundary_eisenstein_over(&id, &z, 0.7, s).unwrap();
        let p = poisson_kernel(&z, 0.7);
        assert_relative_eq!(e.re, p * p, max_relative = 1e-13);
        assert!(e.im.abs() < 1e-15);

        let sc = scattering_over(&id, 0.3, 1.7, s).unwrap();
        assert_relative_eq!(sc.re, (0.3f64 - 1.7).powi(2).recip().powi(2), max_relative = 1e-13);
    }

    #[test]
    fn two_point_series_is_symmetric_over_an_inverse_closed_set() {
        // The max-entry box is closed under inversion, and the summand
        // satisfies term(γ; ζ, η) = term(γ⁻¹; η, ζ).
        let tr = Truncation::new(2).unwrap();
        let s = s_re(1.8);
        let a = scattering_partial(1, 0.3, 1.7, s, &tr).unwrap();
        let b = scattering_partial(1, 1.7, 0.3, s, &tr).unwrap();
        assert_relative_eq!(a.re, b.re, max_relative = 1e-12);
    }

    #[test]
    fn sums_grow_with_the_box_for_positive_summands() {
        let z = sample_point();
        let s = s_re(2.2);
        let mut prev_e = 0.0;
        let mut prev_s = 0.0;
        for box_n in 1..=4 {
            let tr = Truncation::new(box_n).unwrap();
            let e = boundary_eisenstein_partial(&z, 0.7, s, &tr).unwrap().re;
            let sc = scattering_partial(1, 0.3, 1.7, s, &tr).unwrap().re;
            assert!(e > prev_e && sc > prev_s, "box {box_n}: {e} {sc}");
            prev_e = e;
            prev_s = sc;
        }
    }

    #[test]
    fn reindexing_by_a_group_element_is_exact() {
        // Summing over S·γ₀ at Z equals summing over S at γ₀Z.
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let gamma0 = GroupElement::random_walk(1, 5, &mut rng);
        let tr = Truncation::new(2).unwrap();
        let elements = group_elements_box(1, &tr).unwrap();
        let shifted: Vec<GroupElement> = elements
            .iter()
            .map(|g| g.compose(&gamma0).unwrap())
            .collect();
        let z = sample_point();
        let s = Complex64::new(2.4, 0.7);
        let moved = act(&gamma0, &z).unwrap();
        let lhs = boundary_eisenstein_over(&shifted, &z, 0.7, s).unwrap();
        let rhs = boundary_eisenstein_over(&elements, &moved, 0.7, s).unwrap();
        assert!((lhs - rhs).norm() <= 1e-12 * rhs.norm());
    }

    #[test]
    fn boundary_argument_transforms_with_the_derivative_weight() {
        // E(Z, γζ; s) · |γ'(ζ)|^s equals the series over γ⁻¹·S at (Z, ζ).
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        let gamma = GroupElement::random_walk(1, 4, &mut rng);
        let ginv = gamma.inverse();
        let tr = Truncation::new(2).unwrap();
        let elements = group_elements_box(1, &tr).unwrap();
        let mapped: Vec<GroupElement> = elements
            .iter()
            .map(|g| ginv.compose(g).unwrap())
            .collect();
        let z = sample_point();
        let zeta = 0.37;
        let s = s_re(2.1);
        let (image, deriv) = act_boundary(&gamma, zeta).unwrap();
        let lhs = boundary_eisenstein_over(&elements, &z, image, s).unwrap()
            * cpow(deriv, s).unwrap();
        let rhs = boundary_eisenstein_over(&mapped, &z, zeta, s).unwrap();
        assert!((lhs - rhs).norm() <= 1e-11 * rhs.norm());
    }

    #[test]
    fn interior_series_degenerates_to_the_two_point_series() {
        let rho = 1e-6;
        let t = 0.3;
        let zeta = 1.7;
        let s = s_re(2.0);
        let tr = Truncation::new(2).unwrap();
        let elements = group_elements_box(1, &tr).unwrap();
        let z = SiegelPoint::from_chart(vec![Complex64::default()], t, rho).unwrap();
        let interior =
            boundary_eisenstein_over(&elements, &z, zeta, s).unwrap() * cpow(rho, -s).unwrap();
        let wall = scattering_over(&elements, t, zeta, s).unwrap();
        assert!(
            (interior - wall).norm() <= 1e-3 * wall.norm(),
            "interior {interior} vs wall {wall}"
        );
    }

    #[test]
    fn orbit_collision_is_a_pole_error() {
        // ζ = η and the identity element force a collision.
        let id = vec![GroupElement::identity(1)];
        let err = scattering_over(&id, 0.5, 0.5, s_re(2.0)).unwrap_err();
        assert!(matches!(err, Error::Pole(_)));
    }

    #[test]
    fn wall_limit_ratio_is_constant_across_interior_points() {
        let zs = vec![
            SiegelPoint::from_chart(vec![Complex64::new(0.2, 0.1)], 0.4, 0.7).unwrap(),
            SiegelPoint::from_chart(vec![Complex64::new(0.0, -0.3)], -0.2, 1.3).unwrap(),
            SiegelPoint::from_chart(vec![Complex64::new(0.5, 0.0)], 0.9, 0.6).unwrap(),
        ];
        let report = green_boundary_limit(&zs, 0.2, s_re(3.0)).unwrap();
        assert!(report.pass, "{report}");
    }
}
