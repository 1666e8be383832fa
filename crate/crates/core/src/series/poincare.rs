//! Orbit sums of the radial two-point kernels: for a kernel profile g and
//! an ordered pair of interior points,
//!
//! ```text
//! F(Z, Z'; s) = Σ_γ g( x(Z, γZ'), y(Z) ),
//! ```
//!
//! where (x, y) are the rescaled pair coordinates. The second coordinate
//! y(Z) = β/ρ does not move under γ and is computed once; the first
//! collapses to 0 exactly when γZ' and Z share the aggregate coordinates
//! (t, ρ + β), which the kernels reject as a pole.

use num_complex::Complex64;
use rayon::prelude::*;

use super::{group_elements_box, KahanSum, Truncation};
use crate::error::{Error, Result};
use crate::geometry::{act, pair_invariants_xy, GroupElement, SiegelPoint};
use crate::series::kernel::{eval_kernel, RadialKernel};
use crate::spectral::SpectralParam;

/// Resolves an optional split against the midpoint default for this (s, n).
fn resolve_split(
    s: Complex64,
    n: usize,
    split: Option<(Complex64, Complex64)>,
) -> (Complex64, Complex64) {
    split.unwrap_or_else(|| SpectralParam::new(s).default_split(n))
}

/// Σ_γ g(x(Z, γZ'), y(Z)) over the explicit element list, accumulated in
/// list order with compensated summation.
pub fn poincare_over(
    elements: &[GroupElement],
    z: &SiegelPoint,
    zp: &SiegelPoint,
    s: Complex64,
    split: Option<(Complex64, Complex64)>,
    kind: RadialKernel,
) -> Result<Complex64> {
    if z.n() != zp.n() {
        return Err(Error::precondition(
            "orbit sum needs points of equal dimension",
        ));
    }
    let split = resolve_split(s, z.n(), split);
    let y = z.beta() / z.rho();
    let terms: Vec<Result<Complex64>> = elements
        .par_iter()
        .map(|g| {
            let moved = act(g, zp)?;
            let (x, _) = pair_invariants_xy(z, &moved);
            eval_kernel(kind, z.n(), s, split, x, y)
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
        Err(Error::Domain("orbit kernel sum overflowed".into()))
    }
}

/// Σ_γ g(x(Z, γZ'), y(Z)) over the max-entry box enumeration.
pub fn poincare_partial(
    z: &SiegelPoint,
    zp: &SiegelPoint,
    s: Complex64,
    split: Option<(Complex64, Complex64)>,
    kind: RadialKernel,
    tr: &Truncation,
) -> Result<Complex64> {
    let elements = group_elements_box(z.n(), tr)?;
    poincare_over(&elements, z, zp, s, split, kind)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::kernel::{kernel_sum, kernel_x, kernel_xy};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn s_re(x: f64) -> Complex64 {
        Complex64::new(x, 0.0)
    }

    fn pair() -> (SiegelPoint, SiegelPoint) {
        let z = SiegelPoint::from_chart(vec![Complex64::new(0.3, -0.2)], 0.1, 1.1).unwrap();
        let zp = SiegelPoint::from_chart(vec![Complex64::new(-0.4, 0.1)], 0.8, 0.6).unwrap();
        (z, zp)
    }

    #[test]
    fn identity_truncation_recovers_single_kernels() {
        let (z, zp) = pair();
        let id = vec![GroupElement::identity(1)];
        let s = s_re(2.4);
        let (x, y) = pair_invariants_xy(&z, &zp);

        let fx = poincare_over(&id, &z, &zp, s, None, RadialKernel::XProfile).unwrap();
        assert!((fx - kernel_x(1, s, x).unwrap()).norm() < 1e-14 * fx.norm());

        let fw = poincare_over(&id, &z, &zp, s, None, RadialKernel::SumProfile).unwrap();
        assert!((fw - kernel_sum(1, s, x + y).unwrap()).norm() < 1e-14 * fw.norm());

        let split = SpectralParam::new(s).default_split(1);
        let fxy = poincare_over(&id, &z, &zp, s, None, RadialKernel::TwoVariable).unwrap();
        let direct = kernel_xy(1, split.0, split.1, x, y).unwrap();
        assert!((fxy - direct).norm() < 1e-14 * fxy.norm());
    }

    #[test]
    fn reindexing_by_a_group_element_is_exact() {
        // Summing over S·γ₀ against Z' equals summing over S against γ₀Z'.
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let gamma0 = GroupElement::random_walk(1, 5, &mut rng);
        let tr = Truncation::new(1).unwrap();
        let elements = group_elements_box(1, &tr).unwrap();
        let shifted: Vec<GroupElement> = elements
            .iter()
            .map(|g| g.compose(&gamma0).unwrap())
            .collect();
        let (z, zp) = pair();
        let s = s_re(2.6);
        let moved = act(&gamma0, &zp).unwrap();
        let lhs = poincare_over(&shifted, &z, &zp, s, None, RadialKernel::XProfile).unwrap();
        let rhs = poincare_over(&elements, &z, &moved, s, None, RadialKernel::XProfile).unwrap();
        assert!((lhs - rhs).norm() <= 1e-12 * rhs.norm());
    }

    #[test]
    fn permutation_blocks_scale_the_sum_by_their_count() {
        let z = SiegelPoint::from_chart(
            vec![Complex64::new(0.3, 0.0), Complex64::new(0.0, 0.25)],
            0.2,
            1.0,
        )
        .unwrap();
        let zp = SiegelPoint::from_chart(
            vec![Complex64::new(-0.1, 0.2), Complex64::new(0.15, 0.0)],
            -0.4,
            0.8,
        )
        .unwrap();
        let s = s_re(2.8);
        let plain = Truncation::new(1).unwrap();
        let full = Truncation::new(1).unwrap().with_permutations(true);
        let a = poincare_partial(&z, &zp, s, None, RadialKernel::SumProfile, &plain).unwrap();
        let b = poincare_partial(&z, &zp, s, None, RadialKernel::SumProfile, &full).unwrap();
        assert!((b - 2.0 * a).norm() <= 1e-13 * b.norm());
    }

    #[test]
    fn orbit_collision_is_rejected_as_a_pole() {
        let (z, _) = pair();
        let id = vec![GroupElement::identity(1)];
        let err =
            poincare_over(&id, &z, &z, s_re(2.4), None, RadialKernel::XProfile).unwrap_err();
        assert!(matches!(err, Error::Pole(_)));
    }
}
