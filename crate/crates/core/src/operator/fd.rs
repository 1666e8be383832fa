//! Central finite-difference stencils for first and second partial
//! derivatives of scalar fields `R^d → C`.
//!
//! Steps are relative: coordinate i moves by `h · max(1, |c_i|)`. Order 2
//! uses the classical 3-point formulas; order 4 uses 5-point formulas, with
//! the order-4 mixed derivative built by nesting two order-4 first
//! derivatives (16 evaluations), which keeps every formula on tensor lines.

use num_complex::Complex64;

/// Which truncation order the stencils run at.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FdOrder {
    Two,
    Four,
}

/// Relative step size and order for all finite differencing.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StencilSpec {
    /// Relative step: coordinate i is displaced by `h · max(1, |c_i|)`.
    pub h: f64,
    pub order: FdOrder,
}

impl Default for StencilSpec {
    fn default() -> Self {
        StencilSpec {
            h: 1e-3,
            order: FdOrder::Two,
        }
    }
}

impl StencilSpec {
    /// Actual step used for coordinate `i` at this base point.
    pub fn step(&self, base: &[f64], i: usize) -> f64 {
        self.h * base[i].abs().max(1.0)
    }

    /// Largest displacement the stencil can apply along coordinate `i`
    /// (±2h for the order-4 formulas and the nested mixed stencil).
    pub fn reach(&self, base: &[f64], i: usize) -> f64 {
        2.0 * self.step(base, i)
    }
}

fn eval_shifted<F: Fn(&[f64]) -> Complex64>(
    f: &F,
    base: &[f64],
    shifts: &[(usize, f64)],
) -> Complex64 {
    let mut pt = base.to_vec();
    for &(i, dx) in shifts {
        pt[i] += dx;
    }
    f(&pt)
}

/// ∂f/∂x_i.
pub fn d1<F: Fn(&[f64]) -> Complex64>(
    f: &F,
    base: &[f64],
    i: usize,
    spec: &StencilSpec,
) -> Complex64 {
    let h = spec.step(base, i);
    match spec.order {
        FdOrder::Two => {
            let fp = eval_shifted(f, base, &[(i, h)]);
            let fm = eval_shifted(f, base, &[(i, -h)]);
            (fp - fm) / (2.0 * h)
        }
        FdOrder::Four => {
            let f2p = eval_shifted(f, base, &[(i, 2.0 * h)]);
            let fp = eval_shifted(f, base, &[(i, h)]);
            let fm = eval_shifted(f, base, &[(i, -h)]);
            let f2m = eval_shifted(f, base, &[(i, -2.0 * h)]);
            (-f2p + 8.0 * fp - 8.0 * fm + f2m) / (12.0 * h)
        }
    }
}

/// ∂²f/∂x_i².
pub fn d2<F: Fn(&[f64]) -> Complex64>(
    f: &F,
    base: &[f64],
    i: usize,
    spec: &StencilSpec,
) -> Complex64 {
    let h = spec.step(base, i);
    let f0 = f(base);
    match spec.order {
        FdOrder::Two => {
            let fp = eval_shifted(f, base, &[(i, h)]);
            let fm = eval_shifted(f, base, &[(i, -h)]);
            (fp - 2.0 * f0 + fm) / (h * h)
        }
        FdOrder::Four => {
            let f2p = eval_shifted(f, base, &[(i, 2.0 * h)]);
            let fp = eval_shifted(f, base, &[(i, h)]);
            let fm = eval_shifted(f, base, &[(i, -h)]);
            let f2m = eval_shifted(f, base, &[(i, -2.0 * h)]);
            (-f2p + 16.0 * fp - 30.0 * f0 + 16.0 * fm - f2m) / (12.0 * h * h)
        }
    }
}

/// Mixed derivative ∂²f/∂x_i∂x_j for i ≠ j.
pub fn d11<F: Fn(&[f64]) -> Complex64>(
    f: &F,
    base: &[f64],
    i: usize,
    j: usize,
    spec: &StencilSpec,
) -> Complex64 {
    debug_assert_ne!(i, j);
    let hi = spec.step(base, i);
    let hj = spec.step(base, j);
    match spec.order {
        FdOrder::Two => {
            let fpp = eval_shifted(f, base, &[(i, hi), (j, hj)]);
            let fpm = eval_shifted(f, base, &[(i, hi), (j, -hj)]);
            let fmp = eval_shifted(f, base, &[(i, -hi), (j, hj)]);
            let fmm = eval_shifted(f, base, &[(i, -hi), (j, -hj)]);
            (fpp - fpm - fmp + fmm) / (4.0 * hi * hj)
        }
        FdOrder::Four => {
            // Nest two order-4 first derivatives: outer in i, inner in j.
            let inner = |di: f64| -> Complex64 {
                let g = |dj: f64| eval_shifted(f, base, &[(i, di), (j, dj)]);
                (-g(2.0 * hj) + 8.0 * g(hj) - 8.0 * g(-hj) + g(-2.0 * hj)) / (12.0 * hj)
            };
            (-inner(2.0 * hi) + 8.0 * inner(hi) - 8.0 * inner(-hi) + inner(-2.0 * hi))
                / (12.0 * hi)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn cx(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    // f(x, y) = x³ y² + e^{x y}; all derivatives in closed form.
    fn f(p: &[f64]) -> Complex64 {
        cx(p[0].powi(3) * p[1].powi(2) + (p[0] * p[1]).exp())
    }

    #[test]
    fn first_and_second_derivatives_order_two() {
        let base = [0.7, -0.4];
        let spec = StencilSpec::default();
        let e = (0.7f64 * -0.4).exp();
        let fx = 3.0 * 0.49 * 0.16 + (-0.4) * e;
        let fxx = 6.0 * 0.7 * 0.16 + 0.16 * e;
        let fxy = 6.0 * 0.49 * (-0.4) + e * (1.0 + 0.7 * (-0.4));
        // Truncation of the 3-point stencil is h²/6 · f_xxx ≈ 1.5e-7 here,
        // which is 2e-6 of the (small) exact value.
        assert_relative_eq!(d1(&f, &base, 0, &spec).re, fx, max_relative = 1e-5);
        assert_relative_eq!(d2(&f, &base, 0, &spec).re, fxx, max_relative = 1e-5);
        assert_relative_eq!(d11(&f, &base, 0, 1, &spec).re, fxy, max_relative = 1e-5);
    }

    #[test]
    fn order_four_beats_order_two() {
        let base = [0.7, -0.4];
        let two = StencilSpec {
            h: 1e-2,
            order: FdOrder::Two,
        };
        let four = StencilSpec {
            h: 1e-2,
            order: FdOrder::Four,
        };
        let e = (0.7f64 * -0.4).exp();
        let fxy = 6.0 * 0.49 * (-0.4) + e * (1.0 + 0.7 * (-0.4));
        let err2 = (d11(&f, &base, 0, 1, &two).re - fxy).abs();
        let err4 = (d11(&f, &base, 0, 1, &four).re - fxy).abs();
        assert!(err4 < err2 / 50.0, "order 4 ({err4:e}) vs order 2 ({err2:e})");

        let fxx = 6.0 * 0.7 * 0.16 + 0.16 * e;
        let err2 = (d2(&f, &base, 0, &two).re - fxx).abs();
        let err4 = (d2(&f, &base, 0, &four).re - fxx).abs();
        assert!(err4 < err2 / 50.0, "order 4 ({err4:e}) vs order 2 ({err2:e})");
    }

    #[test]
    fn relative_steps_track_large_coordinates() {
        // At base x = 100 an absolute step of 1e-3 would lose ~9 digits to
        // cancellation; the relative step keeps the estimate sane.
        let g = |p: &[f64]| cx((p[0] / 100.0).sin());
        let base = [100.0];
        let spec = StencilSpec::default();
        assert_relative_eq!(
            d1(&g, &base, 0, &spec).re,
            (1.0f64).cos() / 100.0,
            max_relative = 1e-6
        );
    }
}
