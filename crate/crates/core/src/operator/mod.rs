//! The invariant Laplacian in each coordinate chart, applied to arbitrary
//! scalar fields by finite differences, plus the radial operator acting on
//! point-pair kernels.
//!
//! Chart coordinate layouts (n = number of horizontal complex coordinates):
//!
//! ```text
//! Ball           [Re w_1, Im w_1, …, Re w_{n+1}, Im w_{n+1}]      dim 2n+2
//! SiegelZ        [Re z_1, Im z_1, …, Re z_{n+1}, Im z_{n+1}]      dim 2n+2
//! SiegelReal     [x_1, y_1, …, x_n, y_n, t, ρ]                    dim 2n+2
//! BetaTheta      [β_1, θ_1, …, β_n, θ_n, t, ρ]   (z_j = √β_j e^{iθ_j})
//! Aggregate      [β, t, ρ]                       (β = Σ β_j)      dim 3
//! RadialTauOmega [τ_1, …, τ_{2n+1}, ω]                            dim 2n+2
//! RadialXy       [x, y]                          (pair kernels)   dim 2
//! ```
//!
//! The operator in each chart:
//!
//! ```text
//! Ball:        Δ = (1-|W|²) [ Σ_j ∂²_{w_j w̄_j} - Σ_{j,k} w_j w̄_k ∂²_{w_j w̄_k} ]
//! SiegelZ:     L = ρ [ Σ_{j=1}^{n+1} 2i ( z̄_j ∂²_{z_{n+1} z̄_j} - z_j ∂²_{z̄_{n+1} z_j} )
//!                      + Σ_{j=1}^{n} ∂²_{z_j z̄_j} ]
//! SiegelReal:  L = ρ [ ¼ Σ_j (∂²x_j + ∂²y_j) + (ρ+β) ∂²t + ρ ∂²ρ - n ∂ρ
//!                      + Σ_j (y_j ∂x_j - x_j ∂y_j) ∂t ]
//! BetaTheta:   L = ρ [ Σ_j β_j ∂²β_j + ρ ∂²ρ + (ρ+β) ∂²t + Σ_j (4β_j)^{-1} ∂²θ_j
//!                      - Σ_j ∂²_{θ_j t} + Σ_j ∂β_j - n ∂ρ ]
//! Aggregate:   L = ρ [ β ∂²β + ρ ∂²ρ + (ρ+β) ∂²t + n ∂β - n ∂ρ ]
//! Radial τ/ω:  L = ¼ [ ω² ( Σ_j ∂²τ_j + ∂²ω ) - (2n+1) ω ∂ω ]
//! ```
//!
//! all normalized so that ρ^s (and ω^{2s}) has eigenvalue s(s-n-1). Complex
//! Wirtinger second derivatives are assembled from real stencils via
//! `∂²_{z_j z̄_k} = ¼ (∂²_{x_j x_k} + i ∂²_{x_j y_k} - i ∂²_{y_j x_k} + ∂²_{y_j y_k})`.
//!
//! The radial (pair-kernel) operator on functions of the invariant pair
//! coordinates (x, y) is
//!
//! ```text
//! M = x(x+1) ∂²x + 2xy ∂²xy + y(y+1) ∂²y + [(n+2)x + 1] ∂x + [(n+2)y + n] ∂y
//!     + s(n+1-s),
//! ```
//!
//! whose kernel (Mg = 0) is where the Green-kernel family lives; the same
//! second-order part in the unscaled pair coordinates (u, v) appears in
//! [`apply_pair_pullback_operator`] and is what the full Laplacian reduces
//! to on point-pair fields.

pub mod fd;
pub mod fields;

pub use fd::{FdOrder, StencilSpec};

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::geometry::{cayley_inverse, SiegelPoint};

/// The coordinate charts scalar fields can live in.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Chart {
    Ball,
    SiegelZ,
    SiegelReal,
    BetaTheta,
    Aggregate,
    RadialTauOmega,
    RadialXy,
}

impl Chart {
    /// Number of real coordinates for horizontal dimension n.
    pub fn dim(&self, n: usize) -> usize {
        match self {
            Chart::Ball | Chart::SiegelZ | Chart::SiegelReal | Chart::BetaTheta => 2 * n + 2,
            Chart::Aggregate => 3,
            Chart::RadialTauOmega => 2 * n + 2,
            Chart::RadialXy => 2,
        }
    }
}

/// A scalar field: a chart, a horizontal dimension, and an evaluation
/// closure over that chart's coordinates. Closures signal out-of-domain
/// input by returning NaN; the operator appliers turn that into an error.
pub struct ScalarField {
    pub chart: Chart,
    pub n: usize,
    eval: Box<dyn Fn(&[f64]) -> Complex64 + Send + Sync>,
}

impl ScalarField {
    pub fn new<F>(chart: Chart, n: usize, eval: F) -> Self
    where
        F: Fn(&[f64]) -> Complex64 + Send + Sync + 'static,
    {
        ScalarField {
            chart,
            n,
            eval: Box::new(eval),
        }
    }

    pub fn dim(&self) -> usize {
        self.chart.dim(self.n)
    }

    pub fn eval(&self, coords: &[f64]) -> Complex64 {
        (self.eval)(coords)
    }
}

/// Chart coordinates of a geometric point. The radial charts are intrinsic
/// (they parameterize other data than a single domain point), so they are
/// rejected here.
pub fn coords_from_siegel(chart: Chart, z: &SiegelPoint) -> Result<Vec<f64>> {
    match chart {
        Chart::Ball => {
            let w = cayley_inverse(z)?;
            let mut out = Vec::with_capacity(2 * w.coords().len());
            for c in w.coords() {
                out.push(c.re);
                out.push(c.im);
            }
            Ok(out)
        }
        Chart::SiegelZ => {
            let mut out = Vec::with_capacity(2 * z.n() + 2);
            for c in z.horizontal() {
                out.push(c.re);
                out.push(c.im);
            }
            out.push(z.zlast().re);
            out.push(z.zlast().im);
            Ok(out)
        }
        Chart::SiegelReal => {
            let mut out = Vec::with_capacity(2 * z.n() + 2);
            for c in z.horizontal() {
                out.push(c.re);
                out.push(c.im);
            }
            out.push(z.t());
            out.push(z.rho());
            Ok(out)
        }
        Chart::BetaTheta => {
            let mut out = Vec::with_capacity(2 * z.n() + 2);
            for c in z.horizontal() {
                let b = c.norm_sqr();
                if b == 0.0 {
                    return Err(Error::Domain(
                        "β-θ chart is singular where a horizontal coordinate vanishes".into(),
                    ));
                }
                out.push(b);
                out.push(c.arg());
            }
            out.push(z.t());
            out.push(z.rho());
            Ok(out)
        }
        Chart::Aggregate => Ok(vec![z.beta(), z.t(), z.rho()]),
        Chart::RadialTauOmega | Chart::RadialXy => Err(Error::precondition(
            "radial charts are intrinsic; supply their coordinates directly",
        )),
    }
}

/// Checks that every stencil node stays inside the chart's domain, with a
/// factor-2 margin beyond the stencil's reach.
fn guard_domain(field: &ScalarField, coords: &[f64], st: &StencilSpec) -> Result<()> {
    if coords.len() != field.dim() {
        return Err(Error::precondition(format!(
            "field expects {} coordinates, got {}",
            field.dim(),
            coords.len()
        )));
    }
    let margin =
        |i: usize| -> f64 { 4.0 * st.reach(coords, i) };
    match field.chart {
        Chart::Ball => {
            let norm: f64 = coords.iter().map(|c| c * c).sum::<f64>();
            let worst: f64 = (0..coords.len())
                .map(|i| (coords[i].abs() + margin(i)).powi(2))
                .sum::<f64>();
            if !(norm < 1.0) || !(worst < 1.0) {
                return Err(Error::Domain(
                    "stencil reaches outside the unit ball".into(),
                ));
            }
        }
        Chart::SiegelZ => {
            // ρ = Im z_{n+1} - Σ |z_j|² must stay positive under the worst
            // combination of shifts.
            let n = field.n;
            let mut drop = margin(2 * n + 1); // Im z_{n+1} downward
            for j in 0..n {
                let (x, y) = (coords[2 * j], coords[2 * j + 1]);
                let (mx, my) = (margin(2 * j), margin(2 * j + 1));
                drop += 2.0 * x.abs() * mx + mx * mx + 2.0 * y.abs() * my + my * my;
            }
            let beta: f64 = (0..n)
                .map(|j| coords[2 * j].powi(2) + coords[2 * j + 1].powi(2))
                .sum();
            let rho = coords[2 * n + 1] - beta;
            if !(rho > drop) {
                return Err(Error::Domain(format!(
                    "stencil reaches outside the domain (ρ = {rho:.3e}, needs > {drop:.3e})"
                )));
            }
        }
        Chart::SiegelReal => {
            let d = coords.len();
            if !(coords[d - 1] > margin(d - 1)) {
                return Err(Error::Domain("stencil reaches ρ <= 0".into()));
            }
        }
        Chart::BetaTheta => {
            let d = coords.len();
            if !(coords[d - 1] > margin(d - 1)) {
                return Err(Error::Domain("stencil reaches ρ <= 0".into()));
            }
            for j in 0..field.n {
                if !(coords[2 * j] > margin(2 * j)) {
                    return Err(Error::Domain("stencil reaches β_j <= 0".into()));
                }
            }
        }
        Chart::Aggregate => {
            if !(coords[0] > margin(0)) {
                return Err(Error::Domain("stencil reaches β <= 0".into()));
            }
            if !(coords[2] > margin(2)) {
                return Err(Error::Domain("stencil reaches ρ <= 0".into()));
            }
        }
        Chart::RadialTauOmega => {
            let d = coords.len();
            if !(coords[d - 1] > margin(d - 1)) {
                return Err(Error::Domain("stencil reaches ω <= 0".into()));
            }
        }
        Chart::RadialXy => {
            if !(coords[0] > margin(0)) || !(coords[1] > margin(1)) {
                return Err(Error::Domain(
                    "stencil reaches the kernel singularity x <= 0 or y <= 0".into(),
                ));
            }
        }
    }
    Ok(())
}

/// Wirtinger mixed second derivatives between complex coordinate pairs
/// (slots 2a, 2a+1) and (slots 2b, 2b+1):
/// returns (f_{z_a z̄_b}, f_{z̄_a z_b}).
fn wirtinger_pair<F: Fn(&[f64]) -> Complex64>(
    f: &F,
    coords: &[f64],
    a: usize,
    b: usize,
    st: &StencilSpec,
) -> (Complex64, Complex64) {
    let (xa, ya) = (2 * a, 2 * a + 1);
    let (xb, yb) = (2 * b, 2 * b + 1);
    let i = Complex64::new(0.0, 1.0);
    if a == b {
        let lap = fd::d2(f, coords, xa, st) + fd::d2(f, coords, ya, st);
        let v = 0.25 * lap;
        (v, v)
    } else {
        let p = fd::d11(f, coords, xa, xb, st);
        let q = fd::d11(f, coords, xa, yb, st);
        let r = fd::d11(f, coords, ya, xb, st);
        let s = fd::d11(f, coords, ya, yb, st);
        let fab = 0.25 * (p + i * q - i * r + s);
        let fba = 0.25 * (p - i * q + i * r + s);
        (fab, fba)
    }
}

/// Apply the invariant Laplacian of the field's chart at `coords`.
pub fn apply_laplacian(
    field: &ScalarField,
    coords: &[f64],
    st: &StencilSpec,
) -> Result<Complex64> {
    guard_domain(field, coords, st)?;
    let f = |p: &[f64]| field.eval(p);
    let n = field.n;
    let value = match field.chart {
        Chart::Ball => {
            let m = n + 1;
            let norm_sqr: f64 = coords.iter().map(|c| c * c).sum();
            let w: Vec<Complex64> = (0..m)
                .map(|j| Complex64::new(coords[2 * j], coords[2 * j + 1]))
                .collect();
            let mut acc = Complex64::default();
            for j in 0..m {
                let (hjj, _) = wirtinger_pair(&f, coords, j, j, st);
                acc += hjj;
                // Diagonal part of the quadratic form.
                acc -= w[j] * w[j].conj() * hjj;
            }
            for j in 0..m {
                for k in (j + 1)..m {
                    let (hjk, hkj) = wirtinger_pair(&f, coords, j, k, st);
                    acc -= w[j] * w[k].conj() * hjk;
                    acc -= w[k] * w[j].conj() * hkj;
                }
            }
            (1.0 - norm_sqr) * acc
        }
        Chart::SiegelZ => {
            let last = n; // complex slot index of z_{n+1}
            let z: Vec<Complex64> = (0..=n)
                .map(|j| Complex64::new(coords[2 * j], coords[2 * j + 1]))
                .collect();
            let beta: f64 = (0..n).map(|j| z[j].norm_sqr()).sum();
            let rho = z[n].im - beta;
            let i = Complex64::new(0.0, 1.0);
            let mut acc = Complex64::default();
            for j in 0..=n {
                // b = f_{z_{n+1} z̄_j}, c = f_{z̄_{n+1} z_j}.
                let (b, c) = {
                    let (fab, fba) = wirtinger_pair(&f, coords, last, j, st);
                    (fab, fba)
                };
                acc += 2.0 * i * (z[j].conj() * b - z[j] * c);
            }
            for j in 0..n {
                let (hjj, _) = wirtinger_pair(&f, coords, j, j, st);
                acc += hjj;
            }
            rho * acc
        }
        Chart::SiegelReal => {
            let d = coords.len();
            let (it, irho) = (d - 2, d - 1);
            let rho = coords[irho];
            let beta: f64 = (0..n)
                .map(|j| coords[2 * j].powi(2) + coords[2 * j + 1].powi(2))
                .sum();
            let mut acc = Complex64::default();
            for j in 0..n {
                acc += 0.25 * (fd::d2(&f, coords, 2 * j, st) + fd::d2(&f, coords, 2 * j + 1, st));
                acc += coords[2 * j + 1] * fd::d11(&f, coords, 2 * j, it, st);
                acc -= coords[2 * j] * fd::d11(&f, coords, 2 * j + 1, it, st);
            }
            acc += (rho + beta) * fd::d2(&f, coords, it, st);
            acc += rho * fd::d2(&f, coords, irho, st);
            acc -= n as f64 * fd::d1(&f, coords, irho, st);
            rho * acc
        }
        Chart::BetaTheta => {
            let d = coords.len();
            let (it, irho) = (d - 2, d - 1);
            let rho = coords[irho];
            let beta: f64 = (0..n).map(|j| coords[2 * j]).sum();
            let mut acc = Complex64::default();
            for j in 0..n {
                let bj = coords[2 * j];
                acc += bj * fd::d2(&f, coords, 2 * j, st);
                acc += fd::d2(&f, coords, 2 * j + 1, st) / (4.0 * bj);
                acc -= fd::d11(&f, coords, 2 * j + 1, it, st);
                acc += fd::d1(&f, coords, 2 * j, st);
            }
            acc += rho * fd::d2(&f, coords, irho, st);
            acc += (rho + beta) * fd::d2(&f, coords, it, st);
            acc -= n as f64 * fd::d1(&f, coords, irho, st);
            rho * acc
        }
        Chart::Aggregate => {
            let (beta, _t, rho) = (coords[0], coords[1], coords[2]);
            let mut acc = Complex64::default();
            acc += beta * fd::d2(&f, coords, 0, st);
            acc += rho * fd::d2(&f, coords, 2, st);
            acc += (rho + beta) * fd::d2(&f, coords, 1, st);
            acc += n as f64 * fd::d1(&f, coords, 0, st);
            acc -= n as f64 * fd::d1(&f, coords, 2, st);
            rho * acc
        }
        Chart::RadialTauOmega => {
            let d = coords.len();
            let iw = d - 1;
            let omega = coords[iw];
            let mut acc = Complex64::default();
            for j in 0..d - 1 {
                acc += fd::d2(&f, coords, j, st);
            }
            acc += fd::d2(&f, coords, iw, st);
            acc *= omega * omega;
            acc -= (2.0 * n as f64 + 1.0) * omega * fd::d1(&f, coords, iw, st);
            0.25 * acc
        }
        Chart::RadialXy => {
            return Err(Error::precondition(
                "pair-kernel fields use apply_radial_operator, not the Laplacian",
            ));
        }
    };
    if !value.is_finite() {
        return Err(Error::Domain(
            "field evaluated to a non-finite value inside the stencil".into(),
        ));
    }
    Ok(value)
}

/// Apply the radial pair-kernel operator M (module docs) to a RadialXy
/// field at (x, y), with spectral parameter s.
pub fn apply_radial_operator(
    field: &ScalarField,
    s: Complex64,
    coords: &[f64],
    st: &StencilSpec,
) -> Result<Complex64> {
    if field.chart != Chart::RadialXy {
        return Err(Error::precondition(
            "apply_radial_operator needs a RadialXy field",
        ));
    }
    guard_domain(field, coords, st)?;
    let f = |p: &[f64]| field.eval(p);
    let (x, y) = (coords[0], coords[1]);
    let n = field.n as f64;
    let mut acc = Complex64::default();
    acc += x * (x + 1.0) * fd::d2(&f, coords, 0, st);
    acc += 2.0 * x * y * fd::d11(&f, coords, 0, 1, st);
    acc += y * (y + 1.0) * fd::d2(&f, coords, 1, st);
    acc += ((n + 2.0) * x + 1.0) * fd::d1(&f, coords, 0, st);
    acc += ((n + 2.0) * y + n) * fd::d1(&f, coords, 1, st);
    acc += s * (n + 1.0 - s) * field.eval(coords);
    if !acc.is_finite() {
        return Err(Error::Domain(
            "kernel evaluated to a non-finite value inside the stencil".into(),
        ));
    }
    Ok(acc)
}

/// The second-order part of the pair-kernel reduction in the UNSCALED pair
/// coordinates (u, v), with `lambda = β'/ρ'` of the fixed second point:
///
/// ```text
/// (u² + (λ+1)u) g_uu + 2uv g_uv + v(v+λ) g_vv
///   + ((n+2)u + λ+1) g_u + ((n+2)v + nλ) g_v.
/// ```
///
/// Substituting u = (1+λ)x, v = λy turns this into the second-order part of
/// M, and applying the full Laplacian to Z ↦ g(u(Z,Z'), v(Z,Z')) lands
/// exactly here — the identity [`tests::pullback_identity`] checks by FD.
pub fn apply_pair_pullback_operator<G>(
    g: G,
    n: usize,
    lambda: f64,
    coords: &[f64],
    st: &StencilSpec,
) -> Result<Complex64>
where
    G: Fn(f64, f64) -> Complex64 + Send + Sync,
{
    if coords.len() != 2 {
        return Err(Error::precondition("pair operator needs (u, v) coordinates"));
    }
    let f = |p: &[f64]| g(p[0], p[1]);
    let (u, v) = (coords[0], coords[1]);
    let nf = n as f64;
    let mut acc = Complex64::default();
    acc += (u * u + (lambda + 1.0) * u) * fd::d2(&f, coords, 0, st);
    acc += 2.0 * u * v * fd::d11(&f, coords, 0, 1, st);
    acc += v * (v + lambda) * fd::d2(&f, coords, 1, st);
    acc += ((nf + 2.0) * u + lambda + 1.0) * fd::d1(&f, coords, 0, st);
    acc += ((nf + 2.0) * v + nf * lambda) * fd::d1(&f, coords, 1, st);
    Ok(acc)
}

/// Largest normalized eigen-equation residual |Lf - λf| / (1 + |f|) over a
/// set of chart points.
pub fn eigen_residual(
    field: &ScalarField,
    lambda: Complex64,
    points: &[Vec<f64>],
    st: &StencilSpec,
) -> Result<f64> {
    if points.is_empty() {
        return Err(Error::precondition("eigen_residual needs at least one point"));
    }
    let mut worst = 0.0f64;
    for p in points {
        let lf = apply_laplacian(field, p, st)?;
        let fv = field.eval(p);
        let r = (lf - lambda * fv).norm() / (1.0 + fv.norm());
        worst = worst.max(r);
    }
    Ok(worst)
}

/// Largest |Lf| / (1 + |f|) over points, for the gauge-distance field
/// anchored at `anchor` (moving point in the second slot — the harmonic
/// orientation; see [`crate::geometry::cygan_distance`]).
pub fn harmonicity_residual_cygan(
    anchor: &SiegelPoint,
    points: &[Vec<f64>],
    st: &StencilSpec,
) -> Result<f64> {
    let field = fields::cygan_field(anchor.clone());
    eigen_residual(&field, Complex64::default(), points, st)
}
