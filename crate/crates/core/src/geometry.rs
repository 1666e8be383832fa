//! The Siegel-domain and unit-ball models of complex hyperbolic space, the
//! discrete group acting on them, and the invariant point-pair coordinates.
//!
//! A point of the Siegel model is Z = (z_1, …, z_n, z_{n+1}) ∈ C^{n+1} with
//!
//! ```text
//! ρ(Z) = Im z_{n+1} - Σ_j |z_j|² > 0,
//! ```
//!
//! and the three chart functions used everywhere downstream are
//! `t = Re z_{n+1}`, `β = Σ_j |z_j|²`, and ρ itself, so `Im z_{n+1} = ρ + β`.
//!
//! The unit-ball model is W ∈ C^{n+1} with |W| < 1; the two are exchanged by
//! the Cayley map
//!
//! ```text
//! z_j = i w_j / (1 - w_{n+1}),   z_{n+1} = i (1 + w_{n+1}) / (1 - w_{n+1}).
//! ```
//!
//! Group elements are pairs (σ; a, b, c, d) of a coordinate permutation
//! σ ∈ S_n and an integer unimodular matrix (ad - bc = 1), acting by
//!
//! ```text
//! (γ Z)_j   = z_{σ^{-1}(j)} / (c z_{n+1} + d),      j = 1 … n,
//! (γ Z)_{n+1} = (a z_{n+1} + b) / (c z_{n+1} + d),
//! ```
//!
//! under which ρ and β both scale by |c z_{n+1} + d|^{-2} — the law all the
//! invariance tests pin down.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::quad::{adaptive_finite, QuadratureSpec};

/// A point of the Siegel domain: n "horizontal" coordinates plus the
/// distinguished last coordinate, with the height ρ cached at construction.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "SiegelPointRepr", into = "SiegelPointRepr")]
pub struct SiegelPoint {
    z: Vec<Complex64>,
    last: Complex64,
    beta: f64,
    rho: f64,
}

/// Wire format: {"z": [[re, im], …], "zlast": [re, im]}.
#[derive(Debug, Clone, Serialize, Deserialize)]
struct SiegelPointRepr {
    z: Vec<[f64; 2]>,
    zlast: [f64; 2],
}

impl TryFrom<SiegelPointRepr> for SiegelPoint {
    type Error = Error;
    fn try_from(r: SiegelPointRepr) -> Result<Self> {
        let z: Vec<Complex64> = r.z.iter().map(|&[re, im]| Complex64::new(re, im)).collect();
        SiegelPoint::new(z, Complex64::new(r.zlast[0], r.zlast[1]))
    }
}

impl From<SiegelPoint> for SiegelPointRepr {
    fn from(p: SiegelPoint) -> Self {
        SiegelPointRepr {
            z: p.z.iter().map(|w| [w.re, w.im]).collect(),
            zlast: [p.last.re, p.last.im],
        }
    }
}

impl SiegelPoint {
    /// Validated constructor; rejects points with ρ ≤ 0 or empty horizontal
    /// part (the geometry needs n ≥ 1).
    pub fn new(z: Vec<Complex64>, last: Complex64) -> Result<Self> {
        if z.is_empty() {
            return Err(Error::precondition(
                "SiegelPoint needs at least one horizontal coordinate (n >= 1)",
            ));
        }
        let beta: f64 = z.iter().map(|w| w.norm_sqr()).sum();
        let rho = last.im - beta;
        if !(rho > 0.0) || !rho.is_finite() {
            return Err(Error::Domain(format!(
                "point lies outside the domain: Im zlast - |z|^2 = {rho:e} <= 0"
            )));
        }
        Ok(SiegelPoint { z, last, beta, rho })
    }

    /// Build a point from chart data (t, ρ, horizontal part).
    pub fn from_chart(z: Vec<Complex64>, t: f64, rho: f64) -> Result<Self> {
        if !(rho > 0.0) {
            return Err(Error::precondition("from_chart requires rho > 0"));
        }
        let beta: f64 = z.iter().map(|w| w.norm_sqr()).sum();
        Self::new(z, Complex64::new(t, rho + beta))
    }

    pub fn n(&self) -> usize {
        self.z.len()
    }

    pub fn horizontal(&self) -> &[Complex64] {
        &self.z
    }

    pub fn zlast(&self) -> Complex64 {
        self.last
    }

    /// t = Re z_{n+1}.
    pub fn t(&self) -> f64 {
        self.last.re
    }

    /// ρ = Im z_{n+1} - Σ |z_j|².
    pub fn rho(&self) -> f64 {
        self.rho
    }

    /// β = Σ |z_j|².
    pub fn beta(&self) -> f64 {
        self.beta
    }
}

/// A point of the unit-ball model: w ∈ C^{n+1}, |w| < 1.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "BallPointRepr", into = "BallPointRepr")]
pub struct BallPoint {
    w: Vec<Complex64>,
}

/// Wire format: {"w": [[re, im], …]}.
#[derive(Debug, Clone, Serialize, Deserialize)]
struct BallPointRepr {
    w: Vec<[f64; 2]>,
}

impl TryFrom<BallPointRepr> for BallPoint {
    type Error = Error;
    fn try_from(r: BallPointRepr) -> Result<Self> {
        BallPoint::new(r.w.iter().map(|&[re, im]| Complex64::new(re, im)).collect())
    }
}

impl From<BallPoint> for BallPointRepr {
    fn from(p: BallPoint) -> Self {
        BallPointRepr {
            w: p.w.iter().map(|w| [w.re, w.im]).collect(),
        }
    }
}

impl BallPoint {
    pub fn new(w: Vec<Complex64>) -> Result<Self> {
        if w.len() < 2 {
            return Err(Error::precondition(
                "BallPoint needs n+1 >= 2 coordinates",
            ));
        }
        let norm_sqr: f64 = w.iter().map(|c| c.norm_sqr()).sum();
        if !(norm_sqr < 1.0) {
            return Err(Error::Domain(format!(
                "point lies outside the unit ball: |w|^2 = {norm_sqr}"
            )));
        }
        Ok(BallPoint { w })
    }

    pub fn coords(&self) -> &[Complex64] {
        &self.w
    }

    pub fn norm_sqr(&self) -> f64 {
        self.w.iter().map(|c| c.norm_sqr()).sum()
    }
}

/// Cayley map from the ball model to the Siegel model.
pub fn cayley(w: &BallPoint) -> Result<SiegelPoint> {
    let m = w.coords().len();
    let w_last = w.coords()[m - 1];
    let denom = Complex64::new(1.0, 0.0) - w_last;
    // |w_{n+1}| < 1 keeps the denominator away from 0.
    let i = Complex64::new(0.0, 1.0);
    let z: Vec<Complex64> = w.coords()[..m - 1].iter().map(|&wj| i * wj / denom).collect();
    let last = i * (Complex64::new(1.0, 0.0) + w_last) / denom;
    SiegelPoint::new(z, last)
}

/// Inverse Cayley map, Siegel model back to the ball.
pub fn cayley_inverse(z: &SiegelPoint) -> Result<BallPoint> {
    let i = Complex64::new(0.0, 1.0);
    let w_last = (z.zlast() - i) / (z.zlast() + i);
    let factor = -i * (Complex64::new(1.0, 0.0) - w_last);
    let mut w: Vec<Complex64> = z.horizontal().iter().map(|&zj| factor * zj).collect();
    w.push(w_last);
    BallPoint::new(w)
}

/// A permutation of {0, …, n-1}, stored as its image table.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Permutation {
    images: Vec<usize>,
}

impl TryFrom<Vec<usize>> for Permutation {
    type Error = Error;
    fn try_from(images: Vec<usize>) -> Result<Self> {
        Permutation::new(images)
    }
}

impl From<Permutation> for Vec<usize> {
    fn from(p: Permutation) -> Self {
        p.images
    }
}

impl Permutation {
    pub fn new(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &i in &images {
            if i >= n || seen[i] {
                return Err(Error::precondition(
                    "permutation table must be a bijection of 0..n",
                ));
            }
            seen[i] = true;
        }
        Ok(Permutation { images })
    }

    pub fn identity(n: usize) -> Self {
        Permutation {
            images: (0..n).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.images.len()
    }

    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    pub fn apply_index(&self, i: usize) -> usize {
        self.images[i]
    }

    /// Reindex a coordinate vector: out[σ(i)] = v[i].
    pub fn permute<T: Copy + Default>(&self, v: &[T]) -> Vec<T> {
        debug_assert_eq!(v.len(), self.images.len());
        let mut out = vec![T::default(); v.len()];
        for (i, &x) in v.iter().enumerate() {
            out[self.images[i]] = x;
        }
        out
    }

    /// Composition acting left-to-right on points: (self ∘ other)(i) =
    /// self(other(i)), matching `permute(self, permute(other, v))`.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        debug_assert_eq!(self.len(), other.len());
        Permutation {
            images: (0..self.len()).map(|i| self.images[other.images[i]]).collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0usize; self.images.len()];
        for (i, &j) in self.images.iter().enumerate() {
            images[j] = i;
        }
        Permutation { images }
    }

    /// Uniform random permutation (Fisher–Yates).
    pub fn random<R: rand::Rng>(n: usize, rng: &mut R) -> Self {
        let mut images: Vec<usize> = (0..n).collect();
        for i in (1..n).rev() {
            let j = rng.gen_range(0..=i);
            images.swap(i, j);
        }
        Permutation { images }
    }
}

/// An element (σ; a, b, c, d) of the discrete group: a permutation of the
/// horizontal coordinates and an integer matrix with ad - bc = 1.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "GroupElementRepr", into = "GroupElementRepr")]
pub struct GroupElement {
    pub sigma: Permutation,
    pub a: i64,
    pub b: i64,
    pub c: i64,
    pub d: i64,
}

/// Wire format: {"sigma": [0-based image table], "abcd": [a, b, c, d]}.
#[derive(Debug, Clone, Serialize, Deserialize)]
struct GroupElementRepr {
    sigma: Vec<usize>,
    abcd: [i64; 4],
}

impl TryFrom<GroupElementRepr> for GroupElement {
    type Error = Error;
    fn try_from(r: GroupElementRepr) -> Result<Self> {
        GroupElement::new(Permutation::new(r.sigma)?, r.abcd[0], r.abcd[1], r.abcd[2], r.abcd[3])
    }
}

impl From<GroupElement> for GroupElementRepr {
    fn from(g: GroupElement) -> Self {
        GroupElementRepr {
            sigma: g.sigma.into(),
            abcd: [g.a, g.b, g.c, g.d],
        }
    }
}

impl GroupElement {
    pub fn new(sigma: Permutation, a: i64, b: i64, c: i64, d: i64) -> Result<Self> {
        if a.checked_mul(d)
            .zip(b.checked_mul(c))
            .and_then(|(ad, bc)| ad.checked_sub(bc))
            != Some(1)
        {
            return Err(Error::precondition(
                "group element requires ad - bc = 1 (within i64 range)",
            ));
        }
        Ok(GroupElement { sigma, a, b, c, d })
    }

    pub fn identity(n: usize) -> Self {
        GroupElement {
            sigma: Permutation::identity(n),
            a: 1,
            b: 0,
            c: 0,
            d: 1,
        }
    }

    /// (σ; a,b,c,d)^{-1} = (σ^{-1}; d, -b, -c, a).
    pub fn inverse(&self) -> GroupElement {
        GroupElement {
            sigma: self.sigma.inverse(),
            a: self.d,
            b: -self.b,
            c: -self.c,
            d: self.a,
        }
    }

    /// Group multiplication: (σ₁; M₁)(σ₂; M₂) = (σ₁∘σ₂; M₁M₂), so that
    /// `act(g.compose(h), Z) = act(g, act(h, Z))`.
    pub fn compose(&self, other: &GroupElement) -> Result<GroupElement> {
        let mul = |x: i64, y: i64| -> Result<i64> {
            x.checked_mul(y)
                .ok_or_else(|| Error::precondition("group composition overflows i64"))
        };
        let add = |x: i64, y: i64| -> Result<i64> {
            x.checked_add(y)
                .ok_or_else(|| Error::precondition("group composition overflows i64"))
        };
        GroupElement::new(
            self.sigma.compose(&other.sigma),
            add(mul(self.a, other.a)?, mul(self.b, other.c)?)?,
            add(mul(self.a, other.b)?, mul(self.b, other.d)?)?,
            add(mul(self.c, other.a)?, mul(self.d, other.c)?)?,
            add(mul(self.c, other.b)?, mul(self.d, other.d)?)?,
        )
    }

    /// The Möbius denominator c z_{n+1} + d at a point.
    pub fn denominator(&self, z: &SiegelPoint) -> Complex64 {
        self.c as f64 * z.zlast() + self.d as f64
    }

    /// Random element: a bounded random walk in the generators
    /// (1,1;0,1), (1,-1;0,1), (0,-1;1,0) together with a uniform σ. Entries
    /// stay modest for `steps` ~ 10, which is what the invariance tests
    /// need.
    pub fn random_walk<R: rand::Rng>(n: usize, steps: usize, rng: &mut R) -> Self {
        let (mut a, mut b, mut c, mut d) = (1i64, 0i64, 0i64, 1i64);
        for _ in 0..steps {
            match rng.gen_range(0..3u8) {
                0 => {
                    // Right-multiply by (1, 1; 0, 1).
                    b += a;
                    d += c;
                }
                1 => {
                    // Right-multiply by (1, -1; 0, 1).
                    b -= a;
                    d -= c;
                }
                _ => {
                    // Right-multiply by (0, -1; 1, 0).
                    let (na, nb) = (b, -a);
                    let (nc, nd) = (d, -c);
                    a = na;
                    b = nb;
                    c = nc;
                    d = nd;
                }
            }
        }
        GroupElement {
            sigma: Permutation::random(n, rng),
            a,
            b,
            c,
            d,
        }
    }
}

/// Apply a group element to an interior point.
pub fn act(g: &GroupElement, z: &SiegelPoint) -> Result<SiegelPoint> {
    if g.sigma.len() != z.n() {
        return Err(Error::precondition(
            "group element and point have different horizontal dimensions",
        ));
    }
    let denom = g.denominator(z);
    if denom.norm_sqr() == 0.0 {
        return Err(Error::Domain(
            "degenerate Möbius denominator c z_{n+1} + d = 0".into(),
        ));
    }
    let permuted = g.sigma.permute(z.horizontal());
    let new_z: Vec<Complex64> = permuted.iter().map(|&w| w / denom).collect();
    let new_last = (g.a as f64 * z.zlast() + g.b as f64) / denom;
    SiegelPoint::new(new_z, new_last)
}

/// Möbius action on the real boundary axis, x ↦ (ax+b)/(cx+d), together
/// with the derivative factor 1/(cx+d)². Errors on the pole cx + d = 0.
pub fn act_boundary(g: &GroupElement, x: f64) -> Result<(f64, f64)> {
    let denom = g.c as f64 * x + g.d as f64;
    if denom == 0.0 {
        return Err(Error::Pole(format!(
            "boundary point x = {x} is the pole of this element"
        )));
    }
    let image = (g.a as f64 * x + g.b as f64) / denom;
    let derivative = 1.0 / (denom * denom);
    Ok((image, derivative))
}

/// The two invariant coordinates of an ordered point pair,
///
/// ```text
/// u = |z_{n+1} - z'_{n+1}|² / (4 ρ ρ'),    v = β β' / (ρ ρ'),
/// ```
///
/// where |z_{n+1} - z'_{n+1}|² = (t - t')² + (ρ + β - ρ' - β')². Both are
/// unchanged when the same group element is applied to both points.
pub fn pair_invariants_uv(z: &SiegelPoint, zp: &SiegelPoint) -> (f64, f64) {
    let dt = z.t() - zp.t();
    let dh = (z.rho() + z.beta()) - (zp.rho() + zp.beta());
    let u = (dt * dt + dh * dh) / (4.0 * z.rho() * zp.rho());
    let v = (z.beta() * zp.beta()) / (z.rho() * zp.rho());
    (u, v)
}

/// The rescaled pair coordinates fed to the radial kernels,
///
/// ```text
/// x = u ρ' / (ρ' + β'),    y = β / ρ,
/// ```
///
/// also invariant as an ordered pair.
pub fn pair_invariants_xy(z: &SiegelPoint, zp: &SiegelPoint) -> (f64, f64) {
    let (u, _) = pair_invariants_uv(z, zp);
    let x = u * zp.rho() / (zp.rho() + zp.beta());
    let y = z.beta() / z.rho();
    (x, y)
}

/// Gauge (Cygan-type) distance field anchored at the first point:
///
/// ```text
/// d*(Z, Z') = log [ ρ(Z)^{-1/2} | |z - z'|² + ρ(Z') + i (t - t' + 2 Im Σ_j z_j conj(z'_j)) |^{1/2} ].
/// ```
///
/// Note the asymmetry — ρ of the first argument normalizes outside, ρ of
/// the second enters the gauge bracket. As a function of its SECOND
/// argument this field is annihilated by the invariant Laplacian; as a
/// function of the first it is not. `d*(Z, Z) = 0` exactly.
pub fn cygan_distance(z: &SiegelPoint, zp: &SiegelPoint) -> Result<f64> {
    if z.n() != zp.n() {
        return Err(Error::precondition(
            "gauge distance needs points of equal dimension",
        ));
    }
    let diff_sq: f64 = z
        .horizontal()
        .iter()
        .zip(zp.horizontal())
        .map(|(&zj, &zpj)| (zj - zpj).norm_sqr())
        .sum();
    let cross: f64 = z
        .horizontal()
        .iter()
        .zip(zp.horizontal())
        .map(|(&zj, &zpj)| (zj * zpj.conj()).im)
        .sum();
    let gauge = Complex64::new(diff_sq + zp.rho(), z.t() - zp.t() + 2.0 * cross);
    Ok(0.5 * (gauge.norm() / z.rho()).ln())
}

/// Boundary Heisenberg coordinates (ζ, v) ∈ C^n × R with the group law
///
/// ```text
/// (ζ, v) · (ζ', v') = (ζ + ζ', v + v' + 2 Im Σ_j ζ_j conj(ζ'_j)),
/// ```
///
/// the convention under which left translation preserves the gauge bracket
/// of [`cygan_distance`].
#[derive(Debug, Clone, PartialEq)]
pub struct HeisenbergElement {
    pub zeta: Vec<Complex64>,
    pub v: f64,
}

impl HeisenbergElement {
    pub fn new(zeta: Vec<Complex64>, v: f64) -> Self {
        HeisenbergElement { zeta, v }
    }

    /// Left translation of an interior point: the horizontal part shifts,
    /// t picks up the symplectic correction, and ρ is untouched.
    pub fn translate(&self, z: &SiegelPoint) -> Result<SiegelPoint> {
        if self.zeta.len() != z.n() {
            return Err(Error::precondition(
                "Heisenberg element and point have different dimensions",
            ));
        }
        let new_z: Vec<Complex64> = self
            .zeta
            .iter()
            .zip(z.horizontal())
            .map(|(&w, &zj)| w + zj)
            .collect();
        let cross: f64 = self
            .zeta
            .iter()
            .zip(z.horizontal())
            .map(|(&w, &zj)| (w * zj.conj()).im)
            .sum();
        let t = self.v + z.t() + 2.0 * cross;
        SiegelPoint::from_chart(new_z, t, z.rho())
    }
}

/// Heisenberg group multiplication (module docs of [`HeisenbergElement`]).
pub fn heisenberg_mul(g: &HeisenbergElement, h: &HeisenbergElement) -> Result<HeisenbergElement> {
    if g.zeta.len() != h.zeta.len() {
        return Err(Error::precondition(
            "Heisenberg product needs equal dimensions",
        ));
    }
    let zeta: Vec<Complex64> = g.zeta.iter().zip(&h.zeta).map(|(&a, &b)| a + b).collect();
    let cross: f64 = g.zeta.iter().zip(&h.zeta).map(|(&a, &b)| (a * b.conj()).im).sum();
    Ok(HeisenbergElement::new(zeta, g.v + h.v + 2.0 * cross))
}

/// Density of the invariant volume in the aggregate chart (t, ρ, β-polar):
/// ρ^{-(n+2)} against dt dρ Π dβ_j dθ_j-type measure. Exposed because the
/// truncated-volume integrand below is exactly this density integrated in
/// closed form over everything but (ρ about its cusp window).
pub fn invariant_density(n: usize, rho: f64) -> Result<f64> {
    if !(rho > 0.0) {
        return Err(Error::precondition("invariant_density requires rho > 0"));
    }
    Ok(rho.powi(-(n as i32 + 2)))
}

/// Truncated volume of the cusp neighbourhood:
///
/// ```text
/// I(ε) = ½ ∫_ε^y (y - t)^{n-1} t^{-(n+2)} dt,
/// ```
///
/// which blows up like ε^{-(n+1)} as ε → 0, so I(ε)/I(2ε) → 2^{n+1} — the
/// scale-invariant signature the tests check. Evaluated after the
/// substitution t = ε e^u, which turns the cusp-end concentration into a
/// plain exponential decay.
pub fn truncated_volume_integral(
    n: usize,
    eps: f64,
    y_cap: f64,
    spec: &QuadratureSpec,
) -> Result<f64> {
    if n == 0 {
        return Err(Error::precondition("truncated volume needs n >= 1"));
    }
    if !(eps > 0.0 && y_cap > eps) {
        return Err(Error::precondition(
            "truncated volume needs 0 < eps < y_cap",
        ));
    }
    let ni = n as i32;
    let (value, _err) = adaptive_finite(
        |u| {
            let t = eps * u.exp();
            Complex64::new(0.5 * (y_cap - t).powi(ni - 1) * t.powi(-(ni + 1)), 0.0)
        },
        0.0,
        (y_cap / eps).ln(),
        spec,
    )?;
    Ok(value.re)
}
