//! Truncated automorphic series over the integer group: the coset-sum
//! Eisenstein series, full-group kernel sums, their Fourier data, boundary
//! series, and the radial kernels they are built from.
//!
//! Two truncation schemes are used, both driven by [`Truncation`]:
//!
//! * coset sums enumerate coprime pairs (c, d) with max(|c|, |d|) ≤ N and
//!   carry the ½ factor that accounts for (c, d) ↔ (−c, −d);
//! * full-group sums enumerate 2×2 integer blocks with ad − bc = 1 and all
//!   entries bounded by N, optionally crossed with the full permutation
//!   block (which multiplies any σ-independent sum by exactly n!).
//!
//! The box bounded by max entry is closed under matrix inversion
//! (a, b, c, d) ↦ (d, −b, −c, a), which the scattering symmetry and
//! reindexing tests rely on.
//!
//! Summation is deterministic regardless of thread count: the (c, d) box is
//! partitioned into fixed stripes, each stripe is compensated-summed in a
//! fixed order, and stripe totals are merged in index order.

pub mod boundary;
pub mod fourier;
pub mod kernel;
pub mod poincare;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{act, GroupElement, Permutation, SiegelPoint};
use crate::specfun::dirichlet::gcd;

/// Truncation of an infinite group sum: entry bound for the 2×2 blocks
/// (and for coprime-pair boxes), plus whether full-group sums run over the
/// whole permutation block or just the identity permutation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Truncation {
    pub box_n: i64,
    pub include_permutations: bool,
}

impl Truncation {
    pub fn new(box_n: i64) -> Result<Self> {
        let tr = Truncation {
            box_n,
            include_permutations: false,
        };
        tr.validate()?;
        Ok(tr)
    }

    pub fn with_permutations(mut self, include: bool) -> Self {
        self.include_permutations = include;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.box_n < 1 {
            return Err(Error::precondition("truncation box must be at least 1"));
        }
        Ok(())
    }
}

impl Default for Truncation {
    fn default() -> Self {
        Truncation {
            box_n: 20,
            include_permutations: false,
        }
    }
}

/// Compensated (Kahan) accumulator over complex terms.
#[derive(Debug, Default, Clone, Copy)]
pub(crate) struct KahanSum {
    sum: Complex64,
    comp: Complex64,
}

impl KahanSum {
    pub(crate) fn add(&mut self, term: Complex64) {
        let y = term - self.comp;
        let t = self.sum + y;
        self.comp = (t - self.sum) - y;
        self.sum = t;
    }

    pub(crate) fn value(&self) -> Complex64 {
        self.sum
    }
}

/// exp(e · ln base) for positive real base; NaN-free by construction.
pub(crate) fn cpow(base: f64, e: Complex64) -> Result<Complex64> {
    if base > 0.0 && base.is_finite() {
        Ok((e * base.ln()).exp())
    } else {
        Err(Error::Domain(format!(
            "complex power needs a positive finite base, got {base}"
        )))
    }
}

/// All (c, d) with max(|c|, |d|) ≤ N and gcd(|c|, |d|) = 1, in the fixed
/// order c ascending then d ascending.
pub fn coprime_pairs(box_n: i64) -> Result<Vec<(i64, i64)>> {
    Truncation::new(box_n)?;
    let mut out = Vec::new();
    for c in -box_n..=box_n {
        for d in -box_n..=box_n {
            if gcd(c.unsigned_abs(), d.unsigned_abs()) == 1 {
                out.push((c, d));
            }
        }
    }
    Ok(out)
}

/// Extended Euclid: returns (g, x, y) with a·x + b·y = g = gcd(a, b) ≥ 0.
fn ext_gcd(a: i64, b: i64) -> (i64, i64, i64) {
    if b == 0 {
        (a.abs(), a.signum(), 0)
    } else {
        let (g, x, y) = ext_gcd(b, a % b);
        (g, y, x - (a / b) * y)
    }
}

fn div_floor(a: i64, b: i64) -> i64 {
    let q = a / b;
    if a % b != 0 && (a < 0) != (b < 0) {
        q - 1
    } else {
        q
    }
}

fn div_ceil(a: i64, b: i64) -> i64 {
    let q = a / b;
    if a % b != 0 && (a < 0) == (b < 0) {
        q + 1
    } else {
        q
    }
}

/// All k with |offset + k·step| ≤ box_n, as an inclusive range (lo > hi
/// means empty). step ≠ 0.
fn k_range(offset: i64, step: i64, box_n: i64) -> (i64, i64) {
    let lo_num = -box_n - offset;
    let hi_num = box_n - offset;
    if step > 0 {
        (div_ceil(lo_num, step), div_floor(hi_num, step))
    } else {
        (div_ceil(hi_num, step), div_floor(lo_num, step))
    }
}

/// All integer blocks (a, b, c, d) with ad − bc = 1 and max entry ≤ N, in
/// a fixed deterministic order: (c, d) box order, then the translation
/// index k ascending along each solution family (a, b) = (a₀+kc, b₀+kd).
pub fn sl2_box(box_n: i64) -> Result<Vec<(i64, i64, i64, i64)>> {
    Truncation::new(box_n)?;
    let mut out = Vec::new();
    for c in -box_n..=box_n {
        for d in -box_n..=box_n {
            let (g, x, y) = ext_gcd(c, d);
            if g != 1 {
                continue;
            }
            // a·d − b·c = 1 at (a₀, b₀) = (y, −x); family (a₀+kc, b₀+kd).
            let (a0, b0) = (y, -x);
            let (lo, hi) = match (c != 0, d != 0) {
                (true, true) => {
                    let (l1, h1) = k_range(a0, c, box_n);
                    let (l2, h2) = k_range(b0, d, box_n);
                    (l1.max(l2), h1.min(h2))
                }
                (true, false) => {
                    if b0.abs() > box_n {
                        continue;
                    }
                    k_range(a0, c, box_n)
                }
                (false, true) => {
                    if a0.abs() > box_n {
                        continue;
                    }
                    k_range(b0, d, box_n)
                }
                (false, false) => unreachable!("gcd(0,0) = 0 was filtered"),
            };
            for k in lo..=hi {
                out.push((a0 + k * c, b0 + k * d, c, d));
            }
        }
    }
    Ok(out)
}

fn next_permutation(v: &mut [usize]) -> bool {
    let n = v.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

/// Every permutation of {0, …, n−1} in lexicographic order. Guarded at
/// n ≤ 8: the block grows as n!.
pub fn all_permutations(n: usize) -> Result<Vec<Permutation>> {
    if n == 0 || n > 8 {
        return Err(Error::precondition(
            "permutation enumeration supports 1 ≤ n ≤ 8 (the block grows as n!)",
        ));
    }
    let mut images: Vec<usize> = (0..n).collect();
    let mut out = vec![Permutation::new(images.clone())?];
    while next_permutation(&mut images) {
        out.push(Permutation::new(images.clone())?);
    }
    Ok(out)
}

/// The truncated group: 2×2 blocks from [`sl2_box`] crossed with the
/// permutation block (or the identity permutation alone). Deterministic
/// order: block order outer, permutation order inner.
pub fn group_elements_box(n: usize, tr: &Truncation) -> Result<Vec<GroupElement>> {
    tr.validate()?;
    let sigmas = if tr.include_permutations {
        if n > 6 {
            return Err(Error::precondition(
                "full permutation block only supported for n ≤ 6",
            ));
        }
        all_permutations(n)?
    } else {
        vec![Permutation::identity(n)]
    };
    let blocks = sl2_box(tr.box_n)?;
    let mut out = Vec::with_capacity(blocks.len() * sigmas.len());
    for (a, b, c, d) in blocks {
        for sigma in &sigmas {
            out.push(GroupElement::new(sigma.clone(), a, b, c, d)?);
        }
    }
    Ok(out)
}

fn beta_weight(beta: f64, denom_sqr: f64, mu: i32) -> Result<f64> {
    if mu == 0 {
        Ok(1.0)
    } else if beta > 0.0 {
        Ok((beta / denom_sqr).powi(mu))
    } else {
        Err(Error::Pole(
            "β-weighted series needs β > 0 when the β-exponent is nonzero".into(),
        ))
    }
}

/// Coset-sum Eisenstein series, truncated:
///
/// ```text
/// E_N(Z; s, μ) = ½ Σ_{(c,d)=1, max(|c|,|d|) ≤ N}
///                  [ρ/|c z_{n+1}+d|²]^s [β/|c z_{n+1}+d|²]^μ.
/// ```
///
/// μ is an integer exponent (0 for the plain series, 1−n for the
/// β-weighted one). Absolute convergence of the full sum holds for
/// Re(s) > n+1; the truncated sum is defined for any s.
pub fn eisenstein_partial(
    z: &SiegelPoint,
    s: Complex64,
    mu: i32,
    tr: &Truncation,
) -> Result<Complex64> {
    tr.validate()?;
    if mu != 0 && z.beta() <= 0.0 {
        return Err(Error::Pole(
            "β-weighted series needs β > 0 when the β-exponent is nonzero".into(),
        ));
    }
    let box_n = tr.box_n;
    let zl = z.zlast();
    let (rho, beta) = (z.rho(), z.beta());
    let stripes: Vec<Complex64> = (-box_n..=box_n)
        .into_par_iter()
        .map(|c| {
            let mut acc = KahanSum::default();
            for d in -box_n..=box_n {
                if gcd(c.unsigned_abs(), d.unsigned_abs()) != 1 {
                    continue;
                }
                let denom_sqr = (zl * c as f64 + d as f64).norm_sqr();
                // denom_sqr > 0: c·Im z_{n+1} ≠ 0 unless c = 0, and then d ≠ 0.
                let term = (s * (rho / denom_sqr).ln()).exp()
                    * beta_weight(beta, denom_sqr, mu).unwrap_or(f64::NAN);
                acc.add(term);
            }
            acc.value()
        })
        .collect();
    let mut total = KahanSum::default();
    for v in stripes {
        total.add(v);
    }
    let value = 0.5 * total.value();
    if !value.is_finite() {
        return Err(Error::Domain(
            "series summand evaluated to a non-finite value".into(),
        ));
    }
    Ok(value)
}

/// The same coset summand accumulated over an explicit element list:
/// Σ_γ ρ(γZ)^s β(γZ)^μ (no ½ factor). Exact reindexing identities of
/// truncated sums are tested through this form.
pub fn eisenstein_partial_over(
    elements: &[GroupElement],
    z: &SiegelPoint,
    s: Complex64,
    mu: i32,
) -> Result<Complex64> {
    let terms: Vec<Result<Complex64>> = elements
        .par_iter()
        .map(|g| {
            let w = act(g, z)?;
            let weight = beta_weight(w.beta(), 1.0, mu)?;
            Ok(cpow(w.rho(), s)? * weight)
        })
        .collect();
    let mut acc = KahanSum::default();
    for t in terms {
        acc.add(t?);
    }
    Ok(acc.value())
}
