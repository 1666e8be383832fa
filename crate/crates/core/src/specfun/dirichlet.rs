//! Arithmetic sums over residues: Ramanujan sums and the divisor-weighted
//! Dirichlet series built from them.
//!
//! ```text
//! c_q(m) = Σ_{1 ≤ a ≤ q, gcd(a,q)=1} e^{2πi a m / q}
//! ```
//!
//! is always an integer; `c_q(0) = φ(q)` and `c_1(m) = 1`. The truncated
//! Dirichlet series
//!
//! ```text
//! φ_m(s; Q) = Σ_{q ≤ Q} c_q(m) q^{-2s}
//! ```
//!
//! is the arithmetic factor multiplying every Fourier coefficient of the
//! series layer; it converges absolutely for Re s > 1 (and for m ≠ 0 well
//! beyond, since |c_q(m)| ≤ σ_1(gcd(q, m))).

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Greatest common divisor.
pub fn gcd(a: u64, b: u64) -> u64 {
    let (mut a, mut b) = (a, b);
    while b != 0 {
        let r = a % b;
        a = b;
        b = r;
    }
    a
}

/// Ramanujan sum `c_q(m)`, summed directly over the coprime residues. The
/// result is mathematically an integer; it is returned as the rounded sum
/// after checking the imaginary part cancelled.
pub fn ramanujan_sum(q: u64, m: i64) -> Result<i64> {
    if q == 0 {
        return Err(Error::precondition("ramanujan_sum requires q >= 1"));
    }
    let mut acc = Complex64::default();
    for a in 1..=q {
        if gcd(a, q) == 1 {
            let phase = 2.0 * std::f64::consts::PI * (a as f64) * (m as f64) / (q as f64);
            acc += Complex64::new(phase.cos(), phase.sin());
        }
    }
    if acc.im.abs() > 1e-6 * (1.0 + acc.re.abs()) {
        return Err(Error::Conditioning {
            what: "ramanujan_sum: imaginary part failed to cancel".into(),
            magnitude: acc.im.abs(),
        });
    }
    Ok(acc.re.round() as i64)
}

/// Truncated Dirichlet series `Σ_{q ≤ cutoff} c_q(m) q^{-2s}`.
pub fn ramanujan_phi(m: i64, s: Complex64, cutoff: u64) -> Result<Complex64> {
    if cutoff == 0 {
        return Err(Error::precondition("ramanujan_phi requires cutoff >= 1"));
    }
    let mut acc = Complex64::default();
    for q in 1..=cutoff {
        let cq = ramanujan_sum(q, m)? as f64;
        // q^{-2s} on the principal branch (q > 0 real).
        acc += cq * (-2.0 * s * (q as f64).ln()).exp();
    }
    Ok(acc)
}
