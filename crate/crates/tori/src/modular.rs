//! Moduli in the upper half plane and their reduction under the modular
//! group.
//!
//! The canonical fundamental domain used throughout the crate is
//! `-1/2 < re(tau) <= 1/2`, `|tau| >= 1`, with `re(tau) >= 0` required on
//! the unit-circle arc. Reduction returns the integer matrix that maps
//! the input onto its representative, so every result is certified by an
//! exact group element rather than by the floating-point path that found
//! it. The j-invariant provides a second, independent certificate.

use num_complex::Complex64;
use std::f64::consts::PI;

use crate::error::{Error, Result};

/// Absolute slack used when deciding membership of the boundary arc.
pub const BOUNDARY_TOL: f64 = 1e-12;

/// Absolute tolerance to which a reduction witness must reproduce the
/// reduced point when applied to the original input.
pub const WITNESS_TOL: f64 = 1e-12;

/// Default tolerance for deciding equivalence of two reduced points.
pub const DEFAULT_EQUIV_TOL: f64 = 1e-9;

const MAX_REDUCTION_STEPS: usize = 10_000;

/// A point of the upper half plane. `im > 0` is enforced at
/// construction and preserved by every operation in this module.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tau {
    re: f64,
    im: f64,
}

impl Tau {
    pub fn new(re: f64, im: f64) -> Result<Self> {
        if !re.is_finite() || !im.is_finite() {
            return Err(Error::domain(format!("tau must be finite, got {re} + {im}i")));
        }
        if im <= 0.0 {
            return Err(Error::domain(format!("tau must lie in the upper half plane, got im = {im}")));
        }
        Ok(Self::raw(re, im))
    }

    /// Internal constructor for values already known to be valid. Folds
    /// -0.0 to +0.0 so equal moduli print identically.
    pub(crate) fn raw(re: f64, im: f64) -> Self {
        let re = if re == 0.0 { 0.0 } else { re };
        debug_assert!(im > 0.0, "raw tau with im = {im}");
        Tau { re, im }
    }

    pub fn re(&self) -> f64 {
        self.re
    }

    pub fn im(&self) -> f64 {
        self.im
    }

    pub fn norm_sqr(&self) -> f64 {
        self.re * self.re + self.im * self.im
    }

    pub fn to_complex(&self) -> Complex64 {
        Complex64::new(self.re, self.im)
    }
}

/// An element of SL(2, Z): integer entries with `a d - b c = 1` exactly.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Unimodular {
    a: i64,
    b: i64,
    c: i64,
    d: i64,
}

impl Unimodular {
    pub const IDENTITY: Unimodular = Unimodular { a: 1, b: 0, c: 0, d: 1 };
    /// The inversion tau -> -1/tau.
    pub const S: Unimodular = Unimodular { a: 0, b: -1, c: 1, d: 0 };
    /// The translation tau -> tau + 1.
    pub const T: Unimodular = Unimodular { a: 1, b: 1, c: 0, d: 1 };
    pub const T_INV: Unimodular = Unimodular { a: 1, b: -1, c: 0, d: 1 };

    pub fn new(a: i64, b: i64, c: i64, d: i64) -> Result<Self> {
        let det = a as i128 * d as i128 - b as i128 * c as i128;
        if det != 1 {
            return Err(Error::domain(format!(
                "matrix [{a}, {b}; {c}, {d}] has determinant {det}, expected 1"
            )));
        }
        Ok(Unimodular { a, b, c, d })
    }

    fn translation(k: i64) -> Unimodular {
        Unimodular { a: 1, b: k, c: 0, d: 1 }
    }

    pub fn entries(&self) -> [i64; 4] {
        [self.a, self.b, self.c, self.d]
    }

    /// Matrix product `self * rhs`, i.e. the element acting as `self`
    /// after `rhs`. Checked arithmetic; entries never wrap silently.
    pub fn compose(&self, rhs: &Unimodular) -> Result<Unimodular> {
        let mul = |x: i64, y: i64| x.checked_mul(y).ok_or(Error::Overflow("unimodular composition"));
        let add = |x: i64, y: i64| x.checked_add(y).ok_or(Error::Overflow("unimodular composition"));
        Ok(Unimodular {
            a: add(mul(self.a, rhs.a)?, mul(self.b, rhs.c)?)?,
            b: add(mul(self.a, rhs.b)?, mul(self.b, rhs.d)?)?,
            c: add(mul(self.c, rhs.a)?, mul(self.d, rhs.c)?)?,
            d: add(mul(self.c, rhs.b)?, mul(self.d, rhs.d)?)?,
        })
    }

    pub fn inverse(&self) -> Result<Unimodular> {
        let neg = |x: i64| x.checked_neg().ok_or(Error::Overflow("unimodular inverse"));
        Ok(Unimodular { a: self.d, b: neg(self.b)?, c: neg(self.c)?, d: self.a })
    }
}

/// Moebius action `(a tau + b) / (c tau + d)`. The determinant keeps the
/// image in the upper half plane.
pub fn mobius_apply(m: &Unimodular, t: Tau) -> Tau {
    let (a, b, c, d) = (m.a as f64, m.b as f64, m.c as f64, m.d as f64);
    let num = (a * t.re + b, a * t.im);
    let den = (c * t.re + d, c * t.im);
    let n2 = den.0 * den.0 + den.1 * den.1;
    Tau::raw(
        (num.0 * den.0 + num.1 * den.1) / n2,
        (num.1 * den.0 - num.0 * den.1) / n2,
    )
}

/// A modulus moved into the fundamental domain together with the group
/// element that did it: `mobius_apply(witness, input) = tau` within
/// [`WITNESS_TOL`], verified at construction.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReducedTau {
    tau: Tau,
    witness: Unimodular,
}

impl ReducedTau {
    pub fn tau(&self) -> Tau {
        self.tau
    }

    pub fn witness(&self) -> Unimodular {
        self.witness
    }
}

/// True when `t` is the canonical representative of its orbit.
pub fn in_fundamental_domain(t: &Tau) -> bool {
    let n2 = t.norm_sqr();
    t.re > -0.5
        && t.re <= 0.5
        && n2 >= 1.0 - BOUNDARY_TOL
        && (n2 > 1.0 + BOUNDARY_TOL || t.re >= 0.0)
}

fn apply_s(t: Tau) -> Tau {
    let n2 = t.norm_sqr();
    Tau::raw(-t.re / n2, t.im / n2)
}

/// Reduce `t` into the fundamental domain, returning the representative
/// and its witness.
pub fn reduce_to_fundamental(t: Tau) -> Result<ReducedTau> {
    let input = t;
    let mut cur = t;
    let mut witness = Unimodular::IDENTITY;
    for _ in 0..MAX_REDUCTION_STEPS {
        // Translate re into (-1/2, 1/2].
        let mut shift = (cur.re + 0.5).floor();
        let mut re = cur.re - shift;
        if re <= -0.5 {
            re += 1.0;
            shift -= 1.0;
        }
        if shift != 0.0 {
            if shift.abs() >= 9.0e18 {
                return Err(Error::ReductionFailed(format!(
                    "translation by {shift} exceeds the witness integer range"
                )));
            }
            witness = Unimodular::translation(-(shift as i64)).compose(&witness)?;
            cur = Tau::raw(re, cur.im);
        }
        let n2 = cur.norm_sqr();
        if n2 < 1.0 - BOUNDARY_TOL {
            cur = apply_s(cur);
            witness = Unimodular::S.compose(&witness)?;
            continue;
        }
        if n2 <= 1.0 + BOUNDARY_TOL && cur.re < 0.0 {
            // On the arc the inversion mirrors re to -re; one more pass
            // leaves the point on the canonical half.
            cur = apply_s(cur);
            witness = Unimodular::S.compose(&witness)?;
            continue;
        }
        let back = mobius_apply(&witness, input);
        if (back.re - cur.re).abs() > WITNESS_TOL || (back.im - cur.im).abs() > WITNESS_TOL {
            return Err(Error::ReductionFailed(format!(
                "witness reproduces ({}, {}) instead of ({}, {})",
                back.re, back.im, cur.re, cur.im
            )));
        }
        return Ok(ReducedTau { tau: cur, witness });
    }
    Err(Error::ReductionFailed(format!(
        "iteration cap {MAX_REDUCTION_STEPS} exceeded for input ({}, {})",
        input.re, input.im
    )))
}

/// Decide whether `t1` and `t2` lie on the same modular orbit. On
/// success the returned matrix maps `t1` onto `t2`.
///
/// Both inputs are reduced and compared componentwise within `tol`.
/// Representatives can straddle a boundary seam by a hair, so a fixed
/// set of boundary identifications is also tried before giving up.
pub fn is_equivalent(t1: Tau, t2: Tau, tol: f64) -> Result<Option<Unimodular>> {
    let r1 = reduce_to_fundamental(t1)?;
    let r2 = reduce_to_fundamental(t2)?;
    let mut candidates = vec![
        Unimodular::IDENTITY,
        Unimodular::T,
        Unimodular::T_INV,
        Unimodular::S,
    ];
    for (m1, m2) in [
        (Unimodular::T, Unimodular::S),
        (Unimodular::T_INV, Unimodular::S),
        (Unimodular::S, Unimodular::T),
        (Unimodular::S, Unimodular::T_INV),
    ] {
        candidates.push(m1.compose(&m2)?);
    }
    for cand in candidates {
        let moved = mobius_apply(&cand, r1.tau);
        if (moved.re - r2.tau.re).abs() < tol && (moved.im - r2.tau.im).abs() < tol {
            let witness = r2.witness.inverse()?.compose(&cand)?.compose(&r1.witness)?;
            return Ok(Some(witness));
        }
    }
    Ok(None)
}

/// Series order for the Eisenstein and eta products. The reduced domain
/// has `|q| <= exp(-pi sqrt(3)) < 0.0044`, so 50 terms leave a tail far
/// below every tolerance in the crate.
const SERIES_TERMS: u32 = 50;

fn divisor_power_sum(n: u32, k: u32) -> f64 {
    let mut acc = 0u64;
    for d in 1..=n as u64 {
        if (n as u64).is_multiple_of(d) {
            acc += d.pow(k);
        }
    }
    acc as f64
}

fn nome(t: Tau) -> Complex64 {
    (Complex64::new(0.0, 2.0 * PI) * t.to_complex()).exp()
}

fn eisenstein_e4(q: Complex64) -> Complex64 {
    let mut sum = Complex64::new(1.0, 0.0);
    let mut qn = Complex64::new(1.0, 0.0);
    for n in 1..=SERIES_TERMS {
        qn *= q;
        sum += 240.0 * divisor_power_sum(n, 3) * qn;
    }
    sum
}

#[cfg(test)]
fn eisenstein_e6(q: Complex64) -> Complex64 {
    let mut sum = Complex64::new(1.0, 0.0);
    let mut qn = Complex64::new(1.0, 0.0);
    for n in 1..=SERIES_TERMS {
        qn *= q;
        sum -= 504.0 * divisor_power_sum(n, 5) * qn;
    }
    sum
}

fn discriminant(q: Complex64) -> Complex64 {
    // q * prod (1 - q^n)^24, the eta-product form of the discriminant.
    let mut prod = Complex64::new(1.0, 0.0);
    let mut qn = Complex64::new(1.0, 0.0);
    for _ in 1..=SERIES_TERMS {
        qn *= q;
        prod *= Complex64::new(1.0, 0.0) - qn;
    }
    q * prod.powi(24)
}

/// The modular j-invariant, evaluated after reduction so the series
/// argument always satisfies `im >= sqrt(3)/2`.
pub fn j_invariant(t: Tau) -> Result<Complex64> {
    let reduced = reduce_to_fundamental(t)?;
    let q = nome(reduced.tau());
    let e4 = eisenstein_e4(q);
    Ok(e4 * e4 * e4 / discriminant(q))
}
