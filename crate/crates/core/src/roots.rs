//! Certified real root isolation by bisection with exact sign evaluation.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::poly::{sign_changes_at, sign_changes_at_infinity, IntPolynomial};

/// Hard cap on bisection steps.
pub const MAX_BISECTIONS: usize = 200;

/// A closed interval `[lo, hi]` known to contain a root.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Bracket {
    pub lo: BigRational,
    pub hi: BigRational,
    pub iterations: usize,
}

impl Bracket {
    pub fn width(&self) -> BigRational {
        &self.hi - &self.lo
    }

    pub fn midpoint(&self) -> BigRational {
        (&self.lo + &self.hi) / BigRational::from_integer(BigInt::from(2))
    }

    pub fn value(&self) -> f64 {
        self.midpoint().to_f64().unwrap_or(f64::NAN)
    }
}

pub(crate) fn rational(x: f64) -> Result<BigRational> {
    if !(x > 0.0 && x.is_finite()) {
        return Err(Error::InvalidTolerance(x));
    }
    BigRational::from_float(x).ok_or(Error::InvalidTolerance(x))
}

fn half() -> BigRational {
    BigRational::new(BigInt::one(), BigInt::from(2))
}

/// Bisects `p` on `[lo, hi]`, which must carry opposite strict signs,
/// until the width is at most `tol` or the step cap is hit. Landing
/// exactly on a root collapses the bracket to that point.
pub fn bisect(p: &IntPolynomial, lo: BigRational, hi: BigRational, tol: f64) -> Result<Bracket> {
    let tol = rational(tol)?;
    let s_lo = p.sign_at(&lo);
    let s_hi = p.sign_at(&hi);
    if s_lo == Ordering::Equal {
        return Ok(Bracket { hi: lo.clone(), lo, iterations: 0 });
    }
    if s_hi == Ordering::Equal {
        return Ok(Bracket { lo: hi.clone(), hi, iterations: 0 });
    }
    assert!(s_lo != s_hi, "bisection needs a sign change on the bracket");
    let mut b = Bracket { lo, hi, iterations: 0 };
    while b.width() > tol && b.iterations < MAX_BISECTIONS {
        let mid = b.midpoint();
        b.iterations += 1;
        match p.sign_at(&mid) {
            Ordering::Equal => {
                return Ok(Bracket { lo: mid.clone(), hi: mid, iterations: b.iterations });
            }
            s if s == s_lo => b.lo = mid,
            _ => b.hi = mid,
        }
    }
    Ok(b)
}

/// `1 + max |a_i / a_d|`; every complex root has modulus below it.
pub fn cauchy_bound(p: &IntPolynomial) -> Result<BigRational> {
    let d = p.degree().ok_or(Error::ZeroPolynomial)?;
    let lead = p.leading().expect("nonzero").abs();
    let max = p.coeffs()[..d].iter().map(|c| c.abs()).max().unwrap_or_default();
    Ok(BigRational::one() + BigRational::new(max, lead))
}

/// Bracket around the largest real root of `p`, or `None` when `p` has no
/// real root. Uses Sturm counts, so even-multiplicity roots are found.
pub fn largest_real_root(p: &IntPolynomial, tol: f64) -> Result<Option<Bracket>> {
    let tol = rational(tol)?;
    if p.degree().ok_or(Error::ZeroPolynomial)? == 0 {
        return Ok(None);
    }
    let seq = p.sturm_sequence()?;
    let at_inf = sign_changes_at_infinity(&seq);
    // sign changes at a root equal those just to its right, so `above(x)`
    // counts the roots strictly greater than `x`
    let above = |x: &BigRational| sign_changes_at(&seq, x) - at_inf;
    let bound = cauchy_bound(p)?;
    let mut lo = -bound.clone();
    let mut hi = bound;
    if above(&lo) == 0 {
        return Ok(None);
    }
    // invariant: some root lies above lo, none above hi
    let mut iterations = 0;
    while &hi - &lo > tol && iterations < MAX_BISECTIONS {
        iterations += 1;
        let mid = (&lo + &hi) * half();
        if above(&mid) > 0 {
            lo = mid;
        } else if p.sign_at(&mid).is_eq() {
            return Ok(Some(Bracket { lo: mid.clone(), hi: mid, iterations }));
        } else {
            hi = mid;
        }
    }
    Ok(Some(Bracket { lo, hi, iterations }))
}

/// Number of distinct real roots in `(a, b]`, for `a` not a root.
pub fn count_roots_in(p: &IntPolynomial, a: &BigRational, b: &BigRational) -> Result<usize> {
    let seq = p.sturm_sequence()?;
    Ok(sign_changes_at(&seq, a).saturating_sub(sign_changes_at(&seq, b)))
}

/// Whether the signs at the bracket ends differ, or the bracket is a
/// single exact root.
pub fn certifies(p: &IntPolynomial, b: &Bracket) -> bool {
    if b.lo == b.hi {
        return p.eval(&b.lo).is_zero();
    }
    let (s, t) = (p.sign_at(&b.lo), p.sign_at(&b.hi));
    s != Ordering::Equal && t != Ordering::Equal && s != t
}
