//! Laurent polynomials in one variable with integer coefficients.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::poly::IntPolynomial;

/// `sum_k coeffs[k] * x^(min_exp + k)`, stored as a single contiguous
/// window. Canonical form: no zero coefficient at either end, and the
/// zero polynomial has `min_exp == 0` and no coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct LaurentPolynomial {
    min_exp: i64,
    coeffs: Vec<BigInt>,
}

impl LaurentPolynomial {
    pub fn new<T: Into<BigInt>>(min_exp: i64, coeffs: Vec<T>) -> Self {
        let mut p = LaurentPolynomial {
            min_exp,
            coeffs: coeffs.into_iter().map(Into::into).collect(),
        };
        p.normalize();
        p
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(1, 0)
    }

    /// `c * x^exp`.
    pub fn monomial(c: impl Into<BigInt>, exp: i64) -> Self {
        Self::new(exp, vec![c.into()])
    }

    fn normalize(&mut self) {
        while self.coeffs.last().is_some_and(Zero::is_zero) {
            self.coeffs.pop();
        }
        let lead = self.coeffs.iter().take_while(|c| c.is_zero()).count();
        if lead > 0 {
            self.coeffs.drain(..lead);
            self.min_exp += lead as i64;
        }
        if self.coeffs.is_empty() {
            self.min_exp = 0;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Lowest exponent with a nonzero coefficient; 0 for the zero polynomial.
    pub fn min_exp(&self) -> i64 {
        self.min_exp
    }

    pub fn max_exp(&self) -> Option<i64> {
        (!self.is_zero()).then(|| self.min_exp + self.coeffs.len() as i64 - 1)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, exp: i64) -> BigInt {
        let k = exp - self.min_exp;
        if k < 0 {
            return BigInt::zero();
        }
        self.coeffs.get(k as usize).cloned().unwrap_or_default()
    }

    /// Multiplies by `x^m`.
    pub fn shift(&self, m: i64) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        LaurentPolynomial {
            min_exp: self.min_exp + m,
            coeffs: self.coeffs.clone(),
        }
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        Self::new(self.min_exp, self.coeffs.iter().map(|x| x * c).collect())
    }

    /// The ordinary polynomial, if no negative exponent is present.
    pub fn to_polynomial(&self) -> Option<IntPolynomial> {
        if self.is_zero() {
            return Some(IntPolynomial::zero());
        }
        if self.min_exp < 0 {
            return None;
        }
        let mut c = vec![BigInt::zero(); self.min_exp as usize];
        c.extend(self.coeffs.iter().cloned());
        Some(IntPolynomial::new(c))
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        use num_traits::ToPrimitive;
        self.coeffs
            .iter()
            .enumerate()
            .map(|(k, c)| c.to_f64().unwrap_or(f64::NAN) * x.powi((self.min_exp + k as i64) as i32))
            .sum()
    }

    fn combine(&self, rhs: &Self, f: impl Fn(BigInt, BigInt) -> BigInt) -> Self {
        if self.is_zero() && rhs.is_zero() {
            return Self::zero();
        }
        let lo = match (self.is_zero(), rhs.is_zero()) {
            (true, _) => rhs.min_exp,
            (_, true) => self.min_exp,
            _ => self.min_exp.min(rhs.min_exp),
        };
        let hi = self.max_exp().into_iter().chain(rhs.max_exp()).max().expect("nonzero");
        Self::new(lo, (lo..=hi).map(|e| f(self.coeff(e), rhs.coeff(e))).collect())
    }
}

impl From<&IntPolynomial> for LaurentPolynomial {
    fn from(p: &IntPolynomial) -> Self {
        LaurentPolynomial::new(0, p.coeffs().to_vec())
    }
}

impl<'a> Add<&'a LaurentPolynomial> for &'a LaurentPolynomial {
    type Output = LaurentPolynomial;

    fn add(self, rhs: &'a LaurentPolynomial) -> LaurentPolynomial {
        self.combine(rhs, |a, b| a + b)
    }
}

impl<'a> Sub<&'a LaurentPolynomial> for &'a LaurentPolynomial {
    type Output = LaurentPolynomial;

    fn sub(self, rhs: &'a LaurentPolynomial) -> LaurentPolynomial {
        self.combine(rhs, |a, b| a - b)
    }
}

impl<'a> Mul<&'a LaurentPolynomial> for &'a LaurentPolynomial {
    type Output = LaurentPolynomial;

    fn mul(self, rhs: &'a LaurentPolynomial) -> LaurentPolynomial {
        if self.is_zero() || rhs.is_zero() {
            return LaurentPolynomial::zero();
        }
        let mut c = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                c[i + j] += a * b;
            }
        }
        LaurentPolynomial::new(self.min_exp + rhs.min_exp, c)
    }
}

impl Neg for &LaurentPolynomial {
    type Output = LaurentPolynomial;

    fn neg(self) -> LaurentPolynomial {
        LaurentPolynomial {
            min_exp: self.min_exp,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl fmt::Display for LaurentPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let e = self.min_exp + k as i64;
            let mag = c.abs();
            match (first, c.is_negative()) {
                (true, true) => f.write_str("-")?,
                (true, false) => {}
                (false, true) => f.write_str(" - ")?,
                (false, false) => f.write_str(" + ")?,
            }
            first = false;
            if !mag.is_one() || e == 0 {
                write!(f, "{mag}")?;
            }
            match e {
                0 => {}
                1 => f.write_str("x")?,
                _ => write!(f, "x^{e}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for LaurentPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Laurent({self})")
    }
}
