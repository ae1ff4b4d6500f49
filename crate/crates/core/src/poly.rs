//! Univariate polynomials with integer coefficients.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Coefficients are stored lowest degree first and kept trimmed, so the
/// zero polynomial is the empty vector.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct IntPolynomial {
    coeffs: Vec<BigInt>,
}

impl IntPolynomial {
    pub fn new<T: Into<BigInt>>(coeffs: Vec<T>) -> Self {
        let mut p = IntPolynomial {
            coeffs: coeffs.into_iter().map(Into::into).collect(),
        };
        p.trim();
        p
    }

    pub fn zero() -> Self {
        IntPolynomial { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::monomial(1, 0)
    }

    pub fn x() -> Self {
        Self::monomial(1, 1)
    }

    pub fn monomial(c: impl Into<BigInt>, degree: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); degree + 1];
        coeffs[degree] = c.into();
        Self::new(coeffs)
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(Zero::is_zero) {
            self.coeffs.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn leading(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        self.coeffs
            .iter()
            .rev()
            .fold(BigRational::zero(), |acc, c| acc * x + BigRational::from_integer(c.clone()))
    }

    pub fn eval_int(&self, x: &BigInt) -> BigInt {
        self.coeffs
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * x + c)
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        self.coeffs
            .iter()
            .rev()
            .fold(0.0, |acc, c| acc * x + c.to_f64().unwrap_or(f64::NAN))
    }

    /// Sign of `p(x)` computed exactly.
    pub fn sign_at(&self, x: &BigRational) -> Ordering {
        self.eval(x).cmp(&BigRational::zero())
    }

    /// Whether `x^d p(1/x) = p(x)`, i.e. the coefficients form a palindrome.
    pub fn is_reciprocal(&self) -> Result<bool> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        Ok(self.coeffs.iter().eq(self.coeffs.iter().rev()))
    }

    /// `x^d p(1/x)` where `d` is the degree.
    pub fn reversed(&self) -> Self {
        let mut c = self.coeffs.clone();
        c.reverse();
        Self::new(c)
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigInt::from(i))
                .collect(),
        )
    }

    /// Gcd of the coefficients, positive; zero for the zero polynomial.
    pub fn content(&self) -> BigInt {
        self.coeffs
            .iter()
            .fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    /// Divides out the content, keeping the sign of the leading coefficient.
    pub fn primitive_part(&self) -> Self {
        let g = self.content();
        if g.is_zero() || g.is_one() {
            return self.clone();
        }
        Self::new(self.coeffs.iter().map(|c| c / &g).collect())
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        Self::new(self.coeffs.iter().map(|x| x * c).collect())
    }

    /// Pseudo-remainder `lc(d)^(deg a - deg d + 1) * a mod d`.
    pub fn pseudo_rem(&self, divisor: &Self) -> Result<Self> {
        let dd = divisor.degree().ok_or(Error::ZeroPolynomial)?;
        let lc = divisor.leading().expect("nonzero").clone();
        let mut r = self.clone();
        let Some(da) = r.degree() else {
            return Ok(r);
        };
        if da < dd {
            return Ok(r);
        }
        let mut steps = da - dd + 1;
        while let Some(dr) = r.degree() {
            if dr < dd {
                break;
            }
            let lr = r.leading().expect("nonzero").clone();
            let shifted = divisor.shift(dr - dd).scale(&lr);
            r = &r.scale(&lc) - &shifted;
            steps -= 1;
        }
        // Finish the multiplier so the result matches the textbook definition.
        for _ in 0..steps {
            r = r.scale(&lc);
        }
        Ok(r)
    }

    /// Multiplies by `x^k`.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut c = vec![BigInt::zero(); k];
        c.extend(self.coeffs.iter().cloned());
        Self::new(c)
    }

    /// Sturm sequence `p, p', -rem(p, p'), ...`, computed with pseudo
    /// remainders rescaled by positive factors so signs are unchanged.
    pub fn sturm_sequence(&self) -> Result<Vec<IntPolynomial>> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let mut seq = vec![self.primitive_part(), self.derivative().primitive_part()];
        while !seq.last().expect("non-empty").is_zero() {
            let n = seq.len();
            let (a, b) = (&seq[n - 2], &seq[n - 1]);
            let da = a.degree().expect("nonzero");
            let db = b.degree().expect("nonzero");
            let lc = b.leading().expect("nonzero");
            let rem = a.pseudo_rem(b)?;
            // lc^(da-db+1) may be negative; compensate to keep the true sign.
            let flip = lc.is_negative() && (da - db + 1) % 2 == 1;
            let r = if flip { rem } else { -&rem };
            seq.push(r.primitive_part());
        }
        seq.pop();
        Ok(seq)
    }
}

/// Number of sign changes of a Sturm sequence evaluated at `x`.
pub fn sign_changes_at(seq: &[IntPolynomial], x: &BigRational) -> usize {
    count_changes(seq.iter().map(|p| p.sign_at(x)))
}

/// Sign changes at `+inf`, read off the leading coefficients.
pub fn sign_changes_at_infinity(seq: &[IntPolynomial]) -> usize {
    count_changes(
        seq.iter()
            .map(|p| p.leading().map_or(Ordering::Equal, |c| c.sign_cmp())),
    )
}

trait SignCmp {
    fn sign_cmp(&self) -> Ordering;
}

impl SignCmp for BigInt {
    fn sign_cmp(&self) -> Ordering {
        self.cmp(&BigInt::zero())
    }
}

fn count_changes(signs: impl Iterator<Item = Ordering>) -> usize {
    let mut last = Ordering::Equal;
    let mut changes = 0;
    for s in signs.filter(|s| *s != Ordering::Equal) {
        if last != Ordering::Equal && s != last {
            changes += 1;
        }
        last = s;
    }
    changes
}

impl<'a> Add<&'a IntPolynomial> for &'a IntPolynomial {
    type Output = IntPolynomial;

    fn add(self, rhs: &'a IntPolynomial) -> IntPolynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        IntPolynomial::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl<'a> Sub<&'a IntPolynomial> for &'a IntPolynomial {
    type Output = IntPolynomial;

    fn sub(self, rhs: &'a IntPolynomial) -> IntPolynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        IntPolynomial::new((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl<'a> Mul<&'a IntPolynomial> for &'a IntPolynomial {
    type Output = IntPolynomial;

    fn mul(self, rhs: &'a IntPolynomial) -> IntPolynomial {
        if self.is_zero() || rhs.is_zero() {
            return IntPolynomial::zero();
        }
        let mut c = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                c[i + j] += a * b;
            }
        }
        IntPolynomial::new(c)
    }
}

impl Neg for &IntPolynomial {
    type Output = IntPolynomial;

    fn neg(self) -> IntPolynomial {
        IntPolynomial::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            first = false;
            let show_mag = !mag.is_one() || i == 0;
            if show_mag {
                write!(f, "{mag}")?;
            }
            match i {
                0 => {}
                1 => f.write_str("x")?,
                _ => write!(f, "x^{i}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntPolynomial({self})")
    }
}
