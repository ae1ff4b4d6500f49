//! Dense square matrices of arbitrary-precision integers.

use std::fmt;
use std::ops::{Add, Mul};

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// A `k x k` integer matrix stored row-major.
///
/// The public accessors are 1-based (`entry(1, 1)` is the top-left
/// corner) so that block formulas can be transcribed without shifting.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    size: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(size: usize) -> Self {
        IntMatrix {
            size,
            data: vec![BigInt::zero(); size * size],
        }
    }

    pub fn identity(size: usize) -> Self {
        Self::from_fn(size, |i, j| if i == j { 1 } else { 0 })
    }

    /// `J_k`: ones on the anti-diagonal.
    pub fn anti_diagonal(size: usize) -> Self {
        Self::from_fn(size, |i, j| if i + j == size + 1 { 1 } else { 0 })
    }

    /// Builds a matrix from a closure over 1-based `(row, col)`.
    pub fn from_fn<T, F>(size: usize, mut f: F) -> Self
    where
        T: Into<BigInt>,
        F: FnMut(usize, usize) -> T,
    {
        let mut data = Vec::with_capacity(size * size);
        for i in 1..=size {
            for j in 1..=size {
                data.push(f(i, j).into());
            }
        }
        IntMatrix { size, data }
    }

    pub fn from_rows<T: Into<BigInt>>(rows: Vec<Vec<T>>) -> Result<Self> {
        let size = rows.len();
        let mut data = Vec::with_capacity(size * size);
        for row in rows {
            if row.len() != size {
                return Err(Error::DimensionMismatch {
                    expected: size,
                    got: row.len(),
                });
            }
            data.extend(row.into_iter().map(Into::into));
        }
        Ok(IntMatrix { size, data })
    }

    pub fn size(&self) -> usize {
        self.size
    }

    /// Entry at 1-based `(i, j)`.
    pub fn entry(&self, i: usize, j: usize) -> &BigInt {
        assert!(
            (1..=self.size).contains(&i) && (1..=self.size).contains(&j),
            "entry ({i}, {j}) outside {0}x{0} matrix",
            self.size
        );
        &self.data[(i - 1) * self.size + (j - 1)]
    }

    pub fn set(&mut self, i: usize, j: usize, value: impl Into<BigInt>) {
        let k = self.size;
        assert!((1..=k).contains(&i) && (1..=k).contains(&j));
        self.data[(i - 1) * k + (j - 1)] = value.into();
    }

    /// 0-based access for internal loops.
    #[inline]
    pub(crate) fn at(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.size + j]
    }

    /// Row `i` (1-based) as a slice.
    pub fn row(&self, i: usize) -> &[BigInt] {
        let k = self.size;
        &self.data[(i - 1) * k..i * k]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[BigInt]> {
        self.data.chunks(self.size.max(1)).take(self.size)
    }

    pub fn is_nonnegative(&self) -> bool {
        self.data.iter().all(|x| !x.is_negative())
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn row_sums(&self) -> Vec<BigInt> {
        self.rows().map(|r| r.iter().sum()).collect()
    }

    /// Induced infinity norm, the maximum absolute row sum.
    pub fn max_row_sum(&self) -> BigInt {
        self.rows()
            .map(|r| r.iter().map(|x| x.abs()).sum::<BigInt>())
            .max()
            .unwrap_or_default()
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.size, |i, j| self.entry(j, i).clone())
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        IntMatrix {
            size: self.size,
            data: self.data.iter().map(|x| x * c).collect(),
        }
    }

    pub fn pow(&self, exp: u32) -> Self {
        let mut acc = Self::identity(self.size);
        for _ in 0..exp {
            acc = &acc * self;
        }
        acc
    }

    pub fn trace(&self) -> BigInt {
        (0..self.size).map(|i| self.at(i, i).clone()).sum()
    }

    /// The `s x s` block in 1-based block position `(l, t)`.
    pub fn block(&self, l: usize, t: usize, s: usize) -> Self {
        Self::from_fn(s, |i, j| self.entry((l - 1) * s + i, (t - 1) * s + j).clone())
    }

    /// Square submatrix with top-left corner at 1-based `(row, col)`.
    pub fn submatrix(&self, row: usize, col: usize, size: usize) -> Self {
        Self::from_fn(size, |i, j| self.entry(row + i - 1, col + j - 1).clone())
    }

    /// Assembles an `r x r` grid of equally sized blocks.
    pub fn from_blocks(blocks: &[Vec<IntMatrix>]) -> Result<Self> {
        let r = blocks.len();
        let s = blocks.first().and_then(|row| row.first()).map_or(0, |b| b.size);
        for row in blocks {
            if row.len() != r {
                return Err(Error::DimensionMismatch {
                    expected: r,
                    got: row.len(),
                });
            }
            if let Some(b) = row.iter().find(|b| b.size != s) {
                return Err(Error::DimensionMismatch {
                    expected: s,
                    got: b.size,
                });
            }
        }
        Ok(Self::from_fn(r * s, |i, j| {
            let (l, a) = ((i - 1) / s, (i - 1) % s);
            let (t, b) = ((j - 1) / s, (j - 1) % s);
            blocks[l][t].at(a, b).clone()
        }))
    }

    /// Permutes rows by `J` on the left, i.e. reverses the row order.
    pub fn reverse_rows(&self) -> Self {
        let k = self.size;
        Self::from_fn(k, |i, j| self.entry(k + 1 - i, j).clone())
    }

    /// Multiplies by `J` on the right, i.e. reverses the column order.
    pub fn reverse_cols(&self) -> Self {
        let k = self.size;
        Self::from_fn(k, |i, j| self.entry(i, k + 1 - j).clone())
    }

    /// `J M J`, the image under a half-turn about the centre.
    pub fn rotate_half(&self) -> Self {
        self.reverse_rows().reverse_cols()
    }

    /// Determinant by fraction-free (Bareiss) elimination.
    pub fn determinant(&self) -> BigInt {
        let k = self.size;
        if k == 0 {
            return BigInt::one();
        }
        let mut a: Vec<Vec<BigInt>> = self.rows().map(|r| r.to_vec()).collect();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for p in 0..k - 1 {
            if a[p][p].is_zero() {
                match (p + 1..k).find(|&r| !a[r][p].is_zero()) {
                    Some(r) => {
                        a.swap(p, r);
                        sign = -sign;
                    }
                    None => return BigInt::zero(),
                }
            }
            for i in p + 1..k {
                for j in p + 1..k {
                    let v = &a[p][p] * &a[i][j] - &a[i][p] * &a[p][j];
                    a[i][j] = v / &prev;
                }
                a[i][p] = BigInt::zero();
            }
            prev = a[p][p].clone();
        }
        sign * &a[k - 1][k - 1]
    }

    ///`x I - M` evaluated at an integer `x`.
    pub fn shifted(&self, x: &BigInt) -> Self {
        Self::from_fn(self.size, |i, j| {
            let m = self.entry(i, j);
            if i == j {
                x - m
            } else {
                -m
            }
        })
    }

    pub fn to_f64_rows(&self) -> Vec<Vec<f64>> {
        self.rows()
            .map(|r| r.iter().map(|x| x.to_f64().unwrap_or(f64::INFINITY)).collect())
            .collect()
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "IntMatrix({0}x{0})", self.size)?;
        for row in self.rows() {
            let cells: Vec<String> = row.iter().map(ToString::to_string).collect();
            writeln!(f, "  [{}]", cells.join(" "))?;
        }
        Ok(())
    }
}

impl<'a> Mul<&'a IntMatrix> for &'a IntMatrix {
    type Output = IntMatrix;

    fn mul(self, rhs: &'a IntMatrix) -> IntMatrix {
        assert_eq!(self.size, rhs.size, "matrix size mismatch");
        let k = self.size;
        let mut out = IntMatrix::zeros(k);
        for i in 0..k {
            for l in 0..k {
                let a = self.at(i, l);
                if a.is_zero() {
                    continue;
                }
                for j in 0..k {
                    let b = rhs.at(l, j);
                    if !b.is_zero() {
                        out.data[i * k + j] += a * b;
                    }
                }
            }
        }
        out
    }
}

impl<'a> Add<&'a IntMatrix> for &'a IntMatrix {
    type Output = IntMatrix;

    fn add(self, rhs: &'a IntMatrix) -> IntMatrix {
        assert_eq!(self.size, rhs.size, "matrix size mismatch");
        IntMatrix {
            size: self.size,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect(),
        }
    }
}
