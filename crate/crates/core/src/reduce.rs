//! Spectral-radius-preserving reductions of the Markov matrix.
//!
//! The chain is `M_n^± (2n(2n-1)) -> C_n (2n-1) -> DC_n (2n) -> SC_n (n)`.
//! Block-circulant collapse takes `M_n^+` to the sum of its first block
//! row. The disoriented variant does the same for `M_n^-` provided that
//! sum commutes with `J`.

use crate::error::{Error, Result};
use crate::index::{mod1, Rank};
use crate::matrix::IntMatrix;

/// A square matrix viewed as an `r x r` grid of `s x s` blocks.
#[derive(Debug, Clone, Copy)]
pub struct BlockView<'a> {
    matrix: &'a IntMatrix,
    blocks: usize,
    block_size: usize,
}

impl<'a> BlockView<'a> {
    pub fn new(matrix: &'a IntMatrix, blocks: usize, block_size: usize) -> Result<Self> {
        if blocks == 0 || block_size == 0 || blocks * block_size != matrix.size() {
            return Err(Error::InvalidBlockView {
                dim: matrix.size(),
                blocks,
                block_size,
            });
        }
        Ok(BlockView {
            matrix,
            blocks,
            block_size,
        })
    }

    pub fn matrix(&self) -> &IntMatrix {
        self.matrix
    }

    pub fn blocks(&self) -> usize {
        self.blocks
    }

    pub fn block_size(&self) -> usize {
        self.block_size
    }

    /// Block at 1-based position `(l, t)`.
    pub fn block(&self, l: usize, t: usize) -> IntMatrix {
        self.matrix.block(l, t, self.block_size)
    }

    /// Block `(l, t)` of the circulant matrix generated by the first block row.
    fn circulant_template(&self, l: usize, t: usize) -> IntMatrix {
        let r = self.blocks;
        self.block(1, mod1(t as i64 - l as i64 + 1, r))
    }
}

/// Whether block `(i, j)` equals block `(i+1, j+1)` for all `i, j` (mod `r`).
pub fn is_block_circulant(v: &BlockView<'_>) -> bool {
    let r = v.blocks;
    (1..=r).all(|l| (1..=r).all(|t| v.block(l, t) == v.circulant_template(l, t)))
}

/// Sum of the blocks in the first block row.
pub fn sum_first_block_row(v: &BlockView<'_>) -> IntMatrix {
    (2..=v.blocks).fold(v.block(1, 1), |acc, t| &acc + &v.block(1, t))
}

/// How a block row of a disoriented block-circulant matrix relates to its
/// parallelization.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RowOrientation {
    Kept,
    Reflected,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Parallelization {
    /// The block-circulant matrix sharing the first block row.
    pub matrix: IntMatrix,
    /// Per block row, whether it equals the circulant row or its `J` image.
    /// A row that is invariant under `J` is reported as `Kept`.
    pub rows: Vec<RowOrientation>,
}

impl Parallelization {
    pub fn reflected_rows(&self) -> Vec<usize> {
        self.rows
            .iter()
            .enumerate()
            .filter(|(_, o)| **o == RowOrientation::Reflected)
            .map(|(i, _)| i + 1)
            .collect()
    }
}

/// Detects a disoriented block-circulant matrix and returns its
/// parallelization, or `None` if some block row matches neither the
/// circulant template nor its `J`-premultiplied image.
pub fn disoriented_parallelization(v: &BlockView<'_>) -> Option<Parallelization> {
    let r = v.blocks;
    let mut rows = Vec::with_capacity(r);
    let mut template = Vec::with_capacity(r);
    for l in 1..=r {
        let expected: Vec<IntMatrix> = (1..=r).map(|t| v.circulant_template(l, t)).collect();
        let actual: Vec<IntMatrix> = (1..=r).map(|t| v.block(l, t)).collect();
        if actual == expected {
            rows.push(RowOrientation::Kept);
        } else if actual.iter().zip(&expected).all(|(a, e)| *a == e.reverse_rows()) {
            rows.push(RowOrientation::Reflected);
        } else {
            return None;
        }
        template.push(expected);
    }
    let matrix = IntMatrix::from_blocks(&template).expect("template blocks are uniform");
    Some(Parallelization { matrix, rows })
}

pub fn is_disoriented_block_circulant(v: &BlockView<'_>) -> bool {
    disoriented_parallelization(v).is_some()
}

/// Whether `s J = J s`, i.e. `s` is invariant under a half-turn.
pub fn check_j_commutation(s: &IntMatrix) -> bool {
    s.rotate_half() == *s
}

/// The compacted matrix `C_n`, of size `2n - 1`.
pub fn compacted_matrix(rank: Rank) -> Result<IntMatrix> {
    rank.require(3)?;
    let n = rank.get();
    Ok(IntMatrix::from_fn(2 * n - 1, |i, j| -> i64 {
        if i + 3 <= n && j == i + 1 {
            1
        } else if i + 2 == n {
            i64::from(j + 1 == n || j == n)
        } else if i + 1 == n {
            if j <= n {
                (n - 2) as i64
            } else {
                (n - 1) as i64
            }
        } else if i == n {
            1
        } else if i == n + 1 {
            if j < n {
                (n - 1) as i64
            } else {
                (n - 2) as i64
            }
        } else if i == n + 2 {
            i64::from(j == n || j == n + 1)
        } else if i >= n + 3 && j + 1 == i {
            1
        } else {
            0
        }
    }))
}

/// The divided compacted matrix `DC_n`, of size `2n`: the central row and
/// column of `C_n` split in two.
pub fn divided_compacted_matrix(rank: Rank) -> Result<IntMatrix> {
    let c = compacted_matrix(rank)?;
    let n = rank.get();
    Ok(IntMatrix::from_fn(2 * n, |i, j| {
        if i == n {
            u8::from(j <= n).into()
        } else if i == n + 1 {
            u8::from(j > n).into()
        } else {
            let ci = if i < n { i } else { i - 1 };
            let cj = if j <= n { j } else { j - 1 };
            c.entry(ci, cj).clone()
        }
    }))
}

/// The super compacted matrix `SC_n`, of size `n`, from its closed form.
pub fn super_compacted_matrix(rank: Rank) -> Result<IntMatrix> {
    rank.require(3)?;
    let n = rank.get();
    Ok(IntMatrix::from_fn(n, |i, j| -> i64 {
        if i + 2 == n && j == n {
            2
        } else if (i + 2 <= n && j == i + 1) || i == n {
            1
        } else if i + 1 == n {
            if j < n {
                (2 * n - 3) as i64
            } else {
                (2 * n - 4) as i64
            }
        } else {
            0
        }
    }))
}

/// Upper blocks `(D11, D12)` of an even-sized matrix split in halves.
pub fn upper_half_blocks(m: &IntMatrix) -> Result<(IntMatrix, IntMatrix)> {
    if m.size() % 2 != 0 {
        return Err(Error::InvalidBlockView {
            dim: m.size(),
            blocks: 2,
            block_size: m.size() / 2,
        });
    }
    let h = m.size() / 2;
    Ok((m.block(1, 1, h), m.block(1, 2, h)))
}

/// `D11 + D12 J` for the half blocks of a centrally symmetric matrix.
pub fn fold_centrally_symmetric(m: &IntMatrix) -> Result<IntMatrix> {
    let (d11, d12) = upper_half_blocks(m)?;
    Ok(&d11 + &d12.reverse_cols())
}

/// `Z M Z` with `Z = diag(I, J)`; `Z` is its own inverse.
pub fn z_conjugate(m: &IntMatrix) -> Result<IntMatrix> {
    if m.size() % 2 != 0 {
        return Err(Error::InvalidBlockView {
            dim: m.size(),
            blocks: 2,
            block_size: m.size() / 2,
        });
    }
    let h = m.size() / 2;
    let z = IntMatrix::from_fn(m.size(), |i, j| {
        u8::from(if i <= h { i == j } else { j > h && i + j == 3 * h + 1 })
    });
    Ok(&(&z * m) * &z)
}
