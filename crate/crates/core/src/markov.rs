//! Markov matrices of the boundary map for the symmetric presentations.
//!
//! Two independent constructions are provided. [`markov_from_images`]
//! expands the image of every basic interval and marks the covered
//! intervals; [`markov_from_blocks`] assembles the matrix from the closed
//! block pattern built out of `T`, `J T J`, `U^i` and zero blocks. The
//! two must agree entrywise.
//!
//! Generator intervals `I_{y_1} < ... < I_{y_2n}` are numbered around
//! the circle and the inverse of `y_i` is `y_{i+n}` (indices mod `2n`).
//! For the non-orientable presentation the map reverses orientation on
//! `I_{y_n}` and `I_{y_2n}`.

use std::fmt;

use crate::error::{Error, Result};
use crate::index::{cyclic_range, mod1, IntervalKind, IntervalLabel, Orientability, PresentationSpec, Rank};
use crate::matrix::IntMatrix;

/// The building blocks of the Markov matrix.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BlockKind {
    T,
    /// `J T J`, the half-turn of `T` about its centre.
    Jtj,
    /// `U^i`: row `i` all ones.
    U(usize),
    J,
    Zero,
    Identity,
}

impl fmt::Display for BlockKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BlockKind::T => f.write_str("T"),
            BlockKind::Jtj => f.write_str("JTJ"),
            BlockKind::U(i) => write!(f, "U^{i}"),
            BlockKind::J => f.write_str("J"),
            BlockKind::Zero => f.write_str("0"),
            BlockKind::Identity => f.write_str("I"),
        }
    }
}

/// Builds the `k x k` block of the given kind.
///
/// `T` and `JTJ` exist only for odd `k >= 5`; with `m = (k + 1) / 2`,
/// `T` has `t[i][i+1] = 1` for `i <= m - 3`, `t[m-2][m-1] = t[m-2][m] = 1`
/// and `t[m-1][j] = 1` for `m + 1 <= j <= k`.
pub fn build_block(kind: BlockKind, k: usize) -> Result<IntMatrix> {
    let invalid = || Error::InvalidBlock {
        kind: kind.to_string(),
        size: k,
    };
    if k == 0 {
        return Err(invalid());
    }
    match kind {
        BlockKind::T | BlockKind::Jtj => {
            if k < 5 || k % 2 == 0 {
                return Err(invalid());
            }
            let m = k.div_ceil(2);
            let t = IntMatrix::from_fn(k, |i, j| {
                let on = (i + 3 <= m && j == i + 1)
                    || (i + 2 == m && (j + 1 == m || j == m))
                    || (i + 1 == m && j > m);
                u8::from(on)
            });
            Ok(if kind == BlockKind::T {
                t
            } else {
                t.rotate_half()
            })
        }
        BlockKind::U(row) => {
            if row == 0 || row > k {
                return Err(invalid());
            }
            Ok(IntMatrix::from_fn(k, |i, _| u8::from(i == row)))
        }
        BlockKind::J => Ok(IntMatrix::anti_diagonal(k)),
        BlockKind::Zero => Ok(IntMatrix::zeros(k)),
        BlockKind::Identity => Ok(IntMatrix::identity(k)),
    }
}

/// Whether the map reverses orientation on generator interval `g`.
fn reverses(rank: Rank, form: Orientability, g: usize) -> bool {
    form == Orientability::NonOrientable && (g == rank.get() || g == rank.generators())
}

/// A piece of an image: one basic interval or a whole generator interval.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ImagePiece {
    Basic(usize, IntervalKind),
    Whole(usize),
}

/// Image of basic interval `kind` of generator interval `i` under the map.
///
/// `form` selects orientation-preserving behaviour everywhere
/// (`Orientable`) or reversal on `I_{y_n}` and `I_{y_2n}`
/// (`NonOrientable`). The orientable formulas are also meaningful for odd
/// ranks, which is why this takes a bare rank rather than a validated
/// presentation.
pub fn interval_image(rank: Rank, form: Orientability, i: usize, kind: IntervalKind) -> Vec<ImagePiece> {
    use ImagePiece::{Basic, Whole};
    use IntervalKind::*;

    let n = rank.get();
    let l = rank.generators();
    let at = |k: i64| mod1(i as i64 + k, l);
    // Generator interval reached through the edge to the left / right of
    // the inverse of y_i.
    let left = at(n as i64 + 1);
    let right = at(n as i64 - 1);
    // Complete generator intervals swept on either side.
    let far_side = cyclic_range(at(n as i64 + 2), at(-1), l);
    let near_side = cyclic_range(at(1), at(n as i64 - 2), l);
    let outer = |g: usize, f: fn(usize) -> IntervalKind| (3..=n).map(move |j| Basic(g, f(j)));

    let mut out = Vec::new();
    if !reverses(rank, form, i) {
        match kind {
            Left(j) if j >= 4 => out.push(Basic(left, Left(j - 1))),
            Left(_) => out.extend([Basic(left, CentralLeft), Basic(left, Central)]),
            CentralLeft => {
                out.push(Basic(left, CentralRight));
                out.extend(outer(left, Right));
                out.extend(far_side.into_iter().map(Whole));
            }
            Central => out.push(Whole(i)),
            CentralRight => {
                out.push(Basic(right, CentralLeft));
                out.extend(outer(right, Left));
                out.extend(near_side.into_iter().map(Whole));
            }
            Right(j) if j >= 4 => out.push(Basic(right, Right(j - 1))),
            Right(_) => out.extend([Basic(right, Central), Basic(right, CentralRight)]),
        }
    } else {
        match kind {
            Left(j) if j >= 4 => out.push(Basic(right, Right(j - 1))),
            Left(_) => out.extend([Basic(right, Central), Basic(right, CentralRight)]),
            CentralLeft => {
                out.push(Basic(right, CentralLeft));
                out.extend(outer(right, Left));
                out.extend(near_side.into_iter().map(Whole));
            }
            Central => out.push(Whole(i)),
            CentralRight => {
                out.push(Basic(left, CentralRight));
                out.extend(outer(left, Right));
                out.extend(far_side.into_iter().map(Whole));
            }
            Right(j) if j >= 4 => out.push(Basic(left, Left(j - 1))),
            Right(_) => out.extend([Basic(left, CentralLeft), Basic(left, Central)]),
        }
    }
    out
}

/// Markov matrix from the interval images, for a bare rank and form.
pub fn markov_from_images(rank: Rank, form: Orientability) -> Result<IntMatrix> {
    rank.require(3)?;
    let s = rank.block_size();
    let size = rank.generators() * s;
    let mut m = IntMatrix::zeros(size);
    for g in 1..=rank.generators() {
        for slot in 1..=s {
            let label = IntervalLabel::new(g, slot, rank)?;
            let row = label.matrix_index(rank);
            for piece in interval_image(rank, form, g, label.kind(rank)) {
                match piece {
                    ImagePiece::Basic(t, kind) => {
                        let col = IntervalLabel::new(t, kind.slot(rank), rank)?.matrix_index(rank);
                        m.set(row, col, 1);
                    }
                    ImagePiece::Whole(t) => {
                        for j in 1..=s {
                            m.set(row, (t - 1) * s + j, 1);
                        }
                    }
                }
            }
        }
    }
    Ok(m)
}

/// Block kind at block position `(l, t)` of the orientable-form matrix.
pub fn block_kind_at(rank: Rank, l: usize, t: usize) -> BlockKind {
    let n = rank.get();
    let offset = (t + rank.generators() - l) % rank.generators();
    match offset {
        0 => BlockKind::U(n),
        d if d <= n - 2 => BlockKind::U(n + 1),
        d if d == n - 1 => BlockKind::Jtj,
        d if d == n => BlockKind::Zero,
        d if d == n + 1 => BlockKind::T,
        _ => BlockKind::U(n - 1),
    }
}

/// Markov matrix assembled from the closed block formulas; the block
/// rows `n` and `2n` are premultiplied by `J` in the non-orientable form.
pub fn markov_from_blocks(rank: Rank, form: Orientability) -> Result<IntMatrix> {
    rank.require(3)?;
    let s = rank.block_size();
    let blocks = (1..=rank.generators())
        .map(|l| {
            (1..=rank.generators())
                .map(|t| {
                    let b = build_block(block_kind_at(rank, l, t), s)?;
                    Ok(if reverses(rank, form, l) { b.reverse_rows() } else { b })
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    IntMatrix::from_blocks(&blocks)
}

/// `M_n^+` or `M_n^-` from the interval images.
pub fn build_markov_from_images(spec: &PresentationSpec) -> Result<IntMatrix> {
    markov_from_images(spec.rank(), spec.orientability())
}

/// `M_n^+` or `M_n^-` from the block formulas.
pub fn build_markov_from_blocks(spec: &PresentationSpec) -> Result<IntMatrix> {
    markov_from_blocks(spec.rank(), spec.orientability())
}
