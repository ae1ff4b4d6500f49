//! Reference grids for the first three block rows of `M_4^+` and of
//! `M_3^-`, stored verbatim.
use num_bigint::BigInt;

use crate::error::Result;
use crate::serialize::parse_grid;

const RANK4_ORIENTABLE: &str = include_str!("../fixtures/big_matrix_rank4_orientable.txt");
const RANK3_NON_ORIENTABLE: &str = include_str!("../fixtures/big_matrix_rank3_nonorientable.txt");

/// 21 x 56 grid for `M_4^+`.
pub fn rank4_orientable() -> Result<Vec<Vec<BigInt>>> {
    parse_grid(RANK4_ORIENTABLE)
}

/// Cells `(row, col, grid value, constructed value)` where the `M_3^-`
/// grid, as printed, disagrees with the image formulas. The printed rows
/// 14 and 15 are shifted one column left inside block `(3, 1)`; with them
/// the matrix has spectral radius `4.79607...` instead of the root
/// `4.79128...` of `x^3 - 4x^2 - 4x + 1`, while the formula rows give the
/// latter.
pub const RANK3_NON_ORIENTABLE_ERRATA: [(usize, usize, u8, u8); 4] =
    [(14, 3, 1, 0), (14, 5, 0, 1), (15, 1, 1, 0), (15, 3, 0, 1)];

/// 15 x 30 grid for `M_3^-`, exactly as printed.
pub fn rank3_non_orientable() -> Result<Vec<Vec<BigInt>>> {
    parse_grid(RANK3_NON_ORIENTABLE)
}
