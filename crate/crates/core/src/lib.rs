//! Volume entropy of the symmetric presentations of surface groups.
//!
//! The entropy is `log(lambda_n)`, where `lambda_n` is the spectral radius
//! of the Markov matrix of a boundary map. The crate builds that matrix,
//! checks each spectral-radius-preserving reduction down to an `n x n`
//! matrix, and recovers the polynomial
//! `Q_n(x) = x^n - 2(n-1)(x^(n-1) + ... + x) + 1`
//! whose largest root is `lambda_n`.

pub mod entropy;
pub mod error;
pub mod fixtures;
pub mod index;
pub mod laurent;
pub mod markov;
pub mod matrix;
pub mod poly;
pub mod reduce;
pub mod rome;
pub mod roots;
pub mod serialize;
pub mod spectral;
pub mod verify;

pub use entropy::{
    bounds_check, entropy_table, lambda_bracket, lambda_n, volume_entropy, EntropyReport,
    Route, RouteValue, TablePolicy, TableRow,
};
pub use error::{Error, Result};
pub use index::{mod1, IntervalKind, IntervalLabel, Orientability, PresentationSpec, Rank};
pub use laurent::LaurentPolynomial;
pub use markov::{build_block, build_markov_from_blocks, build_markov_from_images, BlockKind};
pub use matrix::IntMatrix;
pub use poly::IntPolynomial;
pub use reduce::{
    check_j_commutation, compacted_matrix, divided_compacted_matrix, super_compacted_matrix,
    BlockView,
};
pub use rome::{q_polynomial, rome_char_poly, rome_check, rome_matrix, RomeSpec, SimplePath};
pub use verify::{verify, CheckResult};
pub use spectral::{char_poly_exact, is_irreducible, power_iteration, SpectralEstimate};
