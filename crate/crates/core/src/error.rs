use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("rank {rank} is below the minimum {min} for this operation")]
    RankTooSmall { rank: usize, min: usize },

    #[error("orientable presentation requires an even rank, got {0}")]
    OrientableOddRank(usize),

    #[error("invalid block {kind} of size {size}")]
    InvalidBlock { kind: String, size: usize },

    #[error("block view {blocks}x{block_size} does not tile a {dim}x{dim} matrix")]
    InvalidBlockView {
        dim: usize,
        blocks: usize,
        block_size: usize,
    },

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("index {index} out of range 1..={max}")]
    IndexOutOfRange { index: usize, max: usize },

    #[error("slot {slot} is not a basic interval label for rank {rank}")]
    InvalidSlot { slot: usize, rank: usize },

    #[error("node set is not a rome: cycle {0:?} avoids it")]
    NotARome(Vec<usize>),

    #[error("tolerance must be positive and finite, got {0}")]
    InvalidTolerance(f64),

    #[error("invalid range {from}..={to}")]
    InvalidRange { from: usize, to: usize },

    #[error("zero polynomial")]
    ZeroPolynomial,

    #[error("parse error on line {line}: {message}")]
    Parse { line: usize, message: String },
}
