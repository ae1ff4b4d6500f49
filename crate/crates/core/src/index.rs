//! Ranks, presentations and the labelling of basic intervals.
//!
//! Every index exposed here is 1-based: generators run over `1..=2n` and
//! the slots inside one generator interval over `1..=2n-1`.

use std::fmt;

use crate::error::{Error, Result};

/// Representative of `k` modulo `l` taken in `1..=l`, so that
/// `mod1(0, l) == mod1(l, l) == l`.
///
/// # Panics
///
/// Panics if `l == 0`.
pub fn mod1(k: i64, l: usize) -> usize {
    assert!(l >= 1, "mod1 modulus must be positive");
    let l = l as i64;
    let r = k.rem_euclid(l);
    if r == 0 {
        l as usize
    } else {
        r as usize
    }
}

/// Walks the cyclic index range `start, start+1, ..., end` modulo `l`,
/// inclusive at both ends and using `1..=l` representatives.
pub(crate) fn cyclic_range(start: usize, end: usize, l: usize) -> Vec<usize> {
    let mut out = vec![start];
    let mut k = start;
    while k != end {
        k = mod1(k as i64 + 1, l);
        out.push(k);
    }
    out
}

/// Rank `n` of a surface group, i.e. the number of generators.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Rank(usize);

impl Rank {
    pub fn new(n: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::RankTooSmall { rank: n, min: 2 });
        }
        Ok(Rank(n))
    }

    /// Ranks at which the Markov pipeline is defined (`n >= 3`).
    pub fn pipeline(n: usize) -> Result<Self> {
        let rank = Self::new(n)?;
        rank.require(3)?;
        Ok(rank)
    }

    pub fn get(self) -> usize {
        self.0
    }

    /// Number of generator intervals around the circle, `2n`.
    pub fn generators(self) -> usize {
        2 * self.0
    }

    /// Number of basic intervals inside one generator interval, `2n - 1`.
    pub fn block_size(self) -> usize {
        2 * self.0 - 1
    }

    pub(crate) fn require(self, min: usize) -> Result<()> {
        if self.0 < min {
            Err(Error::RankTooSmall { rank: self.0, min })
        } else {
            Ok(())
        }
    }
}

impl fmt::Display for Rank {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// Which of the two symmetric presentations is meant.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Orientability {
    Orientable,
    NonOrientable,
}

impl Orientability {
    pub fn from_flag(orientable: bool) -> Self {
        if orientable {
            Orientability::Orientable
        } else {
            Orientability::NonOrientable
        }
    }

    pub fn is_orientable(self) -> bool {
        self == Orientability::Orientable
    }
}

/// A symmetric presentation `P_n^+` (orientable, `n` even) or `P_n^-`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PresentationSpec {
    rank: Rank,
    orientability: Orientability,
}

impl PresentationSpec {
    pub fn new(n: usize, orientable: bool) -> Result<Self> {
        let rank = Rank::new(n)?;
        if orientable && n % 2 != 0 {
            return Err(Error::OrientableOddRank(n));
        }
        Ok(PresentationSpec {
            rank,
            orientability: Orientability::from_flag(orientable),
        })
    }

    pub fn orientable(n: usize) -> Result<Self> {
        Self::new(n, true)
    }

    pub fn non_orientable(n: usize) -> Result<Self> {
        Self::new(n, false)
    }

    pub fn rank(&self) -> Rank {
        self.rank
    }

    pub fn orientability(&self) -> Orientability {
        self.orientability
    }

    pub fn is_orientable(&self) -> bool {
        self.orientability.is_orientable()
    }
}

impl fmt::Display for PresentationSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sign = if self.is_orientable() { '+' } else { '-' };
        write!(f, "P_{}^{}", self.rank, sign)
    }
}

/// Named basic subinterval of a generator interval, in circular order
/// `L^n < ... < L^3 < C^L < C < C^R < R^3 < ... < R^n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum IntervalKind {
    /// `L^j` with `3 <= j <= n`.
    Left(usize),
    CentralLeft,
    Central,
    CentralRight,
    /// `R^j` with `3 <= j <= n`.
    Right(usize),
}

impl IntervalKind {
    /// Position of this interval inside its generator interval.
    pub fn slot(self, rank: Rank) -> usize {
        let n = rank.get();
        match self {
            IntervalKind::Left(j) => n + 1 - j,
            IntervalKind::CentralLeft => n - 1,
            IntervalKind::Central => n,
            IntervalKind::CentralRight => n + 1,
            IntervalKind::Right(j) => j + n - 1,
        }
    }

    pub fn from_slot(slot: usize, rank: Rank) -> Result<Self> {
        let n = rank.get();
        if slot == 0 || slot > rank.block_size() {
            return Err(Error::InvalidSlot { slot, rank: n });
        }
        Ok(if slot <= n - 2 {
            IntervalKind::Left(n + 1 - slot)
        } else if slot == n - 1 {
            IntervalKind::CentralLeft
        } else if slot == n {
            IntervalKind::Central
        } else if slot == n + 1 {
            IntervalKind::CentralRight
        } else {
            IntervalKind::Right(slot - (n - 1))
        })
    }
}

impl fmt::Display for IntervalKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            IntervalKind::Left(j) => write!(f, "L^{j}"),
            IntervalKind::CentralLeft => f.write_str("C^L"),
            IntervalKind::Central => f.write_str("C"),
            IntervalKind::CentralRight => f.write_str("C^R"),
            IntervalKind::Right(j) => write!(f, "R^{j}"),
        }
    }
}

/// Basic interval `U^i_j`: slot `j` of generator interval `I_{y_i}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct IntervalLabel {
    generator: usize,
    slot: usize,
}

impl IntervalLabel {
    pub fn new(generator: usize, slot: usize, rank: Rank) -> Result<Self> {
        if generator == 0 || generator > rank.generators() {
            return Err(Error::IndexOutOfRange {
                index: generator,
                max: rank.generators(),
            });
        }
        if slot == 0 || slot > rank.block_size() {
            return Err(Error::InvalidSlot {
                slot,
                rank: rank.get(),
            });
        }
        Ok(IntervalLabel { generator, slot })
    }

    pub fn generator(&self) -> usize {
        self.generator
    }

    pub fn slot(&self) -> usize {
        self.slot
    }

    pub fn kind(&self, rank: Rank) -> IntervalKind {
        IntervalKind::from_slot(self.slot, rank).expect("slot validated on construction")
    }

    /// 1-based row/column of this interval in the Markov matrix.
    pub fn matrix_index(&self, rank: Rank) -> usize {
        (self.generator - 1) * rank.block_size() + self.slot
    }
}
