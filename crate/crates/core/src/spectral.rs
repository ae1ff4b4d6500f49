//! Spectral radius estimates and exact characteristic polynomials.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::matrix::IntMatrix;
use crate::poly::IntPolynomial;

pub const DEFAULT_TOLERANCE: f64 = 1e-10;

/// Longest oscillation period the power iteration will average over.
const MAX_WINDOW: usize = 8;
const CHECKED_MEANS: usize = MAX_WINDOW + 1;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectralEstimate {
    pub value: f64,
    pub iterations: usize,
    /// Spread of the last window of estimates when the iteration stopped.
    pub residual: f64,
    pub converged: bool,
}

/// Default iteration cap for a matrix of the given size.
pub fn default_max_iter(size: usize) -> usize {
    100 * size + 1000
}

/// Perron root estimate by power iteration from the all-ones vector.
///
/// Each step replaces `v` by `Mv / |Mv|_inf` and records `|Mv|_inf`.
/// The iteration stops once, for some window length `w <= 8`, the nine
/// most recent geometric means over `w` consecutive estimates differ by
/// at most `tol`. For a convergent sequence `w = 1` fires; for a periodic
/// one (permutation-like inputs) the window matching the period does.
/// Nine consecutive flat means cannot occur for a window that is not a
/// multiple of a period `<= 8`.
pub fn power_iteration(m: &IntMatrix, tol: f64, max_iter: usize) -> Result<SpectralEstimate> {
    if !(tol > 0.0 && tol.is_finite()) {
        return Err(Error::InvalidTolerance(tol));
    }
    let k = m.size();
    if k == 0 || m.is_zero() {
        return Ok(SpectralEstimate {
            value: 0.0,
            iterations: 0,
            residual: 0.0,
            converged: true,
        });
    }
    let sparse = SparseRows::new(m);
    let mut v = vec![1.0; k];
    let mut next = vec![0.0; k];
    // log of each estimate; geometric means become arithmetic means here
    let mut logs: Vec<f64> = Vec::new();
    let mut best = (f64::INFINITY, f64::NAN);

    for it in 1..=max_iter {
        sparse.apply(&v, &mut next);
        let norm = next.iter().fold(0.0f64, |a, x| a.max(x.abs()));
        if norm == 0.0 {
            // nilpotent on the orbit of the start vector
            return Ok(SpectralEstimate {
                value: 0.0,
                iterations: it,
                residual: 0.0,
                converged: true,
            });
        }
        for (dst, src) in v.iter_mut().zip(&next) {
            *dst = src / norm;
        }
        logs.push(norm.ln());

        for w in 1..=MAX_WINDOW {
            if logs.len() < w + CHECKED_MEANS - 1 {
                break;
            }
            let means: Vec<f64> = (0..CHECKED_MEANS)
                .map(|s| {
                    let end = logs.len() - s;
                    (logs[end - w..end].iter().sum::<f64>() / w as f64).exp()
                })
                .collect();
            let hi = means.iter().cloned().fold(f64::MIN, f64::max);
            let lo = means.iter().cloned().fold(f64::MAX, f64::min);
            let spread = hi - lo;
            if spread < best.0 {
                best = (spread, means[0]);
            }
            if spread <= tol {
                return Ok(SpectralEstimate {
                    value: means[0],
                    iterations: it,
                    residual: spread,
                    converged: true,
                });
            }
        }
    }
    let value = if best.1.is_nan() {
        logs.last().map_or(0.0, |l| l.exp())
    } else {
        best.1
    };
    Ok(SpectralEstimate {
        value,
        iterations: max_iter,
        residual: best.0,
        converged: false,
    })
}

/// Power iteration with the default tolerance and iteration cap.
pub fn spectral_radius(m: &IntMatrix) -> Result<SpectralEstimate> {
    power_iteration(m, DEFAULT_TOLERANCE, default_max_iter(m.size()))
}

struct SparseRows {
    rows: Vec<Vec<(usize, f64)>>,
}

impl SparseRows {
    fn new(m: &IntMatrix) -> Self {
        let rows = m
            .to_f64_rows()
            .into_iter()
            .map(|r| {
                r.into_iter()
                    .enumerate()
                    .filter(|(_, x)| *x != 0.0)
                    .collect()
            })
            .collect();
        SparseRows { rows }
    }

    fn apply(&self, v: &[f64], out: &mut [f64]) {
        for (o, row) in out.iter_mut().zip(&self.rows) {
            *o = row.iter().map(|&(j, a)| a * v[j]).sum();
        }
    }
}

/// `det(x I - M)` with exact integer coefficients (Faddeev-LeVerrier).
///
/// With `N_0 = 0` and `c_k = 1`, iterate `N_i = M N_{i-1} + c_{k-i+1} I`
/// and `c_{k-i} = -tr(M N_i) / i`. The division is exact over the
/// integers because the `c` are integers.
pub fn char_poly_exact(m: &IntMatrix) -> IntPolynomial {
    let k = m.size();
    let mut coeffs = vec![BigInt::zero(); k + 1];
    coeffs[k] = BigInt::one();
    let mut n = IntMatrix::zeros(k);
    for i in 1..=k {
        let mut next = m * &n;
        for d in 1..=k {
            let v = next.entry(d, d) + &coeffs[k - i + 1];
            next.set(d, d, v);
        }
        n = next;
        let tr = (m * &n).trace();
        let c = -tr / BigInt::from(i);
        coeffs[k - i] = c;
    }
    IntPolynomial::new(coeffs)
}

/// Adjacency lists of the digraph with an arc `i -> j` when `m_ij != 0`,
/// 0-based.
pub(crate) fn adjacency(m: &IntMatrix) -> Vec<Vec<usize>> {
    (0..m.size())
        .map(|i| (0..m.size()).filter(|&j| !m.at(i, j).is_zero()).collect())
        .collect()
}

fn reachable(adj: &[Vec<usize>], start: usize) -> Vec<bool> {
    let mut seen = vec![false; adj.len()];
    let mut stack = vec![start];
    seen[start] = true;
    while let Some(u) = stack.pop() {
        for &w in &adj[u] {
            if !seen[w] {
                seen[w] = true;
                stack.push(w);
            }
        }
    }
    seen
}

/// Whether the digraph of nonzero entries is strongly connected.
pub fn is_irreducible(m: &IntMatrix) -> bool {
    let k = m.size();
    if k == 0 {
        return false;
    }
    let adj = adjacency(m);
    let mut rev = vec![Vec::new(); k];
    for (u, outs) in adj.iter().enumerate() {
        for &w in outs {
            rev[w].push(u);
        }
    }
    reachable(&adj, 0).iter().all(|&b| b) && reachable(&rev, 0).iter().all(|&b| b)
}
