//! The Rome method for characteristic polynomials.
//!
//! A rome `R` is a node set such that every cycle of the digraph of `M`
//! meets `R`. Simple paths between rome nodes, weighted by the product of
//! their entries, give an `l x l` matrix `M_R(x)` of Laurent polynomials
//! in `x^-1`, and `det(xI - M) = x^k det(I - M_R(x))`.

use std::fmt::Write as _;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::index::Rank;
use crate::laurent::LaurentPolynomial;
use crate::matrix::IntMatrix;
use crate::poly::IntPolynomial;
use crate::spectral::adjacency;

/// A sorted, duplicate-free set of 1-based node indices.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RomeSpec {
    nodes: Vec<usize>,
}

impl RomeSpec {
    /// Validates indices against a `size x size` matrix.
    pub fn new(mut nodes: Vec<usize>, size: usize) -> Result<Self> {
        for &v in &nodes {
            if v == 0 || v > size {
                return Err(Error::IndexOutOfRange { index: v, max: size });
            }
        }
        nodes.sort_unstable();
        nodes.dedup();
        Ok(RomeSpec { nodes })
    }

    /// Every node of a `size x size` matrix.
    pub fn all(size: usize) -> Self {
        RomeSpec {
            nodes: (1..=size).collect(),
        }
    }

    pub fn nodes(&self) -> &[usize] {
        &self.nodes
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn contains(&self, v: usize) -> bool {
        self.nodes.binary_search(&v).is_ok()
    }

    fn fits(&self, m: &IntMatrix) -> Result<()> {
        match self.nodes.last() {
            Some(&v) if v > m.size() => Err(Error::IndexOutOfRange {
                index: v,
                max: m.size(),
            }),
            _ => Ok(()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimplePath {
    /// 1-based vertices `p_0, ..., p_l`.
    pub vertices: Vec<usize>,
    pub width: BigInt,
}

impl SimplePath {
    pub fn length(&self) -> usize {
        self.vertices.len() - 1
    }

    pub fn start(&self) -> usize {
        self.vertices[0]
    }

    pub fn end(&self) -> usize {
        *self.vertices.last().expect("paths are never empty")
    }
}

/// A directed cycle avoiding `r`, as 1-based vertices, if one exists.
pub fn find_cycle_outside(m: &IntMatrix, r: &RomeSpec) -> Result<Option<Vec<usize>>> {
    r.fits(m)?;
    let adj = adjacency(m);
    let k = m.size();
    let outside: Vec<bool> = (1..=k).map(|v| !r.contains(v)).collect();
    // 0 unvisited, 1 on stack, 2 done
    let mut color = vec![0u8; k];
    for root in 0..k {
        if !outside[root] || color[root] != 0 {
            continue;
        }
        let mut stack: Vec<(usize, usize)> = vec![(root, 0)];
        color[root] = 1;
        while let Some(&(u, next)) = stack.last() {
            let succ = adj[u][next..].iter().position(|&w| outside[w]).map(|p| p + next);
            match succ {
                None => {
                    color[u] = 2;
                    stack.pop();
                }
                Some(p) => {
                    stack.last_mut().expect("nonempty").1 = p + 1;
                    let w = adj[u][p];
                    match color[w] {
                        0 => {
                            color[w] = 1;
                            stack.push((w, 0));
                        }
                        1 => {
                            let from = stack.iter().position(|&(v, _)| v == w).expect("on stack");
                            return Ok(Some(stack[from..].iter().map(|&(v, _)| v + 1).collect()));
                        }
                        _ => {}
                    }
                }
            }
        }
    }
    Ok(None)
}

/// Whether no cycle of the digraph of `m` avoids `r`.
pub fn rome_check(m: &IntMatrix, r: &RomeSpec) -> Result<bool> {
    Ok(find_cycle_outside(m, r)?.is_none())
}

fn require_rome(m: &IntMatrix, r: &RomeSpec) -> Result<()> {
    match find_cycle_outside(m, r)? {
        Some(cycle) => Err(Error::NotARome(cycle)),
        None => Ok(()),
    }
}

/// Every simple path from a rome node to a rome node with all interior
/// vertices outside the rome, in DFS order from each start node.
pub fn enumerate_simple_paths(m: &IntMatrix, r: &RomeSpec) -> Result<Vec<SimplePath>> {
    require_rome(m, r)?;
    let adj = adjacency(m);
    let mut out = Vec::new();
    for &start in r.nodes() {
        let mut path = vec![start];
        extend_paths(m, r, &adj, &mut path, BigInt::one(), &mut out);
    }
    Ok(out)
}

fn extend_paths(
    m: &IntMatrix,
    r: &RomeSpec,
    adj: &[Vec<usize>],
    path: &mut Vec<usize>,
    width: BigInt,
    out: &mut Vec<SimplePath>,
) {
    let u = *path.last().expect("nonempty");
    for &w0 in &adj[u - 1] {
        let w = w0 + 1;
        let wd = &width * m.entry(u, w);
        path.push(w);
        if r.contains(w) {
            out.push(SimplePath {
                vertices: path.clone(),
                width: wd,
            });
        } else {
            // the complement is acyclic, so this recursion terminates
            extend_paths(m, r, adj, path, wd, out);
        }
        path.pop();
    }
}

/// `a_ij(x) = sum_p w(p) x^(-l(p))` over simple paths from the `i`-th to
/// the `j`-th rome node.
pub fn rome_matrix(m: &IntMatrix, r: &RomeSpec) -> Result<Vec<Vec<LaurentPolynomial>>> {
    let paths = enumerate_simple_paths(m, r)?;
    let pos = |v: usize| r.nodes().binary_search(&v).expect("rome node");
    let l = r.len();
    let mut a = vec![vec![LaurentPolynomial::zero(); l]; l];
    for p in &paths {
        let term = LaurentPolynomial::monomial(p.width.clone(), -(p.length() as i64));
        let cell = &mut a[pos(p.start())][pos(p.end())];
        *cell = &*cell + &term;
    }
    Ok(a)
}

/// Exact determinant of a square Laurent matrix by expansion over column
/// subsets.
pub fn laurent_determinant(a: &[Vec<LaurentPolynomial>]) -> LaurentPolynomial {
    let l = a.len();
    assert!(l < usize::BITS as usize, "matrix too large for subset expansion");
    let mut dp = vec![LaurentPolynomial::zero(); 1 << l];
    dp[0] = LaurentPolynomial::one();
    for mask in 0usize..(1 << l) {
        if dp[mask].is_zero() {
            continue;
        }
        let row = mask.count_ones() as usize;
        if row == l {
            continue;
        }
        for (c, entry) in a[row].iter().enumerate() {
            if mask & (1 << c) != 0 || entry.is_zero() {
                continue;
            }
            let term = &dp[mask] * entry;
            let inversions = (mask >> (c + 1)).count_ones();
            let next = mask | (1 << c);
            dp[next] = if inversions % 2 == 0 {
                &dp[next] + &term
            } else {
                &dp[next] - &term
            };
        }
    }
    dp.pop().expect("table has a full-mask entry")
}

/// `det(xI - M)` computed as `x^k det(I - M_R(x))`.
pub fn rome_char_poly(m: &IntMatrix, r: &RomeSpec) -> Result<IntPolynomial> {
    let a = rome_matrix(m, r)?;
    let shifted: Vec<Vec<LaurentPolynomial>> = a
        .iter()
        .enumerate()
        .map(|(i, row)| {
            row.iter()
                .enumerate()
                .map(|(j, e)| if i == j { &LaurentPolynomial::one() - e } else { -e })
                .collect()
        })
        .collect();
    let det = laurent_determinant(&shifted).shift(m.size() as i64);
    Ok(det
        .to_polynomial()
        .expect("x^k clears every negative power of the rome determinant"))
}

/// `Q_n(x) = x^n - 2(n-1) (x^(n-1) + ... + x) + 1`.
pub fn q_polynomial(rank: Rank) -> IntPolynomial {
    let n = rank.get();
    let mid = -BigInt::from(2 * (n - 1));
    let mut c = vec![mid; n + 1];
    c[0] = BigInt::one();
    c[n] = BigInt::one();
    IntPolynomial::new(c)
}

/// Grows `start` into a rome by repeatedly adding the node chosen by
/// `pick` from a surviving cycle. Plumbing only; the result need not be
/// minimal.
pub fn grow_rome<F>(m: &IntMatrix, start: RomeSpec, mut pick: F) -> Result<RomeSpec>
where
    F: FnMut(&[usize]) -> usize,
{
    let mut r = start;
    while let Some(cycle) = find_cycle_outside(m, &r)? {
        let v = pick(&cycle);
        debug_assert!(cycle.contains(&v));
        let mut nodes = r.nodes;
        nodes.push(v);
        r = RomeSpec::new(nodes, m.size())?;
    }
    Ok(r)
}

/// A rome built greedily from the empty set, taking the first node of each
/// surviving cycle.
pub fn find_rome_greedy(m: &IntMatrix) -> RomeSpec {
    grow_rome(m, RomeSpec { nodes: Vec::new() }, |c| c[0]).expect("indices come from the matrix")
}

/// Weighted digraph of `m`, one `i -> j [w]` line per nonzero entry.
pub fn to_graph_text(m: &IntMatrix) -> String {
    let mut s = String::from("digraph {\n");
    for i in 1..=m.size() {
        writeln!(s, "  {i}").expect("writing to a String");
    }
    for i in 1..=m.size() {
        for j in 1..=m.size() {
            let w = m.entry(i, j);
            if !w.is_zero() {
                writeln!(s, "  {i} -> {j} [{w}]").expect("writing to a String");
            }
        }
    }
    s.push_str("}\n");
    s
}
