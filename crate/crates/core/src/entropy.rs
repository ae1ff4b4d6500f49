//! Volume entropy `log(lambda_n)` and the cross-checked pipeline.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Pow};

use crate::error::{Error, Result};
use crate::index::{PresentationSpec, Rank};
use crate::markov::build_markov_from_images;
use crate::reduce::{compacted_matrix, super_compacted_matrix};
use crate::rome::{q_polynomial, rome_char_poly, RomeSpec};
use crate::roots::{bisect, largest_real_root, rational, Bracket};
use crate::spectral::{char_poly_exact, default_max_iter, power_iteration, SpectralEstimate};

/// Smallest discrepancy between routes that still counts as agreement.
pub const AGREEMENT_FLOOR: f64 = 1e-7;

/// Agreement threshold for a given working tolerance.
pub fn agreement_threshold(tol: f64) -> f64 {
    AGREEMENT_FLOOR.max(10.0 * tol)
}

fn int(x: usize) -> BigRational {
    BigRational::from_integer(BigInt::from(x))
}

/// Certified bracket around the root of `Q_n` in `(1, 2n - 1)`.
pub fn lambda_bracket(rank: Rank, tol: f64) -> Result<Bracket> {
    rank.require(3)?;
    let n = rank.get();
    bisect(&q_polynomial(rank), int(1), int(2 * n - 1), tol)
}

/// `lambda_n` to within `tol`.
pub fn lambda_n(rank: Rank, tol: f64) -> Result<f64> {
    Ok(lambda_bracket(rank, tol)?.value())
}

/// `2n - 1 - (2n - 1)^(2 - n)`, exactly.
pub fn lower_bound(rank: Rank) -> Result<BigRational> {
    rank.require(4)?;
    let n = rank.get();
    let g = int(2 * n - 1);
    let eps = BigRational::one() / Pow::pow(&g, (n - 2) as u32);
    Ok(g - eps)
}

/// Exact sign test of `Q_n` at both ends of
/// `(2n - 1 - (2n - 1)^(2 - n), 2n - 1)`.
pub fn bounds_check(rank: Rank) -> Result<bool> {
    let q = q_polynomial(rank);
    let lo = lower_bound(rank)?;
    let hi = int(2 * rank.get() - 1);
    Ok(q.sign_at(&lo).is_lt() && q.sign_at(&hi).is_gt())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Route {
    MarkovPower,
    CompactedPower,
    SupercompactedPower,
    RomeRoot,
    CharpolyRoot,
}

impl Route {
    pub const ALL: [Route; 5] = [
        Route::MarkovPower,
        Route::CompactedPower,
        Route::SupercompactedPower,
        Route::RomeRoot,
        Route::CharpolyRoot,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Route::MarkovPower => "markov-power",
            Route::CompactedPower => "compacted-power",
            Route::SupercompactedPower => "supercompacted-power",
            Route::RomeRoot => "rome-root",
            Route::CharpolyRoot => "charpoly-root",
        }
    }
}

impl fmt::Display for Route {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum RouteValue {
    Estimate(SpectralEstimate),
    Root { value: f64, bracket: Bracket },
}

impl RouteValue {
    pub fn value(&self) -> f64 {
        match self {
            RouteValue::Estimate(e) => e.value,
            RouteValue::Root { value, .. } => *value,
        }
    }

    fn sound(&self) -> bool {
        match self {
            RouteValue::Estimate(e) => e.converged,
            RouteValue::Root { .. } => true,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct EntropyReport {
    pub spec: PresentationSpec,
    pub lambda: f64,
    /// Natural log of `lambda`.
    pub entropy: f64,
    pub routes: BTreeMap<Route, RouteValue>,
    /// `None` below rank 4, where no lower bound is stated.
    pub bounds_hold: Option<bool>,
    /// Largest pairwise discrepancy among the route values.
    pub agreement: f64,
    pub threshold: f64,
    /// Every route converged and `agreement <= threshold`.
    pub consistent: bool,
}

impl EntropyReport {
    pub fn rank(&self) -> Rank {
        self.spec.rank()
    }

    pub fn entropy_base2(&self) -> f64 {
        self.entropy / std::f64::consts::LN_2
    }
}

fn root_route(p: &crate::poly::IntPolynomial, tol: f64) -> Result<RouteValue> {
    let bracket = largest_real_root(p, tol)?.ok_or(Error::ZeroPolynomial)?;
    Ok(RouteValue::Root {
        value: bracket.value(),
        bracket,
    })
}

/// Runs the five routes to `lambda_n` and cross-checks them. The reported
/// `lambda` is the certified root of the rome polynomial.
pub fn volume_entropy(spec: &PresentationSpec, tol: f64) -> Result<EntropyReport> {
    rational(tol)?;
    let rank = spec.rank();
    let threshold = agreement_threshold(tol);
    if rank.get() == 2 {
        return Ok(EntropyReport {
            spec: *spec,
            lambda: 1.0,
            entropy: 0.0,
            routes: BTreeMap::new(),
            bounds_hold: None,
            agreement: 0.0,
            threshold,
            consistent: true,
        });
    }
    let power = |m: &crate::matrix::IntMatrix| -> Result<RouteValue> {
        power_iteration(m, tol, default_max_iter(m.size())).map(RouteValue::Estimate)
    };
    let (markov, rest) = rayon::join(
        || -> Result<RouteValue> { power(&build_markov_from_images(spec)?) },
        || -> Result<Vec<(Route, RouteValue)>> {
            let n = rank.get();
            let c = compacted_matrix(rank)?;
            let sc = super_compacted_matrix(rank)?;
            let rome = RomeSpec::new(vec![n - 1, n], n)?;
            Ok(vec![
                (Route::CompactedPower, power(&c)?),
                (Route::SupercompactedPower, power(&sc)?),
                (Route::RomeRoot, root_route(&rome_char_poly(&sc, &rome)?, tol)?),
                (Route::CharpolyRoot, root_route(&char_poly_exact(&sc), tol)?),
            ])
        },
    );
    let mut routes = BTreeMap::new();
    routes.insert(Route::MarkovPower, markov?);
    routes.extend(rest?);

    let values: Vec<f64> = routes.values().map(RouteValue::value).collect();
    let hi = values.iter().cloned().fold(f64::MIN, f64::max);
    let lo = values.iter().cloned().fold(f64::MAX, f64::min);
    let agreement = hi - lo;
    let consistent = agreement <= threshold && routes.values().all(RouteValue::sound);
    let lambda = routes[&Route::RomeRoot].value();
    let bounds_hold = if rank.get() >= 4 { Some(bounds_check(rank)?) } else { None };
    Ok(EntropyReport {
        spec: *spec,
        lambda,
        entropy: lambda.ln(),
        routes,
        bounds_hold,
        agreement,
        threshold,
        consistent,
    })
}

/// Which ranks appear in an entropy table.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum TablePolicy {
    /// Every rank; `lambda_n` does not depend on orientability.
    #[default]
    AllRanks,
    /// Only even ranks, where an orientable presentation exists.
    OrientableOnly,
}

#[derive(Debug, Clone, PartialEq)]
pub struct TableRow {
    pub n: usize,
    pub lambda: f64,
    pub entropy: f64,
    /// `None` for `n = 3`, which has no stated lower bound.
    pub lower: Option<f64>,
    pub upper: f64,
    /// `log(2n - 1) - log(lambda_n)`.
    pub gap: f64,
}

pub fn entropy_table(from: usize, to: usize, policy: TablePolicy, tol: f64) -> Result<Vec<TableRow>> {
    if from < 3 || from > to {
        return Err(Error::InvalidRange { from, to });
    }
    (from..=to)
        .filter(|n| policy == TablePolicy::AllRanks || n % 2 == 0)
        .map(|n| {
            let rank = Rank::pipeline(n)?;
            let lambda = lambda_n(rank, tol)?;
            let upper = (2 * n - 1) as f64;
            let lower = (n >= 4).then(|| upper - upper.powi(-((n - 2) as i32)));
            Ok(TableRow {
                n,
                lambda,
                entropy: lambda.ln(),
                lower,
                upper,
                gap: upper.ln() - lambda.ln(),
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::IntPolynomial;
    use crate::roots::certifies;
    use crate::spectral::DEFAULT_TOLERANCE;

    fn rank(n: usize) -> Rank {
        Rank::new(n).unwrap()
    }

    #[test]
    fn lambda_small_ranks() {
        // oracle: closed form (5 + sqrt 21) / 2 for x^3 - 4x^2 - 4x + 1
        let l3 = lambda_n(rank(3), 1e-12).unwrap();
        assert!((l3 - (5.0 + 21f64.sqrt()) / 2.0).abs() < 1e-11);
        let l4 = lambda_n(rank(4), 1e-12).unwrap();
        assert!((l4 - 6.9798).abs() < 1e-4);
        assert!(l4 > 7.0 - 1.0 / 49.0 && l4 < 7.0);
        assert_eq!(lambda_n(rank(2), 1e-9), Err(Error::RankTooSmall { rank: 2, min: 3 }));
    }

    #[test]
    fn bracket_is_certified() {
        for n in 3..=15 {
            let b = lambda_bracket(rank(n), 1e-12).unwrap();
            assert!(certifies(&q_polynomial(rank(n)), &b));
            assert!(b.iterations <= crate::roots::MAX_BISECTIONS);
        }
    }

    #[test]
    fn bounds() {
        assert!(bounds_check(rank(4)).unwrap());
        assert!(bounds_check(rank(30)).unwrap());
        assert!(bounds_check(rank(3)).is_err());
        assert_eq!(lower_bound(rank(4)).unwrap(), BigRational::new(BigInt::from(342), BigInt::from(49)));
    }

    #[test]
    fn rank_two_is_flat() {
        for spec in [PresentationSpec::orientable(2).unwrap(), PresentationSpec::non_orientable(2).unwrap()] {
            let r = volume_entropy(&spec, DEFAULT_TOLERANCE).unwrap();
            assert_eq!(r.entropy, 0.0);
            assert!(r.routes.is_empty());
        }
    }

    #[test]
    fn report_rank_four() {
        let r = volume_entropy(&PresentationSpec::orientable(4).unwrap(), DEFAULT_TOLERANCE).unwrap();
        assert!(r.consistent, "{r:?}");
        assert_eq!(r.routes.len(), 5);
        assert!(r.agreement <= 1e-8);
        assert!((r.lambda - 6.9798).abs() < 1e-4);
        assert!((r.entropy - 1.9431).abs() < 1e-4);
        assert_eq!(r.bounds_hold, Some(true));
        assert!(volume_entropy(&PresentationSpec::orientable(4).unwrap(), 0.0).is_err());
    }

    #[test]
    fn non_orientable_three_matches() {
        let r = volume_entropy(&PresentationSpec::non_orientable(3).unwrap(), DEFAULT_TOLERANCE).unwrap();
        assert!(r.consistent);
        assert!((r.lambda - 4.7913).abs() < 1e-4);
        assert_eq!(r.bounds_hold, None);
    }

    #[test]
    fn table_rows() {
        let rows = entropy_table(3, 12, TablePolicy::AllRanks, 1e-12).unwrap();
        assert_eq!(rows.len(), 10);
        assert_eq!(rows[0].lower, None);
        let r4 = &rows[1];
        assert!(r4.lambda > 6.97959 && r4.lambda < 7.0 && r4.gap < 0.003);
        assert!(rows.windows(2).all(|w| w[0].lambda < w[1].lambda));
        assert_eq!(entropy_table(3, 12, TablePolicy::OrientableOnly, 1e-9).unwrap().len(), 5);
        assert_eq!(entropy_table(5, 3, TablePolicy::AllRanks, 1e-9), Err(Error::InvalidRange { from: 5, to: 3 }));
        assert!(entropy_table(2, 3, TablePolicy::AllRanks, 1e-9).is_err());
    }

    #[test]
    fn q_sign_pattern() {
        // Q_n(1) < 0 < Q_n(2n - 1) makes the bisection bracket valid
        for n in 3..=10 {
            let q: IntPolynomial = q_polynomial(rank(n));
            assert!(q.sign_at(&int(1)).is_lt());
            assert!(q.sign_at(&int(2 * n - 1)).is_gt());
        }
    }
}
