//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any
//! failure.

use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Pow, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use volent_core::fixtures;
use volent_core::markov::{markov_from_blocks, markov_from_images};
use volent_core::reduce::{fold_centrally_symmetric, sum_first_block_row};
use volent_core::rome::{grow_rome, rome_check};
use volent_core::spectral::spectral_radius;
use volent_core::verify::grid_diffs;
use volent_core::{
    bounds_check, build_markov_from_images, char_poly_exact, check_j_commutation, compacted_matrix,
    divided_compacted_matrix, q_polynomial, rome_char_poly, rome_matrix, super_compacted_matrix,
    volume_entropy, BlockView, IntMatrix, IntPolynomial, LaurentPolynomial, Orientability,
    PresentationSpec, Rank, RomeSpec,
};

/// Spectral radius agreement between reductions.
const RHO_TOL: f64 = 1e-7;
/// Route agreement inside one entropy report.
const ROUTE_TOL: f64 = 1e-7;
/// Distance of lambda_3 and lambda_4 from the bisection oracle.
const LAMBDA_TOL: f64 = 1e-3;
/// Working tolerance handed to the pipeline.
const PIPELINE_TOL: f64 = 1e-10;
const RANDOM_SEED: u64 = 0x5eed_2024;
const RANDOM_CASES: usize = 100;

type Outcome = Result<String, String>;

fn rank(n: usize) -> Rank {
    Rank::new(n).expect("valid rank")
}

fn forms() -> [Orientability; 2] {
    [Orientability::Orientable, Orientability::NonOrientable]
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn rho(m: &IntMatrix) -> Result<f64, String> {
    let e = spectral_radius(m).map_err(|e| e.to_string())?;
    ensure(e.converged, || format!("power iteration did not converge on size {}", m.size()))?;
    Ok(e.value)
}

fn c1_orientable_grid() -> Outcome {
    let spec = PresentationSpec::orientable(4).unwrap();
    let m = build_markov_from_images(&spec).map_err(|e| e.to_string())?;
    ensure(m.size() == 56, || format!("size {}", m.size()))?;
    let grid = fixtures::rank4_orientable().map_err(|e| e.to_string())?;
    ensure(grid.len() == 21 && grid.iter().all(|r| r.len() == 56), || "grid shape".into())?;
    let diffs = grid_diffs(&m, &grid);
    ensure(diffs.is_empty(), || format!("{} cells differ, first {:?}", diffs.len(), diffs[0]))?;
    Ok("21x56 block rows bit-exact".into())
}

fn c2_non_orientable_grid() -> Outcome {
    let spec = PresentationSpec::non_orientable(3).unwrap();
    let m = build_markov_from_images(&spec).map_err(|e| e.to_string())?;
    ensure(m.size() == 30, || format!("size {}", m.size()))?;
    let grid = fixtures::rank3_non_orientable().map_err(|e| e.to_string())?;
    ensure(grid.len() == 15 && grid.iter().all(|r| r.len() == 30), || "grid shape".into())?;
    let diffs = grid_diffs(&m, &grid);
    let errata: Vec<(usize, usize, BigInt, BigInt)> = fixtures::RANK3_NON_ORIENTABLE_ERRATA
        .iter()
        .map(|&(i, j, g, e)| (i, j, BigInt::from(g), BigInt::from(e)))
        .collect();
    ensure(diffs == errata, || format!("unexpected differences {diffs:?}"))?;

    // The printed cells give the wrong spectral radius; the built rows do not.
    let lambda3 = (5.0 + 21f64.sqrt()) / 2.0;
    let mut printed = m.clone();
    for &(i, j, g, _) in &fixtures::RANK3_NON_ORIENTABLE_ERRATA {
        printed.set(i, j, g);
        // the second half repeats the first, shifted by three blocks
        printed.set(i + 15, (j + 14) % 30 + 1, g);
    }
    let (built, as_printed) = (rho(&m)?, rho(&printed)?);
    ensure((built - lambda3).abs() < RHO_TOL, || format!("built rho {built}"))?;
    ensure((as_printed - lambda3).abs() > 1e-3, || format!("printed rho {as_printed}"))?;
    Ok(format!(
        "446/450 cells bit-exact; the 4 recorded erratum cells differ (printed grid rho {as_printed:.9}, built rho {built:.9})"
    ))
}

fn c3_constructions() -> Outcome {
    for n in 3..=12 {
        for form in forms() {
            let a = markov_from_images(rank(n), form).map_err(|e| e.to_string())?;
            let b = markov_from_blocks(rank(n), form).map_err(|e| e.to_string())?;
            ensure(a == b, || format!("n = {n}, {form:?}"))?;
        }
    }
    Ok("n = 3..12, both forms".into())
}

fn c4_circulant() -> Outcome {
    let mut worst: f64 = 0.0;
    for n in 3..=12 {
        let m = markov_from_images(rank(n), Orientability::Orientable).map_err(|e| e.to_string())?;
        let c = compacted_matrix(rank(n)).map_err(|e| e.to_string())?;
        let gap = (rho(&m)? - rho(&c)?).abs();
        worst = worst.max(gap);
        ensure(gap <= RHO_TOL, || format!("n = {n}: gap {gap:e}"))?;
    }
    Ok(format!("max gap {worst:.1e}"))
}

fn c5_disoriented() -> Outcome {
    let mut worst: f64 = 0.0;
    for n in 3..=12 {
        let c = compacted_matrix(rank(n)).map_err(|e| e.to_string())?;
        ensure(check_j_commutation(&c), || format!("n = {n}: C_n J != J C_n"))?;
        let m = markov_from_images(rank(n), Orientability::NonOrientable).map_err(|e| e.to_string())?;
        let gap = (rho(&m)? - rho(&c)?).abs();
        worst = worst.max(gap);
        ensure(gap <= RHO_TOL, || format!("n = {n}: gap {gap:e}"))?;
    }
    Ok(format!("max gap {worst:.1e}"))
}

fn c6_compaction() -> Outcome {
    for n in 3..=12 {
        let r = rank(n);
        let m = markov_from_images(r, Orientability::Orientable).map_err(|e| e.to_string())?;
        let view = BlockView::new(&m, r.generators(), r.block_size()).map_err(|e| e.to_string())?;
        let c = compacted_matrix(r).map_err(|e| e.to_string())?;
        ensure(sum_first_block_row(&view) == c, || format!("n = {n}"))?;
    }
    Ok("n = 3..12 exact".into())
}

fn c7_spectrum_split() -> Outcome {
    let x_minus_one = IntPolynomial::new(vec![-1, 1]);
    for n in 3..=10 {
        let r = rank(n);
        let c = compacted_matrix(r).map_err(|e| e.to_string())?;
        let dc = divided_compacted_matrix(r).map_err(|e| e.to_string())?;
        ensure(char_poly_exact(&dc) == &x_minus_one * &char_poly_exact(&c), || {
            format!("n = {n}: char(DC) != (x-1) char(C)")
        })?;
        let folded = fold_centrally_symmetric(&dc).map_err(|e| e.to_string())?;
        let sc = super_compacted_matrix(r).map_err(|e| e.to_string())?;
        ensure(folded == sc, || format!("n = {n}: D11 + D12 J != SC_n"))?;
    }
    Ok("n = 3..10 exact".into())
}

/// Closed form of the rome matrix of `SC_n` on `{n - 1, n}`.
fn closed_rome_matrix(n: usize) -> Vec<Vec<LaurentPolynomial>> {
    let beta = BigInt::from(2 * n - 3);
    let inv = LaurentPolynomial::monomial(1, -1);
    let z = (2..n as i64).fold(LaurentPolynomial::zero(), |acc, l| {
        &acc + &LaurentPolynomial::monomial(1, -l)
    });
    let two_z = z.scale(&BigInt::from(2));
    let inv_plus_z = &inv + &z;
    vec![
        vec![
            inv_plus_z.scale(&beta),
            &inv.scale(&(&beta - 1)) + &two_z.scale(&beta),
        ],
        vec![inv_plus_z.clone(), &inv + &two_z],
    ]
}

fn c8_rome() -> Outcome {
    for n in 3..=20 {
        let r = rank(n);
        let sc = super_compacted_matrix(r).map_err(|e| e.to_string())?;
        let rome = RomeSpec::new(vec![n - 1, n], n).map_err(|e| e.to_string())?;
        ensure(rome_check(&sc, &rome) == Ok(true), || format!("n = {n}: not a rome"))?;
        let a = rome_matrix(&sc, &rome).map_err(|e| e.to_string())?;
        ensure(a == closed_rome_matrix(n), || format!("n = {n}: M_R(x) = {a:?}"))?;
        let p = rome_char_poly(&sc, &rome).map_err(|e| e.to_string())?;
        ensure(p == char_poly_exact(&sc), || format!("n = {n}: rome != exact"))?;
        ensure(p == q_polynomial(r), || format!("n = {n}: rome != Q_n"))?;
    }
    Ok("n = 3..20 exact".into())
}

fn int(x: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(x))
}

fn c9_polynomial_facts() -> Outcome {
    for n in 3..=30i64 {
        let q = q_polynomial(rank(n as usize));
        ensure(q.eval(&int(0)) == int(1), || format!("n = {n}: Q(0)"))?;
        ensure(q.eval(&int(1)) == int(-2 * n * (n - 2)), || format!("n = {n}: Q(1)"))?;
        ensure(q.eval(&int(2 * n - 1)) == int(2 * n), || format!("n = {n}: Q(2n-1)"))?;
        ensure(q.reversed() == q, || format!("n = {n}: not reciprocal"))?;
        // x^n Q(1/x) = Q(x) at a few rational points
        for (a, b) in [(2, 3), (-5, 7), (9, 4)] {
            let x = BigRational::new(a.into(), b.into());
            let lhs = Pow::pow(&x, n as u32) * q.eval(&(BigRational::one() / &x));
            ensure(lhs == q.eval(&x), || format!("n = {n}: reciprocity at {a}/{b}"))?;
        }
    }
    Ok("n = 3..30 exact".into())
}

fn c10_bounds() -> Outcome {
    for n in 4..=30usize {
        let q = q_polynomial(rank(n));
        let g = int(2 * n as i64 - 1);
        let lower = &g - BigRational::one() / Pow::pow(&g, (n - 2) as u32);
        ensure(q.eval(&lower) < BigRational::zero(), || format!("n = {n}: Q(lower) >= 0"))?;
        ensure(q.eval(&g) > BigRational::zero(), || format!("n = {n}: Q(2n-1) <= 0"))?;
        ensure(bounds_check(rank(n)) == Ok(true), || format!("n = {n}: bounds_check"))?;
    }
    Ok("n = 4..30 certified".into())
}

/// Independent f64 bisection on explicit coefficients `x^n - c (x^(n-1) + ... + x) + 1`.
fn oracle_lambda(n: usize) -> f64 {
    let c = 2.0 * (n as f64 - 1.0);
    let f = |x: f64| x.powi(n as i32) - c * (1..n).map(|j| x.powi(j as i32)).sum::<f64>() + 1.0;
    let (mut lo, mut hi) = (1.0, 2.0 * n as f64 - 1.0);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if f(mid) < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

fn c11_consensus() -> Outcome {
    let mut worst: f64 = 0.0;
    for n in 3..=12 {
        for orientable in [true, false] {
            if orientable && n % 2 == 1 {
                continue;
            }
            let spec = PresentationSpec::new(n, orientable).unwrap();
            let r = volume_entropy(&spec, PIPELINE_TOL).map_err(|e| e.to_string())?;
            ensure(r.routes.len() == 5, || format!("{spec}: {} routes", r.routes.len()))?;
            ensure(r.consistent, || format!("{spec}: inconsistent report"))?;
            ensure(r.agreement <= ROUTE_TOL, || format!("{spec}: agreement {:e}", r.agreement))?;
            worst = worst.max(r.agreement);
            if n <= 4 {
                let oracle = oracle_lambda(n);
                ensure((r.lambda - oracle).abs() <= LAMBDA_TOL, || {
                    format!("{spec}: lambda {} vs oracle {oracle}", r.lambda)
                })?;
            }
        }
    }
    ensure((oracle_lambda(3) - 4.7913).abs() <= LAMBDA_TOL, || "lambda_3 oracle".into())?;
    ensure((oracle_lambda(4) - 6.9798).abs() <= LAMBDA_TOL, || "lambda_4 oracle".into())?;
    for orientable in [true, false] {
        let spec = PresentationSpec::new(2, orientable).unwrap();
        let r = volume_entropy(&spec, PIPELINE_TOL).map_err(|e| e.to_string())?;
        ensure(r.entropy == 0.0, || format!("{spec}: entropy {}", r.entropy))?;
    }
    Ok(format!("max route spread {worst:.1e}"))
}

fn random_matrix(rng: &mut ChaCha8Rng) -> IntMatrix {
    let k = rng.gen_range(1..=8);
    IntMatrix::from_fn(k, |_, _| -> i64 {
        // sparse enough that the grown romes vary in size
        if rng.gen_bool(0.45) {
            rng.gen_range(1..=3)
        } else {
            0
        }
    })
}

fn c12_random_romes() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(RANDOM_SEED);
    let mut sizes = Vec::new();
    for case in 0..RANDOM_CASES {
        let m = random_matrix(&mut rng);
        let k = m.size();
        let start: Vec<usize> = (1..=k).filter(|_| rng.gen_bool(0.15)).collect();
        let start = RomeSpec::new(start, k).unwrap();
        let rome = grow_rome(&m, start, |cycle| cycle[rng.gen_range(0..cycle.len())])
            .map_err(|e| e.to_string())?;
        ensure(rome_check(&m, &rome) == Ok(true), || format!("case {case}: grown set is not a rome"))?;
        let p = rome_char_poly(&m, &rome).map_err(|e| e.to_string())?;
        let q = char_poly_exact(&m);
        ensure(p == q, || format!("case {case}: {m:?} rome {:?}: {p} vs {q}", rome.nodes()))?;
        sizes.push((k, rome.len()));
    }
    let proper = sizes.iter().filter(|(k, l)| l < k).count();
    Ok(format!("{RANDOM_CASES} cases, {proper} with a proper rome"))
}

struct Criterion {
    id: u32,
    title: &'static str,
    limit: Option<Duration>,
    run: fn() -> Outcome,
}

fn main() {
    let secs = |s| Some(Duration::from_secs(s));
    let criteria = [
        Criterion { id: 1, title: "golden fixture, orientable rank 4", limit: secs(1), run: c1_orientable_grid },
        Criterion { id: 2, title: "golden fixture, non-orientable rank 3", limit: secs(1), run: c2_non_orientable_grid },
        Criterion { id: 3, title: "image and block constructions agree", limit: secs(5), run: c3_constructions },
        Criterion { id: 4, title: "circulant collapse rho(M+) = rho(C)", limit: secs(10), run: c4_circulant },
        Criterion { id: 5, title: "disoriented collapse rho(M-) = rho(C)", limit: None, run: c5_disoriented },
        Criterion { id: 6, title: "first block row sum equals C_n", limit: None, run: c6_compaction },
        Criterion { id: 7, title: "char(DC) = (x-1) char(C), fold = SC", limit: None, run: c7_spectrum_split },
        Criterion { id: 8, title: "rome matrix and polynomial", limit: secs(5), run: c8_rome },
        Criterion { id: 9, title: "Q_n values and reciprocity", limit: None, run: c9_polynomial_facts },
        Criterion { id: 10, title: "certified bounds on lambda_n", limit: None, run: c10_bounds },
        Criterion { id: 11, title: "five-route consensus", limit: None, run: c11_consensus },
        Criterion { id: 12, title: "random romes match char poly", limit: secs(10), run: c12_random_romes },
    ];
    let mut failed = 0;
    for c in &criteria {
        let t = Instant::now();
        let mut outcome = (c.run)();
        let dt = t.elapsed();
        if let (Ok(_), Some(limit)) = (&outcome, c.limit) {
            if dt > limit {
                outcome = Err(format!("took {dt:.2?}, limit {limit:?}"));
            }
        }
        match outcome {
            Ok(note) => println!("PASS [{:>2}] {} ({dt:.2?}): {note}", c.id, c.title),
            Err(why) => {
                failed += 1;
                println!("FAIL [{:>2}] {} ({dt:.2?}): {why}", c.id, c.title);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
