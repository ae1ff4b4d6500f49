use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive};
use proptest::prelude::*;

use volent_core::markov::markov_from_images;
use volent_core::reduce::upper_half_blocks;
use volent_core::rome::{enumerate_simple_paths, grow_rome};
use volent_core::roots::largest_real_root;
use volent_core::spectral::spectral_radius;
use volent_core::{
    char_poly_exact, compacted_matrix, divided_compacted_matrix, lambda_bracket, lambda_n,
    q_polynomial, BlockView, IntMatrix, Orientability, Rank, RomeSpec,
};

fn rank(n: usize) -> Rank {
    Rank::new(n).unwrap()
}

#[test]
fn block_rows_and_columns_are_permutations_of_the_first() {
    for n in 3..=7 {
        let r = rank(n);
        let m = markov_from_images(r, Orientability::Orientable).unwrap();
        let v = BlockView::new(&m, r.generators(), r.block_size()).unwrap();
        let g = r.generators();
        let key = |b: IntMatrix| format!("{b:?}");
        let mut first: Vec<String> = (1..=g).map(|t| key(v.block(1, t))).collect();
        first.sort();
        for l in 1..=g {
            let mut row: Vec<String> = (1..=g).map(|t| key(v.block(l, t))).collect();
            let mut col: Vec<String> = (1..=g).map(|t| key(v.block(t, l))).collect();
            row.sort();
            col.sort();
            assert_eq!(row, first, "n = {n}, block row {l}");
            assert_eq!(col, first, "n = {n}, block column {l}");
        }
    }
}

#[test]
fn max_row_sums_of_powers_agree() {
    for n in 3..=6 {
        let m = markov_from_images(rank(n), Orientability::Orientable).unwrap();
        let c = compacted_matrix(rank(n)).unwrap();
        for p in 1..=4 {
            assert_eq!(m.pow(p).max_row_sum(), c.pow(p).max_row_sum(), "n = {n}, power {p}");
        }
    }
}

/// `w = (2 v_1, ..., 2 v_(n-1), v_n, v_n, 2 v_(n+1), ...)`, twice the
/// transported vector so it stays integral.
fn transport(v: &[BigInt], n: usize) -> Vec<BigInt> {
    let two = BigInt::from(2);
    let mut w: Vec<BigInt> = v[..n - 1].iter().map(|x| x * &two).collect();
    w.push(v[n - 1].clone());
    w.push(v[n - 1].clone());
    w.extend(v[n..].iter().map(|x| x * &two));
    w
}

fn apply(m: &IntMatrix, v: &[BigInt]) -> Vec<BigInt> {
    m.rows()
        .map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum())
        .collect()
}

proptest! {
    #[test]
    fn transport_intertwines_on_symmetric_vectors(
        n in 3usize..9,
        seed in prop::collection::vec(-20i64..20, 9),
    ) {
        // v_i = v_(2n - i)
        let k = 2 * n - 1;
        let v: Vec<BigInt> = (0..k).map(|i| BigInt::from(seed[i.min(k - 1 - i)])).collect();
        let c = compacted_matrix(rank(n)).unwrap();
        let dc = divided_compacted_matrix(rank(n)).unwrap();
        prop_assert_eq!(apply(&dc, &transport(&v, n)), transport(&apply(&c, &v), n));
    }

    #[test]
    fn rome_paths_are_short(
        k in 1usize..7,
        entries in prop::collection::vec(0i64..3, 36),
        picks in prop::collection::vec(0usize..100, 8),
    ) {
        let m = IntMatrix::from_fn(k, |i, j| entries[(i - 1) * 6 + (j - 1)]);
        let mut it = picks.into_iter().cycle();
        let r = grow_rome(&m, RomeSpec::new(vec![], k).unwrap(), |c| c[it.next().unwrap() % c.len()]).unwrap();
        for p in enumerate_simple_paths(&m, &r).unwrap() {
            prop_assert!(p.length() <= k - r.len() + 1);
            prop_assert!(p.width.is_positive());
            prop_assert!(r.contains(p.start()) && r.contains(p.end()));
            prop_assert!(p.vertices[1..p.length()].iter().all(|v| !r.contains(*v)));
        }
    }

    #[test]
    fn power_iteration_matches_largest_root(
        k in 1usize..6,
        entries in prop::collection::vec(1i64..5, 25),
    ) {
        let m = IntMatrix::from_fn(k, |i, j| entries[(i - 1) * 5 + (j - 1)]);
        let est = spectral_radius(&m).unwrap();
        let root = largest_real_root(&char_poly_exact(&m), 1e-12).unwrap().unwrap();
        prop_assert!((est.value - root.value()).abs() < 1e-7);
    }

    #[test]
    fn constant_term_is_signed_determinant(
        k in 1usize..6,
        entries in prop::collection::vec(-3i64..4, 25),
    ) {
        let m = IntMatrix::from_fn(k, |i, j| entries[(i - 1) * 5 + (j - 1)]);
        let p = char_poly_exact(&m);
        let det = m.determinant();
        let want = if k % 2 == 0 { det } else { -det };
        prop_assert_eq!(p.coeff(0), want);
    }
}

#[test]
fn perron_vector_of_compacted_transports() {
    for n in 3..=8 {
        let c = compacted_matrix(rank(n)).unwrap();
        let dc = divided_compacted_matrix(rank(n)).unwrap();
        let lambda = lambda_n(rank(n), 1e-14).unwrap();
        // Perron vector by repeated multiplication
        let cf = c.to_f64_rows();
        let mut v = vec![1.0; 2 * n - 1];
        for _ in 0..200 {
            let w: Vec<f64> = cf.iter().map(|r| r.iter().zip(&v).map(|(a, b)| a * b).sum()).collect();
            let s = w.iter().cloned().fold(0.0, f64::max);
            v = w.into_iter().map(|x| x / s).collect();
        }
        let mut t: Vec<f64> = v[..n - 1].to_vec();
        t.extend([v[n - 1] / 2.0, v[n - 1] / 2.0]);
        t.extend(&v[n..]);
        let dcf = dc.to_f64_rows();
        for (row, ti) in dcf.iter().zip(&t) {
            let lhs: f64 = row.iter().zip(&t).map(|(a, b)| a * b).sum();
            assert!((lhs - lambda * ti).abs() < 1e-9, "n = {n}");
        }
    }
}

#[test]
fn z_conjugate_has_two_by_two_circulant_form() {
    for n in 3..=8 {
        let dc = divided_compacted_matrix(rank(n)).unwrap();
        let z = volent_core::reduce::z_conjugate(&dc).unwrap();
        let (d11, d12) = upper_half_blocks(&dc).unwrap();
        let d12j = d12.reverse_cols();
        let want = IntMatrix::from_blocks(&[vec![d11.clone(), d12j.clone()], vec![d12j, d11]]).unwrap();
        assert_eq!(z, want, "n = {n}");
    }
}

#[test]
fn lambda_increases_with_rank() {
    let values: Vec<f64> = (3..=30).map(|n| lambda_n(rank(n), 1e-12).unwrap()).collect();
    assert!(values.windows(2).all(|w| w[0] < w[1]));
    for (n, v) in (3..=30).zip(&values) {
        assert!(*v < (2 * n - 1) as f64);
    }
}

#[test]
fn brackets_have_opposite_signs() {
    for n in 3..=30 {
        let q = q_polynomial(rank(n));
        let b = lambda_bracket(rank(n), 1e-12).unwrap();
        assert!(q.sign_at(&b.lo).is_lt() || b.lo == b.hi);
        assert!(q.sign_at(&b.hi).is_gt() || b.lo == b.hi);
        assert!(b.width().to_f64().unwrap() <= 1e-12);
    }
}
