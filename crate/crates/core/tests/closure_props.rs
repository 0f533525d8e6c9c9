mod common;

use common::*;
use grassdeg_core::closure::{
    affine_member, boundary_generator, degeneration_error, epsilon_family_check, orbit_dimension, projective_member,
    rank_exact, GRMatrix, GaussianRational, ProjPoint,
};
use grassdeg_core::scalar::rat;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Rank as the size of the largest nonzero minor, minors by cofactor expansion.
fn naive_rank(m: &GRMatrix) -> usize {
    fn det(m: &[Vec<GaussianRational>]) -> GaussianRational {
        if m.len() == 1 {
            return m[0][0].clone();
        }
        let mut acc = GaussianRational::zero();
        for (c, a) in m[0].iter().enumerate() {
            let minor: Vec<Vec<GaussianRational>> =
                m[1..].iter().map(|row| row.iter().enumerate().filter(|&(j, _)| j != c).map(|(_, v)| v.clone()).collect()).collect();
            let term = a * &det(&minor);
            if c % 2 == 0 { acc += &term } else { acc -= &term }
        }
        acc
    }
    fn subsets(n: usize, r: usize) -> Vec<Vec<usize>> {
        (0u32..1 << n).filter(|b| b.count_ones() as usize == r).map(|b| (0..n).filter(|i| b >> i & 1 == 1).collect()).collect()
    }
    for r in (1..=m.rows().min(m.cols())).rev() {
        for rows in subsets(m.rows(), r) {
            for cols in subsets(m.cols(), r) {
                let sub: Vec<Vec<GaussianRational>> =
                    rows.iter().map(|&i| cols.iter().map(|&j| m.get(i, j).clone()).collect()).collect();
                if !det(&sub).is_zero() {
                    return r;
                }
            }
        }
    }
    0
}

#[test]
fn bareiss_rank_matches_minors() {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for _ in 0..150 {
        let rows = rng.gen_range(1..=5);
        let cols = rng.gen_range(1..=5);
        // product of thin factors to hit every rank
        let inner = rng.gen_range(1..=5);
        let m = &random_matrix(&mut rng, rows, inner, 100) * &random_matrix(&mut rng, inner, cols, 100);
        assert_eq!(rank_exact(&m), naive_rank(&m), "{m}");
    }
}

#[test]
fn affine_points_are_in_the_closure() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..60 {
        let n = rng.gen_range(1..=7usize);
        let k = rng.gen_range(0..=n);
        let q = random_signed_permutation(&mut rng, n);
        let x = diag_pm(k, n).conjugate_by(&q).unwrap();
        assert!(affine_member(&x, k as u32).unwrap());
        let c = random_gaussian(&mut rng, 50, true);
        if c.is_zero() {
            continue;
        }
        let pt = ProjPoint::new(x.scale(&c), c).unwrap();
        assert!(projective_member(&pt, k as u32));
    }
}

#[test]
fn random_symmetric_matrices_are_not_involutions() {
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    for _ in 0..100 {
        let n = rng.gen_range(1..=8usize);
        let x = random_symmetric(&mut rng, n, 100);
        if &x * &x == GRMatrix::identity(n) {
            continue;
        }
        for k in 0..=n as u32 {
            assert!(!affine_member(&x, k).unwrap());
        }
    }
}

#[test]
fn orbit_invariance_under_signed_permutations() {
    let mut rng = ChaCha8Rng::seed_from_u64(31);
    for n in 2..=8u32 {
        for d in 1..=n / 2 {
            let x = boundary_generator(n, d).unwrap();
            for _ in 0..4 {
                let q = random_signed_permutation(&mut rng, n as usize);
                let y = ProjPoint::new(x.conjugate_by(&q).unwrap(), GaussianRational::zero()).unwrap();
                for k in 1..=n / 2 {
                    assert_eq!(projective_member(&y, k), d <= k);
                }
            }
        }
    }
}

#[test]
fn orbit_dimensions_up_to_eight() {
    for n in 2..=8u32 {
        for d in 1..=n / 2 {
            assert_eq!(orbit_dimension(n, d).unwrap(), (d * (n - d)) as usize);
        }
    }
}

#[test]
fn epsilon_identities_random() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..40 {
        let n = rng.gen_range(2..=8u32);
        let k = rng.gen_range(1..=n / 2);
        let d = rng.gen_range(1..=k);
        let eps = rat(rng.gen_range(1..=50), rng.gen_range(1..=50));
        let report = epsilon_family_check(n, k, d, &eps).unwrap();
        assert!(report.all_hold(), "{n} {k} {d} {eps}: {:?}", report.failing());
    }
}

#[test]
fn degeneration_converges_like_sqrt_eps() {
    for n in 2..=8u32 {
        for k in 1..=n / 2 {
            for d in 1..=k {
                let errs: Vec<f64> = [1e-1, 1e-2, 1e-3].iter().map(|&e| degeneration_error(n, k, d, e).unwrap()).collect();
                for (e, err) in [1e-1f64, 1e-2, 1e-3].iter().zip(&errs) {
                    assert!(*err <= 2.0 * e.sqrt(), "n={n} k={k} d={d} eps={e} err={err}");
                }
                // each factor of 10 in ε shrinks the error by about √10
                assert!(errs[1] / errs[2] > 2.5 && errs[0] / errs[1] > 2.0, "{errs:?}");
            }
        }
    }
}
