#![allow(dead_code)]

use grassdeg_core::closure::{GRMatrix, GaussianRational};
use grassdeg_core::scalar::{rat, Rational};
use rand::seq::SliceRandom;
use rand::Rng;

/// Rational with numerator and denominator bounded by `height` in absolute value.
pub fn random_rational<R: Rng>(rng: &mut R, height: i64) -> Rational {
    rat(rng.gen_range(-height..=height), rng.gen_range(1..=height))
}

pub fn random_gaussian<R: Rng>(rng: &mut R, height: i64, complex: bool) -> GaussianRational {
    let im = if complex { random_rational(rng, height) } else { rat(0, 1) };
    GaussianRational::new(random_rational(rng, height), im)
}

pub fn random_matrix<R: Rng>(rng: &mut R, rows: usize, cols: usize, height: i64) -> GRMatrix {
    let entries = (0..rows * cols)
        .map(|_| {
            let complex = rng.gen_bool(0.5);
            random_gaussian(rng, height, complex)
        })
        .collect();
    GRMatrix::new(rows, cols, entries).unwrap()
}

pub fn random_symmetric<R: Rng>(rng: &mut R, n: usize, height: i64) -> GRMatrix {
    let upper = random_matrix(rng, n, n, height);
    GRMatrix::from_fn(n, n, |i, j| upper.get(i.min(j), i.max(j)).clone())
}

/// Random signed permutation matrix, an element of `O_n(ℚ)`.
pub fn random_signed_permutation<R: Rng>(rng: &mut R, n: usize) -> GRMatrix {
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(rng);
    let signs: Vec<i64> = (0..n).map(|_| if rng.gen_bool(0.5) { 1 } else { -1 }).collect();
    GRMatrix::from_fn(n, n, |i, j| {
        if perm[i] == j { GaussianRational::from_int(signs[i]) } else { GaussianRational::zero() }
    })
}

pub fn diag_pm(k: usize, n: usize) -> GRMatrix {
    let d: Vec<GaussianRational> = (0..n).map(|i| GaussianRational::from_int(if i < k { 1 } else { -1 })).collect();
    GRMatrix::diagonal(&d)
}
