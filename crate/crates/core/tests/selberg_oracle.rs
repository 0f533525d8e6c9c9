//! Direct integration of the Selberg-type integrand over the ordered simplex.
//!
//! `{x_1 ≥ … ≥ x_m ≥ 0, Σx ≤ 1}` is the simplex with vertices `0` and
//! `v_j = (e_1 + … + e_j)/j`. Writing `x = Σ y_j v_j` maps the standard
//! simplex onto it with Jacobian `1/m!`, and monomials integrate over the
//! standard simplex by `∫ y^a = ∏ a_i! / (|a| + m)!`.

use std::collections::BTreeMap;

use grassdeg_core::degree::{selberg_monte_carlo, selberg_rhs};
use grassdeg_core::scalar::{factorial, rat, ratio_to_f64, Rational};
use num_traits::{One, Zero};

type Poly = BTreeMap<Vec<u32>, Rational>;

fn mul(a: &Poly, b: &Poly) -> Poly {
    let mut out = Poly::new();
    for (ea, ca) in a {
        for (eb, cb) in b {
            let e: Vec<u32> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
            *out.entry(e).or_insert_with(Rational::zero) += ca * cb;
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

fn pow(a: &Poly, e: u32, m: usize) -> Poly {
    (0..e).fold(constant(m, Rational::one()), |acc, _| mul(&acc, a))
}

fn constant(m: usize, c: Rational) -> Poly {
    Poly::from([(vec![0; m], c)])
}

/// `x_i = Σ_{j ≥ i} y_j / j` (0-based `i`).
fn x_in_y(i: usize, m: usize) -> Poly {
    (i..m)
        .map(|j| {
            let mut e = vec![0; m];
            e[j] = 1;
            (e, rat(1, j as i64 + 1))
        })
        .collect()
}

fn integrate(m: usize, p: u32, d: u32) -> Rational {
    let mut f = constant(m, Rational::one());
    for i in 0..m {
        f = mul(&f, &pow(&x_in_y(i, m), p, m));
    }
    for i in 0..m {
        for j in i + 1..m {
            let xi2 = pow(&x_in_y(i, m), 2, m);
            let mut diff = xi2.clone();
            for (e, c) in pow(&x_in_y(j, m), 2, m) {
                *diff.entry(e).or_insert_with(Rational::zero) -= c;
            }
            f = mul(&f, &pow(&diff, d, m));
        }
    }
    let mut total = Rational::zero();
    for (e, c) in &f {
        let numer: num_bigint::BigInt = e.iter().map(|&a| factorial(u64::from(a))).product();
        let deg: u64 = e.iter().map(|&a| u64::from(a)).sum();
        total += c * Rational::new(numer, factorial(deg + m as u64));
    }
    total / Rational::from_integer(factorial(m as u64))
}

#[test]
fn closed_form_matches_direct_integration() {
    let cases = [(1, 1, 1), (1, 2, 1), (1, 1, 3), (1, 3, 2), (2, 1, 1), (2, 2, 1), (2, 1, 2), (2, 3, 2), (3, 1, 1), (3, 2, 1)];
    for (m, p, d) in cases {
        assert_eq!(selberg_rhs(m, p, d).unwrap(), integrate(m as usize, p, d), "m={m} p={p} d={d}");
    }
}

#[test]
fn oracle_sanity() {
    assert_eq!(integrate(2, 1, 1), rat(1, 192));
    // ∫_0^1 x^2 dx
    assert_eq!(integrate(1, 2, 1), rat(1, 3));
}

#[test]
fn monte_carlo_tracks_exact_value() {
    for (m, p, d) in [(1, 2, 1), (2, 1, 1), (2, 2, 1)] {
        let exact = ratio_to_f64(&selberg_rhs(m, p, d).unwrap());
        let mc = selberg_monte_carlo(m, p, d, 400_000, 11);
        assert!((mc.estimate - exact).abs() < 5.0 * mc.std_error + 1e-12, "m={m} p={p} d={d}: {} vs {exact}", mc.estimate);
    }
}
