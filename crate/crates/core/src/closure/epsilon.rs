//! The one-parameter family `X_d(ε)` degenerating an affine point onto the
//! boundary generator, checked symbolically.
//!
//! With `S_ε = ½[[ε+i, 1], [1, -(ε+i)]]`, `T_ε = ½[[ε, s], [s, -ε]]`,
//! `s² = 2εi` and `u² = ε(ε+2i)`,
//!
//! ```text
//! X_d(ε) = S_ε ⊕ … ⊕ S_ε  ⊕  T_ε ⊕ … ⊕ T_ε  ⊕  (u/2)·I_{n-2k}
//!          (d copies)        (k-d copies)
//! ```
//!
//! Every block squares to `(u²/4)·I`, so `[X_d(ε) : -u/2]` lies on the
//! affine variety for `ε > 0`, and at `ε = 0` the family reaches
//! `boundary_generator(n, d)`. Entries live in `ℚ(i)[s, u]` with the two
//! relations above; block-diagonality keeps all checks to 2×2 algebra.

use num_complex::Complex64;
use num_traits::Zero;
use serde::Serialize;

use super::gaussian::GaussianRational as G;
use super::{boundary_generator, ClosureError};
use crate::scalar::{rat, Rational};

/// Element `c0 + c1·s + c2·u + c3·su` of `ℚ(i)[s, u]/(s² - σ, u² - υ)`.
#[derive(Debug, Clone, PartialEq, Eq)]
struct Elem([G; 4]);

#[derive(Debug, Clone)]
struct Algebra {
    sigma: G,
    upsilon: G,
}

impl Algebra {
    fn constant(&self, c: G) -> Elem {
        Elem([c, G::zero(), G::zero(), G::zero()])
    }

    fn s(&self, c: G) -> Elem {
        Elem([G::zero(), c, G::zero(), G::zero()])
    }

    fn u(&self, c: G) -> Elem {
        Elem([G::zero(), G::zero(), c, G::zero()])
    }

    fn add(&self, a: &Elem, b: &Elem) -> Elem {
        Elem(std::array::from_fn(|i| &a.0[i] + &b.0[i]))
    }

    fn sub(&self, a: &Elem, b: &Elem) -> Elem {
        Elem(std::array::from_fn(|i| &a.0[i] - &b.0[i]))
    }

    fn mul(&self, a: &Elem, b: &Elem) -> Elem {
        let [a0, a1, a2, a3] = &a.0;
        let [b0, b1, b2, b3] = &b.0;
        let (sg, up) = (&self.sigma, &self.upsilon);
        let su = sg * up;
        Elem([
            a0 * b0 + sg * &(a1 * b1) + up * &(a2 * b2) + &su * &(a3 * b3),
            a0 * b1 + a1 * b0 + up * &(a2 * b3 + a3 * b2),
            a0 * b2 + a2 * b0 + sg * &(a1 * b3 + a3 * b1),
            a0 * b3 + a3 * b0 + a1 * b2 + a2 * b1,
        ])
    }

    fn is_zero(&self, a: &Elem) -> bool {
        a.0.iter().all(G::is_zero)
    }
}

type Block2 = [[Elem; 2]; 2];

#[allow(clippy::large_enum_variant)]
enum Block {
    Two(Block2),
    One(Elem),
}

impl Algebra {
    fn mat_mul(&self, a: &Block2, b: &Block2) -> Block2 {
        std::array::from_fn(|i| {
            std::array::from_fn(|j| self.add(&self.mul(&a[i][0], &b[0][j]), &self.mul(&a[i][1], &b[1][j])))
        })
    }

    fn shift(&self, a: &Block2, c: &Elem) -> Block2 {
        std::array::from_fn(|i| std::array::from_fn(|j| if i == j { self.add(&a[i][j], c) } else { a[i][j].clone() }))
    }

    fn is_scalar(&self, a: &Block2, c: &Elem) -> bool {
        self.is_zero(&self.sub(&a[0][0], c))
            && self.is_zero(&self.sub(&a[1][1], c))
            && self.is_zero(&a[0][1])
            && self.is_zero(&a[1][0])
    }

    /// Upper bound on the rank, exact whenever the determinant or the
    /// entries vanish identically.
    fn rank_bound(&self, a: &Block2) -> usize {
        if a.iter().flatten().all(|e| self.is_zero(e)) {
            return 0;
        }
        let det = self.sub(&self.mul(&a[0][0], &a[1][1]), &self.mul(&a[0][1], &a[1][0]));
        if self.is_zero(&det) { 1 } else { 2 }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IdentityCheck {
    pub name: &'static str,
    pub holds: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EpsilonReport {
    pub n: u32,
    pub k: u32,
    pub d: u32,
    #[serde(serialize_with = "crate::scalar::serialize_display")]
    pub eps: Rational,
    pub identities: Vec<IdentityCheck>,
}

impl EpsilonReport {
    pub fn all_hold(&self) -> bool {
        self.identities.iter().all(|c| c.holds)
    }

    /// Name of the first identity that fails.
    pub fn failing(&self) -> Option<&'static str> {
        self.identities.iter().find(|c| !c.holds).map(|c| c.name)
    }
}

fn check_parameters(n: u32, k: u32, d: u32) -> Result<(), ClosureError> {
    if d == 0 || d > k || 2 * k > n {
        return Err(ClosureError::EpsilonParameters { n, k, d });
    }
    Ok(())
}

/// Verifies the identities behind the degeneration for `1 ≤ d ≤ k ≤ n/2`
/// and `ε > 0`.
pub fn epsilon_family_check(n: u32, k: u32, d: u32, eps: &Rational) -> Result<EpsilonReport, ClosureError> {
    check_parameters(n, k, d)?;
    if *eps <= Rational::zero() {
        return Err(ClosureError::NonPositiveEpsilon(eps.clone()));
    }
    let e = G::real(eps.clone());
    let i = G::i();
    let two = G::from_int(2);
    let half = G::real(rat(1, 2));
    let quarter = G::real(rat(1, 4));
    let eps_i = &e + &i;
    let u2 = &e * &(&e + &(&two * &i));
    let alg = Algebra { sigma: &two * &(&e * &i), upsilon: u2.clone() };
    let mut checks = Vec::new();
    let mut record = |name: &'static str, holds: bool| checks.push(IdentityCheck { name, holds });

    record("(eps+i)^2 + 1 = eps(eps+2i)", &(&eps_i * &eps_i) + &G::one() == u2);

    let c = |g: G| alg.constant(g);
    let s_eps: Block2 = [
        [c(&half * &eps_i), c(half.clone())],
        [c(half.clone()), c(-(&half * &eps_i))],
    ];
    let t_eps: Block2 = [
        [c(&half * &e), alg.s(half.clone())],
        [alg.s(half.clone()), c(-(&half * &e))],
    ];
    let u2_quarter = c(&quarter * &u2);
    record("S_eps^2 = eps(eps+2i)/4 * I", alg.is_scalar(&alg.mat_mul(&s_eps, &s_eps), &u2_quarter));
    record("T_eps^2 = eps(eps+2i)/4 * I", alg.is_scalar(&alg.mat_mul(&t_eps, &t_eps), &u2_quarter));

    // 1/u = u/u²
    let inv_u = alg.u(u2.inv().expect("u^2 != 0 for eps > 0"));
    let scale = |b: &Block2| -> Block2 { std::array::from_fn(|r| std::array::from_fn(|col| alg.mul(&inv_u, &b[r][col]))) };
    let double = |b: &Block2| -> Block2 { std::array::from_fn(|r| std::array::from_fn(|col| alg.add(&b[r][col], &b[r][col]))) };
    let c_eps = scale(&double(&s_eps));
    let d_eps = scale(&double(&t_eps));
    let one = c(G::one());
    record("C_eps^2 = I", alg.is_scalar(&alg.mat_mul(&c_eps, &c_eps), &one));
    record("D_eps^2 = I", alg.is_scalar(&alg.mat_mul(&d_eps, &d_eps), &one));

    let u_half = alg.u(half.clone());
    let mut blocks: Vec<Block> = Vec::new();
    blocks.extend((0..d).map(|_| Block::Two(s_eps.clone())));
    blocks.extend((d..k).map(|_| Block::Two(t_eps.clone())));
    blocks.extend((0..n - 2 * k).map(|_| Block::One(u_half.clone())));

    let trace = blocks.iter().fold(c(G::zero()), |acc, b| match b {
        Block::Two(m) => alg.add(&alg.add(&acc, &m[0][0]), &m[1][1]),
        Block::One(x) => alg.add(&acc, x),
    });
    let codim = i64::from(n) - 2 * i64::from(k);
    record(
        "tr X_d(eps) = (n-2k) u/2",
        alg.is_zero(&alg.sub(&trace, &alg.u(G::real(rat(codim, 2))))),
    );

    let t = alg.u(G::real(rat(-1, 2)));
    let t2 = alg.mul(&t, &t);
    record(
        "X_d(eps)^2 = t^2 I at t = -u/2",
        blocks.iter().all(|b| match b {
            Block::Two(m) => alg.is_scalar(&alg.mat_mul(m, m), &t2),
            Block::One(x) => alg.is_zero(&alg.sub(&alg.mul(x, x), &t2)),
        }),
    );
    record(
        "tr X_d(eps) = (2k-n) t at t = -u/2",
        alg.is_zero(&alg.sub(&trace, &alg.mul(&c(G::from_int(-codim)), &t))),
    );

    let rank_bound = |shift: &Elem| -> usize {
        blocks
            .iter()
            .map(|b| match b {
                Block::Two(m) => alg.rank_bound(&alg.shift(m, shift)),
                Block::One(x) => usize::from(!alg.is_zero(&alg.add(x, shift))),
            })
            .sum()
    };
    let minus_t = alg.sub(&c(G::zero()), &t);
    record("rank(X_d(eps) + t I) <= k", rank_bound(&t) <= k as usize);
    record("rank(X_d(eps) - t I) <= n-k", rank_bound(&minus_t) <= (n - k) as usize);

    // ε = 0 forces s = u = 0
    // at ε = 0: S_0 from its formula, T_0 = 0 since s = 0, and u = 0
    let at_zero: Vec<G> = {
        let s0 = super::GRMatrix::from_fn(2, 2, |r, col| match (r, col) {
            (0, 0) => &half * &i,
            (1, 1) => -(&half * &i),
            _ => half.clone(),
        });
        let n = n as usize;
        let mut x = super::GRMatrix::zeros(n, n);
        for b in 0..d as usize {
            for (r, col) in [(0, 0), (0, 1), (1, 0), (1, 1)] {
                *x.get_mut(2 * b + r, 2 * b + col) = s0.get(r, col).clone();
            }
        }
        x.entries().to_vec()
    };
    record(
        "X_d(0) = boundary_generator(n, d)",
        boundary_generator(n, d).map(|b| b.entries() == at_zero.as_slice()).unwrap_or(false),
    );

    Ok(EpsilonReport { n, k, d, eps: eps.clone(), identities: checks })
}

/// `X_d(ε)` and `t = -u/2` in complex doubles, using principal square roots.
pub fn epsilon_point_f64(n: u32, k: u32, d: u32, eps: f64) -> Result<(Vec<Vec<Complex64>>, Complex64), ClosureError> {
    check_parameters(n, k, d)?;
    let i = Complex64::i();
    let e = Complex64::new(eps, 0.0);
    let s = (2.0 * e * i).sqrt();
    let u = (e * (e + 2.0 * i)).sqrt();
    let n = n as usize;
    let mut x = vec![vec![Complex64::zero(); n]; n];
    let mut at = 0;
    for block in 0..k as usize {
        let (a, b) = if block < d as usize { (e + i, Complex64::new(1.0, 0.0)) } else { (e, s) };
        x[at][at] = a / 2.0;
        x[at][at + 1] = b / 2.0;
        x[at + 1][at] = b / 2.0;
        x[at + 1][at + 1] = -a / 2.0;
        at += 2;
    }
    for (j, row) in x.iter_mut().enumerate().skip(at) {
        row[j] = u / 2.0;
    }
    Ok((x, -u / 2.0))
}

/// Largest entrywise distance between `[X_d(ε) : -u/2]` and
/// `[boundary_generator(n, d) : 0]`.
pub fn degeneration_error(n: u32, k: u32, d: u32, eps: f64) -> Result<f64, ClosureError> {
    let (x, t) = epsilon_point_f64(n, k, d, eps)?;
    let target = boundary_generator(n, d)?;
    let mut err = t.norm();
    for (r, row) in x.iter().enumerate() {
        for (col, v) in row.iter().enumerate() {
            let (re, im) = target.get(r, col).to_f64_pair();
            err = err.max((v - Complex64::new(re, im)).norm());
        }
    }
    Ok(err)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples_hold() {
        for (n, k, d, eps) in [(5, 2, 1, rat(1, 1)), (4, 2, 2, rat(1, 3)), (6, 3, 3, rat(2, 1))] {
            let report = epsilon_family_check(n, k, d, &eps).unwrap();
            assert!(report.all_hold(), "{n} {k} {d}: {:?}", report.failing());
            assert_eq!(report.identities.len(), 11);
        }
    }

    #[test]
    fn bad_parameters() {
        assert!(epsilon_family_check(5, 2, 3, &rat(1, 1)).is_err());
        assert!(epsilon_family_check(5, 3, 1, &rat(1, 1)).is_err());
        assert!(epsilon_family_check(5, 2, 0, &rat(1, 1)).is_err());
        assert!(epsilon_family_check(5, 2, 1, &rat(0, 1)).is_err());
        assert!(epsilon_family_check(5, 2, 1, &rat(-1, 2)).is_err());
    }

    #[test]
    fn float_error_shrinks_like_sqrt_eps() {
        for (n, k, d) in [(5u32, 2u32, 1u32), (4, 2, 2), (8, 4, 1), (7, 3, 2)] {
            let errs: Vec<f64> = [1e-1, 1e-2, 1e-3]
                .iter()
                .map(|&e| degeneration_error(n, k, d, e).unwrap())
                .collect();
            for (e, err) in [1e-1f64, 1e-2, 1e-3].iter().zip(&errs) {
                assert!(*err <= 2.0 * e.sqrt(), "{n} {k} {d} eps={e}: {err}");
            }
            assert!(errs[2] < errs[1] && errs[1] < errs[0]);
        }
    }
}
