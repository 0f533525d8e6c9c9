//! Degree of the Grassmannian `Gr(k, ℝⁿ)` in the involution model.
//!
//! The main route is the closed expression
//! `d_{k,n} = α_{k,n} Σ_{λ} A_{λ,k} B_{λ,k} C_{λ,k}`, summed over the
//! partitions below the staircase `δ_k`, with `C_{λ,k}` the monic Jack
//! coefficients (α = 2) of `∏_{i<j}(x_i + x_j)`. Everything is exact; the
//! `√π` factors coming from half-integer Gamma values must cancel.

mod interpolate;
mod selberg;

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;
use num_traits::One;
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::partitions::Partition;
use crate::scalar::{binomial, double_factorial, factorial, gamma_half, int, to_integer, PiScaled, Rational, ScalarError};
use crate::symfunc::{jack_expand, product_of_pair_sums, JackExpansion, SymfuncError};

pub use interpolate::{interpolate_pk, pk_degree_bound, pk_prefactor, predict_degree, PkFit, RationalPolynomial};
pub use selberg::{selberg_monte_carlo, selberg_rhs, McEstimate};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DegreeError {
    #[error("need 1 <= k <= n - 1, got k = {k}, n = {n}")]
    OutOfRange { k: u32, n: u32 },
    #[error("need 1 <= k <= n/2 (reduce by duality first), got k = {k}, n = {n}")]
    NotReduced { k: u32, n: u32 },
    #[error("no closed form for k = {k}, n = {n}")]
    NoClosedForm { k: u32, n: u32 },
    #[error("Selberg parameters must be positive, got m = {m}, p = {p}, d = {d}")]
    BadSelbergParameters { m: u32, p: u32, d: u32 },
    #[error("values of P_{k} do not fit a polynomial of degree <= {bound} (mismatch at n = {n})")]
    DegreeBoundViolated { k: u32, bound: u32, n: u32 },
    #[error(transparent)]
    Scalar(#[from] ScalarError),
    #[error(transparent)]
    Symfunc(#[from] SymfuncError),
}

/// Which route produced a degree.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DegreeMethod {
    Formula,
    ClosedForm,
    Oracle,
}

impl DegreeMethod {
    pub fn as_str(self) -> &'static str {
        match self {
            DegreeMethod::Formula => "formula",
            DegreeMethod::ClosedForm => "closed_form",
            DegreeMethod::Oracle => "oracle",
        }
    }
}

impl fmt::Display for DegreeMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// One summand `A_{λ,k} B_{λ,k} C_{λ,k}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegreeTerm {
    pub lambda: Partition,
    pub a: PiScaled,
    pub b: PiScaled,
    pub c: Rational,
}

impl DegreeTerm {
    pub fn product(&self) -> PiScaled {
        (&self.a * &self.b).scale(&self.c)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegreeReport {
    /// As requested.
    pub k: u32,
    pub n: u32,
    /// `min(k, n - k)`, the rank the terms are computed for.
    pub reduced_k: u32,
    pub degree: BigInt,
    pub terms: Vec<DegreeTerm>,
    pub alpha_kn: Rational,
    /// `α_{k,n} Σ A B C` before integer extraction.
    pub assembled: PiScaled,
    pub method: DegreeMethod,
}

impl Serialize for DegreeReport {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        struct Term<'a>(&'a DegreeTerm, usize);
        impl Serialize for Term<'_> {
            fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
                let t = self.0;
                let mut s = serializer.serialize_struct("Term", 6)?;
                s.serialize_field("lambda", &t.lambda.padded(self.1))?;
                s.serialize_field("A_coeff", &t.a.coeff.to_string())?;
                s.serialize_field("A_sqrtpi", &t.a.half_pi_exp)?;
                s.serialize_field("B_coeff", &t.b.coeff.to_string())?;
                s.serialize_field("B_sqrtpi", &t.b.half_pi_exp)?;
                s.serialize_field("C", &t.c.to_string())?;
                s.end()
            }
        }
        let width = self.reduced_k as usize;
        let terms: Vec<Term<'_>> = self.terms.iter().map(|t| Term(t, width)).collect();
        let mut s = serializer.serialize_struct("DegreeReport", 6)?;
        s.serialize_field("k", &self.k)?;
        s.serialize_field("n", &self.n)?;
        s.serialize_field("degree", &self.degree.to_string())?;
        s.serialize_field("alpha", &self.alpha_kn.to_string())?;
        s.serialize_field("terms", &terms)?;
        s.serialize_field("method", self.method.as_str())?;
        s.end()
    }
}

/// Checks `1 ≤ k ≤ n-1` and returns `min(k, n - k)`.
pub fn reduce_by_duality(k: u32, n: u32) -> Result<u32, DegreeError> {
    if k == 0 || k >= n {
        return Err(DegreeError::OutOfRange { k, n });
    }
    Ok(k.min(n - k))
}

fn pow2(e: u64) -> Rational {
    Rational::from_integer(BigInt::one() << e)
}

/// `α_{k,n}` for `1 ≤ k ≤ n/2`.
pub fn alpha_coefficient(k: u32, n: u32) -> Result<Rational, DegreeError> {
    if k == 0 || 2 * k > n {
        return Err(DegreeError::NotReduced { k, n });
    }
    let (k64, n64) = (i64::from(k), i64::from(n));
    let mut denom = BigInt::one();
    let numer_exp;
    if n == 2 * k {
        for i in 1..=k64 {
            for j in i + 1..=k64 {
                denom *= (j - i) * (2 * k64 - j - i);
            }
        }
        numer_exp = k64 * (k64 - 1) + 1;
    } else if n.is_multiple_of(2) {
        for i in 1..=k64 {
            for j in i + 1..=n64 / 2 {
                denom *= (j - i) * (n64 - j - i);
            }
        }
        numer_exp = k64 * (n64 - k64 - 1);
    } else {
        for i in 1..=k64 {
            for j in i + 1..=(n64 - 1) / 2 {
                denom *= (j - i) * (n64 - i - j);
            }
            denom *= n64 - 2 * i;
        }
        numer_exp = k64 * (n64 - k64);
    }
    Ok(pow2(numer_exp as u64) / Rational::from_integer(denom))
}

fn staircase_cache() -> &'static RwLock<HashMap<u32, Arc<JackExpansion>>> {
    static CACHE: OnceLock<RwLock<HashMap<u32, Arc<JackExpansion>>>> = OnceLock::new();
    CACHE.get_or_init(|| RwLock::new(HashMap::new()))
}

/// `C_{λ,k}`: monic Jack (α = 2) coefficients of `∏_{i<j}(x_i + x_j)` in `k`
/// variables. Independent of `n`, so cached per `k`.
pub fn staircase_coefficients(k: u32) -> Result<Arc<JackExpansion>, DegreeError> {
    if let Some(hit) = staircase_cache().read().expect("cache poisoned").get(&k) {
        return Ok(Arc::clone(hit));
    }
    let expansion = Arc::new(jack_expand(&product_of_pair_sums(k as usize), &int(2))?);
    let mut cache = staircase_cache().write().expect("cache poisoned");
    Ok(Arc::clone(cache.entry(k).or_insert(expansion)))
}

/// Term of the sum for one partition; `k ≤ n/2`.
fn degree_term(lambda: &Partition, c: &Rational, k: u32, n: u32) -> Result<DegreeTerm, DegreeError> {
    let (k64, n64) = (i64::from(k), i64::from(n));
    let parts: Vec<i64> = lambda.padded(k as usize).into_iter().map(i64::from).collect();
    let mut a = PiScaled::one();
    for (idx, &li) in parts.iter().enumerate() {
        let i = idx as i64 + 1;
        a = a * gamma_half(2 * (n64 - 2 * k64 + 1 + li) + (k64 - i))?;
    }
    let mut b = PiScaled::one();
    for i in 0..parts.len() {
        for j in i + 1..parts.len() {
            let diff = 2 * (parts[i] - parts[j]);
            let gap = (j - i) as i64;
            b = b * (gamma_half(diff + gap + 1)? / gamma_half(diff + gap)?);
        }
    }
    Ok(DegreeTerm { lambda: lambda.clone(), a, b, c: c.clone() })
}

/// Exact degree of `Gr(k, ℝⁿ)` in `Sym²(ℂⁿ)` for `1 ≤ k ≤ n - 1`.
pub fn degree(k: u32, n: u32) -> Result<DegreeReport, DegreeError> {
    let rk = reduce_by_duality(k, n)?;
    let alpha_kn = alpha_coefficient(rk, n)?;
    let expansion = staircase_coefficients(rk)?;
    let mut terms = Vec::with_capacity(expansion.coeffs.len());
    let mut sum = PiScaled::zero();
    // largest partition (the staircase) first
    for (lambda, c) in expansion.coeffs.iter().rev() {
        let term = degree_term(lambda, c, rk, n)?;
        sum = sum.try_add(&term.product())?;
        terms.push(term);
    }
    let assembled = sum.scale(&alpha_kn);
    let degree = to_integer(&assembled)?;
    Ok(DegreeReport {
        k,
        n,
        reduced_k: rk,
        degree,
        terms,
        alpha_kn,
        assembled,
        method: DegreeMethod::Formula,
    })
}

/// The explicit formulas for `k ≤ 4`:
///
/// * `d_{1,n} = 2^{n-1}` for `n ≥ 2`
/// * `d_{2,n} = 2 binom(2n-4, n-2)` for `n ≥ 3`
/// * `d_{3,n} = (8n-25)(2n-9)!! 2^{2n-6} / (n-2)!` for `n ≥ 5`
/// * `d_{4,n} = (32n²-288n+634)(2n-13)!!(2n-9)!! 2^{2n-6} / ((n-2)!(n-4)!)`
///   for `n ≥ 7`
pub fn closed_form_degree(k: u32, n: u32) -> Result<BigInt, DegreeError> {
    let n64 = i64::from(n);
    let value = match (k, n) {
        (1, n) if n >= 2 => return Ok(BigInt::one() << (n - 1)),
        (2, n) if n >= 3 => return Ok(binomial(2 * u64::from(n) - 4, u64::from(n) - 2) * 2),
        (3, n) if n >= 5 => {
            Rational::from_integer(BigInt::from(8 * n64 - 25) * double_factorial(2 * n64 - 9))
                * pow2(2 * u64::from(n) - 6)
                / Rational::from_integer(factorial(u64::from(n) - 2))
        }
        (4, n) if n >= 7 => {
            let poly = 32 * n64 * n64 - 288 * n64 + 634;
            Rational::from_integer(
                BigInt::from(poly) * double_factorial(2 * n64 - 13) * double_factorial(2 * n64 - 9),
            ) * pow2(2 * u64::from(n) - 6)
                / Rational::from_integer(factorial(u64::from(n) - 2) * factorial(u64::from(n) - 4))
        }
        _ => return Err(DegreeError::NoClosedForm { k, n }),
    };
    Ok(to_integer(&PiScaled::from_rational(value))?)
}

/// Degree in the Plücker embedding:
/// `(k(n-k))! / ∏_{j=1}^{k} j(j+1)⋯(j+n-k-1)`.
pub fn plucker_degree(k: u32, n: u32) -> Result<BigInt, DegreeError> {
    if k == 0 || k >= n {
        return Err(DegreeError::OutOfRange { k, n });
    }
    let (k, n) = (u64::from(k), u64::from(n));
    let numer = factorial(k * (n - k));
    let mut denom = BigInt::one();
    for j in 1..=k {
        // j (j+1) ⋯ (j+n-k-1) = (j+n-k-1)! / (j-1)!
        denom *= factorial(j + n - k - 1) / factorial(j - 1);
    }
    Ok(numer / denom)
}

/// `d_{k,n} / d̂_{k,n}` exactly.
pub fn degree_ratio(k: u32, n: u32) -> Result<Rational, DegreeError> {
    let d = degree(k, n)?.degree;
    let p = plucker_degree(k, n)?;
    Ok(Rational::new(d, p))
}

/// Whether a degree is available in closed form (after duality).
pub fn has_closed_form(k: u32, n: u32) -> bool {
    reduce_by_duality(k, n)
        .map(|rk| closed_form_degree(rk, n).is_ok())
        .unwrap_or(false)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;
    use num_traits::Zero;

    #[test]
    fn alpha_examples() {
        assert_eq!(alpha_coefficient(2, 4).unwrap(), int(8));
        assert_eq!(alpha_coefficient(1, 3).unwrap(), int(4));
        assert_eq!(alpha_coefficient(2, 6).unwrap(), rat(16, 3));
        assert_eq!(alpha_coefficient(1, 2).unwrap(), int(2));
        assert!(matches!(alpha_coefficient(3, 5), Err(DegreeError::NotReduced { .. })));
    }

    #[test]
    fn degree_examples() {
        assert_eq!(degree(1, 5).unwrap().degree, BigInt::from(16));
        assert_eq!(degree(2, 4).unwrap().degree, BigInt::from(12));
        assert_eq!(degree(3, 6).unwrap().degree, BigInt::from(184));
        assert_eq!(degree(4, 8).unwrap().degree, BigInt::from(7056));
        assert_eq!(degree(1, 2).unwrap().degree, BigInt::from(2));
        assert_eq!(degree(2, 6).unwrap().degree, BigInt::from(140));
    }

    #[test]
    fn degree_rejects_bad_rank() {
        assert_eq!(degree(0, 4), Err(DegreeError::OutOfRange { k: 0, n: 4 }));
        assert_eq!(degree(4, 4), Err(DegreeError::OutOfRange { k: 4, n: 4 }));
    }

    #[test]
    fn worked_terms_for_rank_three() {
        // A_{(2,1),3} = Γ(n-2) Γ(n-7/2) Γ(n-5) and B_{(2,1),3} = 15/(4√π)
        let r = degree(3, 7).unwrap();
        assert_eq!(r.terms.len(), 2);
        let t = &r.terms[0];
        assert_eq!(t.lambda, Partition::new(vec![2, 1]).unwrap());
        let expected_a = gamma_half(10).unwrap() * gamma_half(7).unwrap() * gamma_half(4).unwrap();
        assert_eq!(t.a, expected_a);
        assert_eq!(t.b, PiScaled::new(rat(15, 4), -1));
        assert_eq!(t.c, int(1));
        let t = &r.terms[1];
        assert_eq!(t.b, PiScaled::new(rat(1, 2), -1));
        assert_eq!(t.c, rat(1, 2));
    }

    #[test]
    fn duality() {
        for n in 2..=10 {
            for k in 1..n {
                assert_eq!(degree(k, n).unwrap().degree, degree(n - k, n).unwrap().degree);
            }
        }
    }

    #[test]
    fn closed_form_examples() {
        assert_eq!(closed_form_degree(1, 8).unwrap(), BigInt::from(128));
        assert_eq!(closed_form_degree(2, 6).unwrap(), BigInt::from(140));
        assert_eq!(closed_form_degree(3, 5).unwrap(), BigInt::from(40));
        assert_eq!(closed_form_degree(3, 6).unwrap(), BigInt::from(184));
        assert_eq!(closed_form_degree(4, 8).unwrap(), BigInt::from(7056));
        assert!(closed_form_degree(3, 4).is_err());
        assert!(closed_form_degree(5, 12).is_err());
    }

    #[test]
    fn plucker_examples() {
        for n in 2..10 {
            assert_eq!(plucker_degree(1, n).unwrap(), BigInt::one());
        }
        assert_eq!(plucker_degree(2, 4).unwrap(), BigInt::from(2));
        assert_eq!(plucker_degree(2, 5).unwrap(), BigInt::from(5));
        // Gr(2,6): Catalan-type value 14
        assert_eq!(plucker_degree(2, 6).unwrap(), BigInt::from(14));
    }

    #[test]
    fn ratio_examples() {
        assert_eq!(degree_ratio(1, 4).unwrap(), int(8));
        assert_eq!(degree_ratio(2, 4).unwrap(), int(6));
        assert_eq!(degree_ratio(2, 5).unwrap(), int(8));
    }

    #[test]
    fn ratios_for_small_rank() {
        for n in 3..=12u32 {
            assert_eq!(degree_ratio(1, n).unwrap(), Rational::from_integer(BigInt::one() << (n - 1)));
            assert_eq!(degree_ratio(2, n).unwrap(), int(2 * (i64::from(n) - 1)));
        }
    }

    #[test]
    fn monotone_in_n() {
        for k in 1..=3u32 {
            let mut prev = BigInt::zero();
            for n in 2 * k..=12 {
                let d = degree(k, n).unwrap().degree;
                assert!(d > prev, "k = {k}, n = {n}");
                prev = d;
            }
        }
    }

    #[test]
    fn report_json_keys() {
        let json = serde_json::to_value(degree(3, 6).unwrap()).unwrap();
        assert_eq!(json["degree"], "184");
        assert_eq!(json["method"], "formula");
        assert_eq!(json["alpha"], alpha_coefficient(3, 6).unwrap().to_string());
        let t = &json["terms"][1];
        assert_eq!(t["lambda"], serde_json::json!([1, 1, 1]));
        assert_eq!(t["C"], "1/2");
        assert_eq!(t["B_sqrtpi"], -1);
        for key in ["A_coeff", "A_sqrtpi", "B_coeff"] {
            assert!(t.get(key).is_some());
        }
    }
}
