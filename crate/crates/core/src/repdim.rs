//! Independent route to the degree through representation theory.
//!
//! The coordinate ring of the Grassmannian decomposes into irreducible
//! `SO_n(ℂ)`-modules `V_λ`, `λ ∈ Λ_{k,n}`. Summing `dim V_λ` over
//! `|λ| ≤ 2d` gives a function `F(d)` that is eventually a polynomial of
//! degree `p = k(n-k)` whose leading coefficient times `p!` is the degree;
//! the `p`-th forward difference of `F` recovers it exactly.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::partitions::{enumerate_weights, PartitionError, SoWeight, WeightRule};
use crate::scalar::{binomial, to_integer, PiScaled, Rational, ScalarError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RepdimError {
    #[error(transparent)]
    Partition(#[from] PartitionError),
    #[error("dimension product for {weight} is not an integer")]
    NonIntegralDimension { weight: SoWeight, source: ScalarError },
    #[error("p = k(n-k) = {p} exceeds the oracle budget {max_p}")]
    BudgetExceeded { p: u32, max_p: u32 },
    #[error("p-th differences did not stabilize for base points up to {last_base}")]
    NotStabilized { last_base: u32 },
}

/// Dimension of the irreducible `SO_n(ℂ)`-module with highest weight `λ`
/// (Weyl dimension formula).
pub fn so_dim(n: u32, lambda: &SoWeight) -> Result<BigInt, RepdimError> {
    if !lambda.is_valid_for(n) {
        return Err(PartitionError::InvalidWeight { coords: lambda.coords().to_vec(), n }.into());
    }
    let l = lambda.coords();
    let m = l.len();
    let n = i64::from(n);
    let mut numer = BigInt::one();
    let mut denom = BigInt::one();
    for i in 1..=m as i64 {
        let li = l[i as usize - 1];
        for j in i + 1..=m as i64 {
            let lj = l[j as usize - 1];
            numer *= li - lj - i + j;
            denom *= j - i;
            numer *= li + lj + n - i - j;
            denom *= n - i - j;
        }
        if n % 2 == 1 {
            // the i = j factor of the odd case
            numer *= 2 * li + n - 2 * i;
            denom *= n - 2 * i;
        }
    }
    let value = PiScaled::from_rational(Rational::new(numer, denom));
    to_integer(&value).map_err(|source| RepdimError::NonIntegralDimension { weight: lambda.clone(), source })
}

/// `F(d)` sampled at consecutive `d`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HilbertProfile {
    pub k: u32,
    pub n: u32,
    pub p: u32,
    #[serde(serialize_with = "serialize_values")]
    pub values: Vec<(u32, BigInt)>,
}

fn serialize_values<S: serde::Serializer>(values: &[(u32, BigInt)], s: S) -> Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(values.len()))?;
    for (d, f) in values {
        seq.serialize_element(&(d, f.to_string()))?;
    }
    seq.end()
}

/// Dimensions of all weights up to a norm budget, for fast `F(d)` lookups.
struct WeightTable {
    /// `(|λ|, dim V_λ)`, sorted by norm.
    dims: Vec<(u64, BigInt)>,
    dmax: u32,
}

impl WeightTable {
    fn build(k: u32, n: u32, dmax: u32, rule: WeightRule) -> Result<Self, RepdimError> {
        let weights = enumerate_weights(k, n, dmax, rule)?;
        let dims = weights
            .iter()
            .map(|w| Ok((w.norm(), so_dim(n, w)?)))
            .collect::<Result<Vec<_>, RepdimError>>()?;
        Ok(WeightTable { dims, dmax })
    }

    fn sums(&self) -> Vec<BigInt> {
        let mut out = vec![BigInt::zero(); self.dmax as usize + 1];
        for (norm, dim) in &self.dims {
            // weights of norm ≤ 2d contribute to F(d)
            let first = norm.div_ceil(2) as usize;
            if first < out.len() {
                out[first] += dim;
            }
        }
        for d in 1..out.len() {
            let prev = out[d - 1].clone();
            out[d] += prev;
        }
        out
    }
}

/// `F(d) = Σ dim V_λ` over `λ ∈ Λ_{k,n}` with `|λ| ≤ 2d`.
pub fn hilbert_sum(k: u32, n: u32, d: u32) -> Result<BigInt, RepdimError> {
    hilbert_sum_with_rule(k, n, d, WeightRule::Even)
}

pub fn hilbert_sum_with_rule(k: u32, n: u32, d: u32, rule: WeightRule) -> Result<BigInt, RepdimError> {
    let table = WeightTable::build(k, n, d, rule)?;
    Ok(table.sums().pop().unwrap_or_default())
}

/// `F(0), …, F(dmax)`.
pub fn hilbert_profile(k: u32, n: u32, dmax: u32, rule: WeightRule) -> Result<HilbertProfile, RepdimError> {
    let sums = WeightTable::build(k, n, dmax, rule)?.sums();
    Ok(HilbertProfile {
        k,
        n,
        p: k * (n - k),
        values: sums.into_iter().enumerate().map(|(d, f)| (d as u32, f)).collect(),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OracleConfig {
    /// Largest `p = k(n-k)` the oracle accepts.
    pub max_p: u32,
    /// Base points tried are `p, p+1, …, p + extra_bases`.
    pub extra_bases: u32,
    pub rule: WeightRule,
}

impl Default for OracleConfig {
    fn default() -> Self {
        OracleConfig { max_p: 12, extra_bases: 24, rule: WeightRule::Even }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DifferenceResult {
    pub degree: BigInt,
    /// First base point `d₀` with `Δ^p F(d₀) = Δ^p F(d₀ + 1)`.
    pub base: u32,
    pub profile: HilbertProfile,
}

/// `p`-th forward difference of `values` starting at `base`.
fn forward_difference(values: &[BigInt], base: usize, p: u32) -> BigInt {
    let mut acc = BigInt::zero();
    for i in 0..=p {
        let term = binomial(u64::from(p), u64::from(i)) * &values[base + i as usize];
        if (p - i).is_multiple_of(2) {
            acc += term;
        } else {
            acc -= term;
        }
    }
    acc
}

/// Degree from exact `p`-th differences of `F`, for `1 ≤ k ≤ n/2`.
pub fn degree_by_differences(k: u32, n: u32) -> Result<DifferenceResult, RepdimError> {
    degree_by_differences_with(k, n, OracleConfig::default())
}

pub fn degree_by_differences_with(k: u32, n: u32, config: OracleConfig) -> Result<DifferenceResult, RepdimError> {
    if k == 0 || 2 * k > n {
        return Err(PartitionError::RankOutOfRange { k, n }.into());
    }
    let p = k * (n - k);
    if p > config.max_p {
        return Err(RepdimError::BudgetExceeded { p, max_p: config.max_p });
    }
    let last_base = p + config.extra_bases;
    // F is needed up to d = last_base + 1 + p
    let dmax = last_base + 1 + p;
    let profile = hilbert_profile(k, n, dmax, config.rule)?;
    let values: Vec<BigInt> = profile.values.iter().map(|(_, f)| f.clone()).collect();
    let mut prev = forward_difference(&values, p as usize, p);
    for base in p + 1..=last_base + 1 {
        let cur = forward_difference(&values, base as usize, p);
        if cur == prev {
            let used = (base + p) as usize + 1;
            let profile = HilbertProfile { values: profile.values[..used].to_vec(), ..profile };
            return Ok(DifferenceResult { degree: cur, base: base - 1, profile });
        }
        prev = cur;
    }
    Err(RepdimError::NotStabilized { last_base })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(coords: &[i64], n: u32) -> SoWeight {
        SoWeight::new(coords.to_vec(), n).unwrap()
    }

    #[test]
    fn dimension_examples() {
        assert_eq!(so_dim(3, &w(&[2], 3)).unwrap(), BigInt::from(5));
        assert_eq!(so_dim(5, &w(&[2, 0], 5)).unwrap(), BigInt::from(14));
        assert_eq!(so_dim(4, &w(&[1, 1], 4)).unwrap(), BigInt::from(3));
        assert_eq!(so_dim(4, &w(&[1, -1], 4)).unwrap(), BigInt::from(3));
        // vector representations
        assert_eq!(so_dim(7, &w(&[1, 0, 0], 7)).unwrap(), BigInt::from(7));
        assert_eq!(so_dim(8, &w(&[1, 0, 0, 0], 8)).unwrap(), BigInt::from(8));
        // adjoint of SO_8
        assert_eq!(so_dim(8, &w(&[1, 1, 0, 0], 8)).unwrap(), BigInt::from(28));
    }

    #[test]
    fn trivial_module() {
        for n in 2..12u32 {
            let zero = w(&vec![0; (n / 2) as usize], n);
            assert_eq!(so_dim(n, &zero).unwrap(), BigInt::one());
        }
    }

    #[test]
    fn invalid_weight_rejected() {
        let bad = SoWeight::new(vec![1, -1], 4).unwrap();
        assert!(so_dim(5, &bad).is_err());
    }

    #[test]
    fn last_coordinate_sign_symmetry() {
        for m in 2..5u32 {
            let n = 2 * m;
            let mut c: Vec<i64> = (0..m as i64).map(|i| 6 - i).collect();
            let a = so_dim(n, &w(&c, n)).unwrap();
            let last = c.len() - 1;
            c[last] = -c[last];
            assert_eq!(a, so_dim(n, &w(&c, n)).unwrap());
        }
    }

    #[test]
    fn hilbert_examples() {
        assert_eq!(hilbert_sum(1, 3, 1).unwrap(), BigInt::from(6));
        assert_eq!(hilbert_sum(1, 3, 2).unwrap(), BigInt::from(15));
        for d in 0..8u32 {
            assert_eq!(hilbert_sum(1, 3, d).unwrap(), BigInt::from(2 * d * d + 3 * d + 1));
        }
        assert_eq!(
            hilbert_sum_with_rule(2, 4, 1, WeightRule::SameParity).unwrap(),
            BigInt::from(16)
        );
        // 1 + 9: linear functions on traceless symmetric 4x4 matrices
        assert_eq!(hilbert_sum(2, 4, 1).unwrap(), BigInt::from(10));
    }

    #[test]
    fn difference_examples() {
        assert_eq!(degree_by_differences(1, 3).unwrap().degree, BigInt::from(4));
        assert_eq!(degree_by_differences(2, 4).unwrap().degree, BigInt::from(12));
        assert_eq!(degree_by_differences(1, 4).unwrap().degree, BigInt::from(8));
        assert_eq!(degree_by_differences(1, 2).unwrap().degree, BigInt::from(2));
    }

    #[test]
    fn same_parity_rule_doubles_the_leading_term() {
        let config = OracleConfig { rule: WeightRule::SameParity, ..OracleConfig::default() };
        assert_eq!(degree_by_differences_with(2, 4, config).unwrap().degree, BigInt::from(24));
        // no effect away from n = 2k
        assert_eq!(degree_by_differences_with(2, 5, config).unwrap().degree, BigInt::from(40));
    }

    #[test]
    fn budget_and_range_errors() {
        assert_eq!(
            degree_by_differences(3, 8).unwrap_err(),
            RepdimError::BudgetExceeded { p: 15, max_p: 12 }
        );
        assert!(matches!(degree_by_differences(3, 5), Err(RepdimError::Partition(_))));
        let tiny = OracleConfig { extra_bases: 0, ..OracleConfig::default() };
        // F for (1,3) is polynomial from d = 0 on, so one extra base suffices
        assert!(degree_by_differences_with(1, 3, tiny).is_ok());
    }

    #[test]
    fn profile_is_nondecreasing_and_grows_like_d_to_the_p() {
        let profile = hilbert_profile(2, 5, 40, WeightRule::Even).unwrap();
        assert!(profile.values.windows(2).all(|w| w[0].1 <= w[1].1));
        let f = |d: usize| crate::scalar::ratio_to_f64(&Rational::from_integer(profile.values[d].1.clone()));
        let ratio = f(40) / f(20);
        let target = 2f64.powi(profile.p as i32);
        assert!((ratio / target - 1.0).abs() < 0.2, "ratio {ratio} vs {target}");
    }
}
