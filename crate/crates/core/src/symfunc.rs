//! Symmetric polynomials in the monomial basis and Jack polynomials.
//!
//! Jack polynomials are produced in the monic normalization `P_λ^{(α)}`:
//! the coefficient of `m_λ` is one and only `m_μ` with `λ ⪰ μ` occur.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::partitions::{dominates, partitions_of, Partition};
use crate::scalar::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SymfuncError {
    #[error("partition {partition} has more than {num_vars} parts")]
    TooManyParts { partition: Partition, num_vars: usize },
    #[error("Jack parameter must be positive, got {0}")]
    NonPositiveAlpha(Rational),
    #[error("residual term {0} is not below the previously removed leading term")]
    NotInSpan(Partition),
}

/// `Σ_λ c_λ m_λ(x_1, …, x_m)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymPoly {
    num_vars: usize,
    terms: BTreeMap<Partition, Rational>,
}

impl SymPoly {
    pub fn zero(num_vars: usize) -> Self {
        SymPoly { num_vars, terms: BTreeMap::new() }
    }

    /// The monomial symmetric polynomial `m_λ`.
    pub fn monomial(lambda: Partition, num_vars: usize) -> Result<Self, SymfuncError> {
        let mut p = SymPoly::zero(num_vars);
        p.add_term(lambda, Rational::one())?;
        Ok(p)
    }

    /// The elementary symmetric polynomial `e_r = m_{(1^r)}`.
    pub fn elementary(r: usize, num_vars: usize) -> Result<Self, SymfuncError> {
        SymPoly::monomial(Partition::from_unsorted(vec![1; r]), num_vars)
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn terms(&self) -> &BTreeMap<Partition, Rational> {
        &self.terms
    }

    pub fn coeff(&self, lambda: &Partition) -> Rational {
        self.terms.get(lambda).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Adds `c · m_λ`, dropping the entry if it cancels.
    pub fn add_term(&mut self, lambda: Partition, c: Rational) -> Result<(), SymfuncError> {
        if lambda.len() > self.num_vars {
            return Err(SymfuncError::TooManyParts { partition: lambda, num_vars: self.num_vars });
        }
        if c.is_zero() {
            return Ok(());
        }
        let entry = self.terms.entry(lambda).or_insert_with(Rational::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.retain(|_, v| !v.is_zero());
        }
        Ok(())
    }

    /// `self + factor · other`.
    pub fn add_scaled(&mut self, other: &SymPoly, factor: &Rational) {
        assert_eq!(self.num_vars, other.num_vars, "variable counts differ");
        for (lambda, c) in &other.terms {
            let entry = self.terms.entry(lambda.clone()).or_insert_with(Rational::zero);
            *entry += c * factor;
        }
        self.terms.retain(|_, v| !v.is_zero());
    }

    /// Product in the monomial basis: the coefficient of `m_ν` is the
    /// coefficient of the sorted monomial `x^ν`.
    pub fn mul(&self, other: &SymPoly) -> SymPoly {
        assert_eq!(self.num_vars, other.num_vars, "variable counts differ");
        let m = self.num_vars;
        let mut out: BTreeMap<Partition, Rational> = BTreeMap::new();
        for (a, ca) in &self.terms {
            let orbit_a = distinct_permutations(&a.padded(m));
            for (b, cb) in &other.terms {
                let orbit_b = distinct_permutations(&b.padded(m));
                let cab = ca * cb;
                let mut counts: HashMap<Vec<u32>, u64> = HashMap::new();
                for u in &orbit_a {
                    for v in &orbit_b {
                        let sum: Vec<u32> = u.iter().zip(v).map(|(x, y)| x + y).collect();
                        if sum.windows(2).all(|w| w[0] >= w[1]) {
                            *counts.entry(sum).or_default() += 1;
                        }
                    }
                }
                for (nu, count) in counts {
                    let entry = out
                        .entry(Partition::from_unsorted(nu))
                        .or_insert_with(Rational::zero);
                    *entry += &cab * Rational::from_integer(BigInt::from(count));
                }
            }
        }
        out.retain(|_, v| !v.is_zero());
        SymPoly { num_vars: m, terms: out }
    }

    /// Reads off the monomial-basis coefficients of a symmetric polynomial
    /// given as a full exponent-vector map.
    fn from_symmetric_expansion(num_vars: usize, poly: &HashMap<Vec<u32>, BigInt>) -> SymPoly {
        let mut terms = BTreeMap::new();
        for (exps, c) in poly {
            if !c.is_zero() && exps.windows(2).all(|w| w[0] >= w[1]) {
                terms.insert(Partition::from_unsorted(exps.clone()), Rational::from_integer(c.clone()));
            }
        }
        SymPoly { num_vars, terms }
    }
}

impl fmt::Display for SymPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (lambda, c)) in self.terms.iter().rev().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{c}*m{lambda}")?;
        }
        Ok(())
    }
}

/// All distinct rearrangements of `v`.
fn distinct_permutations(v: &[u32]) -> Vec<Vec<u32>> {
    let mut sorted = v.to_vec();
    sorted.sort_unstable();
    let mut out = vec![sorted.clone()];
    // next_permutation over the multiset
    loop {
        let n = sorted.len();
        if n < 2 {
            break;
        }
        let mut i = n - 1;
        while i > 0 && sorted[i - 1] >= sorted[i] {
            i -= 1;
        }
        if i == 0 {
            break;
        }
        let mut j = n - 1;
        while sorted[j] <= sorted[i - 1] {
            j -= 1;
        }
        sorted.swap(i - 1, j);
        sorted[i..].reverse();
        out.push(sorted.clone());
    }
    out
}

/// `∏_{1≤i<j≤k} (x_i + x_j)^power` in `k` variables.
pub fn product_of_pair_sums_pow(k: usize, power: u32) -> SymPoly {
    let mut poly: HashMap<Vec<u32>, BigInt> = HashMap::new();
    poly.insert(vec![0; k], BigInt::one());
    for i in 0..k {
        for j in i + 1..k {
            for _ in 0..power {
                let mut next: HashMap<Vec<u32>, BigInt> = HashMap::with_capacity(poly.len() * 2);
                for (exps, c) in &poly {
                    for idx in [i, j] {
                        let mut e = exps.clone();
                        e[idx] += 1;
                        *next.entry(e).or_insert_with(BigInt::zero) += c;
                    }
                }
                poly = next;
            }
        }
    }
    SymPoly::from_symmetric_expansion(k, &poly)
}

/// `∏_{1≤i<j≤k} (x_i + x_j)` in `k` variables.
pub fn product_of_pair_sums(k: usize) -> SymPoly {
    product_of_pair_sums_pow(k, 1)
}

type JackKey = (Partition, Rational, usize);

fn jack_cache() -> &'static RwLock<HashMap<JackKey, Arc<SymPoly>>> {
    static CACHE: OnceLock<RwLock<HashMap<JackKey, Arc<SymPoly>>>> = OnceLock::new();
    CACHE.get_or_init(|| RwLock::new(HashMap::new()))
}

/// Monic Jack polynomial `P_λ^{(α)}(x_1, …, x_m)` in the monomial basis.
///
/// Results are memoized process-wide by `(λ, α, m)`.
pub fn jack_p(lambda: &Partition, alpha: &Rational, num_vars: usize) -> Result<Arc<SymPoly>, SymfuncError> {
    if lambda.len() > num_vars {
        return Err(SymfuncError::TooManyParts { partition: lambda.clone(), num_vars });
    }
    if !alpha.is_positive() {
        return Err(SymfuncError::NonPositiveAlpha(alpha.clone()));
    }
    let key = (lambda.clone(), alpha.clone(), num_vars);
    if let Some(hit) = jack_cache().read().expect("jack cache poisoned").get(&key) {
        return Ok(Arc::clone(hit));
    }
    let poly = Arc::new(jack_p_uncached(lambda, alpha, num_vars));
    let mut cache = jack_cache().write().expect("jack cache poisoned");
    Ok(Arc::clone(cache.entry(key).or_insert(poly)))
}

/// Eigenvalue of `m_μ` under the diagonal part of
/// `D = (α/2) Σ x_i² ∂_i² + Σ_{i≠j} x_i²/(x_i - x_j) ∂_i`.
fn diagonal_eigenvalue(mu: &[u32], alpha: &Rational) -> Rational {
    let m = mu.len();
    let mut quad = BigInt::zero();
    let mut lin = BigInt::zero();
    for (i, &p) in mu.iter().enumerate() {
        let p = BigInt::from(p);
        quad += &p * (&p - 1u32);
        lin += &p * BigInt::from(m - 1 - i);
    }
    alpha * Rational::from_integer(quad) / Rational::from_integer(BigInt::from(2)) + Rational::from_integer(lin)
}

/// Solves `D P_λ = e_λ P_λ` for the lower coefficients. With `μ` sorted, the
/// off-diagonal part of `D` sends `m_κ` to `x^μ` with weight `p - q` whenever
/// `κ` arises from `μ` by replacing a pair `(μ_i, μ_j)` with `(p, q)`,
/// `p + q = μ_i + μ_j` and `q < min(μ_i, μ_j)`.
fn jack_p_uncached(lambda: &Partition, alpha: &Rational, num_vars: usize) -> SymPoly {
    let m = num_vars;
    let size = lambda.size() as u32;
    let e_lambda = diagonal_eigenvalue(&lambda.padded(m), alpha);
    let mut coeffs: HashMap<Partition, Rational> = HashMap::new();
    coeffs.insert(lambda.clone(), Rational::one());
    let mut result = SymPoly::zero(m);
    result.terms.insert(lambda.clone(), Rational::one());

    for mu in partitions_of(size, m) {
        if mu >= *lambda || !dominates(lambda, &mu) {
            continue;
        }
        let mu_vec = mu.padded(m);
        let mut acc = Rational::zero();
        for i in 0..m {
            for j in i + 1..m {
                let (a, b) = (mu_vec[i], mu_vec[j]);
                let s = a + b;
                for q in 0..a.min(b) {
                    let p = s - q;
                    let mut kappa = mu_vec.clone();
                    kappa[i] = p;
                    kappa[j] = q;
                    if let Some(c) = coeffs.get(&Partition::from_unsorted(kappa)) {
                        acc += c * Rational::from_integer(BigInt::from(p - q));
                    }
                }
            }
        }
        if acc.is_zero() {
            continue;
        }
        let denom = &e_lambda - diagonal_eigenvalue(&mu_vec, alpha);
        let c = acc / denom;
        coeffs.insert(mu.clone(), c.clone());
        result.terms.insert(mu, c);
    }
    result
}

/// Coefficients of a symmetric polynomial in the monic Jack basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JackExpansion {
    pub alpha: Rational,
    pub num_vars: usize,
    pub coeffs: BTreeMap<Partition, Rational>,
}

impl JackExpansion {
    pub fn coeff(&self, lambda: &Partition) -> Rational {
        self.coeffs.get(lambda).cloned().unwrap_or_else(Rational::zero)
    }

    /// `Σ c_λ P_λ` back in the monomial basis.
    pub fn reconstruct(&self) -> Result<SymPoly, SymfuncError> {
        let mut out = SymPoly::zero(self.num_vars);
        for (lambda, c) in &self.coeffs {
            out.add_scaled(&*jack_p(lambda, &self.alpha, self.num_vars)?, c);
        }
        Ok(out)
    }
}

/// Expands `f` in the monic Jack basis by peeling off the lexicographically
/// largest monomial term, which is always dominance-maximal.
pub fn jack_expand(f: &SymPoly, alpha: &Rational) -> Result<JackExpansion, SymfuncError> {
    let mut residual = f.clone();
    let mut coeffs = BTreeMap::new();
    let mut previous: Option<Partition> = None;
    while let Some((lead, c)) = residual.terms.iter().next_back().map(|(l, c)| (l.clone(), c.clone())) {
        if let Some(prev) = &previous {
            if lead >= *prev {
                return Err(SymfuncError::NotInSpan(lead));
            }
        }
        let basis = jack_p(&lead, alpha, f.num_vars)?;
        residual.add_scaled(&basis, &-c.clone());
        coeffs.insert(lead.clone(), c);
        previous = Some(lead);
    }
    Ok(JackExpansion { alpha: alpha.clone(), num_vars: f.num_vars, coeffs })
}
