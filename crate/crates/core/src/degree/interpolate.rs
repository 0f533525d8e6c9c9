//! The polynomial part `P_k(n)` of the degree.
//!
//! Dividing `d_{k,n}` by `α_{k,n}` and an explicit product of factorials,
//! double factorials and a power of two leaves a polynomial in `n` of degree
//! at most `binom(k,2) - Σ_{i≤k} ⌊i/2⌋`.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::{alpha_coefficient, degree, DegreeError};
use crate::scalar::{double_factorial, factorial, int, to_integer, PiScaled, Rational};

/// Dense polynomial with rational coefficients, lowest degree first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalPolynomial {
    coeffs: Vec<Rational>,
}

impl RationalPolynomial {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        RationalPolynomial { coeffs }
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// Degree, with the zero polynomial reported as 0.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        self.coeffs
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * x + c)
    }

    /// Newton interpolation through `(x_i, y_i)`; the `x_i` must be distinct.
    pub fn interpolate(points: &[(Rational, Rational)]) -> Self {
        let n = points.len();
        let mut dd: Vec<Rational> = points.iter().map(|(_, y)| y.clone()).collect();
        for level in 1..n {
            for i in (level..n).rev() {
                dd[i] = (&dd[i] - &dd[i - 1]) / (&points[i].0 - &points[i - level].0);
            }
        }
        // expand Σ dd[i] ∏_{j<i} (x - x_j) into monomial coefficients
        let mut coeffs = vec![Rational::zero(); n.max(1)];
        let mut basis = vec![Rational::one()];
        for (i, c) in dd.iter().enumerate() {
            for (slot, b) in coeffs.iter_mut().zip(&basis) {
                *slot += c * b;
            }
            let xi = &points[i].0;
            let mut next = vec![Rational::zero(); basis.len() + 1];
            for (j, b) in basis.iter().enumerate() {
                next[j + 1] += b;
                next[j] -= b * xi;
            }
            basis = next;
        }
        RationalPolynomial::new(coeffs)
    }

    /// Same polynomial divided by its leading coefficient.
    pub fn monic(&self) -> Self {
        match self.coeffs.last() {
            Some(lead) => RationalPolynomial::new(self.coeffs.iter().map(|c| c / lead).collect()),
            None => self.clone(),
        }
    }
}

impl fmt::Display for RationalPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (power, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            first = false;
            let abs = c.abs();
            let coeff = if abs.is_one() && power > 0 { String::new() } else { format!("{abs}*") };
            match power {
                0 => write!(f, "{abs}")?,
                1 => write!(f, "{coeff}n")?,
                _ => write!(f, "{coeff}n^{power}")?,
            }
        }
        Ok(())
    }
}

/// `binom(k,2) - Σ_{i=1}^{k} ⌊i/2⌋`.
pub fn pk_degree_bound(k: u32) -> u32 {
    k * (k - 1) / 2 - (1..=k).map(|i| i / 2).sum::<u32>()
}

/// `α_{k,n} ∏_{j=0}^{⌊(k-1)/2⌋} (n-2k+2j)! ∏_{j=1}^{⌊k/2⌋} (2(n-2k+2j)-1)!!
/// / 2^{⌊k/2⌋(n-2k+⌊k/2⌋-1)}`, so that `d_{k,n} = prefactor · P_k(n)`.
pub fn pk_prefactor(k: u32, n: u32) -> Result<Rational, DegreeError> {
    let alpha = alpha_coefficient(k, n)?;
    let base = i64::from(n) - 2 * i64::from(k);
    let half = i64::from(k / 2);
    let mut numer = BigInt::one();
    for j in 0..=i64::from((k - 1) / 2) {
        numer *= factorial((base + 2 * j) as u64);
    }
    for j in 1..=half {
        numer *= double_factorial(2 * (base + 2 * j) - 1);
    }
    let shift = half * (base + half - 1);
    let two_power = BigInt::one() << shift.unsigned_abs();
    let scale = if shift >= 0 {
        Rational::new(numer, two_power)
    } else {
        Rational::from_integer(numer * two_power)
    };
    Ok(alpha * scale)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PkFit {
    pub k: u32,
    pub bound: u32,
    /// Values of `n` used to fit the polynomial.
    pub seed: Vec<u32>,
    /// Values of `n` checked against the fit afterwards.
    pub checked: Vec<u32>,
    pub poly: RationalPolynomial,
}

/// Number of points past the seed window that must agree with the fit.
const CONFIRMATION_POINTS: u32 = 2;

/// Fits `P_k` from `d_{k,n}` at `n = 2k, …, 2k + bound` and confirms the fit
/// at the next two values of `n`.
pub fn interpolate_pk(k: u32) -> Result<PkFit, DegreeError> {
    if k == 0 {
        return Err(DegreeError::NotReduced { k, n: 0 });
    }
    let bound = pk_degree_bound(k);
    let value_at = |n: u32| -> Result<Rational, DegreeError> {
        let d = degree(k, n)?.degree;
        Ok(Rational::from_integer(d) / pk_prefactor(k, n)?)
    };
    let seed: Vec<u32> = (2 * k..=2 * k + bound).collect();
    let points = seed
        .iter()
        .map(|&n| Ok((int(i64::from(n)), value_at(n)?)))
        .collect::<Result<Vec<_>, DegreeError>>()?;
    let poly = RationalPolynomial::interpolate(&points);
    let checked: Vec<u32> = (1..=CONFIRMATION_POINTS).map(|i| 2 * k + bound + i).collect();
    for &n in &checked {
        if poly.eval(&int(i64::from(n))) != value_at(n)? {
            return Err(DegreeError::DegreeBoundViolated { k, bound, n });
        }
    }
    Ok(PkFit { k, bound, seed, checked, poly })
}

/// `prefactor(k, n) · P_k(n)`, which must be a positive integer.
pub fn predict_degree(k: u32, n: u32, poly: &RationalPolynomial) -> Result<BigInt, DegreeError> {
    let value = pk_prefactor(k, n)? * poly.eval(&int(i64::from(n)));
    Ok(to_integer(&PiScaled::from_rational(value))?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;

    #[test]
    fn bounds() {
        assert_eq!(pk_degree_bound(1), 0);
        assert_eq!(pk_degree_bound(2), 0);
        assert_eq!(pk_degree_bound(3), 1);
        assert_eq!(pk_degree_bound(4), 2);
        assert_eq!(pk_degree_bound(5), 4);
    }

    #[test]
    fn newton_interpolation() {
        // 3n^2 - 2n + 1/2
        let f = |n: i64| int(3 * n * n - 2 * n) + rat(1, 2);
        let pts: Vec<_> = (0..3).map(|n| (int(n), f(n))).collect();
        let poly = RationalPolynomial::interpolate(&pts);
        assert_eq!(poly.coeffs(), &[rat(1, 2), int(-2), int(3)]);
        assert_eq!(poly.eval(&int(10)), f(10));
        assert_eq!(poly.to_string(), "3*n^2 - 2*n + 1/2");
        assert_eq!(poly.monic().to_string(), "n^2 - 2/3*n + 1/6");
    }

    #[test]
    fn rank_two_is_constant() {
        let fit = interpolate_pk(2).unwrap();
        assert_eq!(fit.poly.degree(), 0);
        assert_eq!(fit.seed, vec![4]);
    }

    #[test]
    fn rank_three_and_four_shapes() {
        let fit = interpolate_pk(3).unwrap();
        assert_eq!(fit.poly.monic(), RationalPolynomial::new(vec![rat(-25, 8), int(1)]));
        let fit = interpolate_pk(4).unwrap();
        assert_eq!(
            fit.poly.monic(),
            RationalPolynomial::new(vec![rat(634, 32), rat(-288, 32), int(1)])
        );
    }
}
