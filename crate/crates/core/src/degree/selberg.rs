//! The Selberg-type integral
//! `∫_{x_1 ≥ … ≥ x_m ≥ 0, Σx ≤ 1} ∏ x_i^p ∏_{i<j} (x_i² - x_j²)^d dx`
//! in closed form through Jack coefficients at `α = 2/d`, plus a seeded
//! Monte-Carlo estimate of the same integral.

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::DegreeError;
use crate::partitions::{dominates, Partition};
use crate::scalar::{factorial, gamma_half, rat, PiScaled, Rational};
use crate::symfunc::{jack_expand, product_of_pair_sums_pow};

/// Exact value of the integral as a rational.
pub fn selberg_rhs(m: u32, p: u32, d: u32) -> Result<Rational, DegreeError> {
    if m == 0 || p == 0 || d == 0 {
        return Err(DegreeError::BadSelbergParameters { m, p, d });
    }
    let (m64, p64, d64) = (i64::from(m), i64::from(p), i64::from(d));
    let alpha = rat(2, d64);
    let expansion = jack_expand(&product_of_pair_sums_pow(m as usize, d), &alpha)?;
    let top = Partition::staircase(m).scaled(d);

    let mut sum = PiScaled::zero();
    for (lambda, c) in &expansion.coeffs {
        debug_assert!(dominates(&top, lambda));
        let parts: Vec<i64> = lambda.padded(m as usize).into_iter().map(i64::from).collect();
        let mut term = PiScaled::from_rational(c.clone());
        for (idx, &li) in parts.iter().enumerate() {
            let i = idx as i64 + 1;
            term = term * gamma_half(2 * (li + p64 + 1) + d64 * (m64 - i))?;
        }
        for i in 0..parts.len() {
            for j in i + 1..parts.len() {
                let diff = 2 * (parts[i] - parts[j]);
                let gap = (j - i) as i64;
                term = term * (gamma_half(diff + d64 * (gap + 1))? / gamma_half(diff + d64 * gap)?);
            }
        }
        sum = sum.try_add(&term)?;
    }
    let denom = factorial((m64 * (p64 + 1 + d64 * (m64 - 1))) as u64);
    let value = sum.scale(&Rational::new(BigInt::from(1), denom));
    Ok(value.to_rational()?)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct McEstimate {
    pub estimate: f64,
    pub std_error: f64,
    pub samples: u64,
    /// Samples that landed inside the integration region.
    pub accepted: u64,
    pub seed: u64,
}

/// Uniform sampling of `[0,1]^m`, keeping points with
/// `x_1 ≥ … ≥ x_m ≥ 0` and `Σx ≤ 1`.
pub fn selberg_monte_carlo(m: u32, p: u32, d: u32, samples: u64, seed: u64) -> McEstimate {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let m = m as usize;
    let mut x = vec![0.0f64; m];
    let (mut sum, mut sum_sq) = (0.0f64, 0.0f64);
    let mut accepted = 0u64;
    for _ in 0..samples {
        for xi in x.iter_mut() {
            *xi = rng.gen::<f64>();
        }
        let sorted = x.windows(2).all(|w| w[0] >= w[1]);
        if !sorted || x.iter().sum::<f64>() > 1.0 {
            continue;
        }
        accepted += 1;
        let mut f: f64 = x.iter().map(|xi| xi.powi(p as i32)).product();
        for i in 0..m {
            for j in i + 1..m {
                f *= (x[i] * x[i] - x[j] * x[j]).powi(d as i32);
            }
        }
        sum += f;
        sum_sq += f * f;
    }
    let count = samples.max(1) as f64;
    let mean = sum / count;
    let var = (sum_sq / count - mean * mean).max(0.0);
    McEstimate {
        estimate: mean,
        std_error: (var / count).sqrt(),
        samples,
        accepted,
        seed,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::ratio_to_f64;

    #[test]
    fn closed_form_examples() {
        assert_eq!(selberg_rhs(2, 1, 1).unwrap(), rat(1, 192));
        assert_eq!(selberg_rhs(1, 2, 1).unwrap(), rat(1, 3));
        assert_eq!(selberg_rhs(1, 1, 3).unwrap(), rat(1, 2));
    }

    #[test]
    fn rejects_zero_parameters() {
        assert!(selberg_rhs(0, 1, 1).is_err());
        assert!(selberg_rhs(1, 0, 1).is_err());
    }

    #[test]
    fn monte_carlo_is_reproducible() {
        let a = selberg_monte_carlo(2, 1, 1, 20_000, 7);
        let b = selberg_monte_carlo(2, 1, 1, 20_000, 7);
        assert_eq!(a, b);
        let exact = ratio_to_f64(&selberg_rhs(2, 1, 1).unwrap());
        assert!((a.estimate - exact).abs() < 6.0 * a.std_error);
    }
}
