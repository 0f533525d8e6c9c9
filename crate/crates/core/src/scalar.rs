//! Exact scalars: big rationals, integer combinatorics, and Gamma values at
//! positive half-integers carried as rational multiples of powers of `√π`.

use std::fmt;
use std::ops::{Div, Mul};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Serialize, Serializer};
use thiserror::Error;

/// Arbitrary-precision fraction, always kept in lowest terms with a positive
/// denominator.
pub type Rational = BigRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScalarError {
    #[error("gamma_half needs a positive doubled argument, got {0}")]
    NonPositiveGammaArgument(i64),
    #[error("value {0} is not an integer (sqrt(pi) exponent or denominator left over)")]
    NonIntegral(Box<PiScaled>),
    #[error("cannot add {0} and {1}: sqrt(pi) exponents differ")]
    ExponentMismatch(Box<PiScaled>, Box<PiScaled>),
}

/// `numer / denom` as a [`Rational`]. Panics on a zero denominator.
pub fn rat(numer: i64, denom: i64) -> Rational {
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}

pub fn int(value: i64) -> Rational {
    Rational::from_integer(BigInt::from(value))
}

/// `n!`, with `0! = 1`.
pub fn factorial(n: u64) -> BigInt {
    (2..=n).fold(BigInt::one(), |acc, i| acc * i)
}

/// `n!! = n (n-2) (n-4) ...`, with `0!! = (-1)!! = 1`.
///
/// Panics for `n < -1`.
pub fn double_factorial(n: i64) -> BigInt {
    assert!(n >= -1, "double factorial undefined for {n}");
    let mut acc = BigInt::one();
    let mut i = n;
    while i > 1 {
        acc *= i;
        i -= 2;
    }
    acc
}

/// Binomial coefficient; zero when `k > n`.
pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// `coeff · π^(half_pi_exp / 2)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PiScaled {
    pub coeff: Rational,
    pub half_pi_exp: i64,
}

impl PiScaled {
    pub fn new(coeff: Rational, half_pi_exp: i64) -> Self {
        PiScaled { coeff, half_pi_exp }
    }

    pub fn from_rational(coeff: Rational) -> Self {
        PiScaled::new(coeff, 0)
    }

    pub fn one() -> Self {
        PiScaled::from_rational(Rational::one())
    }

    pub fn zero() -> Self {
        PiScaled::from_rational(Rational::zero())
    }

    pub fn is_zero(&self) -> bool {
        self.coeff.is_zero()
    }

    pub fn is_integral(&self) -> bool {
        self.half_pi_exp == 0 && self.coeff.is_integer()
    }

    /// Sum of two values with the same `√π` exponent. Zero is absorbed
    /// regardless of its exponent.
    pub fn try_add(&self, other: &PiScaled) -> Result<PiScaled, ScalarError> {
        if self.is_zero() {
            return Ok(other.clone());
        }
        if other.is_zero() {
            return Ok(self.clone());
        }
        if self.half_pi_exp != other.half_pi_exp {
            return Err(ScalarError::ExponentMismatch(Box::new(self.clone()), Box::new(other.clone())));
        }
        Ok(PiScaled::new(&self.coeff + &other.coeff, self.half_pi_exp))
    }

    pub fn scale(&self, factor: &Rational) -> PiScaled {
        PiScaled::new(&self.coeff * factor, self.half_pi_exp)
    }

    pub fn recip(&self) -> PiScaled {
        PiScaled::new(self.coeff.recip(), -self.half_pi_exp)
    }

    /// The value as a rational, if no `√π` factor remains.
    pub fn to_rational(&self) -> Result<Rational, ScalarError> {
        if self.half_pi_exp != 0 && !self.is_zero() {
            return Err(ScalarError::NonIntegral(Box::new(self.clone())));
        }
        Ok(self.coeff.clone())
    }

    pub fn to_f64(&self) -> f64 {
        let c = ratio_to_f64(&self.coeff);
        c * std::f64::consts::PI.powf(self.half_pi_exp as f64 / 2.0)
    }
}

/// Returns the integer iff the `√π` exponent is zero and the coefficient has
/// denominator one.
pub fn to_integer(value: &PiScaled) -> Result<BigInt, ScalarError> {
    if value.is_integral() {
        Ok(value.coeff.numer().clone())
    } else {
        Err(ScalarError::NonIntegral(Box::new(value.clone())))
    }
}

impl<'a> Mul<&'a PiScaled> for &'a PiScaled {
    type Output = PiScaled;

    fn mul(self, rhs: &'a PiScaled) -> PiScaled {
        PiScaled::new(&self.coeff * &rhs.coeff, self.half_pi_exp + rhs.half_pi_exp)
    }
}

impl Mul for PiScaled {
    type Output = PiScaled;

    fn mul(self, rhs: PiScaled) -> PiScaled {
        &self * &rhs
    }
}

impl<'a> Div<&'a PiScaled> for &'a PiScaled {
    type Output = PiScaled;

    fn div(self, rhs: &'a PiScaled) -> PiScaled {
        PiScaled::new(&self.coeff / &rhs.coeff, self.half_pi_exp - rhs.half_pi_exp)
    }
}

impl Div for PiScaled {
    type Output = PiScaled;

    fn div(self, rhs: PiScaled) -> PiScaled {
        &self / &rhs
    }
}

impl fmt::Display for PiScaled {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.half_pi_exp {
            0 => write!(f, "{}", self.coeff),
            1 => write!(f, "{}*sqrt(pi)", self.coeff),
            e => write!(f, "{}*sqrt(pi)^{}", self.coeff, e),
        }
    }
}

impl Serialize for PiScaled {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// `Γ(twice_arg / 2)` exactly.
///
/// Integer arguments give `(m-1)!`; half-integers use
/// `Γ(m + 1/2) = (2m-1)!! √π / 2^m`.
pub fn gamma_half(twice_arg: i64) -> Result<PiScaled, ScalarError> {
    if twice_arg <= 0 {
        return Err(ScalarError::NonPositiveGammaArgument(twice_arg));
    }
    if twice_arg.is_even() {
        let m = (twice_arg / 2) as u64;
        Ok(PiScaled::from_rational(Rational::from_integer(factorial(m - 1))))
    } else {
        let m = (twice_arg - 1) / 2;
        let numer = double_factorial(2 * m - 1);
        let denom = BigInt::one() << (m as usize);
        Ok(PiScaled::new(Rational::new(numer, denom), 1))
    }
}

/// Serde helper writing any `Display` value (rationals, big integers) as a string.
pub fn serialize_display<T: fmt::Display, S: Serializer>(value: &T, serializer: S) -> Result<S::Ok, S::Error> {
    serializer.collect_str(value)
}

/// Lossy conversion used only for reporting and float sanity checks.
pub fn ratio_to_f64(value: &Rational) -> f64 {
    // Shift both parts down so that huge values do not overflow to inf/inf.
    let numer = value.numer();
    let denom = value.denom();
    let bits = numer.bits().max(denom.bits());
    let shift = bits.saturating_sub(1000) as usize;
    let n = bigint_to_f64(&(numer >> shift));
    let d = bigint_to_f64(&(denom >> shift));
    n / d
}

fn bigint_to_f64(value: &BigInt) -> f64 {
    use num_traits::ToPrimitive;
    value.to_f64().unwrap_or_else(|| {
        if value.is_negative() {
            f64::NEG_INFINITY
        } else {
            f64::INFINITY
        }
    })
}
