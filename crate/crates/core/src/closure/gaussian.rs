//! Gaussian rationals `ℚ(i)`.

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::scalar::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct GaussianRational {
    pub re: Rational,
    pub im: Rational,
}

impl GaussianRational {
    pub fn new(re: Rational, im: Rational) -> Self {
        GaussianRational { re, im }
    }

    pub fn real(re: Rational) -> Self {
        GaussianRational { re, im: Rational::zero() }
    }

    pub fn from_int(v: i64) -> Self {
        Self::real(Rational::from_integer(BigInt::from(v)))
    }

    pub fn i() -> Self {
        GaussianRational { re: Rational::zero(), im: Rational::one() }
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        GaussianRational { re: self.re.clone(), im: -&self.im }
    }

    /// `re² + im²`.
    pub fn norm(&self) -> Rational {
        &self.re * &self.re + &self.im * &self.im
    }

    /// Multiplicative inverse, `None` for zero.
    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let n = self.norm();
        Some(GaussianRational { re: &self.re / &n, im: -&self.im / &n })
    }

    pub fn scale(&self, r: &Rational) -> Self {
        GaussianRational { re: &self.re * r, im: &self.im * r }
    }

    /// Lowest common multiple of the denominators of both parts.
    pub fn denom_lcm(&self) -> BigInt {
        num_integer::Integer::lcm(self.re.denom(), self.im.denom())
    }

    pub fn to_f64_pair(&self) -> (f64, f64) {
        (crate::scalar::ratio_to_f64(&self.re), crate::scalar::ratio_to_f64(&self.im))
    }
}

impl From<Rational> for GaussianRational {
    fn from(r: Rational) -> Self {
        Self::real(r)
    }
}

impl From<i64> for GaussianRational {
    fn from(v: i64) -> Self {
        Self::from_int(v)
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $body:expr) => {
        impl<'a> $trait<&'a GaussianRational> for &'a GaussianRational {
            type Output = GaussianRational;
            fn $method(self, rhs: &'a GaussianRational) -> GaussianRational {
                let f: fn(&GaussianRational, &GaussianRational) -> GaussianRational = $body;
                f(self, rhs)
            }
        }
        impl $trait for GaussianRational {
            type Output = GaussianRational;
            fn $method(self, rhs: GaussianRational) -> GaussianRational {
                (&self).$method(&rhs)
            }
        }
        impl<'a> $trait<&'a GaussianRational> for GaussianRational {
            type Output = GaussianRational;
            fn $method(self, rhs: &'a GaussianRational) -> GaussianRational {
                (&self).$method(rhs)
            }
        }
    };
}

forward_binop!(Add, add, |a, b| GaussianRational { re: &a.re + &b.re, im: &a.im + &b.im });
forward_binop!(Sub, sub, |a, b| GaussianRational { re: &a.re - &b.re, im: &a.im - &b.im });
forward_binop!(Mul, mul, |a, b| GaussianRational {
    re: &a.re * &b.re - &a.im * &b.im,
    im: &a.re * &b.im + &a.im * &b.re,
});
forward_binop!(Div, div, |a, b| a * &b.inv().expect("division by zero in Q(i)"));

impl Neg for GaussianRational {
    type Output = GaussianRational;
    fn neg(self) -> GaussianRational {
        GaussianRational { re: -self.re, im: -self.im }
    }
}

impl Neg for &GaussianRational {
    type Output = GaussianRational;
    fn neg(self) -> GaussianRational {
        GaussianRational { re: -&self.re, im: -&self.im }
    }
}

impl AddAssign<&GaussianRational> for GaussianRational {
    fn add_assign(&mut self, rhs: &GaussianRational) {
        self.re += &rhs.re;
        self.im += &rhs.im;
    }
}

impl SubAssign<&GaussianRational> for GaussianRational {
    fn sub_assign(&mut self, rhs: &GaussianRational) {
        self.re -= &rhs.re;
        self.im -= &rhs.im;
    }
}

/// Writes `a/b+c/d*i`, dropping zero parts and unit imaginary coefficients.
impl fmt::Display for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            return write!(f, "{}", self.re);
        }
        if !self.re.is_zero() {
            write!(f, "{}", self.re)?;
            if self.im.is_positive() {
                write!(f, "+")?;
            }
        }
        if self.im.is_negative() {
            write!(f, "-")?;
        }
        let abs = self.im.abs();
        if abs.is_one() {
            write!(f, "i")
        } else {
            write!(f, "{abs}*i")
        }
    }
}

impl Serialize for GaussianRational {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("cannot read {text:?} as a Gaussian rational")]
pub struct GaussianParseError {
    pub text: String,
}

fn parse_rational(s: &str) -> Option<Rational> {
    if s.is_empty() || s.starts_with('/') || s.ends_with('/') {
        return None;
    }
    let r = Rational::from_str(s).ok()?;
    Some(r)
}

fn parse_imag(s: &str) -> Option<Rational> {
    let body = s.strip_suffix('i')?;
    let body = body.strip_suffix('*').unwrap_or(body);
    match body {
        "" | "+" => Some(Rational::one()),
        "-" => Some(-Rational::one()),
        _ => parse_rational(body),
    }
}

/// Accepts `a`, `a/b`, `c/d*i`, `c/d i`, `i`, `-i`, and sums such as
/// `a/b+c/d*i` or `a-i`. Whitespace is ignored.
impl FromStr for GaussianRational {
    type Err = GaussianParseError;

    fn from_str(text: &str) -> Result<Self, Self::Err> {
        let err = || GaussianParseError { text: text.to_string() };
        let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        if s.is_empty() {
            return Err(err());
        }
        if !s.ends_with('i') {
            return parse_rational(&s).map(Self::real).ok_or_else(err);
        }
        // split before the last sign that is not the leading one
        let split = s
            .char_indices()
            .skip(1)
            .filter(|&(_, c)| c == '+' || c == '-')
            .map(|(idx, _)| idx)
            .last();
        match split {
            Some(idx) => {
                let re = parse_rational(&s[..idx]).ok_or_else(err)?;
                let im = parse_imag(&s[idx..]).ok_or_else(err)?;
                Ok(GaussianRational { re, im })
            }
            None => parse_imag(&s).map(|im| GaussianRational { re: Rational::zero(), im }).ok_or_else(err),
        }
    }
}
