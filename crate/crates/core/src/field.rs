//! Exact arithmetic over the rationals and the quadratic field Q(√3).
//!
//! [`Rational`] is a big-integer fraction kept in lowest terms with a
//! positive denominator, so equal values always compare equal field by
//! field. [`Surd3`] stores `a + b√3` with rational `a`, `b`; since √3 is
//! irrational that pair is unique for every element of the field.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision fraction in lowest terms.
pub type Rational = BigRational;

/// Build a rational from machine integers.
pub fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Rational from a machine integer.
pub fn int(value: i64) -> Rational {
    Rational::from_integer(BigInt::from(value))
}

/// Render as `num/den`, or just `num` when the denominator is one.
pub fn format_rational(value: &Rational) -> String {
    if value.denom().is_one() {
        value.numer().to_string()
    } else {
        format!("{}/{}", value.numer(), value.denom())
    }
}

/// Parse the `num/den` (or `num`) syntax produced by [`format_rational`].
pub fn parse_rational(text: &str) -> Result<Rational> {
    let text = text.trim();
    let bad = || Error::Parse(format!("not a fraction: {text:?}"));
    match text.split_once('/') {
        Some((num, den)) => {
            let num: BigInt = num.parse().map_err(|_| bad())?;
            let den: BigInt = den.parse().map_err(|_| bad())?;
            if den.is_zero() {
                return Err(Error::DivisionByZero);
            }
            Ok(Rational::new(num, den))
        }
        None => Ok(Rational::from_integer(text.parse().map_err(|_| bad())?)),
    }
}

/// Nearest double to a rational. Large numerators and denominators are
/// handled without overflowing the intermediate conversions.
pub fn rational_to_f64(value: &Rational) -> f64 {
    if let Some(v) = value.to_f64() {
        return v;
    }
    // Fallback: scale both sides down to a common bit length first.
    let num = value.numer();
    let den = value.denom();
    let shift = num.bits().max(den.bits()).saturating_sub(1000);
    let n = (num >> shift).to_f64().unwrap_or(f64::NAN);
    let d = (den >> shift).to_f64().unwrap_or(f64::NAN);
    n / d
}

/// An element `a + b√3` of Q(√3).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Surd3 {
    a: Rational,
    b: Rational,
}

impl Surd3 {
    pub fn new(a: Rational, b: Rational) -> Self {
        Surd3 { a, b }
    }

    pub fn from_rational(a: Rational) -> Self {
        Surd3 {
            a,
            b: Rational::zero(),
        }
    }

    pub fn from_int(a: i64) -> Self {
        Self::from_rational(int(a))
    }

    pub fn zero() -> Self {
        Self::from_int(0)
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    /// √3 itself.
    pub fn sqrt3() -> Self {
        Surd3::new(Rational::zero(), Rational::one())
    }

    /// α = 2 − √3, the surd whose powers drive every ladder closed form.
    pub fn alpha() -> Self {
        Surd3::new(int(2), int(-1))
    }

    /// α⁻¹ = 2 + √3.
    pub fn alpha_inverse() -> Self {
        Surd3::new(int(2), int(1))
    }

    pub fn rational_part(&self) -> &Rational {
        &self.a
    }

    pub fn sqrt3_part(&self) -> &Rational {
        &self.b
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    /// `a − b√3`.
    pub fn conjugate(&self) -> Self {
        Surd3::new(self.a.clone(), -self.b.clone())
    }

    /// Field norm `a² − 3b²`, the product with the conjugate.
    pub fn norm(&self) -> Rational {
        &self.a * &self.a - int(3) * &self.b * &self.b
    }

    pub fn inverse(&self) -> Result<Self> {
        if *self == Self::alpha() {
            return Ok(Self::alpha_inverse());
        }
        if *self == Self::alpha_inverse() {
            return Ok(Self::alpha());
        }
        // the norm of a nonzero element is nonzero because √3 is irrational
        let norm = self.norm();
        if norm.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Surd3::new(&self.a / &norm, -(&self.b / &norm)))
    }

    /// Exact `k`-th power; negative exponents go through [`Surd3::inverse`].
    pub fn pow(&self, k: i64) -> Result<Self> {
        let base = if k < 0 { self.inverse()? } else { self.clone() };
        let mut exp = k.unsigned_abs();
        let mut result = Surd3::one();
        let mut square = base;
        while exp > 0 {
            if exp & 1 == 1 {
                result = &result * &square;
            }
            exp >>= 1;
            if exp > 0 {
                square = &square * &square;
            }
        }
        Ok(result)
    }

    /// Exact sign of the real number `a + b√3`.
    pub fn signum(&self) -> Ordering {
        let sa = self.a.cmp(&Rational::zero());
        let sb = self.b.cmp(&Rational::zero());
        match (sa, sb) {
            (Ordering::Equal, s) | (s, Ordering::Equal) => s,
            (x, y) if x == y => x,
            // opposite signs: whichever of a² and 3b² is larger decides
            _ => {
                let a2 = &self.a * &self.a;
                let b2 = int(3) * &self.b * &self.b;
                match a2.cmp(&b2) {
                    Ordering::Greater => sa,
                    Ordering::Less => sb,
                    Ordering::Equal => Ordering::Equal,
                }
            }
        }
    }

    /// Sign as −1, 0 or +1.
    pub fn sign(&self) -> i8 {
        match self.signum() {
            Ordering::Less => -1,
            Ordering::Equal => 0,
            Ordering::Greater => 1,
        }
    }

    /// The value as a rational; fails when the √3 coefficient is nonzero.
    pub fn to_rational(&self) -> Result<Rational> {
        if self.b.is_zero() {
            Ok(self.a.clone())
        } else {
            Err(Error::Irrational(self.to_string()))
        }
    }

    pub fn into_rational(self) -> Result<Rational> {
        if self.b.is_zero() {
            Ok(self.a)
        } else {
            Err(Error::Irrational(self.to_string()))
        }
    }

    /// Nearest double. When `a` and `b√3` nearly cancel the value is taken
    /// as `norm / (a − b√3)` so both terms of the denominator share a sign.
    /// Astronomically large values overflow to ±infinity.
    pub fn to_f64(&self) -> f64 {
        let sqrt3 = 3f64.sqrt();
        let a = rational_to_f64(&self.a);
        let b = rational_to_f64(&self.b);
        if self.a.is_zero() || self.b.is_zero() || self.a.is_positive() == self.b.is_positive() {
            return a + b * sqrt3;
        }
        rational_to_f64(&self.norm()) / (a - b * sqrt3)
    }
}

impl fmt::Display for Surd3 {
    /// `a + b*sqrt(3)` with both coefficients in fraction syntax.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} + {}*sqrt(3)",
            format_rational(&self.a),
            format_rational(&self.b)
        )
    }
}

impl From<Rational> for Surd3 {
    fn from(value: Rational) -> Self {
        Surd3::from_rational(value)
    }
}

impl From<i64> for Surd3 {
    fn from(value: i64) -> Self {
        Surd3::from_int(value)
    }
}

impl<'a> Add<&'a Surd3> for &'a Surd3 {
    type Output = Surd3;
    fn add(self, rhs: &Surd3) -> Surd3 {
        Surd3::new(&self.a + &rhs.a, &self.b + &rhs.b)
    }
}

impl<'a> Sub<&'a Surd3> for &'a Surd3 {
    type Output = Surd3;
    fn sub(self, rhs: &Surd3) -> Surd3 {
        Surd3::new(&self.a - &rhs.a, &self.b - &rhs.b)
    }
}

impl<'a> Mul<&'a Surd3> for &'a Surd3 {
    type Output = Surd3;
    fn mul(self, rhs: &Surd3) -> Surd3 {
        let a = &self.a * &rhs.a + int(3) * &self.b * &rhs.b;
        let b = &self.a * &rhs.b + &rhs.a * &self.b;
        Surd3::new(a, b)
    }
}

impl Neg for Surd3 {
    type Output = Surd3;
    fn neg(self) -> Surd3 {
        Surd3::new(-self.a, -self.b)
    }
}

impl Neg for &Surd3 {
    type Output = Surd3;
    fn neg(self) -> Surd3 {
        Surd3::new(-self.a.clone(), -self.b.clone())
    }
}

macro_rules! forward_owned {
    ($tr:ident, $method:ident) => {
        impl $tr<Surd3> for Surd3 {
            type Output = Surd3;
            fn $method(self, rhs: Surd3) -> Surd3 {
                (&self).$method(&rhs)
            }
        }
        impl<'a> $tr<&'a Surd3> for Surd3 {
            type Output = Surd3;
            fn $method(self, rhs: &Surd3) -> Surd3 {
                (&self).$method(rhs)
            }
        }
        impl<'a> $tr<Surd3> for &'a Surd3 {
            type Output = Surd3;
            fn $method(self, rhs: Surd3) -> Surd3 {
                self.$method(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

/// Scaling by a rational.
impl<'a> Mul<&'a Rational> for &'a Surd3 {
    type Output = Surd3;
    fn mul(self, rhs: &Rational) -> Surd3 {
        Surd3::new(&self.a * rhs, &self.b * rhs)
    }
}

impl Mul<Rational> for Surd3 {
    type Output = Surd3;
    fn mul(self, rhs: Rational) -> Surd3 {
        Surd3::new(self.a * &rhs, self.b * rhs)
    }
}

impl Add<Rational> for Surd3 {
    type Output = Surd3;
    fn add(self, rhs: Rational) -> Surd3 {
        Surd3::new(self.a + rhs, self.b)
    }
}

impl Sub<Rational> for Surd3 {
    type Output = Surd3;
    fn sub(self, rhs: Rational) -> Surd3 {
        Surd3::new(self.a - rhs, self.b)
    }
}

impl Div<Rational> for Surd3 {
    type Output = Surd3;
    fn div(self, rhs: Rational) -> Surd3 {
        Surd3::new(self.a / &rhs, self.b / rhs)
    }
}

/// Checked division in the field.
pub fn surd_div(x: &Surd3, y: &Surd3) -> Result<Surd3> {
    Ok(x * &y.inverse()?)
}

pub fn surd_mul(x: &Surd3, y: &Surd3) -> Surd3 {
    x * y
}

pub fn surd_inverse(x: &Surd3) -> Result<Surd3> {
    x.inverse()
}

pub fn surd_pow(x: &Surd3, k: i64) -> Result<Surd3> {
    x.pow(k)
}

pub fn surd_sign(x: &Surd3) -> i8 {
    x.sign()
}

pub fn surd_to_rational(x: &Surd3) -> Result<Rational> {
    x.to_rational()
}

pub fn surd_to_float(x: &Surd3) -> f64 {
    x.to_f64()
}

/// Cached powers α⁰, α¹, … for repeated closed-form evaluation.
#[derive(Clone, Debug)]
pub struct AlphaPowers {
    powers: Vec<Surd3>,
}

impl Default for AlphaPowers {
    fn default() -> Self {
        Self::new()
    }
}

impl AlphaPowers {
    pub fn new() -> Self {
        AlphaPowers {
            powers: vec![Surd3::one()],
        }
    }

    /// Precompute through α^max.
    pub fn with_max(max: usize) -> Self {
        let mut cache = Self::new();
        cache.extend_to(max);
        cache
    }

    fn extend_to(&mut self, max: usize) {
        let alpha = Surd3::alpha();
        while self.powers.len() <= max {
            let next = self.powers.last().expect("nonempty") * &alpha;
            self.powers.push(next);
        }
    }

    /// α^k for k ≥ 0, extending the cache as needed.
    pub fn get(&mut self, k: usize) -> &Surd3 {
        self.extend_to(k);
        &self.powers[k]
    }

    /// α^k without mutation; falls back to a direct power past the cache.
    pub fn power(&self, k: usize) -> Surd3 {
        match self.powers.get(k) {
            Some(p) => p.clone(),
            None => Surd3::alpha().pow(k as i64).expect("alpha is nonzero"),
        }
    }
}
