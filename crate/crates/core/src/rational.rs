//! Exact rational numbers.
//!
//! A thin newtype over [`num_rational::BigRational`] that fixes the pieces the
//! rest of the crate relies on: normalization on construction, the `"p/q"`
//! text form used by every JSON/CSV payload, and decimal rendering with a
//! fixed number of significant digits computed exactly (no `f64` detour).

use std::fmt;
use std::iter::{Product, Sum};
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Pow, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::ArithError;

/// Arbitrary-precision rational, always in lowest terms with a positive
/// denominator.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Rational(BigRational);

impl Rational {
    /// Builds `num/den`, reducing and normalizing the sign.
    pub fn new(num: impl Into<BigInt>, den: impl Into<BigInt>) -> Result<Self, ArithError> {
        let den = den.into();
        if den.is_zero() {
            return Err(ArithError::DivisionByZero);
        }
        Ok(Rational(BigRational::new(num.into(), den)))
    }

    pub fn from_integer(n: impl Into<BigInt>) -> Self {
        Rational(BigRational::from_integer(n.into()))
    }

    pub fn zero() -> Self {
        Rational(BigRational::zero())
    }

    pub fn one() -> Self {
        Rational(BigRational::one())
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_positive(&self) -> bool {
        self.0.is_positive()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn abs(&self) -> Self {
        Rational(self.0.abs())
    }

    pub fn recip(&self) -> Result<Self, ArithError> {
        if self.is_zero() {
            return Err(ArithError::DivisionByZero);
        }
        Ok(Rational(self.0.recip()))
    }

    pub fn checked_div(&self, rhs: &Rational) -> Result<Self, ArithError> {
        if rhs.is_zero() {
            return Err(ArithError::DivisionByZero);
        }
        Ok(Rational(&self.0 / &rhs.0))
    }

    pub fn pow(&self, exp: u32) -> Self {
        Rational(Pow::pow(&self.0, exp))
    }

    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().unwrap_or(f64::NAN)
    }

    /// Decimal rendering rounded (half away from zero) to `digits`
    /// significant digits. Values of moderate magnitude come out in plain
    /// positional form, everything else in `d.ddde±x` form.
    pub fn to_decimal(&self, digits: usize) -> String {
        assert!(digits > 0);
        if self.is_zero() {
            return "0".to_string();
        }
        let negative = self.is_negative();
        let num = self.numer().magnitude().clone();
        let den = self.denom().magnitude().clone();

        // exp10 = floor(log10(|x|)), found by comparing digit counts and fixing up.
        let mut exp10 = num.to_string().len() as i64 - den.to_string().len() as i64;
        if scaled_cmp(&num, &den, exp10) == std::cmp::Ordering::Less {
            exp10 -= 1;
        }
        // mantissa = round(|x| * 10^(digits-1-exp10))
        let shift = digits as i64 - 1 - exp10;
        let mut mantissa = rounded_scale(&num, &den, shift);
        if mantissa.to_string().len() > digits {
            exp10 += 1;
            mantissa = rounded_scale(&num, &den, shift - 1);
        }
        let digits_str = mantissa.to_string();
        let body = if (-5..21).contains(&exp10) {
            positional(&digits_str, exp10)
        } else {
            let (head, tail) = digits_str.split_at(1);
            let tail = tail.trim_end_matches('0');
            if tail.is_empty() {
                format!("{head}e{exp10}")
            } else {
                format!("{head}.{tail}e{exp10}")
            }
        };
        if negative {
            format!("-{body}")
        } else {
            body
        }
    }
}

// Compares num/den against 10^exp.
fn scaled_cmp(num: &BigUint, den: &BigUint, exp: i64) -> std::cmp::Ordering {
    let ten = BigUint::from(10u32);
    if exp >= 0 {
        num.cmp(&(den * Pow::pow(&ten, exp as u64)))
    } else {
        (num * Pow::pow(&ten, (-exp) as u64)).cmp(den)
    }
}

fn rounded_scale(num: &BigUint, den: &BigUint, shift: i64) -> BigUint {
    let ten = BigUint::from(10u32);
    let (n, d) = if shift >= 0 {
        (num * Pow::pow(&ten, shift as u64), den.clone())
    } else {
        (num.clone(), den * Pow::pow(&ten, (-shift) as u64))
    };
    let (q, r) = n.div_rem(&d);
    if r * 2u32 >= d {
        q + 1u32
    } else {
        q
    }
}

fn positional(digits: &str, exp10: i64) -> String {
    let int_len = exp10 + 1;
    let s = if int_len <= 0 {
        format!("0.{}{}", "0".repeat((-int_len) as usize), digits)
    } else if int_len as usize >= digits.len() {
        format!("{}{}", digits, "0".repeat(int_len as usize - digits.len()))
    } else {
        let (a, b) = digits.split_at(int_len as usize);
        format!("{a}.{b}")
    };
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.numer(), self.denom())
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Accepts `"p/q"` or a bare integer, with optional surrounding whitespace.
impl FromStr for Rational {
    type Err = ArithError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let parse = |t: &str| {
            t.trim()
                .parse::<BigInt>()
                .map_err(|_| ArithError::Parse(s.to_string()))
        };
        match s.split_once('/') {
            Some((p, q)) => Rational::new(parse(p)?, parse(q)?),
            None => Ok(Rational::from_integer(parse(s)?)),
        }
    }
}

impl Serialize for Rational {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Rational {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

impl From<i64> for Rational {
    fn from(n: i64) -> Self {
        Rational::from_integer(n)
    }
}

impl From<BigInt> for Rational {
    fn from(n: BigInt) -> Self {
        Rational::from_integer(n)
    }
}

impl From<BigUint> for Rational {
    fn from(n: BigUint) -> Self {
        Rational::from_integer(BigInt::from_biguint(Sign::Plus, n))
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident) => {
        impl $trait<Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                Rational(self.0.$method(rhs.0))
            }
        }
        impl<'a> $trait<&'a Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: &'a Rational) -> Rational {
                Rational(self.0.$method(&rhs.0))
            }
        }
        impl<'a> $trait<Rational> for &'a Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                Rational((&self.0).$method(rhs.0))
            }
        }
        impl<'a, 'b> $trait<&'b Rational> for &'a Rational {
            type Output = Rational;
            fn $method(self, rhs: &'b Rational) -> Rational {
                Rational((&self.0).$method(&rhs.0))
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);

// Panics on a zero divisor, like the integer types; use `checked_div` when the
// divisor is data.
forward_binop!(Div, div);

impl AddAssign<&Rational> for Rational {
    fn add_assign(&mut self, rhs: &Rational) {
        self.0 += &rhs.0;
    }
}

impl AddAssign for Rational {
    fn add_assign(&mut self, rhs: Rational) {
        self.0 += rhs.0;
    }
}

impl SubAssign<&Rational> for Rational {
    fn sub_assign(&mut self, rhs: &Rational) {
        self.0 -= &rhs.0;
    }
}

impl MulAssign<&Rational> for Rational {
    fn mul_assign(&mut self, rhs: &Rational) {
        self.0 *= &rhs.0;
    }
}

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-self.0)
    }
}

impl Neg for &Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-&self.0)
    }
}

impl Sum for Rational {
    fn sum<I: Iterator<Item = Rational>>(iter: I) -> Self {
        iter.fold(Rational::zero(), |acc, x| acc + x)
    }
}

impl<'a> Sum<&'a Rational> for Rational {
    fn sum<I: Iterator<Item = &'a Rational>>(iter: I) -> Self {
        iter.fold(Rational::zero(), |acc, x| acc + x)
    }
}

impl Product for Rational {
    fn product<I: Iterator<Item = Rational>>(iter: I) -> Self {
        iter.fold(Rational::one(), |acc, x| acc * x)
    }
}

/// Shorthand for tests and literal tables; panics on a zero denominator.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(num, den).expect("nonzero denominator")
}
