//! Arbitrary-precision rational numbers.
//!
//! Thin wrapper around [`num_rational::BigRational`] that fixes the textual
//! conventions used throughout the crate: integers print bare, everything
//! else prints as `p/q`, and decimal strings parse exactly with a
//! power-of-ten denominator.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use core::iter::Sum;
use core::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use core::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// An exact rational number. Always stored in lowest terms with a positive
/// denominator.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Rat(BigRational);

impl Rat {
    pub fn zero() -> Self {
        Rat(BigRational::zero())
    }

    pub fn one() -> Self {
        Rat(BigRational::one())
    }

    pub fn from_int(v: i64) -> Self {
        Rat(BigRational::from_integer(BigInt::from(v)))
    }

    pub fn from_bigint(v: BigInt) -> Self {
        Rat(BigRational::from_integer(v))
    }

    /// `p / q`. Panics if `q == 0`.
    pub fn ratio(p: i64, q: i64) -> Self {
        Rat(BigRational::new(BigInt::from(p), BigInt::from(q)))
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

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn abs(&self) -> Self {
        Rat(self.0.abs())
    }

    pub fn floor(&self) -> BigInt {
        self.0.floor().to_integer()
    }

    pub fn ceil(&self) -> BigInt {
        self.0.ceil().to_integer()
    }

    /// Nearest integer, halves rounded toward positive infinity.
    pub fn round_half_up(&self) -> BigInt {
        (&self.0 + BigRational::new(BigInt::one(), BigInt::from(2)))
            .floor()
            .to_integer()
    }

    pub fn to_i64(&self) -> Option<i64> {
        if self.is_integer() {
            self.0.numer().to_i64()
        } else {
            None
        }
    }

    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().unwrap_or(f64::NAN)
    }

    pub fn recip(&self) -> Self {
        Rat(self.0.recip())
    }

    pub fn min(self, other: Self) -> Self {
        if self <= other {
            self
        } else {
            other
        }
    }

    pub fn max(self, other: Self) -> Self {
        if self >= other {
            self
        } else {
            other
        }
    }
}

impl Default for Rat {
    fn default() -> Self {
        Rat::zero()
    }
}

impl From<i64> for Rat {
    fn from(v: i64) -> Self {
        Rat::from_int(v)
    }
}

impl From<BigInt> for Rat {
    fn from(v: BigInt) -> Self {
        Rat::from_bigint(v)
    }
}

/// Failure to parse a rational literal.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ParseRatError;

impl fmt::Display for ParseRatError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "invalid rational literal")
    }
}

impl FromStr for Rat {
    type Err = ParseRatError;

    /// Accepts `p/q`, integers, and decimal or scientific literals
    /// (`-2.25`, `6e-1`). Decimals convert exactly.
    fn from_str(s: &str) -> Result<Self, ParseRatError> {
        let s = s.trim();
        if s.is_empty() {
            return Err(ParseRatError);
        }
        if let Some((p, q)) = s.split_once('/') {
            let p = BigInt::from_str(p.trim()).map_err(|_| ParseRatError)?;
            let q = BigInt::from_str(q.trim()).map_err(|_| ParseRatError)?;
            if q.is_zero() {
                return Err(ParseRatError);
            }
            return Ok(Rat(BigRational::new(p, q)));
        }
        let (mantissa, exp) = match s.split_once(['e', 'E']) {
            Some((m, e)) => (m, i64::from_str(e).map_err(|_| ParseRatError)?),
            None => (s, 0),
        };
        let (int_part, frac_part) = match mantissa.split_once('.') {
            Some((i, f)) => (i, f),
            None => (mantissa, ""),
        };
        if int_part.is_empty() && frac_part.is_empty() {
            return Err(ParseRatError);
        }
        let digits: String = [int_part, frac_part].concat();
        let numer = BigInt::from_str(&digits).map_err(|_| ParseRatError)?;
        let shift = exp - frac_part.len() as i64;
        let ten = BigInt::from(10);
        let pow = num_traits::pow::pow(ten, shift.unsigned_abs() as usize);
        let r = if shift >= 0 {
            BigRational::from_integer(numer * pow)
        } else {
            BigRational::new(numer, pow)
        };
        Ok(Rat(r))
    }
}

impl fmt::Display for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl fmt::Debug for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

macro_rules! binop {
    ($trait:ident, $method:ident) => {
        impl $trait for Rat {
            type Output = Rat;
            fn $method(self, rhs: Rat) -> Rat {
                Rat((self.0).$method(rhs.0))
            }
        }
        impl<'a> $trait<&'a Rat> for Rat {
            type Output = Rat;
            fn $method(self, rhs: &'a Rat) -> Rat {
                Rat((self.0).$method(&rhs.0))
            }
        }
        impl<'a> $trait<Rat> for &'a Rat {
            type Output = Rat;
            fn $method(self, rhs: Rat) -> Rat {
                Rat((&self.0).$method(rhs.0))
            }
        }
        impl<'a, 'b> $trait<&'b Rat> for &'a Rat {
            type Output = Rat;
            fn $method(self, rhs: &'b Rat) -> Rat {
                Rat((&self.0).$method(&rhs.0))
            }
        }
    };
}

binop!(Add, add);
binop!(Sub, sub);
binop!(Mul, mul);
binop!(Div, div);

impl Neg for Rat {
    type Output = Rat;
    fn neg(self) -> Rat {
        Rat(-self.0)
    }
}

impl Neg for &Rat {
    type Output = Rat;
    fn neg(self) -> Rat {
        Rat(-&self.0)
    }
}

impl AddAssign<&Rat> for Rat {
    fn add_assign(&mut self, rhs: &Rat) {
        self.0 += &rhs.0;
    }
}

impl AddAssign for Rat {
    fn add_assign(&mut self, rhs: Rat) {
        self.0 += rhs.0;
    }
}

impl SubAssign<&Rat> for Rat {
    fn sub_assign(&mut self, rhs: &Rat) {
        self.0 -= &rhs.0;
    }
}

impl SubAssign for Rat {
    fn sub_assign(&mut self, rhs: Rat) {
        self.0 -= rhs.0;
    }
}

impl MulAssign<&Rat> for Rat {
    fn mul_assign(&mut self, rhs: &Rat) {
        self.0 *= &rhs.0;
    }
}

impl Sum for Rat {
    fn sum<I: Iterator<Item = Rat>>(iter: I) -> Rat {
        iter.fold(Rat::zero(), |acc, v| acc + v)
    }
}

impl<'a> Sum<&'a Rat> for Rat {
    fn sum<I: Iterator<Item = &'a Rat>>(iter: I) -> Rat {
        iter.fold(Rat::zero(), |acc, v| acc + v)
    }
}

/// Parses a comma-separated list of rational literals.
pub fn parse_csv(s: &str) -> Result<Vec<Rat>, ParseRatError> {
    s.split(',').map(Rat::from_str).collect()
}
