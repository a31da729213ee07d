//! Exact rational scalars.
//!
//! [`Scalar`] is a thin newtype over [`rug::Rational`] (GMP). Every value is
//! kept in canonical form (lowest terms, positive denominator) by GMP itself;
//! equality is therefore structural equality of canonical forms.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use rug::ops::Pow;
use rug::{Float, Integer, Rational};

use crate::{Error, Result};

/// An exact rational number.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Scalar(Rational);

impl Scalar {
    pub fn zero() -> Self {
        Scalar(Rational::new())
    }

    pub fn one() -> Self {
        Scalar(Rational::from(1))
    }

    /// Builds `num/den`, erroring on a zero denominator.
    pub fn ratio(num: i64, den: i64) -> Result<Self> {
        if den == 0 {
            return Err(Error::DivisionByZero);
        }
        Ok(Scalar(Rational::from((num, den))))
    }

    pub fn from_int(v: i64) -> Self {
        Scalar(Rational::from(v))
    }

    pub fn from_rational(r: Rational) -> Self {
        Scalar(r)
    }

    pub fn as_rational(&self) -> &Rational {
        &self.0
    }

    pub fn numer(&self) -> &Integer {
        self.0.numer()
    }

    pub fn denom(&self) -> &Integer {
        self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.cmp0() == Ordering::Equal
    }

    pub fn is_one(&self) -> bool {
        self.0 == 1
    }

    pub fn is_positive(&self) -> bool {
        self.0.cmp0() == Ordering::Greater
    }

    pub fn is_negative(&self) -> bool {
        self.0.cmp0() == Ordering::Less
    }

    /// True when the value is an integer.
    pub fn is_integer(&self) -> bool {
        *self.0.denom() == 1
    }

    /// The value as `u32` if it is a small non-negative integer.
    pub fn to_u32(&self) -> Option<u32> {
        if self.is_integer() {
            self.0.numer().to_u32()
        } else {
            None
        }
    }

    pub fn abs(&self) -> Self {
        Scalar(Rational::from(self.0.abs_ref()))
    }

    /// Exact reciprocal; errors on zero.
    pub fn checked_recip(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Scalar(Rational::from(self.0.recip_ref())))
    }

    /// Exact division; errors on a zero divisor.
    pub fn checked_div(&self, rhs: &Scalar) -> Result<Self> {
        if rhs.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Scalar(Rational::from(&self.0 / &rhs.0)))
    }

    /// `self^exp` for a non-negative integer exponent.
    pub fn pow_u32(&self, exp: u32) -> Self {
        Scalar(Rational::from((&self.0).pow(exp)))
    }

    /// Nearest `f64` (diagnostics only; all engine arithmetic stays exact).
    pub fn to_f64(&self) -> f64 {
        self.0.to_f64()
    }

    /// Correctly rounded conversion to an MPFR float of the given precision.
    pub fn to_float(&self, prec: u32) -> Float {
        Float::with_val(prec, &self.0)
    }

    /// gcd of two rationals: `gcd(p1/q1, p2/q2) = gcd(p1, p2) / lcm(q1, q2)`.
    ///
    /// This is the largest rational dividing both into integers; used for
    /// extracting integer content when pretty-printing polynomials.
    pub fn gcd(&self, other: &Scalar) -> Self {
        let num = Integer::from(self.0.numer().gcd_ref(other.0.numer()));
        let den = Integer::from(self.0.denom().lcm_ref(other.0.denom()));
        Scalar(Rational::from((num, den)))
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl FromStr for Scalar {
    type Err = Error;

    /// Parses `"p"`, `"p/q"`, or a plain decimal like `"3.25"` exactly.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if let Some((int_part, frac_part)) = s.split_once('.') {
            if frac_part.is_empty() || !frac_part.bytes().all(|b| b.is_ascii_digit()) {
                return Err(Error::Domain(format!("cannot parse rational from {s:?}")));
            }
            let scale = Integer::from(10).pow(frac_part.len() as u32);
            let int: Integer = int_part
                .parse()
                .map_err(|_| Error::Domain(format!("cannot parse rational from {s:?}")))?;
            let frac: Integer = frac_part
                .parse()
                .map_err(|_| Error::Domain(format!("cannot parse rational from {s:?}")))?;
            let negative = int_part.starts_with('-');
            let numer = Rational::from((&int * &scale, scale.clone()))
                + if negative {
                    -Rational::from((frac.clone(), scale.clone()))
                } else {
                    Rational::from((frac.clone(), scale.clone()))
                };
            return Ok(Scalar(numer));
        }
        let r = Rational::from_str(s)
            .map_err(|_| Error::Domain(format!("cannot parse rational from {s:?}")))?;
        Ok(Scalar(r))
    }
}

impl From<i64> for Scalar {
    fn from(v: i64) -> Self {
        Scalar::from_int(v)
    }
}

impl From<u32> for Scalar {
    fn from(v: u32) -> Self {
        Scalar(Rational::from(v))
    }
}

impl serde::Serialize for Scalar {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        ser.serialize_str(&self.to_string())
    }
}

impl<'de> serde::Deserialize<'de> for Scalar {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(de)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident) => {
        impl std::ops::$trait<&Scalar> for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                Scalar(Rational::from(std::ops::$trait::$method(&self.0, &rhs.0)))
            }
        }
        impl std::ops::$trait<Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                std::ops::$trait::$method(&self, &rhs)
            }
        }
        impl std::ops::$trait<&Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                std::ops::$trait::$method(&self, rhs)
            }
        }
        impl std::ops::$trait<Scalar> for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                std::ops::$trait::$method(self, &rhs)
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);

// Division panics on a zero divisor (GMP semantics); use `checked_div` where
// the divisor is not known to be nonzero.
forward_binop!(Div, div);

impl std::ops::Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar(Rational::from(-&self.0))
    }
}

impl std::ops::Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar(-self.0)
    }
}

impl std::ops::AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        self.0 += &rhs.0;
    }
}

impl std::ops::SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, rhs: &Scalar) {
        self.0 -= &rhs.0;
    }
}

impl std::ops::MulAssign<&Scalar> for Scalar {
    fn mul_assign(&mut self, rhs: &Scalar) {
        self.0 *= &rhs.0;
    }
}
