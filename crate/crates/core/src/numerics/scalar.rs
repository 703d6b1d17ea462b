//! The active coefficient field: exact rationals or high-precision floats.
//!
//! Rational scalars are canonical `BigRational`s (reduced, positive
//! denominator — maintained by `num_rational` itself). Float scalars carry
//! their precision. Mixed arithmetic promotes the rational operand to the
//! float operand's precision.

use super::mpf::MpFloat;
use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

#[derive(Clone, Debug)]
pub enum Scalar {
    Rational(BigRational),
    Float(MpFloat),
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar::Rational(BigRational::zero())
    }

    pub fn one() -> Self {
        Scalar::Rational(BigRational::one())
    }

    pub fn int(v: i64) -> Self {
        Scalar::Rational(BigRational::from_integer(BigInt::from(v)))
    }

    pub fn ratio(n: i64, d: i64) -> Self {
        Scalar::Rational(BigRational::new(BigInt::from(n), BigInt::from(d)))
    }

    pub fn from_bigint(n: BigInt) -> Self {
        Scalar::Rational(BigRational::from_integer(n))
    }

    pub fn rational(r: BigRational) -> Self {
        Scalar::Rational(r)
    }

    pub fn float(f: MpFloat) -> Self {
        Scalar::Float(f)
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rational(r) => r.is_zero(),
            Scalar::Float(f) => f.is_zero(),
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rational(r) => r.is_one(),
            Scalar::Float(f) => f == &MpFloat::from_i64(1, f.prec()),
        }
    }

    pub fn is_negative(&self) -> bool {
        match self {
            Scalar::Rational(r) => r.is_negative(),
            Scalar::Float(f) => f.is_negative(),
        }
    }

    pub fn is_rational(&self) -> bool {
        matches!(self, Scalar::Rational(_))
    }

    pub fn is_integer(&self) -> bool {
        match self {
            Scalar::Rational(r) => r.is_integer(),
            Scalar::Float(f) => f.is_integer(),
        }
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            Scalar::Rational(r) => Some(r),
            Scalar::Float(_) => None,
        }
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            Scalar::Rational(r) => rational_to_f64(r),
            Scalar::Float(f) => f.to_f64(),
        }
    }

    pub fn abs(&self) -> Scalar {
        match self {
            Scalar::Rational(r) => Scalar::Rational(r.abs()),
            Scalar::Float(f) => Scalar::Float(f.abs()),
        }
    }

    pub fn inv(&self) -> Result<Scalar> {
        if self.is_zero() {
            return Err(Error::Domain("inverse of zero".into()));
        }
        Ok(match self {
            Scalar::Rational(r) => Scalar::Rational(r.recip()),
            Scalar::Float(f) => Scalar::Float(f.recip()),
        })
    }

    pub fn pow_u(&self, e: u32) -> Scalar {
        match self {
            Scalar::Rational(r) => {
                let mut acc = BigRational::one();
                for _ in 0..e {
                    acc *= r;
                }
                Scalar::Rational(acc)
            }
            Scalar::Float(f) => Scalar::Float(f.powi(e as usize)),
        }
    }

    fn to_float(&self, prec: usize) -> MpFloat {
        match self {
            Scalar::Rational(r) => MpFloat::from_rational(r, prec),
            Scalar::Float(f) => f.clone(),
        }
    }
}

pub(crate) fn rational_to_f64(r: &BigRational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

macro_rules! scalar_binop {
    ($trait:ident, $method:ident, $ratop:tt, $floatop:ident) => {
        impl $trait for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                match (self, rhs) {
                    (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a $ratop b),
                    (Scalar::Float(a), Scalar::Float(b)) => Scalar::Float(a.$floatop(b)),
                    (a @ Scalar::Rational(_), Scalar::Float(b)) => {
                        Scalar::Float(a.to_float(b.prec()).$floatop(b))
                    }
                    (Scalar::Float(a), b @ Scalar::Rational(_)) => {
                        Scalar::Float(a.$floatop(&b.to_float(a.prec())))
                    }
                }
            }
        }
        impl $trait for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                (&self).$method(rhs)
            }
        }
    };
}

scalar_binop!(Add, add, +, add);
scalar_binop!(Sub, sub, -, sub);
scalar_binop!(Mul, mul, *, mul);
scalar_binop!(Div, div, /, div);

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Rational(r) => Scalar::Rational(-r),
            Scalar::Float(f) => Scalar::Float(f.neg()),
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

impl PartialEq for Scalar {
    fn eq(&self, other: &Self) -> bool {
        self.partial_cmp(other) == Some(Ordering::Equal)
    }
}

impl PartialOrd for Scalar {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        match (self, other) {
            (Scalar::Rational(a), Scalar::Rational(b)) => a.partial_cmp(b),
            (Scalar::Float(a), Scalar::Float(b)) => a.cmp_val(b),
            (a @ Scalar::Rational(_), Scalar::Float(b)) => a.to_float(b.prec()).cmp_val(b),
            (Scalar::Float(a), b @ Scalar::Rational(_)) => a.cmp_val(&b.to_float(a.prec())),
        }
    }
}

impl fmt::Display for Scalar {
    /// Rationals print as `numerator` or `numerator/denominator`;
    /// floats as a decimal string at working precision.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(r) => {
                if r.is_integer() {
                    write!(f, "{}", r.numer())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
            Scalar::Float(x) => write!(f, "{}", x),
        }
    }
}

/// Parse a rational from `"n"`, `"n/d"`, or a decimal string such as
/// `"0.5"` or `"-1.25e-3"` (decimals convert exactly).
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let bad = || Error::InvalidParams(format!("cannot parse '{s}' as a rational number"));
    if s.is_empty() {
        return Err(bad());
    }
    if let Some((n, d)) = s.split_once('/') {
        let num = BigInt::from_str(n.trim()).map_err(|_| bad())?;
        let den = BigInt::from_str(d.trim()).map_err(|_| bad())?;
        if den.is_zero() {
            return Err(bad());
        }
        return Ok(BigRational::new(num, den));
    }
    // decimal with optional exponent
    let (mantissa, exp) = match s.split_once(['e', 'E']) {
        Some((m, e)) => (m, i64::from_str(e).map_err(|_| bad())?),
        None => (s, 0),
    };
    let (int_part, frac_part) = match mantissa.split_once('.') {
        Some((i, f)) => (i, f),
        None => (mantissa, ""),
    };
    let digits = format!("{}{}", int_part, frac_part);
    if digits.is_empty() || digits == "-" || digits == "+" {
        return Err(bad());
    }
    let num = BigInt::from_str(&digits).map_err(|_| bad())?;
    let scale = exp - frac_part.len() as i64;
    let ten = BigInt::from(10);
    let mut r = BigRational::from_integer(num);
    if scale >= 0 {
        r *= BigRational::from_integer(ten.pow(scale as u32));
    } else {
        r /= BigRational::from_integer(ten.pow((-scale) as u32));
    }
    Ok(r)
}

impl FromStr for Scalar {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Ok(Scalar::Rational(parse_rational(s)?))
    }
}
