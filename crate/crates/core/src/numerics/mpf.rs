//! Arbitrary-precision binary floating point, wrapping `astro_float`.
//!
//! Every value carries its working precision in bits; binary operations
//! round to the larger of the two operand precisions. This is the backend
//! for float-mode `Scalar`s and for the high-precision gamma evaluation.

use astro_float::{BigFloat, Consts, Radix, RoundingMode, Sign as FloatSign};
use num_bigint::{BigInt, Sign as IntSign};
use num_rational::BigRational;
use std::cell::RefCell;
use std::cmp::Ordering;
use std::fmt;

const RM: RoundingMode = RoundingMode::ToEven;

thread_local! {
    static CONSTS: RefCell<Consts> = RefCell::new(Consts::new().expect("constants cache"));
}

fn with_consts<T>(f: impl FnOnce(&mut Consts) -> T) -> T {
    CONSTS.with(|c| f(&mut c.borrow_mut()))
}

/// A binary float of explicit precision. Values are finite by construction;
/// operations that could produce NaN (division by zero, log of a negative
/// number) are the caller's responsibility to exclude.
#[derive(Clone, Debug)]
pub struct MpFloat {
    value: BigFloat,
    prec: usize,
}

impl MpFloat {
    pub fn zero(prec: usize) -> Self {
        MpFloat { value: BigFloat::new(prec), prec }
    }

    pub fn from_i64(v: i64, prec: usize) -> Self {
        MpFloat { value: BigFloat::from_i64(v, prec), prec }
    }

    pub fn from_f64(v: f64, prec: usize) -> Self {
        MpFloat { value: BigFloat::from_f64(v, prec), prec }
    }

    pub fn from_bigint(n: &BigInt, prec: usize) -> Self {
        let (sign, digits) = n.to_u64_digits();
        if digits.is_empty() {
            return Self::zero(prec);
        }
        let s = match sign {
            IntSign::Minus => FloatSign::Neg,
            _ => FloatSign::Pos,
        };
        // value = (mantissa words as a fraction in [0.5, 1)) * 2^e, so an
        // integer spanning `total` words has e = 64 * total. Low words beyond
        // the target precision only waste time; drop them.
        let total = digits.len();
        let needed = prec / 64 + 3;
        let start = total.saturating_sub(needed);
        let mut value = BigFloat::from_words(&digits[start..], s, (total * 64) as i32);
        value
            .set_precision(prec, RM)
            .expect("precision fits");
        MpFloat { value, prec }
    }

    pub fn from_rational(r: &BigRational, prec: usize) -> Self {
        let guard = prec + 64;
        let num = Self::from_bigint(r.numer(), guard);
        let den = Self::from_bigint(r.denom(), guard);
        MpFloat { value: num.value.div(&den.value, prec, RM), prec }
    }

    /// Parse a decimal string (scientific notation accepted).
    pub fn parse(s: &str, prec: usize) -> Option<Self> {
        let value = with_consts(|cc| BigFloat::parse(s, Radix::Dec, prec, RM, cc));
        if value.is_nan() {
            None
        } else {
            Some(MpFloat { value, prec })
        }
    }

    pub fn prec(&self) -> usize {
        self.prec
    }

    pub fn is_zero(&self) -> bool {
        self.value.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.value.is_negative()
    }

    pub fn is_integer(&self) -> bool {
        self.value.is_int()
    }

    /// Binary exponent of the value, `None` for zero.
    pub fn bin_exponent(&self) -> Option<i32> {
        if self.value.is_zero() {
            None
        } else {
            self.value.exponent()
        }
    }

    fn join(a: &MpFloat, b: &MpFloat) -> usize {
        a.prec.max(b.prec)
    }

    pub fn add(&self, rhs: &MpFloat) -> MpFloat {
        let p = Self::join(self, rhs);
        MpFloat { value: self.value.add(&rhs.value, p, RM), prec: p }
    }

    pub fn sub(&self, rhs: &MpFloat) -> MpFloat {
        let p = Self::join(self, rhs);
        MpFloat { value: self.value.sub(&rhs.value, p, RM), prec: p }
    }

    pub fn mul(&self, rhs: &MpFloat) -> MpFloat {
        let p = Self::join(self, rhs);
        MpFloat { value: self.value.mul(&rhs.value, p, RM), prec: p }
    }

    pub fn div(&self, rhs: &MpFloat) -> MpFloat {
        let p = Self::join(self, rhs);
        MpFloat { value: self.value.div(&rhs.value, p, RM), prec: p }
    }

    pub fn neg(&self) -> MpFloat {
        MpFloat { value: self.value.neg(), prec: self.prec }
    }

    pub fn abs(&self) -> MpFloat {
        if self.is_negative() { self.neg() } else { self.clone() }
    }

    pub fn recip(&self) -> MpFloat {
        MpFloat { value: self.value.reciprocal(self.prec, RM), prec: self.prec }
    }

    pub fn sqrt(&self) -> MpFloat {
        MpFloat { value: self.value.sqrt(self.prec, RM), prec: self.prec }
    }

    pub fn exp(&self) -> MpFloat {
        let value = with_consts(|cc| self.value.exp(self.prec, RM, cc));
        MpFloat { value, prec: self.prec }
    }

    pub fn ln(&self) -> MpFloat {
        let value = with_consts(|cc| self.value.ln(self.prec, RM, cc));
        MpFloat { value, prec: self.prec }
    }

    pub fn powi(&self, n: usize) -> MpFloat {
        MpFloat { value: self.value.powi(n, self.prec, RM), prec: self.prec }
    }

    pub fn pi(prec: usize) -> MpFloat {
        let value = with_consts(|cc| cc.pi(prec, RM));
        MpFloat { value, prec }
    }

    pub fn cmp_val(&self, rhs: &MpFloat) -> Option<Ordering> {
        self.value.cmp(&rhs.value).map(|s| s.cmp(&0))
    }

    /// Round to a (usually lower) precision.
    pub fn with_prec(&self, prec: usize) -> MpFloat {
        let mut value = self.value.clone();
        value.set_precision(prec, RM).expect("precision fits");
        MpFloat { value, prec }
    }

    pub fn to_f64(&self) -> f64 {
        if self.value.is_zero() {
            return 0.0;
        }
        if self.value.is_nan() {
            return f64::NAN;
        }
        if self.value.is_inf_pos() {
            return f64::INFINITY;
        }
        if self.value.is_inf_neg() {
            return f64::NEG_INFINITY;
        }
        let (words, _n, sign, e, _) = self.value.as_raw_parts().expect("finite value");
        let len = words.len();
        let hi = words[len - 1] as u128;
        let combined = if len >= 2 {
            (hi << 64) | words[len - 2] as u128
        } else {
            hi << 64
        };
        let frac = combined as f64 / 2f64.powi(128);
        let mag = frac * 2f64.powi(e);
        if sign == FloatSign::Neg {
            -mag
        } else {
            mag
        }
    }

    /// Decimal representation at the value's own precision.
    pub fn to_decimal_string(&self) -> String {
        with_consts(|cc| self.value.format(Radix::Dec, RM, cc))
            .unwrap_or_else(|_| "NaN".to_string())
    }
}

impl PartialEq for MpFloat {
    fn eq(&self, other: &Self) -> bool {
        self.cmp_val(other) == Some(Ordering::Equal)
    }
}

impl PartialOrd for MpFloat {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        self.cmp_val(other)
    }
}

impl fmt::Display for MpFloat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_decimal_string())
    }
}
