//! Weight parameters (nu, alpha) and the arithmetic mode attached to them.

use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive};
use std::fmt;

pub const DEFAULT_FLOAT_DIGITS: u32 = 50;
pub const MIN_FLOAT_DIGITS: u32 = 16;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Mode {
    /// Exact rational arithmetic; requires nu and alpha to be nonnegative integers.
    Exact,
    /// High-precision binary floats with the given decimal precision.
    Float { precision_digits: u32 },
}

impl Mode {
    pub fn float_default() -> Mode {
        Mode::Float { precision_digits: DEFAULT_FLOAT_DIGITS }
    }
}

/// Order nu >= 0 of the Macdonald weight and exponent alpha > -1 of the x^alpha
/// factor. Both are kept as exact rationals regardless of mode; the mode only
/// decides how moments and linear solves are carried out.
#[derive(Clone, Debug, PartialEq)]
pub struct Params {
    nu: BigRational,
    alpha: BigRational,
    mode: Mode,
}

impl Params {
    /// Exact mode when nu and alpha are nonnegative integers, float mode at the
    /// default precision otherwise.
    pub fn new(nu: BigRational, alpha: BigRational) -> Result<Params> {
        let mode = if is_nonneg_integer(&nu) && is_nonneg_integer(&alpha) {
            Mode::Exact
        } else {
            Mode::float_default()
        };
        Params::with_mode(nu, alpha, mode)
    }

    pub fn with_mode(nu: BigRational, alpha: BigRational, mode: Mode) -> Result<Params> {
        if nu.is_negative() {
            return Err(Error::InvalidParams(format!("nu = {nu} must be >= 0")));
        }
        if alpha <= -BigRational::one() {
            return Err(Error::InvalidParams(format!("alpha = {alpha} must be > -1")));
        }
        match mode {
            Mode::Exact => {
                if !is_nonneg_integer(&nu) || !is_nonneg_integer(&alpha) {
                    return Err(Error::InvalidParams(format!(
                        "exact mode requires nonnegative integer nu and alpha, got nu = {nu}, alpha = {alpha}"
                    )));
                }
            }
            Mode::Float { precision_digits } => {
                if precision_digits < MIN_FLOAT_DIGITS {
                    return Err(Error::InvalidParams(format!(
                        "float mode requires at least {MIN_FLOAT_DIGITS} precision digits, got {precision_digits}"
                    )));
                }
            }
        }
        Ok(Params { nu, alpha, mode })
    }

    /// Convenience constructor for integer parameters (always exact mode).
    pub fn exact(nu: u32, alpha: u32) -> Params {
        Params {
            nu: BigRational::from_integer(BigInt::from(nu)),
            alpha: BigRational::from_integer(BigInt::from(alpha)),
            mode: Mode::Exact,
        }
    }

    pub fn nu(&self) -> &BigRational {
        &self.nu
    }

    pub fn alpha(&self) -> &BigRational {
        &self.alpha
    }

    pub fn mode(&self) -> &Mode {
        &self.mode
    }

    pub fn exact_mode(&self) -> bool {
        self.mode == Mode::Exact
    }

    pub fn nu_f64(&self) -> f64 {
        self.nu.to_f64().unwrap_or(f64::NAN)
    }

    pub fn alpha_f64(&self) -> f64 {
        self.alpha.to_f64().unwrap_or(f64::NAN)
    }

    /// Working mantissa bits in float mode, `None` in exact mode.
    pub fn precision_bits(&self) -> Option<usize> {
        match self.mode {
            Mode::Exact => None,
            Mode::Float { precision_digits } => Some(digits_to_bits(precision_digits)),
        }
    }

    /// Same mode, nu replaced by nu + d.
    pub fn shift_nu(&self, d: u32) -> Params {
        Params {
            nu: &self.nu + BigRational::from_integer(BigInt::from(d)),
            alpha: self.alpha.clone(),
            mode: self.mode.clone(),
        }
    }

    /// Same mode, alpha replaced by alpha + d; fails if the result is <= -1.
    pub fn shift_alpha(&self, d: i64) -> Result<Params> {
        let alpha = &self.alpha + BigRational::from_integer(BigInt::from(d));
        if alpha <= -BigRational::one() {
            return Err(Error::InvalidParams(format!(
                "alpha shift by {d} leaves the admissible range: {alpha} <= -1"
            )));
        }
        if self.exact_mode() && alpha.is_negative() {
            return Err(Error::InvalidParams(format!(
                "alpha shift by {d} leaves exact mode: {alpha} < 0"
            )));
        }
        Ok(Params { nu: self.nu.clone(), alpha, mode: self.mode.clone() })
    }
}

impl fmt::Display for Params {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "nu={}, alpha={}", self.nu, self.alpha)
    }
}

pub(crate) fn digits_to_bits(digits: u32) -> usize {
    // log2(10) = 3.3219...; add guard bits for intermediate rounding
    ((digits as f64) * 3.322).ceil() as usize + 32
}

fn is_nonneg_integer(r: &BigRational) -> bool {
    r.is_integer() && !r.is_negative()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::scalar::parse_rational;

    #[test]
    fn mode_selection() {
        let p = Params::new(parse_rational("2").unwrap(), parse_rational("0").unwrap()).unwrap();
        assert!(p.exact_mode());
        let q = Params::new(parse_rational("0.5").unwrap(), parse_rational("0").unwrap()).unwrap();
        assert_eq!(q.mode(), &Mode::Float { precision_digits: DEFAULT_FLOAT_DIGITS });
    }

    #[test]
    fn rejects_out_of_range() {
        assert!(Params::new(parse_rational("-1").unwrap(), parse_rational("0").unwrap()).is_err());
        assert!(Params::new(parse_rational("0").unwrap(), parse_rational("-1").unwrap()).is_err());
        assert!(Params::new(parse_rational("0").unwrap(), parse_rational("-2").unwrap()).is_err());
        // alpha slightly above -1 is fine (float mode)
        assert!(Params::new(parse_rational("0").unwrap(), parse_rational("-0.5").unwrap()).is_ok());
    }

    #[test]
    fn exact_mode_needs_integers() {
        let err = Params::with_mode(
            parse_rational("0.5").unwrap(),
            parse_rational("0").unwrap(),
            Mode::Exact,
        );
        assert!(err.is_err());
        let err = Params::with_mode(
            parse_rational("1").unwrap(),
            parse_rational("0").unwrap(),
            Mode::Float { precision_digits: 8 },
        );
        assert!(err.is_err());
    }

    #[test]
    fn alpha_shift_guard() {
        let p = Params::exact(0, 0);
        assert!(p.shift_alpha(-1).is_err());
        assert_eq!(p.shift_alpha(2).unwrap().alpha(), &parse_rational("2").unwrap());
    }
}
