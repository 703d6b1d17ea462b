//! Dense univariate polynomials over `Scalar`.
//!
//! Coefficients are stored in ascending degree order; the representation is
//! canonical: the vector is empty for the zero polynomial and otherwise ends
//! with a nonzero coefficient. Degrees in scope stay small (~30), so dense
//! storage and schoolbook multiplication are the right tools.

use super::scalar::Scalar;
use crate::error::{Error, Result};
use serde_json::Value;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

#[derive(Clone, Debug, PartialEq)]
pub struct Poly {
    coeffs: Vec<Scalar>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Poly { coeffs: vec![Scalar::one()] }
    }

    pub fn x() -> Self {
        Poly { coeffs: vec![Scalar::zero(), Scalar::one()] }
    }

    pub fn constant(c: Scalar) -> Self {
        Poly::from_coeffs(vec![c])
    }

    pub fn monomial(c: Scalar, degree: usize) -> Self {
        if c.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = vec![Scalar::zero(); degree + 1];
        coeffs[degree] = c;
        Poly { coeffs }
    }

    /// Construct from ascending coefficients; trailing zeros are stripped.
    pub fn from_coeffs(coeffs: Vec<Scalar>) -> Self {
        let mut p = Poly { coeffs };
        p.normalize();
        p
    }

    pub fn from_i64_coeffs(coeffs: &[i64]) -> Self {
        Poly::from_coeffs(coeffs.iter().map(|&c| Scalar::int(c)).collect())
    }

    fn normalize(&mut self) {
        while self.coeffs.last().map_or(false, Scalar::is_zero) {
            self.coeffs.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Highest nonzero index, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    /// Coefficient of x^k (zero beyond the degree).
    pub fn coeff(&self, k: usize) -> Scalar {
        self.coeffs.get(k).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    pub fn leading(&self) -> Option<&Scalar> {
        self.coeffs.last()
    }

    /// Horner evaluation.
    pub fn eval(&self, x: &Scalar) -> Scalar {
        let mut acc = Scalar::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * x) + c;
        }
        acc
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        let mut acc = 0.0;
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c.to_f64();
        }
        acc
    }

    /// Coefficient-wise formal derivative.
    pub fn derivative(&self) -> Poly {
        if self.coeffs.len() <= 1 {
            return Poly::zero();
        }
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, c)| c * &Scalar::int(k as i64))
            .collect();
        Poly::from_coeffs(coeffs)
    }

    pub fn scale(&self, s: &Scalar) -> Poly {
        Poly::from_coeffs(self.coeffs.iter().map(|c| c * s).collect())
    }

    /// Multiply by x^k.
    pub fn mul_xpow(&self, k: usize) -> Poly {
        if self.is_zero() || k == 0 {
            return self.clone();
        }
        let mut coeffs = vec![Scalar::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Poly { coeffs }
    }

    /// Divide by x^k; all of coefficients 0..k must vanish.
    pub fn div_xpow(&self, k: usize) -> Result<Poly> {
        if self.is_zero() || k == 0 {
            return Ok(self.clone());
        }
        if self.coeffs.len() < k || self.coeffs[..k].iter().any(|c| !c.is_zero()) {
            return Err(Error::Internal(format!(
                "polynomial not divisible by x^{k}"
            )));
        }
        Ok(Poly { coeffs: self.coeffs[k..].to_vec() })
    }

    /// Euclidean division: self = q * d + r with deg r < deg d.
    pub fn divmod(&self, d: &Poly) -> Result<(Poly, Poly)> {
        let dd = d
            .degree()
            .ok_or_else(|| Error::Domain("division by the zero polynomial".into()))?;
        let lead = d.coeffs[dd].clone();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Ok((Poly::zero(), self.clone()));
        }
        let mut quot = vec![Scalar::zero(); rem.len() - dd];
        for i in (dd..rem.len()).rev() {
            if rem[i].is_zero() {
                continue;
            }
            let q = &rem[i] / &lead;
            for j in 0..dd {
                rem[i - dd + j] = &rem[i - dd + j] - &(&q * &d.coeffs[j]);
            }
            rem[i] = Scalar::zero();
            quot[i - dd] = q;
        }
        Ok((Poly::from_coeffs(quot), Poly::from_coeffs(rem)))
    }

    /// Ascending coefficient strings, the canonical serialized form.
    pub fn coeff_strings(&self) -> Vec<String> {
        self.coeffs.iter().map(|c| c.to_string()).collect()
    }

    /// JSON array of coefficient strings, ascending powers.
    pub fn to_json(&self) -> Value {
        Value::Array(
            self.coeff_strings()
                .into_iter()
                .map(Value::String)
                .collect(),
        )
    }

    pub fn from_json(v: &Value) -> Result<Poly> {
        let arr = v
            .as_array()
            .ok_or_else(|| Error::InvalidParams("expected a JSON array of coefficients".into()))?;
        let mut coeffs = Vec::with_capacity(arr.len());
        for item in arr {
            let s = item
                .as_str()
                .ok_or_else(|| Error::InvalidParams("coefficient must be a string".into()))?;
            coeffs.push(s.parse::<Scalar>()?);
        }
        Ok(Poly::from_coeffs(coeffs))
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n).map(|k| &self.coeff(k) + &rhs.coeff(k)).collect();
        Poly::from_coeffs(coeffs)
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n).map(|k| &self.coeff(k) - &rhs.coeff(k)).collect();
        Poly::from_coeffs(coeffs)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = vec![Scalar::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] = &coeffs[i + j] + &(a * b);
            }
        }
        Poly::from_coeffs(coeffs)
    }
}

impl Add for Poly {
    type Output = Poly;
    fn add(self, rhs: Poly) -> Poly {
        &self + &rhs
    }
}

impl Sub for Poly {
    type Output = Poly;
    fn sub(self, rhs: Poly) -> Poly {
        &self - &rhs
    }
}

impl Mul for Poly {
    type Output = Poly;
    fn mul(self, rhs: Poly) -> Poly {
        &self * &rhs
    }
}

impl fmt::Display for Poly {
    /// Human-readable form in descending powers, e.g. `x^2 - 8x + 4`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for k in (0..self.coeffs.len()).rev() {
            let c = &self.coeffs[k];
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let show_coeff = k == 0 || !mag.is_one();
            if show_coeff {
                write!(f, "{}", mag)?;
            }
            match k {
                0 => {}
                1 => write!(f, "x")?,
                _ => write!(f, "x^{}", k)?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn canonical_form() {
        let p = Poly::from_i64_coeffs(&[1, 2, 0, 0]);
        assert_eq!(p.degree(), Some(1));
        assert!(Poly::from_i64_coeffs(&[0, 0]).is_zero());
        assert_eq!(Poly::zero().degree(), None);
    }

    #[test]
    fn derivative_examples() {
        // x^2 - 8x + 4 -> 2x - 8
        let p = Poly::from_i64_coeffs(&[4, -8, 1]);
        assert_eq!(p.derivative(), Poly::from_i64_coeffs(&[-8, 2]));
        // constant -> zero
        assert!(Poly::from_i64_coeffs(&[5]).derivative().is_zero());
        // x^3 -> 3x^2
        assert_eq!(
            Poly::from_i64_coeffs(&[0, 0, 0, 1]).derivative(),
            Poly::from_i64_coeffs(&[0, 0, 3])
        );
        // degree drops by exactly one for nonconstant input
        let q = Poly::from_i64_coeffs(&[7, 0, 0, 2, 5]);
        assert_eq!(q.derivative().degree(), Some(3));
    }

    #[test]
    fn divmod_exact() {
        let num = Poly::from_i64_coeffs(&[4, -8, 1]); // x^2-8x+4
        let den = Poly::from_i64_coeffs(&[-2, 1]); // x-2
        let (q, r) = num.divmod(&den).unwrap();
        assert_eq!(&(&q * &den) + &r, num);
        assert!(num.divmod(&Poly::zero()).is_err());
    }

    #[test]
    fn json_round_trip() {
        let p = Poly::from_coeffs(vec![Scalar::ratio(1, 3), Scalar::int(-2)]);
        let v = p.to_json();
        assert_eq!(Poly::from_json(&v).unwrap(), p);
    }

    #[test]
    fn display() {
        let p = Poly::from_i64_coeffs(&[4, -8, 1]);
        assert_eq!(p.to_string(), "x^2 - 8x + 4");
        assert_eq!(Poly::zero().to_string(), "0");
        assert_eq!(Poly::from_i64_coeffs(&[0, 1]).to_string(), "x");
    }

    fn small_poly() -> impl Strategy<Value = Poly> {
        proptest::collection::vec((-30i64..30, 1i64..6), 0..6)
            .prop_map(|cs| Poly::from_coeffs(cs.into_iter().map(|(n, d)| Scalar::ratio(n, d)).collect()))
    }

    proptest! {
        #[test]
        fn eval_is_ring_morphism(p in small_poly(), q in small_poly(), xn in -10i64..10, xd in 1i64..5) {
            let x = Scalar::ratio(xn, xd);
            prop_assert_eq!((&p + &q).eval(&x), &p.eval(&x) + &q.eval(&x));
            prop_assert_eq!((&p * &q).eval(&x), &p.eval(&x) * &q.eval(&x));
        }

        #[test]
        fn derivative_product_rule(p in small_poly(), q in small_poly()) {
            let lhs = (&p * &q).derivative();
            let rhs = &(&p.derivative() * &q) + &(&p * &q.derivative());
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn ops_keep_canonical_form(p in small_poly(), q in small_poly()) {
            for v in [&p + &q, &p - &q, &p * &q, p.derivative()] {
                prop_assert!(v.coeffs().last().map_or(true, |c| !c.is_zero()));
            }
        }
    }
}
