//! Formal Laurent expansions at infinity of the Markov functions
//! f_1(z) = int x^alpha rho_nu / (z - x) dx and f_2 (with rho_{nu+1}),
//! the numerator polynomials C, R, S, and order checks for both kinds of
//! simultaneous rational approximation.
//!
//! Coefficients come from the moment engine alone: f_j = sum_k m_k^(j) z^(-k-1).
//! Order checks therefore reduce to exact vanishing of moment sums — the
//! analytic statement and the orthogonality statement are the same numbers.

use crate::error::{Error, Result};
use crate::mop::{Type1Pair, Type2Poly};
use crate::numerics::{MomentTable, Params, Poly, Scalar};
use serde_json::{json, Value};

/// Truncated expansion sum_{k < K} coeffs[k] z^(-k-1).
#[derive(Clone, Debug, PartialEq)]
pub struct LaurentSeries {
    coeffs: Vec<Scalar>,
}

impl LaurentSeries {
    pub fn from_coeffs(coeffs: Vec<Scalar>) -> LaurentSeries {
        LaurentSeries { coeffs }
    }

    /// Number of known coefficients (truncation order).
    pub fn truncation(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeff(&self, k: usize) -> Option<&Scalar> {
        self.coeffs.get(k)
    }

    /// Coefficient-wise difference; the truncation shrinks to the smaller one.
    pub fn sub(&self, rhs: &LaurentSeries) -> LaurentSeries {
        let n = self.coeffs.len().min(rhs.coeffs.len());
        LaurentSeries {
            coeffs: (0..n).map(|k| &self.coeffs[k] - &rhs.coeffs[k]).collect(),
        }
    }

    pub fn add(&self, rhs: &LaurentSeries) -> LaurentSeries {
        let n = self.coeffs.len().min(rhs.coeffs.len());
        LaurentSeries {
            coeffs: (0..n).map(|k| &self.coeffs[k] + &rhs.coeffs[k]).collect(),
        }
    }

    pub fn scale(&self, s: &Scalar) -> LaurentSeries {
        LaurentSeries { coeffs: self.coeffs.iter().map(|c| c * s).collect() }
    }

    /// First index with a nonzero coefficient (float coefficients are tested
    /// against a cancellation threshold at working precision).
    pub fn first_nonzero(&self) -> Option<(usize, &Scalar)> {
        self.coeffs.iter().enumerate().find(|(_, c)| !c.is_zero())
    }

    /// Multiply by a polynomial. The result splits into a polynomial part
    /// (powers z^0 and up) and a series tail; the tail truncation drops by
    /// deg p, conservatively.
    pub fn mul_poly(&self, p: &Poly) -> (Poly, LaurentSeries) {
        if p.is_zero() {
            return (Poly::zero(), LaurentSeries { coeffs: vec![Scalar::zero(); self.coeffs.len()] });
        }
        let d = p.degree().unwrap();
        // polynomial part: coefficient of z^i is sum_j p_j m_{j-1-i}
        let mut poly_coeffs = vec![Scalar::zero(); d];
        for (i, slot) in poly_coeffs.iter_mut().enumerate() {
            for (j, pj) in p.coeffs().iter().enumerate() {
                if j > i && j - 1 - i < self.coeffs.len() {
                    *slot = &*slot + &(pj * &self.coeffs[j - 1 - i]);
                }
            }
        }
        // tail: coefficient of z^(-l-1) is sum_j p_j m_{l+j}, known while
        // l + d stays below the input truncation
        let tail_len = self.coeffs.len().saturating_sub(d);
        let mut tail = Vec::with_capacity(tail_len);
        for l in 0..tail_len {
            let mut acc = Scalar::zero();
            for (j, pj) in p.coeffs().iter().enumerate() {
                acc = &acc + &(pj * &self.coeffs[l + j]);
            }
            tail.push(acc);
        }
        (Poly::from_coeffs(poly_coeffs), LaurentSeries { coeffs: tail })
    }
}

/// First K coefficients of f_1 (which = 1) or f_2 (which = 2).
pub fn laurent_f(which: u8, params: &Params, k_terms: usize) -> Result<LaurentSeries> {
    let table = match which {
        1 => MomentTable::new(params),
        2 => MomentTable::new(params).shift_nu(),
        other => {
            return Err(Error::InvalidParams(format!(
                "laurent_f selects function 1 or 2, got {other}"
            )))
        }
    };
    Ok(LaurentSeries { coeffs: (0..k_terms).map(|k| table.moment(k)).collect() })
}

/// Numerators of the simultaneous rational approximation with common
/// denominator p: R_i = sum_{j>i} a_j m^(nu)_{j-1-i}, S_i likewise with
/// nu+1 — the divided-difference expansion of
/// int (p(z) - p(x)) / (z - x) rho x^alpha dx.
pub fn numerator_r_s(p: &Type2Poly) -> (Poly, Poly) {
    let base = MomentTable::new(&p.params);
    let up = base.shift_nu();
    (divided_difference(&p.p, &base), divided_difference(&p.p, &up))
}

/// Numerator of the linear form A f_1 + B f_2.
pub fn numerator_c(pair: &Type1Pair) -> Poly {
    let base = MomentTable::new(&pair.params);
    let up = base.shift_nu();
    &divided_difference(&pair.a, &base) + &divided_difference(&pair.b, &up)
}

fn divided_difference(p: &Poly, table: &MomentTable) -> Poly {
    let Some(d) = p.degree() else { return Poly::zero() };
    let mut coeffs = vec![Scalar::zero(); d];
    for (i, slot) in coeffs.iter_mut().enumerate() {
        for (j, pj) in p.coeffs().iter().enumerate() {
            if j > i {
                *slot = &*slot + &(pj * &table.moment(j - 1 - i));
            }
        }
    }
    Poly::from_coeffs(coeffs)
}

/// Outcome of one residual expansion.
#[derive(Clone, Debug)]
pub struct OrderReport {
    /// Contracted minimal order of decay (z^-order).
    pub required_order: usize,
    /// Index and value of the first nonzero residual coefficient, if any
    /// appeared within the truncation.
    pub first_nonzero: Option<(usize, Scalar)>,
    /// order achieved: first_nonzero index + 1, or the truncation bound when
    /// every computed coefficient vanished.
    pub achieved_order: usize,
    pub truncation: usize,
    pub satisfied: bool,
}

impl OrderReport {
    fn from_tail(tail: &LaurentSeries, required_order: usize) -> OrderReport {
        let first_nonzero = tail
            .first_nonzero()
            .map(|(k, c)| (k, c.clone()));
        let achieved_order = match &first_nonzero {
            Some((k, _)) => k + 1,
            None => tail.truncation() + 1,
        };
        OrderReport {
            required_order,
            first_nonzero,
            achieved_order,
            truncation: tail.truncation(),
            satisfied: achieved_order >= required_order,
        }
    }

    pub fn to_json(&self) -> Value {
        json!({
            "required_order": self.required_order,
            "achieved_order": self.achieved_order,
            "first_nonzero_index": self.first_nonzero.as_ref().map(|(k, _)| *k),
            "first_nonzero_coeff": self.first_nonzero.as_ref().map(|(_, c)| c.to_string()),
            "truncation": self.truncation,
            "satisfied": self.satisfied,
        })
    }
}

/// Residual orders of p f_1 - R and p f_2 - S; contract n+1 and m+1.
/// Needs truncation >= n+m+3 so at least one coefficient beyond each
/// contracted order is visible.
pub fn order_report_type2(p: &Type2Poly, k_trunc: usize) -> Result<(OrderReport, OrderReport)> {
    let deg = p.n + p.m;
    if k_trunc < deg + 3 {
        return Err(Error::InvalidParams(format!(
            "truncation {k_trunc} too small for degree {deg}; need at least {}",
            deg + 3
        )));
    }
    let f1 = laurent_f(1, &p.params, k_trunc)?;
    let f2 = laurent_f(2, &p.params, k_trunc)?;
    let (r, s) = numerator_r_s(p);
    let (poly1, tail1) = f1.mul_poly(&p.p);
    let (poly2, tail2) = f2.mul_poly(&p.p);
    // the polynomial part of p f_j is exactly the numerator
    if poly1 != r || poly2 != s {
        return Err(Error::Internal(
            "divided-difference numerator disagrees with the expansion's polynomial part".into(),
        ));
    }
    Ok((
        OrderReport::from_tail(&tail1, p.n + 1),
        OrderReport::from_tail(&tail2, p.m + 1),
    ))
}

/// Residual order of A f_1 + B f_2 - C; contract n+m+2 for paper-normalized
/// near-diagonal pairs.
pub fn order_report_type1(pair: &Type1Pair, k_trunc: usize) -> Result<OrderReport> {
    let deg_bound = (pair.n as isize + pair.m.max(0)) as usize;
    if k_trunc < deg_bound + 3 {
        return Err(Error::InvalidParams(format!(
            "truncation {k_trunc} too small; need at least {}",
            deg_bound + 3
        )));
    }
    let f1 = laurent_f(1, &pair.params, k_trunc)?;
    let f2 = laurent_f(2, &pair.params, k_trunc)?;
    let (poly1, tail1) = f1.mul_poly(&pair.a);
    let (poly2, tail2) = f2.mul_poly(&pair.b);
    let c = numerator_c(pair);
    if &poly1 + &poly2 != c {
        return Err(Error::Internal(
            "linear-form numerator disagrees with the expansion's polynomial part".into(),
        ));
    }
    let tail = tail1.add(&tail2);
    let required = (pair.n as isize + pair.m + 2) as usize;
    Ok(OrderReport::from_tail(&tail, required))
}

/// `order_report_type2` with violations escalated to errors carrying the
/// offending coefficient.
pub fn order_check_type2(p: &Type2Poly, k_trunc: usize) -> Result<(OrderReport, OrderReport)> {
    let (r1, r2) = order_report_type2(p, k_trunc)?;
    for (label, rep) in [("f1", &r1), ("f2", &r2)] {
        if !rep.satisfied {
            return Err(order_violation(label, rep, &p.params, p.n, p.m as isize));
        }
    }
    Ok((r1, r2))
}

/// `order_report_type1` with violations escalated to errors.
pub fn order_check_type1(pair: &Type1Pair, k_trunc: usize) -> Result<OrderReport> {
    let rep = order_report_type1(pair, k_trunc)?;
    if !rep.satisfied {
        return Err(order_violation("A f1 + B f2 - C", &rep, &pair.params, pair.n, pair.m));
    }
    Ok(rep)
}

fn order_violation(
    label: &str,
    rep: &OrderReport,
    params: &Params,
    n: usize,
    m: isize,
) -> Error {
    let (k, c) = rep
        .first_nonzero
        .as_ref()
        .map(|(k, c)| (*k, c.to_string()))
        .unwrap_or((0, "?".into()));
    Error::OrderViolation(format!(
        "{label} residual at (n={n}, m={m}, {params}) has order {} < required {}: \
         coefficient of z^-{} is {c}",
        rep.achieved_order,
        rep.required_order,
        k + 1
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mop::{type1, type2};
    use crate::numerics::Params;

    #[test]
    fn laurent_examples() {
        let params = Params::exact(0, 0);
        let f1 = laurent_f(1, &params, 4).unwrap();
        let got: Vec<i64> = (0..4).map(|k| f1.coeff(k).unwrap().to_f64() as i64).collect();
        assert_eq!(got, vec![1, 1, 4, 36]);
        let f2 = laurent_f(2, &params, 3).unwrap();
        let got: Vec<i64> = (0..3).map(|k| f2.coeff(k).unwrap().to_f64() as i64).collect();
        assert_eq!(got, vec![1, 2, 12]);
        assert_eq!(laurent_f(1, &params, 1).unwrap().truncation(), 1);
        assert!(laurent_f(3, &params, 1).is_err());
    }
}
