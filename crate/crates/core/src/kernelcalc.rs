//! Exact calculus on expressions x^beta (P(x) rho_nu(x) + Q(x) rho_{nu+1}(x)).
//!
//! The class is closed under differentiation:
//!
//! ```text
//! d/dx [x^beta (P rho_nu + Q rho_{nu+1})]
//!   = x^(beta-1) [((beta+nu) P + x P' - x Q) rho_nu + (beta Q - P + x Q') rho_{nu+1}]
//! ```
//!
//! which follows from rho_{nu+1}' = -rho_nu and (x^-nu rho_nu)' = -x^-(nu+1) rho_{nu+1}.
//! Repeated differentiation of x^(2n+alpha) rho_nu is the Rodrigues-type
//! construction of the type 1 pairs, and fixes their normalization once
//! A_{0,-1} = 1 is chosen. Everything here is rational in (nu, alpha), so the
//! calculus is exact for any rational parameters, not just integer ones.

use crate::error::{Error, Result};
use crate::mop::{Normalization, Type1Pair};
use crate::numerics::{Params, Poly, Scalar};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;

/// x^beta (P rho_nu + Q rho_{nu+1}) in normal form: unless both are zero,
/// at least one of P, Q has a nonzero constant term (shared factors of x are
/// absorbed into beta).
#[derive(Clone, Debug, PartialEq)]
pub struct WeightCombo {
    beta: Scalar,
    p: Poly,
    q: Poly,
    nu: Scalar,
}

impl WeightCombo {
    pub fn new(beta: Scalar, p: Poly, q: Poly, params: &Params) -> WeightCombo {
        let mut c = WeightCombo {
            beta,
            p,
            q,
            nu: Scalar::rational(params.nu().clone()),
        };
        c.normal_form();
        c
    }

    fn normal_form(&mut self) {
        if self.p.is_zero() && self.q.is_zero() {
            self.beta = Scalar::zero();
            return;
        }
        while self.p.coeff(0).is_zero() && self.q.coeff(0).is_zero() {
            self.p = self.p.div_xpow(1).expect("constant term is zero");
            self.q = self.q.div_xpow(1).expect("constant term is zero");
            self.beta = &self.beta + &Scalar::one();
        }
    }

    pub fn beta(&self) -> &Scalar {
        &self.beta
    }

    pub fn p(&self) -> &Poly {
        &self.p
    }

    pub fn q(&self) -> &Poly {
        &self.q
    }

    /// Exact derivative; beta drops by exactly one before renormalization.
    pub fn differentiate(&self) -> WeightCombo {
        if self.p.is_zero() && self.q.is_zero() {
            return self.clone();
        }
        let x = Poly::x();
        let bp = self.p.scale(&(&self.beta + &self.nu));
        let new_p = &(&bp + &(&x * &self.p.derivative())) - &(&x * &self.q);
        let bq = self.q.scale(&self.beta);
        let new_q = &(&bq - &self.p) + &(&x * &self.q.derivative());
        let mut c = WeightCombo {
            beta: &self.beta - &Scalar::one(),
            p: new_p,
            q: new_q,
            nu: self.nu.clone(),
        };
        c.normal_form();
        c
    }

    /// Multiply by x^e (adds e to beta).
    pub fn mul_xpow(&self, e: &Scalar) -> WeightCombo {
        WeightCombo {
            beta: &self.beta + e,
            p: self.p.clone(),
            q: self.q.clone(),
            nu: self.nu.clone(),
        }
    }

    /// Split off an exact x^target prefactor: returns (P, Q) such that
    /// self = x^target (P rho_nu + Q rho_{nu+1}). Fails unless
    /// beta - target is a nonnegative integer.
    fn strip_xpow(&self, target: &Scalar) -> Result<(Poly, Poly)> {
        let offset = &self.beta - target;
        if self.p.is_zero() && self.q.is_zero() {
            return Ok((Poly::zero(), Poly::zero()));
        }
        let off_rat = offset.as_rational().ok_or_else(|| {
            Error::Internal("non-rational exponent offset after differentiation".into())
        })?;
        if !off_rat.is_integer() || off_rat < &BigRational::from_integer(BigInt::from(0)) {
            return Err(Error::Internal(format!(
                "inconsistent exponent after differentiation: residual x^{offset}"
            )));
        }
        let k = off_rat.to_integer().to_usize().ok_or_else(|| {
            Error::Internal("exponent offset too large".into())
        })?;
        Ok((self.p.mul_xpow(k), self.q.mul_xpow(k)))
    }
}

/// Build the type 1 pair by repeated differentiation:
/// 2n derivatives of x^(2n+alpha) rho_nu give x^alpha q_{n,n-1};
/// 2n+1 derivatives of x^(2n+1+alpha) rho_nu give x^alpha q_{n,n}.
/// The output carries the normalization fixed by A_{0,-1} = 1 and a
/// proportionality constant one in every differentiation step.
pub fn rodrigues_type1(n: usize, diagonal: bool, params: &Params) -> Result<Type1Pair> {
    let steps = 2 * n + usize::from(diagonal);
    let alpha = Scalar::rational(params.alpha().clone());
    let start_beta = &alpha + &Scalar::int(steps as i64);
    let mut combo = WeightCombo::new(start_beta, Poly::one(), Poly::zero(), params);
    for _ in 0..steps {
        combo = combo.differentiate();
    }
    let (a, b) = combo.strip_xpow(&alpha)?;
    let m = if diagonal { n as isize } else { n as isize - 1 };
    Ok(Type1Pair {
        a,
        b,
        n,
        m,
        params: params.clone(),
        normalization: Normalization::Paper,
    })
}

/// One step of the ladder relations
/// A_{n+1,n}^(a-1) = (a+nu) A_{n,n}^a + x A' - x B,
/// B_{n+1,n}^(a-1) = a B_{n,n}^a - A + x B'
/// (and the analogous (n,n-1) -> (n,n) pair). Equivalent to one
/// `differentiate` on the combo of x^alpha q; defined only on the
/// near-diagonal.
pub fn ladder_step(pair: &Type1Pair) -> Result<Type1Pair> {
    let n = pair.n as isize;
    let diagonal = pair.m == n;
    if !diagonal && pair.m != n - 1 {
        return Err(Error::UnsupportedIndex(format!(
            "ladder step needs indices (n,n) or (n,n-1), got ({}, {})",
            pair.n, pair.m
        )));
    }
    let new_params = pair.params.shift_alpha(-1)?;
    let alpha = Scalar::rational(pair.params.alpha().clone());
    let combo = WeightCombo::new(alpha.clone(), pair.a.clone(), pair.b.clone(), &pair.params);
    let derived = combo.differentiate();
    let (a, b) = derived.strip_xpow(&(&alpha - &Scalar::one()))?;
    let (new_n, new_m) = if diagonal {
        (pair.n + 1, pair.n as isize)
    } else {
        (pair.n, pair.n as isize)
    };
    Ok(Type1Pair {
        a,
        b,
        n: new_n,
        m: new_m,
        params: new_params,
        normalization: pair.normalization,
    })
}

/// Symbolic check of [x^(nu+1) (x^-nu rho_nu)']' = rho_nu: differentiate,
/// multiply by x^(nu+1), differentiate again, compare with rho_nu itself.
pub fn weight_ode_check(params: &Params) -> bool {
    let nu = Scalar::rational(params.nu().clone());
    let start = WeightCombo::new(-&nu, Poly::one(), Poly::zero(), params);
    let inner = start.differentiate();
    let outer = inner.mul_xpow(&(&nu + &Scalar::one())).differentiate();
    outer == WeightCombo::new(Scalar::zero(), Poly::one(), Poly::zero(), params)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::parse_rational;

    fn combo(beta: Scalar, p: Poly, q: Poly, params: &Params) -> WeightCombo {
        WeightCombo::new(beta, p, q, params)
    }

    #[test]
    fn derivative_of_rho_up() {
        // d/dx rho_{nu+1} = -rho_nu
        let params = Params::exact(2, 0);
        let d = combo(Scalar::zero(), Poly::zero(), Poly::one(), &params).differentiate();
        assert_eq!(d.beta(), &Scalar::zero());
        assert_eq!(d.p(), &Poly::from_i64_coeffs(&[-1]));
        assert!(d.q().is_zero());
    }

    #[test]
    fn derivative_of_x_pow_minus_nu() {
        // (x^-nu rho_nu)' = -x^-(nu+1) rho_{nu+1}
        let params = Params::exact(3, 0);
        let nu = Scalar::int(3);
        let d = combo(-&nu, Poly::one(), Poly::zero(), &params).differentiate();
        assert_eq!(d.beta(), &Scalar::int(-4));
        assert!(d.p().is_zero());
        assert_eq!(d.q(), &Poly::from_i64_coeffs(&[-1]));
    }

    #[test]
    fn derivative_first_step() {
        // (beta = 1+alpha, P=1, Q=0) -> (alpha, (1+alpha+nu), -1)
        let params = Params::exact(1, 2);
        let alpha = Scalar::int(2);
        let d = combo(&alpha + &Scalar::one(), Poly::one(), Poly::zero(), &params).differentiate();
        assert_eq!(d.beta(), &alpha);
        assert_eq!(d.p(), &Poly::from_i64_coeffs(&[4])); // 1 + alpha + nu
        assert_eq!(d.q(), &Poly::from_i64_coeffs(&[-1]));
    }

    #[test]
    fn rodrigues_small_cases() {
        let params = Params::exact(0, 0);
        // n=0 off-diagonal: A = 1, B = 0
        let p00 = rodrigues_type1(0, false, &params).unwrap();
        assert_eq!(p00.a, Poly::one());
        assert!(p00.b.is_zero());
        assert_eq!((p00.n, p00.m), (0, -1));
        // n=0 diagonal: A = 1+alpha+nu, B = -1
        let d00 = rodrigues_type1(0, true, &params).unwrap();
        assert_eq!(d00.a, Poly::from_i64_coeffs(&[1]));
        assert_eq!(d00.b, Poly::from_i64_coeffs(&[-1]));
        // n=1 off-diagonal at nu=alpha=0: A = x+2, B = -3 (hand iteration)
        let p10 = rodrigues_type1(1, false, &params).unwrap();
        assert_eq!(p10.a, Poly::from_i64_coeffs(&[2, 1]));
        assert_eq!(p10.b, Poly::from_i64_coeffs(&[-3]));
        // n=1 diagonal: A = 7x+6, B = -x-11
        let d11 = rodrigues_type1(1, true, &params).unwrap();
        assert_eq!(d11.a, Poly::from_i64_coeffs(&[6, 7]));
        assert_eq!(d11.b, Poly::from_i64_coeffs(&[-11, -1]));
    }

    #[test]
    fn rodrigues_exact_degrees() {
        // deg A_{n,n} = n = deg B_{n,n}; deg A_{n,n-1} = n, deg B_{n,n-1} = n-1
        for nu in [0u32, 1, 2] {
            for alpha in [0u32, 1, 2] {
                let params = Params::exact(nu, alpha);
                for n in 0..=8usize {
                    let diag = rodrigues_type1(n, true, &params).unwrap();
                    assert_eq!(diag.a.degree(), Some(n));
                    assert_eq!(diag.b.degree(), Some(n));
                    let off = rodrigues_type1(n, false, &params).unwrap();
                    assert_eq!(off.a.degree(), Some(n));
                    assert_eq!(
                        off.b.degree(),
                        if n == 0 { None } else { Some(n - 1) }
                    );
                }
            }
        }
    }

    #[test]
    fn ladder_matches_rodrigues() {
        // 2n ladder steps from (0,-1) at alpha+2n reproduce (n, n-1) at alpha
        let target_alpha = 1u32;
        let n = 3usize;
        let start_params = Params::exact(1, target_alpha + 2 * n as u32);
        let mut pair = rodrigues_type1(0, false, &start_params).unwrap();
        for _ in 0..2 * n {
            pair = ladder_step(&pair).unwrap();
        }
        let direct = rodrigues_type1(n, false, &Params::exact(1, target_alpha)).unwrap();
        assert_eq!(pair.a, direct.a);
        assert_eq!(pair.b, direct.b);
        assert_eq!((pair.n, pair.m), (direct.n, direct.m));
    }

    #[test]
    fn ladder_degree_bookkeeping() {
        // degrees grow by at most one per step
        let mut pair = rodrigues_type1(0, false, &Params::exact(0, 8)).unwrap();
        let mut prev_a = 0isize;
        let mut prev_b = -1isize;
        for _ in 0..8 {
            pair = ladder_step(&pair).unwrap();
            let da = pair.a.degree().map_or(-1, |d| d as isize);
            let db = pair.b.degree().map_or(-1, |d| d as isize);
            assert!(da <= prev_a + 1 && db <= prev_b + 1);
            prev_a = da;
            prev_b = db;
        }
    }

    #[test]
    fn ladder_rejects_off_diagonal() {
        let params = Params::exact(0, 2);
        let mut pair = rodrigues_type1(1, false, &params).unwrap();
        pair.m = 3; // not in {(n,n), (n,n-1)}
        assert!(matches!(ladder_step(&pair), Err(Error::UnsupportedIndex(_))));
    }

    #[test]
    fn ode_check_across_params() {
        assert!(weight_ode_check(&Params::exact(0, 0)));
        assert!(weight_ode_check(&Params::exact(3, 1)));
        let half = Params::new(parse_rational("0.5").unwrap(), parse_rational("0").unwrap()).unwrap();
        assert!(weight_ode_check(&half));
        let odd = Params::new(parse_rational("7/3").unwrap(), parse_rational("0.25").unwrap()).unwrap();
        assert!(weight_ode_check(&odd));
    }
}
