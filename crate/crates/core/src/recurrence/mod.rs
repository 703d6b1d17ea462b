//! The third-order recurrence x P_n = P_{n+1} + b_n P_n + c_n P_{n-1} + d_n P_{n-2}
//! satisfied by the near-diagonal type 2 polynomials P_{2n} = p_{n,n},
//! P_{2n+1} = p_{n+1,n}, with closed-form coefficients
//!
//! ```text
//! b_n = (n+alpha+1)(3n+alpha+2 nu) - (alpha+1)(nu-1)
//! c_n = n (n+alpha)(n+alpha+nu)(3n+2 alpha+nu)
//! d_n = n (n-1)(n+alpha-1)(n+alpha)(n+alpha+nu-1)(n+alpha+nu)
//! ```
//!
//! `coeffs_from_moments` re-derives b, c, d from exactly solved moment
//! systems by comparing coefficients, which verifies the closed forms at
//! desk scale. Zeros of P_n are located by exact Sturm isolation.

mod roots;

use crate::error::{Error, Result};
use crate::mop::{type2, Type2Poly};
use crate::numerics::{Params, Poly, Scalar};
use num_bigint::BigInt;
use num_rational::BigRational;
use std::collections::BTreeMap;

/// Arrays b_0..b_{N-1}, c_0.., d_0.. for one parameter cell.
#[derive(Clone, Debug, PartialEq)]
pub struct RecCoeffs {
    pub b: Vec<Scalar>,
    pub c: Vec<Scalar>,
    pub d: Vec<Scalar>,
    pub params: Params,
}

fn rat(v: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

/// Closed-form recurrence coefficients for n = 0..count-1.
pub fn rec_coeffs(params: &Params, count: usize) -> RecCoeffs {
    let alpha = params.alpha().clone();
    let nu = params.nu().clone();
    let mut b = Vec::with_capacity(count);
    let mut c = Vec::with_capacity(count);
    let mut d = Vec::with_capacity(count);
    for i in 0..count {
        let n = rat(i as i64);
        let bn = (&n + &alpha + rat(1)) * (rat(3) * &n + &alpha + rat(2) * &nu)
            - (&alpha + rat(1)) * (&nu - rat(1));
        let cn = &n * (&n + &alpha) * (&n + &alpha + &nu) * (rat(3) * &n + rat(2) * &alpha + &nu);
        let dn = &n
            * (&n - rat(1))
            * (&n + &alpha - rat(1))
            * (&n + &alpha)
            * (&n + &alpha + &nu - rat(1))
            * (&n + &alpha + &nu);
        b.push(Scalar::rational(bn));
        c.push(Scalar::rational(cn));
        d.push(Scalar::rational(dn));
    }
    RecCoeffs { b, c, d, params: params.clone() }
}

/// P_0 ..= P_n by one forward pass of the recurrence (coefficients first,
/// no re-solving per index). Exact for rational parameters.
pub fn generate_sequence(params: &Params, n: usize) -> Vec<Poly> {
    let coeffs = rec_coeffs(params, n.max(1));
    let mut seq: Vec<Poly> = Vec::with_capacity(n + 1);
    seq.push(Poly::one());
    if n == 0 {
        return seq;
    }
    let x = Poly::x();
    seq.push(&x - &Poly::constant(coeffs.b[0].clone()));
    for i in 1..n {
        // P_{i+1} = (x - b_i) P_i - c_i P_{i-1} - d_i P_{i-2}
        let mut next = &(&x * &seq[i]) - &seq[i].scale(&coeffs.b[i]);
        next = &next - &seq[i - 1].scale(&coeffs.c[i]);
        if i >= 2 {
            next = &next - &seq[i - 2].scale(&coeffs.d[i]);
        }
        seq.push(next);
    }
    seq
}

/// Near-diagonal type 2 indices of P_i: even i = 2n -> (n, n),
/// odd i = 2n+1 -> (n+1, n).
pub fn sequence_index(i: usize) -> (usize, usize) {
    if i % 2 == 0 {
        (i / 2, i / 2)
    } else {
        ((i + 1) / 2, i / 2)
    }
}

/// Recover b, c, d from exactly solved type 2 polynomials by coefficient
/// comparison in the recurrence, and require exact agreement with the
/// closed forms.
pub fn coeffs_from_moments(params: &Params, count: usize) -> Result<RecCoeffs> {
    if !params.exact_mode() {
        return Err(Error::InvalidParams(
            "coefficient recovery from moments requires exact mode".into(),
        ));
    }
    let mut cache: BTreeMap<(usize, usize), Type2Poly> = BTreeMap::new();
    let mut top = |n: usize, m: usize, j: usize, cache: &mut BTreeMap<(usize, usize), Type2Poly>| -> Result<Scalar> {
        if !cache.contains_key(&(n, m)) {
            let p = type2(n, m, params)?;
            cache.insert((n, m), p);
        }
        Ok(cache[&(n, m)].coeff_from_top(j))
    };

    let closed = rec_coeffs(params, count);
    let mut b = Vec::with_capacity(count);
    let mut c = Vec::with_capacity(count);
    let mut d = Vec::with_capacity(count);
    for i in 0..count {
        let (bi, ci, di) = if i % 2 == 0 {
            // x p_{n,n} = p_{n+1,n} + b p_{n,n} + c p_{n,n-1} + d p_{n-1,n-1}
            let n = i / 2;
            let bi = &top(n, n, 1, &mut cache)? - &top(n + 1, n, 1, &mut cache)?;
            let ci = &(&top(n, n, 2, &mut cache)? - &top(n + 1, n, 2, &mut cache)?)
                - &(&bi * &top(n, n, 1, &mut cache)?);
            let mut di = &(&top(n, n, 3, &mut cache)? - &top(n + 1, n, 3, &mut cache)?)
                - &(&bi * &top(n, n, 2, &mut cache)?);
            if n >= 1 {
                di = &di - &(&ci * &top(n, n - 1, 1, &mut cache)?);
            }
            (bi, ci, di)
        } else {
            // x p_{n+1,n} = p_{n+1,n+1} + b p_{n+1,n} + c p_{n,n} + d p_{n,n-1}
            let n = (i - 1) / 2;
            let bi = &top(n + 1, n, 1, &mut cache)? - &top(n + 1, n + 1, 1, &mut cache)?;
            let ci = &(&top(n + 1, n, 2, &mut cache)? - &top(n + 1, n + 1, 2, &mut cache)?)
                - &(&bi * &top(n + 1, n, 1, &mut cache)?);
            let di = &(&(&top(n + 1, n, 3, &mut cache)? - &top(n + 1, n + 1, 3, &mut cache)?)
                - &(&bi * &top(n + 1, n, 2, &mut cache)?))
                - &(&ci * &top(n, n, 1, &mut cache)?);
            (bi, ci, di)
        };
        if bi != closed.b[i] || ci != closed.c[i] || di != closed.d[i] {
            return Err(Error::IdentityViolation(format!(
                "recurrence coefficients recovered from moments disagree with closed forms \
                 at n={i}, {params}: got (b,c,d) = ({bi}, {ci}, {di}), \
                 closed forms ({}, {}, {})",
                closed.b[i], closed.c[i], closed.d[i]
            )));
        }
        b.push(bi);
        c.push(ci);
        d.push(di);
    }
    Ok(RecCoeffs { b, c, d, params: params.clone() })
}

/// All zeros of P_n, required real, simple, strictly positive; refined to
/// relative residual 1e-10.
pub fn zeros(params: &Params, n: usize) -> Result<Vec<f64>> {
    if n == 0 {
        return Ok(Vec::new());
    }
    let seq = generate_sequence(params, n);
    roots::positive_simple_roots(&seq[n], 1e-10)
}

/// (b_n / 3n^2, c_n / 3n^4, d_n / n^6) — each tends to one.
pub fn asymptotic_ratios(params: &Params, n: usize) -> (f64, f64, f64) {
    let coeffs = rec_coeffs(params, n + 1);
    let nf = n as f64;
    let rb = coeffs.b[n].to_f64() / (3.0 * nf.powi(2));
    let rc = coeffs.c[n].to_f64() / (3.0 * nf.powi(4));
    let rd = coeffs.d[n].to_f64() / nf.powi(6);
    (rb, rc, rd)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn closed_form_values() {
        let params = Params::exact(0, 0);
        let rc = rec_coeffs(&params, 3);
        assert_eq!(rc.b[0], Scalar::int(1));
        assert_eq!(rc.b[1], Scalar::int(7));
        assert_eq!(rc.c[1], Scalar::int(3));
        assert_eq!(rc.d[1], Scalar::int(0));
        assert_eq!(rc.c[0], Scalar::int(0));
        assert_eq!(rc.d[2], Scalar::int(8));
        assert_eq!(rc.b[2], Scalar::int(19));
    }

    #[test]
    fn sequence_small() {
        let params = Params::exact(0, 0);
        let seq = generate_sequence(&params, 3);
        assert_eq!(seq[0], Poly::one());
        assert_eq!(seq[1], Poly::from_i64_coeffs(&[-1, 1]));
        assert_eq!(seq[2], Poly::from_i64_coeffs(&[4, -8, 1]));
        assert_eq!(seq[3].coeff(0), Scalar::int(-36));
    }

    #[test]
    fn sequence_matches_type2_solves() {
        for nu in [0u32, 1] {
            for alpha in [0u32, 1] {
                let params = Params::exact(nu, alpha);
                let seq = generate_sequence(&params, 12);
                for (i, p) in seq.iter().enumerate() {
                    let (n, m) = sequence_index(i);
                    let solved = type2(n, m, &params).unwrap();
                    assert_eq!(p, &solved.p, "P_{i} nu={nu} alpha={alpha}");
                }
            }
        }
    }

    #[test]
    fn moment_recovery_matches_closed_forms() {
        for nu in [0u32, 1] {
            for alpha in [0u32, 1] {
                let params = Params::exact(nu, alpha);
                let rec = coeffs_from_moments(&params, 11).unwrap();
                assert_eq!(rec, rec_coeffs(&params, 11));
            }
        }
    }

    #[test]
    fn zeros_examples() {
        let params = Params::exact(0, 0);
        assert!(zeros(&params, 0).unwrap().is_empty());
        let z1 = zeros(&params, 1).unwrap();
        assert_eq!(z1.len(), 1);
        assert!((z1[0] - 1.0).abs() < 1e-12);
        let z2 = zeros(&params, 2).unwrap();
        assert!((z2[0] - 0.5358983848622454).abs() < 1e-10);
        assert!((z2[1] - 7.464101615137754).abs() < 1e-10);
    }

    #[test]
    fn zeros_interlace() {
        // observed property, not a contract: zeros of P_n and P_{n+1} interlace
        let params = Params::exact(1, 0);
        for n in 1..=8usize {
            let a = zeros(&params, n).unwrap();
            let b = zeros(&params, n + 1).unwrap();
            for i in 0..n {
                assert!(b[i] < a[i] && a[i] < b[i + 1], "interlacing at n={n}, i={i}");
            }
        }
    }

    #[test]
    fn ratio_examples() {
        let params = Params::exact(0, 0);
        let (rb, _, _) = asymptotic_ratios(&params, 1);
        assert!((rb - 7.0 / 3.0).abs() < 1e-15);
        let (_, _, rd) = asymptotic_ratios(&params, 2);
        assert!((rd - 0.125).abs() < 1e-15);
    }

    #[test]
    fn half_integer_parameters_stay_exact() {
        // the recurrence closed forms are rational in (nu, alpha), so the
        // sequence is exact even off integer parameters
        let params = Params::new(
            crate::numerics::parse_rational("1/2").unwrap(),
            crate::numerics::parse_rational("0").unwrap(),
        )
        .unwrap();
        let seq = generate_sequence(&params, 6);
        assert!(seq[6].coeffs().iter().all(Scalar::is_rational));
        let z = zeros(&params, 6).unwrap();
        assert_eq!(z.len(), 6);
        assert!(z[0] > 0.0);
    }
}
