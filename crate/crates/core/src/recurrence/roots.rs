//! Exact root location for rational-coefficient polynomials: primitive
//! integer form, Sturm sequences for counting, dyadic bisection for
//! isolation, and Newton refinement against exact evaluations.

use crate::error::{Error, Result};
use crate::numerics::{Poly, Scalar};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Integer polynomial, ascending coefficients, content 1.
#[derive(Clone, Debug)]
struct IntPoly {
    c: Vec<BigInt>,
}

impl IntPoly {
    fn from_poly(p: &Poly) -> Result<IntPoly> {
        let mut lcm = BigInt::one();
        let mut rats = Vec::with_capacity(p.coeffs().len());
        for c in p.coeffs() {
            let r = c
                .as_rational()
                .ok_or_else(|| Error::InvalidParams("root isolation needs rational coefficients".into()))?;
            lcm = lcm_bigint(&lcm, r.denom());
            rats.push(r.clone());
        }
        let ints: Vec<BigInt> = rats
            .iter()
            .map(|r| r.numer() * (&lcm / r.denom()))
            .collect();
        Ok(IntPoly { c: ints }.primitive())
    }

    fn primitive(mut self) -> IntPoly {
        while self.c.last().map_or(false, |c| c.is_zero()) {
            self.c.pop();
        }
        let mut g = BigInt::zero();
        for c in &self.c {
            g = gcd_bigint(&g, c);
            if g.is_one() {
                return self;
            }
        }
        if !g.is_zero() && !g.is_one() {
            for c in &mut self.c {
                *c /= &g;
            }
        }
        self
    }

    fn degree(&self) -> Option<usize> {
        if self.c.is_empty() {
            None
        } else {
            Some(self.c.len() - 1)
        }
    }

    fn derivative(&self) -> IntPoly {
        if self.c.len() <= 1 {
            return IntPoly { c: vec![] };
        }
        let c = self
            .c
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, v)| v * BigInt::from(k))
            .collect();
        IntPoly { c }.primitive()
    }

    /// Exact sign at the dyadic point num / 2^k:
    /// sign of sum c_j num^j 2^(k (deg - j)).
    fn sign_at_dyadic(&self, num: &BigInt, k: u32) -> i32 {
        let Some(deg) = self.degree() else { return 0 };
        let mut acc = BigInt::zero();
        // Horner in the integer rescaling
        for j in (0..=deg).rev() {
            acc = acc * num + (&self.c[j] << (k as usize * (deg - j)));
        }
        sign_of(&acc)
    }

    fn eval_rational(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.c.iter().rev() {
            acc = acc * x + BigRational::from_integer(c.clone());
        }
        acc
    }
}

fn sign_of(v: &BigInt) -> i32 {
    if v.is_zero() {
        0
    } else if v.is_negative() {
        -1
    } else {
        1
    }
}

fn gcd_bigint(a: &BigInt, b: &BigInt) -> BigInt {
    let mut a = a.abs();
    let mut b = b.abs();
    while !b.is_zero() {
        let t = &a % &b;
        a = b;
        b = t;
    }
    a
}

fn lcm_bigint(a: &BigInt, b: &BigInt) -> BigInt {
    if a.is_zero() || b.is_zero() {
        return BigInt::zero();
    }
    (a / gcd_bigint(a, b)) * b
}

/// Sturm chain with primitive, sign-preserving normalization.
struct SturmChain {
    seq: Vec<IntPoly>,
}

impl SturmChain {
    fn new(p: &IntPoly) -> SturmChain {
        let mut seq = vec![p.clone(), p.derivative()];
        loop {
            let k = seq.len();
            if seq[k - 1].degree().is_none() {
                seq.pop();
                break;
            }
            if seq[k - 1].degree() == Some(0) {
                break;
            }
            let rem = neg_pseudo_rem(&seq[k - 2], &seq[k - 1]);
            if rem.degree().is_none() {
                break;
            }
            seq.push(rem);
        }
        SturmChain { seq }
    }

    /// gcd(p, p') is constant iff the chain terminates at degree 0, i.e. the
    /// polynomial is square-free.
    fn square_free(&self) -> bool {
        self.seq
            .last()
            .and_then(IntPoly::degree)
            .map_or(false, |d| d == 0)
    }

    /// Sign variations at the dyadic point num / 2^k.
    fn variations_at(&self, num: &BigInt, k: u32) -> usize {
        let signs: Vec<i32> = self
            .seq
            .iter()
            .map(|p| p.sign_at_dyadic(num, k))
            .filter(|&s| s != 0)
            .collect();
        signs.windows(2).filter(|w| w[0] != w[1]).count()
    }
}

/// -prem(a, b) scaled by a positive constant, made primitive.
fn neg_pseudo_rem(a: &IntPoly, b: &IntPoly) -> IntPoly {
    let da = a.degree().expect("nonzero");
    let db = b.degree().expect("nonzero");
    assert!(da >= db);
    let lead = b.c[db].clone();
    // multiply by an even power of the leading coefficient so the scaling is
    // positive and the remainder's sign is the true remainder's sign
    let mut e = da - db + 1;
    if e % 2 == 1 {
        e += 1;
    }
    let mut r: Vec<BigInt> = a.c.iter().map(|c| c * lead.pow(e as u32)).collect();
    for i in (db..=da).rev() {
        if r[i].is_zero() {
            continue;
        }
        let q = &r[i] / &lead; // exact by construction of the scaling
        for j in 0..db {
            let delta = &q * &b.c[j];
            r[i - db + j] -= delta;
        }
        r[i] = BigInt::zero();
    }
    let neg: Vec<BigInt> = r.into_iter().map(|v| -v).collect();
    IntPoly { c: neg }.primitive()
}

/// All roots of `p`, required to be real, simple, and strictly positive.
/// Roots are isolated exactly, bisected to f64 resolution, Newton-polished
/// with exact polynomial evaluation, and accepted only when the final
/// residual satisfies |p(x)| <= rel_tol * sum |c_j| |x|^j.
pub(crate) fn positive_simple_roots(p: &Poly, rel_tol: f64) -> Result<Vec<f64>> {
    let Some(deg) = p.degree() else {
        return Err(Error::ZeroLocation("zero polynomial has no root set".into()));
    };
    if deg == 0 {
        return Ok(Vec::new());
    }
    let ip = IntPoly::from_poly(p)?;
    let chain = SturmChain::new(&ip);
    if !chain.square_free() {
        return Err(Error::ZeroLocation(format!(
            "polynomial of degree {deg} has a multiple root"
        )));
    }

    // dyadic Cauchy bound 2^bound_log2 > 1 + max |c_j| / |lead|
    let lead_bits = ip.c[deg].bits();
    let max_bits = ip.c.iter().map(|c| c.bits()).max().unwrap();
    let bound_log2 = (max_bits - lead_bits.min(max_bits)) as u32 + 2;
    let upper = BigInt::one() << bound_log2;

    let v0 = chain.variations_at(&BigInt::zero(), 0);
    let vb = chain.variations_at(&upper, 0);
    let count = v0 - vb.min(v0);
    if count != deg {
        return Err(Error::ZeroLocation(format!(
            "only {count} of {deg} roots lie in (0, 2^{bound_log2}]: roots are not all positive reals"
        )));
    }

    // isolate by dyadic bisection; intervals are (num/2^k, num'/2^k]
    let mut stack = vec![(BigInt::zero(), upper, 0u32, deg)];
    let mut isolated = Vec::with_capacity(deg);
    while let Some((lo, hi, k, cnt)) = stack.pop() {
        if cnt == 0 {
            continue;
        }
        if cnt == 1 {
            isolated.push((lo, hi, k));
            continue;
        }
        let (mut lo2, mut hi2) = (lo << 1u32, hi << 1u32);
        let mut k2 = k + 1;
        let mut mid = (&lo2 + &hi2) >> 1u32;
        // a dyadic midpoint may itself be a root of the (square-free)
        // polynomial; refine the grid and step off center until the split
        // point is not a root — distinct candidates each round, so at most
        // deg rounds can fail
        let mut guard = 0;
        while ip.sign_at_dyadic(&mid, k2) == 0 {
            lo2 <<= 2u32;
            hi2 <<= 2u32;
            k2 += 2;
            mid = ((&lo2 + &hi2) >> 1u32) + BigInt::one();
            guard += 1;
            if guard > deg + 2 {
                return Err(Error::ZeroLocation(
                    "could not separate roots at a dyadic split point".into(),
                ));
            }
        }
        let v_lo = chain.variations_at(&lo2, k2);
        let v_mid = chain.variations_at(&mid, k2);
        let v_hi = chain.variations_at(&hi2, k2);
        stack.push((lo2, mid.clone(), k2, v_lo - v_mid.min(v_lo)));
        stack.push((mid, hi2, k2, v_mid - v_hi.min(v_mid)));
    }
    if isolated.len() != deg {
        return Err(Error::ZeroLocation(format!(
            "isolated {} intervals for {deg} roots",
            isolated.len()
        )));
    }

    let dip = ip.derivative();
    let mut roots = Vec::with_capacity(deg);
    for (mut lo, mut hi, mut k) in isolated {
        // bisect to ~2^-54 relative width
        for _ in 0..200 {
            let width_ok = {
                let w = (&hi - &lo).to_f64().unwrap_or(f64::MAX) / 2f64.powi(k as i32);
                let scale = hi.to_f64().unwrap_or(f64::MAX) / 2f64.powi(k as i32);
                w <= scale.abs() * 1e-14
            };
            if width_ok {
                break;
            }
            lo <<= 1u32;
            hi <<= 1u32;
            k += 1;
            let mid = (&lo + &hi) >> 1u32;
            let s = ip.sign_at_dyadic(&mid, k);
            let s_hi = ip.sign_at_dyadic(&hi, k);
            if s == 0 {
                lo = mid.clone() - BigInt::one();
                hi = mid + BigInt::one();
                break;
            }
            if s == s_hi {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        let mut x = ((lo.to_f64().unwrap_or(0.0) + hi.to_f64().unwrap_or(0.0)) / 2.0)
            / 2f64.powi(k as i32);
        // Newton with exact residuals
        for _ in 0..4 {
            let xr = BigRational::from_float(x).unwrap();
            let f = ip.eval_rational(&xr).to_f64().unwrap_or(0.0);
            let df = dip.eval_rational(&xr).to_f64().unwrap_or(0.0);
            if df == 0.0 {
                break;
            }
            let step = f / df;
            if !step.is_finite() || step == 0.0 {
                break;
            }
            x -= step;
        }
        if !(x > 0.0) {
            return Err(Error::ZeroLocation(format!("refined root {x} is not positive")));
        }
        let xr = BigRational::from_float(x).unwrap();
        let residual = ip.eval_rational(&xr).abs();
        let scale: BigRational = ip
            .c
            .iter()
            .enumerate()
            .map(|(j, c)| {
                BigRational::from_integer(c.abs()) * pow_rational(&xr.abs(), j)
            })
            .sum();
        let rel = (residual / scale).to_f64().unwrap_or(f64::MAX);
        if rel > rel_tol {
            return Err(Error::ZeroLocation(format!(
                "residual {rel:.3e} at root {x} exceeds tolerance {rel_tol:.3e}"
            )));
        }
        roots.push(x);
    }
    roots.sort_by(f64::total_cmp);
    Ok(roots)
}

fn pow_rational(x: &BigRational, e: usize) -> BigRational {
    let mut acc = BigRational::one();
    for _ in 0..e {
        acc *= x;
    }
    acc
}
