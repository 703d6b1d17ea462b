//! Gamma function at positive rational arguments to arbitrary precision.
//!
//! Strategy: shift the argument up until the Stirling series converges below
//! the target precision, evaluate log-gamma there with exact Bernoulli
//! numbers, exponentiate, and divide out the (exactly computed) shift product.

use super::mpf::MpFloat;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::sync::Mutex;
use std::sync::OnceLock;

static BERNOULLI: OnceLock<Mutex<Vec<BigRational>>> = OnceLock::new();

/// B_k for k = 0..=index, B_1 = -1/2 convention.
fn bernoulli(index: usize) -> BigRational {
    let cache = BERNOULLI.get_or_init(|| Mutex::new(vec![BigRational::one()]));
    let mut cache = cache.lock().unwrap();
    while cache.len() <= index {
        let m = cache.len();
        // B_m = -1/(m+1) * sum_{k<m} C(m+1, k) B_k
        let mut sum = BigRational::zero();
        let mut binom = BigInt::one(); // C(m+1, 0)
        for (k, b) in cache.iter().enumerate() {
            sum += b * BigRational::from_integer(binom.clone());
            // C(m+1, k+1) = C(m+1, k) * (m+1-k) / (k+1)
            binom = binom * BigInt::from(m + 1 - k) / BigInt::from(k + 1);
        }
        let bm = -sum / BigRational::from_integer(BigInt::from(m + 1));
        cache.push(bm);
    }
    cache[index].clone()
}

/// log Gamma(y) for rational y large enough that the Stirling tail is below
/// 2^-(prec+8) relative to the leading term.
fn stirling_ln_gamma(y: &BigRational, prec: usize) -> MpFloat {
    let yf = MpFloat::from_rational(y, prec);
    let ln_y = yf.ln();
    let half = MpFloat::from_rational(&BigRational::new(BigInt::one(), BigInt::from(2)), prec);
    // (y - 1/2) ln y - y + ln(2 pi)/2
    let mut acc = yf.sub(&half).mul(&ln_y).sub(&yf);
    let two_pi = MpFloat::pi(prec).mul(&MpFloat::from_i64(2, prec));
    acc = acc.add(&two_pi.ln().mul(&half));

    let cutoff = acc
        .bin_exponent()
        .unwrap_or(0)
        .saturating_sub(prec as i32 + 8);
    let y2 = yf.mul(&yf);
    let mut ypow = yf.clone(); // y^(2j-1)
    for j in 1..=(prec) {
        let b = bernoulli(2 * j);
        let denom = BigRational::from_integer(BigInt::from(2 * j) * BigInt::from(2 * j - 1));
        let coeff = MpFloat::from_rational(&(b / denom), prec);
        let term = coeff.div(&ypow);
        acc = acc.add(&term);
        match term.bin_exponent() {
            Some(e) if e > cutoff => {}
            _ => return acc,
        }
        ypow = ypow.mul(&y2);
    }
    acc
}

/// Gamma(x) for rational x > 0, rounded to `bits` of mantissa.
pub fn gamma_rational(x: &BigRational, bits: usize) -> MpFloat {
    assert!(x.is_positive(), "gamma argument must be positive");
    let prec = bits + 64;

    // Integer arguments are exact factorials.
    if x.is_integer() {
        if let Some(n) = x.to_integer().to_u64() {
            if n <= 10_000 {
                let mut f = BigInt::one();
                for i in 2..n {
                    f *= BigInt::from(i);
                }
                return MpFloat::from_bigint(&f, prec).with_prec(bits);
            }
        }
    }

    // Shift so the Stirling minimum term e^{-2 pi y} is below 2^-(prec+16).
    let y_min = 0.12 * (prec as f64) + 8.0;
    let xf = x.to_f64().unwrap_or(f64::MAX);
    let shift = if xf >= y_min {
        0u64
    } else {
        (y_min - xf).ceil() as u64
    };
    let y = x + BigRational::from_integer(BigInt::from(shift));
    let lg = stirling_ln_gamma(&y, prec);
    let g = lg.exp();

    if shift == 0 {
        return g.with_prec(bits);
    }
    // Gamma(x) = Gamma(x + shift) / (x (x+1) ... (x+shift-1)), product exact.
    let mut prod = BigRational::one();
    for i in 0..shift {
        prod *= x + BigRational::from_integer(BigInt::from(i));
    }
    g.div(&MpFloat::from_rational(&prod, prec)).with_prec(bits)
}
