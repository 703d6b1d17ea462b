//! The moment engine: m_k = Gamma(k + alpha + nu + 1) Gamma(k + alpha + 1),
//! the moments of x^alpha rho_nu on (0, infinity).
//!
//! Moments are produced by the product recurrence
//! m_{k+1} = (k + alpha + nu + 1)(k + alpha + 1) m_k from m_0, which keeps
//! exact mode exact (m_0 is a product of two factorials) and float mode to
//! one pair of gamma evaluations.

use super::gammaf::gamma_rational;
use super::mpf::MpFloat;
use super::params::{Mode, Params};
use super::scalar::Scalar;
use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive};
use std::sync::Mutex;

/// Lazily filled table of moments for one weight x^alpha rho_nu.
/// Values are immutable once computed; the cache is internally synchronized
/// so tables can be shared across threads.
pub struct MomentTable {
    params: Params,
    cache: Mutex<Vec<Scalar>>,
}

impl MomentTable {
    pub fn new(params: &Params) -> MomentTable {
        MomentTable { params: params.clone(), cache: Mutex::new(Vec::new()) }
    }

    fn with_seed(params: Params, m0: Scalar) -> MomentTable {
        MomentTable { params, cache: Mutex::new(vec![m0]) }
    }

    pub fn params(&self) -> &Params {
        &self.params
    }

    fn m0(&self) -> Scalar {
        let a = self.params.alpha();
        let n = self.params.nu();
        match self.params.mode() {
            Mode::Exact => {
                // Gamma(alpha+nu+1) Gamma(alpha+1) = (alpha+nu)! alpha!
                let av = a.to_integer().to_u64().expect("exact alpha");
                let nv = n.to_integer().to_u64().expect("exact nu");
                Scalar::from_bigint(factorial(av + nv) * factorial(av))
            }
            Mode::Float { .. } => {
                let bits = self.params.precision_bits().expect("float mode");
                let g1 = gamma_rational(&(a + n + BigRational::one()), bits);
                let g2 = gamma_rational(&(a + BigRational::one()), bits);
                Scalar::float(g1.mul(&g2))
            }
        }
    }

    /// m_k, filling the cache through index k.
    pub fn moment(&self, k: usize) -> Scalar {
        let mut cache = self.cache.lock().unwrap();
        if cache.is_empty() {
            let m0 = self.m0();
            cache.push(m0);
        }
        while cache.len() <= k {
            let i = cache.len() - 1;
            let f = self.ratio_factor(i);
            let next = &cache[i] * &f;
            cache.push(next);
        }
        cache[k].clone()
    }

    /// (k + alpha + nu + 1)(k + alpha + 1), the exact ratio m_{k+1}/m_k.
    pub fn ratio_factor(&self, k: usize) -> Scalar {
        let kk = BigRational::from_integer(BigInt::from(k as u64));
        let one = BigRational::one();
        let f1 = &kk + self.params.alpha() + self.params.nu() + &one;
        let f2 = &kk + self.params.alpha() + &one;
        Scalar::rational(f1 * f2)
    }

    /// Table for the companion weight x^alpha rho_{nu+1}. Its m_0 equals
    /// (alpha + nu + 1) m_0 of this table, so both modes reuse the seed.
    pub fn shift_nu(&self) -> MomentTable {
        let factor = Scalar::rational(
            self.params.alpha() + self.params.nu() + BigRational::one(),
        );
        let m0 = &self.moment(0) * &factor;
        MomentTable::with_seed(self.params.shift_nu(1), m0)
    }
}

/// One-off moment evaluation; prefer a `MomentTable` for repeated use.
pub fn moment(params: &Params, k: usize) -> Scalar {
    MomentTable::new(params).moment(k)
}

fn factorial(n: u64) -> BigInt {
    let mut f = BigInt::one();
    for i in 2..=n {
        f *= BigInt::from(i);
    }
    f
}

/// Row of a moment linear system: entry j is m_{offset + j} of the weight
/// x^alpha rho_{nu + weight}.
#[derive(Clone, Copy, Debug)]
pub struct RowSpec {
    /// 0 selects rho_nu, 1 selects rho_{nu+1}.
    pub weight: u8,
    pub offset: usize,
}

/// Solve the square system whose rows are moment slices. Exact (Bareiss)
/// elimination in exact mode; LU with a condition estimate in float mode.
pub fn hankel_solve(mt: &MomentTable, rows: &[RowSpec], rhs: &[Scalar]) -> Result<super::linalg::SolveOutput> {
    if rows.len() != rhs.len() {
        return Err(Error::InvalidParams(format!(
            "system is not square: {} rows, {} right-hand sides",
            rows.len(),
            rhs.len()
        )));
    }
    let dim = rows.len();
    let up = mt.shift_nu();
    let matrix: Vec<Vec<Scalar>> = rows
        .iter()
        .map(|r| {
            let table = if r.weight == 0 { mt } else { &up };
            (0..dim).map(|j| table.moment(r.offset + j)).collect()
        })
        .collect();
    let context = format!("moment system ({}), dim {}", mt.params(), dim);
    super::linalg::solve_square(matrix, rhs.to_vec(), &context)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::params::Mode;
    use crate::numerics::scalar::parse_rational;
    use proptest::prelude::*;

    #[test]
    fn moment_examples() {
        // nu=0, alpha=0: m_k = (k!)^2
        let p = Params::exact(0, 0);
        let t = MomentTable::new(&p);
        assert_eq!(t.moment(0), Scalar::int(1));
        assert_eq!(t.moment(3), Scalar::int(36));
        // nu=1, alpha=0, k=2: Gamma(4) Gamma(3) = 6 * 2
        let t1 = MomentTable::new(&Params::exact(1, 0));
        assert_eq!(t1.moment(2), Scalar::int(12));
    }

    #[test]
    fn float_mode_m0() {
        // Gamma(3/2) Gamma(1) = sqrt(pi)/2
        let p = Params::new(parse_rational("0.5").unwrap(), parse_rational("0").unwrap()).unwrap();
        let t = MomentTable::new(&p);
        let v = t.moment(0).to_f64();
        assert!((v - 0.886226925452758).abs() < 1e-14, "m0 = {v}");
    }

    #[test]
    fn shifted_table_matches_direct() {
        let p = Params::exact(1, 2);
        let direct = MomentTable::new(&p.shift_nu(1));
        let shifted = MomentTable::new(&p).shift_nu();
        for k in 0..10 {
            assert_eq!(direct.moment(k), shifted.moment(k));
        }
    }

    #[test]
    fn exact_determinism() {
        let p = Params::exact(2, 1);
        let a = MomentTable::new(&p);
        let b = MomentTable::new(&p);
        for k in (0..30).rev() {
            assert_eq!(a.moment(k).to_string(), b.moment(k).to_string());
        }
    }

    #[test]
    fn concurrent_reads() {
        let p = Params::exact(1, 1);
        let t = std::sync::Arc::new(MomentTable::new(&p));
        let handles: Vec<_> = (0..4)
            .map(|i| {
                let t = t.clone();
                std::thread::spawn(move || t.moment(20 + i).to_string())
            })
            .collect();
        let got: Vec<String> = handles.into_iter().map(|h| h.join().unwrap()).collect();
        let fresh = MomentTable::new(&p);
        for (i, s) in got.iter().enumerate() {
            assert_eq!(s, &fresh.moment(20 + i).to_string());
        }
    }

    #[test]
    fn float_matches_exact_where_both_apply() {
        let exact = Params::exact(1, 1);
        let float = Params::with_mode(
            parse_rational("1").unwrap(),
            parse_rational("1").unwrap(),
            Mode::Float { precision_digits: 50 },
        )
        .unwrap();
        let te = MomentTable::new(&exact);
        let tf = MomentTable::new(&float);
        for k in 0..15 {
            let e = te.moment(k).to_f64();
            let f = tf.moment(k).to_f64();
            assert!(((e - f) / e).abs() < 1e-14, "k={k}: {e} vs {f}");
        }
    }

    proptest! {
        // m_{k+1} = (k+alpha+nu+1)(k+alpha+1) m_k, exact through k = 50
        #[test]
        fn ratio_identity(nu in 0u32..4, alpha in 0u32..3, k in 0usize..50) {
            let t = MomentTable::new(&Params::exact(nu, alpha));
            let lhs = t.moment(k + 1);
            let rhs = &t.moment(k) * &t.ratio_factor(k);
            prop_assert_eq!(lhs, rhs);
        }
    }
}
