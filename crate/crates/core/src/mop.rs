//! Type 1 and type 2 multiple orthogonal polynomials for the weight pair
//! (x^alpha rho_nu, x^alpha rho_{nu+1}), constructed from their defining
//! moment linear systems, plus the determinant identity connecting the two
//! types.
//!
//! Type 1: a pair (A, B), deg A = n, deg B = m, with
//! q = A rho_nu + B rho_{nu+1} orthogonal to x^(k+alpha) for k = 0..n+m.
//! Type 2: a monic p of degree n+m with n conditions against x^alpha rho_nu
//! and m against x^alpha rho_{nu+1}. Near the diagonal the type 1 output is
//! rescaled onto the Rodrigues-construction normalization so that the two
//! construction paths agree coefficient for coefficient.

use crate::error::{Error, Result};
use crate::kernelcalc;
use crate::numerics::{
    hankel_solve, nullspace, MomentTable, Params, Poly, RowSpec, Scalar,
};
use serde_json::{json, Value};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Normalization {
    /// Constant one in the differentiation ladder, anchored at A_{0,-1} = 1.
    Paper,
    /// Leading coefficient of B equal to one (off-near-diagonal indices).
    MonicB,
    /// Fallback when B vanishes identically: leading coefficient of A is one.
    MonicA,
    Raw,
}

/// The pair (A_{n,m}, B_{n,m}); `m = -1` is allowed with `b` the zero
/// polynomial (pure rho_nu orthogonality).
#[derive(Clone, Debug)]
pub struct Type1Pair {
    pub a: Poly,
    pub b: Poly,
    pub n: usize,
    pub m: isize,
    pub params: Params,
    pub normalization: Normalization,
}

impl Type1Pair {
    /// The n+m+1 defining sums; all must vanish (exactly in exact mode).
    pub fn orthogonality_sums(&self) -> Vec<Scalar> {
        let base = MomentTable::new(&self.params);
        let up = base.shift_nu();
        let count = (self.n as isize + self.m + 1).max(0) as usize;
        (0..count)
            .map(|k| {
                let mut acc = Scalar::zero();
                for (j, c) in self.a.coeffs().iter().enumerate() {
                    acc = &acc + &(c * &base.moment(k + j));
                }
                for (j, c) in self.b.coeffs().iter().enumerate() {
                    acc = &acc + &(c * &up.moment(k + j));
                }
                acc
            })
            .collect()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "n": self.n,
            "m": self.m,
            "nu": self.params.nu().to_string(),
            "alpha": self.params.alpha().to_string(),
            "normalization": format!("{:?}", self.normalization),
            "A": self.a.to_json(),
            "B": self.b.to_json(),
        })
    }
}

/// Monic type 2 polynomial p_{n,m} of degree n+m.
#[derive(Clone, Debug)]
pub struct Type2Poly {
    pub p: Poly,
    pub n: usize,
    pub m: usize,
    pub params: Params,
}

impl Type2Poly {
    /// Coefficient a_{n,m}(j) of x^(n+m-j); zero for j > n+m.
    pub fn coeff_from_top(&self, j: usize) -> Scalar {
        let deg = self.n + self.m;
        if j > deg {
            Scalar::zero()
        } else {
            self.p.coeff(deg - j)
        }
    }

    /// The n sums against rho_nu followed by the m sums against rho_{nu+1}.
    pub fn orthogonality_sums(&self) -> Vec<Scalar> {
        let base = MomentTable::new(&self.params);
        let up = base.shift_nu();
        let mut sums = Vec::with_capacity(self.n + self.m);
        for k in 0..self.n {
            sums.push(weighted_sum(&self.p, &base, k));
        }
        for k in 0..self.m {
            sums.push(weighted_sum(&self.p, &up, k));
        }
        sums
    }

    pub fn to_json(&self) -> Value {
        json!({
            "n": self.n,
            "m": self.m,
            "nu": self.params.nu().to_string(),
            "alpha": self.params.alpha().to_string(),
            "p": self.p.to_json(),
        })
    }
}

fn weighted_sum(p: &Poly, table: &MomentTable, k: usize) -> Scalar {
    let mut acc = Scalar::zero();
    for (j, c) in p.coeffs().iter().enumerate() {
        acc = &acc + &(c * &table.moment(k + j));
    }
    acc
}

/// Monic p_{n,m} from the (n+m) x (n+m) moment system.
pub fn type2(n: usize, m: usize, params: &Params) -> Result<Type2Poly> {
    let dim = n + m;
    if dim == 0 {
        return Ok(Type2Poly { p: Poly::one(), n, m, params: params.clone() });
    }
    let table = MomentTable::new(params);
    let up = table.shift_nu();
    let mut rows = Vec::with_capacity(dim);
    let mut rhs = Vec::with_capacity(dim);
    for k in 0..n {
        rows.push(RowSpec { weight: 0, offset: k });
        rhs.push(-&table.moment(k + dim));
    }
    for k in 0..m {
        rows.push(RowSpec { weight: 1, offset: k });
        rhs.push(-&up.moment(k + dim));
    }
    let out = hankel_solve(&table, &rows, &rhs).map_err(|e| match e {
        Error::DegenerateSystem(_) => Error::DegenerateSystem(format!(
            "type 2 system at n={n}, m={m}, {params}"
        )),
        other => other,
    })?;
    let mut coeffs = out.solution;
    coeffs.push(Scalar::one());
    Ok(Type2Poly { p: Poly::from_coeffs(coeffs), n, m, params: params.clone() })
}

/// Type 1 pair from the homogeneous system of n+m+1 orthogonality conditions
/// on n+m+2 coefficients. Near-diagonal indices (m = n or m = n-1, including
/// (0,-1)) are rescaled to the Rodrigues normalization; other indices get
/// B monic, falling back to A monic if B vanishes.
pub fn type1(n: usize, m: isize, params: &Params) -> Result<Type1Pair> {
    if m < -1 {
        return Err(Error::UnsupportedIndex(format!("type 1 index m = {m} < -1")));
    }
    let near_diagonal = m == n as isize || m == n as isize - 1;
    let a_len = n + 1;
    let b_len = (m + 1) as usize;
    let cols = a_len + b_len;
    let eqs = (n as isize + m + 1) as usize;

    let table = MomentTable::new(params);
    let up = table.shift_nu();
    let matrix: Vec<Vec<Scalar>> = (0..eqs)
        .map(|k| {
            let mut row = Vec::with_capacity(cols);
            for j in 0..a_len {
                row.push(table.moment(k + j));
            }
            for j in 0..b_len {
                row.push(up.moment(k + j));
            }
            row
        })
        .collect();
    let context = format!("type 1 system at n={n}, m={m}, {params}");
    let basis = nullspace(matrix, cols, &context)?;
    if basis.len() != 1 {
        return Err(Error::DegenerateSystem(format!(
            "{context}: nullspace dimension {} (expected 1)",
            basis.len()
        )));
    }
    let v = &basis[0];
    let a = Poly::from_coeffs(v[..a_len].to_vec());
    let b = Poly::from_coeffs(v[a_len..].to_vec());
    let mut pair = Type1Pair {
        a,
        b,
        n,
        m,
        params: params.clone(),
        normalization: Normalization::Raw,
    };

    if near_diagonal {
        let reference = kernelcalc::rodrigues_type1(n, m == n as isize, params)?;
        let (have, want) = highest_common_coeff(&pair, &reference).ok_or_else(|| {
            Error::DegenerateSystem(format!(
                "{context}: moment solution cannot be scaled onto the Rodrigues pair"
            ))
        })?;
        let factor = &want / &have;
        pair.a = pair.a.scale(&factor);
        pair.b = pair.b.scale(&factor);
        pair.normalization = Normalization::Paper;
    } else if let Some(lead) = pair.b.leading().cloned() {
        let inv = lead.inv().expect("leading coefficient is nonzero");
        pair.a = pair.a.scale(&inv);
        pair.b = pair.b.scale(&inv);
        pair.normalization = Normalization::MonicB;
    } else if let Some(lead) = pair.a.leading().cloned() {
        let inv = lead.inv().expect("leading coefficient is nonzero");
        pair.a = pair.a.scale(&inv);
        pair.normalization = Normalization::MonicA;
    }
    Ok(pair)
}

/// Highest-degree coefficient position where the reference pair is nonzero,
/// returned as (value in `pair`, value in `reference`).
fn highest_common_coeff(pair: &Type1Pair, reference: &Type1Pair) -> Option<(Scalar, Scalar)> {
    if let Some(d) = reference.a.degree() {
        let have = pair.a.coeff(d);
        if !have.is_zero() {
            return Some((have, reference.a.coeff(d)));
        }
    }
    if let Some(d) = reference.b.degree() {
        let have = pair.b.coeff(d);
        if !have.is_zero() {
            return Some((have, reference.b.coeff(d)));
        }
    }
    None
}

/// Result of the determinant identity check at index n:
/// A_{n,n} B_{n,n-1} - A_{n,n-1} B_{n,n} = constant * p_{n,n} and
/// A_{n+1,n} B_{n,n} - A_{n,n} B_{n+1,n} = companion * p_{n+1,n}.
#[derive(Clone, Debug)]
pub struct DeterminantIdentity {
    pub constant: Scalar,
    pub companion_constant: Scalar,
    /// True when each constant equals the leading coefficient of its
    /// combination (the combinations attain full degree).
    pub constants_are_leading: bool,
}

pub fn determinant_identity(n: usize, params: &Params) -> Result<DeterminantIdentity> {
    let diag = kernelcalc::rodrigues_type1(n, true, params)?;
    let off = kernelcalc::rodrigues_type1(n, false, params)?;
    let next_off = kernelcalc::rodrigues_type1(n + 1, false, params)?;

    let w = &(&diag.a * &off.b) - &(&off.a * &diag.b);
    let p_diag = type2(n, n, params)?;
    let constant = proportionality_constant(&w, &p_diag.p, n, params, "A(n,n)B(n,n-1) - A(n,n-1)B(n,n)")?;

    let w2 = &(&next_off.a * &diag.b) - &(&diag.a * &next_off.b);
    let p_off = type2(n + 1, n, params)?;
    let companion_constant =
        proportionality_constant(&w2, &p_off.p, n, params, "A(n+1,n)B(n,n) - A(n,n)B(n+1,n)")?;

    let constants_are_leading = w.degree() == p_diag.p.degree() && w2.degree() == p_off.p.degree();
    Ok(DeterminantIdentity { constant, companion_constant, constants_are_leading })
}

fn proportionality_constant(
    w: &Poly,
    p: &Poly,
    n: usize,
    params: &Params,
    label: &str,
) -> Result<Scalar> {
    let (q, r) = w.divmod(p)?;
    if !r.is_zero() || q.degree().map_or(false, |d| d > 0) {
        return Err(Error::IdentityViolation(format!(
            "{label} is not proportional to the type 2 polynomial at n={n}, {params}: \
             remainder {r}, quotient {q}"
        )));
    }
    Ok(q.coeff(0))
}

/// Check both identities d/dx p_{n,n} = 2n p_{n,n-1}^(alpha+1) and
/// d/dx p_{n,n-1} = (2n-1) p_{n-1,n-1}^(alpha+1), each side built by an
/// independent moment solve.
pub fn verify_type2_derivative(n: usize, params: &Params) -> Result<()> {
    if n == 0 {
        return Err(Error::InvalidParams("derivative check needs n >= 1".into()));
    }
    if !params.exact_mode() {
        return Err(Error::InvalidParams(
            "derivative identity check requires exact mode".into(),
        ));
    }
    let up = params.shift_alpha(1)?;

    let diag = type2(n, n, params)?;
    let lhs1 = diag.p.derivative();
    let rhs1 = type2(n, n - 1, &up)?.p.scale(&Scalar::int(2 * n as i64));
    if lhs1 != rhs1 {
        return Err(Error::IdentityViolation(format!(
            "d/dx p({n},{n}) != 2n * p({n},{},alpha+1) at {params}: {lhs1} vs {rhs1}",
            n - 1
        )));
    }

    let off = type2(n, n - 1, params)?;
    let lhs2 = off.p.derivative();
    let rhs2 = type2(n - 1, n - 1, &up)?.p.scale(&Scalar::int(2 * n as i64 - 1));
    if lhs2 != rhs2 {
        return Err(Error::IdentityViolation(format!(
            "d/dx p({n},{}) != (2n-1) * p({},{},alpha+1) at {params}: {lhs2} vs {rhs2}",
            n - 1,
            n - 1,
            n - 1
        )));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn type2_examples() {
        let params = Params::exact(0, 0);
        // p_{0,0} = 1
        assert_eq!(type2(0, 0, &params).unwrap().p, Poly::one());
        // p_{1,1} = x^2 - 8x + 4
        assert_eq!(
            type2(1, 1, &params).unwrap().p,
            Poly::from_i64_coeffs(&[4, -8, 1])
        );
        // p_{2,1} has constant term -36
        assert_eq!(type2(2, 1, &params).unwrap().p.coeff(0), Scalar::int(-36));
    }

    #[test]
    fn type2_linear_general_params() {
        // p_{1,0} = x - (alpha+1)(alpha+nu+1)
        for (nu, alpha) in [(0u32, 0u32), (1, 0), (2, 3), (0, 2)] {
            let params = Params::exact(nu, alpha);
            let p = type2(1, 0, &params).unwrap().p;
            let c = -((alpha as i64 + 1) * (alpha as i64 + nu as i64 + 1));
            assert_eq!(p, Poly::from_i64_coeffs(&[c, 1]));
        }
    }

    #[test]
    fn type2_orthogonality_exact_zero() {
        for nu in [0u32, 1, 2] {
            for alpha in [0u32, 1] {
                let params = Params::exact(nu, alpha);
                for n in 0..=6usize {
                    for m in [n, n.saturating_sub(1)] {
                        let p = type2(n, m, &params).unwrap();
                        assert_eq!(p.p.degree(), Some(n + m), "degree exactness");
                        for s in p.orthogonality_sums() {
                            assert!(s.is_zero(), "n={n} m={m} nu={nu} alpha={alpha}");
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn type1_examples() {
        let params = Params::exact(0, 0);
        // (0,-1): A = 1, B = 0
        let p = type1(0, -1, &params).unwrap();
        assert_eq!(p.a, Poly::one());
        assert!(p.b.is_zero());
        assert_eq!(p.normalization, Normalization::Paper);
        // (0,0): A = 1+alpha+nu = 1, B = -1
        let p = type1(0, 0, &params).unwrap();
        assert_eq!(p.a, Poly::from_i64_coeffs(&[1]));
        assert_eq!(p.b, Poly::from_i64_coeffs(&[-1]));
    }

    #[test]
    fn type1_matches_rodrigues() {
        for nu in [0u32, 1, 2] {
            for alpha in [0u32, 1] {
                let params = Params::exact(nu, alpha);
                for n in 0..=5usize {
                    for diagonal in [false, true] {
                        let m = if diagonal { n as isize } else { n as isize - 1 };
                        let from_moments = type1(n, m, &params).unwrap();
                        let from_rodrigues =
                            kernelcalc::rodrigues_type1(n, diagonal, &params).unwrap();
                        assert_eq!(from_moments.a, from_rodrigues.a, "A at n={n} m={m}");
                        assert_eq!(from_moments.b, from_rodrigues.b, "B at n={n} m={m}");
                    }
                }
            }
        }
    }

    #[test]
    fn type1_orthogonality_exact_zero() {
        for nu in [0u32, 2] {
            for alpha in [0u32, 1] {
                let params = Params::exact(nu, alpha);
                for n in 0..=6usize {
                    for diagonal in [false, true] {
                        let m = if diagonal { n as isize } else { n as isize - 1 };
                        let pair = type1(n, m, &params).unwrap();
                        for s in pair.orthogonality_sums() {
                            assert!(s.is_zero(), "n={n} m={m} nu={nu} alpha={alpha}");
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn type1_off_diagonal_monic_b() {
        let params = Params::exact(1, 0);
        let pair = type1(3, 1, &params).unwrap();
        assert_eq!(pair.normalization, Normalization::MonicB);
        assert_eq!(pair.b.leading(), Some(&Scalar::one()));
        for s in pair.orthogonality_sums() {
            assert!(s.is_zero());
        }
        // m = -1 with n > 0 falls back to monic A (B is identically zero)
        let pure = type1(2, -1, &params).unwrap();
        assert_eq!(pure.normalization, Normalization::MonicA);
        assert!(pure.b.is_zero());
        assert_eq!(pure.a.leading(), Some(&Scalar::one()));
    }

    #[test]
    fn determinant_identity_small() {
        let params = Params::exact(0, 0);
        // n=1: (7x+6)(-3) - (x+2)(-x-11) = x^2 - 8x + 4, constant 1
        let d = determinant_identity(1, &params).unwrap();
        assert_eq!(d.constant, Scalar::int(1));
        assert!(d.constants_are_leading);
        // n=0 companion: A_{1,0}B_{0,0} - A_{0,0}B_{1,0} = -(x-1), constant -1;
        // main identity reduces to -B_{0,0} = 1 against p_{0,0} = 1
        let d0 = determinant_identity(0, &params).unwrap();
        assert_eq!(d0.constant, Scalar::int(1));
        assert_eq!(d0.companion_constant, Scalar::int(-1));
    }

    #[test]
    fn type2_derivative_identities() {
        let params = Params::exact(0, 0);
        verify_type2_derivative(1, &params).unwrap();
        // n=3, nu=2, alpha=1
        verify_type2_derivative(3, &Params::exact(2, 1)).unwrap();
    }
}
