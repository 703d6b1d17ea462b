//! Small dense linear solves over `Scalar`.
//!
//! Exact systems (all entries rational) go through fraction-free Bareiss
//! elimination, which keeps intermediate values as minors of the input and
//! bounds coefficient swell on the integer moment matrices. Float systems go
//! through LU with partial pivoting and return a one-norm condition estimate.

use super::scalar::Scalar;
use crate::error::{Error, Result};

pub struct SolveOutput {
    pub solution: Vec<Scalar>,
    /// ||A||_1 ||A^-1||_1, float mode only.
    pub condition_estimate: Option<f64>,
}

pub fn solve_square(a: Vec<Vec<Scalar>>, rhs: Vec<Scalar>, context: &str) -> Result<SolveOutput> {
    let n = a.len();
    if n == 0 {
        return Ok(SolveOutput { solution: Vec::new(), condition_estimate: None });
    }
    if a.iter().any(|row| row.len() != n) || rhs.len() != n {
        return Err(Error::InvalidParams(format!("system is not square: {context}")));
    }
    let exact = a.iter().flatten().chain(rhs.iter()).all(Scalar::is_rational);
    if exact {
        bareiss_solve(a, rhs, context)
    } else {
        lu_solve(a, rhs, context)
    }
}

/// Fraction-free elimination on the augmented matrix, then back substitution.
fn bareiss_solve(a: Vec<Vec<Scalar>>, rhs: Vec<Scalar>, context: &str) -> Result<SolveOutput> {
    let n = a.len();
    let mut m: Vec<Vec<Scalar>> = a
        .into_iter()
        .zip(rhs)
        .map(|(mut row, b)| {
            row.push(b);
            row
        })
        .collect();
    let mut prev = Scalar::one();
    for c in 0..n {
        let pivot_row = (c..n)
            .find(|&r| !m[r][c].is_zero())
            .ok_or_else(|| Error::DegenerateSystem(context.to_string()))?;
        m.swap(c, pivot_row);
        for r in c + 1..n {
            for j in c + 1..=n {
                let num = &(&m[c][c] * &m[r][j]) - &(&m[r][c] * &m[c][j]);
                // exact by the Bareiss identity: prev divides num
                m[r][j] = &num / &prev;
            }
            m[r][c] = Scalar::zero();
        }
        prev = m[c][c].clone();
    }
    let mut x = vec![Scalar::zero(); n];
    for r in (0..n).rev() {
        let mut acc = m[r][n].clone();
        for j in r + 1..n {
            acc = &acc - &(&m[r][j] * &x[j]);
        }
        x[r] = &acc / &m[r][r];
    }
    Ok(SolveOutput { solution: x, condition_estimate: None })
}

struct Lu {
    m: Vec<Vec<Scalar>>,
    perm: Vec<usize>,
}

impl Lu {
    fn factor(mut m: Vec<Vec<Scalar>>, context: &str) -> Result<Lu> {
        let n = m.len();
        let mut perm: Vec<usize> = (0..n).collect();
        for c in 0..n {
            let pivot_row = (c..n)
                .max_by(|&r1, &r2| {
                    m[r1][c]
                        .abs()
                        .partial_cmp(&m[r2][c].abs())
                        .unwrap_or(std::cmp::Ordering::Equal)
                })
                .unwrap();
            if m[pivot_row][c].is_zero() {
                return Err(Error::DegenerateSystem(context.to_string()));
            }
            m.swap(c, pivot_row);
            perm.swap(c, pivot_row);
            for r in c + 1..n {
                let f = &m[r][c] / &m[c][c];
                for j in c + 1..n {
                    m[r][j] = &m[r][j] - &(&f * &m[c][j]);
                }
                m[r][c] = f;
            }
        }
        Ok(Lu { m, perm })
    }

    fn solve(&self, b: &[Scalar]) -> Vec<Scalar> {
        let n = b.len();
        let mut y: Vec<Scalar> = self.perm.iter().map(|&i| b[i].clone()).collect();
        for r in 1..n {
            for j in 0..r {
                y[r] = &y[r] - &(&self.m[r][j] * &y[j]);
            }
        }
        for r in (0..n).rev() {
            for j in r + 1..n {
                y[r] = &y[r] - &(&self.m[r][j] * &y[j]);
            }
            y[r] = &y[r] / &self.m[r][r];
        }
        y
    }
}

fn one_norm(cols: usize, entry: impl Fn(usize, usize) -> f64) -> f64 {
    (0..cols)
        .map(|j| (0..cols).map(|i| entry(i, j).abs()).sum::<f64>())
        .fold(0.0, f64::max)
}

fn lu_solve(a: Vec<Vec<Scalar>>, rhs: Vec<Scalar>, context: &str) -> Result<SolveOutput> {
    let n = a.len();
    let norm_a = one_norm(n, |i, j| a[i][j].to_f64());
    let lu = Lu::factor(a, context)?;
    let solution = lu.solve(&rhs);
    // explicit inverse is affordable at these dimensions and gives an honest
    // one-norm condition number rather than a pivot-growth guess
    let mut inv_cols: Vec<Vec<f64>> = Vec::with_capacity(n);
    for j in 0..n {
        let mut e = vec![Scalar::zero(); n];
        e[j] = Scalar::one();
        inv_cols.push(lu.solve(&e).iter().map(Scalar::to_f64).collect());
    }
    let norm_inv = one_norm(n, |i, j| inv_cols[j][i]);
    Ok(SolveOutput { solution, condition_estimate: Some(norm_a * norm_inv) })
}

/// Basis of the nullspace of a rectangular system (rows x cols), rows < cols
/// allowed. Exact for rational entries; float entries use the same
/// elimination with a zero test at working precision.
pub fn nullspace(mut m: Vec<Vec<Scalar>>, cols: usize, context: &str) -> Result<Vec<Vec<Scalar>>> {
    let rows = m.len();
    if m.iter().any(|r| r.len() != cols) {
        return Err(Error::InvalidParams(format!("ragged matrix: {context}")));
    }
    let mut pivot_cols = Vec::new();
    let mut rank = 0usize;
    for c in 0..cols {
        let Some(pr) = (rank..rows).find(|&r| !is_negligible(&m[r][c], &m[r])) else {
            continue;
        };
        m.swap(rank, pr);
        for r in 0..rows {
            if r != rank && !m[r][c].is_zero() {
                let f = &m[r][c] / &m[rank][c];
                for j in 0..cols {
                    m[r][j] = &m[r][j] - &(&f * &m[rank][j]);
                }
                m[r][c] = Scalar::zero();
            }
        }
        pivot_cols.push(c);
        rank += 1;
        if rank == rows {
            break;
        }
    }
    let free_cols: Vec<usize> = (0..cols).filter(|c| !pivot_cols.contains(c)).collect();
    let mut basis = Vec::with_capacity(free_cols.len());
    for &fc in &free_cols {
        let mut v = vec![Scalar::zero(); cols];
        v[fc] = Scalar::one();
        for (r, &pc) in pivot_cols.iter().enumerate() {
            // row r: m[r][pc] * v[pc] + m[r][fc] * 1 = 0
            v[pc] = &(-&m[r][fc]) / &m[r][pc];
        }
        basis.push(v);
    }
    Ok(basis)
}

/// Zero test used during float elimination: exact zero for rationals,
/// tiny relative to the row for floats.
fn is_negligible(x: &Scalar, row: &[Scalar]) -> bool {
    if x.is_zero() {
        return true;
    }
    if x.is_rational() {
        return false;
    }
    let scale = row.iter().map(|c| c.to_f64().abs()).fold(0.0, f64::max);
    x.to_f64().abs() < scale * 1e-30
}
