//! Small dense linear algebra over Q, and over log-linear numbers with at
//! most one irrational column.

use std::collections::BTreeSet;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exactnum::{LogLinear, Prime, Rational};

/// Determinant by Gaussian elimination. The empty matrix has determinant 1.
pub fn det_rational(mut m: Vec<Vec<Rational>>) -> Rational {
    let n = m.len();
    let mut det = Rational::one();
    for col in 0..n {
        let Some(piv) = (col..n).find(|&r| !m[r][col].is_zero()) else {
            return Rational::zero();
        };
        if piv != col {
            m.swap(piv, col);
            det = -det;
        }
        let p = m[col][col].clone();
        det *= &p;
        for r in col + 1..n {
            if m[r][col].is_zero() {
                continue;
            }
            let factor = &m[r][col] / &p;
            for c in col..n {
                let delta = &factor * &m[col][c];
                m[r][c] -= delta;
            }
        }
    }
    det
}

/// Columns holding at least one irrational entry.
fn irrational_columns(m: &[Vec<LogLinear>]) -> Vec<usize> {
    let width = m.first().map_or(0, Vec::len);
    (0..width).filter(|&c| m.iter().any(|row| !row[c].is_rational())).collect()
}

/// Determinant of a square matrix in which at most one column is irrational.
///
/// The determinant is linear in that column, so it is split along the basis
/// `1, log p_1, log p_2, ...` into rational determinants.
pub fn det(m: &[Vec<LogLinear>]) -> Result<LogLinear> {
    let irr = irrational_columns(m);
    let rational_part = |j: Option<usize>, pick: &dyn Fn(&LogLinear) -> Rational| {
        m.iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .map(|(c, x)| if Some(c) == j { pick(x) } else { x.constant().clone() })
                    .collect::<Vec<_>>()
            })
            .collect::<Vec<_>>()
    };
    match irr.as_slice() {
        [] => Ok(LogLinear::from_rational(det_rational(rational_part(None, &|x| x.constant().clone())))),
        [j] => {
            let j = *j;
            let primes: BTreeSet<Prime> = m.iter().flat_map(|row| row[j].log_terms().map(|(p, _)| p)).collect();
            let constant = det_rational(rational_part(Some(j), &|x| x.constant().clone()));
            let terms: Vec<(Prime, Rational)> = primes
                .into_iter()
                .map(|p| (p, det_rational(rational_part(Some(j), &|x| x.log_coefficient(p)))))
                .collect();
            Ok(LogLinear::from_parts(constant, terms))
        }
        _ => Err(Error::NonLinearProduct),
    }
}

/// Sum of products, each with at least one rational factor.
pub fn dot(a: &[LogLinear], b: &[LogLinear]) -> Result<LogLinear> {
    let mut acc = LogLinear::zero();
    for (x, y) in a.iter().zip(b) {
        if x.is_zero() || y.is_zero() {
            continue;
        }
        acc += x.try_mul(y)?;
    }
    Ok(acc)
}

/// Normal of the hyperplane through `k` points of `R^k`, given as the `k - 1`
/// difference rows. It satisfies `normal . x = det([rows; x])`.
pub fn cofactor_normal(rows: &[Vec<LogLinear>]) -> Result<Vec<LogLinear>> {
    let k = rows.len() + 1;
    let mut normal = Vec::with_capacity(k);
    for i in 0..k {
        let minor: Vec<Vec<LogLinear>> = rows
            .iter()
            .map(|r| r.iter().enumerate().filter(|(c, _)| *c != i).map(|(_, x)| x.clone()).collect())
            .collect();
        let d = det(&minor)?;
        normal.push(if (k - 1 + i) % 2 == 0 { d } else { -d });
    }
    Ok(normal)
}

/// Solves `a x = b` for a square rational `a`; `None` when singular.
pub fn solve(a: &[Vec<Rational>], b: &[LogLinear]) -> Option<Vec<LogLinear>> {
    let n = a.len();
    let mut m: Vec<Vec<Rational>> = a.to_vec();
    let mut rhs: Vec<LogLinear> = b.to_vec();
    for col in 0..n {
        let piv = (col..n).find(|&r| !m[r][col].is_zero())?;
        m.swap(piv, col);
        rhs.swap(piv, col);
        let p = m[col][col].clone();
        for c in col..n {
            m[col][c] = &m[col][c] / &p;
        }
        rhs[col] = rhs[col].div_rational(&p);
        for r in 0..n {
            if r == col || m[r][col].is_zero() {
                continue;
            }
            let factor = m[r][col].clone();
            for c in col..n {
                let delta = &factor * &m[col][c];
                m[r][c] -= delta;
            }
            let delta = rhs[col].scale(&factor);
            rhs[r] -= delta;
        }
    }
    Some(rhs)
}
