//! Hermite normal form and the lattice spanned by exponent differences.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::LatticeVector;
use crate::error::{Error, Result};

/// Row-style Hermite normal form: the nonzero rows of the result form an
/// echelon basis of the row lattice, with positive pivots and entries above
/// each pivot reduced into `[0, pivot)`.
pub fn hermite_normal_form(rows: &[LatticeVector]) -> Vec<LatticeVector> {
    let mut m: Vec<LatticeVector> = rows.to_vec();
    let width = m.first().map_or(0, Vec::len);
    let mut pivot_row = 0;
    let mut pivots = Vec::new();
    for col in 0..width {
        if pivot_row == m.len() {
            break;
        }
        loop {
            // smallest nonzero entry in this column moves to the pivot row
            let best = (pivot_row..m.len())
                .filter(|&r| !m[r][col].is_zero())
                .min_by(|&a, &b| m[a][col].abs().cmp(&m[b][col].abs()));
            let Some(best) = best else { break };
            m.swap(pivot_row, best);
            let mut done = true;
            for r in pivot_row + 1..m.len() {
                if m[r][col].is_zero() {
                    continue;
                }
                let q = m[r][col].div_floor(&m[pivot_row][col]);
                let prow = m[pivot_row].clone();
                for (x, p) in m[r].iter_mut().zip(&prow) {
                    *x -= &q * p;
                }
                if !m[r][col].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if m[pivot_row][col].is_zero() {
            continue;
        }
        if m[pivot_row][col].is_negative() {
            for x in m[pivot_row].iter_mut() {
                *x = -x.clone();
            }
        }
        let prow = m[pivot_row].clone();
        for r in 0..pivot_row {
            let q = m[r][col].div_floor(&prow[col]);
            if !q.is_zero() {
                for (x, p) in m[r].iter_mut().zip(&prow) {
                    *x -= &q * p;
                }
            }
        }
        pivots.push(col);
        pivot_row += 1;
    }
    m.truncate(pivot_row);
    m
}

/// Result of expressing exponents in a basis of their difference lattice.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LatticeNormalization {
    /// Coordinates of `a_i - a_0` in `basis`; they generate `Z^rank`.
    pub coords: Vec<LatticeVector>,
    pub rank: usize,
    /// Rows form a basis of `L_A`.
    pub basis: Vec<LatticeVector>,
}

impl LatticeNormalization {
    /// Whether `L_A` is all of `Z^n`.
    pub fn is_full(&self, n: usize) -> bool {
        self.rank == n
            && self.basis.iter().enumerate().all(|(i, row)| {
                row.iter().enumerate().all(|(j, x)| if i == j { *x == BigInt::from(1) } else { x.is_zero() })
            })
    }
}

/// Coordinates of `v` in an echelon integer basis; `None` if `v` is not in
/// the lattice.
pub fn lattice_coordinates(basis: &[LatticeVector], v: &[BigInt]) -> Option<LatticeVector> {
    let mut rest = v.to_vec();
    let mut out = Vec::with_capacity(basis.len());
    for row in basis {
        let col = row.iter().position(|x| !x.is_zero())?;
        let (q, r) = rest[col].div_rem(&row[col]);
        if !r.is_zero() {
            return None;
        }
        for (x, b) in rest.iter_mut().zip(row) {
            *x -= &q * b;
        }
        out.push(q);
    }
    rest.iter().all(Zero::is_zero).then_some(out)
}

/// Basis of the lattice generated by the differences `a_i - a_0`, and the
/// coordinates of every `a_i - a_0` in it.
pub fn lattice_normalize(points: &[LatticeVector]) -> Result<LatticeNormalization> {
    let a0 = points.first().ok_or(Error::Empty("exponent list"))?;
    let n = a0.len();
    let mut diffs = Vec::with_capacity(points.len());
    for a in points {
        if a.len() != n {
            return Err(Error::DimensionMismatch { expected: n, found: a.len() });
        }
        diffs.push(a.iter().zip(a0).map(|(x, y)| x - y).collect::<LatticeVector>());
    }
    let basis = hermite_normal_form(&diffs);
    let coords = diffs
        .iter()
        .map(|d| lattice_coordinates(&basis, d).expect("difference lies in its own lattice"))
        .collect();
    Ok(LatticeNormalization { coords, rank: basis.len(), basis })
}
