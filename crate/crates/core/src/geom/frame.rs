//! Affine span of a point set with at most one irrational coordinate.
//!
//! The span is parametrized by a subset of the raw coordinates: rational
//! columns are chosen first by row reduction, the irrational column only when
//! the rational ones do not determine it. Every other column is an affine
//! function of the chosen ones.

use num_traits::Zero;

use super::linalg;
use super::Point;
use crate::error::{Error, Result};
use crate::exactnum::{LogLinear, Rational};

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct Frame {
    pub origin: Point,
    /// Chosen raw columns; rational ones ascending, then the irrational one.
    pub chosen: Vec<usize>,
    /// `x[j] = origin[j] + sum_t coeff[t] * (x[chosen[t]] - origin[chosen[t]])`.
    pub relations: Vec<(usize, Vec<LogLinear>)>,
    /// Indices of `dim + 1` affinely independent input points.
    pub simplex: Vec<usize>,
    pub lift: Option<usize>,
}

/// The unique column carrying irrational entries, if any.
pub(crate) fn lift_column(points: &[Point]) -> Result<Option<usize>> {
    let d = points.first().map_or(0, Vec::len);
    let cols: Vec<usize> = (0..d).filter(|&c| points.iter().any(|p| !p[c].is_rational())).collect();
    match cols.as_slice() {
        [] => Ok(None),
        [c] => Ok(Some(*c)),
        _ => Err(Error::NonLinearProduct),
    }
}

impl Frame {
    pub fn new(points: &[Point]) -> Result<Frame> {
        let origin = points.first().ok_or(Error::Empty("point set"))?.clone();
        let d = origin.len();
        let lift = lift_column(points)?;

        // reduced rows over the rational columns, each with its pivot
        let mut rows: Vec<(usize, Vec<Rational>)> = Vec::new();
        let mut simplex = vec![0];
        let diff = |p: &Point| -> Vec<Rational> {
            (0..d)
                .map(|c| {
                    if Some(c) == lift {
                        Rational::zero()
                    } else {
                        p[c].constant() - origin[c].constant()
                    }
                })
                .collect()
        };
        for (i, p) in points.iter().enumerate().skip(1) {
            let mut v = diff(p);
            for (piv, row) in &rows {
                if !v[*piv].is_zero() {
                    let f = v[*piv].clone();
                    for (x, r) in v.iter_mut().zip(row) {
                        *x -= &f * r;
                    }
                }
            }
            let Some(piv) = v.iter().position(|x| !x.is_zero()) else {
                continue;
            };
            let lead = v[piv].clone();
            for x in v.iter_mut() {
                *x /= &lead;
            }
            for (_, row) in rows.iter_mut() {
                if !row[piv].is_zero() {
                    let f = row[piv].clone();
                    for (x, r) in row.iter_mut().zip(&v) {
                        *x -= &f * r;
                    }
                }
            }
            rows.push((piv, v));
            simplex.push(i);
        }
        rows.sort_by_key(|(piv, _)| *piv);
        let mut chosen: Vec<usize> = rows.iter().map(|(piv, _)| *piv).collect();

        let mut relations = Vec::new();
        for j in 0..d {
            if Some(j) == lift || chosen.contains(&j) {
                continue;
            }
            let coeffs: Vec<LogLinear> = rows.iter().map(|(_, row)| LogLinear::from_rational(row[j].clone())).collect();
            relations.push((j, coeffs));
        }

        if let Some(l) = lift {
            // lift = origin + g . (base - origin) on the rational span?
            let a: Vec<Vec<Rational>> = simplex[1..]
                .iter()
                .map(|&i| chosen.iter().map(|&c| points[i][c].constant() - origin[c].constant()).collect())
                .collect();
            let b: Vec<LogLinear> = simplex[1..].iter().map(|&i| &points[i][l] - &origin[l]).collect();
            let g = linalg::solve(&a, &b).expect("pivot rows are independent");
            let predicted = |p: &Point| -> LogLinear {
                let mut acc = origin[l].clone();
                for (t, &c) in chosen.iter().enumerate() {
                    acc += g[t].scale(&(p[c].constant() - origin[c].constant()));
                }
                acc
            };
            match points.iter().position(|p| predicted(p) != p[l]) {
                Some(w) => {
                    simplex.push(w);
                    for (_, coeffs) in relations.iter_mut() {
                        coeffs.push(LogLinear::zero());
                    }
                    chosen.push(l);
                }
                None => relations.push((l, g)),
            }
            relations.sort_by_key(|(j, _)| *j);
        }

        Ok(Frame { origin, chosen, relations, simplex, lift })
    }

    pub fn dim(&self) -> usize {
        self.chosen.len()
    }

    pub fn project(&self, p: &[LogLinear]) -> Vec<LogLinear> {
        self.chosen.iter().map(|&c| p[c].clone()).collect()
    }

    fn relation_value(&self, coeffs: &[LogLinear], j: usize, y: &[LogLinear]) -> Result<LogLinear> {
        let mut acc = self.origin[j].clone();
        for (t, &c) in self.chosen.iter().enumerate() {
            let delta = &y[t] - &self.origin[c];
            if !coeffs[t].is_zero() && !delta.is_zero() {
                acc += coeffs[t].try_mul(&delta)?;
            }
        }
        Ok(acc)
    }

    /// Whether `p` lies in the affine span.
    pub fn contains(&self, p: &[LogLinear]) -> Result<bool> {
        if p.len() != self.origin.len() {
            return Err(Error::DimensionMismatch { expected: self.origin.len(), found: p.len() });
        }
        let y = self.project(p);
        for (j, coeffs) in &self.relations {
            if self.relation_value(coeffs, *j, &y)? != p[*j] {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// The point of the span with chosen coordinates `y`.
    pub fn unproject(&self, y: &[LogLinear]) -> Result<Point> {
        let mut out = self.origin.clone();
        for (t, &c) in self.chosen.iter().enumerate() {
            out[c] = y[t].clone();
        }
        for (j, coeffs) in &self.relations {
            out[*j] = self.relation_value(coeffs, *j, y)?;
        }
        Ok(out)
    }
}
