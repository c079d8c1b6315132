//! Concave piecewise-affine roofs: upper envelopes of lifted point sets.

use std::cmp::Ordering;
use std::collections::HashSet;

use num_traits::{Signed, Zero};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::exactnum::{factorial, parse_rational, LogLinear, Rational};
use crate::geom::linalg::{det_rational, solve};
use crate::geom::{as_rational_point, convex_hull, rational_point, Face, LatticeVector, LiftedPoint, Polytope};

/// `x -> constant + gradient . x`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AffineFunction {
    pub gradient: Vec<LogLinear>,
    pub constant: LogLinear,
}

impl AffineFunction {
    pub fn eval(&self, x: &[Rational]) -> LogLinear {
        let mut acc = self.constant.clone();
        for (g, xi) in self.gradient.iter().zip(x) {
            acc += g.scale(xi);
        }
        acc
    }
}

/// A maximal region on which the roof is affine.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cell {
    /// Roof points above the cell's vertices.
    pub vertices: Vec<LiftedPoint>,
    pub function: AffineFunction,
    simplices: Vec<Vec<usize>>,
}

impl Cell {
    /// Triangulation of the cell by indices into `vertices`.
    pub fn simplices(&self) -> &[Vec<usize>] {
        &self.simplices
    }
}

/// The upper envelope of finitely many lifted points over the convex hull
/// of their bases.
#[derive(Debug, Clone)]
pub struct Roof {
    base_dim: usize,
    generators: Vec<LiftedPoint>,
    domain: Polytope,
    cells: Vec<Cell>,
}

impl Roof {
    pub fn new(generators: Vec<LiftedPoint>) -> Result<Roof> {
        let first = generators.first().ok_or(Error::Empty("roof generators"))?;
        let n = first.base.len();
        for g in &generators {
            if g.base.len() != n {
                return Err(Error::DimensionMismatch { expected: n, found: g.base.len() });
            }
        }
        let bases: Vec<_> = generators.iter().map(|g| rational_point(&g.base)).collect();
        let domain = convex_hull(&bases)?;
        let lifted = convex_hull(&generators.iter().map(LiftedPoint::to_point).collect::<Vec<_>>())?;

        let frame = lifted.frame();
        let cells = if !frame.chosen.contains(&n) {
            // flat: the lift is an affine function of the chosen base columns
            let (_, coeffs) = frame.relations.iter().find(|(j, _)| *j == n).expect("lift column has a relation");
            let mut gradient = vec![LogLinear::zero(); n];
            let mut constant = frame.origin[n].clone();
            for (t, &c) in frame.chosen.iter().enumerate() {
                gradient[c] = coeffs[t].clone();
                constant -= coeffs[t].try_mul(&frame.origin[c])?;
            }
            let function = AffineFunction { gradient, constant };
            let vertices = domain
                .vertices()
                .iter()
                .map(|v| {
                    let base = as_rational_point(v).expect("rational domain");
                    let lift = function.eval(&base);
                    LiftedPoint { base, lift }
                })
                .collect();
            vec![Cell { vertices, function, simplices: domain.triangulation() }]
        } else {
            let mut cells = Vec::new();
            for f in lifted.facets() {
                let Some(up) = f.normal[n].as_rational() else {
                    return Err(Error::NonLinearProduct);
                };
                if !up.is_positive() {
                    continue;
                }
                let gradient = f.normal[..n].iter().map(|a| -a.div_rational(up)).collect();
                let constant = f.offset.div_rational(up);
                let face = f.polytope();
                let vertices = face
                    .vertices()
                    .iter()
                    .map(|p| LiftedPoint::from_point(p).expect("rational base"))
                    .collect();
                cells.push(Cell {
                    vertices,
                    function: AffineFunction { gradient, constant },
                    simplices: face.triangulation(),
                });
            }
            cells
        };
        Ok(Roof { base_dim: n, generators, domain, cells })
    }

    /// Roof of the points `(a_i, tau_i)`.
    pub fn from_weight(exponents: &[LatticeVector], tau: &[LogLinear]) -> Result<Roof> {
        if exponents.len() != tau.len() {
            return Err(Error::LengthMismatch { left: exponents.len(), right: tau.len() });
        }
        let gens = exponents
            .iter()
            .zip(tau)
            .map(|(a, t)| LiftedPoint {
                base: a.iter().map(|x| Rational::from_integer(x.clone())).collect(),
                lift: t.clone(),
            })
            .collect();
        Roof::new(gens)
    }

    /// The function equal to `value` on the single point `base`.
    pub fn point(base: Vec<Rational>, value: LogLinear) -> Roof {
        Roof::new(vec![LiftedPoint { base, lift: value }]).expect("one point")
    }

    pub fn base_dim(&self) -> usize {
        self.base_dim
    }

    pub fn generators(&self) -> &[LiftedPoint] {
        &self.generators
    }

    pub fn domain(&self) -> &Polytope {
        &self.domain
    }

    pub fn cells(&self) -> &[Cell] {
        &self.cells
    }

    /// Points of the graph above the vertices of the subdivision, sorted.
    pub fn vertices(&self) -> Vec<LiftedPoint> {
        let mut seen = HashSet::new();
        let mut out = Vec::new();
        for c in &self.cells {
            for v in &c.vertices {
                if seen.insert(v.clone()) {
                    out.push(v.clone());
                }
            }
        }
        out.sort_by(|a, b| crate::geom::lex_cmp(&a.to_point(), &b.to_point()));
        out
    }

    pub fn eval(&self, x: &[Rational]) -> Result<LogLinear> {
        if x.len() != self.base_dim {
            return Err(Error::DimensionMismatch { expected: self.base_dim, found: x.len() });
        }
        if !self.domain.contains(&rational_point(x))? {
            return Err(Error::OutsideDomain);
        }
        Ok(self.eval_unchecked(x))
    }

    fn eval_unchecked(&self, x: &[Rational]) -> LogLinear {
        self.cells
            .iter()
            .map(|c| c.function.eval(x))
            .min_by(|a, b| a.cmp_value(b))
            .expect("a roof has a cell")
    }

    /// Smallest value, attained at a subdivision vertex.
    pub fn min_value(&self) -> LogLinear {
        self.vertices().into_iter().map(|v| v.lift).min_by(|a, b| a.cmp_value(b)).expect("nonempty")
    }

    pub fn max_value(&self) -> LogLinear {
        self.vertices().into_iter().map(|v| v.lift).max_by(|a, b| a.cmp_value(b)).expect("nonempty")
    }

    /// Lebesgue integral over the domain; zero when the domain is not
    /// full-dimensional.
    pub fn integral(&self) -> LogLinear {
        if !self.domain.is_full_dimensional() {
            return LogLinear::zero();
        }
        let n = self.base_dim;
        let weight = factorial(n) * Rational::from_integer((n + 1).into());
        let mut total = LogLinear::zero();
        for c in &self.cells {
            for s in &c.simplices {
                let v0 = &c.vertices[s[0]].base;
                let rows: Vec<Vec<Rational>> =
                    s[1..].iter().map(|&i| c.vertices[i].base.iter().zip(v0).map(|(a, b)| a - b).collect()).collect();
                let vol = det_rational(rows).abs();
                let sum: LogLinear = s.iter().map(|&i| &c.vertices[i].lift).sum();
                total += sum.scale(&vol);
            }
        }
        total.div_rational(&weight)
    }

    /// `(f ⊞ g)(x) = max { f(y) + g(z) : y + z = x }`.
    pub fn sup_convolution(&self, other: &Roof) -> Result<Roof> {
        if self.base_dim != other.base_dim {
            return Err(Error::DimensionMismatch { expected: self.base_dim, found: other.base_dim });
        }
        let (a, b) = (self.vertices(), other.vertices());
        let mut gens = Vec::with_capacity(a.len() * b.len());
        for p in &a {
            for q in &b {
                gens.push(LiftedPoint {
                    base: p.base.iter().zip(&q.base).map(|(x, y)| x + y).collect(),
                    lift: &p.lift + &q.lift,
                });
            }
        }
        Roof::new(gens)
    }

    /// Restriction to a face of the domain, given by vertex indices.
    pub fn restrict_to_face(&self, face: &Face) -> Result<Roof> {
        let lattice = self.domain.face_lattice();
        let Some(found) = lattice.find(&face.vertices) else {
            return Err(Error::NotAFace);
        };
        if found.dim != face.dim {
            return Err(Error::NotAFace);
        }
        let sub = self.domain.sub_polytope(&found.vertices)?;
        let mut gens = Vec::new();
        for g in &self.generators {
            if sub.contains(&rational_point(&g.base))? {
                gens.push(g.clone());
            }
        }
        Roof::new(gens)
    }

    /// `Conv(graph(f), domain x {mu})`.
    pub fn lifted_polytope(&self, mu: &LogLinear) -> Result<Polytope> {
        if mu.cmp_value(&self.min_value()) == Ordering::Greater {
            return Err(Error::FloorTooHigh);
        }
        let mut pts: Vec<_> = self.vertices().iter().map(LiftedPoint::to_point).collect();
        for v in self.domain.vertices() {
            let mut p = v.clone();
            p.push(mu.clone());
            pts.push(p);
        }
        convex_hull(&pts)
    }

    /// `x -> f(x) + g(x)` on a common domain of dimension at most 3.
    pub fn pointwise_sum(&self, other: &Roof) -> Result<Roof> {
        if self.base_dim != other.base_dim {
            return Err(Error::DimensionMismatch { expected: self.base_dim, found: other.base_dim });
        }
        if self.domain.vertices() != other.domain.vertices() {
            return Err(Error::InvalidArgument("roofs have different domains".into()));
        }
        let frame = self.domain.frame();
        let k = frame.dim();
        if k > 3 {
            return Err(Error::UnsupportedDimension(k));
        }
        let cells_h = |r: &Roof| -> Result<Vec<Vec<(Vec<Rational>, Rational)>>> {
            r.cells.iter().map(|c| cell_halfspaces(c, frame)).collect()
        };
        let (hf, hg) = (cells_h(self)?, cells_h(other)?);
        let mut seen = HashSet::new();
        let mut gens = Vec::new();
        for a in &hf {
            for b in &hg {
                let all: Vec<&(Vec<Rational>, Rational)> = a.iter().chain(b.iter()).collect();
                for y in polytope_vertices(&all, k) {
                    let raw = frame.unproject(&rational_point(&y))?;
                    let x = as_rational_point(&raw).expect("rational domain");
                    if seen.insert(x.clone()) {
                        let lift = self.eval_unchecked(&x) + other.eval_unchecked(&x);
                        gens.push(LiftedPoint { base: x, lift });
                    }
                }
            }
        }
        Roof::new(gens)
    }

    pub fn to_json(&self) -> Value {
        let q = |x: &Rational| Value::String(x.to_string());
        let base = |b: &[Rational]| Value::Array(b.iter().map(q).collect());
        json!({
            "dim": self.base_dim,
            "domain": self.domain.vertices().iter()
                .map(|v| base(&as_rational_point(v).expect("rational domain")))
                .collect::<Vec<_>>(),
            "generators": self.generators.iter()
                .map(|g| json!({"base": base(&g.base), "lift": g.lift.to_string()}))
                .collect::<Vec<_>>(),
            "cells": self.cells.iter().map(|c| json!({
                "vertices": c.vertices.iter().map(|v| base(&v.base)).collect::<Vec<_>>(),
                "values": c.vertices.iter().map(|v| v.lift.to_string()).collect::<Vec<_>>(),
                "gradient": c.function.gradient.iter().map(|g| g.to_string()).collect::<Vec<_>>(),
                "constant": c.function.constant.to_string(),
            })).collect::<Vec<_>>(),
        })
    }

    /// Rebuilds a roof from the `generators` of a document made by `to_json`.
    pub fn from_json(v: &Value) -> Result<Roof> {
        let gens = v
            .get("generators")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::Parse("roof document lacks `generators`".into()))?;
        let mut out = Vec::with_capacity(gens.len());
        for g in gens {
            let base = g
                .get("base")
                .and_then(Value::as_array)
                .ok_or_else(|| Error::Parse("generator lacks `base`".into()))?
                .iter()
                .map(|x| match x {
                    Value::String(s) => parse_rational(s),
                    Value::Number(n) => parse_rational(&n.to_string()),
                    _ => Err(Error::Parse("bad base coordinate".into())),
                })
                .collect::<Result<Vec<_>>>()?;
            let lift = LogLinear::from_json(g.get("lift").ok_or_else(|| Error::Parse("generator lacks `lift`".into()))?)?;
            out.push(LiftedPoint { base, lift });
        }
        Roof::new(out)
    }
}

/// Halfspaces `n . y <= b` of a cell, in the domain frame's coordinates.
fn cell_halfspaces(cell: &Cell, frame: &crate::geom::frame::Frame) -> Result<Vec<(Vec<Rational>, Rational)>> {
    let pts: Vec<_> = cell.vertices.iter().map(|v| frame.project(&rational_point(&v.base))).collect();
    let poly = convex_hull(&pts)?;
    let rat = |x: &LogLinear| x.as_rational().cloned().expect("rational cell");
    Ok(poly.facets().iter().map(|f| (f.normal.iter().map(rat).collect(), rat(&f.offset))).collect())
}

/// Vertices of `{y in Q^k : n . y <= b}` for a bounded system, by solving
/// every `k`-subset of constraints.
fn polytope_vertices(halfspaces: &[&(Vec<Rational>, Rational)], k: usize) -> Vec<Vec<Rational>> {
    if k == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    let m = halfspaces.len();
    let mut idx: Vec<usize> = (0..k).collect();
    if m < k {
        return out;
    }
    loop {
        let a: Vec<Vec<Rational>> = idx.iter().map(|&i| halfspaces[i].0.clone()).collect();
        let b: Vec<LogLinear> = idx.iter().map(|&i| LogLinear::from_rational(halfspaces[i].1.clone())).collect();
        if let Some(y) = solve(&a, &b) {
            let y: Vec<Rational> = y.into_iter().map(|v| v.as_rational().cloned().expect("rational")).collect();
            let inside = halfspaces.iter().all(|(nrm, off)| {
                let lhs: Rational = nrm.iter().zip(&y).map(|(p, q)| p * q).fold(Rational::zero(), |s, t| s + t);
                lhs <= *off
            });
            if inside && !out.contains(&y) {
                out.push(y);
            }
        }
        // next combination
        let mut i = k;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if idx[i] != i + m - k {
                break;
            }
            if i == 0 && idx[0] == m - k {
                return out;
            }
        }
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}
