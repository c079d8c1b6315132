//! Projective toric varieties `X_{A,alpha}` given by monomial data over Q.

mod constructions;
mod hilbert;

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;

pub use constructions::{
    invert, join, monomial_image, power, reparametrize, segre, torus_product, translate, veronese,
};
pub use hilbert::{
    arithmetic_hilbert_norm, compositions_count, hilbert_asymptotic_gap, hilbert_weight, DEFAULT_CAP,
};

use crate::error::{Error, Result};
use crate::exactnum::{factorial, log_abs, relevant_places, LogLinear, Place, Rational};
use crate::geom::{convex_hull, lattice_normalize, lattice_point, Face, LatticeVector};
use crate::roof::Roof;

/// Exponents `a_0, ..., a_N` in `Z^n` with nonzero rational coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonomialPair {
    exponents: Vec<LatticeVector>,
    coefficients: Vec<Rational>,
}

impl MonomialPair {
    pub fn new(exponents: Vec<LatticeVector>, coefficients: Vec<Rational>) -> Result<Self> {
        if exponents.len() != coefficients.len() {
            return Err(Error::LengthMismatch { left: exponents.len(), right: coefficients.len() });
        }
        let n = exponents.first().ok_or(Error::Empty("monomial pair"))?.len();
        for a in &exponents {
            if a.len() != n {
                return Err(Error::DimensionMismatch { expected: n, found: a.len() });
            }
        }
        if coefficients.iter().any(Zero::is_zero) {
            return Err(Error::ZeroValue);
        }
        Ok(MonomialPair { exponents, coefficients })
    }

    /// Drops the monomials with zero coefficient, returning the pair and the
    /// original index of every kept monomial.
    pub fn dropping_zeros(exponents: Vec<LatticeVector>, coefficients: Vec<Rational>) -> Result<(Self, Vec<usize>)> {
        if exponents.len() != coefficients.len() {
            return Err(Error::LengthMismatch { left: exponents.len(), right: coefficients.len() });
        }
        let mut keep = Vec::new();
        let (mut a, mut c) = (Vec::new(), Vec::new());
        for (i, (e, q)) in exponents.into_iter().zip(coefficients).enumerate() {
            if !q.is_zero() {
                keep.push(i);
                a.push(e);
                c.push(q);
            }
        }
        Ok((MonomialPair::new(a, c)?, keep))
    }

    /// Convenience constructor from small integers and rational strings.
    pub fn from_strs(exponents: &[&[i64]], coefficients: &[&str]) -> Result<Self> {
        let a = exponents.iter().map(|e| e.iter().map(|&x| BigInt::from(x)).collect()).collect();
        let c = coefficients
            .iter()
            .map(|s| crate::exactnum::parse_rational(s))
            .collect::<Result<Vec<_>>>()?;
        MonomialPair::new(a, c)
    }

    pub fn exponents(&self) -> &[LatticeVector] {
        &self.exponents
    }

    pub fn coefficients(&self) -> &[Rational] {
        &self.coefficients
    }

    /// The `n` of `Z^n`.
    pub fn ambient_dim(&self) -> usize {
        self.exponents[0].len()
    }

    /// Number of monomials, `N + 1`.
    pub fn len(&self) -> usize {
        self.exponents.len()
    }

    pub fn is_empty(&self) -> bool {
        self.exponents.is_empty()
    }

    /// Places where some coefficient is not a unit, preceded by infinity.
    pub fn places(&self) -> Result<Vec<Place>> {
        relevant_places(&self.coefficients)
    }

    /// Exponents expressed in a basis of their difference lattice.
    pub fn normalized_exponents(&self) -> Vec<LatticeVector> {
        lattice_normalize(&self.exponents).expect("validated pair").coords
    }

    /// Dimension of the variety, `dim Q_A`.
    pub fn dim(&self) -> usize {
        lattice_normalize(&self.exponents).expect("validated pair").rank
    }
}

/// A height or multiheight with its place-by-place decomposition:
/// `value = scale * sum(per_place)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HeightReport {
    pub value: LogLinear,
    pub per_place: BTreeMap<Place, LogLinear>,
    pub degree: BigInt,
    pub dim: usize,
    pub scale: Rational,
}

impl fmt::Display for HeightReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

/// `(log|alpha_0|_v, ..., log|alpha_N|_v)`.
pub fn weight_vector(pair: &MonomialPair, v: Place) -> Result<Vec<LogLinear>> {
    pair.coefficients.iter().map(|q| log_abs(q, v)).collect()
}

fn volume_of_lattice_points(points: &[LatticeVector]) -> Result<Rational> {
    let poly = convex_hull(&points.iter().map(|p| lattice_point(p)).collect::<Vec<_>>())?;
    Ok(poly.volume().as_rational().cloned().expect("rational polytope"))
}

/// `r! * Vol_r(Q_B)` for the lattice-normalized exponents `B`.
pub fn degree(pair: &MonomialPair) -> BigInt {
    let b = pair.normalized_exponents();
    let r = b[0].len();
    let vol = volume_of_lattice_points(&b).expect("validated pair") * factorial(r);
    debug_assert!(vol.is_integer());
    vol.to_integer()
}

/// Normalized height `(r+1)! * sum_v integral(roof_v)` over the normalized exponents.
pub fn normalized_height(pair: &MonomialPair) -> Result<HeightReport> {
    let b = pair.normalized_exponents();
    let r = b[0].len();
    let mut per_place = BTreeMap::new();
    for v in pair.places()? {
        let tau = weight_vector(pair, v)?;
        per_place.insert(v, Roof::from_weight(&b, &tau)?.integral());
    }
    let scale = factorial(r + 1);
    let value = per_place.values().sum::<LogLinear>().scale(&scale);
    Ok(HeightReport { value, per_place, degree: degree(pair), dim: r, scale })
}

fn require_full_lattice(exponents: &[LatticeVector]) -> Result<usize> {
    let n = exponents.first().ok_or(Error::Empty("exponent list"))?.len();
    if lattice_normalize(exponents)?.is_full(n) {
        Ok(n)
    } else {
        Err(Error::NonFullLattice(n))
    }
}

/// Chow weight `(n+1)! * integral(roof)`; requires `L_A = Z^n`.
pub fn chow_weight(exponents: &[LatticeVector], tau: &[LogLinear]) -> Result<LogLinear> {
    let n = require_full_lattice(exponents)?;
    Ok(Roof::from_weight(exponents, tau)?.integral().scale(&factorial(n + 1)))
}

/// `(r+1)! * sum_v Vol_{r+1}(Q_{B, tau_v})`, which equals the height of
/// the pair plus the height of its inverse.
pub fn symmetric_height_sum(pair: &MonomialPair) -> Result<LogLinear> {
    let b = pair.normalized_exponents();
    let r = b[0].len();
    let mut total = LogLinear::zero();
    for v in pair.places()? {
        let tau = weight_vector(pair, v)?;
        let pts: Vec<_> = b
            .iter()
            .zip(&tau)
            .map(|(e, t)| {
                let mut p = lattice_point(e);
                p.push(t.clone());
                p
            })
            .collect();
        total += convex_hull(&pts)?.volume();
    }
    Ok(total.scale(&factorial(r + 1)))
}

/// Height over a function field: `(n+1)! * Vol_{n+1}(Conv((a_i, tau_i)))`
/// for integer weights; requires `L_A = Z^n`.
pub fn function_field_height(exponents: &[LatticeVector], tau: &[BigInt]) -> Result<Rational> {
    let n = require_full_lattice(exponents)?;
    if exponents.len() != tau.len() {
        return Err(Error::LengthMismatch { left: exponents.len(), right: tau.len() });
    }
    let pts: Vec<_> = exponents
        .iter()
        .zip(tau)
        .map(|(e, t)| {
            let mut p = e.clone();
            p.push(t.clone());
            lattice_point(&p)
        })
        .collect();
    let vol = convex_hull(&pts)?.volume();
    Ok(vol.as_rational().cloned().expect("rational polytope") * factorial(n + 1))
}

/// One torus orbit: a face of `Q_A` and the monomials lying on it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Orbit {
    pub face: Face,
    pub vertices: Vec<LatticeVector>,
    pub pair: MonomialPair,
}

/// One orbit per face of `Q_A`, by increasing dimension.
pub fn orbit_decomposition(pair: &MonomialPair) -> Result<Vec<Orbit>> {
    let pts: Vec<_> = pair.exponents.iter().map(|a| lattice_point(a)).collect();
    let q = convex_hull(&pts)?;
    let lattice = q.face_lattice();
    let mut out = Vec::new();
    for face in lattice.iter() {
        let sub = q.sub_polytope(&face.vertices)?;
        let (mut a, mut c) = (Vec::new(), Vec::new());
        for (p, (e, alpha)) in pts.iter().zip(pair.exponents.iter().zip(&pair.coefficients)) {
            if sub.contains(p)? {
                a.push(e.clone());
                c.push(alpha.clone());
            }
        }
        let vertices = face
            .vertices
            .iter()
            .map(|&i| {
                q.vertices()[i]
                    .iter()
                    .map(|x| x.as_rational().expect("lattice point").to_integer())
                    .collect()
            })
            .collect();
        out.push(Orbit { face: face.clone(), vertices, pair: MonomialPair::new(a, c)? });
    }
    Ok(out)
}

/// Weil height `sum_v max_i log|alpha_i|_v` of the point `(alpha_0 : ... : alpha_N)`.
pub fn weil_height(coefficients: &[Rational]) -> Result<LogLinear> {
    let mut total = LogLinear::zero();
    for v in relevant_places(coefficients)? {
        let mut best: Option<LogLinear> = None;
        for q in coefficients {
            let x = log_abs(q, v)?;
            best = Some(match best {
                None => x,
                Some(b) => LogLinear::max_value(&b, &x),
            });
        }
        total += best.expect("nonempty");
    }
    Ok(total)
}
