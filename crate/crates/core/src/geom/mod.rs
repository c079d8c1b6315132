//! Exact polyhedral geometry over Q^n, optionally with one log-linear
//! coordinate.

pub(crate) mod frame;
mod hull;
mod lattice;
pub mod linalg;

use std::cmp::Ordering;

use num_bigint::BigInt;

pub use hull::{convex_hull, Face, FaceLattice, Facet, Polytope};
pub use lattice::{hermite_normal_form, lattice_coordinates, lattice_normalize, LatticeNormalization};

use crate::exactnum::{LogLinear, Rational};

/// Largest supported dimension of a hull's rational part.
pub const MAX_DIM: usize = 6;

/// A point of `Q^n`, or of `Q^n x R` with a single log-linear coordinate.
pub type Point = Vec<LogLinear>;

/// An exponent vector.
pub type LatticeVector = Vec<BigInt>;

/// A rational base point carrying a log-linear height.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LiftedPoint {
    pub base: Vec<Rational>,
    pub lift: LogLinear,
}

impl LiftedPoint {
    pub fn new(base: Vec<Rational>, lift: LogLinear) -> Self {
        LiftedPoint { base, lift }
    }

    /// The point `(base, lift)` of `R^{n+1}`.
    pub fn to_point(&self) -> Point {
        let mut p = rational_point(&self.base);
        p.push(self.lift.clone());
        p
    }

    /// Inverse of `to_point`; `None` unless all but the last coordinate are rational.
    pub fn from_point(p: &[LogLinear]) -> Option<Self> {
        let (lift, base) = p.split_last()?;
        let base = base.iter().map(|x| x.as_rational().cloned()).collect::<Option<Vec<_>>>()?;
        Some(LiftedPoint { base, lift: lift.clone() })
    }
}

pub fn rational_point(v: &[Rational]) -> Point {
    v.iter().cloned().map(LogLinear::from_rational).collect()
}

pub fn lattice_point(v: &[BigInt]) -> Point {
    v.iter().map(|x| LogLinear::from_rational(Rational::from_integer(x.clone()))).collect()
}

/// Rational coordinates of a point, if it has no irrational entry.
pub fn as_rational_point(p: &[LogLinear]) -> Option<Vec<Rational>> {
    p.iter().map(|x| x.as_rational().cloned()).collect()
}

/// Lexicographic order by value, with certified comparisons.
pub fn lex_cmp(a: &[LogLinear], b: &[LogLinear]) -> Ordering {
    for (x, y) in a.iter().zip(b) {
        match x.cmp_value(y) {
            Ordering::Equal => continue,
            other => return other,
        }
    }
    a.len().cmp(&b.len())
}
