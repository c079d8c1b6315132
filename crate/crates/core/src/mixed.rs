//! Mixed volumes, mixed integrals and multiheights of the torus.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::exactnum::{LogLinear, Rational};
use crate::geom::{convex_hull, lattice_normalize, lattice_point, LatticeVector, Polytope};
use crate::roof::Roof;
use crate::toric::{weight_vector, HeightReport, MonomialPair};

/// Combines every nonempty subset with `join`, building each subset's value
/// from a smaller one, and returns them indexed by bitmask.
fn subset_sums<T: Clone>(items: &[T], join: impl Fn(&T, &T) -> Result<T>) -> Result<Vec<Option<T>>> {
    let m = items.len();
    let mut out: Vec<Option<T>> = vec![None; 1 << m];
    for mask in 1usize..(1 << m) {
        let low = mask.trailing_zeros() as usize;
        let rest = mask & (mask - 1);
        out[mask] = Some(match &out[rest] {
            None => items[low].clone(),
            Some(acc) => join(acc, &items[low])?,
        });
    }
    Ok(out)
}

fn sign(exponent: usize) -> Rational {
    Rational::from_integer(if exponent % 2 == 0 { 1 } else { -1 }.into())
}

/// `MV(Q_1, ..., Q_n) = sum_S (-1)^{n-|S|} Vol_n(sum_{i in S} Q_i)` for `n`
/// polytopes in `R^n`; the empty family has mixed volume 1.
pub fn mixed_volume(polytopes: &[Polytope]) -> Result<LogLinear> {
    let n = polytopes.len();
    if n == 0 {
        return Ok(LogLinear::from_integer(1));
    }
    for p in polytopes {
        if p.ambient_dim() != n {
            return Err(Error::DimensionMismatch { expected: n, found: p.ambient_dim() });
        }
    }
    let sums = subset_sums(polytopes, |a, b| a.minkowski_sum(b))?;
    let mut total = LogLinear::zero();
    for (mask, p) in sums.iter().enumerate().skip(1) {
        let size = mask.count_ones() as usize;
        total += p.as_ref().expect("filled").volume().scale(&sign(n - size));
    }
    Ok(total)
}

fn check_roof_family(roofs: &[Roof]) -> Result<usize> {
    let first = roofs.first().ok_or(Error::Empty("roof family"))?;
    let n = first.base_dim();
    for r in roofs {
        if r.base_dim() != n {
            return Err(Error::DimensionMismatch { expected: n, found: r.base_dim() });
        }
    }
    if roofs.len() != n + 1 {
        return Err(Error::LengthMismatch { left: roofs.len(), right: n + 1 });
    }
    Ok(n)
}

/// `MI(f_0, ..., f_n) = sum_S (-1)^{n+1-|S|} integral(sup-convolution of f_i, i in S)`.
pub fn mixed_integral(roofs: &[Roof]) -> Result<LogLinear> {
    let n = check_roof_family(roofs)?;
    let sums = subset_sums(roofs, |a, b| a.sup_convolution(b))?;
    let mut total = LogLinear::zero();
    for (mask, f) in sums.iter().enumerate().skip(1) {
        let size = mask.count_ones() as usize;
        total += f.as_ref().expect("filled").integral().scale(&sign(n + 1 - size));
    }
    Ok(total)
}

/// The same quantity through lifted polytopes over floors `mu_i <= min(f_i, 0)`:
/// `MV_{n+1}(Q_{f_i, mu_i}) + sum_i mu_i MV_n(domains except i)`.
pub fn mixed_integral_via_mv(roofs: &[Roof], floors: &[LogLinear]) -> Result<LogLinear> {
    let n = check_roof_family(roofs)?;
    if floors.len() != roofs.len() {
        return Err(Error::LengthMismatch { left: floors.len(), right: roofs.len() });
    }
    let mut lifted = Vec::with_capacity(n + 1);
    for (f, mu) in roofs.iter().zip(floors) {
        if mu.is_positive() {
            return Err(Error::FloorTooHigh);
        }
        lifted.push(f.lifted_polytope(mu)?);
    }
    let mut total = mixed_volume(&lifted)?;
    for (i, mu) in floors.iter().enumerate() {
        let others: Vec<Polytope> =
            roofs.iter().enumerate().filter(|(j, _)| *j != i).map(|(_, f)| f.domain().clone()).collect();
        total += mu.try_mul(&mixed_volume(&others)?)?;
    }
    Ok(total)
}

/// Multi-Chow weight of `(A_i, tau_i)`, `i = 0..n`, as the mixed integral of
/// their roofs; every `L_{A_i}` must be `Z^n`.
pub fn multi_chow_weight(data: &[(Vec<LatticeVector>, Vec<LogLinear>)]) -> Result<LogLinear> {
    let mut roofs = Vec::with_capacity(data.len());
    for (a, tau) in data {
        let n = a.first().ok_or(Error::Empty("exponent list"))?.len();
        if !lattice_normalize(a)?.is_full(n) {
            return Err(Error::NonFullLattice(n));
        }
        roofs.push(Roof::from_weight(a, tau)?);
    }
    mixed_integral(&roofs)
}

/// `n + 1` monomial pairs parametrizing the same torus.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EmbeddingFamily {
    members: Vec<MonomialPair>,
    exponents: Vec<Vec<LatticeVector>>,
    dim: usize,
}

impl EmbeddingFamily {
    /// Accepts the members when every exponent lattice is `Z^n`, or when all
    /// lattices coincide, in which case exponents are rewritten in a common
    /// basis. The member count must be one more than the resulting dimension.
    pub fn new(members: Vec<MonomialPair>) -> Result<Self> {
        let n = members.first().ok_or(Error::Empty("embedding family"))?.ambient_dim();
        let mut norms = Vec::with_capacity(members.len());
        for m in &members {
            if m.ambient_dim() != n {
                return Err(Error::DimensionMismatch { expected: n, found: m.ambient_dim() });
            }
            norms.push(lattice_normalize(m.exponents())?);
        }
        let (exponents, dim) = if norms.iter().all(|l| l.is_full(n)) {
            (members.iter().map(|m| m.exponents().to_vec()).collect(), n)
        } else if norms.iter().all(|l| l.basis == norms[0].basis) {
            (norms.iter().map(|l| l.coords.clone()).collect(), norms[0].rank)
        } else {
            return Err(Error::NonFullLattice(n));
        };
        if members.len() != dim + 1 {
            return Err(Error::LengthMismatch { left: members.len(), right: dim + 1 });
        }
        Ok(EmbeddingFamily { members, exponents, dim })
    }

    pub fn members(&self) -> &[MonomialPair] {
        &self.members
    }

    pub fn dim(&self) -> usize {
        self.dim
    }
}

/// Multiheight of the torus: the sum over places of the mixed integrals of
/// the members' roofs. `degree` is the mixed volume of the last `n` exponent
/// polytopes.
pub fn multiheight(family: &EmbeddingFamily) -> Result<HeightReport> {
    let mut places = BTreeSet::new();
    for m in &family.members {
        places.extend(m.places()?);
    }
    let mut per_place = BTreeMap::new();
    for v in places {
        let mut roofs = Vec::with_capacity(family.members.len());
        for (m, b) in family.members.iter().zip(&family.exponents) {
            roofs.push(Roof::from_weight(b, &weight_vector(m, v)?)?);
        }
        per_place.insert(v, mixed_integral(&roofs)?);
    }
    let value = per_place.values().sum();
    let polys = family.exponents[1..]
        .iter()
        .map(|b| convex_hull(&b.iter().map(|e| lattice_point(e)).collect::<Vec<_>>()))
        .collect::<Result<Vec<_>>>()?;
    let mv = mixed_volume(&polys)?;
    let degree: BigInt = mv.as_rational().expect("rational polytopes").to_integer();
    Ok(HeightReport { value, per_place, degree, dim: family.dim, scale: Rational::from_integer(1.into()) })
}

/// Smallest admissible floor shared by a family: `min(0, min_i min f_i)`.
pub fn common_floor(roofs: &[Roof]) -> LogLinear {
    roofs
        .iter()
        .map(Roof::min_value)
        .fold(LogLinear::zero(), |acc, m| if m.cmp_value(&acc) == Ordering::Less { m } else { acc })
}
