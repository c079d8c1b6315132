//! New monomial pairs from old: inverse, powers, translates, joins, Segre
//! and Veronese embeddings, and monomial images.

use num_bigint::BigInt;
use num_traits::{One, Pow, Zero};

use super::hilbert::{check_cap, for_each_composition};
use super::MonomialPair;
use crate::error::{Error, Result};
use crate::exactnum::Rational;
use crate::geom::LatticeVector;

/// Coefficients replaced by their inverses.
pub fn invert(pair: &MonomialPair) -> MonomialPair {
    let c = pair.coefficients.iter().map(Rational::recip).collect();
    MonomialPair { exponents: pair.exponents.clone(), coefficients: c }
}

/// Coefficients raised to the power `k >= 1`.
pub fn power(pair: &MonomialPair, k: u32) -> Result<MonomialPair> {
    if k == 0 {
        return Err(Error::InvalidArgument("power must be positive".into()));
    }
    let c = pair.coefficients.iter().map(|q| Pow::pow(q, k)).collect();
    Ok(MonomialPair { exponents: pair.exponents.clone(), coefficients: c })
}

/// `(c + A, gamma * alpha)`, which defines the same variety.
pub fn translate(pair: &MonomialPair, c: &[BigInt], gamma: &Rational) -> Result<MonomialPair> {
    if gamma.is_zero() {
        return Err(Error::ZeroValue);
    }
    if c.len() != pair.ambient_dim() {
        return Err(Error::DimensionMismatch { expected: pair.ambient_dim(), found: c.len() });
    }
    let a = pair.exponents.iter().map(|e| e.iter().zip(c).map(|(x, y)| x + y).collect()).collect();
    let coeffs = pair.coefficients.iter().map(|q| q * gamma).collect();
    MonomialPair::new(a, coeffs)
}

/// Join: exponents `(1, a_i, 0)` and `(0, 0, b_j)`.
pub fn join(p: &MonomialPair, q: &MonomialPair) -> MonomialPair {
    let (n, m) = (p.ambient_dim(), q.ambient_dim());
    let mut a = Vec::with_capacity(p.len() + q.len());
    for e in &p.exponents {
        let mut v = vec![BigInt::one()];
        v.extend(e.iter().cloned());
        v.extend(std::iter::repeat(BigInt::zero()).take(m));
        a.push(v);
    }
    for e in &q.exponents {
        let mut v = vec![BigInt::zero(); 1 + n];
        v.extend(e.iter().cloned());
        a.push(v);
    }
    let c = p.coefficients.iter().chain(&q.coefficients).cloned().collect();
    MonomialPair { exponents: a, coefficients: c }
}

/// Segre product: exponents `(a_i, b_j)`, coefficients `alpha_i beta_j`.
pub fn segre(p: &MonomialPair, q: &MonomialPair) -> MonomialPair {
    let mut a = Vec::with_capacity(p.len() * q.len());
    let mut c = Vec::with_capacity(p.len() * q.len());
    for (e, x) in p.exponents.iter().zip(&p.coefficients) {
        for (f, y) in q.exponents.iter().zip(&q.coefficients) {
            a.push(e.iter().chain(f).cloned().collect());
            c.push(x * y);
        }
    }
    MonomialPair { exponents: a, coefficients: c }
}

/// Product on a common torus: exponents `a_i + b_j`, coefficients
/// `alpha_i beta_j`.
pub fn torus_product(p: &MonomialPair, q: &MonomialPair) -> Result<MonomialPair> {
    if p.ambient_dim() != q.ambient_dim() {
        return Err(Error::DimensionMismatch { expected: p.ambient_dim(), found: q.ambient_dim() });
    }
    let mut a = Vec::with_capacity(p.len() * q.len());
    let mut c = Vec::with_capacity(p.len() * q.len());
    for (e, x) in p.exponents.iter().zip(&p.coefficients) {
        for (f, y) in q.exponents.iter().zip(&q.coefficients) {
            a.push(e.iter().zip(f).map(|(s, t)| s + t).collect());
            c.push(x * y);
        }
    }
    Ok(MonomialPair { exponents: a, coefficients: c })
}

fn image_of(pair: &MonomialPair, b: &[u64]) -> (LatticeVector, Rational) {
    let mut e = vec![BigInt::zero(); pair.ambient_dim()];
    let mut c = Rational::one();
    for ((&k, a), alpha) in b.iter().zip(&pair.exponents).zip(&pair.coefficients) {
        if k == 0 {
            continue;
        }
        for (x, y) in e.iter_mut().zip(a) {
            *x += y * k;
        }
        c *= Pow::pow(alpha, k as u32);
    }
    (e, c)
}

/// Degree-`d` Veronese: one monomial per `b` in `N^{N+1}_d`.
pub fn veronese(pair: &MonomialPair, d: u64, cap: u64) -> Result<MonomialPair> {
    if d == 0 {
        return Err(Error::InvalidArgument("Veronese degree must be positive".into()));
    }
    check_cap(pair.len(), d, cap)?;
    let (mut a, mut c) = (Vec::new(), Vec::new());
    for_each_composition(pair.len(), d, |b| {
        let (e, q) = image_of(pair, b);
        a.push(e);
        c.push(q);
    });
    Ok(MonomialPair { exponents: a, coefficients: c })
}

/// Image under the monomial map with exponents `b_j` (all of one total
/// degree) and coefficients `beta_j`: exponents `sum_i b_ji a_i`,
/// coefficients `beta_j prod_i alpha_i^{b_ji}`.
pub fn monomial_image(pair: &MonomialPair, b: &[Vec<u64>], beta: &[Rational]) -> Result<MonomialPair> {
    if b.is_empty() {
        return Err(Error::Empty("monomial map"));
    }
    if b.len() != beta.len() {
        return Err(Error::LengthMismatch { left: b.len(), right: beta.len() });
    }
    let deg: u64 = b[0].iter().sum();
    for row in b {
        if row.len() != pair.len() {
            return Err(Error::DimensionMismatch { expected: pair.len(), found: row.len() });
        }
        if row.iter().sum::<u64>() != deg {
            return Err(Error::InvalidArgument("monomial map is not homogeneous".into()));
        }
    }
    if beta.iter().any(Zero::is_zero) {
        return Err(Error::ZeroValue);
    }
    let (mut a, mut c) = (Vec::new(), Vec::new());
    for (row, bj) in b.iter().zip(beta) {
        let (e, q) = image_of(pair, row);
        a.push(e);
        c.push(q * bj);
    }
    Ok(MonomialPair { exponents: a, coefficients: c })
}

/// Exponents mapped by an integer matrix, `a -> L a` (rows of `L` given).
pub fn reparametrize(pair: &MonomialPair, l: &[LatticeVector]) -> Result<MonomialPair> {
    for row in l {
        if row.len() != pair.ambient_dim() {
            return Err(Error::DimensionMismatch { expected: pair.ambient_dim(), found: row.len() });
        }
    }
    let a = pair
        .exponents
        .iter()
        .map(|e| l.iter().map(|row| row.iter().zip(e).map(|(x, y)| x * y).sum()).collect())
        .collect();
    Ok(MonomialPair { exponents: a, coefficients: pair.coefficients.clone() })
}
