//! Hilbert weights by enumerating the monomials of degree `D`.

use std::cmp::Ordering;
use std::collections::HashMap;

use num_bigint::BigInt;

use super::{normalized_height, require_full_lattice, weight_vector, MonomialPair};
use crate::error::{Error, Result};
use crate::exactnum::{binomial, factorial, LogLinear, Rational};
use crate::geom::LatticeVector;

/// Default bound on the number of enumerated monomials.
pub const DEFAULT_CAP: u64 = 10_000_000;

/// `|N^{m}_D| = C(D + m - 1, m - 1)`, the number of exponent vectors of
/// length `m` and total degree `d`.
pub fn compositions_count(m: usize, d: u64) -> BigInt {
    if m == 0 {
        return BigInt::from(u8::from(d == 0));
    }
    binomial(d as usize + m - 1, m - 1).to_integer()
}

pub(crate) fn check_cap(m: usize, d: u64, cap: u64) -> Result<()> {
    let count = compositions_count(m, d);
    if count > BigInt::from(cap) {
        return Err(Error::CapExceeded { count: count.to_string(), cap });
    }
    Ok(())
}

/// Calls `f` on every `lambda` of length `m` with sum `d`, in lexicographic
/// order (largest first entry first).
pub(crate) fn for_each_composition(m: usize, d: u64, mut f: impl FnMut(&[u64])) {
    fn rec(pos: usize, left: u64, lambda: &mut Vec<u64>, f: &mut dyn FnMut(&[u64])) {
        if pos + 1 == lambda.len() {
            lambda[pos] = left;
            f(lambda);
            return;
        }
        for x in (0..=left).rev() {
            lambda[pos] = x;
            rec(pos + 1, left - x, lambda, f);
        }
    }
    if m == 0 {
        return;
    }
    let mut lambda = vec![0; m];
    rec(0, d, &mut lambda, &mut f);
}

/// `s_tau(D)`: over each fiber of `lambda -> sum lambda_i a_i` on
/// `N^{N+1}_D`, the largest `sum lambda_i tau_i`, summed over fibers.
/// Requires `L_A = Z^n`.
pub fn hilbert_weight(exponents: &[LatticeVector], tau: &[LogLinear], d: u64, cap: u64) -> Result<LogLinear> {
    require_full_lattice(exponents)?;
    if exponents.len() != tau.len() {
        return Err(Error::LengthMismatch { left: exponents.len(), right: tau.len() });
    }
    fiber_maxima_sum(exponents, tau, d, cap)
}

fn fiber_maxima_sum(exponents: &[LatticeVector], tau: &[LogLinear], d: u64, cap: u64) -> Result<LogLinear> {
    check_cap(exponents.len(), d, cap)?;
    let n = exponents[0].len();
    let mut best: HashMap<LatticeVector, LogLinear> = HashMap::new();
    for_each_composition(exponents.len(), d, |lambda| {
        let mut c = vec![BigInt::from(0); n];
        let mut weight = LogLinear::zero();
        for ((&l, a), t) in lambda.iter().zip(exponents).zip(tau) {
            if l == 0 {
                continue;
            }
            for (ci, ai) in c.iter_mut().zip(a) {
                *ci += ai * l;
            }
            weight += t.scale(&Rational::from_integer(l.into()));
        }
        match best.get_mut(&c) {
            Some(b) => {
                if weight.cmp_value(b) == Ordering::Greater {
                    *b = weight;
                }
            }
            None => {
                best.insert(c, weight);
            }
        }
    });
    Ok(best.values().sum())
}

/// `H_norm(D) = sum_v s_{tau_v}(B; D)` over the normalized exponents.
pub fn arithmetic_hilbert_norm(pair: &MonomialPair, d: u64, cap: u64) -> Result<LogLinear> {
    let b = pair.normalized_exponents();
    let mut total = LogLinear::zero();
    for v in pair.places()? {
        total += fiber_maxima_sum(&b, &weight_vector(pair, v)?, d, cap)?;
    }
    Ok(total)
}

/// `|(r+1)! H_norm(D) / D^{r+1} - h|`, exact.
pub fn hilbert_asymptotic_gap(pair: &MonomialPair, d: u64, cap: u64) -> Result<LogLinear> {
    if d == 0 {
        return Err(Error::InvalidArgument("degree must be positive".into()));
    }
    let h = normalized_height(pair)?;
    let r = h.dim;
    let scale = factorial(r + 1) / Rational::from_integer(BigInt::from(d).pow(r as u32 + 1));
    let approx = arithmetic_hilbert_norm(pair, d, cap)?.scale(&scale);
    Ok((approx - h.value).abs())
}
