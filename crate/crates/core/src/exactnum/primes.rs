//! Primality, factorization and the places of Q.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use super::{LogLinear, Rational};
use crate::error::{Error, Result};

const TRIAL_LIMIT: u64 = 1 << 16;

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Deterministic Miller-Rabin for 64-bit integers.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n % p == 0 {
            return n == p;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn gcd_u64(a: u64, b: u64) -> u64 {
    a.gcd(&b)
}

/// Brent's variant of Pollard rho; `n` must be odd and composite.
fn pollard_brent(n: u64) -> u64 {
    const BLOCK: u64 = 128;
    for c in 1u64.. {
        let f = |x: u64| ((x as u128 * x as u128 + c as u128) % n as u128) as u64;
        let (mut x, mut y, mut ys) = (0u64, 2u64, 2u64);
        let (mut g, mut r, mut q) = (1u64, 1u64, 1u64);
        while g == 1 {
            x = y;
            for _ in 0..r {
                y = f(y);
            }
            let mut k = 0;
            while k < r && g == 1 {
                ys = y;
                for _ in 0..BLOCK.min(r - k) {
                    y = f(y);
                    q = mul_mod(q, x.abs_diff(y), n);
                }
                g = gcd_u64(q, n);
                k += BLOCK;
            }
            r *= 2;
        }
        if g == n {
            loop {
                ys = f(ys);
                g = gcd_u64(x.abs_diff(ys), n);
                if g > 1 {
                    break;
                }
            }
        }
        if g != n {
            return g;
        }
    }
    unreachable!("rho exhausted all increments")
}

fn factor_u64_into(n: u64, out: &mut BTreeMap<u64, u32>) {
    if n == 1 {
        return;
    }
    if is_prime_u64(n) {
        *out.entry(n).or_insert(0) += 1;
        return;
    }
    let d = pollard_brent(n);
    factor_u64_into(d, out);
    factor_u64_into(n / d, out);
}

/// Prime factorization of a positive integer, as prime -> exponent.
///
/// Factors beyond 64 bits are rejected: after trial division the cofactor
/// must fit in a `u64`.
pub fn factorize(n: &BigUint) -> Result<BTreeMap<u64, u32>> {
    if n.is_zero() {
        return Err(Error::ZeroValue);
    }
    let mut out = BTreeMap::new();
    let mut m = n.clone();
    let mut d = 2u64;
    while d < TRIAL_LIMIT {
        let big_d = BigUint::from(d);
        if &big_d * &big_d > m {
            break;
        }
        let mut e = 0u32;
        loop {
            let (q, r) = m.div_rem(&big_d);
            if !r.is_zero() {
                break;
            }
            m = q;
            e += 1;
        }
        if e > 0 {
            out.insert(d, e);
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if m.is_one() {
        return Ok(out);
    }
    match m.to_u64() {
        Some(small) => {
            factor_u64_into(small, &mut out);
            Ok(out)
        }
        None => Err(Error::PrimeTooLarge(n.to_string())),
    }
}

/// A verified rational prime.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Prime(u64);

impl Prime {
    pub fn new(p: u64) -> Result<Self> {
        if is_prime_u64(p) {
            Ok(Prime(p))
        } else {
            Err(Error::NotPrime(p.to_string()))
        }
    }

    /// Wraps a value already known to be prime (factorization output).
    pub(crate) fn new_unchecked(p: u64) -> Self {
        debug_assert!(is_prime_u64(p));
        Prime(p)
    }

    pub fn get(self) -> u64 {
        self.0
    }
}

impl fmt::Display for Prime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// A place of Q: the archimedean absolute value or a p-adic one.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Place {
    Infinite,
    Finite(Prime),
}

impl Place {
    pub fn finite(p: u64) -> Result<Self> {
        Prime::new(p).map(Place::Finite)
    }
}

impl fmt::Display for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Place::Infinite => f.write_str("inf"),
            Place::Finite(p) => write!(f, "{p}"),
        }
    }
}

impl FromStr for Place {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        match t {
            "inf" | "infinity" | "oo" | "∞" => Ok(Place::Infinite),
            _ => {
                let p: u64 = t
                    .parse()
                    .map_err(|_| Error::Parse(format!("invalid place `{s}`")))?;
                Place::finite(p)
            }
        }
    }
}

/// Exponent of `p` in the factorization of the nonzero rational `q`.
pub fn padic_order(q: &Rational, p: Prime) -> Result<i64> {
    if q.is_zero() {
        return Err(Error::ZeroValue);
    }
    let big_p = BigUint::from(p.0);
    let count = |n: &BigUint| -> i64 {
        let mut m = n.clone();
        let mut e = 0;
        loop {
            let (quot, r) = m.div_rem(&big_p);
            if !r.is_zero() {
                return e;
            }
            m = quot;
            e += 1;
        }
    };
    let num = q.numer().magnitude();
    let den = q.denom().magnitude();
    Ok(count(num) - count(den))
}

/// Full factorization of a nonzero rational as prime -> signed exponent.
pub fn rational_factorization(q: &Rational) -> Result<BTreeMap<u64, i64>> {
    if q.is_zero() {
        return Err(Error::ZeroValue);
    }
    let mut out: BTreeMap<u64, i64> = BTreeMap::new();
    for (p, e) in factorize(q.numer().magnitude())? {
        *out.entry(p).or_insert(0) += e as i64;
    }
    for (p, e) in factorize(q.denom().magnitude())? {
        *out.entry(p).or_insert(0) -= e as i64;
    }
    Ok(out)
}

/// `log |q|_v` as an exact log-linear number.
///
/// At a finite place this is `-ord_p(q) log p`; at infinity it is
/// `log |q| = sum_p ord_p(q) log p` (the sign of `q` is discarded).
pub fn log_abs(q: &Rational, v: Place) -> Result<LogLinear> {
    match v {
        Place::Finite(p) => {
            let e = padic_order(q, p)?;
            Ok(LogLinear::log_prime(p, Rational::from_integer((-e).into())))
        }
        Place::Infinite => {
            let mut acc = LogLinear::zero();
            for (p, e) in rational_factorization(q)? {
                acc += LogLinear::log_prime(Prime::new_unchecked(p), Rational::from_integer(e.into()));
            }
            Ok(acc)
        }
    }
}

/// The infinite place followed by every prime dividing a numerator or
/// denominator of the coefficients, in ascending order.
pub fn relevant_places<'a, I>(coeffs: I) -> Result<Vec<Place>>
where
    I: IntoIterator<Item = &'a Rational>,
{
    let mut primes = std::collections::BTreeSet::new();
    for q in coeffs {
        for p in rational_factorization(q)?.into_keys() {
            primes.insert(p);
        }
    }
    let mut out = vec![Place::Infinite];
    out.extend(primes.into_iter().map(|p| Place::Finite(Prime::new_unchecked(p))));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(s: &str) -> Rational {
        s.parse().unwrap()
    }

    #[test]
    fn padic_order_examples() {
        let two = Prime::new(2).unwrap();
        assert_eq!(padic_order(&q("4"), two).unwrap(), 2);
        assert_eq!(padic_order(&q("1/2"), two).unwrap(), -1);
        assert_eq!(padic_order(&q("1/3"), two).unwrap(), 0);
        assert_eq!(padic_order(&q("0"), two), Err(Error::ZeroValue));
    }

    #[test]
    fn log_abs_examples() {
        let two = Place::finite(2).unwrap();
        assert_eq!(log_abs(&q("4"), Place::Infinite).unwrap().to_string(), "2*log(2)");
        assert_eq!(log_abs(&q("1/2"), two).unwrap().to_string(), "log(2)");
        assert!(log_abs(&q("1/3"), two).unwrap().is_zero());
        assert_eq!(log_abs(&q("-6"), Place::Infinite).unwrap().to_string(), "log(2) + log(3)");
        assert_eq!(log_abs(&q("0"), Place::Infinite), Err(Error::ZeroValue));
    }

    #[test]
    fn relevant_places_examples() {
        let cubic = [q("1"), q("4"), q("1/3"), q("1/2")];
        let places: Vec<String> = relevant_places(&cubic).unwrap().iter().map(|p| p.to_string()).collect();
        assert_eq!(places, ["inf", "2", "3"]);
        assert_eq!(relevant_places(&[q("1"), q("1")]).unwrap(), vec![Place::Infinite]);
        let places: Vec<String> =
            relevant_places(&[q("6"), q("1/5")]).unwrap().iter().map(|p| p.to_string()).collect();
        assert_eq!(places, ["inf", "2", "3", "5"]);
        assert!(relevant_places(&[q("0")]).is_err());
    }

    #[test]
    fn primality_and_factoring() {
        assert!(is_prime_u64(2));
        assert!(!is_prime_u64(1));
        assert!(is_prime_u64(1_000_000_007));
        assert!(!is_prime_u64(1_000_000_007u64 * 3));
        assert!(Prime::new(91).is_err());
        let n = BigUint::from(600_851_475_143u64);
        let f = factorize(&n).unwrap();
        assert_eq!(f, BTreeMap::from([(71, 1), (839, 1), (1471, 1), (6857, 1)]));
        // semiprime with both factors above the trial-division bound
        let n = BigUint::from(1_000_003u64 * 999_983u64);
        let f = factorize(&n).unwrap();
        assert_eq!(f, BTreeMap::from([(999_983, 1), (1_000_003, 1)]));
    }

    #[test]
    fn place_parsing_and_order() {
        assert_eq!("inf".parse::<Place>().unwrap(), Place::Infinite);
        assert_eq!("7".parse::<Place>().unwrap(), Place::finite(7).unwrap());
        assert!("8".parse::<Place>().is_err());
        assert!(Place::Infinite < Place::finite(2).unwrap());
        assert!(Place::finite(2).unwrap() < Place::finite(3).unwrap());
    }
}
