//! Certified evaluation of log-linear numbers.
//!
//! `log p` is enclosed in `[lo, hi] / 2^w` using the series
//! `log p = k log 2 + 2 atanh((p - 2^k) / (p + 2^k))` with every rounding
//! step directed downward, so the accumulated deficit is bounded by a small
//! multiple of the number of terms.

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::{LogLinear, Rational};

const START_BITS: u32 = 64;

type Enclosure = (BigInt, BigInt);

fn cache() -> &'static Mutex<HashMap<(u64, u32), Enclosure>> {
    static CACHE: OnceLock<Mutex<HashMap<(u64, u32), Enclosure>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Returns `(s, e)` with `s <= 2^w atanh(a/b) <= s + e`; requires `a/b < 1/2`.
fn atanh_fixed(a: &BigUint, b: &BigUint, w: u32) -> (BigUint, BigUint) {
    let a2 = a * a;
    let b2 = b * b;
    let mut pow = (a << w as usize) / b;
    let mut sum = BigUint::zero();
    let mut terms = 0u64;
    while !pow.is_zero() {
        sum += &pow / BigUint::from(2 * terms + 1);
        pow = pow * &a2 / &b2;
        terms += 1;
    }
    // each term loses < 7/3 ulp, the tail after the last term < 2 ulp
    (sum, BigUint::from(3 * terms + 3))
}

/// Enclosure of `log p` scaled by `2^w`.
fn log_enclosure(p: u64, w: u32) -> Enclosure {
    if let Some(hit) = cache().lock().expect("log cache poisoned").get(&(p, w)) {
        return hit.clone();
    }
    let (s2, e2) = atanh_fixed(&BigUint::from(1u32), &BigUint::from(3u32), w);
    let log2_lo = BigInt::from(s2) * 2;
    let log2_hi = &log2_lo + BigInt::from(e2) * 2;
    let k = 63 - p.leading_zeros();
    let pow2 = 1u64 << k;
    let out = if p == pow2 {
        (&log2_lo * k, &log2_hi * k)
    } else {
        let a = BigUint::from(p - pow2);
        let b = BigUint::from(p) + BigUint::from(pow2);
        let (s, e) = atanh_fixed(&a, &b, w);
        let lo = &log2_lo * k + BigInt::from(s.clone()) * 2;
        let hi = &log2_hi * k + (BigInt::from(s) + BigInt::from(e)) * 2;
        (lo, hi)
    };
    cache().lock().expect("log cache poisoned").insert((p, w), out.clone());
    out
}

/// Rational enclosure `[lo, hi]` of `x` using `w` bits for each logarithm.
pub(crate) fn enclose(x: &LogLinear, w: u32) -> (Rational, Rational) {
    let mut lo = x.constant().clone();
    let mut hi = lo.clone();
    let scale = BigInt::one() << w as usize;
    for (p, q) in x.log_terms() {
        let (l, h) = log_enclosure(p.get(), w);
        let l = Rational::new(l, scale.clone());
        let h = Rational::new(h, scale.clone());
        if q.is_positive() {
            lo += q * &l;
            hi += q * &h;
        } else {
            lo += q * &h;
            hi += q * &l;
        }
    }
    (lo, hi)
}

/// Sign of `x`: 0 iff every coefficient vanishes, otherwise the sign of the
/// real it represents, certified by enclosures at doubling precision.
pub fn certified_sign(x: &LogLinear) -> i8 {
    if x.is_rational() {
        return sign_of(x.constant());
    }
    // all terms of one sign decide immediately
    let c = sign_of(x.constant());
    let mut pos = c >= 0;
    let mut neg = c <= 0;
    for (_, q) in x.log_terms() {
        pos &= q.is_positive();
        neg &= q.is_negative();
    }
    if pos {
        return 1;
    }
    if neg {
        return -1;
    }
    let mut w = START_BITS;
    loop {
        let (lo, hi) = enclose(x, w);
        if lo.is_positive() {
            return 1;
        }
        if hi.is_negative() {
            return -1;
        }
        w *= 2;
    }
}

fn sign_of(q: &Rational) -> i8 {
    if q.is_positive() {
        1
    } else if q.is_negative() {
        -1
    } else {
        0
    }
}

/// A certified decimal approximation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Approximation {
    /// Midpoint of the enclosure.
    pub value: Rational,
    /// Decimal rendering of `value`, rounded; trailing zeros trimmed.
    pub decimal: String,
    /// Bound on `|decimal - x|`.
    pub error_bound: Rational,
}

impl Approximation {
    pub fn to_f64(&self) -> f64 {
        let num = self.value.numer().to_f64().unwrap_or(f64::NAN);
        let den = self.value.denom().to_f64().unwrap_or(f64::NAN);
        if num.is_finite() && den.is_finite() {
            num / den
        } else {
            self.decimal.parse().unwrap_or(f64::NAN)
        }
    }

    /// `error_bound <= 2^-bits`.
    pub fn within_bits(&self, bits: u32) -> bool {
        self.error_bound <= Rational::new(BigInt::one(), BigInt::one() << bits as usize)
    }
}

/// Approximates `x` with total error at most `2^-bits`.
pub fn approximate(x: &LogLinear, bits: u32) -> Approximation {
    if x.is_zero() {
        return Approximation {
            value: Rational::zero(),
            decimal: "0".into(),
            error_bound: Rational::zero(),
        };
    }
    let half_target = Rational::new(BigInt::one(), BigInt::one() << (bits as usize + 1));
    let mut w = bits + 16;
    let (lo, hi) = loop {
        let (lo, hi) = enclose(x, w);
        if (&hi - &lo) / Rational::from_integer(2.into()) <= half_target {
            break (lo, hi);
        }
        w += 32;
    };
    let value = (&lo + &hi) / Rational::from_integer(2.into());
    let radius = (&hi - &lo) / Rational::from_integer(2.into());
    // 10^-digits <= 2^-(bits+1)
    let digits = ((bits as f64 + 1.0) * std::f64::consts::LOG10_2).ceil() as usize + 1;
    let (decimal, rounding) = to_decimal(&value, digits);
    Approximation { value, decimal, error_bound: radius + rounding }
}

/// Rounds `q` to `digits` decimal places; returns the text and the rounding error.
pub fn to_decimal(q: &Rational, digits: usize) -> (String, Rational) {
    let ten_pow = num_traits::pow(BigInt::from(10), digits);
    let scaled = q * Rational::from_integer(ten_pow.clone());
    let rounded = scaled.round().to_integer();
    let err = (Rational::from_integer(rounded.clone()) / Rational::from_integer(ten_pow.clone()) - q).abs();
    let negative = rounded.is_negative();
    let (int_part, frac_part) = rounded.abs().div_rem(&ten_pow);
    let mut frac = frac_part.to_string();
    while frac.len() < digits {
        frac.insert(0, '0');
    }
    let frac = frac.trim_end_matches('0');
    let mut s = String::new();
    if negative {
        s.push('-');
    }
    s.push_str(&int_part.to_string());
    if !frac.is_empty() {
        s.push('.');
        s.push_str(frac);
    }
    if s == "-0" {
        s = "0".into();
    }
    (s, err)
}
