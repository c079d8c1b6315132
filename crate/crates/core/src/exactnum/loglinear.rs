use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_traits::{One, Signed, Zero};
use serde_json::{Map, Value};

use super::interval;
use super::primes::Prime;
use super::{parse_rational, Rational};
use crate::error::{Error, Result};

/// An exact real number `c + sum_p q_p log p` with rational `c`, `q_p`.
///
/// The numbers `1, log 2, log 3, log 5, ...` are linearly independent over
/// Q, so two values are equal exactly when their coefficients agree. Zero
/// coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct LogLinear {
    constant: Rational,
    logs: BTreeMap<Prime, Rational>,
}

impl LogLinear {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn from_rational(q: Rational) -> Self {
        LogLinear { constant: q, logs: BTreeMap::new() }
    }

    pub fn from_integer(n: i64) -> Self {
        Self::from_rational(Rational::from_integer(n.into()))
    }

    /// `coeff * log p`.
    pub fn log_prime(p: Prime, coeff: Rational) -> Self {
        let mut logs = BTreeMap::new();
        if !coeff.is_zero() {
            logs.insert(p, coeff);
        }
        LogLinear { constant: Rational::zero(), logs }
    }

    pub fn from_parts<I>(constant: Rational, terms: I) -> Self
    where
        I: IntoIterator<Item = (Prime, Rational)>,
    {
        let mut out = Self::from_rational(constant);
        for (p, q) in terms {
            out += Self::log_prime(p, q);
        }
        out
    }

    pub fn constant(&self) -> &Rational {
        &self.constant
    }

    /// Coefficient of `log p` (zero when absent).
    pub fn log_coefficient(&self, p: Prime) -> Rational {
        self.logs.get(&p).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn log_terms(&self) -> impl Iterator<Item = (Prime, &Rational)> {
        self.logs.iter().map(|(p, q)| (*p, q))
    }

    pub fn is_zero(&self) -> bool {
        self.constant.is_zero() && self.logs.is_empty()
    }

    /// True when no logarithm occurs.
    pub fn is_rational(&self) -> bool {
        self.logs.is_empty()
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        self.is_rational().then_some(&self.constant)
    }

    pub fn scale(&self, k: &Rational) -> Self {
        if k.is_zero() {
            return Self::zero();
        }
        LogLinear {
            constant: &self.constant * k,
            logs: self.logs.iter().map(|(p, q)| (*p, q * k)).collect(),
        }
    }

    pub fn div_rational(&self, k: &Rational) -> Self {
        self.scale(&k.recip())
    }

    /// Product of two values, defined when at least one factor is rational.
    pub fn try_mul(&self, other: &LogLinear) -> Result<LogLinear> {
        match (self.as_rational(), other.as_rational()) {
            (Some(a), _) => Ok(other.scale(a)),
            (_, Some(b)) => Ok(self.scale(b)),
            _ => Err(Error::NonLinearProduct),
        }
    }

    /// Certified sign: -1, 0 or +1.
    pub fn signum(&self) -> i8 {
        interval::certified_sign(self)
    }

    pub fn is_positive(&self) -> bool {
        self.signum() > 0
    }

    pub fn is_negative(&self) -> bool {
        self.signum() < 0
    }

    pub fn abs(&self) -> Self {
        if self.signum() < 0 {
            -self
        } else {
            self.clone()
        }
    }

    /// Certified comparison of the represented reals.
    pub fn cmp_value(&self, other: &LogLinear) -> Ordering {
        match (self - other).signum() {
            -1 => Ordering::Less,
            0 => Ordering::Equal,
            _ => Ordering::Greater,
        }
    }

    pub fn max_value(a: &LogLinear, b: &LogLinear) -> LogLinear {
        if a.cmp_value(b) == Ordering::Less {
            b.clone()
        } else {
            a.clone()
        }
    }

    pub fn min_value(a: &LogLinear, b: &LogLinear) -> LogLinear {
        if a.cmp_value(b) == Ordering::Greater {
            b.clone()
        } else {
            a.clone()
        }
    }

    /// Nearest double; presentation only.
    pub fn to_f64(&self) -> f64 {
        interval::approximate(self, 64).to_f64()
    }

    /// Coefficient map `{"constant": "c", "2": "a", ...}`.
    pub fn to_json(&self) -> Value {
        let mut map = Map::new();
        map.insert("constant".into(), Value::String(self.constant.to_string()));
        for (p, q) in &self.logs {
            map.insert(p.to_string(), Value::String(q.to_string()));
        }
        Value::Object(map)
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        match v {
            Value::String(s) => s.parse(),
            Value::Number(n) => Ok(Self::from_rational(parse_rational(&n.to_string())?)),
            Value::Object(map) => {
                let mut out = Self::zero();
                for (k, val) in map {
                    let q = match val {
                        Value::String(s) => parse_rational(s)?,
                        Value::Number(n) => parse_rational(&n.to_string())?,
                        _ => return Err(Error::Parse(format!("bad coefficient for `{k}`"))),
                    };
                    if k == "constant" {
                        out += Self::from_rational(q);
                    } else {
                        let p: u64 = k.parse().map_err(|_| Error::Parse(format!("bad prime key `{k}`")))?;
                        out += Self::log_prime(Prime::new(p)?, q);
                    }
                }
                Ok(out)
            }
            _ => Err(Error::Parse("expected a log-linear number".into())),
        }
    }

    fn add_term(&mut self, p: Prime, q: &Rational) {
        let entry = self.logs.entry(p).or_insert_with(Rational::zero);
        *entry += q;
        if entry.is_zero() {
            self.logs.remove(&p);
        }
    }
}

impl From<Rational> for LogLinear {
    fn from(q: Rational) -> Self {
        Self::from_rational(q)
    }
}

impl<'a> AddAssign<&'a LogLinear> for LogLinear {
    fn add_assign(&mut self, rhs: &'a LogLinear) {
        self.constant += &rhs.constant;
        for (p, q) in &rhs.logs {
            self.add_term(*p, q);
        }
    }
}

impl AddAssign for LogLinear {
    fn add_assign(&mut self, rhs: LogLinear) {
        *self += &rhs;
    }
}

impl<'a> SubAssign<&'a LogLinear> for LogLinear {
    fn sub_assign(&mut self, rhs: &'a LogLinear) {
        self.constant -= &rhs.constant;
        for (p, q) in &rhs.logs {
            self.add_term(*p, &-q);
        }
    }
}

impl SubAssign for LogLinear {
    fn sub_assign(&mut self, rhs: LogLinear) {
        *self -= &rhs;
    }
}

impl<'a, 'b> Add<&'b LogLinear> for &'a LogLinear {
    type Output = LogLinear;
    fn add(self, rhs: &'b LogLinear) -> LogLinear {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add for LogLinear {
    type Output = LogLinear;
    fn add(mut self, rhs: LogLinear) -> LogLinear {
        self += &rhs;
        self
    }
}

impl<'a, 'b> Sub<&'b LogLinear> for &'a LogLinear {
    type Output = LogLinear;
    fn sub(self, rhs: &'b LogLinear) -> LogLinear {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Sub for LogLinear {
    type Output = LogLinear;
    fn sub(mut self, rhs: LogLinear) -> LogLinear {
        self -= &rhs;
        self
    }
}

impl<'b> Add<&'b LogLinear> for LogLinear {
    type Output = LogLinear;
    fn add(mut self, rhs: &'b LogLinear) -> LogLinear {
        self += rhs;
        self
    }
}

impl<'b> Sub<&'b LogLinear> for LogLinear {
    type Output = LogLinear;
    fn sub(mut self, rhs: &'b LogLinear) -> LogLinear {
        self -= rhs;
        self
    }
}

impl Neg for &LogLinear {
    type Output = LogLinear;
    fn neg(self) -> LogLinear {
        LogLinear {
            constant: -&self.constant,
            logs: self.logs.iter().map(|(p, q)| (*p, -q)).collect(),
        }
    }
}

impl Neg for LogLinear {
    type Output = LogLinear;
    fn neg(self) -> LogLinear {
        -&self
    }
}

impl std::iter::Sum for LogLinear {
    fn sum<I: Iterator<Item = LogLinear>>(iter: I) -> Self {
        iter.fold(LogLinear::zero(), |acc, x| acc + x)
    }
}

impl<'a> std::iter::Sum<&'a LogLinear> for LogLinear {
    fn sum<I: Iterator<Item = &'a LogLinear>>(iter: I) -> Self {
        let mut acc = LogLinear::zero();
        for x in iter {
            acc += x;
        }
        acc
    }
}

impl fmt::Display for LogLinear {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        if !self.constant.is_zero() {
            write!(f, "{}", self.constant)?;
            first = false;
        }
        for (p, q) in &self.logs {
            let mag = q.abs();
            if first {
                if q.is_negative() {
                    f.write_str("-")?;
                }
            } else if q.is_negative() {
                f.write_str(" - ")?;
            } else {
                f.write_str(" + ")?;
            }
            if mag.is_one() {
                write!(f, "log({p})")?;
            } else {
                write!(f, "{mag}*log({p})")?;
            }
            first = false;
        }
        Ok(())
    }
}

impl fmt::Debug for LogLinear {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LogLinear({self})")
    }
}

fn parse_term(term: &str, negative: bool) -> Result<LogLinear> {
    let bad = || Error::Parse(format!("invalid log-linear term `{term}`"));
    let (coeff, log_part) = match term.find("log(") {
        None => (term, None),
        Some(idx) => {
            let head = &term[..idx];
            let tail = &term[idx + 4..];
            let inner = tail.strip_suffix(')').ok_or_else(bad)?;
            let head = head.strip_suffix('*').unwrap_or(head);
            if head.is_empty() && idx > 0 {
                return Err(bad());
            }
            (head, Some(inner))
        }
    };
    let mut q = if coeff.is_empty() {
        if log_part.is_none() {
            return Err(bad());
        }
        Rational::one()
    } else {
        parse_rational(coeff)?
    };
    if negative {
        q = -q;
    }
    match log_part {
        None => Ok(LogLinear::from_rational(q)),
        Some(p) => {
            let p: u64 = p.parse().map_err(|_| bad())?;
            Ok(LogLinear::log_prime(Prime::new(p)?, q))
        }
    }
}

impl FromStr for LogLinear {
    type Err = Error;

    /// Parses the canonical form, e.g. `1/2 + 3*log(2) - log(5)`.
    fn from_str(s: &str) -> Result<Self> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(Error::Parse("empty log-linear number".into()));
        }
        let mut out = LogLinear::zero();
        let mut negative = false;
        let mut start = 0;
        let bytes = compact.as_bytes();
        let mut depth = 0i32;
        for (i, &b) in bytes.iter().enumerate() {
            match b {
                b'(' => depth += 1,
                b')' => depth -= 1,
                b'+' | b'-' if depth == 0 => {
                    if i > start {
                        out += parse_term(&compact[start..i], negative)?;
                    } else if i > 0 {
                        return Err(Error::Parse(format!("dangling sign in `{s}`")));
                    }
                    negative = b == b'-';
                    start = i + 1;
                }
                _ => {}
            }
        }
        if start >= compact.len() {
            return Err(Error::Parse(format!("dangling sign in `{s}`")));
        }
        out += parse_term(&compact[start..], negative)?;
        Ok(out)
    }
}
