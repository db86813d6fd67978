//! Exact slopes in `Q ∪ {∞}` and continued-fraction expansions.
//!
//! A finite slope `q/p` is stored reduced with `p > 0`; the point at infinity
//! is the unique value with denominator zero. Nothing here touches floating
//! point.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{domain, Error, Result};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Slope {
    num: BigInt,
    den: BigInt,
}

impl Slope {
    pub fn new(num: impl Into<BigInt>, den: impl Into<BigInt>) -> Result<Slope> {
        let (mut num, mut den) = (num.into(), den.into());
        if num.is_zero() && den.is_zero() {
            return Err(Error::Parse("0/0 is not a slope".into()));
        }
        if den.is_zero() {
            return Ok(Slope::infinity());
        }
        if den.is_negative() {
            num = -num;
            den = -den;
        }
        let g = num.gcd(&den);
        Ok(Slope { num: num / &g, den: den / &g })
    }

    /// `q/p` from machine integers. Panics on `0/0`.
    pub fn ratio(q: i64, p: i64) -> Slope {
        Slope::new(q, p).expect("0/0 is not a slope")
    }

    pub fn integer(k: impl Into<BigInt>) -> Slope {
        Slope { num: k.into(), den: BigInt::one() }
    }

    pub fn infinity() -> Slope {
        Slope { num: BigInt::one(), den: BigInt::zero() }
    }

    pub fn zero() -> Slope {
        Slope::integer(0)
    }

    pub fn one() -> Slope {
        Slope::integer(1)
    }

    pub fn is_infinite(&self) -> bool {
        self.den.is_zero()
    }

    pub fn is_integer(&self) -> bool {
        self.den.is_one()
    }

    pub fn numer(&self) -> &BigInt {
        &self.num
    }

    /// Zero for `∞`.
    pub fn denom(&self) -> &BigInt {
        &self.den
    }

    /// `(q, p)` as machine integers when both fit.
    pub fn to_i64_pair(&self) -> Option<(i64, i64)> {
        Some((self.num.to_i64()?, self.den.to_i64()?))
    }

    /// Greatest integer not exceeding a finite slope.
    pub fn floor(&self) -> Option<BigInt> {
        if self.is_infinite() {
            None
        } else {
            Some(self.num.div_floor(&self.den))
        }
    }

    pub fn neg(&self) -> Slope {
        if self.is_infinite() {
            return self.clone();
        }
        Slope { num: -&self.num, den: self.den.clone() }
    }

    pub fn add_integer(&self, k: &BigInt) -> Slope {
        if self.is_infinite() {
            return self.clone();
        }
        Slope { num: &self.num + k * &self.den, den: self.den.clone() }
    }

    /// True when `0 <= self <= 1`.
    pub fn in_unit_interval(&self) -> bool {
        !self.is_infinite() && !self.num.is_negative() && self.num <= self.den
    }

    /// Total order used for sorting: rational order with `∞` last.
    pub fn total_cmp(&self, other: &Slope) -> Ordering {
        self.partial_cmp(other).unwrap_or_else(|| self.is_infinite().cmp(&other.is_infinite()))
    }

    /// Stern–Brocot depth: the sum of the partial quotients of the regular
    /// continued fraction, with the absolute value of the integer part.
    /// Zero for `∞`.
    pub fn stern_brocot_depth(&self) -> BigInt {
        if self.is_infinite() {
            return BigInt::zero();
        }
        let (mut a, mut b) = (self.num.clone(), self.den.clone());
        let mut depth = a.div_floor(&b).abs();
        a = a.mod_floor(&b);
        while !a.is_zero() {
            let (quo, rem) = b.div_rem(&a);
            depth += quo;
            b = std::mem::replace(&mut a, rem);
        }
        depth
    }
}

impl PartialOrd for Slope {
    /// Rational order on finite slopes; `∞` is comparable only to itself.
    fn partial_cmp(&self, other: &Slope) -> Option<Ordering> {
        match (self.is_infinite(), other.is_infinite()) {
            (true, true) => Some(Ordering::Equal),
            (false, false) => Some((&self.num * &other.den).cmp(&(&other.num * &self.den))),
            _ => None,
        }
    }
}

impl fmt::Display for Slope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_infinite() {
            write!(f, "inf")
        } else if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

impl fmt::Debug for Slope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl FromStr for Slope {
    type Err = Error;

    fn from_str(s: &str) -> Result<Slope> {
        let s = s.trim();
        if s == "inf" {
            return Ok(Slope::infinity());
        }
        let bad = || Error::Parse(format!("invalid slope {s:?}; expected q/p, an integer or inf"));
        let (num, den) = match s.split_once('/') {
            Some((q, p)) => (q, p),
            None => (s, "1"),
        };
        let num: BigInt = num.trim().parse().map_err(|_| bad())?;
        let den: BigInt = den.trim().parse().map_err(|_| bad())?;
        if den.is_negative() {
            return Err(bad());
        }
        Slope::new(num, den)
    }
}

impl From<i64> for Slope {
    fn from(k: i64) -> Slope {
        Slope::integer(k)
    }
}

impl Serialize for Slope {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Slope {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Slope, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Continued fraction `[m_1, ..., m_k] = 1/(m_1 + 1/(m_2 + ... + 1/m_k))`
/// in normal form: all terms positive, `m_k >= 2` unless `k = 1`.
/// The value lies in `(0, 1]`; `[1]` is the only expansion of 1.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ContinuedFraction {
    terms: Vec<u64>,
}

impl ContinuedFraction {
    pub fn new(terms: Vec<u64>) -> Result<ContinuedFraction> {
        if terms.is_empty() {
            return domain("continued fraction needs at least one term");
        }
        if terms.contains(&0) {
            return domain("continued fraction terms must be positive");
        }
        if terms.len() >= 2 && terms[terms.len() - 1] < 2 {
            return domain("last term must be at least 2 when k >= 2");
        }
        Ok(ContinuedFraction { terms })
    }

    pub fn terms(&self) -> &[u64] {
        &self.terms
    }

    /// Number of terms `k`.
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// The leading term `m = m_1`.
    pub fn first(&self) -> u64 {
        self.terms[0]
    }

    pub fn value(&self) -> Slope {
        cf_value(self)
    }
}

impl fmt::Display for ContinuedFraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.terms.iter().map(u64::to_string).collect();
        write!(f, "[{}]", parts.join(","))
    }
}

impl FromStr for ContinuedFraction {
    type Err = Error;

    fn from_str(s: &str) -> Result<ContinuedFraction> {
        let inner = s
            .trim()
            .strip_prefix('[')
            .and_then(|t| t.strip_suffix(']'))
            .ok_or_else(|| Error::Parse(format!("expected [m1,m2,...], got {s:?}")))?;
        let terms = inner
            .split(',')
            .map(|t| t.trim().parse::<u64>().map_err(|_| Error::Parse(format!("bad term {t:?}"))))
            .collect::<Result<Vec<_>>>()?;
        ContinuedFraction::new(terms)
    }
}

/// Normal-form expansion of `0 < s <= 1`.
pub fn cf_from_slope(s: &Slope) -> Result<ContinuedFraction> {
    if s.is_infinite() || !s.num.is_positive() || s.num > s.den {
        return domain(format!("continued fraction needs 0 < s <= 1, got {s}"));
    }
    // s = q/p; repeatedly p = m*q + rest.
    let (mut q, mut p) = (s.num.clone(), s.den.clone());
    let mut terms = Vec::new();
    while !q.is_zero() {
        let (m, rest) = p.div_rem(&q);
        let m = m
            .to_u64()
            .ok_or_else(|| Error::Domain(format!("continued fraction term of {s} exceeds u64")))?;
        terms.push(m);
        p = std::mem::replace(&mut q, rest);
    }
    Ok(ContinuedFraction { terms })
}

pub fn cf_value(cf: &ContinuedFraction) -> Slope {
    // Evaluate from the tail: x = 1/(m_i + x).
    let (mut num, mut den) = (BigInt::zero(), BigInt::one());
    for &m in cf.terms.iter().rev() {
        let new_den = BigInt::from(m) * &den + &num;
        num = std::mem::replace(&mut den, new_den);
    }
    Slope::new(num, den).expect("positive denominator")
}

/// Representative of `s` under `s ↦ ±s + 2k`, returned as
/// `(sign * s + 2k, k, sign)` with the result in `[0, 1]` (or `∞`).
/// Slopes already in `[0, 1]` come back unchanged with `k = 0, sign = +1`.
pub fn normalize_into_unit(s: &Slope) -> (Slope, BigInt, i8) {
    if s.is_infinite() {
        return (s.clone(), BigInt::zero(), 1);
    }
    let two = BigInt::from(2);
    let half_floor = s.num.div_floor(&(&s.den * &two));
    let shifted = s.add_integer(&(-&two * &half_floor));
    if shifted.num <= shifted.den {
        (shifted, -half_floor, 1)
    } else {
        let k = BigInt::one() + &half_floor;
        (s.neg().add_integer(&(&two * &k)), k, -1)
    }
}
