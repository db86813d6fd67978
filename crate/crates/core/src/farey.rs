//! The group generated by the reflections `s ↦ 2k - s` (the edges of the
//! Farey tessellation ending at `∞`) and the parabolic of translation length
//! `2n` centred on `r`, acting on the boundary slopes.
//!
//! [`reduce_slope`] carries any slope into the fundamental set
//! `I(r;n) ∪ {∞, r}` and returns the generator word that does it;
//! [`orbit_bfs`] is a brute-force enumeration of bounded orbits used to check
//! the reduction independently.

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{domain, Error, Result};
use crate::slope::{cf_from_slope, cf_value, normalize_into_unit, ContinuedFraction, Slope};

/// Integer matrix `(a b; c d)` with determinant ±1, acting by
/// `s ↦ (a s + b)/(c s + d)`. Equality is projective.
#[derive(Clone, Debug)]
pub struct ExtendedMoebius {
    pub a: BigInt,
    pub b: BigInt,
    pub c: BigInt,
    pub d: BigInt,
}

impl ExtendedMoebius {
    pub fn new(a: impl Into<BigInt>, b: impl Into<BigInt>, c: impl Into<BigInt>, d: impl Into<BigInt>) -> Result<Self> {
        let m = ExtendedMoebius { a: a.into(), b: b.into(), c: c.into(), d: d.into() };
        if !m.det().abs().is_one() {
            return domain(format!("determinant must be +1 or -1, got {}", m.det()));
        }
        Ok(m)
    }

    pub fn identity() -> Self {
        ExtendedMoebius { a: BigInt::one(), b: BigInt::zero(), c: BigInt::zero(), d: BigInt::one() }
    }

    pub fn det(&self) -> BigInt {
        &self.a * &self.d - &self.b * &self.c
    }

    pub fn trace(&self) -> BigInt {
        &self.a + &self.d
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &ExtendedMoebius) -> ExtendedMoebius {
        ExtendedMoebius {
            a: &self.a * &other.a + &self.b * &other.c,
            b: &self.a * &other.b + &self.b * &other.d,
            c: &self.c * &other.a + &self.d * &other.c,
            d: &self.c * &other.b + &self.d * &other.d,
        }
    }

    /// Inverse up to the projective sign.
    pub fn inverse(&self) -> ExtendedMoebius {
        ExtendedMoebius { a: self.d.clone(), b: -&self.b, c: -&self.c, d: self.a.clone() }
    }

    pub fn apply(&self, s: &Slope) -> Slope {
        apply(self, s)
    }
}

impl PartialEq for ExtendedMoebius {
    fn eq(&self, other: &Self) -> bool {
        let same = self.a == other.a && self.b == other.b && self.c == other.c && self.d == other.d;
        let negated = self.a == -&other.a && self.b == -&other.b && self.c == -&other.c && self.d == -&other.d;
        same || negated
    }
}

impl Eq for ExtendedMoebius {}

impl fmt::Display for ExtendedMoebius {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}; {}, {})", self.a, self.b, self.c, self.d)
    }
}

/// Fractional-linear action; `c s + d = 0` gives `∞`.
pub fn apply(g: &ExtendedMoebius, s: &Slope) -> Slope {
    let (q, p) = (s.numer(), s.denom());
    Slope::new(&g.a * q + &g.b * p, &g.c * q + &g.d * p).expect("determinant ±1 keeps the image projective")
}

/// Reflection in the Farey edge `⟨k, ∞⟩`: `s ↦ 2k - s`.
pub fn reflect_at(k: impl Into<BigInt>) -> ExtendedMoebius {
    let k = k.into();
    ExtendedMoebius { a: -BigInt::one(), b: BigInt::from(2) * k, c: BigInt::zero(), d: BigInt::one() }
}

fn check_r_n(r: &Slope, n: u32) -> Result<()> {
    if n < 2 {
        return domain(format!("index n must be at least 2, got {n}"));
    }
    if r.is_infinite() || r.is_integer() {
        return domain(format!("r must be a non-integral rational, got {r}"));
    }
    if !r.in_unit_interval() {
        return domain(format!("r must lie in (0,1), got {r}"));
    }
    Ok(())
}

/// `(1 + 2npq, -2nq²; 2np², 1 - 2npq)` for `r = q/p`, unoriented.
fn raw_parabolic(r: &Slope, n: u32) -> ExtendedMoebius {
    let (q, p) = (r.numer(), r.denom());
    let two_n = BigInt::from(2 * n);
    let npq = &two_n * p * q;
    ExtendedMoebius {
        a: BigInt::one() + &npq,
        b: -(&two_n * q * q),
        c: &two_n * p * p,
        d: BigInt::one() - &npq,
    }
}

/// Generator of the parabolic group centred on `r`, oriented so that it maps
/// the interval endpoint `r1` onto `r2`.
pub fn parabolic_generator(r: &Slope, n: u32) -> Result<ExtendedMoebius> {
    let iv = interval_endpoints(r, n)?;
    let g = raw_parabolic(r, n);
    if apply(&g, &iv.r1) == iv.r2 {
        return Ok(g);
    }
    let inv = g.inverse();
    if apply(&inv, &iv.r1) == iv.r2 {
        return Ok(inv);
    }
    Err(Error::Internal {
        message: format!("neither parabolic orientation at r={r}, n={n} pairs the interval endpoints"),
        trace: format!("r1={} r2={} g={g}", iv.r1, iv.r2),
    })
}

/// `g^e` for a parabolic `g` (so `(g - 1)² = 0` and `g^e = 1 + e (g - 1)`).
fn parabolic_power(g: &ExtendedMoebius, e: &BigInt) -> ExtendedMoebius {
    ExtendedMoebius {
        a: BigInt::one() + e * (&g.a - 1),
        b: e * &g.b,
        c: e * &g.c,
        d: BigInt::one() + e * (&g.d - 1),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Generator {
    ReflectAt(BigInt),
    ParabolicPower(BigInt),
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Generator::ReflectAt(k) => write!(f, "R({k})"),
            Generator::ParabolicPower(e) => write!(f, "P({e})"),
        }
    }
}

/// Generators applied left to right: the first entry acts first.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct GeneratorWord(pub Vec<Generator>);

impl GeneratorWord {
    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    /// The composed map, with `P` meaning `parabolic`.
    pub fn to_moebius(&self, parabolic: &ExtendedMoebius) -> ExtendedMoebius {
        self.0.iter().fold(ExtendedMoebius::identity(), |acc, g| {
            let step = match g {
                Generator::ReflectAt(k) => reflect_at(k.clone()),
                Generator::ParabolicPower(e) => parabolic_power(parabolic, e),
            };
            step.compose(&acc)
        })
    }
}

impl fmt::Display for GeneratorWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(Generator::to_string).collect();
        write!(f, "{}", parts.join(" "))
    }
}

impl FromStr for GeneratorWord {
    type Err = Error;

    fn from_str(s: &str) -> Result<GeneratorWord> {
        s.split_whitespace()
            .map(|tok| {
                let bad = || Error::Parse(format!("bad generator {tok:?}; expected R(k) or P(e)"));
                let (tag, rest) = tok.split_at(1);
                let arg: BigInt = rest
                    .strip_prefix('(')
                    .and_then(|t| t.strip_suffix(')'))
                    .ok_or_else(bad)?
                    .parse()
                    .map_err(|_| bad())?;
                match tag {
                    "R" => Ok(Generator::ReflectAt(arg)),
                    "P" if !arg.is_zero() => Ok(Generator::ParabolicPower(arg)),
                    _ => Err(bad()),
                }
            })
            .collect::<Result<Vec<_>>>()
            .map(GeneratorWord)
    }
}

impl Serialize for GeneratorWord {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// Boundary data of the fundamental domain: `I1` runs from 0 to `r1`, `I2`
/// from `r2` to 1, and exactly one of `r1`, `r2` belongs to its interval.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FundamentalIntervals {
    pub r1: Slope,
    pub r2: Slope,
    pub i1_closed_at_r1: bool,
    pub i2_closed_at_r2: bool,
    /// `r ≡ ±1/p (mod 1)`: a Farey edge joins `r` to 0 or to 1.
    pub degenerate: bool,
}

/// Endpoints `r1 < r < r2`: with `r = [m_1, ..., m_k]`,
/// `[m_1, ..., m_k, 2n-2]` and `[m_1, ..., m_k - 1, 2]`, assigned to `r1`/`r2`
/// by the parity of `k`. For odd `k` the interval `I1 = [0, r1)` is open at
/// `r1` and `I2 = [r2, 1]` closed; for even `k`, `I1 = [0, r1]` and `I2 = (r2, 1]`.
pub fn interval_endpoints(r: &Slope, n: u32) -> Result<FundamentalIntervals> {
    check_r_n(r, n)?;
    let cf = cf_from_slope(r)?;
    let terms = cf.terms();
    let k = terms.len();

    let mut extended = terms.to_vec();
    extended.push(2 * n as u64 - 2);
    let mut shortened = terms.to_vec();
    shortened[k - 1] -= 1;
    shortened.push(2);
    let extended = cf_value(&ContinuedFraction::new(extended)?);
    let shortened = cf_value(&ContinuedFraction::new(shortened)?);

    let (r1, r2) = if k % 2 == 1 { (extended, shortened) } else { (shortened, extended) };
    debug_assert!(r1 < *r && *r < r2);

    let q = r.numer();
    let p = r.denom();
    let degenerate = q.is_one() || *q == p - 1;
    Ok(FundamentalIntervals { r1, r2, i1_closed_at_r1: k % 2 == 0, i2_closed_at_r2: k % 2 == 1, degenerate })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum SlopeClass {
    InI1,
    InI2,
    IsR,
    IsInfinity,
    /// Inside `(r1, r2)` but not `r`, or the excluded endpoint.
    Gap,
    OutsideUnit,
}

impl SlopeClass {
    /// Whether the slope is one of the canonical representatives.
    pub fn is_canonical(self) -> bool {
        !matches!(self, SlopeClass::Gap | SlopeClass::OutsideUnit)
    }
}

fn classify_with(s: &Slope, r: &Slope, iv: &FundamentalIntervals) -> SlopeClass {
    if s.is_infinite() {
        return SlopeClass::IsInfinity;
    }
    if s == r {
        return SlopeClass::IsR;
    }
    if !s.in_unit_interval() {
        return SlopeClass::OutsideUnit;
    }
    if *s < iv.r1 || (*s == iv.r1 && iv.i1_closed_at_r1) {
        SlopeClass::InI1
    } else if *s > iv.r2 || (*s == iv.r2 && iv.i2_closed_at_r2) {
        SlopeClass::InI2
    } else {
        SlopeClass::Gap
    }
}

pub fn classify_slope(s: &Slope, r: &Slope, n: u32) -> Result<SlopeClass> {
    let iv = interval_endpoints(r, n)?;
    Ok(classify_with(s, r, &iv))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Reduction {
    pub s0: Slope,
    pub class: SlopeClass,
    pub witness: GeneratorWord,
}

/// Precomputed data for repeated reductions with fixed `(r, n)`.
#[derive(Clone, Debug)]
pub struct Reducer {
    r: Slope,
    n: u32,
    intervals: FundamentalIntervals,
    parabolic: ExtendedMoebius,
    /// `conj` maps `∞` to `r`; `conj⁻¹ ∘ parabolic ∘ conj` is `x ↦ x + shift`.
    conj_inv: ExtendedMoebius,
    shift: BigInt,
    /// Images of `r1`, `r2` under `conj⁻¹`.
    c1: Slope,
    c2: Slope,
}

fn floor_ratio(num: &BigInt, den: &BigInt) -> BigInt {
    num.div_floor(den)
}

fn ceil_ratio(num: &BigInt, den: &BigInt) -> BigInt {
    -((-num).div_floor(den))
}

impl Reducer {
    pub fn new(r: &Slope, n: u32) -> Result<Reducer> {
        let intervals = interval_endpoints(r, n)?;
        let parabolic = parabolic_generator(r, n)?;
        let (q, p) = (r.numer(), r.denom());
        // q*y - p*x = 1
        let eg = q.extended_gcd(p);
        debug_assert!(eg.gcd.is_one());
        let (y, x) = (eg.x, -eg.y);
        let conj = ExtendedMoebius { a: q.clone(), b: x, c: p.clone(), d: y };
        let conj_inv = conj.inverse();
        let translation = conj_inv.compose(&parabolic).compose(&conj);
        debug_assert!(translation.c.is_zero() && translation.a == translation.d);
        let shift = &translation.b / &translation.d;
        let c1 = apply(&conj_inv, &intervals.r1);
        let c2 = apply(&conj_inv, &intervals.r2);
        debug_assert_eq!(c2, c1.add_integer(&shift));
        Ok(Reducer { r: r.clone(), n, intervals, parabolic, conj_inv, shift, c1, c2 })
    }

    pub fn r(&self) -> &Slope {
        &self.r
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn intervals(&self) -> &FundamentalIntervals {
        &self.intervals
    }

    pub fn parabolic(&self) -> &ExtendedMoebius {
        &self.parabolic
    }

    pub fn classify(&self, s: &Slope) -> SlopeClass {
        classify_with(s, &self.r, &self.intervals)
    }

    /// Parabolic exponent moving a gap slope out of `(r1, r2)` onto the
    /// included side of the paired endpoints.
    fn gap_exponent(&self, s: &Slope) -> BigInt {
        let x = apply(&self.conj_inv, s);
        debug_assert!(!x.is_infinite());
        let offset = |c: &Slope| {
            // (x - c) / shift as num/den with den > 0
            let num = x.numer() * c.denom() - c.numer() * x.denom();
            let den = x.denom() * c.denom() * &self.shift;
            if den.is_negative() {
                (-num, -den)
            } else {
                (num, den)
            }
        };
        if self.intervals.i1_closed_at_r1 {
            let (num, den) = offset(&self.c1);
            -floor_ratio(&num, &den)
        } else {
            let (num, den) = offset(&self.c2);
            -ceil_ratio(&num, &den)
        }
    }

    pub fn reduce(&self, s: &Slope) -> Result<Reduction> {
        let cap = 10 * (s.stern_brocot_depth() + 2);
        let mut witness = Vec::new();
        let mut current = s.clone();
        let mut loops = BigInt::zero();
        let mut trace = Vec::new();
        loop {
            loops += 1;
            if loops > cap {
                return Err(Error::Internal {
                    message: format!("reduction of {s} for r={}, n={} exceeded {cap} loops", self.r, self.n),
                    trace: trace.join(" -> "),
                });
            }
            let (unit, k, sign) = normalize_into_unit(&current);
            if sign < 0 {
                witness.push(Generator::ReflectAt(k));
            } else if !k.is_zero() {
                witness.push(Generator::ReflectAt(BigInt::zero()));
                witness.push(Generator::ReflectAt(k));
            }
            trace.push(unit.to_string());
            let class = self.classify(&unit);
            if class.is_canonical() {
                return Ok(Reduction { s0: unit, class, witness: GeneratorWord(witness) });
            }
            let e = self.gap_exponent(&unit);
            debug_assert!(!e.is_zero());
            current = apply(&parabolic_power(&self.parabolic, &e), &unit);
            witness.push(Generator::ParabolicPower(e));
        }
    }

    pub fn in_orbit_of_infinity(&self, s: &Slope) -> Result<bool> {
        Ok(self.reduce(s)?.s0.is_infinite())
    }
}

/// Canonical representative `s0 ∈ I(r;n) ∪ {∞, r}` of the orbit of `s`,
/// and the generator word carrying `s` to it.
pub fn reduce_slope(s: &Slope, r: &Slope, n: u32) -> Result<Reduction> {
    Reducer::new(r, n)?.reduce(s)
}

pub fn in_orbit_of_infinity(s: &Slope, r: &Slope, n: u32) -> Result<bool> {
    Reducer::new(r, n)?.in_orbit_of_infinity(s)
}

/// Reflections used by the brute-force orbit search: `R(k)` for `|k| <= 1`.
pub const ORBIT_REFLECT_BOUND: i64 = 1;

/// All slopes reachable from `start` by at most `depth` generators from
/// `{R(k) : |k| <= reflect_bound} ∪ {P, P⁻¹}`, keeping those with
/// denominator `<= max_denominator` (`∞` counts as denominator 0).
/// Sorted ascending with `∞` last.
pub fn orbit_bfs(
    start: &Slope,
    r: &Slope,
    n: u32,
    depth: usize,
    max_denominator: u64,
    reflect_bound: i64,
) -> Result<Vec<Slope>> {
    let g = parabolic_generator(r, n)?;
    let mut moves: Vec<ExtendedMoebius> = (-reflect_bound..=reflect_bound).map(reflect_at).collect();
    moves.push(g.inverse());
    moves.push(g);

    let mut seen: HashSet<Slope> = HashSet::from([start.clone()]);
    let mut frontier = vec![start.clone()];
    for _ in 0..depth {
        let mut next = Vec::new();
        for s in &frontier {
            for m in &moves {
                let t = apply(m, s);
                if seen.insert(t.clone()) {
                    next.push(t);
                }
            }
        }
        frontier = next;
    }
    let bound = BigInt::from(max_denominator);
    let mut out: Vec<Slope> = seen.into_iter().filter(|s| *s.denom() <= bound).collect();
    out.sort_by(Slope::total_cmp);
    Ok(out)
}

/// Bounded orbit of `∞`; every element is, by construction, in the orbit.
pub fn orbit_bfs_oracle(r: &Slope, n: u32, depth: usize, max_denominator: u64) -> Result<Vec<Slope>> {
    orbit_bfs(&Slope::infinity(), r, n, depth, max_denominator, ORBIT_REFLECT_BOUND)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sl(s: &str) -> Slope {
        s.parse().unwrap()
    }

    #[test]
    fn reflections() {
        assert_eq!(apply(&reflect_at(0), &sl("3/10")), sl("-3/10"));
        assert_eq!(apply(&reflect_at(1), &sl("5/17")), sl("29/17"));
        assert_eq!(apply(&reflect_at(7), &sl("inf")), sl("inf"));
        assert_eq!(reflect_at(3).det(), BigInt::from(-1));
    }

    #[test]
    fn apply_basics() {
        assert_eq!(apply(&ExtendedMoebius::identity(), &sl("5/7")), sl("5/7"));
        let m = ExtendedMoebius::new(121, -36, 400, -119).unwrap();
        assert_eq!(apply(&m, &sl("5/17")), sl("7/23"));
        assert_eq!(apply(&ExtendedMoebius::new(-1, 0, 0, 1).unwrap(), &sl("inf")), sl("inf"));
        assert_eq!(apply(&ExtendedMoebius::new(1, 0, 1, 1).unwrap(), &sl("-1")), sl("inf"));
        assert!(ExtendedMoebius::new(2, 0, 0, 1).is_err());
    }

    #[test]
    fn projective_equality() {
        let m = ExtendedMoebius::new(1, 2, 0, 1).unwrap();
        let neg = ExtendedMoebius::new(-1, -2, 0, -1).unwrap();
        assert_eq!(m, neg);
        assert_ne!(m, ExtendedMoebius::identity());
    }

    #[test]
    fn parabolic_at_three_tenths() {
        let g = parabolic_generator(&sl("3/10"), 2).unwrap();
        assert_eq!(g, ExtendedMoebius::new(121, -36, 400, -119).unwrap());
        assert_eq!(apply(&g, &sl("5/17")), sl("7/23"));
    }

    #[test]
    fn parabolic_at_two_fifths() {
        let g = parabolic_generator(&sl("2/5"), 2).unwrap();
        assert_eq!(apply(&g, &sl("2/5")), sl("2/5"));
        assert_eq!(g.det(), BigInt::from(1));
        assert_eq!(g.trace().abs(), BigInt::from(2));
        let images = [apply(&g, &sl("inf")), apply(&g.inverse(), &sl("inf"))];
        assert!(images.contains(&sl("41/100")));
    }

    #[test]
    fn parabolic_rejects_integers() {
        assert!(parabolic_generator(&sl("1"), 2).is_err());
        assert!(parabolic_generator(&sl("0"), 2).is_err());
        assert!(parabolic_generator(&sl("1/2"), 1).is_err());
    }

    #[test]
    fn intervals_examples() {
        let iv = interval_endpoints(&sl("3/10"), 2).unwrap();
        assert_eq!((iv.r1.clone(), iv.r2.clone()), (sl("5/17"), sl("7/23")));
        assert!(iv.i1_closed_at_r1 && !iv.i2_closed_at_r2);

        let iv = interval_endpoints(&sl("2/5"), 2).unwrap();
        assert_eq!((iv.r1, iv.r2), (sl("3/8"), sl("5/12")));

        let iv = interval_endpoints(&sl("1/3"), 2).unwrap();
        assert_eq!((iv.r1.clone(), iv.r2.clone()), (sl("2/7"), sl("2/5")));
        assert!(!iv.i1_closed_at_r1 && iv.i2_closed_at_r2);
        assert!(iv.degenerate);
        assert!(!interval_endpoints(&sl("3/10"), 2).unwrap().degenerate);
        assert!(interval_endpoints(&sl("4/5"), 2).unwrap().degenerate);
    }

    #[test]
    fn classification() {
        let r = sl("3/10");
        assert_eq!(classify_slope(&sl("5/17"), &r, 2).unwrap(), SlopeClass::InI1);
        assert_eq!(classify_slope(&sl("7/23"), &r, 2).unwrap(), SlopeClass::Gap);
        assert_eq!(classify_slope(&sl("3/10"), &r, 2).unwrap(), SlopeClass::IsR);
        assert_eq!(classify_slope(&sl("inf"), &r, 2).unwrap(), SlopeClass::IsInfinity);
        assert_eq!(classify_slope(&sl("3/2"), &r, 2).unwrap(), SlopeClass::OutsideUnit);
        assert_eq!(classify_slope(&sl("1"), &r, 2).unwrap(), SlopeClass::InI2);
        assert_eq!(classify_slope(&sl("0"), &r, 2).unwrap(), SlopeClass::InI1);
        // odd k: r1 excluded, r2 included
        let r = sl("1/3");
        assert_eq!(classify_slope(&sl("2/7"), &r, 2).unwrap(), SlopeClass::Gap);
        assert_eq!(classify_slope(&sl("2/5"), &r, 2).unwrap(), SlopeClass::InI2);
    }

    #[test]
    fn reduce_examples() {
        let red = reduce_slope(&sl("inf"), &sl("3/10"), 2).unwrap();
        assert_eq!(red.s0, sl("inf"));
        assert!(red.witness.is_empty());

        let red = reduce_slope(&sl("7/23"), &sl("3/10"), 2).unwrap();
        assert_eq!(red.s0, sl("5/17"));
        assert_eq!(red.witness.to_string(), "P(-1)");

        let red = reduce_slope(&sl("41/100"), &sl("2/5"), 2).unwrap();
        assert_eq!(red.s0, sl("inf"));
        assert_eq!(red.witness.len(), 1);
        assert!(matches!(red.witness.0[0], Generator::ParabolicPower(_)));
    }

    #[test]
    fn orbit_membership() {
        let r = sl("2/5");
        assert!(in_orbit_of_infinity(&sl("41/100"), &r, 2).unwrap());
        assert!(!in_orbit_of_infinity(&sl("1/3"), &r, 2).unwrap());
        assert!(in_orbit_of_infinity(&sl("inf"), &r, 2).unwrap());
        assert!(!in_orbit_of_infinity(&sl("-59/100"), &r, 2).unwrap());
        assert!(in_orbit_of_infinity(&sl("-41/100"), &r, 2).unwrap());
    }

    #[test]
    fn witness_round_trip() {
        let w: GeneratorWord = "R(0) P(-1) R(1)".parse().unwrap();
        assert_eq!(w.to_string(), "R(0) P(-1) R(1)");
        assert_eq!("".parse::<GeneratorWord>().unwrap(), GeneratorWord::default());
        assert!("P(0)".parse::<GeneratorWord>().is_err());
        assert!("Q(1)".parse::<GeneratorWord>().is_err());
    }

    #[test]
    fn parabolic_powers_compose() {
        let g = parabolic_generator(&sl("2/5"), 3).unwrap();
        let g3 = g.compose(&g).compose(&g);
        assert_eq!(parabolic_power(&g, &BigInt::from(3)), g3);
        let gm2 = g.inverse().compose(&g.inverse());
        assert_eq!(parabolic_power(&g, &BigInt::from(-2)), gm2);
    }

    #[test]
    fn oracle_small_cases() {
        let r = sl("2/5");
        assert_eq!(orbit_bfs_oracle(&r, 2, 0, 100).unwrap(), vec![sl("inf")]);
        let orbit = orbit_bfs_oracle(&r, 2, 1, 100).unwrap();
        assert!(orbit.contains(&sl("41/100")));
        let red = Reducer::new(&r, 2).unwrap();
        for s in orbit_bfs_oracle(&r, 2, 4, 10_000).unwrap() {
            assert!(red.in_orbit_of_infinity(&s).unwrap(), "{s}");
        }
    }
}
