//! Decision procedures for the even Heckoid group `⟨a, b | u_r^n⟩`:
//! null-homotopy of the loop of slope `s`, existence of upper-meridian-pair
//! preserving epimorphisms onto it, and exhaustive scans that tie the orbit
//! reduction to the run-length patterns.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;

use crate::cancellation::{forbidden_patterns, pattern_hit, PatternHit, PiecePattern};
use crate::error::{Error, Result};
use crate::farey::{orbit_bfs_oracle, FundamentalIntervals, GeneratorWord, Reducer, SlopeClass};
use crate::slope::{cf_from_slope, normalize_into_unit, ContinuedFraction, Slope};
use crate::words::{relator_word, s_decomposition, SDecomposition, MAX_WORD_DENOMINATOR};

fn map_ordered<T: Sync, U: Send>(items: &[T], f: impl Fn(&T) -> U + Sync + Send) -> Vec<U> {
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        items.par_iter().map(f).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        items.iter().map(f).collect()
    }
}

/// Reduced fractions `q/p` in `[0, 1]` with `1 <= p <= max_denominator`,
/// ascending.
pub fn unit_slopes(max_denominator: u64) -> Vec<Slope> {
    let mut out: Vec<(u64, u64)> = (1..=max_denominator)
        .flat_map(|p| (0..=p).filter(move |&q| q.gcd(&p) == 1).map(move |q| (q, p)))
        .collect();
    out.sort_by(|&(q1, p1), &(q2, p2)| (q1 as u128 * p2 as u128).cmp(&(q2 as u128 * p1 as u128)));
    out.into_iter().map(|(q, p)| Slope::new(q, p).expect("p >= 1")).collect()
}

/// Fixed `(r, n)` with everything the decision procedures reuse.
///
/// A non-integral `r` is moved into `(0, 1)` by an integer translation `t`;
/// every query slope `s` is moved by the same `t`, which conjugates the
/// orbit of `∞` for the original `r` onto the one for the normalized `r`.
#[derive(Clone, Debug)]
pub struct HeckoidContext {
    input_r: Slope,
    r: Slope,
    n: u32,
    translation: BigInt,
    cf: ContinuedFraction,
    decomposition: SDecomposition,
    patterns: PiecePattern,
    reducer: Reducer,
}

pub fn make_context(r: &Slope, n: u32) -> Result<HeckoidContext> {
    if r.is_infinite() {
        return Err(Error::Domain("r must be rational".into()));
    }
    if r.is_integer() {
        return Err(Error::Unsupported(format!("integral r = {r}")));
    }
    if n < 2 {
        return Err(Error::Unsupported(format!("index n = {n}; only n >= 2 is covered")));
    }
    let translation = -r.floor().expect("finite");
    let normalized = r.add_integer(&translation);
    Ok(HeckoidContext {
        input_r: r.clone(),
        cf: cf_from_slope(&normalized)?,
        decomposition: s_decomposition(&normalized)?,
        patterns: forbidden_patterns(&normalized, n)?,
        reducer: Reducer::new(&normalized, n)?,
        r: normalized,
        n,
        translation,
    })
}

impl HeckoidContext {
    /// `r` as given to [`make_context`].
    pub fn input_r(&self) -> &Slope {
        &self.input_r
    }

    /// `r` translated into `(0, 1)`.
    pub fn r(&self) -> &Slope {
        &self.r
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    /// Integer added to `r` (and to every query slope).
    pub fn translation(&self) -> &BigInt {
        &self.translation
    }

    pub fn continued_fraction(&self) -> &ContinuedFraction {
        &self.cf
    }

    pub fn intervals(&self) -> &FundamentalIntervals {
        self.reducer.intervals()
    }

    pub fn decomposition(&self) -> &SDecomposition {
        &self.decomposition
    }

    pub fn patterns(&self) -> &PiecePattern {
        &self.patterns
    }

    pub fn reducer(&self) -> &Reducer {
        &self.reducer
    }

    fn framed(&self, s: &Slope) -> Slope {
        s.add_integer(&self.translation)
    }

    fn unframed(&self, s: &Slope) -> Slope {
        s.add_integer(&-&self.translation)
    }

    /// Forbidden-pattern check on `u_{s'}` where `s'` is `s` (already in the
    /// normalized frame) moved into `[0, 1]` by `s ↦ ±s + 2k`. `None` when
    /// `u_{s'}` degenerates (`s' ∈ {∞, 0, 1}`) or is too long to build.
    fn pattern_check(&self, s: &Slope) -> Result<Option<Option<PatternHit>>> {
        let (unit, _, _) = normalize_into_unit(s);
        if unit.is_infinite() || unit.is_integer() {
            return Ok(None);
        }
        if unit.denom().to_u64().is_none_or(|p| p > MAX_WORD_DENOMINATOR) {
            return Ok(None);
        }
        pattern_hit(&relator_word(&unit)?, &self.patterns).map(Some)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Method {
    FareyReduction,
    /// Reserved for verdicts settled by the pattern test alone; the pattern
    /// test only ever rules triviality out, and the reduction always runs.
    PatternCertificate,
    Both,
}

/// Verdict on whether the loop of slope `s` is null-homotopic.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DecisionReport {
    pub r: Slope,
    pub n: u32,
    pub s: Slope,
    pub verdict: bool,
    /// Canonical representative, in the same frame as `s`.
    pub canonical: Slope,
    /// Generators carrying `s + translation` to `canonical + translation`.
    pub witness: GeneratorWord,
    pub method: Method,
    pub consistent: bool,
    #[serde(skip_serializing_if = "BigInt::is_zero", serialize_with = "serialize_bigint")]
    pub translation: BigInt,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub pattern: Option<PatternHit>,
}

fn serialize_bigint<S: serde::Serializer>(x: &BigInt, ser: S) -> std::result::Result<S::Ok, S::Error> {
    match x.to_i64() {
        Some(v) => ser.serialize_i64(v),
        None => ser.serialize_str(&x.to_string()),
    }
}

pub fn is_null_homotopic(ctx: &HeckoidContext, s: &Slope) -> Result<DecisionReport> {
    let framed = ctx.framed(s);
    let reduction = ctx.reducer.reduce(&framed)?;
    let verdict = reduction.s0.is_infinite();
    let (method, pattern, consistent) = match ctx.pattern_check(&framed)? {
        None => (Method::FareyReduction, None, true),
        // A trivial verdict without the forced pattern would contradict the
        // necessary condition.
        Some(hit) => (Method::Both, hit.clone(), !verdict || hit.is_some()),
    };
    Ok(DecisionReport {
        r: ctx.input_r.clone(),
        n: ctx.n,
        s: s.clone(),
        verdict,
        canonical: ctx.unframed(&reduction.s0),
        witness: reduction.witness,
        method,
        consistent,
        translation: ctx.translation.clone(),
        pattern,
    })
}

/// Canonical representative of the orbit of `s`, in the frame of the input
/// `r`.
pub fn canonical_class(ctx: &HeckoidContext, s: &Slope) -> Result<Slope> {
    Ok(ctx.unframed(&ctx.reducer.reduce(&ctx.framed(s))?.s0))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Disjunct {
    S,
    SPlusOne,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EpimorphismReport {
    pub s: Slope,
    pub verdict: bool,
    /// First slope among `s`, `s + 1` found in the orbit of `∞`.
    pub via: Option<Disjunct>,
    pub witness: Option<GeneratorWord>,
    pub consistent: bool,
}

pub fn epimorphism_exists(ctx: &HeckoidContext, s: &Slope) -> Result<EpimorphismReport> {
    let direct = is_null_homotopic(ctx, s)?;
    let shifted = if direct.verdict { None } else { Some(is_null_homotopic(ctx, &s.add_integer(&BigInt::one()))?) };
    let (via, witness) = match (&direct, &shifted) {
        (d, _) if d.verdict => (Some(Disjunct::S), Some(d.witness.clone())),
        (_, Some(sh)) if sh.verdict => (Some(Disjunct::SPlusOne), Some(sh.witness.clone())),
        _ => (None, None),
    };
    Ok(EpimorphismReport {
        s: s.clone(),
        verdict: via.is_some(),
        via,
        witness,
        consistent: direct.consistent && shifted.as_ref().is_none_or(|sh| sh.consistent),
    })
}

/// Slopes `s ∈ [0, 1)` with denominator at most `max_denominator` admitting
/// an epimorphism, ascending.
pub fn enumerate_epimorphism_slopes(ctx: &HeckoidContext, max_denominator: u64) -> Result<Vec<Slope>> {
    let mut candidates = unit_slopes(max_denominator);
    candidates.pop(); // 1/1
    let verdicts = map_ordered(&candidates, |s| epimorphism_exists(ctx, s).map(|rep| rep.verdict));
    let mut out = Vec::new();
    for (s, v) in candidates.into_iter().zip(verdicts) {
        if v? {
            out.push(s);
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PatternScanReport {
    pub r: Slope,
    pub n: u32,
    pub patterns: PiecePattern,
    pub scanned: usize,
    pub violations: Vec<Slope>,
}

impl PatternScanReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Every `s ≠ 0` in `I1 ∪ I2` (normalized frame) with denominator at most
/// `max_denominator` whose `CS(s)` contains a forbidden pattern.
pub fn scan_interval_patterns(ctx: &HeckoidContext, max_denominator: u64) -> Result<PatternScanReport> {
    let admissible: Vec<Slope> = unit_slopes(max_denominator)
        .into_iter()
        .filter(|s| !s.numer().is_zero())
        .filter(|s| matches!(ctx.reducer.classify(s), SlopeClass::InI1 | SlopeClass::InI2))
        .collect();
    let hits = map_ordered(&admissible, |s| ctx.pattern_check(s));
    let mut violations = Vec::new();
    for (s, hit) in admissible.iter().zip(hits) {
        if let Some(Some(_)) = hit? {
            violations.push(s.clone());
        }
    }
    Ok(PatternScanReport { r: ctx.r.clone(), n: ctx.n, patterns: ctx.patterns.clone(), scanned: admissible.len(), violations })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Side {
    Orbit,
    Interval,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Inconsistency {
    pub s: Slope,
    pub side: Side,
    pub null_homotopic: bool,
    /// `None` when the pattern test does not apply to `u_s`.
    pub pattern_found: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CrossCheckReport {
    pub r: Slope,
    pub n: u32,
    pub orbit_checked: usize,
    pub interval_checked: usize,
    pub inconsistencies: Vec<Inconsistency>,
}

impl CrossCheckReport {
    pub fn passed(&self) -> bool {
        self.inconsistencies.is_empty()
    }
}

/// Two-sided check in the normalized frame. Orbit points from the
/// breadth-first oracle (depth `bfs_depth`, denominators up to
/// `orbit_max_denominator`) must be trivial and show a forced pattern;
/// slopes of `I(r;n) ∪ {r}` with denominator up to
/// `interval_max_denominator` must be nontrivial and show none. The pattern
/// test is skipped where `u_s` degenerates.
pub fn cross_check(
    ctx: &HeckoidContext,
    orbit_max_denominator: u64,
    interval_max_denominator: u64,
    bfs_depth: usize,
) -> Result<CrossCheckReport> {
    let check = |s: &Slope, side: Side| -> Result<Option<Inconsistency>> {
        let trivial = ctx.reducer.in_orbit_of_infinity(s)?;
        let found = ctx.pattern_check(s)?.map(|hit| hit.is_some());
        let expected = side == Side::Orbit;
        let ok = trivial == expected && found.is_none_or(|f| f == expected);
        Ok((!ok).then(|| Inconsistency { s: s.clone(), side, null_homotopic: trivial, pattern_found: found }))
    };
    let orbit = orbit_bfs_oracle(&ctx.r, ctx.n, bfs_depth, orbit_max_denominator)?;
    let interval: Vec<Slope> = unit_slopes(interval_max_denominator)
        .into_iter()
        .filter(|s| matches!(ctx.reducer.classify(s), SlopeClass::InI1 | SlopeClass::InI2 | SlopeClass::IsR))
        .collect();
    let mut inconsistencies = Vec::new();
    for found in map_ordered(&orbit, |s| check(s, Side::Orbit)) {
        inconsistencies.extend(found?);
    }
    for found in map_ordered(&interval, |s| check(s, Side::Interval)) {
        inconsistencies.extend(found?);
    }
    Ok(CrossCheckReport {
        r: ctx.r.clone(),
        n: ctx.n,
        orbit_checked: orbit.len(),
        interval_checked: interval.len(),
        inconsistencies,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sl(s: &str) -> Slope {
        s.parse().unwrap()
    }

    fn ctx(r: &str, n: u32) -> HeckoidContext {
        make_context(&sl(r), n).unwrap()
    }

    #[test]
    fn contexts() {
        let c = ctx("13/10", 2);
        assert_eq!(c.r(), &sl("3/10"));
        assert_eq!(c.translation(), &BigInt::from(-1));
        assert!(matches!(make_context(&sl("1"), 2), Err(Error::Unsupported(_))));
        assert!(matches!(make_context(&sl("1/3"), 1), Err(Error::Unsupported(_))));
        assert!(matches!(make_context(&sl("inf"), 2), Err(Error::Domain(_))));
    }

    #[test]
    fn unit_slope_listing() {
        let got: Vec<String> = unit_slopes(3).iter().map(|s| s.to_string()).collect();
        assert_eq!(got, ["0", "1/3", "1/2", "2/3", "1"]);
    }

    #[test]
    fn null_homotopy_examples() {
        let c = ctx("2/5", 2);
        let rep = is_null_homotopic(&c, &sl("41/100")).unwrap();
        assert!(rep.verdict && rep.consistent);
        assert_eq!(rep.method, Method::Both);
        assert!(rep.pattern.is_some());
        let rep = is_null_homotopic(&c, &sl("1/3")).unwrap();
        assert!(!rep.verdict && rep.consistent);
        let rep = is_null_homotopic(&c, &sl("inf")).unwrap();
        assert!(rep.verdict);
        assert_eq!(rep.method, Method::FareyReduction);
        assert!(!is_null_homotopic(&c, &sl("2/5")).unwrap().verdict);
    }

    #[test]
    fn canonical_examples() {
        assert_eq!(canonical_class(&ctx("3/10", 2), &sl("7/23")).unwrap(), sl("5/17"));
        assert_eq!(canonical_class(&ctx("3/10", 2), &sl("3/10")).unwrap(), sl("3/10"));
        assert_eq!(canonical_class(&ctx("2/5", 2), &sl("41/100")).unwrap(), sl("inf"));
        // Translated context: answers come back in the input frame.
        assert_eq!(canonical_class(&ctx("13/10", 2), &sl("30/23")).unwrap(), sl("22/17"));
    }

    #[test]
    fn epimorphism_examples() {
        let c = ctx("2/5", 2);
        let rep = epimorphism_exists(&c, &sl("41/100")).unwrap();
        assert_eq!(rep.via, Some(Disjunct::S));
        let rep = epimorphism_exists(&c, &sl("-59/100")).unwrap();
        assert_eq!(rep.via, Some(Disjunct::SPlusOne));
        assert!(!epimorphism_exists(&c, &sl("1/3")).unwrap().verdict);
    }

    #[test]
    fn enumeration() {
        let c = ctx("2/5", 2);
        let all = enumerate_epimorphism_slopes(&c, 100).unwrap();
        assert!(all.contains(&sl("41/100")));
        assert!(all.windows(2).all(|w| w[0] < w[1]));
        assert!(!all.contains(&sl("0")));
        assert!(enumerate_epimorphism_slopes(&c, 1).unwrap().is_empty());
        let small = enumerate_epimorphism_slopes(&c, 5).unwrap();
        assert!(!small.contains(&sl("1/3")) && !small.contains(&sl("2/5")));
    }

    #[test]
    fn interval_pattern_scan_small() {
        for (r, n) in [("3/10", 2), ("1/3", 2), ("2/5", 2)] {
            let rep = scan_interval_patterns(&ctx(r, n), 50).unwrap();
            assert!(rep.passed(), "{r} {n}: {:?}", rep.violations);
        }
        assert_eq!(scan_interval_patterns(&ctx("2/5", 2), 50).unwrap().scanned, 741);
        let rep = scan_interval_patterns(&ctx("1/3", 2), 50).unwrap();
        assert_eq!(rep.patterns.patterns, vec![crate::words::SSeq(vec![3, 3])]);
    }

    #[test]
    fn torsion_relator_matches_its_own_pattern() {
        // CS(1/3) = ((3,3)) is itself the n = 2 pattern, so the interval side
        // of the cross check flags s = r even though u_r is nontrivial.
        let rep = cross_check(&ctx("1/3", 2), 200, 40, 6).unwrap();
        assert_eq!(rep.inconsistencies.len(), 1);
        assert_eq!(rep.inconsistencies[0].s, sl("1/3"));
        assert_eq!(rep.inconsistencies[0].pattern_found, Some(true));
        assert!(!rep.inconsistencies[0].null_homotopic);
    }

    #[test]
    fn cross_check_small() {
        for (r, n) in [("3/10", 2), ("2/5", 2)] {
            let rep = cross_check(&ctx(r, n), 200, 40, 6).unwrap();
            assert!(rep.passed(), "{r} {n}: {:?}", rep.inconsistencies);
            assert!(rep.interval_checked > 1);
        }
        // P(∞) = 41/100 is the first finite orbit point for 2/5.
        assert!(cross_check(&ctx("2/5", 2), 200, 40, 6).unwrap().orbit_checked > 1);
    }

    #[test]
    fn report_json_shape() {
        let rep = is_null_homotopic(&ctx("3/10", 2), &sl("7/23")).unwrap();
        let json = serde_json::to_value(&rep).unwrap();
        assert_eq!(
            json,
            serde_json::json!({
                "r": "3/10", "n": 2, "s": "7/23", "verdict": false, "canonical": "5/17",
                "witness": "P(-1)", "method": "Both", "consistent": true
            })
        );
    }
}
