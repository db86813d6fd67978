//! Corpus-wide checks of the structural facts the decision procedures rely
//! on: the shape of `S(r)`, the `r̃` identity, the `(S1, S2, S1, S2)`
//! decomposition with its closed forms, and the small cancellation
//! conditions of the symmetrized relator.

use serde::Serialize;

use crate::cancellation::{min_piece_count_over_elements, relator_blocks, symmetrize, verify_c, verify_t4};
use crate::error::Result;
use crate::heckoid::unit_slopes;
use crate::slope::{cf_from_slope, Slope};
use crate::words::{
    cs_of_slope, cyclic_s_sequence, relator_word, s_decomposition, s_of_slope, t_sequence, reduced_fraction_tilde,
    CyclicSSeq, SDecomposition, Word,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Check {
    /// `|u_r| = 2p` and the terms of `S(r)` sum to it.
    Length,
    /// `(m, m)` for `r = 1/m`; otherwise terms in `{m, m+1}`, first `m+1`,
    /// last `m`, and no `(m, m)` (if `m_2 = 1`) or `(m+1, m+1)` (if `m_2 >= 2`).
    SequenceShape,
    /// `CS(r̃) = CT(r)`.
    TildeIdentity,
    /// `S1`, `S2` reassemble `S(r)`, are symmetric, have the right end
    /// terms, and each occurs exactly twice in `CS(r)`.
    Decomposition,
    /// The four case formulas for `S1`, `S2` in terms of `m`, `m_2` and the
    /// decomposition of `S(r̃)` reassemble `S(r)` read off `u_r`.
    ClosedForm,
    /// `(m+1, m+1)` inside `S1` when `m_2 = 1`; `(m, m)` inside `S2` when
    /// `m_2 >= 2` and `r ≠ 2/(2m+1)`.
    ForcedRuns,
}

impl Check {
    pub const ALL: [Check; 6] =
        [Check::Length, Check::SequenceShape, Check::TildeIdentity, Check::Decomposition, Check::ClosedForm, Check::ForcedRuns];
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Failure {
    pub r: Slope,
    pub check: Check,
    pub detail: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct LemmaReport {
    pub slopes: usize,
    /// Per check, how many slopes it applied to.
    pub applied: Vec<(Check, usize)>,
    pub failures: Vec<Failure>,
}

impl LemmaReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

type Outcome = std::result::Result<(), String>;

fn contains_pair(s: &[u64], x: u64) -> bool {
    s.windows(2).any(|w| w == [x, x])
}

fn expansion(r: &Slope) -> Vec<u64> {
    cf_from_slope(r).expect("corpus slopes lie in (0, 1]").terms().to_vec()
}

pub fn check_length(r: &Slope) -> Result<Outcome> {
    let p = r.denom().clone();
    let u = relator_word(r)?;
    let s = s_of_slope(r)?;
    let two_p = 2 * u64::try_from(&p).unwrap_or(u64::MAX);
    Ok(if u.len() as u64 != two_p {
        Err(format!("|u_r| = {}", u.len()))
    } else if s.sum() != two_p {
        Err(format!("S(r) = {s} sums to {}", s.sum()))
    } else {
        Ok(())
    })
}

pub fn check_sequence_shape(r: &Slope) -> Result<Outcome> {
    let cf = expansion(r);
    let m = cf[0];
    let s = s_of_slope(r)?;
    let t = s.terms();
    if cf.len() == 1 {
        return Ok(if t == [m, m] { Ok(()) } else { Err(format!("S(r) = {s}, expected ({m},{m})")) });
    }
    if let Some(x) = t.iter().find(|&&x| x != m && x != m + 1) {
        return Ok(Err(format!("S(r) = {s} has term {x}")));
    }
    if s.first() != Some(m + 1) || s.last() != Some(m) {
        return Ok(Err(format!("S(r) = {s} must begin with {} and end with {m}", m + 1)));
    }
    let doubled = if cf[1] == 1 { m } else { m + 1 };
    Ok(if contains_pair(t, doubled) { Err(format!("S(r) = {s} contains ({doubled},{doubled})")) } else { Ok(()) })
}

/// `None` when `r = 1/m`.
pub fn check_tilde_identity(r: &Slope) -> Result<Option<Outcome>> {
    if expansion(r).len() < 2 {
        return Ok(None);
    }
    let cs = cs_of_slope(&reduced_fraction_tilde(r)?)?;
    let ct = CyclicSSeq(t_sequence(r)?.0);
    Ok(Some(if cs == ct { Ok(()) } else { Err(format!("CS(r~) = {cs}, CT(r) = {ct}")) }))
}

pub fn check_decomposition(r: &Slope) -> Result<Outcome> {
    let m = expansion(r)[0];
    let SDecomposition { s1, s2 } = s_decomposition(r)?;
    let cs = cs_of_slope(r)?;
    let k1 = expansion(r).len() == 1;
    if s1.is_empty() != k1 {
        return Ok(Err(format!("S1 = {s1} empty iff r = 1/m")));
    }
    for (name, part, end) in [("S1", &s1, m + 1), ("S2", &s2, m)] {
        if part.is_empty() {
            continue;
        }
        if !part.is_symmetric() {
            return Ok(Err(format!("{name} = {part} is not symmetric")));
        }
        if part.first() != Some(end) || part.last() != Some(end) {
            return Ok(Err(format!("{name} = {part} must begin and end with {end}")));
        }
        let occ = cs.occurrences(part.terms());
        if occ != 2 {
            return Ok(Err(format!("{name} = {part} occurs {occ} times in CS(r) = {cs}")));
        }
    }
    Ok(Ok(()))
}

fn repeat(x: u64, t: u64) -> impl Iterator<Item = u64> {
    std::iter::repeat_n(x, t as usize)
}

/// `None` when `r = 1/m`.
pub fn check_closed_form(r: &Slope) -> Result<Option<Outcome>> {
    let cf = expansion(r);
    if cf.len() < 2 {
        return Ok(None);
    }
    let (m, m2, k) = (cf[0], cf[1], cf.len());
    let got = s_decomposition(r)?;
    let (s1, s2): (Vec<u64>, Vec<u64>) = if m2 == 1 && k == 3 {
        (repeat(m + 1, cf[2]).collect(), vec![m])
    } else if m2 >= 2 && k == 2 {
        (vec![m + 1], repeat(m, m2 - 1).collect())
    } else {
        // The t_i are indexed along S(r~) = (T1, T2, T1, T2); T(r) read off
        // S(r) agrees with it only up to rotation.
        let inner = s_decomposition(&reduced_fraction_tilde(r)?)?;
        let (t1, t2) = (inner.s1.terms(), inner.s2.terms());
        if m2 == 1 {
            let mut s1 = Vec::new();
            for (i, &x) in t1.iter().enumerate() {
                if i > 0 {
                    s1.push(m);
                }
                s1.extend(repeat(m + 1, x));
            }
            let mut s2 = vec![m];
            for &x in t2 {
                s2.extend(repeat(m + 1, x));
                s2.push(m);
            }
            (s1, s2)
        } else {
            let mut s1 = vec![m + 1];
            for &x in t2 {
                s1.extend(repeat(m, x));
                s1.push(m + 1);
            }
            let mut s2 = Vec::new();
            for (i, &x) in t1.iter().enumerate() {
                if i > 0 {
                    s2.push(m + 1);
                }
                s2.extend(repeat(m, x));
            }
            (s1, s2)
        }
    };
    let reassembled = [s1.as_slice(), s2.as_slice()].concat().repeat(2);
    let direct = s_of_slope(r)?;
    Ok(Some(if reassembled != direct.terms() {
        Err(format!("formula gives S1={s1:?} S2={s2:?}, which does not reassemble S(r) = {direct}"))
    } else if got.s1.terms() == s1 && got.s2.terms() == s2 {
        Ok(())
    } else {
        Err(format!("decomposition S1={} S2={}, formula gives S1={s1:?} S2={s2:?}", got.s1, got.s2))
    }))
}

/// `None` when `r = 1/m` or `r = 2/(2m+1)`.
pub fn check_forced_runs(r: &Slope) -> Result<Option<Outcome>> {
    let cf = expansion(r);
    if cf.len() < 2 || cf[1..] == [2] {
        return Ok(None);
    }
    let m = cf[0];
    let d = s_decomposition(r)?;
    let (name, part, x) = if cf[1] == 1 { ("S1", &d.s1, m + 1) } else { ("S2", &d.s2, m) };
    Ok(Some(if contains_pair(part.terms(), x) { Ok(()) } else { Err(format!("{name} = {part} lacks ({x},{x})")) }))
}

/// Slopes `q/p` with `0 < q < p` and `2 <= p <= max_p`.
pub fn lemma_corpus(max_p: u64) -> Vec<Slope> {
    unit_slopes(max_p).into_iter().filter(|s| !s.is_integer()).collect()
}

pub fn run_check(check: Check, r: &Slope) -> Result<Option<Outcome>> {
    match check {
        Check::Length => check_length(r).map(Some),
        Check::SequenceShape => check_sequence_shape(r).map(Some),
        Check::TildeIdentity => check_tilde_identity(r),
        Check::Decomposition => check_decomposition(r).map(Some),
        Check::ClosedForm => check_closed_form(r),
        Check::ForcedRuns => check_forced_runs(r),
    }
}

/// Runs `checks` over [`lemma_corpus`]; a check that errors counts as a
/// failure carrying the error text.
pub fn audit_lemmas(max_p: u64, checks: &[Check]) -> LemmaReport {
    let corpus = lemma_corpus(max_p);
    let mut report = LemmaReport { slopes: corpus.len(), ..Default::default() };
    for &check in checks {
        let mut applied = 0;
        for r in &corpus {
            let outcome = match run_check(check, r) {
                Ok(None) => continue,
                Ok(Some(o)) => o,
                Err(e) => Err(e.to_string()),
            };
            applied += 1;
            if let Err(detail) = outcome {
                report.failures.push(Failure { r: r.clone(), check, detail });
            }
        }
        report.applied.push((check, applied));
    }
    report
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SmallCancellationRow {
    pub r: Slope,
    pub n: u32,
    pub elements: usize,
    pub c_holds: bool,
    pub t4_holds: bool,
    /// Fewest pieces any element splits into; `None` if some element does
    /// not split into pieces.
    pub min_pieces: Option<usize>,
    /// Some maximal piece contains a full `v1` or `v3` block (or inverse).
    pub block_in_piece: bool,
}

impl SmallCancellationRow {
    pub fn passed(&self) -> bool {
        let bound = 4 * self.n as usize;
        self.c_holds && self.t4_holds && self.min_pieces.is_none_or(|t| t >= bound) && !self.block_in_piece
    }
}

fn contains_factor(w: &Word, f: &Word) -> bool {
    !f.is_empty() && w.letters().windows(f.len()).any(|x| x == f.letters())
}

pub fn small_cancellation_row(r: &Slope, n: u32) -> Result<SmallCancellationRow> {
    let set = symmetrize(r, n)?;
    let [v1, _, v3, _] = relator_blocks(r)?;
    let blocks = [v1.inverse(), v3.inverse(), v1, v3];
    let block_in_piece =
        set.maximal_pieces().iter().any(|piece| blocks.iter().any(|b| contains_factor(piece, b)));
    Ok(SmallCancellationRow {
        r: r.clone(),
        n,
        elements: set.len(),
        c_holds: verify_c(&set, 4 * n as usize),
        t4_holds: verify_t4(&set),
        min_pieces: min_piece_count_over_elements(&set),
        block_in_piece,
    })
}

/// One row per `r = q/p` with `2 <= p <= max_p` and each `n` in `indices`.
pub fn audit_small_cancellation(max_p: u64, indices: &[u32]) -> Result<Vec<SmallCancellationRow>> {
    let mut rows = Vec::new();
    for r in lemma_corpus(max_p) {
        for &n in indices {
            rows.push(small_cancellation_row(&r, n)?);
        }
    }
    Ok(rows)
}

/// Sanity check for callers: `CS` of a relator computed two ways.
pub fn cyclic_sequence_agrees(r: &Slope) -> Result<bool> {
    Ok(cyclic_s_sequence(&relator_word(r)?)? == cs_of_slope(r)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sl(s: &str) -> Slope {
        s.parse().unwrap()
    }

    #[test]
    fn corpus_size() {
        assert_eq!(lemma_corpus(5).len(), 9);
        assert!(lemma_corpus(5).iter().all(|s| s.in_unit_interval() && !s.is_integer()));
    }

    #[test]
    fn single_slopes() {
        for r in ["1/3", "2/5", "3/10", "7/23", "5/17", "1/2", "3/4"] {
            let r = sl(r);
            for check in Check::ALL {
                if let Some(outcome) = run_check(check, &r).unwrap() {
                    assert_eq!(outcome, Ok(()), "{r} {check:?}");
                }
            }
            assert!(cyclic_sequence_agrees(&r).unwrap());
        }
    }

    #[test]
    fn applicability() {
        assert!(check_tilde_identity(&sl("1/4")).unwrap().is_none());
        assert!(check_forced_runs(&sl("2/5")).unwrap().is_none());
        assert!(check_forced_runs(&sl("3/10")).unwrap().is_some());
    }

    #[test]
    fn small_audit() {
        let report = audit_lemmas(20, &Check::ALL);
        assert!(report.passed(), "{:?}", report.failures);
        assert_eq!(report.applied.len(), 6);
    }

    #[test]
    fn small_cancellation_rows() {
        let row = small_cancellation_row(&sl("2/5"), 2).unwrap();
        assert_eq!(row.elements, 20);
        assert!(row.passed(), "{row:?}");
    }
}
