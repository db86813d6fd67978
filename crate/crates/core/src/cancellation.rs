//! Pieces and small cancellation conditions for the symmetrized closure of
//! `u_r^n`, and the run-length patterns that a trivial cyclically
//! alternating word must contain.

use std::collections::HashMap;

use serde::Serialize;

use crate::error::{domain, Error, Result};
use crate::slope::{cf_from_slope, Slope};
use crate::words::{
    cyclic_s_sequence, is_cyclically_alternating, relator_word, s_decomposition, CyclicSSeq, CyclicWord, Letter, SSeq,
    Word,
};

fn lcp(x: &[Letter], y: &[Letter]) -> usize {
    x.iter().zip(y).take_while(|(a, b)| a == b).count()
}

/// All distinct cyclic permutations of a relator and of its inverse.
#[derive(Clone, Debug)]
pub struct SymmetrizedSet {
    base: Word,
    elements: Vec<Word>,
    index: HashMap<Word, usize>,
    /// Longest piece that is a prefix of each element.
    prefix_piece: Vec<usize>,
}

impl SymmetrizedSet {
    pub fn from_relator(base: Word) -> Result<SymmetrizedSet> {
        if base.is_empty() || !base.is_cyclically_reduced() {
            return domain(format!("relator {base} must be nonempty and cyclically reduced"));
        }
        let inverse = base.inverse();
        let mut elements: Vec<Word> =
            (0..base.len()).flat_map(|i| [base.rotated(i), inverse.rotated(i)]).collect();
        elements.sort();
        elements.dedup();
        let index = elements.iter().enumerate().map(|(i, w)| (w.clone(), i)).collect();
        // Sorted order puts the element sharing the longest prefix with e next to it.
        let prefix_piece = (0..elements.len())
            .map(|i| {
                let here = elements[i].letters();
                let before = i.checked_sub(1).map_or(0, |j| lcp(here, elements[j].letters()));
                let after = elements.get(i + 1).map_or(0, |e| lcp(here, e.letters()));
                before.max(after)
            })
            .collect();
        Ok(SymmetrizedSet { base, elements, index, prefix_piece })
    }

    pub fn base(&self) -> &Word {
        &self.base
    }

    pub fn elements(&self) -> &[Word] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn contains(&self, w: &Word) -> bool {
        self.index.contains_key(w)
    }

    /// Longest `l` such that the first `l` letters of `w[start..]` form a
    /// piece: the second-largest common prefix with an element.
    fn piece_reach(&self, w: &[Letter]) -> usize {
        let (mut best, mut second) = (0, 0);
        for e in &self.elements {
            let l = lcp(w, e.letters());
            if l > best {
                second = best;
                best = l;
            } else if l > second {
                second = l;
            }
        }
        second
    }

    fn is_subword_of_element(&self, w: &Word) -> bool {
        w.is_empty()
            || self.elements.iter().any(|e| e.letters().windows(w.len()).any(|win| win == w.letters()))
    }

    /// Piece reach at every position of an element, via the prefix table of
    /// its rotations.
    fn element_reach(&self, idx: usize) -> Vec<usize> {
        let w = &self.elements[idx];
        (0..w.len())
            .map(|j| {
                let rot = self.index[&w.rotated(j)];
                self.prefix_piece[rot].min(w.len() - j)
            })
            .collect()
    }

    /// Longest piece starting at each position of each element, deduplicated.
    /// Every piece is a subword of one of these.
    pub fn maximal_pieces(&self) -> Vec<Word> {
        let mut out: Vec<Word> = (0..self.len())
            .flat_map(|i| {
                let e = &self.elements[i];
                self.element_reach(i)
                    .into_iter()
                    .enumerate()
                    .filter(|&(_, len)| len > 0)
                    .map(|(j, len)| e.subword(j, j + len))
                    .collect::<Vec<_>>()
            })
            .collect();
        out.sort();
        out.dedup();
        out
    }
}

/// Symmetrized closure of `u_r^n`.
pub fn symmetrize(r: &Slope, n: u32) -> Result<SymmetrizedSet> {
    if r.is_integer() || !r.in_unit_interval() {
        return domain(format!("symmetrize needs 0 < r < 1, got {r}"));
    }
    if n < 2 {
        return domain(format!("index n must be at least 2, got {n}"));
    }
    SymmetrizedSet::from_relator(relator_word(r)?.power(n as usize))
}

/// A nonempty common prefix of two distinct elements.
pub fn is_piece(b: &Word, set: &SymmetrizedSet) -> Result<bool> {
    if b.is_empty() {
        return domain("pieces are nonempty");
    }
    Ok(set.elements.iter().filter(|e| e.starts_with(b.letters())).nth(1).is_some())
}

fn dp_from_reach(reach: &[usize]) -> Option<usize> {
    let len = reach.len();
    let mut best = vec![usize::MAX; len + 1];
    best[0] = 0;
    for j in 0..len {
        if best[j] == usize::MAX {
            continue;
        }
        for i in j + 1..=(j + reach[j]).min(len) {
            best[i] = best[i].min(best[j] + 1);
        }
    }
    (best[len] != usize::MAX).then_some(best[len])
}

fn greedy_from_reach(reach: &[usize]) -> Option<usize> {
    let (mut pos, mut count) = (0, 0);
    while pos < reach.len() {
        if reach[pos] == 0 {
            return None;
        }
        pos += reach[pos];
        count += 1;
    }
    Some(count)
}

fn reach_of(w: &Word, set: &SymmetrizedSet) -> Result<Vec<usize>> {
    if !set.is_subword_of_element(w) {
        return domain(format!("{w} is not a subword of an element of the symmetrized set"));
    }
    let letters = w.letters();
    Ok((0..letters.len()).map(|j| set.piece_reach(&letters[j..])).collect())
}

fn not_decomposable(w: &Word) -> Error {
    Error::Domain(format!("{w} is not a product of pieces"))
}

/// Fewest pieces whose product is `w`, by dynamic programming over cut
/// positions. Zero for the empty word.
pub fn min_piece_count(w: &Word, set: &SymmetrizedSet) -> Result<usize> {
    dp_from_reach(&reach_of(w, set)?).ok_or_else(|| not_decomposable(w))
}

/// Longest-match greedy count; equals [`min_piece_count`] because pieces
/// are closed under taking subwords.
pub fn greedy_piece_count(w: &Word, set: &SymmetrizedSet) -> Result<usize> {
    greedy_from_reach(&reach_of(w, set)?).ok_or_else(|| not_decomposable(w))
}

/// Smallest number of pieces over all elements; `None` when some element
/// is not a product of pieces at all.
pub fn min_piece_count_over_elements(set: &SymmetrizedSet) -> Option<usize> {
    (0..set.len()).map(|i| dp_from_reach(&set.element_reach(i))).min().flatten()
}

/// Condition `C(p)`: no element is a product of fewer than `p` pieces.
/// Elements that are not products of pieces at all satisfy it vacuously.
pub fn verify_c(set: &SymmetrizedSet, p: usize) -> bool {
    let check = |i: usize| dp_from_reach(&set.element_reach(i)).is_none_or(|t| t >= p);
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        (0..set.len()).into_par_iter().all(check)
    }
    #[cfg(not(feature = "parallel"))]
    {
        (0..set.len()).all(check)
    }
}

/// Condition `T(4)` checked on all triples: whenever no cyclically adjacent
/// pair is an inverse pair, one of `w1 w2`, `w2 w3`, `w3 w1` is reduced
/// without cancellation.
pub fn verify_t4(set: &SymmetrizedSet) -> bool {
    let els = &set.elements;
    let inverse_idx: Vec<Option<usize>> = els.iter().map(|w| set.index.get(&w.inverse()).copied()).collect();
    let cancels = |x: usize, y: usize| {
        let last = *els[x].letters().last().expect("nonempty");
        let first = els[y].letters()[0];
        last == first.inverse()
    };
    let inverse_pair = |x: usize, y: usize| inverse_idx[x] == Some(y);
    let check = |i: usize| {
        (0..els.len()).all(|j| {
            (0..els.len()).all(|k| {
                let excluded = inverse_pair(i, j) || inverse_pair(j, k) || inverse_pair(k, i);
                excluded || !(cancels(i, j) && cancels(j, k) && cancels(k, i))
            })
        })
    };
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        (0..els.len()).into_par_iter().all(check)
    }
    #[cfg(not(feature = "parallel"))]
    {
        (0..els.len()).all(check)
    }
}

/// The cyclic patterns of run lengths forced by triviality: `((2n-2)⟨m⟩)`
/// when `r = 1/m`, otherwise `((2n-1)⟨S1,S2⟩)` and `((2n-1)⟨S2,S1⟩)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PiecePattern {
    pub patterns: Vec<SSeq>,
}

pub fn forbidden_patterns(r: &Slope, n: u32) -> Result<PiecePattern> {
    if n < 2 {
        return domain(format!("index n must be at least 2, got {n}"));
    }
    let cf = cf_from_slope(r)?;
    if r.is_integer() {
        return domain(format!("forbidden patterns need 0 < r < 1, got {r}"));
    }
    let reps = 2 * n as usize - 1;
    if cf.len() == 1 {
        return Ok(PiecePattern { patterns: vec![SSeq(vec![cf.first(); reps - 1])] });
    }
    let d = s_decomposition(r)?;
    let forward = [d.s1.terms(), d.s2.terms()].concat().repeat(reps);
    let backward = [d.s2.terms(), d.s1.terms()].concat().repeat(reps);
    Ok(PiecePattern { patterns: vec![SSeq(forward), SSeq(backward)] })
}

/// Whether some rotation of `haystack` begins with `needle`, reading at most
/// one full period.
pub fn cyclic_contains_contiguous(haystack: &CyclicSSeq, needle: &SSeq) -> bool {
    needle.is_empty() || haystack.contains(needle.terms())
}

/// Where a forbidden pattern occurs in a cyclic sequence.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PatternHit {
    pub pattern: usize,
    pub offset: usize,
}

pub fn find_pattern(cs: &CyclicSSeq, patterns: &PiecePattern) -> Option<PatternHit> {
    let t = cs.len();
    patterns.patterns.iter().enumerate().find_map(|(pi, pat)| {
        if pat.len() > t {
            return None;
        }
        (0..t)
            .find(|&i| pat.terms().iter().enumerate().all(|(j, &x)| cs.terms()[(i + j) % t] == x))
            .map(|offset| PatternHit { pattern: pi, offset })
    })
}

/// `true` when `CS(v)` contains a forbidden pattern for `(r, n)`. Only
/// `false` is conclusive: it certifies `v ≠ 1` in `⟨a, b | u_r^n⟩`.
pub fn necessary_condition_trivial(v: &Word, r: &Slope, n: u32) -> Result<bool> {
    Ok(pattern_hit(v, &forbidden_patterns(r, n)?)?.is_some())
}

/// [`necessary_condition_trivial`] against precomputed patterns, reporting
/// the match.
pub fn pattern_hit(v: &Word, patterns: &PiecePattern) -> Result<Option<PatternHit>> {
    if v.is_empty() || !v.is_cyclically_reduced() {
        return domain(format!("{v} must be nonempty and cyclically reduced"));
    }
    if !is_cyclically_alternating(v) {
        return domain(format!("{v} is not cyclically alternating"));
    }
    Ok(find_pattern(&cyclic_s_sequence(v)?, patterns))
}

/// Length of the longest word that is a subword of the cyclic word `(v)`
/// and of `(u_r^n)` or `(u_r^{-n})`, each read for at most one period.
pub fn longest_common_cyclic_subword(v: &CyclicWord, r: &Slope, n: u32) -> Result<usize> {
    if n < 1 {
        return domain("n must be positive");
    }
    let relator = relator_word(r)?.power(n as usize);
    let vs = v.word().letters();
    let mut best = 0;
    for target in [relator.clone(), relator.inverse()] {
        let ts = target.letters();
        let cap = vs.len().min(ts.len());
        for i in 0..vs.len() {
            for j in 0..ts.len() {
                let l = (0..cap).take_while(|&d| vs[(i + d) % vs.len()] == ts[(j + d) % ts.len()]).count();
                best = best.max(l);
            }
        }
    }
    Ok(best)
}

/// `u_r = v1 v2 v3 v4` with `S(v1) = S(v3) = S1` and `S(v2) = S(v4) = S2`;
/// `v1`, `v3` are empty when `r = 1/m`.
pub fn relator_blocks(r: &Slope) -> Result<[Word; 4]> {
    let u = relator_word(r)?;
    let d = s_decomposition(r)?;
    let (l1, l2) = (d.s1.sum() as usize, d.s2.sum() as usize);
    let cuts = [0, l1, l1 + l2, 2 * l1 + l2, 2 * (l1 + l2)];
    debug_assert_eq!(cuts[4], u.len());
    Ok(std::array::from_fn(|i| u.subword(cuts[i], cuts[i + 1])))
}
