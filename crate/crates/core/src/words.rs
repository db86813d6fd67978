//! Words over `{a, b}`, the relator `u_r`, and the sign-run sequences read
//! from it: `S(r)`, its cyclic version `CS(r)`, the `T`-sequence, and the
//! decomposition `S(r) = (S1, S2, S1, S2)`.

use std::fmt;
use std::str::FromStr;

use num_traits::ToPrimitive;
use serde::{Serialize, Serializer};

use crate::error::{domain, Error, Result};
use crate::slope::{cf_from_slope, cf_value, ContinuedFraction, Slope};

/// Largest denominator for which [`relator_word`] will build `u_r`.
pub const MAX_WORD_DENOMINATOR: u64 = 1 << 22;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Gen {
    A,
    B,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    pub gen: Gen,
    /// +1 or -1
    pub exp: i8,
}

impl Letter {
    pub const A: Letter = Letter { gen: Gen::A, exp: 1 };
    pub const A_INV: Letter = Letter { gen: Gen::A, exp: -1 };
    pub const B: Letter = Letter { gen: Gen::B, exp: 1 };
    pub const B_INV: Letter = Letter { gen: Gen::B, exp: -1 };

    pub fn new(gen: Gen, exp: i8) -> Letter {
        debug_assert!(exp == 1 || exp == -1);
        Letter { gen, exp }
    }

    pub fn inverse(self) -> Letter {
        Letter { gen: self.gen, exp: -self.exp }
    }

    pub fn is_positive(self) -> bool {
        self.exp > 0
    }

    fn to_char(self) -> char {
        match (self.gen, self.exp > 0) {
            (Gen::A, true) => 'a',
            (Gen::A, false) => 'A',
            (Gen::B, true) => 'b',
            (Gen::B, false) => 'B',
        }
    }

    fn from_char(c: char) -> Option<Letter> {
        match c {
            'a' => Some(Letter::A),
            'A' => Some(Letter::A_INV),
            'b' => Some(Letter::B),
            'B' => Some(Letter::B_INV),
            _ => None,
        }
    }
}

/// A freely reduced word. `A` and `B` stand for `a⁻¹` and `b⁻¹`.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word(Vec<Letter>);

impl Word {
    pub fn new(letters: Vec<Letter>) -> Result<Word> {
        if letters.windows(2).any(|w| w[0] == w[1].inverse()) {
            return domain("word is not reduced");
        }
        Ok(Word(letters))
    }

    pub fn empty() -> Word {
        Word(Vec::new())
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn inverse(&self) -> Word {
        Word(self.0.iter().rev().map(|l| l.inverse()).collect())
    }

    pub fn is_cyclically_reduced(&self) -> bool {
        match (self.0.first(), self.0.last()) {
            (Some(&first), Some(&last)) => self.0.len() == 1 || first != last.inverse(),
            _ => true,
        }
    }

    /// Cyclic shift starting at letter `i`.
    pub fn rotated(&self, i: usize) -> Word {
        if self.0.is_empty() {
            return Word::empty();
        }
        let i = i % self.0.len();
        Word([&self.0[i..], &self.0[..i]].concat())
    }

    /// `self^k` for a cyclically reduced word.
    pub fn power(&self, k: usize) -> Word {
        debug_assert!(self.is_cyclically_reduced());
        Word(self.0.repeat(k))
    }

    /// Concatenation, which must already be reduced at the seam.
    pub fn concat(&self, other: &Word) -> Result<Word> {
        Word::new([&self.0[..], &other.0[..]].concat())
    }

    pub fn subword(&self, start: usize, end: usize) -> Word {
        Word(self.0[start..end].to_vec())
    }

    pub fn starts_with(&self, prefix: &[Letter]) -> bool {
        self.0.starts_with(prefix)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.iter().try_for_each(|l| write!(f, "{}", l.to_char()))
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "\"{self}\"")
    }
}

impl FromStr for Word {
    type Err = Error;

    fn from_str(s: &str) -> Result<Word> {
        let letters = s
            .trim()
            .chars()
            .map(|c| Letter::from_char(c).ok_or_else(|| Error::Parse(format!("bad letter {c:?} in word {s:?}"))))
            .collect::<Result<Vec<_>>>()?;
        Word::new(letters).map_err(|_| Error::Parse(format!("word {s:?} is not reduced")))
    }
}

impl Serialize for Word {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// A cyclically reduced word up to rotation.
#[derive(Clone, Debug)]
pub struct CyclicWord(Word);

impl CyclicWord {
    pub fn new(word: Word) -> Result<CyclicWord> {
        if !word.is_cyclically_reduced() {
            return domain(format!("{word} is not cyclically reduced"));
        }
        Ok(CyclicWord(word))
    }

    /// The representative this cyclic word was built from.
    pub fn word(&self) -> &Word {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn rotations(&self) -> impl Iterator<Item = Word> + '_ {
        (0..self.0.len().max(1)).map(|i| self.0.rotated(i))
    }
}

impl PartialEq for CyclicWord {
    fn eq(&self, other: &CyclicWord) -> bool {
        self.len() == other.len() && (self.is_empty() || other.rotations().any(|w| w == self.0))
    }
}

impl Eq for CyclicWord {}

impl fmt::Display for CyclicWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.0)
    }
}

/// Sequence of positive integers.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct SSeq(pub Vec<u64>);

impl SSeq {
    pub fn terms(&self) -> &[u64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn sum(&self) -> u64 {
        self.0.iter().sum()
    }

    pub fn is_symmetric(&self) -> bool {
        self.0.iter().eq(self.0.iter().rev())
    }

    pub fn first(&self) -> Option<u64> {
        self.0.first().copied()
    }

    pub fn last(&self) -> Option<u64> {
        self.0.last().copied()
    }
}

impl fmt::Display for SSeq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(u64::to_string).collect();
        write!(f, "[{}]", parts.join(","))
    }
}

impl Serialize for SSeq {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = serializer.serialize_struct("SSeq", 2)?;
        st.serialize_field("terms", &self.0)?;
        st.serialize_field("cyclic", &false)?;
        st.end()
    }
}

/// Sequence of positive integers up to rotation.
#[derive(Clone, Debug, Default)]
pub struct CyclicSSeq(pub Vec<u64>);

impl CyclicSSeq {
    pub fn terms(&self) -> &[u64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Number of rotations whose first `needle.len()` terms equal `needle`
    /// (contiguous, at most one full period).
    pub fn occurrences(&self, needle: &[u64]) -> usize {
        let t = self.0.len();
        if needle.is_empty() || needle.len() > t {
            return 0;
        }
        (0..t).filter(|&i| needle.iter().enumerate().all(|(j, &x)| self.0[(i + j) % t] == x)).count()
    }

    /// Contiguous containment without leaps and without wrapping past one period.
    pub fn contains(&self, needle: &[u64]) -> bool {
        self.occurrences(needle) > 0
    }
}

impl PartialEq for CyclicSSeq {
    fn eq(&self, other: &CyclicSSeq) -> bool {
        self.0.len() == other.0.len() && (self.0.is_empty() || other.occurrences(&self.0) > 0)
    }
}

impl Eq for CyclicSSeq {}

impl fmt::Display for CyclicSSeq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(u64::to_string).collect();
        write!(f, "(({}))", parts.join(","))
    }
}

impl Serialize for CyclicSSeq {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = serializer.serialize_struct("CyclicSSeq", 2)?;
        st.serialize_field("terms", &self.0)?;
        st.serialize_field("cyclic", &true)?;
        st.end()
    }
}

/// `(-1)^⌊iq/p⌋` for `1 <= i <= p-1`.
pub fn epsilon(i: u64, q: u64, p: u64) -> Result<i8> {
    if i == 0 || i >= p {
        return domain(format!("epsilon index {i} outside 1..={}", p.saturating_sub(1)));
    }
    let floor = (i as u128 * q as u128) / p as u128;
    Ok(if floor.is_multiple_of(2) { 1 } else { -1 })
}

fn unit_fraction_parts(r: &Slope) -> Result<(u64, u64)> {
    if !r.in_unit_interval() {
        return domain(format!("relator word needs 0 <= r <= 1, got {r}"));
    }
    let q = r.numer().to_u64().expect("non-negative");
    let p = r.denom().to_u64().filter(|&p| p <= MAX_WORD_DENOMINATOR).ok_or_else(|| {
        Error::Domain(format!("denominator of {r} exceeds the word-size limit {MAX_WORD_DENOMINATOR}"))
    })?;
    Ok((q, p))
}

/// The relator `u_{q/p}` of length `2p`:
/// `a û b^{(-1)^q} û⁻¹` for odd `p`, `a û a⁻¹ û⁻¹` for even `p`, where
/// `û = b^{ε_1} a^{ε_2} ...` has `p - 1` letters alternating from `b`.
/// Defined for `0 <= r <= 1`; `u_0 = ab` and `u_1 = ab⁻¹`.
pub fn relator_word(r: &Slope) -> Result<Word> {
    let (q, p) = unit_fraction_parts(r)?;
    let hat: Vec<Letter> = (1..p)
        .map(|i| {
            let gen = if i % 2 == 1 { Gen::B } else { Gen::A };
            Letter::new(gen, epsilon(i, q, p).expect("index in range"))
        })
        .collect();
    let hat = Word(hat);
    let middle = if p % 2 == 1 {
        Letter::new(Gen::B, if q % 2 == 0 { 1 } else { -1 })
    } else {
        Letter::A_INV
    };
    let mut letters = Vec::with_capacity(2 * p as usize);
    letters.push(Letter::A);
    letters.extend_from_slice(hat.letters());
    letters.push(middle);
    letters.extend_from_slice(hat.inverse().letters());
    Word::new(letters).map_err(|_| Error::Internal {
        message: format!("relator word of {r} is not reduced"),
        trace: String::new(),
    })
}

/// Run lengths of the maximal constant-sign blocks of a linear word.
pub fn s_sequence(v: &Word) -> Result<SSeq> {
    if v.is_empty() {
        return domain("S-sequence of the empty word");
    }
    let mut runs = Vec::new();
    let mut prev: Option<bool> = None;
    for l in v.letters() {
        if prev == Some(l.is_positive()) {
            *runs.last_mut().unwrap() += 1;
        } else {
            runs.push(1);
        }
        prev = Some(l.is_positive());
    }
    Ok(SSeq(runs))
}

/// Run lengths of the sign blocks of a cyclic word; the first and last
/// linear runs merge when they have the same sign.
pub fn cyclic_s_sequence(v: &Word) -> Result<CyclicSSeq> {
    if v.is_empty() {
        return domain("cyclic S-sequence of the empty word");
    }
    if !v.is_cyclically_reduced() {
        return domain(format!("{v} is not cyclically reduced"));
    }
    let letters = v.letters();
    let start = (0..letters.len()).find(|&i| {
        let prev = letters[(i + letters.len() - 1) % letters.len()];
        prev.is_positive() != letters[i].is_positive()
    });
    match start {
        None => Ok(CyclicSSeq(vec![letters.len() as u64])),
        Some(i) => Ok(CyclicSSeq(s_sequence(&v.rotated(i))?.0)),
    }
}

/// No `a^{±2}` or `b^{±2}` in any cyclic permutation.
pub fn is_cyclically_alternating(v: &Word) -> bool {
    let l = v.letters();
    l.len() <= 1 || (0..l.len()).all(|i| l[i].gen != l[(i + 1) % l.len()].gen)
}

pub fn s_of_slope(r: &Slope) -> Result<SSeq> {
    s_sequence(&relator_word(r)?)
}

pub fn cs_of_slope(r: &Slope) -> Result<CyclicSSeq> {
    cyclic_s_sequence(&relator_word(r)?)
}

fn expansion_with_k_at_least_two(r: &Slope, what: &str) -> Result<ContinuedFraction> {
    let cf = cf_from_slope(r)?;
    if cf.len() < 2 {
        return domain(format!("{what} is defined only when r has at least two continued-fraction terms; {r} = {cf}"));
    }
    Ok(cf)
}

/// Lengths of the maximal blocks of `m+1` (when `m_2 = 1`) or of `m`
/// (when `m_2 >= 2`) in `S(r)`.
pub fn t_sequence(r: &Slope) -> Result<SSeq> {
    let cf = expansion_with_k_at_least_two(r, "the T-sequence")?;
    let m = cf.first();
    let s = s_of_slope(r)?;
    let (block, separator) = if cf.terms()[1] == 1 { (m + 1, m) } else { (m, m + 1) };
    let bad = || Error::Internal { message: format!("S({r}) = {s} does not have the expected block shape"), trace: String::new() };

    let mut t = Vec::new();
    let mut run = 0u64;
    for &x in s.terms() {
        if x == block {
            run += 1;
        } else if x == separator {
            if run > 0 {
                t.push(run);
            }
            run = 0;
        } else {
            return Err(bad());
        }
    }
    if run > 0 {
        t.push(run);
    }
    Ok(SSeq(t))
}

/// `r̃ = [m_3, ..., m_k]` if `m_2 = 1`, else `[m_2 - 1, m_3, ..., m_k]`.
pub fn reduced_fraction_tilde(r: &Slope) -> Result<Slope> {
    let cf = expansion_with_k_at_least_two(r, "r-tilde")?;
    Ok(cf_value(&tilde_expansion(&cf)))
}

fn tilde_expansion(cf: &ContinuedFraction) -> ContinuedFraction {
    let t = cf.terms();
    let terms = if t[1] == 1 {
        t[2..].to_vec()
    } else {
        std::iter::once(t[1] - 1).chain(t[2..].iter().copied()).collect()
    };
    ContinuedFraction::new(terms).expect("tail of a normal form is a normal form")
}

/// `S(r) = (S1, S2, S1, S2)`; `S1` is empty exactly when `k = 1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SDecomposition {
    pub s1: SSeq,
    pub s2: SSeq,
}

impl SDecomposition {
    /// `(S1, S2)` concatenated.
    pub fn half(&self) -> Vec<u64> {
        [self.s1.terms(), self.s2.terms()].concat()
    }

    pub fn full(&self) -> Vec<u64> {
        self.half().repeat(2)
    }
}

/// Each `t` becomes `t` copies of `block`, with `sep` between blocks.
fn expand_blocks(ts: &[u64], block: u64, sep: u64) -> Vec<u64> {
    let mut out = Vec::new();
    for (i, &t) in ts.iter().enumerate() {
        if i > 0 {
            out.push(sep);
        }
        out.extend(std::iter::repeat_n(block, t as usize));
    }
    out
}

fn decompose(cf: &ContinuedFraction) -> SDecomposition {
    let t = cf.terms();
    let m = t[0];
    if t.len() == 1 {
        return SDecomposition { s1: SSeq(vec![]), s2: SSeq(vec![m]) };
    }
    let m2 = t[1];
    match (m2, t.len()) {
        (1, 3) => SDecomposition { s1: SSeq(vec![m + 1; t[2] as usize]), s2: SSeq(vec![m]) },
        (1, _) => {
            let inner = decompose(&tilde_expansion(cf));
            let s1 = expand_blocks(inner.s1.terms(), m + 1, m);
            let mut s2 = vec![m];
            for &x in inner.s2.terms() {
                s2.extend(std::iter::repeat_n(m + 1, x as usize));
                s2.push(m);
            }
            SDecomposition { s1: SSeq(s1), s2: SSeq(s2) }
        }
        (_, 2) => SDecomposition { s1: SSeq(vec![m + 1]), s2: SSeq(vec![m; (m2 - 1) as usize]) },
        _ => {
            let inner = decompose(&tilde_expansion(cf));
            let mut s1 = vec![m + 1];
            for &x in inner.s2.terms() {
                s1.extend(std::iter::repeat_n(m, x as usize));
                s1.push(m + 1);
            }
            let s2 = expand_blocks(inner.s1.terms(), m, m + 1);
            SDecomposition { s1: SSeq(s1), s2: SSeq(s2) }
        }
    }
}

/// Built from the continued fraction by the recursion through `r̃`, then
/// checked against `S(u_r)`.
pub fn s_decomposition(r: &Slope) -> Result<SDecomposition> {
    if !r.in_unit_interval() || r.is_integer() {
        return domain(format!("S-decomposition needs 0 < r < 1, got {r}"));
    }
    let d = decompose(&cf_from_slope(r)?);
    let s = s_of_slope(r)?;
    if d.full() != s.0 {
        return Err(Error::Internal {
            message: format!("decomposition of {r} does not reassemble S(r)"),
            trace: format!("S1={} S2={} S={s}", d.s1, d.s2),
        });
    }
    Ok(d)
}
