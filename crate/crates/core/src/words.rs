//! Substitution engine for the three- and nine-letter systems.
//!
//! Letters are small integers tagged by their [`Alphabet`]: `a,b,c` are
//! `0,1,2`; the nine-letter alphabet `1..=9` is stored as `0..=8`; the
//! six-letter alphabet `a-,a+,b-,b+,c-,c+` is `0..=5` in that order.
//!
//! Stage words grow exponentially, so every materializing operation takes a
//! letter cap. Heights are always available through [`heights_by_matrix`].

use std::collections::{BTreeSet, HashSet};
use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};
use serde::{Deserialize, Serialize, Serializer};

use crate::gasket::{DirectingPrefix, DirectingSymbol, MultRule, PartialQuotients};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum WordsError {
    #[error("a word at stage {stage} would have {letters} letters, over the cap of {cap}")]
    Overflow {
        stage: usize,
        letters: BigUint,
        cap: usize,
    },
    #[error("operation not defined on alphabet {0:?}")]
    UnsupportedAlphabet(Alphabet),
    #[error("stage {requested} requested but only {available} directing symbols are known")]
    NotEnoughDirectingData { requested: usize, available: usize },
    #[error("bad word {0:?}")]
    Parse(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Alphabet {
    A3,
    A6,
    A9,
}

impl Alphabet {
    pub fn size(self) -> usize {
        match self {
            Alphabet::A3 => 3,
            Alphabet::A6 => 6,
            Alphabet::A9 => 9,
        }
    }

    pub fn letter_name(self, l: u8) -> String {
        match self {
            Alphabet::A3 => ((b'a' + l) as char).to_string(),
            Alphabet::A9 => (l + 1).to_string(),
            Alphabet::A6 => A6_NAMES[l as usize].to_string(),
        }
    }
}

impl FromStr for Alphabet {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "a3" => Ok(Alphabet::A3),
            "a6" => Ok(Alphabet::A6),
            "a9" => Ok(Alphabet::A9),
            _ => Err(format!("unknown alphabet {s:?} (expected a3, a6 or a9)")),
        }
    }
}

const A6_NAMES: [&str; 6] = ["a-", "a+", "b-", "b+", "c-", "c+"];

/// Nine-letter symbol `i` (1-based) as a stored letter.
pub const fn a9(i: u8) -> u8 {
    i - 1
}

/// Letter-to-letter projection from nine letters to three.
pub const PHI: [u8; 9] = [0, 0, 0, 0, 1, 1, 1, 2, 2];
/// Letter-to-letter projection from nine letters to six.
pub const PHI6: [u8; 9] = [0, 0, 1, 1, 2, 3, 3, 4, 5];
/// Letter-to-letter projection from six letters to three.
pub const PHI3: [u8; 6] = [0, 0, 1, 1, 2, 2];

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Word {
    pub alphabet: Alphabet,
    pub letters: Vec<u8>,
}

impl Word {
    pub fn new(alphabet: Alphabet, letters: Vec<u8>) -> Self {
        debug_assert!(letters.iter().all(|&l| (l as usize) < alphabet.size()));
        Self { alphabet, letters }
    }

    pub fn empty(alphabet: Alphabet) -> Self {
        Self::new(alphabet, Vec::new())
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Parses `"abac"`, `"4618"`, or `"a+,b+,a-,c-"` depending on the alphabet.
    pub fn parse(alphabet: Alphabet, s: &str) -> Result<Self, WordsError> {
        let bad = || WordsError::Parse(s.to_string());
        let letters = match alphabet {
            Alphabet::A3 => s
                .chars()
                .map(|c| match c {
                    'a'..='c' => Ok(c as u8 - b'a'),
                    _ => Err(bad()),
                })
                .collect::<Result<Vec<_>, _>>()?,
            Alphabet::A9 => s
                .chars()
                .map(|c| match c {
                    '1'..='9' => Ok(c as u8 - b'1'),
                    _ => Err(bad()),
                })
                .collect::<Result<Vec<_>, _>>()?,
            Alphabet::A6 => {
                if s.trim().is_empty() {
                    Vec::new()
                } else {
                    s.split(',')
                        .map(|tok| {
                            A6_NAMES
                                .iter()
                                .position(|n| *n == tok.trim())
                                .map(|p| p as u8)
                                .ok_or_else(bad)
                        })
                        .collect::<Result<Vec<_>, _>>()?
                }
            }
        };
        Ok(Word::new(alphabet, letters))
    }

    /// Occurrence test for a factor.
    pub fn contains(&self, needle: &Word) -> bool {
        needle.is_empty()
            || self
                .letters
                .windows(needle.len())
                .any(|w| w == needle.letters.as_slice())
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.alphabet {
            Alphabet::A3 => {
                for &l in &self.letters {
                    write!(f, "{}", (b'a' + l) as char)?;
                }
                Ok(())
            }
            Alphabet::A9 => {
                for &l in &self.letters {
                    write!(f, "{}", l + 1)?;
                }
                Ok(())
            }
            Alphabet::A6 => {
                let names: Vec<&str> = self.letters.iter().map(|&l| A6_NAMES[l as usize]).collect();
                f.write_str(&names.join(","))
            }
        }
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}({})", self.alphabet, self)
    }
}

impl Serialize for Word {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// A total letter-to-word map on one alphabet.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Substitution {
    pub alphabet: Alphabet,
    images: Vec<Vec<u8>>,
}

impl Substitution {
    pub fn new(alphabet: Alphabet, images: Vec<Vec<u8>>) -> Self {
        assert_eq!(images.len(), alphabet.size());
        assert!(images.iter().all(|w| !w.is_empty()));
        Self { alphabet, images }
    }

    pub fn image(&self, letter: u8) -> &[u8] {
        &self.images[letter as usize]
    }

    pub fn apply_letter(&self, letter: u8) -> Word {
        Word::new(self.alphabet, self.images[letter as usize].clone())
    }

    pub fn apply(&self, w: &Word) -> Word {
        assert_eq!(w.alphabet, self.alphabet);
        let letters = w
            .letters
            .iter()
            .flat_map(|&l| self.images[l as usize].iter().copied())
            .collect();
        Word::new(self.alphabet, letters)
    }
}

fn table(alphabet: Alphabet, rows: &[&str]) -> Substitution {
    let images = rows
        .iter()
        .map(|s| Word::parse(alphabet, s).unwrap().letters)
        .collect();
    Substitution::new(alphabet, images)
}

/// The three-letter substitutions.
pub fn sigma3(s: DirectingSymbol) -> Substitution {
    match s {
        DirectingSymbol::I => table(Alphabet::A3, &["ab", "ac", "a"]),
        DirectingSymbol::II => table(Alphabet::A3, &["ab", "a", "ac"]),
        DirectingSymbol::III => table(Alphabet::A3, &["a", "ab", "ac"]),
    }
}

/// The nine-letter substitutions.
pub fn sigma9(s: DirectingSymbol) -> Substitution {
    match s {
        DirectingSymbol::I => table(
            Alphabet::A9,
            &["35", "45", "46", "17", "18", "19", "29", "2", "3"],
        ),
        DirectingSymbol::II => table(
            Alphabet::A9,
            &["17", "46", "45", "35", "3", "2", "1", "19", "18"],
        ),
        DirectingSymbol::III => table(
            Alphabet::A9,
            &["1", "2", "3", "4", "45", "46", "17", "18", "19"],
        ),
    }
}

fn sigma_for(alphabet: Alphabet, s: DirectingSymbol) -> Result<Substitution, WordsError> {
    match alphabet {
        Alphabet::A3 => Ok(sigma3(s)),
        Alphabet::A9 => Ok(sigma9(s)),
        Alphabet::A6 => Err(WordsError::UnsupportedAlphabet(alphabet)),
    }
}

/// Word lengths `(h_a, h_b, h_c)` at one stage.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct HeightVector {
    pub a: BigUint,
    pub b: BigUint,
    pub c: BigUint,
}

impl HeightVector {
    pub fn unit() -> Self {
        Self {
            a: BigUint::one(),
            b: BigUint::one(),
            c: BigUint::one(),
        }
    }

    /// Height of a three-letter symbol.
    pub fn of_a3(&self, l: u8) -> &BigUint {
        match l {
            0 => &self.a,
            1 => &self.b,
            _ => &self.c,
        }
    }

    /// Height of a nine-letter symbol: 1-4 share `h_a`, 5-7 `h_b`, 8-9 `h_c`.
    pub fn of_a9(&self, l: u8) -> &BigUint {
        self.of_a3(PHI[l as usize])
    }

    pub fn a9(&self) -> [BigUint; 9] {
        std::array::from_fn(|i| self.of_a9(i as u8).clone())
    }
}

impl Serialize for HeightVector {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        [self.a.to_string(), self.b.to_string(), self.c.to_string()].serialize(s)
    }
}

/// Heights for stages `0..=K` from the incidence recurrence alone.
pub fn heights_by_matrix(prefix: &DirectingPrefix) -> Vec<HeightVector> {
    let mut out = vec![HeightVector::unit()];
    for &s in prefix.symbols() {
        let h = out.last().unwrap();
        let sub = sigma3(s);
        let sum = |l: u8| -> BigUint { sub.image(l).iter().map(|&y| h.of_a3(y)).sum() };
        let next = HeightVector {
            a: sum(0),
            b: sum(1),
            c: sum(2),
        };
        out.push(next);
    }
    out
}

/// One inner composition step: `W'(x) = concat of W(y) for y in sigma(x)`.
fn compose_stage(prev: &[Word], sub: &Substitution) -> Vec<Word> {
    (0..sub.alphabet.size() as u8)
        .map(|x| {
            let mut letters = Vec::new();
            for &y in sub.image(x) {
                letters.extend_from_slice(&prev[y as usize].letters);
            }
            Word::new(sub.alphabet, letters)
        })
        .collect()
}

fn identity_stage(alphabet: Alphabet) -> Vec<Word> {
    (0..alphabet.size() as u8)
        .map(|l| Word::new(alphabet, vec![l]))
        .collect()
}

fn check_cap(stage: usize, h: &HeightVector, cap: usize) -> Result<(), WordsError> {
    let longest = [&h.a, &h.b, &h.c].into_iter().max().unwrap();
    if longest.to_usize().is_none_or(|m| m > cap) {
        return Err(WordsError::Overflow {
            stage,
            letters: longest.clone(),
            cap,
        });
    }
    Ok(())
}

/// All stage words `(A_k, B_k, C_k)` or `(1_k, ..., 9_k)` for `k = 0..=K`.
pub fn stage_words_all(
    prefix: &DirectingPrefix,
    alphabet: Alphabet,
    max_word_letters: usize,
) -> Result<Vec<Vec<Word>>, WordsError> {
    let heights = heights_by_matrix(prefix);
    for (k, h) in heights.iter().enumerate() {
        check_cap(k, h, max_word_letters)?;
    }
    let mut stages = vec![identity_stage(alphabet)];
    for &s in prefix.symbols() {
        let sub = sigma_for(alphabet, s)?;
        let next = compose_stage(stages.last().unwrap(), &sub);
        stages.push(next);
    }
    Ok(stages)
}

/// Stage words at `K = prefix.len()`, indexed by letter. The cap bounds the
/// length of each individual word.
pub fn stage_words(
    prefix: &DirectingPrefix,
    alphabet: Alphabet,
    max_word_letters: usize,
) -> Result<Vec<Word>, WordsError> {
    let heights = heights_by_matrix(prefix);
    check_cap(prefix.len(), heights.last().unwrap(), max_word_letters)?;
    let mut cur = identity_stage(alphabet);
    for &s in prefix.symbols() {
        cur = compose_stage(&cur, &sigma_for(alphabet, s)?);
    }
    Ok(cur)
}

fn concat(parts: &[(&Word, usize)], alphabet: Alphabet) -> Word {
    let mut letters = Vec::new();
    for (w, times) in parts {
        for _ in 0..*times {
            letters.extend_from_slice(&w.letters);
        }
    }
    Word::new(alphabet, letters)
}

fn mult_step(prev: &[Word], alphabet: Alphabet, k: usize, rule: MultRule) -> Vec<Word> {
    match alphabet {
        Alphabet::A3 => {
            let (a, b, c) = (&prev[0], &prev[1], &prev[2]);
            match rule {
                MultRule::I => vec![
                    concat(&[(a, k), (b, 1)], alphabet),
                    concat(&[(a, k), (c, 1)], alphabet),
                    a.clone(),
                ],
                MultRule::II => vec![
                    concat(&[(a, k), (b, 1)], alphabet),
                    a.clone(),
                    concat(&[(a, k), (c, 1)], alphabet),
                ],
            }
        }
        Alphabet::A9 => {
            let w = |i: usize| &prev[i - 1];
            match rule {
                MultRule::I => vec![
                    concat(&[(w(3), 1), (w(4), k - 1), (w(5), 1)], alphabet),
                    concat(&[(w(4), k), (w(5), 1)], alphabet),
                    concat(&[(w(4), k), (w(6), 1)], alphabet),
                    concat(&[(w(1), k), (w(7), 1)], alphabet),
                    concat(&[(w(1), k), (w(8), 1)], alphabet),
                    concat(&[(w(1), k), (w(9), 1)], alphabet),
                    concat(&[(w(2), 1), (w(1), k - 1), (w(9), 1)], alphabet),
                    w(2).clone(),
                    w(3).clone(),
                ],
                MultRule::II => vec![
                    concat(&[(w(1), k), (w(7), 1)], alphabet),
                    concat(&[(w(4), k), (w(6), 1)], alphabet),
                    concat(&[(w(4), k), (w(5), 1)], alphabet),
                    concat(&[(w(3), 1), (w(4), k - 1), (w(5), 1)], alphabet),
                    w(3).clone(),
                    w(2).clone(),
                    w(1).clone(),
                    concat(&[(w(1), k), (w(9), 1)], alphabet),
                    concat(&[(w(1), k), (w(8), 1)], alphabet),
                ],
            }
        }
        Alphabet::A6 => unreachable!("checked by caller"),
    }
}

/// Stage words at the multiplicative time `m_n`, built block by block from
/// the multiplicative rules.
pub fn multiplicative_stage_words(
    pq: &PartialQuotients,
    alphabet: Alphabet,
    n: usize,
    max_word_letters: usize,
) -> Result<Vec<Word>, WordsError> {
    if alphabet == Alphabet::A6 {
        return Err(WordsError::UnsupportedAlphabet(alphabet));
    }
    if n > pq.len() {
        return Err(WordsError::NotEnoughDirectingData {
            requested: n,
            available: pq.len(),
        });
    }
    let heights = multiplicative_heights(&pq.truncated(n));
    let h = heights.last().unwrap();
    check_cap(n, h, max_word_letters)?;
    let mut cur = identity_stage(alphabet);
    for j in 1..=n {
        cur = mult_step(&cur, alphabet, pq.k(j) as usize, pq.rule(j));
    }
    Ok(cur)
}

/// Heights at multiplicative times `m_0, ..., m_N`, without expanding the
/// directing word (works for astronomically long blocks).
pub fn multiplicative_heights(pq: &PartialQuotients) -> Vec<HeightVector> {
    let mut out = vec![HeightVector::unit()];
    for j in 1..=pq.len() {
        let h = out.last().unwrap();
        let k = BigUint::from(pq.k(j));
        let ka = &k * &h.a;
        let next = match pq.rule(j) {
            MultRule::I => HeightVector {
                a: &ka + &h.b,
                b: &ka + &h.c,
                c: h.a.clone(),
            },
            MultRule::II => HeightVector {
                a: &ka + &h.b,
                b: h.a.clone(),
                c: &ka + &h.c,
            },
        };
        out.push(next);
    }
    out
}

/// Letter-to-letter image of a nine-letter word in the six- or three-letter
/// alphabet.
pub fn project(w: &Word, target: Alphabet) -> Word {
    match (w.alphabet, target) {
        (Alphabet::A9, Alphabet::A9) => w.clone(),
        (Alphabet::A9, Alphabet::A6) => {
            Word::new(target, w.letters.iter().map(|&l| PHI6[l as usize]).collect())
        }
        (Alphabet::A9, Alphabet::A3) => {
            Word::new(target, w.letters.iter().map(|&l| PHI[l as usize]).collect())
        }
        (Alphabet::A6, Alphabet::A3) => {
            Word::new(target, w.letters.iter().map(|&l| PHI3[l as usize]).collect())
        }
        (a, b) if a == b => w.clone(),
        (a, b) => panic!("no projection from {a:?} to {b:?}"),
    }
}

/// Number of distinct length-`n` factors across the collection.
pub fn factor_complexity<'a>(words: impl IntoIterator<Item = &'a Word>, n: usize) -> usize {
    if n == 0 {
        return 1;
    }
    let mut seen: HashSet<&[u8]> = HashSet::new();
    for w in words {
        for f in w.letters.windows(n) {
            seen.insert(f);
        }
    }
    seen.len()
}

/// Factor counts of the three-letter language.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ComplexityProfile {
    /// Stage `K` whose words were glued to list the factors.
    pub stage: usize,
    /// `counts[n - 1] = p(n)` for `n = 1..=n_max`.
    pub counts: Vec<usize>,
}

/// Two-letter factors of the language directed by `symbols`, propagated back
/// from the last symbol. A lower bound that saturates once `symbols` is long
/// enough.
fn two_letter_factors(symbols: &[DirectingSymbol]) -> BTreeSet<(u8, u8)> {
    let mut set = BTreeSet::new();
    for &s in symbols.iter().rev() {
        let sub = sigma3(s);
        let mut next = BTreeSet::new();
        for x in 0..3u8 {
            for w in sub.image(x).windows(2) {
                next.insert((w[0], w[1]));
            }
        }
        for &(x, y) in &set {
            next.insert((*sub.image(x).last().unwrap(), sub.image(y)[0]));
        }
        set = next;
    }
    set
}

/// Exact `p(1..=n_max)` of the three-letter language.
///
/// `K` is the first stage whose words all have at least `n_max - 1` letters.
/// Every factor of length at most `n_max` then lies in some `W_K(x) W_K(y)`
/// with `xy` a two-letter factor at level `K`. Those pairs are read from the
/// rest of `directing`, which is long enough when the first half of that
/// rest (at least one symbol) already yields the same pairs.
pub fn stabilized_complexity(
    directing: &DirectingPrefix,
    n_max: usize,
    max_word_letters: usize,
) -> Result<ComplexityProfile, WordsError> {
    let not_enough = || WordsError::NotEnoughDirectingData {
        requested: directing.len() + 1,
        available: directing.len(),
    };
    let heights = heights_by_matrix(directing);
    let need = BigUint::from(n_max.saturating_sub(1));
    let stage = heights
        .iter()
        .position(|h| h.a >= need && h.b >= need && h.c >= need)
        .ok_or_else(not_enough)?;
    check_cap(stage, &heights[stage], max_word_letters)?;
    let rest = &directing.symbols()[stage..];
    let pairs = two_letter_factors(rest);
    if rest.len() < 2 || two_letter_factors(&rest[..rest.len() / 2]) != pairs {
        return Err(not_enough());
    }
    let words = stage_words(&directing.truncated(stage), Alphabet::A3, max_word_letters)?;
    let glued: Vec<Word> = pairs
        .iter()
        .map(|&(x, y)| {
            let mut letters = words[x as usize].letters.clone();
            letters.extend_from_slice(&words[y as usize].letters);
            Word::new(Alphabet::A3, letters)
        })
        .collect();
    Ok(ComplexityProfile {
        stage,
        counts: (1..=n_max).map(|n| factor_complexity(&glued, n)).collect(),
    })
}

/// Least `N` in `n..=max_n` such that the nine-letter word `i_n` occurs in
/// every `j_N`. `None` when the cap is reached first. `directing` must have
/// at least `max_n` symbols.
pub fn occurrence_horizon(
    directing: &DirectingPrefix,
    i: u8,
    n: usize,
    max_n: usize,
    max_word_letters: usize,
) -> Result<Option<usize>, WordsError> {
    if directing.len() < max_n || n > max_n {
        return Err(WordsError::NotEnoughDirectingData {
            requested: max_n.max(n),
            available: directing.len(),
        });
    }
    let stages = stage_words_all(&directing.truncated(max_n), Alphabet::A9, max_word_letters)?;
    let needle = &stages[n][i as usize];
    Ok((n..=max_n).find(|&big_n| stages[big_n].iter().all(|w| w.contains(needle))))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gasket::partial_quotients;

    fn p(s: &str) -> DirectingPrefix {
        s.parse().unwrap()
    }

    fn show(ws: &[Word]) -> Vec<String> {
        ws.iter().map(|w| w.to_string()).collect()
    }

    #[test]
    fn substitution_tables() {
        use DirectingSymbol::*;
        assert_eq!(sigma3(I).apply_letter(0).to_string(), "ab");
        assert_eq!(sigma3(III).apply_letter(0).to_string(), "a");
        assert_eq!(sigma3(II).apply_letter(2).to_string(), "ac");
        assert_eq!(sigma9(I).apply_letter(a9(8)).to_string(), "2");
        assert_eq!(sigma9(III).apply_letter(a9(1)).to_string(), "1");
        assert_eq!(sigma9(II).apply_letter(a9(9)).to_string(), "18");
    }

    #[test]
    fn stage_word_examples() {
        let w = stage_words(&p("11"), Alphabet::A3, 1000).unwrap();
        assert_eq!(show(&w), ["abac", "aba", "ab"]);
        let w = stage_words(&p("11"), Alphabet::A9, 1000).unwrap();
        assert_eq!(w[0].to_string(), "4618");
        let w = stage_words(&p(""), Alphabet::A3, 1000).unwrap();
        assert_eq!(show(&w), ["a", "b", "c"]);
        let w = stage_words(&p("111"), Alphabet::A3, 1000).unwrap();
        assert_eq!(show(&w), ["abacaba", "abacab", "abac"]);
    }

    #[test]
    fn overflow_is_reported() {
        let err = stage_words(&DirectingPrefix::tribonacci(20), Alphabet::A3, 1000).unwrap_err();
        assert!(matches!(err, WordsError::Overflow { stage: 20, .. }));
        assert!(matches!(
            stage_words(&p("1"), Alphabet::A6, 10),
            Err(WordsError::UnsupportedAlphabet(Alphabet::A6))
        ));
    }

    #[test]
    fn height_examples() {
        let hs = heights_by_matrix(&DirectingPrefix::tribonacci(6));
        let ha: Vec<u64> = hs.iter().map(|h| h.a.to_u64().unwrap()).collect();
        assert_eq!(ha, [1, 2, 4, 7, 13, 24, 44]);
        assert_eq!(heights_by_matrix(&p("")), vec![HeightVector::unit()]);
        let h = &heights_by_matrix(&p("3"))[1];
        assert_eq!(
            (h.a.to_u64(), h.b.to_u64(), h.c.to_u64()),
            (Some(1), Some(2), Some(2))
        );
    }

    #[test]
    fn multiplicative_examples() {
        let trib = PartialQuotients::tribonacci(3);
        let w = multiplicative_stage_words(&trib, Alphabet::A3, 2, 1000).unwrap();
        assert_eq!(w[0].to_string(), "abac");
        let w = multiplicative_stage_words(&trib, Alphabet::A9, 1, 1000).unwrap();
        assert_eq!(w[a9(8) as usize].to_string(), "2");
        let pq = partial_quotients(&p("32")).unwrap();
        let w = multiplicative_stage_words(&pq, Alphabet::A3, 1, 1000).unwrap();
        assert_eq!(show(&w), ["aab", "a", "aac"]);
    }

    #[test]
    fn projections() {
        let w = Word::parse(Alphabet::A9, "4618").unwrap();
        assert_eq!(project(&w, Alphabet::A3).to_string(), "abac");
        assert_eq!(project(&w, Alphabet::A6).to_string(), "a+,b+,a-,c-");
        assert!(project(&Word::empty(Alphabet::A9), Alphabet::A3).is_empty());
        let six = project(&w, Alphabet::A6);
        assert_eq!(project(&six, Alphabet::A3), project(&w, Alphabet::A3));
    }

    #[test]
    fn word_parsing() {
        let w = Word::parse(Alphabet::A6, "a-,a+").unwrap();
        assert_eq!(w.letters, vec![0, 1]);
        assert!(Word::parse(Alphabet::A3, "abd").is_err());
        assert!(Word::parse(Alphabet::A9, "40").is_err());
        let json = serde_json::to_string(&w).unwrap();
        assert_eq!(json, r#""a-,a+""#);
    }

    #[test]
    fn complexity_values() {
        let w = stage_words(&DirectingPrefix::tribonacci(12), Alphabet::A3, 10_000).unwrap();
        assert_eq!(factor_complexity(&w, 1), 3);
        assert_eq!(factor_complexity(&w, 10), 21);
        assert_eq!(factor_complexity(&w, 25), 51);
    }

    #[test]
    fn glued_complexity_matches_deep_stage() {
        // Two consecutive stages of this prefix agree on a wrong plateau at n = 36.
        let d = p(&"13".repeat(14));
        let prof = stabilized_complexity(&d, 40, 1 << 20).unwrap();
        assert!(prof.counts.iter().enumerate().all(|(i, &c)| c == 2 * i + 3));
        let deep = stage_words(&d.truncated(16), Alphabet::A3, 1 << 20).unwrap();
        for n in 1..=20 {
            assert_eq!(prof.counts[n - 1], factor_complexity(&deep, n));
        }
        assert!(stabilized_complexity(&p("1111"), 40, 1 << 20).is_err());
    }

    #[test]
    fn horizons() {
        let trib = DirectingPrefix::tribonacci(12);
        // independently computed by brute-force substring search over stage words
        assert_eq!(occurrence_horizon(&trib, a9(1), 0, 12, 100_000).unwrap(), Some(5));
        assert_eq!(occurrence_horizon(&trib, a9(8), 1, 12, 100_000).unwrap(), Some(6));
        assert_eq!(occurrence_horizon(&trib, a9(1), 3, 3, 100_000).unwrap(), None);
    }
}
