//! Length-vector dynamics on the Rauzy gasket.
//!
//! A triple `a > b > c > 0` is renormalized by subtracting the two smaller
//! lengths from the largest and re-sorting. The position of `d = a - b - c`
//! among the survivors gives the directing symbol. Rational triples always
//! leave the gasket after finitely many steps (a tie or a non-positive `d`);
//! that exit is reported, never papered over.

use std::fmt;
use std::str::FromStr;

use num_traits::Signed;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::rational::{format_rational, int, parse_rational, Rational};

/// Upper bound on the length of a prefix accepted by [`reconstruct_triple`].
pub const MAX_RECONSTRUCTION_LEN: usize = 10_000;
pub const DEFAULT_MAX_STEPS: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GasketError {
    #[error("triple leaves the gasket: {0}")]
    NotInGasket(StepReason),
    #[error("seed triple is not admissible (need a > b > c > 0)")]
    InvalidSeed,
    #[error("prefix ends with an unclosed run of III")]
    IncompletePrefix,
    #[error("prefix of length {0} exceeds the reconstruction cap")]
    PrefixTooLong(usize),
    #[error("partial quotients must be positive")]
    ZeroPartialQuotient,
    #[error("partial quotient sum overflows")]
    TimeOverflow,
}

/// Why a renormalization step could not be taken.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum StepReason {
    /// Input triple is not strictly decreasing and positive.
    Inadmissible,
    /// `a - b - c <= 0`.
    NonPositive,
    /// `a - b - c == b`.
    TieWithMiddle,
    /// `a - b - c == c`.
    TieWithSmallest,
}

impl fmt::Display for StepReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            StepReason::Inadmissible => "triple not strictly decreasing and positive",
            StepReason::NonPositive => "a-b-c is not positive",
            StepReason::TieWithMiddle => "a-b-c equals b",
            StepReason::TieWithSmallest => "a-b-c equals c",
        })
    }
}

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Triple {
    pub a: Rational,
    pub b: Rational,
    pub c: Rational,
}

impl Triple {
    pub fn new(a: Rational, b: Rational, c: Rational) -> Self {
        Self { a, b, c }
    }

    pub fn from_ints(a: i64, b: i64, c: i64) -> Self {
        Self::new(int(a), int(b), int(c))
    }

    /// Strictly decreasing and positive.
    pub fn is_admissible(&self) -> bool {
        self.a > self.b && self.b > self.c && self.c.is_positive()
    }

    /// `a + b + c`.
    pub fn sum(&self) -> Rational {
        &self.a + &self.b + &self.c
    }

    pub fn as_array(&self) -> [&Rational; 3] {
        [&self.a, &self.b, &self.c]
    }
}

impl fmt::Display for Triple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({}, {}, {})",
            format_rational(&self.a),
            format_rational(&self.b),
            format_rational(&self.c)
        )
    }
}

impl FromStr for Triple {
    type Err = String;

    /// `"7/1,4/1,2/1"` or `"7,4,2"`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let parts: Vec<&str> = s.split(',').collect();
        if parts.len() != 3 {
            return Err(format!("expected three comma-separated rationals, got {s:?}"));
        }
        let mut v = Vec::with_capacity(3);
        for p in parts {
            v.push(parse_rational(p).map_err(|e| e.to_string())?);
        }
        let c = v.pop().unwrap();
        let b = v.pop().unwrap();
        let a = v.pop().unwrap();
        Ok(Triple::new(a, b, c))
    }
}

impl Serialize for Triple {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        [
            format_rational(&self.a),
            format_rational(&self.b),
            format_rational(&self.c),
        ]
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Triple {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let [a, b, c] = <[String; 3]>::deserialize(d)?;
        let p = |s: &str| parse_rational(s).map_err(serde::de::Error::custom);
        Ok(Triple::new(p(&a)?, p(&b)?, p(&c)?))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum DirectingSymbol {
    I,
    II,
    III,
}

impl DirectingSymbol {
    pub const ALL: [DirectingSymbol; 3] = [DirectingSymbol::I, DirectingSymbol::II, DirectingSymbol::III];

    pub fn digit(self) -> char {
        match self {
            DirectingSymbol::I => '1',
            DirectingSymbol::II => '2',
            DirectingSymbol::III => '3',
        }
    }

    pub fn from_digit(c: char) -> Option<Self> {
        match c {
            '1' => Some(DirectingSymbol::I),
            '2' => Some(DirectingSymbol::II),
            '3' => Some(DirectingSymbol::III),
            _ => None,
        }
    }

    pub fn index(self) -> usize {
        self as usize
    }
}

impl fmt::Display for DirectingSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            DirectingSymbol::I => "I",
            DirectingSymbol::II => "II",
            DirectingSymbol::III => "III",
        })
    }
}

/// A finite word over `{I, II, III}`; serialized as a digit string (`"1123"`).
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct DirectingPrefix(pub Vec<DirectingSymbol>);

impl DirectingPrefix {
    pub fn new(symbols: Vec<DirectingSymbol>) -> Self {
        Self(symbols)
    }

    /// `I` repeated `n` times.
    pub fn tribonacci(n: usize) -> Self {
        Self(vec![DirectingSymbol::I; n])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn symbols(&self) -> &[DirectingSymbol] {
        &self.0
    }

    pub fn truncated(&self, n: usize) -> DirectingPrefix {
        DirectingPrefix(self.0[..n.min(self.0.len())].to_vec())
    }

    pub fn to_digits(&self) -> String {
        self.0.iter().map(|s| s.digit()).collect()
    }
}

impl FromStr for DirectingPrefix {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        s.trim()
            .chars()
            .map(|c| {
                DirectingSymbol::from_digit(c)
                    .ok_or_else(|| format!("directing symbols are 1, 2, 3; got {c:?}"))
            })
            .collect::<Result<Vec<_>, _>>()
            .map(DirectingPrefix)
    }
}

impl fmt::Display for DirectingPrefix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_digits())
    }
}

impl Serialize for DirectingPrefix {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_digits())
    }
}

impl<'de> Deserialize<'de> for DirectingPrefix {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// One renormalization step.
pub fn ar_step(t: &Triple) -> Result<(Triple, DirectingSymbol), GasketError> {
    if !t.is_admissible() {
        return Err(GasketError::NotInGasket(StepReason::Inadmissible));
    }
    let d = &t.a - &t.b - &t.c;
    if !d.is_positive() {
        return Err(GasketError::NotInGasket(StepReason::NonPositive));
    }
    if d == t.b {
        return Err(GasketError::NotInGasket(StepReason::TieWithMiddle));
    }
    if d == t.c {
        return Err(GasketError::NotInGasket(StepReason::TieWithSmallest));
    }
    let (b, c) = (t.b.clone(), t.c.clone());
    Ok(if d > b {
        (Triple::new(d, b, c), DirectingSymbol::III)
    } else if d > c {
        (Triple::new(b, d, c), DirectingSymbol::II)
    } else {
        (Triple::new(b, c, d), DirectingSymbol::I)
    })
}

/// Inverse of [`ar_step`] for a known symbol. The result always steps forward
/// to `t` with `symbol` when `t` is admissible.
pub fn ar_step_inverse(t: &Triple, symbol: DirectingSymbol) -> Triple {
    let big = t.sum();
    match symbol {
        DirectingSymbol::III => Triple::new(big, t.b.clone(), t.c.clone()),
        DirectingSymbol::II => Triple::new(big, t.a.clone(), t.c.clone()),
        DirectingSymbol::I => Triple::new(big, t.a.clone(), t.b.clone()),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum PrefixExit {
    /// `max_steps` reached while still inside the gasket.
    Exhausted,
    /// Step number `at_step` (1-based) could not be taken.
    NotInGasket { at_step: usize, reason: StepReason },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DirectingRun {
    pub prefix: DirectingPrefix,
    pub exit: PrefixExit,
    /// `triples[0]` is the input; `triples[k]` follows `k` steps.
    pub triples: Vec<Triple>,
}

/// Iterates [`ar_step`] at most `max_steps` times.
pub fn directing_prefix(t: &Triple, max_steps: usize) -> DirectingRun {
    let mut triples = vec![t.clone()];
    let mut symbols = Vec::new();
    let mut exit = PrefixExit::Exhausted;
    for step in 1..=max_steps {
        match ar_step(triples.last().unwrap()) {
            Ok((next, sym)) => {
                symbols.push(sym);
                triples.push(next);
            }
            Err(GasketError::NotInGasket(reason)) => {
                exit = PrefixExit::NotInGasket {
                    at_step: step,
                    reason,
                };
                break;
            }
            Err(_) => unreachable!("ar_step only fails with NotInGasket"),
        }
    }
    DirectingRun {
        prefix: DirectingPrefix(symbols),
        exit,
        triples,
    }
}

/// The default seed `(4, 2, 1)`.
pub fn default_seed() -> Triple {
    Triple::from_ints(4, 2, 1)
}

/// Builds the triple whose first `prefix.len()` renormalization steps follow
/// `prefix` and land on `seed`.
pub fn reconstruct_triple(prefix: &DirectingPrefix, seed: &Triple) -> Result<Triple, GasketError> {
    if !seed.is_admissible() {
        return Err(GasketError::InvalidSeed);
    }
    if prefix.len() > MAX_RECONSTRUCTION_LEN {
        return Err(GasketError::PrefixTooLong(prefix.len()));
    }
    Ok(prefix
        .symbols()
        .iter()
        .rev()
        .fold(seed.clone(), |t, &s| ar_step_inverse(&t, s)))
}

/// `(a+b, b+c, a+c)`: lengths of the three supports of the nine-interval map.
pub fn omega_lengths(t: &Triple) -> [Rational; 3] {
    [&t.a + &t.b, &t.b + &t.c, &t.a + &t.c]
}

/// One step of the fully subtractive algorithm on an unordered triple:
/// the smallest entry is subtracted from the other two. Returned sorted
/// decreasingly.
pub fn fully_subtractive_step(x: &[Rational; 3]) -> [Rational; 3] {
    let mut v = x.to_vec();
    v.sort();
    let s = v[0].clone();
    let mut out = [&v[1] - &s, &v[2] - &s, s];
    out.sort_by(|p, q| q.cmp(p));
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum MultRule {
    #[serde(rename = "I_m")]
    I,
    #[serde(rename = "II_m")]
    II,
}

impl MultRule {
    pub fn symbol(self) -> DirectingSymbol {
        match self {
            MultRule::I => DirectingSymbol::I,
            MultRule::II => DirectingSymbol::II,
        }
    }
}

/// Multiplicative decomposition of a directing word: block `n` is
/// `III^(k_n - 1)` closed by `I` or `II`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PartialQuotients {
    ks: Vec<u64>,
    rules: Vec<MultRule>,
    /// `times[n] = k_1 + ... + k_n`, with `times[0] = 0`.
    times: Vec<u64>,
}

impl PartialQuotients {
    pub fn new(ks: Vec<u64>, rules: Vec<MultRule>) -> Result<Self, GasketError> {
        assert_eq!(ks.len(), rules.len(), "ks and rules must have equal length");
        let mut times = Vec::with_capacity(ks.len() + 1);
        times.push(0u64);
        for &k in &ks {
            if k == 0 {
                return Err(GasketError::ZeroPartialQuotient);
            }
            let next = times
                .last()
                .unwrap()
                .checked_add(k)
                .ok_or(GasketError::TimeOverflow)?;
            times.push(next);
        }
        Ok(Self { ks, rules, times })
    }

    /// All rules `I_m`, all `k_n = 1`.
    pub fn tribonacci(n: usize) -> Self {
        Self::new(vec![1; n], vec![MultRule::I; n]).unwrap()
    }

    /// Number of multiplicative blocks.
    pub fn len(&self) -> usize {
        self.ks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ks.is_empty()
    }

    pub fn ks(&self) -> &[u64] {
        &self.ks
    }

    pub fn rules(&self) -> &[MultRule] {
        &self.rules
    }

    /// `k_n`, 1-based.
    pub fn k(&self, n: usize) -> u64 {
        self.ks[n - 1]
    }

    /// The `n`-th multiplicative rule, 1-based.
    pub fn rule(&self, n: usize) -> MultRule {
        self.rules[n - 1]
    }

    /// `m_n`, with `m_0 = 0`.
    pub fn time(&self, n: usize) -> u64 {
        self.times[n]
    }

    /// `(m_1, ..., m_N)`.
    pub fn times(&self) -> &[u64] {
        &self.times[1..]
    }

    /// Truncation to the first `n` blocks.
    pub fn truncated(&self, n: usize) -> PartialQuotients {
        let n = n.min(self.len());
        Self {
            ks: self.ks[..n].to_vec(),
            rules: self.rules[..n].to_vec(),
            times: self.times[..=n].to_vec(),
        }
    }

    /// Expands back to the directing word. Fails when the expansion would be
    /// longer than `max_len`.
    pub fn expand(&self, max_len: usize) -> Result<DirectingPrefix, GasketError> {
        let total = *self.times.last().unwrap();
        if total > max_len as u64 {
            return Err(GasketError::PrefixTooLong(total as usize));
        }
        let mut out = Vec::with_capacity(total as usize);
        for (&k, &r) in self.ks.iter().zip(&self.rules) {
            out.extend(std::iter::repeat_n(DirectingSymbol::III, (k - 1) as usize));
            out.push(r.symbol());
        }
        Ok(DirectingPrefix(out))
    }
}

/// Reads off partial quotients and multiplicative rules.
pub fn partial_quotients(prefix: &DirectingPrefix) -> Result<PartialQuotients, GasketError> {
    let mut ks = Vec::new();
    let mut rules = Vec::new();
    let mut run = 0u64;
    for &s in prefix.symbols() {
        run += 1;
        match s {
            DirectingSymbol::III => {}
            DirectingSymbol::I | DirectingSymbol::II => {
                ks.push(run);
                rules.push(if s == DirectingSymbol::I {
                    MultRule::I
                } else {
                    MultRule::II
                });
                run = 0;
            }
        }
    }
    if run != 0 {
        return Err(GasketError::IncompletePrefix);
    }
    PartialQuotients::new(ks, rules)
}
