//! Half-open intervals `[lo, hi)` with rational endpoints, and finite unions
//! of them kept sorted and merged.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::rational::{format_rational, serde_rational, Rational};

#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Interval {
    #[serde(with = "serde_rational")]
    pub lo: Rational,
    #[serde(with = "serde_rational")]
    pub hi: Rational,
}

impl Interval {
    /// Panics if `lo > hi`; empty intervals (`lo == hi`) are allowed.
    pub fn new(lo: Rational, hi: Rational) -> Self {
        assert!(lo <= hi, "interval endpoints out of order");
        Self { lo, hi }
    }

    pub fn with_length(lo: Rational, len: &Rational) -> Self {
        let hi = &lo + len;
        Self::new(lo, hi)
    }

    pub fn len(&self) -> Rational {
        &self.hi - &self.lo
    }

    pub fn is_empty(&self) -> bool {
        self.lo == self.hi
    }

    pub fn contains(&self, x: &Rational) -> bool {
        &self.lo <= x && x < &self.hi
    }

    pub fn contains_interval(&self, other: &Interval) -> bool {
        self.lo <= other.lo && other.hi <= self.hi
    }

    pub fn overlaps(&self, other: &Interval) -> bool {
        self.lo < other.hi && other.lo < self.hi
    }

    pub fn intersection(&self, other: &Interval) -> Option<Interval> {
        let lo = if self.lo >= other.lo { &self.lo } else { &other.lo };
        let hi = if self.hi <= other.hi { &self.hi } else { &other.hi };
        (lo < hi).then(|| Interval::new(lo.clone(), hi.clone()))
    }

    pub fn translate(&self, by: &Rational) -> Interval {
        Interval {
            lo: &self.lo + by,
            hi: &self.hi + by,
        }
    }

    pub fn midpoint(&self) -> Rational {
        crate::rational::midpoint(&self.lo, &self.hi)
    }
}

impl fmt::Debug for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[{}, {})",
            format_rational(&self.lo),
            format_rational(&self.hi)
        )
    }
}

/// A finite union of half-open intervals, normalized: sorted, nonempty parts,
/// and parts that touch (`a.hi == b.lo`) merged into one.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntervalSet {
    parts: Vec<Interval>,
}

impl IntervalSet {
    pub fn empty() -> Self {
        Self::default()
    }

    pub fn from_intervals(parts: impl IntoIterator<Item = Interval>) -> Self {
        let mut v: Vec<Interval> = parts.into_iter().filter(|i| !i.is_empty()).collect();
        v.sort_by(|a, b| a.lo.cmp(&b.lo));
        let mut merged: Vec<Interval> = Vec::with_capacity(v.len());
        for iv in v {
            match merged.last_mut() {
                Some(last) if iv.lo <= last.hi => {
                    if iv.hi > last.hi {
                        last.hi = iv.hi;
                    }
                }
                _ => merged.push(iv),
            }
        }
        Self { parts: merged }
    }

    pub fn parts(&self) -> &[Interval] {
        &self.parts
    }

    /// Number of connected components.
    pub fn components(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn measure(&self) -> Rational {
        self.parts
            .iter()
            .fold(crate::rational::int(0), |acc, p| acc + p.len())
    }

    pub fn contains(&self, x: &Rational) -> bool {
        // parts are sorted and disjoint
        let idx = self.parts.partition_point(|p| &p.hi <= x);
        self.parts.get(idx).is_some_and(|p| p.contains(x))
    }

    pub fn intersect_interval(&self, iv: &Interval) -> IntervalSet {
        IntervalSet::from_intervals(self.parts.iter().filter_map(|p| p.intersection(iv)))
    }

    pub fn union(&self, other: &IntervalSet) -> IntervalSet {
        IntervalSet::from_intervals(self.parts.iter().chain(other.parts.iter()).cloned())
    }

    pub fn intersection(&self, other: &IntervalSet) -> IntervalSet {
        let mut out = Vec::new();
        for p in &self.parts {
            for q in &other.parts {
                if let Some(r) = p.intersection(q) {
                    out.push(r);
                }
            }
        }
        IntervalSet::from_intervals(out)
    }

    pub fn translate(&self, by: &Rational) -> IntervalSet {
        IntervalSet {
            parts: self.parts.iter().map(|p| p.translate(by)).collect(),
        }
    }
}

/// True when the intervals are pairwise disjoint (touching is fine).
pub fn pairwise_disjoint(intervals: &[Interval]) -> bool {
    let mut v: Vec<&Interval> = intervals.iter().filter(|i| !i.is_empty()).collect();
    v.sort_by(|a, b| a.lo.cmp(&b.lo));
    v.windows(2).all(|w| w[0].hi <= w[1].lo)
}
