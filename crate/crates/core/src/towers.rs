//! Rokhlin towers over the induced pieces.
//!
//! At stage `k` the tower over `I_{i,k}` has height `|i_k|`; its levels are
//! the images of the base under the original map, each a single interval.
//! Grouping letters by `φ` gives the three-letter towers over `J_{a,k}`,
//! `J_{b,k}`, `J_{c,k}`.

use serde::{Serialize, Serializer};

use crate::iet::{Ar9Map, OrderTag};
use crate::induction::{iterate_induction, InductionError, InductionStage};
use crate::interval::{pairwise_disjoint, Interval, IntervalSet};
use crate::rational::Rational;
use crate::words::PHI;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum TowerError {
    #[error(transparent)]
    Induction(#[from] InductionError),
    #[error("stage {requested} requested but only {available} stages were computed")]
    StageOutOfRange { requested: usize, available: usize },
    #[error("level {level} of tower {letter} is split by the map")]
    LevelSplit { letter: u8, level: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TowerLabel {
    /// Stored letter `0..9` of the nine-letter alphabet.
    A9(u8),
    /// Stored letter `0..3` of `{a, b, c}`.
    A3(u8),
}

impl Serialize for TowerLabel {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            TowerLabel::A9(l) => s.serialize_str(&(l + 1).to_string()),
            TowerLabel::A3(l) => s.serialize_str(&((b'a' + l) as char).to_string()),
        }
    }
}

impl std::fmt::Display for TowerLabel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            TowerLabel::A9(l) => write!(f, "{}", l + 1),
            TowerLabel::A3(l) => write!(f, "{}", (b'a' + l) as char),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Tower {
    pub label: TowerLabel,
    pub height: usize,
    /// `levels[j] = T^j(base)`.
    pub levels: Vec<IntervalSet>,
}

impl Tower {
    pub fn base(&self) -> &IntervalSet {
        &self.levels[0]
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TowerFamily {
    pub schema: &'static str,
    pub stage: usize,
    /// Order of the stage-`k` induced map.
    pub order: OrderTag,
    /// `X₉`, the domain of the original map.
    pub domain: IntervalSet,
    pub nine: Vec<Tower>,
    pub three: Vec<Tower>,
}

/// Heights `|i_k|` for `k = 0..=stages.len()`, read off the return words.
pub fn tower_heights(stages: &[InductionStage]) -> Vec<[usize; 9]> {
    let mut out = vec![[1usize; 9]];
    for s in stages {
        let prev = *out.last().expect("nonempty");
        out.push(std::array::from_fn(|i| {
            s.returns[i]
                .word
                .letters
                .iter()
                .map(|&y| prev[y as usize])
                .sum()
        }));
    }
    out
}

/// Family at stage `k` given the original map and its induction stages.
pub fn towers_at_stage(
    original: &Ar9Map,
    stages: &[InductionStage],
    k: usize,
) -> Result<TowerFamily, TowerError> {
    if k > stages.len() {
        return Err(TowerError::StageOutOfRange {
            requested: k,
            available: stages.len(),
        });
    }
    let stage_map = if k == 0 { original } else { &stages[k - 1].map };
    let heights = tower_heights(&stages[..k])[k];
    let mut nine = Vec::with_capacity(9);
    for l in 0..9u8 {
        let h = heights[l as usize];
        let mut levels = Vec::with_capacity(h);
        let mut cur = stage_map.piece(l).clone();
        for j in 0..h {
            if j > 0 {
                let p = original
                    .locate_interval(&cur)
                    .ok_or(TowerError::LevelSplit { letter: l, level: j })?;
                cur = cur.translate(original.offset(p));
            }
            levels.push(IntervalSet::from_intervals([cur.clone()]));
        }
        nine.push(Tower {
            label: TowerLabel::A9(l),
            height: h,
            levels,
        });
    }
    let three = (0..3u8)
        .map(|g| {
            let members: Vec<&Tower> = nine
                .iter()
                .filter(|t| matches!(t.label, TowerLabel::A9(l) if PHI[l as usize] == g))
                .collect();
            let height = members[0].height;
            let levels = (0..height)
                .map(|j| {
                    members
                        .iter()
                        .fold(IntervalSet::empty(), |acc, t| acc.union(&t.levels[j]))
                })
                .collect();
            Tower {
                label: TowerLabel::A3(g),
                height,
                levels,
            }
        })
        .collect();
    Ok(TowerFamily {
        schema: "ar-iet/towers/1",
        stage: k,
        order: stage_map.order(),
        domain: original.domain(),
        nine,
        three,
    })
}

/// Convenience: induce `k` times and build the stage-`k` family.
pub fn towers_for(original: &Ar9Map, k: usize) -> Result<TowerFamily, TowerError> {
    let stages = iterate_induction(original, k)?;
    towers_at_stage(original, &stages, k)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckReport {
    pub check: &'static str,
    pub passed: bool,
    pub detail: String,
}

impl CheckReport {
    fn pass(check: &'static str) -> Self {
        Self {
            check,
            passed: true,
            detail: String::new(),
        }
    }

    fn fail(check: &'static str, detail: String) -> Self {
        Self {
            check,
            passed: false,
            detail,
        }
    }
}

/// All nine-letter levels are pairwise disjoint and cover `X₉` exactly.
pub fn partition_check(f: &TowerFamily) -> CheckReport {
    const NAME: &str = "partition";
    let levels: Vec<Interval> = f
        .nine
        .iter()
        .flat_map(|t| t.levels.iter().flat_map(|l| l.parts().iter().cloned()))
        .collect();
    if !pairwise_disjoint(&levels) {
        return CheckReport::fail(NAME, "two levels overlap".into());
    }
    let cover = IntervalSet::from_intervals(levels);
    if cover != f.domain {
        return CheckReport::fail(
            NAME,
            format!("levels cover {:?}, domain is {:?}", cover.parts(), f.domain.parts()),
        );
    }
    CheckReport::pass(NAME)
}

/// Levels of towers `(2,3)`, `(5,6)`, `(8,9)` at equal heights are adjacent
/// intervals, the first of each pair on the left exactly when the stage map
/// is not reversed.
pub fn adjacency_check(f: &TowerFamily) -> CheckReport {
    const NAME: &str = "adjacency";
    for (x, y) in [(1usize, 2usize), (4, 5), (7, 8)] {
        let (tx, ty) = (&f.nine[x], &f.nine[y]);
        for j in 0..tx.height.min(ty.height) {
            let (Some(l), Some(r)) = (single(&tx.levels[j]), single(&ty.levels[j])) else {
                return CheckReport::fail(NAME, format!("level {j} of pair ({},{}) is not an interval", x + 1, y + 1));
            };
            let ok = if f.order.reversed {
                r.hi == l.lo
            } else {
                l.hi == r.lo
            };
            if !ok {
                return CheckReport::fail(
                    NAME,
                    format!("pair ({},{}) level {j}: {l:?} and {r:?}", x + 1, y + 1),
                );
            }
        }
    }
    CheckReport::pass(NAME)
}

fn single(s: &IntervalSet) -> Option<&Interval> {
    match s.parts() {
        [one] => Some(one),
        _ => None,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ComponentCounts {
    pub a: usize,
    pub b: usize,
    pub c: usize,
}

impl ComponentCounts {
    /// `τ_a` levels have at most three components, `τ_b` two, `τ_c` one.
    pub fn within_bounds(&self) -> bool {
        self.a <= 3 && self.b <= 2 && self.c <= 1
    }
}

/// Largest number of connected components over the levels of each
/// three-letter tower.
pub fn level_component_counts(f: &TowerFamily) -> ComponentCounts {
    let max = |g: usize| {
        f.three[g]
            .levels
            .iter()
            .map(IntervalSet::components)
            .max()
            .unwrap_or(0)
    };
    ComponentCounts {
        a: max(0),
        b: max(1),
        c: max(2),
    }
}

/// `(tower letter, level)` of the nine-letter level containing `x`.
pub fn locate(f: &TowerFamily, x: &Rational) -> Option<(u8, usize)> {
    f.nine.iter().enumerate().find_map(|(i, t)| {
        t.levels
            .iter()
            .position(|l| l.contains(x))
            .map(|j| (i as u8, j))
    })
}
