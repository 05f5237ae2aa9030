//! Points sharing a three-letter coding.
//!
//! The set of `x` whose `{a,b,c}` trajectory begins with a given word is a
//! finite union of intervals. It is refined letter by letter: each piece
//! tracks its own image under the iterate so far, so every step is an exact
//! split by the partition followed by a translation.

use serde::Serialize;

use super::AnalysisError;
use crate::iet::Ar9Map;
use crate::interval::{Interval, IntervalSet};
use crate::words::{Alphabet, Word, PHI};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PreimageReport {
    pub schema: &'static str,
    /// Connected components of the final set.
    pub count: usize,
    pub depth: usize,
    /// `profile[j]` is the component count after `j + 1` letters.
    pub profile: Vec<usize>,
    pub witnesses: Vec<Interval>,
}

struct Cylinder {
    src: Interval,
    img: Interval,
}

fn refine(m: &Ar9Map, cyls: Vec<Cylinder>, letter: u8) -> Vec<Cylinder> {
    let mut out = Vec::with_capacity(cyls.len());
    for c in cyls {
        let shift = &c.src.lo - &c.img.lo;
        for p in 0..9u8 {
            if PHI[p as usize] != letter {
                continue;
            }
            if let Some(part) = c.img.intersection(m.piece(p)) {
                out.push(Cylinder {
                    src: part.translate(&shift),
                    img: part.translate(m.offset(p)),
                });
            }
        }
    }
    out
}

/// Exact set of points coded by `target` (over `{a,b,c}`), with its
/// component count after every prefix.
pub fn preimage_clusters(m: &Ar9Map, target: &Word) -> Result<PreimageReport, AnalysisError> {
    if target.alphabet != Alphabet::A3 || target.is_empty() {
        return Err(AnalysisError::NotAFactor(target.to_string()));
    }
    let mut cyls: Vec<Cylinder> = m
        .domain()
        .parts()
        .iter()
        .map(|p| Cylinder {
            src: p.clone(),
            img: p.clone(),
        })
        .collect();
    let mut profile = Vec::with_capacity(target.len());
    let mut set = IntervalSet::empty();
    for &letter in &target.letters {
        cyls = refine(m, cyls, letter);
        if cyls.is_empty() {
            return Err(AnalysisError::NotAFactor(target.to_string()));
        }
        set = IntervalSet::from_intervals(cyls.iter().map(|c| c.src.clone()));
        profile.push(set.components());
    }
    Ok(PreimageReport {
        schema: "ar-iet/preimage/1",
        count: set.components(),
        depth: target.len(),
        profile,
        witnesses: set.parts().to_vec(),
    })
}
