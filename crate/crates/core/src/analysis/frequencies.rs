//! Empirical letter frequencies along exact orbits.

use num_traits::Signed;
use serde::Serialize;

use super::AnalysisError;
use crate::gasket::{reconstruct_triple, MultRule, PartialQuotients, Triple};
use crate::iet::{build_ar9, Ar9Map, OrderTag};
use crate::induction::iterate_induction;
use crate::rational::{int, serde_rational, to_f64, Rational};

/// Frequencies of the nine letters over `length` steps starting at `start`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FrequencyVector {
    #[serde(with = "serde_rational")]
    pub start: Rational,
    pub length: usize,
    pub counts: [u64; 9],
}

impl FrequencyVector {
    /// Exact frequency of stored letter `l`.
    pub fn frequency(&self, l: u8) -> Rational {
        Rational::new(self.counts[l as usize].into(), (self.length as u64).into())
    }

    pub fn frequencies(&self) -> Vec<Rational> {
        (0..9u8).map(|l| self.frequency(l)).collect()
    }

    pub fn total(&self) -> Rational {
        self.frequencies().into_iter().fold(int(0), |s, f| s + f)
    }

    pub fn l1_distance(&self, other: &FrequencyVector) -> Rational {
        (0..9u8)
            .map(|l| (self.frequency(l) - other.frequency(l)).abs())
            .fold(int(0), |s, d| s + d)
    }

    /// `letter,count,frequency,decimal` rows with a header.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("letter,count,frequency,decimal\n");
        for l in 0..9u8 {
            let f = self.frequency(l);
            out.push_str(&format!(
                "{},{},{},{:.6}\n",
                l + 1,
                self.counts[l as usize],
                crate::rational::format_rational(&f),
                to_f64(&f)
            ));
        }
        out
    }
}

pub fn birkhoff_frequencies(
    m: &Ar9Map,
    x: &Rational,
    n: usize,
) -> Result<FrequencyVector, AnalysisError> {
    if n == 0 {
        return Err(AnalysisError::EmptyOrbit);
    }
    let mut counts = [0u64; 9];
    let mut cur = x.clone();
    for _ in 0..n {
        let (next, l) = m.apply(&cur)?;
        counts[l as usize] += 1;
        cur = next;
    }
    Ok(FrequencyVector {
        start: x.clone(),
        length: n,
        counts,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct TwoMeasureReport {
    pub schema: &'static str,
    pub triple: Triple,
    pub depth: usize,
    /// Number of `I_m` rules strictly before the last completed block.
    pub prior_i_rules: usize,
    /// Whether the roles of towers 1 and 4 were exchanged.
    pub exchanged: bool,
    pub vectors: [FrequencyVector; 2],
    #[serde(with = "serde_rational")]
    pub l1_distance: Rational,
    pub l1_approx: f64,
}

/// Orbits from the midpoints of the stage-`depth` bases of towers `1̄` and
/// `4̄`, on the map for the triple reconstructed from the expanded prefix.
pub fn two_measure_experiment(
    pq: &PartialQuotients,
    seed: &Triple,
    depth: usize,
    n: usize,
) -> Result<TwoMeasureReport, AnalysisError> {
    let prefix = pq.expand(crate::gasket::MAX_RECONSTRUCTION_LEN)?;
    if depth > prefix.len() {
        return Err(AnalysisError::DepthBeyondPrefix {
            depth,
            available: prefix.len(),
        });
    }
    let triple = reconstruct_triple(&prefix, seed)?;
    let m = build_ar9(&triple, OrderTag::FIRST, [int(0), int(0)])?;
    let stages = iterate_induction(&m, depth)?;
    let stage_map = stages.last().map_or(&m, |s| &s.map);
    let completed = pq.times().iter().take_while(|&&t| t <= depth as u64).count();
    let prior_i_rules = (1..completed).filter(|&j| pq.rule(j) == MultRule::I).count();
    let exchanged = prior_i_rules % 2 == 1;
    let (one, four) = if exchanged { (3u8, 0u8) } else { (0u8, 3u8) };
    let x = stage_map.piece(one).midpoint();
    let y = stage_map.piece(four).midpoint();
    let vx = birkhoff_frequencies(&m, &x, n)?;
    let vy = birkhoff_frequencies(&m, &y, n)?;
    let l1_distance = vx.l1_distance(&vy);
    Ok(TwoMeasureReport {
        schema: "ar-iet/two-measure/1",
        triple,
        depth,
        prior_i_rules,
        exchanged,
        l1_approx: to_f64(&l1_distance),
        l1_distance,
        vectors: [vx, vy],
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gasket::default_seed;

    #[test]
    fn single_step() {
        let m = build_ar9(&Triple::from_ints(7, 4, 2), OrderTag::FIRST, [int(0), int(0)]).unwrap();
        let f = birkhoff_frequencies(&m, &int(6), 1).unwrap();
        assert_eq!(f.frequency(0), int(1));
        assert_eq!(f.total(), int(1));
        assert!(f.to_csv().starts_with("letter,count,frequency,decimal\n1,1,1/1,"));
    }

    #[test]
    fn depth_zero_is_well_formed() {
        let pq = PartialQuotients::tribonacci(12);
        let r = two_measure_experiment(&pq, &default_seed(), 0, 500).unwrap();
        assert!(!r.exchanged);
        assert_eq!(r.vectors[0].total(), int(1));
        assert_eq!(r.l1_distance, r.vectors[1].l1_distance(&r.vectors[0]));
    }
}
