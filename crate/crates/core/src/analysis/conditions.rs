//! Diophantine conditions on partial quotients. Every flag here is evidence
//! read off a finite prefix, never a statement about the infinite sequence.

use num_bigint::BigUint;
use serde::Serialize;

use super::series::ExactSum;
use super::AnalysisConfig;
use crate::gasket::{MultRule, PartialQuotients};
use crate::rational::{serde_rational, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum XiBranch {
    /// Rule `n+1` is `I_m` with `k_{n+1} >= 2`: `ξ_n = 1/k_{n+2}`.
    LongI,
    /// Otherwise, with the next `I_m` at rule `n+l`:
    /// `ξ_n = 1/(3^l k_{n+2} ... k_{n+l+1})`.
    Lookahead { l: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct XiTerm {
    pub n: usize,
    pub branch: XiBranch,
    #[serde(skip)]
    pub denom: BigUint,
}

impl XiTerm {
    pub fn value(&self) -> Rational {
        Rational::new(1.into(), self.denom.clone().into())
    }
}

/// `ξ_n` for every `n >= 0` whose definition fits inside the prefix.
pub fn xi_terms(pq: &PartialQuotients) -> Vec<XiTerm> {
    let len = pq.len();
    let mut next_i = vec![None; len + 2];
    for j in (1..=len).rev() {
        next_i[j] = if pq.rule(j) == MultRule::I {
            Some(j)
        } else {
            next_i[j + 1]
        };
    }
    let mut out = Vec::new();
    for n in 0..len.saturating_sub(1) {
        if pq.rule(n + 1) == MultRule::I && pq.k(n + 1) >= 2 {
            out.push(XiTerm {
                n,
                branch: XiBranch::LongI,
                denom: BigUint::from(pq.k(n + 2)),
            });
            continue;
        }
        let Some(j) = next_i[n + 2] else { continue };
        let l = j - n;
        if n + l + 1 > len {
            continue;
        }
        let mut denom = BigUint::from(3u32).pow(l as u32);
        for i in n + 2..=n + l + 1 {
            denom *= pq.k(i);
        }
        out.push(XiTerm {
            n,
            branch: XiBranch::Lookahead { l },
            denom,
        });
    }
    out
}

#[derive(Debug, Clone, Serialize)]
pub struct SumCheckpoint {
    pub upto: usize,
    pub sum: ExactSum,
}

/// Exact partial sums at `n = 1, 10, 100, ...` and at the full length.
fn checkpoints(denoms: &[BigUint]) -> Vec<SumCheckpoint> {
    let mut marks: Vec<usize> = std::iter::successors(Some(1usize), |x| x.checked_mul(10))
        .take_while(|&x| x < denoms.len())
        .collect();
    marks.push(denoms.len());
    marks
        .into_iter()
        .map(|upto| SumCheckpoint {
            upto,
            sum: ExactSum::of_unit_fractions(&denoms[..upto]),
        })
        .collect()
}

#[derive(Debug, Clone, Serialize)]
pub struct ConditionFlags {
    /// `Σ ξ_n` has passed the configured level and is still growing over the
    /// second half of the prefix.
    pub mtours_evidence: bool,
    /// The second half of `Σ 1/k_n` is below the configured tail bound.
    pub nue_evidence: bool,
    /// All partial quotients in the prefix are at most the configured bound.
    pub bqp_bound: bool,
    pub prefix_only: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct ConditionReport {
    pub schema: &'static str,
    pub blocks: usize,
    pub xi: Vec<XiTermView>,
    pub xi_sums: Vec<SumCheckpoint>,
    pub inv_k_sums: Vec<SumCheckpoint>,
    pub max_k: u64,
    pub flags: ConditionFlags,
}

#[derive(Debug, Clone, Serialize)]
pub struct XiTermView {
    pub n: usize,
    pub branch: XiBranch,
    #[serde(with = "serde_rational")]
    pub value: Rational,
}

/// Full condition report; `ξ` values are listed only up to
/// `config.max_listed_terms`.
pub fn xi_sequence(pq: &PartialQuotients, config: &AnalysisConfig) -> ConditionReport {
    let terms = xi_terms(pq);
    let xi_denoms: Vec<BigUint> = terms.iter().map(|t| t.denom.clone()).collect();
    let k_denoms: Vec<BigUint> = pq.ks().iter().map(|&k| BigUint::from(k)).collect();
    let half = |d: &[BigUint]| ExactSum::of_unit_fractions(&d[d.len() / 2..]);
    let xi_sums = checkpoints(&xi_denoms);
    let xi_total = xi_sums.last().map(|c| c.sum.clone()).unwrap_or_else(ExactSum::zero);
    let mtours_evidence = !xi_denoms.is_empty()
        && xi_total.at_least(&config.xi_sum_threshold)
        && half(&xi_denoms).at_least(&config.xi_tail_threshold);
    let nue_evidence = !k_denoms.is_empty() && half(&k_denoms).at_most(&config.nue_tail_threshold);
    let max_k = pq.ks().iter().copied().max().unwrap_or(0);
    ConditionReport {
        schema: "ar-iet/conditions/1",
        blocks: pq.len(),
        xi: terms
            .iter()
            .take(config.max_listed_terms)
            .map(|t| XiTermView {
                n: t.n,
                branch: t.branch,
                value: t.value(),
            })
            .collect(),
        xi_sums,
        inv_k_sums: checkpoints(&k_denoms),
        max_k,
        flags: ConditionFlags {
            mtours_evidence,
            nue_evidence,
            bqp_bound: max_k <= config.bqp_bound,
            prefix_only: true,
        },
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct TwmReport {
    pub schema: &'static str,
    /// The `n >= 1` whose rule is `I_m`.
    pub n_i: Vec<usize>,
    /// `k_{n_i + 2}` where it exists in the prefix.
    pub k_after_two: Vec<u64>,
    pub max_k_after_two: Option<u64>,
    /// The running maximum of `k_{n_i+2}` still rises in the second half.
    pub unbounded_evidence: bool,
    pub sum_inv_k_after_one: ExactSum,
    pub sum_inv_k_at: ExactSum,
    pub prefix_only: bool,
}

pub fn twm_pattern(pq: &PartialQuotients) -> TwmReport {
    let len = pq.len();
    let n_i: Vec<usize> = (1..=len).filter(|&n| pq.rule(n) == MultRule::I).collect();
    let k_after_two: Vec<u64> = n_i
        .iter()
        .filter(|&&n| n + 2 <= len)
        .map(|&n| pq.k(n + 2))
        .collect();
    let (first, second) = k_after_two.split_at(k_after_two.len() / 2);
    let unbounded_evidence = match (first.iter().max(), second.iter().max()) {
        (Some(a), Some(b)) => b > a,
        _ => false,
    };
    TwmReport {
        schema: "ar-iet/twm/1",
        max_k_after_two: k_after_two.iter().copied().max(),
        unbounded_evidence,
        sum_inv_k_after_one: ExactSum::of_reciprocals(
            n_i.iter().filter(|&&n| n < len).map(|&n| pq.k(n + 1)),
        ),
        sum_inv_k_at: ExactSum::of_reciprocals(n_i.iter().map(|&n| pq.k(n))),
        k_after_two,
        n_i,
        prefix_only: true,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TourabReport {
    pub schema: &'static str,
    /// `s` with rule `s+2` equal to `I_m` and `k_{s+2} = 1`.
    pub pattern_i: Vec<usize>,
    /// `s` with rule `s+2` equal to `I_m`, rule `s+1` equal to `II_m` and
    /// `k_{s+1} = 1`.
    pub pattern_ii: Vec<usize>,
}

pub fn tourab_patterns(pq: &PartialQuotients) -> TourabReport {
    let len = pq.len();
    let mut pattern_i = Vec::new();
    let mut pattern_ii = Vec::new();
    for s in 0..len.saturating_sub(1) {
        if pq.rule(s + 2) != MultRule::I {
            continue;
        }
        if pq.k(s + 2) == 1 {
            pattern_i.push(s);
        }
        if pq.rule(s + 1) == MultRule::II && pq.k(s + 1) == 1 {
            pattern_ii.push(s);
        }
    }
    TourabReport {
        schema: "ar-iet/tourab/1",
        pattern_i,
        pattern_ii,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gasket::{partial_quotients, DirectingPrefix};
    use crate::rational::{int, ratio};

    fn pq(ks: &[u64], rules: &str) -> PartialQuotients {
        let rules = rules
            .chars()
            .map(|c| if c == '1' { MultRule::I } else { MultRule::II })
            .collect();
        PartialQuotients::new(ks.to_vec(), rules).unwrap()
    }

    #[test]
    fn tribonacci_xi_is_one_ninth() {
        let terms = xi_terms(&PartialQuotients::tribonacci(30));
        assert_eq!(terms.len(), 28);
        assert!(terms.iter().all(|t| t.value() == ratio(1, 9)));
        assert!(terms.iter().all(|t| t.branch == XiBranch::Lookahead { l: 2 }));
    }

    #[test]
    fn long_i_blocks_give_one_over_k() {
        let terms = xi_terms(&pq(&[3; 10], "1111111111"));
        assert!(terms.iter().all(|t| t.value() == ratio(1, 3)));
        assert!(terms.iter().all(|t| t.branch == XiBranch::LongI));
    }

    #[test]
    fn lookahead_across_ii_blocks() {
        // rule 1 = II, rule 2 = II, rule 3 = I: l = 3 for n = 0.
        let terms = xi_terms(&pq(&[1, 2, 5, 7, 1], "22111"));
        let t0 = &terms[0];
        assert_eq!(t0.n, 0);
        assert_eq!(t0.branch, XiBranch::Lookahead { l: 3 });
        assert_eq!(t0.value(), ratio(1, 27 * 2 * 5 * 7));
    }

    #[test]
    fn inverse_square_series() {
        let ks: Vec<u64> = (1..=1000u64).map(|n| n * n).collect();
        let p = PartialQuotients::new(ks, vec![MultRule::I; 1000]).unwrap();
        let r = xi_sequence(&p, &AnalysisConfig::default());
        assert!(r.flags.nue_evidence);
        assert!(r.inv_k_sums.last().unwrap().sum.at_most(&ratio(17, 10)));
        let trib = xi_sequence(&PartialQuotients::tribonacci(40), &AnalysisConfig::default());
        assert!(!trib.flags.nue_evidence);
        assert!(trib.flags.mtours_evidence);
        assert!(trib.flags.bqp_bound);
    }

    #[test]
    fn twm_on_tribonacci() {
        let r = twm_pattern(&PartialQuotients::tribonacci(20));
        assert_eq!(r.n_i, (1..=20).collect::<Vec<_>>());
        assert_eq!(r.max_k_after_two, Some(1));
        assert!(!r.unbounded_evidence);
        assert!(r.sum_inv_k_at.at_least(&int(20)));
        let empty = twm_pattern(&PartialQuotients::tribonacci(0));
        assert!(empty.n_i.is_empty() && empty.max_k_after_two.is_none());
    }

    #[test]
    fn twm_alternating() {
        let ks: Vec<u64> = (0..10).map(|i| if i % 2 == 0 { 1 } else { 1 << (i / 2 + 1) }).collect();
        let p = pq(&ks, "1212121212");
        let r = twm_pattern(&p);
        assert_eq!(r.n_i, vec![1, 3, 5, 7, 9]);
        assert_eq!(r.k_after_two, vec![1, 1, 1, 1]);
    }

    #[test]
    fn tourab_scan() {
        let t = tourab_patterns(&PartialQuotients::tribonacci(6));
        assert_eq!(t.pattern_i, vec![0, 1, 2, 3, 4]);
        assert!(t.pattern_ii.is_empty());
        let p = partial_quotients(&"2221".parse::<DirectingPrefix>().unwrap()).unwrap();
        assert_eq!(tourab_patterns(&p).pattern_ii, vec![2]);
        assert!(tourab_patterns(&PartialQuotients::tribonacci(0)).pattern_i.is_empty());
    }
}
