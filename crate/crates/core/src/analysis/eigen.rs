//! Necessary condition for a rational eigenvalue: along multiplicative
//! times, `k_{n+1} ‖h_{a,m_n} θ‖` must tend to zero.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{Signed, Zero};
use serde::Serialize;

use super::AnalysisConfig;
use crate::gasket::PartialQuotients;
use crate::rational::{serde_rational, serde_rational_vec, Rational};
use crate::words::multiplicative_heights;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum EigenVerdict {
    SurvivesPrefix,
    /// The floor was exceeded for the `persistence`-th time at index `n`.
    RejectedAt { n: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EigenScan {
    pub schema: &'static str,
    #[serde(with = "serde_rational")]
    pub theta: Rational,
    #[serde(with = "serde_rational")]
    pub floor: Rational,
    /// `values[n] = k_{n+1} ‖h_{a,m_n} θ‖` for `n = 0..N-1`.
    #[serde(with = "serde_rational_vec")]
    pub values: Vec<Rational>,
    #[serde(flatten)]
    pub verdict: EigenVerdict,
}

/// `‖h θ‖` computed from `h mod q`, so heights of any size are cheap.
fn dist_times(h: &BigUint, theta: &Rational) -> Rational {
    let q = theta.denom().abs().to_biguint().expect("positive denominator");
    let p = theta.numer().mod_floor(&BigInt::from(q.clone()));
    let p = p.to_biguint().expect("reduced residue is nonnegative");
    let r = (h % &q) * p % &q;
    let other = &q - &r;
    let near = if r <= other { r } else { other };
    Rational::new(near.into(), q.into())
}

pub fn eigenvalue_scan(pq: &PartialQuotients, theta: &Rational, config: &AnalysisConfig) -> EigenScan {
    let heights = multiplicative_heights(pq);
    let floor = config
        .eigen_floor
        .clone()
        .unwrap_or_else(|| Rational::new(1.into(), theta.denom() * 2));
    let mut values = Vec::with_capacity(pq.len());
    let mut hits = 0usize;
    let mut verdict = EigenVerdict::SurvivesPrefix;
    for n in 0..pq.len() {
        let d = dist_times(&heights[n].a, theta);
        let v = d * Rational::from_integer(BigInt::from(pq.k(n + 1)));
        if !v.is_zero() && v >= floor {
            hits += 1;
            if hits == config.eigen_persistence && verdict == EigenVerdict::SurvivesPrefix {
                verdict = EigenVerdict::RejectedAt { n };
            }
        }
        values.push(v);
    }
    EigenScan {
        schema: "ar-iet/eigen-scan/1",
        theta: theta.clone(),
        floor,
        values,
        verdict,
    }
}
