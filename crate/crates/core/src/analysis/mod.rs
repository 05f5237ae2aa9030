//! Finite-data probes of the ergodic behaviour: the `ξ_n` and `Σ 1/k_n`
//! series, weak-mixing patterns, eigenvalue scans, empirical frequencies and
//! preimage clusters.
//!
//! Nothing here decides an asymptotic property. Every flag is computed from
//! a prefix against a threshold taken from [`AnalysisConfig`].

mod conditions;
mod eigen;
mod frequencies;
mod preimage;
mod series;

use serde::Serialize;

pub use conditions::{
    tourab_patterns, twm_pattern, xi_sequence, xi_terms, ConditionFlags, ConditionReport,
    SumCheckpoint, TourabReport, TwmReport, XiBranch, XiTerm, XiTermView,
};
pub use eigen::{eigenvalue_scan, EigenScan, EigenVerdict};
pub use frequencies::{birkhoff_frequencies, two_measure_experiment, FrequencyVector, TwoMeasureReport};
pub use preimage::{preimage_clusters, PreimageReport};
pub use series::ExactSum;

use crate::gasket::GasketError;
use crate::iet::IetError;
use crate::induction::InductionError;
use crate::rational::{ratio, serde_rational, serde_rational_opt, Rational};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum AnalysisError {
    #[error("word {0:?} is not a factor of the coding")]
    NotAFactor(String),
    #[error("orbit length must be positive")]
    EmptyOrbit,
    #[error("depth {depth} is beyond the {available} directing symbols")]
    DepthBeyondPrefix { depth: usize, available: usize },
    #[error(transparent)]
    Gasket(#[from] GasketError),
    #[error(transparent)]
    Iet(#[from] IetError),
    #[error(transparent)]
    Induction(#[from] InductionError),
}

/// Thresholds for the prefix-only verdicts.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AnalysisConfig {
    /// `Σ ξ_n` must reach this level for divergence evidence.
    #[serde(with = "serde_rational")]
    pub xi_sum_threshold: Rational,
    /// ...and the second half of the prefix must still contribute this much.
    #[serde(with = "serde_rational")]
    pub xi_tail_threshold: Rational,
    /// Convergence evidence: the second half of `Σ 1/k_n` is at most this.
    #[serde(with = "serde_rational")]
    pub nue_tail_threshold: Rational,
    pub bqp_bound: u64,
    /// Minimum L1 distance for the two-measure experiment to count.
    #[serde(with = "serde_rational")]
    pub l1_threshold: Rational,
    /// Maximum L1 distance between generic orbits of a uniquely ergodic map.
    #[serde(with = "serde_rational")]
    pub ue_tolerance: Rational,
    /// Eigenvalue scan: a candidate is rejected once this many values exceed
    /// the floor.
    pub eigen_persistence: usize,
    /// Fixed floor; by default `1/(2q)` for `θ = p/q`.
    #[serde(with = "serde_rational_opt")]
    pub eigen_floor: Option<Rational>,
    pub max_listed_terms: usize,
}

impl Default for AnalysisConfig {
    fn default() -> Self {
        Self {
            xi_sum_threshold: ratio(1, 1),
            xi_tail_threshold: ratio(1, 10),
            nue_tail_threshold: ratio(1, 10),
            bqp_bound: 100,
            l1_threshold: ratio(1, 10),
            ue_tolerance: ratio(1, 50),
            eigen_persistence: 3,
            eigen_floor: None,
            max_listed_terms: 1000,
        }
    }
}
