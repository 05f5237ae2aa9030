//! Exact models of Arnoux–Rauzy systems: the gasket renormalization,
//! substitutions, the nine-interval and six-arc exchanges, induction,
//! Rokhlin towers and finite-data ergodic probes.
//!
//! All lengths and coordinates are exact rationals.

pub mod analysis;
pub mod gasket;
pub mod iet;
pub mod induction;
pub mod interval;
pub mod rational;
pub mod towers;
pub mod words;

pub use gasket::{DirectingPrefix, DirectingSymbol, MultRule, PartialQuotients, Triple};
pub use iet::{Ar6Map, Ar9Map, OrderTag};
pub use interval::{Interval, IntervalSet};
pub use rational::Rational;
pub use words::{Alphabet, Word};
