//! Exact sums of unit fractions.
//!
//! A sum of a million unit fractions has a denominator of millions of
//! digits, so sums are kept as an unreduced pair `P/Q` built by binary
//! splitting. Comparisons against small rationals only multiply by small
//! integers, and no gcd or long division is ever taken.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Serialize, Serializer};

use crate::rational::{format_rational, Rational};

/// `numer / denom`, exact but not necessarily in lowest terms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExactSum {
    pub terms: usize,
    pub numer: BigUint,
    pub denom: BigUint,
}

/// Above this size the reduced form is not computed for display.
const REDUCE_LIMIT_BITS: u64 = 4096;

impl ExactSum {
    pub fn zero() -> Self {
        Self {
            terms: 0,
            numer: BigUint::zero(),
            denom: BigUint::one(),
        }
    }

    /// `Σ 1/d` over the given positive denominators.
    pub fn of_unit_fractions(denoms: &[BigUint]) -> Self {
        if denoms.is_empty() {
            return Self::zero();
        }
        let (numer, denom) = split(denoms);
        Self {
            terms: denoms.len(),
            numer,
            denom,
        }
    }

    pub fn of_reciprocals(ks: impl IntoIterator<Item = u64>) -> Self {
        let d: Vec<BigUint> = ks.into_iter().map(BigUint::from).collect();
        Self::of_unit_fractions(&d)
    }

    /// `self <= bound`, decided exactly. Negative bounds are never reached.
    pub fn at_most(&self, bound: &Rational) -> bool {
        let (p, q) = (bound.numer(), bound.denom());
        let lhs = BigInt::from(self.numer.clone()) * q;
        let rhs = p * BigInt::from(self.denom.clone());
        lhs <= rhs
    }

    pub fn at_least(&self, bound: &Rational) -> bool {
        let (p, q) = (bound.numer(), bound.denom());
        BigInt::from(self.numer.clone()) * q >= p * BigInt::from(self.denom.clone())
    }

    /// Reduced rational, when the pair is small enough to reduce cheaply.
    pub fn to_rational(&self) -> Option<Rational> {
        (self.denom.bits() <= REDUCE_LIMIT_BITS).then(|| {
            Rational::new(
                BigInt::from(self.numer.clone()),
                BigInt::from(self.denom.clone()),
            )
        })
    }

    /// Floating-point view from the leading bits of both halves.
    pub fn approx(&self) -> f64 {
        let shift = self.denom.bits().saturating_sub(64);
        let n = (&self.numer >> shift).to_f64().unwrap_or(f64::INFINITY);
        let d = (&self.denom >> shift).to_f64().unwrap_or(f64::INFINITY);
        n / d
    }

    /// Integer part and `digits` decimals, truncated toward zero; only for
    /// small pairs.
    fn decimal(&self, digits: u32) -> Option<String> {
        if self.denom.bits() > REDUCE_LIMIT_BITS {
            return None;
        }
        let scaled = &self.numer * BigUint::from(10u32).pow(digits);
        let (q, _) = scaled.div_rem(&self.denom);
        let s = format!("{:0>width$}", q.to_string(), width = digits as usize + 1);
        let (int, frac) = s.split_at(s.len() - digits as usize);
        Some(format!("{int}.{frac}"))
    }
}

fn split(d: &[BigUint]) -> (BigUint, BigUint) {
    if d.len() == 1 {
        return (BigUint::one(), d[0].clone());
    }
    let (l, r) = d.split_at(d.len() / 2);
    let (pl, ql) = split(l);
    let (pr, qr) = split(r);
    (pl * &qr + pr * &ql, ql * qr)
}

impl Serialize for ExactSum {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("ExactSum", 4)?;
        st.serialize_field("terms", &self.terms)?;
        st.serialize_field("exact", &self.to_rational().map(|r| format_rational(&r)))?;
        st.serialize_field("decimal", &self.decimal(12))?;
        st.serialize_field("approx", &self.approx())?;
        st.end()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ratio;

    #[test]
    fn harmonic_prefix() {
        let s = ExactSum::of_reciprocals(1..=4);
        assert_eq!(s.to_rational().unwrap(), ratio(25, 12));
        assert!(s.at_most(&ratio(25, 12)));
        assert!(!s.at_most(&ratio(24, 12)));
        assert!(s.at_least(&ratio(25, 12)));
        assert_eq!(s.decimal(4).unwrap(), "2.0833");
    }

    #[test]
    fn empty_sum() {
        let s = ExactSum::of_reciprocals([]);
        assert_eq!(s.to_rational().unwrap(), ratio(0, 1));
        assert_eq!(s.decimal(3).unwrap(), "0.000");
    }

    #[test]
    fn basel_partial_sum_is_below_the_limit() {
        let s = ExactSum::of_reciprocals((1..=2000u64).map(|n| n * n));
        assert!(s.at_most(&ratio(1645, 1000)));
        assert!(s.at_least(&ratio(1644, 1000)));
        assert!((s.approx() - 1.644_434).abs() < 1e-5);
    }
}
