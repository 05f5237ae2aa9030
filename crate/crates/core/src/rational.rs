//! Exact rational numbers and their textual form.
//!
//! Every length and coordinate in the crate is a [`Rational`]. On the wire a
//! rational is always the string `"p/q"` (an integer may be written bare, as
//! `"p"`), so no precision is lost crossing a JSON or shell boundary.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serializer};

pub type Rational = BigRational;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("malformed rational {input:?}: {reason}")]
pub struct ParseRationalError {
    pub input: String,
    pub reason: &'static str,
}

/// Parses `"p/q"` or `"p"` with optional sign on `p`.
pub fn parse_rational(s: &str) -> Result<Rational, ParseRationalError> {
    let err = |reason| ParseRationalError {
        input: s.to_string(),
        reason,
    };
    let t = s.trim();
    if t.is_empty() {
        return Err(err("empty"));
    }
    let (num, den) = match t.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (t, "1"),
    };
    let num: BigInt = num.parse().map_err(|_| err("numerator is not an integer"))?;
    let den: BigInt = den
        .parse()
        .map_err(|_| err("denominator is not an integer"))?;
    if den.is_zero() {
        return Err(err("zero denominator"));
    }
    Ok(Rational::new(num, den))
}

/// Canonical `"p/q"` form; denominators of one are kept so the output is
/// uniform (`"7/1"`).
pub fn format_rational(x: &Rational) -> String {
    format!("{}/{}", x.numer(), x.denom())
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(p: i64, q: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(q))
}

pub fn to_f64(x: &Rational) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

/// Distance from `x` to the nearest integer, exactly.
pub fn dist_to_nearest_integer(x: &Rational) -> Rational {
    let frac = x - x.floor();
    let other = Rational::one() - &frac;
    if frac <= other {
        frac
    } else {
        other
    }
}

/// Reduces `x` into `[0, modulus)`.
pub fn reduce_mod(x: &Rational, modulus: &Rational) -> Rational {
    debug_assert!(modulus.is_positive());
    let q = (x / modulus).floor();
    x - q * modulus
}

pub fn midpoint(lo: &Rational, hi: &Rational) -> Rational {
    (lo + hi) / int(2)
}

/// A displayable wrapper that prints the canonical string.
pub struct Exact<'a>(pub &'a Rational);

impl fmt::Display for Exact<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_rational(self.0))
    }
}

/// `serde(with = "...")` adapter for a single rational.
pub mod serde_rational {
    use super::*;

    pub fn serialize<S: Serializer>(x: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&format_rational(x))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let s = String::deserialize(d)?;
        parse_rational(&s).map_err(serde::de::Error::custom)
    }
}

/// `serde(with = "...")` adapter for an optional rational.
pub mod serde_rational_opt {
    use super::*;

    pub fn serialize<S: Serializer>(x: &Option<Rational>, s: S) -> Result<S::Ok, S::Error> {
        match x {
            Some(x) => s.serialize_some(&format_rational(x)),
            None => s.serialize_none(),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<Rational>, D::Error> {
        Option::<String>::deserialize(d)?
            .map(|s| parse_rational(&s).map_err(serde::de::Error::custom))
            .transpose()
    }
}

/// `serde(with = "...")` adapter for sequences of rationals.
pub mod serde_rational_vec {
    use super::*;
    use serde::ser::SerializeSeq;

    pub fn serialize<S: Serializer>(xs: &[Rational], s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(xs.len()))?;
        for x in xs {
            seq.serialize_element(&format_rational(x))?;
        }
        seq.end()
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Rational>, D::Error> {
        let v = Vec::<String>::deserialize(d)?;
        v.iter()
            .map(|s| parse_rational(s).map_err(serde::de::Error::custom))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_fractions_and_integers() {
        assert_eq!(parse_rational("7/1").unwrap(), int(7));
        assert_eq!(parse_rational("7").unwrap(), int(7));
        assert_eq!(parse_rational("-6/4").unwrap(), ratio(-3, 2));
        assert_eq!(parse_rational(" 3 / 9 ").unwrap(), ratio(1, 3));
    }

    #[test]
    fn rejects_garbage() {
        for bad in ["", "1/0", "a/2", "1/b", "1.5", "1/2/3"] {
            assert!(parse_rational(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn canonical_format() {
        assert_eq!(format_rational(&int(7)), "7/1");
        assert_eq!(format_rational(&ratio(6, 4)), "3/2");
    }

    #[test]
    fn nearest_integer_distance() {
        assert_eq!(dist_to_nearest_integer(&ratio(7, 2)), ratio(1, 2));
        assert_eq!(dist_to_nearest_integer(&ratio(-1, 3)), ratio(1, 3));
        assert_eq!(dist_to_nearest_integer(&ratio(9, 4)), ratio(1, 4));
        assert_eq!(dist_to_nearest_integer(&int(5)), int(0));
    }

    #[test]
    fn modular_reduction() {
        assert_eq!(reduce_mod(&int(27), &int(26)), int(1));
        assert_eq!(reduce_mod(&int(-1), &int(26)), int(25));
        assert_eq!(reduce_mod(&ratio(53, 2), &int(26)), ratio(1, 2));
    }
}
