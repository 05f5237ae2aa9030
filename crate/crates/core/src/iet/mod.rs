//! Exact geometric models: the nine-interval exchange on three disjoint line
//! intervals and the six-arc exchange on a circle.
//!
//! All pieces are half-open `[lo, hi)`, so every point of the domain,
//! interval endpoints included, has exactly one image.

mod ar6;
mod ar9;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

pub use ar6::{build_ar6_canonical, glue_to_ar6, Ar6Arc, Ar6Map, ArcSummary, GluedBlock, Gluing};
pub use ar9::{build_ar9, piece_lengths, trajectory, Ar9Map, Ar9Piece, Ar9Table, Partition};

use crate::rational::Rational;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum IetError {
    #[error("triple is not admissible (need a > b > c > 0)")]
    Inadmissible,
    #[error("point {0} is outside the domain")]
    OutOfDomain(String),
    #[error("gaps must be nonnegative")]
    NegativeGap,
    #[error("placements of the three supports do not match order {0}")]
    PlacementMismatch(OrderTag),
}

impl IetError {
    pub(crate) fn out_of_domain(x: &Rational) -> Self {
        IetError::OutOfDomain(crate::rational::format_rational(x))
    }
}

/// Left-to-right arrangement of the three supports `Ω, Ω′, Ω″`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BaseOrder {
    First,
    Second,
    Third,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct OrderTag {
    pub base: BaseOrder,
    pub reversed: bool,
}

/// Support roles: `Ω` carries pieces 7,8,9,1; `Ω′` pieces 2,3; `Ω″` pieces 4,5,6.
pub const OMEGA: usize = 0;
pub const OMEGA_PRIME: usize = 1;
pub const OMEGA_SECOND: usize = 2;

impl OrderTag {
    pub const fn new(base: BaseOrder, reversed: bool) -> Self {
        Self { base, reversed }
    }

    pub const FIRST: OrderTag = OrderTag::new(BaseOrder::First, false);

    pub fn all() -> [OrderTag; 6] {
        let mut out = [OrderTag::FIRST; 6];
        let mut i = 0;
        for reversed in [false, true] {
            for base in [BaseOrder::First, BaseOrder::Second, BaseOrder::Third] {
                out[i] = OrderTag { base, reversed };
                i += 1;
            }
        }
        out
    }

    /// Support roles from left to right.
    pub fn spatial(self) -> [usize; 3] {
        let fwd = match self.base {
            BaseOrder::First => [OMEGA, OMEGA_PRIME, OMEGA_SECOND],
            BaseOrder::Second => [OMEGA_PRIME, OMEGA_SECOND, OMEGA],
            BaseOrder::Third => [OMEGA_SECOND, OMEGA, OMEGA_PRIME],
        };
        if self.reversed {
            [fwd[2], fwd[1], fwd[0]]
        } else {
            fwd
        }
    }

    /// The unique tag whose left-to-right arrangement is `roles`.
    pub fn from_spatial(roles: [usize; 3]) -> Option<OrderTag> {
        OrderTag::all().into_iter().find(|o| o.spatial() == roles)
    }

    pub fn toggled(self) -> OrderTag {
        OrderTag {
            base: self.base,
            reversed: !self.reversed,
        }
    }
}

impl fmt::Display for OrderTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let base = match self.base {
            BaseOrder::First => "first",
            BaseOrder::Second => "second",
            BaseOrder::Third => "third",
        };
        if self.reversed {
            write!(f, "reversed-{base}")
        } else {
            f.write_str(base)
        }
    }
}

impl FromStr for OrderTag {
    type Err = String;

    /// `first`, `second`, `third`, optionally prefixed by `reversed-`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim().to_ascii_lowercase();
        let (reversed, rest) = match s.strip_prefix("reversed-") {
            Some(r) => (true, r),
            None => (false, s.as_str()),
        };
        let base = match rest {
            "first" => BaseOrder::First,
            "second" => BaseOrder::Second,
            "third" => BaseOrder::Third,
            _ => return Err(format!("unknown order {s:?}")),
        };
        Ok(OrderTag { base, reversed })
    }
}
