use num_traits::Zero;
use serde::Serialize;

use super::{Ar9Map, IetError};
use crate::gasket::Triple;
use crate::interval::{Interval, IntervalSet};
use crate::rational::{reduce_mod, serde_rational, Rational};
use crate::words::PHI6;

/// One arc of the circle exchange. Arcs never wrap through zero; a
/// continuity arc that does is stored as two pieces with the same label.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Ar6Arc {
    /// `0..6` for `a-, a+, b-, b+, c-, c+`.
    pub label: u8,
    pub domain: Interval,
    /// Translation, reduced to `[0, L)`.
    #[serde(with = "serde_rational")]
    pub offset: Rational,
}

/// A continuity arc as seen on the circle.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ArcSummary {
    pub label: u8,
    #[serde(with = "serde_rational")]
    pub start: Rational,
    #[serde(with = "serde_rational")]
    pub length: Rational,
    #[serde(with = "serde_rational")]
    pub offset: Rational,
}

/// Circle exchange on `[0, L)`, `L = 2(a+b+c)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Ar6Map {
    pub triple: Triple,
    #[serde(with = "serde_rational")]
    pub length: Rational,
    pub arcs: Vec<Ar6Arc>,
}

/// The circle exchange with `a-` starting at the origin: swap the two arcs of
/// each length, then rotate by half the circle.
pub fn build_ar6_canonical(t: &Triple) -> Result<Ar6Map, IetError> {
    if !t.is_admissible() {
        return Err(IetError::Inadmissible);
    }
    let half = t.sum();
    let length = &half + &half;
    let mut arcs = Vec::with_capacity(6);
    let mut cur = Rational::zero();
    for (i, len) in [&t.a, &t.b, &t.c].into_iter().enumerate() {
        for (sign, sub) in [(1, 0u8), (-1, 1u8)] {
            let shift = if sign > 0 { len + &half } else { &half - len };
            let domain = Interval::with_length(cur.clone(), len);
            cur = domain.hi.clone();
            arcs.push(Ar6Arc {
                label: 2 * i as u8 + sub,
                domain,
                offset: reduce_mod(&shift, &length),
            });
        }
    }
    Ok(Ar6Map {
        triple: t.clone(),
        length,
        arcs,
    })
}

impl Ar6Map {
    pub fn reduce(&self, x: &Rational) -> Rational {
        reduce_mod(x, &self.length)
    }

    fn arc_at(&self, x: &Rational) -> &Ar6Arc {
        let idx = self.arcs.partition_point(|a| &a.domain.lo <= x);
        &self.arcs[idx - 1]
    }

    /// Image of `x` (any rational, read mod `L`) and its label.
    pub fn apply(&self, x: &Rational) -> (Rational, u8) {
        let x = self.reduce(x);
        let arc = self.arc_at(&x);
        (self.reduce(&(&x + &arc.offset)), arc.label)
    }

    pub fn breakpoints(&self) -> Vec<Rational> {
        let mut v: Vec<Rational> = self
            .arcs
            .iter()
            .flat_map(|a| {
                let img = self.reduce(&(&a.domain.lo + &a.offset));
                [a.domain.lo.clone(), img]
            })
            .collect();
        v.sort();
        v.dedup();
        v
    }

    /// Domain arcs tile `[0, L)`, image arcs tile `[0, L)`, and labels carry
    /// lengths `(a, a, b, b, c, c)`.
    pub fn is_valid_exchange(&self) -> bool {
        let full = IntervalSet::from_intervals([Interval::new(Rational::zero(), self.length.clone())]);
        let dom: Vec<Interval> = self.arcs.iter().map(|a| a.domain.clone()).collect();
        if !crate::interval::pairwise_disjoint(&dom) || IntervalSet::from_intervals(dom) != full {
            return false;
        }
        let mut imgs = Vec::new();
        for a in &self.arcs {
            let lo = self.reduce(&(&a.domain.lo + &a.offset));
            let hi = &lo + a.domain.len();
            if hi <= self.length {
                imgs.push(Interval::new(lo, hi));
            } else {
                imgs.push(Interval::new(lo, self.length.clone()));
                imgs.push(Interval::new(Rational::zero(), hi - &self.length));
            }
        }
        if !crate::interval::pairwise_disjoint(&imgs) || IntervalSet::from_intervals(imgs) != full {
            return false;
        }
        let t = &self.triple;
        let want = [&t.a, &t.a, &t.b, &t.b, &t.c, &t.c];
        (0..6u8).all(|l| {
            let total = self
                .arcs
                .iter()
                .filter(|a| a.label == l)
                .fold(Rational::zero(), |s, a| s + a.domain.len());
            &total == want[l as usize]
        })
    }

    /// One summary per label, or `None` when some label is not a single
    /// circular arc with a single translation.
    pub fn summaries(&self) -> Option<[ArcSummary; 6]> {
        let mut out = Vec::with_capacity(6);
        for l in 0..6u8 {
            let arcs: Vec<&Ar6Arc> = self.arcs.iter().filter(|a| a.label == l).collect();
            let offset = arcs.first()?.offset.clone();
            if arcs.iter().any(|a| a.offset != offset) {
                return None;
            }
            let touches = |p: &Rational| {
                arcs.iter().any(|b| {
                    b.domain.hi == *p || (p.is_zero() && b.domain.hi == self.length)
                })
            };
            let starts: Vec<&Ar6Arc> = arcs.iter().copied().filter(|a| !touches(&a.domain.lo)).collect();
            if starts.len() != 1 {
                return None;
            }
            let length = arcs.iter().fold(Rational::zero(), |s, a| s + a.domain.len());
            out.push(ArcSummary {
                label: l,
                start: starts[0].domain.lo.clone(),
                length,
                offset,
            });
        }
        out.try_into().ok()
    }

    /// The rotation `ρ` with `other = rotate(self, ρ)`, if there is one.
    pub fn rotation_to(&self, other: &Ar6Map) -> Option<Rational> {
        if self.length != other.length {
            return None;
        }
        let a = self.summaries()?;
        let b = other.summaries()?;
        let rho = self.reduce(&(&b[0].start - &a[0].start));
        a.iter()
            .zip(b.iter())
            .all(|(x, y)| {
                x.length == y.length
                    && x.offset == y.offset
                    && self.reduce(&(&x.start + &rho)) == y.start
            })
            .then_some(rho)
    }
}

/// The gluing `φ′₆`: supports are closed up in their left-to-right order and
/// wrapped onto a circle of length `2(a+b+c)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Gluing {
    /// Supports in left-to-right order.
    pub blocks: Vec<GluedBlock>,
    #[serde(with = "serde_rational")]
    pub length: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GluedBlock {
    pub support: Interval,
    /// Where the left end of the support lands on the circle.
    #[serde(with = "serde_rational")]
    pub start: Rational,
}

impl Gluing {
    pub fn apply(&self, x: &Rational) -> Result<Rational, IetError> {
        self.blocks
            .iter()
            .find(|b| b.support.contains(x))
            .map(|b| x - &b.support.lo + &b.start)
            .ok_or_else(|| IetError::out_of_domain(x))
    }
}

/// Glues an AR9 map into the circle exchange it factors onto. Pieces coded
/// `1,2 | 3,4 | 5 | 6,7 | 8 | 9` become the arcs `a- | a+ | b- | b+ | c- | c+`.
pub fn glue_to_ar6(m: &Ar9Map) -> (Ar6Map, Gluing) {
    let t = m.triple();
    let mut blocks = Vec::with_capacity(3);
    let mut cur = Rational::zero();
    for role in m.order().spatial() {
        let b = m.omegas()[role].clone();
        let next = &cur + b.len();
        blocks.push(GluedBlock {
            support: b,
            start: cur,
        });
        cur = next;
    }
    let gluing = Gluing {
        blocks,
        length: cur,
    };
    let glue = |x: &Rational| gluing.apply(x).expect("piece endpoints lie in the domain");
    let mut pieces: Vec<Ar6Arc> = (0..9u8)
        .map(|l| {
            let lo = glue(&m.piece(l).lo);
            let img = glue(&m.image(l).lo);
            Ar6Arc {
                label: PHI6[l as usize],
                domain: Interval::with_length(lo.clone(), &m.piece(l).len()),
                offset: reduce_mod(&(img - lo), &gluing.length),
            }
        })
        .collect();
    pieces.sort_by(|x, y| x.domain.lo.cmp(&y.domain.lo));
    let mut arcs: Vec<Ar6Arc> = Vec::with_capacity(9);
    for p in pieces {
        match arcs.last_mut() {
            Some(last)
                if last.label == p.label && last.offset == p.offset && last.domain.hi == p.domain.lo =>
            {
                last.domain.hi = p.domain.hi;
            }
            _ => arcs.push(p),
        }
    }
    let map = Ar6Map {
        triple: t.clone(),
        length: gluing.length.clone(),
        arcs,
    };
    (map, gluing)
}
