use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::{IetError, OrderTag, OMEGA, OMEGA_PRIME, OMEGA_SECOND};
use crate::gasket::Triple;
use crate::interval::{Interval, IntervalSet};
use crate::rational::{serde_rational, Rational};
use crate::words::{Alphabet, Word, PHI, PHI6};

/// Coding partition used by [`trajectory`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Partition {
    /// The nine pieces, letters `1..=9`.
    Nine,
    /// The six continuity sets `a-,...,c+` of the circle model.
    Six,
    /// `J_a, J_b, J_c`, letters `a,b,c`.
    Three,
}

impl Partition {
    pub fn alphabet(self) -> Alphabet {
        match self {
            Partition::Nine => Alphabet::A9,
            Partition::Six => Alphabet::A6,
            Partition::Three => Alphabet::A3,
        }
    }

    fn project(self, letter: u8) -> u8 {
        match self {
            Partition::Nine => letter,
            Partition::Six => PHI6[letter as usize],
            Partition::Three => PHI[letter as usize],
        }
    }
}

/// Pieces of one support from left to right, in the unreversed layout:
/// `(letter, which length)` where lengths are indexed by [`seg_len`].
fn role_layout(role: usize) -> (&'static [(u8, Seg)], &'static [(u8, Seg)]) {
    use Seg::*;
    match role {
        OMEGA => (
            &[(6, BmC), (7, C), (8, C), (0, AmC)],
            &[(0, AmC), (1, C), (5, C), (6, BmC)],
        ),
        OMEGA_PRIME => (&[(1, C), (2, B)], &[(4, B), (8, C)]),
        OMEGA_SECOND => (
            &[(3, AmB), (4, B), (5, C)],
            &[(7, C), (2, B), (3, AmB)],
        ),
        _ => unreachable!("three roles"),
    }
}

#[derive(Clone, Copy)]
enum Seg {
    B,
    C,
    AmB,
    AmC,
    BmC,
}

fn seg_len(t: &Triple, s: Seg) -> Rational {
    match s {
        Seg::B => t.b.clone(),
        Seg::C => t.c.clone(),
        Seg::AmB => &t.a - &t.b,
        Seg::AmC => &t.a - &t.c,
        Seg::BmC => &t.b - &t.c,
    }
}

/// Lengths of `I_1, ..., I_9` for triple `t`.
pub fn piece_lengths(t: &Triple) -> [Rational; 9] {
    let mut out: [Rational; 9] = Default::default();
    for role in [OMEGA, OMEGA_PRIME, OMEGA_SECOND] {
        for &(l, seg) in role_layout(role).0 {
            out[l as usize] = seg_len(t, seg);
        }
    }
    out
}

pub(crate) fn role_len(t: &Triple, role: usize) -> Rational {
    match role {
        OMEGA => &t.a + &t.b,
        OMEGA_PRIME => &t.b + &t.c,
        _ => &t.a + &t.c,
    }
}

/// Lays `segs` out inside `[left, left + total)`, mirrored when `reversed`.
fn lay_out(
    t: &Triple,
    left: &Rational,
    segs: &[(u8, Seg)],
    reversed: bool,
    out: &mut [Option<Interval>; 9],
) {
    let mut cur = left.clone();
    let mut place = |&(letter, seg): &(u8, Seg)| {
        let iv = Interval::with_length(cur.clone(), &seg_len(t, seg));
        cur = iv.hi.clone();
        out[letter as usize] = Some(iv);
    };
    if reversed {
        segs.iter().rev().for_each(&mut place);
    } else {
        segs.iter().for_each(&mut place);
    }
}

/// The nine-interval exchange: piece `I_i` is translated onto `TI_i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Ar9Map {
    triple: Triple,
    order: OrderTag,
    omegas: [Interval; 3],
    pieces: [Interval; 9],
    images: [Interval; 9],
    offsets: [Rational; 9],
    by_lo: [u8; 9],
    by_image_lo: [u8; 9],
}

/// Builds the map with supports laid out left to right in `order`, starting at
/// zero, separated by the two gaps.
pub fn build_ar9(t: &Triple, order: OrderTag, gaps: [Rational; 2]) -> Result<Ar9Map, IetError> {
    if !t.is_admissible() {
        return Err(IetError::Inadmissible);
    }
    if gaps.iter().any(|g| g < &Rational::zero()) {
        return Err(IetError::NegativeGap);
    }
    let mut lefts: [Rational; 3] = Default::default();
    let mut cur = Rational::zero();
    for (idx, role) in order.spatial().into_iter().enumerate() {
        lefts[role] = cur.clone();
        cur += role_len(t, role);
        if idx < 2 {
            cur += &gaps[idx];
        }
    }
    Ar9Map::with_placements(t, order, lefts)
}

impl Ar9Map {
    /// `lefts[role]` is the left endpoint of `Ω`, `Ω′`, `Ω″`. The supports must
    /// be disjoint and appear left to right as `order` prescribes.
    pub fn with_placements(
        t: &Triple,
        order: OrderTag,
        lefts: [Rational; 3],
    ) -> Result<Ar9Map, IetError> {
        if !t.is_admissible() {
            return Err(IetError::Inadmissible);
        }
        let omegas: [Interval; 3] =
            std::array::from_fn(|r| Interval::with_length(lefts[r].clone(), &role_len(t, r)));
        let sp = order.spatial();
        if !(omegas[sp[0]].hi <= omegas[sp[1]].lo && omegas[sp[1]].hi <= omegas[sp[2]].lo) {
            return Err(IetError::PlacementMismatch(order));
        }
        let mut pieces: [Option<Interval>; 9] = Default::default();
        let mut images: [Option<Interval>; 9] = Default::default();
        for role in [OMEGA, OMEGA_PRIME, OMEGA_SECOND] {
            let (dom, img) = role_layout(role);
            lay_out(t, &omegas[role].lo, dom, order.reversed, &mut pieces);
            lay_out(t, &omegas[role].lo, img, order.reversed, &mut images);
        }
        let pieces = pieces.map(|p| p.expect("every letter is laid out"));
        let images = images.map(|p| p.expect("every letter is laid out"));
        let offsets = std::array::from_fn(|i| &images[i].lo - &pieces[i].lo);
        let mut by_lo: [u8; 9] = std::array::from_fn(|i| i as u8);
        by_lo.sort_by(|&x, &y| pieces[x as usize].lo.cmp(&pieces[y as usize].lo));
        let mut by_image_lo: [u8; 9] = std::array::from_fn(|i| i as u8);
        by_image_lo.sort_by(|&x, &y| images[x as usize].lo.cmp(&images[y as usize].lo));
        Ok(Ar9Map {
            triple: t.clone(),
            order,
            omegas,
            pieces,
            images,
            offsets,
            by_lo,
            by_image_lo,
        })
    }

    pub fn triple(&self) -> &Triple {
        &self.triple
    }

    pub fn order(&self) -> OrderTag {
        self.order
    }

    /// Supports indexed by role (`Ω`, `Ω′`, `Ω″`).
    pub fn omegas(&self) -> &[Interval; 3] {
        &self.omegas
    }

    /// `I_i` for stored letter `i` (0-based).
    pub fn piece(&self, letter: u8) -> &Interval {
        &self.pieces[letter as usize]
    }

    pub fn pieces(&self) -> &[Interval; 9] {
        &self.pieces
    }

    pub fn image(&self, letter: u8) -> &Interval {
        &self.images[letter as usize]
    }

    pub fn images(&self) -> &[Interval; 9] {
        &self.images
    }

    pub fn offset(&self, letter: u8) -> &Rational {
        &self.offsets[letter as usize]
    }

    /// Letters ordered by the left endpoint of their piece.
    pub fn letters_left_to_right(&self) -> [u8; 9] {
        self.by_lo
    }

    pub fn domain(&self) -> IntervalSet {
        IntervalSet::from_intervals(self.omegas.iter().cloned())
    }

    /// Union of the pieces coded by `letters`.
    pub fn union_of(&self, letters: impl IntoIterator<Item = u8>) -> IntervalSet {
        IntervalSet::from_intervals(letters.into_iter().map(|l| self.pieces[l as usize].clone()))
    }

    /// `J_a = I_1 ∪ I_2 ∪ I_3 ∪ I_4`, the set the next induction returns to.
    pub fn j_a(&self) -> IntervalSet {
        self.union_of(0..4)
    }

    pub fn locate(&self, x: &Rational) -> Option<u8> {
        let idx = self
            .by_lo
            .partition_point(|&l| &self.pieces[l as usize].lo <= x);
        let l = *self.by_lo.get(idx.checked_sub(1)?)?;
        self.pieces[l as usize].contains(x).then_some(l)
    }

    /// Letter of the piece containing all of `iv`, if any.
    pub fn locate_interval(&self, iv: &Interval) -> Option<u8> {
        let l = self.locate(&iv.lo)?;
        self.pieces[l as usize].contains_interval(iv).then_some(l)
    }

    pub fn apply(&self, x: &Rational) -> Result<(Rational, u8), IetError> {
        let l = self.locate(x).ok_or_else(|| IetError::out_of_domain(x))?;
        Ok((x + &self.offsets[l as usize], l))
    }

    /// `T^{-1} y` together with the letter of the piece it lies in.
    pub fn apply_inverse(&self, y: &Rational) -> Result<(Rational, u8), IetError> {
        let idx = self
            .by_image_lo
            .partition_point(|&l| &self.images[l as usize].lo <= y);
        let l = idx
            .checked_sub(1)
            .map(|i| self.by_image_lo[i])
            .filter(|&l| self.images[l as usize].contains(y))
            .ok_or_else(|| IetError::out_of_domain(y))?;
        Ok((y - &self.offsets[l as usize], l))
    }

    /// Exact preimage of a set: `T^{-1}(S)`.
    pub fn preimage(&self, s: &IntervalSet) -> IntervalSet {
        let mut parts = Vec::new();
        for l in 0..9 {
            let neg = -&self.offsets[l];
            for p in s.intersect_interval(&self.images[l]).parts() {
                parts.push(p.translate(&neg));
            }
        }
        IntervalSet::from_intervals(parts)
    }

    /// All piece and image endpoints; the map is continuous off this set.
    pub fn breakpoints(&self) -> Vec<Rational> {
        let mut v: Vec<Rational> = self
            .pieces
            .iter()
            .chain(self.images.iter())
            .flat_map(|p| [p.lo.clone(), p.hi.clone()])
            .collect();
        v.sort();
        v.dedup();
        v
    }

    pub fn table(&self) -> Ar9Table {
        Ar9Table {
            schema: "ar-iet/ar9-table/1",
            triple: self.triple.clone(),
            order: self.order,
            omegas: self.omegas.clone(),
            pieces: self
                .by_lo
                .iter()
                .map(|&l| Ar9Piece {
                    letter: l + 1,
                    domain: self.pieces[l as usize].clone(),
                    image: self.images[l as usize].clone(),
                    offset: self.offsets[l as usize].clone(),
                })
                .collect(),
        }
    }
}

/// Length-`n` coding of the orbit of `x`.
pub fn trajectory(
    m: &Ar9Map,
    x: &Rational,
    n: usize,
    partition: Partition,
) -> Result<Word, IetError> {
    let mut letters = Vec::with_capacity(n);
    let mut cur = x.clone();
    for _ in 0..n {
        let (next, l) = m.apply(&cur)?;
        letters.push(partition.project(l));
        cur = next;
    }
    Ok(Word::new(partition.alphabet(), letters))
}

#[derive(Debug, Clone, Serialize)]
pub struct Ar9Piece {
    /// 1-based letter.
    pub letter: u8,
    pub domain: Interval,
    pub image: Interval,
    #[serde(with = "serde_rational")]
    pub offset: Rational,
}

/// JSON view of a map: supports by role and pieces left to right.
#[derive(Debug, Clone, Serialize)]
pub struct Ar9Table {
    pub schema: &'static str,
    pub triple: Triple,
    pub order: OrderTag,
    pub omegas: [Interval; 3],
    pub pieces: Vec<Ar9Piece>,
}
