//! Renormalization of a nine-interval exchange: the first-return map on
//! `J_a = I_1 ∪ I_2 ∪ I_3 ∪ I_4` is again such an exchange, for the triple
//! produced by one gasket step.
//!
//! The induced map is computed geometrically by pushing each candidate piece
//! forward as a whole interval, never assumed from the arithmetic.

use serde::Serialize;

use crate::gasket::{ar_step, DirectingSymbol, GasketError, StepReason, Triple};
use crate::iet::{piece_lengths, Ar9Map, Ar9Table, BaseOrder, IetError, OrderTag};
use crate::interval::Interval;
use crate::rational::{serde_rational, Rational};
use crate::words::{sigma9, Alphabet, Word};

/// Largest return time accepted before the computation is declared faulty.
pub const RETURN_TIME_CAP: usize = 8;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum InductionError {
    #[error("triple leaves the gasket at step {at_step} ({reason})")]
    NotInGasket { at_step: usize, reason: StepReason },
    #[error("piece {letter} straddles a boundary after {steps} applications")]
    Straddle { letter: u8, steps: usize },
    #[error("piece {letter} has not returned after {cap} applications")]
    ReturnTimeCapExceeded { letter: u8, cap: usize },
    #[error("induced supports do not match the lengths of the new triple")]
    UnmatchedSupport,
    #[error(transparent)]
    Layout(#[from] IetError),
}

/// How one induced piece returns: `T_k = T_{k-1}^time` on it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ReturnData {
    pub time: usize,
    #[serde(with = "serde_rational")]
    pub translation: Rational,
    /// Letters of the parent map visited before returning.
    pub word: Word,
    /// Where the piece lands, computed by iteration.
    pub landing: Interval,
}

#[derive(Debug, Clone)]
pub struct InductionStage {
    pub index: usize,
    pub symbol: DirectingSymbol,
    pub map: Ar9Map,
    pub predicted_order: OrderTag,
    /// Indexed by stored letter.
    pub returns: Vec<ReturnData>,
}

impl InductionStage {
    pub fn return_times(&self) -> Vec<usize> {
        self.returns.iter().map(|r| r.time).collect()
    }

    pub fn report(&self) -> StageReport {
        StageReport {
            schema: "ar-iet/induction-stage/1",
            index: self.index,
            symbol: self.symbol,
            predicted_order: self.predicted_order,
            map: self.map.table(),
            returns: self.returns.clone(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct StageReport {
    pub schema: &'static str,
    pub index: usize,
    pub symbol: DirectingSymbol,
    pub predicted_order: OrderTag,
    pub map: Ar9Table,
    pub returns: Vec<ReturnData>,
}

/// Order of the induced map, from the order of the parent and the case.
pub fn predicted_order(o: OrderTag, case: DirectingSymbol) -> OrderTag {
    use BaseOrder::*;
    let (base, flip) = match case {
        DirectingSymbol::I => (
            match o.base {
                First => Third,
                Second => First,
                Third => Second,
            },
            false,
        ),
        DirectingSymbol::II => (
            match o.base {
                First => Second,
                Second => First,
                Third => Third,
            },
            true,
        ),
        DirectingSymbol::III => (o.base, false),
    };
    OrderTag::new(base, o.reversed ^ flip)
}

/// The three blocks of `J_a` that become the new supports: `I_1`, `I_2 ∪ I_3`
/// and `I_4`.
fn return_blocks(m: &Ar9Map) -> [Interval; 3] {
    let (i2, i3) = (m.piece(1), m.piece(2));
    let lo = std::cmp::min(&i2.lo, &i3.lo).clone();
    let hi = std::cmp::max(&i2.hi, &i3.hi).clone();
    [m.piece(0).clone(), Interval::new(lo, hi), m.piece(3).clone()]
}

fn first_return(
    m: &Ar9Map,
    blocks: &[Interval; 3],
    letter: u8,
    start: &Interval,
) -> Result<ReturnData, InductionError> {
    let mut cur = start.clone();
    let mut word = Vec::new();
    for steps in 1..=RETURN_TIME_CAP {
        let l = m
            .locate_interval(&cur)
            .ok_or(InductionError::Straddle { letter, steps })?;
        word.push(l);
        cur = cur.translate(m.offset(l));
        if blocks.iter().any(|b| b.contains_interval(&cur)) {
            return Ok(ReturnData {
                time: steps,
                translation: &cur.lo - &start.lo,
                word: Word::new(Alphabet::A9, word),
                landing: cur,
            });
        }
        if blocks.iter().any(|b| b.overlaps(&cur)) {
            return Err(InductionError::Straddle { letter, steps });
        }
    }
    Err(InductionError::ReturnTimeCapExceeded {
        letter,
        cap: RETURN_TIME_CAP,
    })
}

/// One induction step; `index` is the stage number of the result.
pub fn induce_step(m: &Ar9Map, index: usize) -> Result<InductionStage, InductionError> {
    let (t1, symbol) = ar_step(m.triple()).map_err(|e| match e {
        GasketError::NotInGasket(reason) => InductionError::NotInGasket {
            at_step: index,
            reason,
        },
        _ => InductionError::UnmatchedSupport,
    })?;
    let blocks = return_blocks(m);
    let role_lens = [&t1.a + &t1.b, &t1.b + &t1.c, &t1.a + &t1.c];
    let mut lefts: [Rational; 3] = Default::default();
    let mut by_position: Vec<(Rational, usize)> = Vec::with_capacity(3);
    for (role, len) in role_lens.iter().enumerate() {
        let mut hits = blocks.iter().filter(|b| &b.len() == len);
        let b = hits.next().ok_or(InductionError::UnmatchedSupport)?;
        if hits.next().is_some() {
            return Err(InductionError::UnmatchedSupport);
        }
        lefts[role] = b.lo.clone();
        by_position.push((b.lo.clone(), role));
    }
    by_position.sort();
    let spatial = [by_position[0].1, by_position[1].1, by_position[2].1];
    let order = OrderTag::from_spatial(spatial).ok_or(InductionError::UnmatchedSupport)?;
    let map = Ar9Map::with_placements(&t1, order, lefts)?;
    let returns = (0..9u8)
        .map(|l| first_return(m, &blocks, l, map.piece(l)))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(InductionStage {
        index,
        symbol,
        predicted_order: predicted_order(m.order(), symbol),
        map,
        returns,
    })
}

/// Stages `1..=k`. Stage `j` is the first-return map of stage `j-1` on its
/// `J_a`.
pub fn iterate_induction(m: &Ar9Map, k: usize) -> Result<Vec<InductionStage>, InductionError> {
    let mut out: Vec<InductionStage> = Vec::with_capacity(k);
    for index in 1..=k {
        let parent = out.last().map_or(m, |s| &s.map);
        let stage = induce_step(parent, index)?;
        out.push(stage);
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InductionReport {
    pub schema: &'static str,
    pub case: DirectingSymbol,
    pub order_before: OrderTag,
    pub order_after: OrderTag,
    pub predicted_order: OrderTag,
    pub triple_after: Triple,
    pub triple_matches: bool,
    pub order_matches: bool,
    pub pieces_inside_j_a: bool,
    pub lengths_match: bool,
    pub translations_match: bool,
    pub endpoints_match: bool,
    pub return_words_match: bool,
    pub passed: bool,
}

/// Independent checks of one induction step against the arithmetic step, the
/// order table, the piece-length formulas and the substitution `σ′`.
pub fn verify_induction(m: &Ar9Map) -> Result<InductionReport, InductionError> {
    let stage = induce_step(m, 1)?;
    Ok(check_stage(m, &stage))
}

pub fn check_stage(parent: &Ar9Map, stage: &InductionStage) -> InductionReport {
    let induced = &stage.map;
    let expected = ar_step(parent.triple()).ok();
    let triple_matches = expected
        .as_ref()
        .is_some_and(|(t, s)| t == induced.triple() && *s == stage.symbol);
    let order_matches = induced.order() == stage.predicted_order;
    let blocks = return_blocks(parent);
    let pieces_inside_j_a = induced
        .pieces()
        .iter()
        .all(|p| blocks.iter().any(|b| b.contains_interval(p)));
    let want_len = piece_lengths(induced.triple());
    let lengths_match = (0..9).all(|l| induced.pieces()[l].len() == want_len[l])
        && layout_lengths_ok(induced);
    let translations_match = (0..9u8).all(|l| {
        &stage.returns[l as usize].translation == induced.offset(l)
    });
    let endpoints_match = (0..9u8).all(|l| &stage.returns[l as usize].landing == induced.image(l));
    let sub = sigma9(stage.symbol);
    let return_words_match =
        (0..9u8).all(|l| stage.returns[l as usize].word.letters.as_slice() == sub.image(l));
    let passed = triple_matches
        && order_matches
        && pieces_inside_j_a
        && lengths_match
        && translations_match
        && endpoints_match
        && return_words_match;
    InductionReport {
        schema: "ar-iet/induction-check/1",
        case: stage.symbol,
        order_before: parent.order(),
        order_after: induced.order(),
        predicted_order: stage.predicted_order,
        triple_after: induced.triple().clone(),
        triple_matches,
        order_matches,
        pieces_inside_j_a,
        lengths_match,
        translations_match,
        endpoints_match,
        return_words_match,
        passed,
    }
}

/// Reading each support left to right (right to left when reversed), the
/// pieces come as `7,8,9,1 | 2,3 | 4,5,6`.
fn layout_lengths_ok(m: &Ar9Map) -> bool {
    let seq = m.letters_left_to_right();
    let mut expect: Vec<u8> = Vec::with_capacity(9);
    for role in m.order().spatial() {
        let mut part: Vec<u8> = match role {
            0 => vec![6, 7, 8, 0],
            1 => vec![1, 2],
            _ => vec![3, 4, 5],
        };
        if m.order().reversed {
            part.reverse();
        }
        expect.extend(part);
    }
    seq.as_slice() == expect.as_slice()
}
