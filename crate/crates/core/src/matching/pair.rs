use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::cfdyn::ti_step;
use crate::error::{Error, Result};
use crate::exactnum::QuadraticNumber;

/// Relation between `x_n = T^n(alpha-1)` and `y_n = T^n(1/alpha-1)` before matching.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum PairTag {
    /// `(x+1)(y+1) = 1`
    A,
    /// `x + y = 0`
    B,
    /// `x + y = 1`
    C,
}

impl PairTag {
    pub fn may_follow(self, prev: PairTag) -> bool {
        matches!(
            (prev, self),
            (PairTag::A, PairTag::B | PairTag::C)
                | (PairTag::B, PairTag::B | PairTag::C)
                | (PairTag::C, PairTag::A)
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairStep {
    pub n: usize,
    pub tag: PairTag,
    pub x: QuadraticNumber,
    pub y: QuadraticNumber,
}

/// First step `m` with an orbit value above `1/(alpha+1)`.
///
/// `epsilon = +1` when the orbit of `alpha - 1` exceeded and `-1` for the orbit of
/// `1/alpha - 1`, so the exceeding value is `T^m(alpha^epsilon - 1)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Exceedance {
    pub m: usize,
    pub epsilon: i8,
}

impl Exceedance {
    /// `(M, N) = (m + 2 - (1-eps)/2, m + 2 + (1-eps)/2)`.
    pub fn exponents(&self) -> (usize, usize) {
        if self.epsilon > 0 {
            (self.m + 2, self.m + 2)
        } else {
            (self.m + 1, self.m + 3)
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum TraceEnd {
    Exceeded,
    Absorbed { at: usize },
    Cycle { entry: usize, period: usize },
    Budget,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairTrace {
    pub steps: Vec<PairStep>,
    pub exceedance: Option<Exceedance>,
    pub end: TraceEnd,
}

pub(crate) fn check_upper_range(alpha: &QuadraticNumber) -> Result<()> {
    if alpha < &QuadraticNumber::golden() || alpha > &QuadraticNumber::one() {
        return Err(Error::Domain(format!("{alpha} is outside [g, 1]")));
    }
    Ok(())
}

fn pair_tag(
    x: &QuadraticNumber,
    y: &QuadraticNumber,
    prev: Option<PairTag>,
    n: usize,
) -> Result<PairTag> {
    let one = BigInt::one();
    let sum = x + y;
    let is_a = x.add_int(&one).checked_mul(&y.add_int(&one))? == QuadraticNumber::one();
    let is_b = sum.is_zero();
    let is_c = sum == QuadraticNumber::one();
    match (is_a, is_b, is_c) {
        (true, true, _) => Ok(if prev == Some(PairTag::C) || prev.is_none() {
            PairTag::A
        } else {
            PairTag::B
        }),
        (true, false, false) => Ok(PairTag::A),
        (false, true, false) => Ok(PairTag::B),
        (false, false, true) => Ok(PairTag::C),
        _ => Err(Error::StateViolation {
            step: n,
            detail: format!("no pair relation holds for x = {x}, y = {y}"),
        }),
    }
}

/// States of `(x_n, y_n)` up to the first exceedance, absorption, cycle or `n_max`.
pub fn pair_trace(alpha: &QuadraticNumber, n_max: usize) -> Result<PairTrace> {
    check_upper_range(alpha)?;
    let one = BigInt::one();
    let threshold = alpha.add_int(&one).recip()?;
    let mut x = alpha.add_int(&-&one);
    let mut y = alpha.recip()?.add_int(&-&one);
    let mut seen = HashMap::new();
    let mut steps: Vec<PairStep> = Vec::new();
    let mut n = 0;
    let (exceedance, end) = loop {
        if let Some(&entry) = seen.get(&(x.clone(), y.clone())) {
            break (None, TraceEnd::Cycle { entry, period: n - entry });
        }
        let prev = steps.last().map(|s| s.tag);
        let tag = pair_tag(&x, &y, prev, n)?;
        if let Some(p) = prev {
            if !tag.may_follow(p) {
                return Err(Error::StateViolation {
                    step: n,
                    detail: format!("transition {p:?} -> {tag:?}"),
                });
            }
        }
        let x_high = x > threshold;
        let y_high = y > threshold;
        steps.push(PairStep { n, tag, x: x.clone(), y: y.clone() });
        if x_high || y_high {
            if tag != PairTag::C || (x_high && y_high) {
                return Err(Error::StateViolation {
                    step: n,
                    detail: format!("exceedance in state {tag:?}"),
                });
            }
            let epsilon = if x_high { 1 } else { -1 };
            break (Some(Exceedance { m: n, epsilon }), TraceEnd::Exceeded);
        }
        if x.is_zero() && y.is_zero() {
            break (None, TraceEnd::Absorbed { at: n });
        }
        if n >= n_max {
            break (None, TraceEnd::Budget);
        }
        seen.insert((x.clone(), y.clone()), n);
        x = ti_step(alpha, &x)?;
        y = ti_step(alpha, &y)?;
        n += 1;
    };
    Ok(PairTrace { steps, exceedance, end })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(s: &str) -> QuadraticNumber {
        s.parse().unwrap()
    }

    #[test]
    fn seven_tenths_exceeds_on_the_x_orbit() {
        let t = pair_trace(&q("7/10"), 100).unwrap();
        assert_eq!(t.exceedance, Some(Exceedance { m: 1, epsilon: 1 }));
        assert_eq!(t.exceedance.unwrap().exponents(), (3, 3));
        let last = t.steps.last().unwrap();
        assert_eq!((&last.x, &last.y), (&q("2/3"), &q("1/3")));
        let tags: Vec<PairTag> = t.steps.iter().map(|s| s.tag).collect();
        assert_eq!(tags, vec![PairTag::A, PairTag::C]);
    }

    #[test]
    fn golden_cycles_without_exceedance() {
        let t = pair_trace(&QuadraticNumber::golden(), 100).unwrap();
        assert_eq!(t.exceedance, None);
        assert!(matches!(t.end, TraceEnd::Cycle { .. }));
    }

    #[test]
    fn four_fifths_absorbs() {
        let t = pair_trace(&q("4/5"), 100).unwrap();
        assert_eq!(t.exceedance, None);
        assert_eq!(t.end, TraceEnd::Absorbed { at: 1 });
    }

    #[test]
    fn outside_range_is_rejected() {
        assert!(matches!(pair_trace(&q("1/2"), 10), Err(Error::Domain(_))));
    }
}
