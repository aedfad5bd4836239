use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::One;
use serde::{Deserialize, Serialize};

use super::gauss::GaussOrbit;
use super::pair::{check_upper_range, TraceEnd};
use crate::cfdyn::ti_step;
use crate::error::{Error, Result};
use crate::exactnum::QuadraticNumber;

/// Relations satisfied by `(x~_n, y~_n, z~_n)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum TripleTag {
    /// `z = x`, `(x+1)(y+1) = 1`
    A,
    /// `z = x`, `x + y = 0`
    B0,
    /// `z = 1 + x`, `x + y = 0`
    B1,
    /// `z = x`, `x + y = 1`
    C,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TripleState {
    pub n: usize,
    pub tag: TripleTag,
    pub x: QuadraticNumber,
    pub y: QuadraticNumber,
    pub z: QuadraticNumber,
    /// `r_n`: how many times the roles of the two orbits have swapped.
    pub r: usize,
    /// `R`-count `#{1 <= k < n + r_n + 1 : z_k >= alpha}` along the Gauss orbit.
    pub r_gauss: usize,
    /// For state C, whether `z~` lies in `(1-a, a/(a+1)) ∪ (1/(a+1), a)`.
    pub critical: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TripleTrace {
    pub states: Vec<TripleState>,
    pub end: TraceEnd,
    /// Number of C states whose Gauss index was checked to carry an odd `P`.
    pub parity_checks: usize,
}

struct Bounds {
    alpha: QuadraticNumber,
    one_minus: QuadraticNumber,
    a_over: QuadraticNumber,
    inv_a1: QuadraticNumber,
    half: QuadraticNumber,
}

impl Bounds {
    fn new(alpha: &QuadraticNumber) -> Result<Self> {
        let one = BigInt::one();
        let inv_a1 = alpha.add_int(&one).recip()?;
        Ok(Bounds {
            alpha: alpha.clone(),
            one_minus: (-alpha).add_int(&one),
            a_over: alpha.checked_mul(&inv_a1)?,
            inv_a1,
            half: QuadraticNumber::ratio(1, 2)?,
        })
    }

    fn critical(&self, z: &QuadraticNumber) -> bool {
        (&self.one_minus < z && z < &self.a_over) || (&self.inv_a1 < z && z < &self.alpha)
    }

    fn swaps_after_c(&self, z: &QuadraticNumber) -> bool {
        &self.half < z && z <= &self.inv_a1
    }
}

fn violation(n: usize, detail: String) -> Error {
    Error::StateViolation { step: n, detail }
}

fn classify(
    n: usize,
    x: &QuadraticNumber,
    y: &QuadraticNumber,
    z: &QuadraticNumber,
    prev: Option<TripleTag>,
) -> Result<TripleTag> {
    let one = BigInt::one();
    let sum = x + y;
    let z_is_x = z == x;
    let a = z_is_x && x.add_int(&one).checked_mul(&y.add_int(&one))? == QuadraticNumber::one();
    let b0 = z_is_x && sum.is_zero();
    let b1 = *z == x.add_int(&one) && sum.is_zero();
    let c = z_is_x && sum == QuadraticNumber::one();
    let tags: Vec<TripleTag> = [(a, TripleTag::A), (b0, TripleTag::B0), (b1, TripleTag::B1), (c, TripleTag::C)]
        .into_iter()
        .filter_map(|(hit, t)| hit.then_some(t))
        .collect();
    match tags.as_slice() {
        [t] => Ok(*t),
        [TripleTag::A, TripleTag::B0] => Ok(match prev {
            None | Some(TripleTag::C) => TripleTag::A,
            _ => TripleTag::B0,
        }),
        [] => Err(violation(n, format!("no relation holds for ({x}, {y}, {z})"))),
        many => Err(violation(n, format!("several relations hold: {many:?}"))),
    }
}

/// The `(x~, y~, z~)` trace with its swap counter `r_n`, checked step by step.
///
/// Stops at the first critical C state (where matching is triggered), at absorption,
/// at a repeated triple, or after `n_max` steps.
pub fn triple_trace(alpha: &QuadraticNumber, n_max: usize) -> Result<TripleTrace> {
    check_upper_range(alpha)?;
    let bounds = Bounds::new(alpha)?;
    let one = BigInt::one();
    // At a = g the Gauss orbit sits on z = a, outside the range where the counting
    // identities hold; the states are still traced and classified.
    let boundary = alpha == &QuadraticNumber::golden();
    let gauss = GaussOrbit::new(alpha, 4 * n_max + 16)?;
    let z_at = |k: usize| gauss.z(k).cloned().ok_or(Error::Undecided(n_max));
    let mut xs = alpha.add_int(&-&one);
    let mut ys = alpha.recip()?.add_int(&-&one);
    let mut r = 0usize;
    let mut prev: Option<TripleTag> = None;
    let mut states: Vec<TripleState> = Vec::new();
    let mut seen = HashMap::new();
    let mut parity_checks = 0;
    let mut p = vec![0usize; 2];
    let mut n = 0;
    let end = loop {
        let (x, y) = if r % 2 == 0 { (&ys, &xs) } else { (&xs, &ys) };
        let z = z_at(n + r + 1)?;
        let key = (x.clone(), y.clone(), z.clone());
        if let Some(&entry) = seen.get(&key) {
            break TraceEnd::Cycle { entry, period: n - entry };
        }
        let tag = classify(n, x, y, &z, prev)?;
        if let Some(pt) = prev {
            let ok = match pt {
                TripleTag::C => tag == TripleTag::A,
                _ => tag != TripleTag::A,
            };
            if !ok {
                return Err(violation(n, format!("transition {pt:?} -> {tag:?}")));
            }
        }
        let critical = tag == TripleTag::C && bounds.critical(&z);
        if tag == TripleTag::C && n >= 1 && !boundary {
            let idx = n + r + 1;
            while p.len() <= idx {
                let k = p.len();
                let reset = z_at(k)? <= bounds.one_minus || z_at(k - 1)? >= bounds.alpha;
                let next = if reset { 0 } else { p[k - 1] + 1 };
                p.push(next);
            }
            if p[idx] % 2 == 0 {
                return Err(violation(n, format!("P at Gauss index {idx} is even")));
            }
            parity_checks += 1;
        }
        states.push(TripleState {
            n,
            tag,
            x: x.clone(),
            y: y.clone(),
            z: z.clone(),
            r,
            r_gauss: gauss.r_count(n + r + 1),
            critical,
        });
        if critical {
            break TraceEnd::Exceeded;
        }
        if x.is_zero() && y.is_zero() {
            break TraceEnd::Absorbed { at: n };
        }
        if n >= n_max {
            break TraceEnd::Budget;
        }
        seen.insert(key, n);
        let swap = tag == TripleTag::B1 || (tag == TripleTag::C && bounds.swaps_after_c(&z));
        let r_next = r + usize::from(swap);
        let by_gauss = (n + r + 1..=n + r_next + 1)
            .filter(|&k| z_at(k).is_ok_and(|zk| zk >= bounds.alpha))
            .count();
        if !boundary && by_gauss != r_next - r {
            return Err(violation(
                n,
                format!("r increment {} but Gauss count {by_gauss}", r_next - r),
            ));
        }
        xs = ti_step(alpha, &xs)?;
        ys = ti_step(alpha, &ys)?;
        r = r_next;
        prev = Some(tag);
        n += 1;
    };
    Ok(TripleTrace {
        states,
        end,
        parity_checks,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(s: &str) -> QuadraticNumber {
        s.parse().unwrap()
    }

    #[test]
    fn seven_tenths_starts_in_a() {
        let t = triple_trace(&q("7/10"), 50).unwrap();
        let s0 = &t.states[0];
        assert_eq!((&s0.x, &s0.y, &s0.z), (&q("3/7"), &q("-3/10"), &q("3/7")));
        assert_eq!(s0.tag, TripleTag::A);
        let last = t.states.last().unwrap();
        assert_eq!(last.tag, TripleTag::C);
        assert!(last.critical);
        assert_eq!(t.end, TraceEnd::Exceeded);
        assert_eq!(t.parity_checks, 1);
    }

    #[test]
    fn golden_alternates_forever() {
        let t = triple_trace(&QuadraticNumber::golden(), 50).unwrap();
        assert!(matches!(t.end, TraceEnd::Cycle { .. }));
        assert!(t.states.iter().all(|s| !s.critical));
    }

    #[test]
    fn swaps_occur_on_some_parameters() {
        let mut swapped = false;
        for den in 2..60i64 {
            for num in 1..=den {
                let a = QuadraticNumber::ratio(num, den).unwrap();
                if a <= QuadraticNumber::golden() || num_integer::gcd(num, den) != 1 {
                    continue;
                }
                let t = triple_trace(&a, 200).unwrap();
                swapped |= t.states.iter().any(|s| s.r > 0);
            }
        }
        assert!(swapped);
    }
}
