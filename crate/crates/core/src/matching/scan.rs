use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::interval::{interval_containing, MatchingInterval};
use crate::error::{Error, Result};
use crate::exactnum::{QuadraticNumber, Rational};

/// Gauss-orbit budget per candidate. Rational orbits close far earlier.
pub const SCAN_BUDGET: usize = 10_000;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ScanResult {
    /// Sorted by left endpoint, pairwise disjoint.
    pub intervals: Vec<MatchingInterval>,
    /// Candidate rationals that lie in the bifurcation set, increasing.
    pub members: Vec<Rational>,
}

impl ScanResult {
    /// The interval containing `x`, by binary search.
    pub fn find(&self, x: &QuadraticNumber) -> Option<&MatchingInterval> {
        let k = self.intervals.partition_point(|iv| &iv.left < x);
        k.checked_sub(1)
            .map(|i| &self.intervals[i])
            .filter(|iv| iv.contains(x))
    }

    /// Intervals whose pseudocenter has denominator at most `max_den`. This is exactly the
    /// scan at the smaller bound, because an interval contains a rational of denominator
    /// `<= max_den` iff its pseudocenter has one.
    pub fn restrict(&self, max_den: u64) -> ScanResult {
        let small = |r: &Rational| r.den().to_u64().is_some_and(|d| d <= max_den);
        ScanResult {
            intervals: self
                .intervals
                .iter()
                .filter(|iv| small(&iv.pseudocenter))
                .cloned()
                .collect(),
            members: self.members.iter().filter(|r| small(r)).cloned().collect(),
        }
    }
}

fn candidates(lo: &QuadraticNumber, hi: &QuadraticNumber, q: u64) -> Vec<Rational> {
    let qb = BigInt::from(q);
    let start = lo.mul_int(&qb).ceil().max(BigInt::from(0));
    let end = hi.mul_int(&qb).floor().min(qb.clone());
    let (Some(s), Some(e)) = (start.to_u64(), end.to_u64()) else {
        return Vec::new();
    };
    (s..=e)
        .filter(|p| p.gcd(&q) == 1)
        .map(|p| Rational::new(p, q).expect("q >= 1"))
        .collect()
}

/// Every matching interval containing a rational of denominator `<= max_den` in
/// `[lo, hi]`, each found once.
///
/// Denominators are visited in increasing order and rationals already covered are
/// skipped; the remaining candidates of one denominator are classified in parallel.
pub fn scan_intervals(lo: &QuadraticNumber, hi: &QuadraticNumber, max_den: u64) -> Result<ScanResult> {
    if lo.signum().is_lt() || hi > &QuadraticNumber::one() {
        return Err(Error::Domain(format!("[{lo}, {hi}] is not inside [0, 1]")));
    }
    let mut found = ScanResult {
        intervals: Vec::new(),
        members: Vec::new(),
    };
    if lo > hi {
        return Ok(found);
    }
    for q in 1..=max_den {
        let open: Vec<Rational> = candidates(lo, hi, q)
            .into_iter()
            .filter(|r| found.find(&r.to_quadratic()).is_none())
            .collect();
        let classified: Vec<(Rational, Option<MatchingInterval>)> = open
            .into_par_iter()
            .map(|r| match interval_containing(&r.to_quadratic(), SCAN_BUDGET) {
                Ok(iv) => Ok((r, Some(iv))),
                Err(Error::NotInMatchingInterval(_)) => Ok((r, None)),
                Err(e) => Err(e),
            })
            .collect::<Result<_>>()?;
        let mut fresh = BTreeMap::new();
        for (r, iv) in classified {
            match iv {
                Some(iv) => {
                    fresh.entry(iv.pseudocenter.clone()).or_insert(iv);
                }
                None => found.members.push(r),
            }
        }
        if !fresh.is_empty() {
            found.intervals.extend(fresh.into_values());
            found.intervals.sort_by(|a, b| a.left.cmp(&b.left));
        }
    }
    found.members.sort();
    check_disjoint(&found.intervals)?;
    Ok(found)
}

/// Exact check that consecutive intervals (sorted by left endpoint) do not overlap.
pub fn check_disjoint(intervals: &[MatchingInterval]) -> Result<()> {
    for w in intervals.windows(2) {
        if w[0].right > w[1].left {
            return Err(Error::InternalDisagreement(format!(
                "intervals around {} and {} overlap",
                w[0].pseudocenter, w[1].pseudocenter
            )));
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(s: &str) -> QuadraticNumber {
        s.parse().unwrap()
    }

    #[test]
    fn small_scan_of_upper_range() {
        let s = scan_intervals(&QuadraticNumber::golden(), &QuadraticNumber::one(), 3).unwrap();
        assert!(s.intervals.is_empty());
        let names: Vec<String> = s.members.iter().map(|r| r.to_string()).collect();
        assert_eq!(names, vec!["2/3", "1/1"]);
        let s = scan_intervals(&QuadraticNumber::golden(), &QuadraticNumber::one(), 4).unwrap();
        assert!(s.members.iter().any(|r| r.to_string() == "3/4"));
    }

    #[test]
    fn seven_tenths_interval_found_once() {
        let s = scan_intervals(&QuadraticNumber::golden(), &QuadraticNumber::one(), 40).unwrap();
        let hits: Vec<_> = s.intervals.iter().filter(|iv| iv.contains(&q("7/10"))).collect();
        assert_eq!(hits.len(), 1);
        assert_eq!(hits[0].pseudocenter.to_string(), "7/10");
        assert!(s.intervals.iter().all(|iv| iv.index == 0 || iv.index == -2));
        let small = s.restrict(10);
        let direct = scan_intervals(&QuadraticNumber::golden(), &QuadraticNumber::one(), 10).unwrap();
        assert_eq!(small, direct);
    }

    #[test]
    fn empty_range() {
        let a = q("7/10");
        assert!(scan_intervals(&a, &q("1/2"), 50).unwrap().intervals.is_empty());
    }

    #[test]
    fn whole_unit_interval_is_disjoint() {
        let s = scan_intervals(&QuadraticNumber::zero(), &QuadraticNumber::one(), 25).unwrap();
        check_disjoint(&s.intervals).unwrap();
        assert!(s.find(&q("1/2")).is_some_and(|iv| (iv.exp_m, iv.exp_n) == (2, 2)));
    }
}
