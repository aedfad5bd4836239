use std::sync::OnceLock;

use num_bigint::{BigInt, BigUint};
use num_traits::One;
use serde::{Deserialize, Serialize};

use super::cylinder::matching_cylinder;
use super::gauss::{scan_gauss_orbit, CaseTag, GaussOrbit};
use crate::cfdyn::ti_step;
use crate::error::{Error, Result};
use crate::exactnum::{rcf_expand, simplest_between, QuadraticNumber, Rational, RcfExpansion};

/// A maximal open parameter interval on which `T^M(a-1) = T^N(a)` with fixed `(M, N)`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct MatchingInterval {
    pub left: QuadraticNumber,
    pub left_float: f64,
    pub right: QuadraticNumber,
    pub right_float: f64,
    pub left_expansion: RcfExpansion,
    pub right_expansion: RcfExpansion,
    #[serde(rename = "M")]
    pub exp_m: usize,
    #[serde(rename = "N")]
    pub exp_n: usize,
    pub index: i64,
    pub pseudocenter: Rational,
    pub case_tag: CaseTag,
    /// Minimal Gauss index of the defining violation, when the interval came from one.
    #[serde(rename = "n")]
    pub gauss_index: Option<usize>,
    /// Obtained from an interval in `[g, 1]` by `a -> 1 - a`.
    #[serde(default)]
    pub reflected: bool,
}

impl MatchingInterval {
    pub(crate) fn build(
        left: QuadraticNumber,
        right: QuadraticNumber,
        left_expansion: RcfExpansion,
        right_expansion: RcfExpansion,
        (exp_m, exp_n): (usize, usize),
        pseudocenter: Rational,
        case_tag: CaseTag,
        gauss_index: Option<usize>,
    ) -> Self {
        MatchingInterval {
            left_float: left.to_f64(),
            right_float: right.to_f64(),
            left,
            right,
            left_expansion,
            right_expansion,
            exp_m,
            exp_n,
            index: exp_m as i64 - exp_n as i64,
            pseudocenter,
            case_tag,
            gauss_index,
            reflected: false,
        }
    }

    /// Open-interval membership.
    pub fn contains(&self, x: &QuadraticNumber) -> bool {
        &self.left < x && x < &self.right
    }

    /// Endpoints usually lie in different quadratic fields, so this is a float difference.
    pub fn length_f64(&self) -> f64 {
        self.right_float - self.left_float
    }

    /// The image under `a -> 1 - a`; exponents swap and the index changes sign.
    pub fn reflect(&self) -> Result<MatchingInterval> {
        let one = BigInt::one();
        let left = (-&self.right).add_int(&one);
        let right = (-&self.left).add_int(&one);
        let pc = Rational::new(self.pseudocenter.den() - self.pseudocenter.num(), self.pseudocenter.den().clone())?;
        let mut out = MatchingInterval::build(
            left.clone(),
            right.clone(),
            rcf_expand(&left)?,
            rcf_expand(&right)?,
            (self.exp_n, self.exp_m),
            pc,
            self.case_tag,
            self.gauss_index,
        );
        out.reflected = !self.reflected;
        Ok(out)
    }
}

fn digits_u(orbit: &GaussOrbit, from: usize, to: usize) -> Result<Vec<BigUint>> {
    (from..=to)
        .map(|k| {
            orbit
                .digit(k)
                .map(|d| d.magnitude().clone())
                .ok_or_else(|| Error::Internal(format!("digit a_{k} unavailable")))
        })
        .collect()
}

fn one_u() -> BigUint {
    BigUint::one()
}

/// `(-1)^R (z - 1/2) > 0` selects `M = N - 2 = n - R`, otherwise `M = N = n - R + 1`.
fn exponents(orbit: &GaussOrbit, n: usize) -> Result<(usize, usize)> {
    let r = orbit.r_count(n);
    let z = orbit.z(n).ok_or(Error::Undecided(n))?;
    let shifted = z - &QuadraticNumber::ratio(1, 2)?;
    let positive = if r % 2 == 0 { shifted.signum().is_gt() } else { shifted.signum().is_lt() };
    if positive {
        Ok((n - r, n - r + 2))
    } else {
        Ok((n - r + 1, n - r + 1))
    }
}

/// `L = min{k >= 1 : a_{k+1} != 1}`.
fn run_of_ones(orbit: &GaussOrbit, limit: usize) -> Result<usize> {
    (1..=limit)
        .find(|&k| orbit.digit(k + 1).is_some_and(|d| !d.is_one()))
        .ok_or_else(|| Error::Domain("no digit other than 1".into()))
}

/// Matching interval containing `alpha` in `(g, 1]`, from the minimal Gauss violation.
pub fn interval_from_alpha(alpha: &QuadraticNumber, n_max: usize) -> Result<MatchingInterval> {
    let g = QuadraticNumber::golden();
    if alpha <= &g || alpha > &QuadraticNumber::one() {
        return Err(Error::Domain(format!("{alpha} is outside (g, 1]")));
    }
    let orbit = GaussOrbit::new(alpha, n_max)?;
    let scan = scan_gauss_orbit(&orbit)?;
    let Some(v) = scan.violation else {
        if orbit.is_complete() {
            return Err(Error::NotInMatchingInterval(alpha.to_string()));
        }
        return Err(Error::Undecided(n_max));
    };
    let n = v.n;
    let mid = digits_u(&orbit, 2, n)?;
    let (e1, e2) = match v.case {
        CaseTag::Inner => {
            let mut per1 = mid.clone();
            per1.push(BigUint::from(2u32));
            let a2 = mid[0].clone();
            let mut per2 = mid[1..].to_vec();
            per2.push(&a2 + 1u32);
            (
                RcfExpansion::new(vec![one_u()], per1)?,
                RcfExpansion::new(vec![one_u(), a2], per2)?,
            )
        }
        _ => {
            let mut per1 = vec![one_u()];
            per1.extend(mid.iter().cloned());
            let mut per2 = per1.clone();
            per2.push(one_u());
            (RcfExpansion::new(vec![], per1)?, RcfExpansion::new(vec![], per2)?)
        }
    };
    let l = run_of_ones(&orbit, n + orbit.horizon() + 2)?;
    let ones = digits_u(&orbit, 2, l)?;
    let mut pc_digits = vec![one_u()];
    pc_digits.extend(mid.iter().cloned());
    let (sep, tail) = match v.case {
        CaseTag::Inner => (2u32, 1u32),
        _ => (1u32, 2u32),
    };
    pc_digits.push(BigUint::from(sep));
    pc_digits.extend(ones);
    pc_digits.push(BigUint::from(tail));
    let pc_value = RcfExpansion::new(pc_digits, vec![])?.eval();
    let pseudocenter = pc_value.as_rational().expect("finite expansion");

    let (v1, v2) = (e1.eval(), e2.eval());
    let (left, right, le, re) = if v1 < v2 { (v1, v2, e1, e2) } else { (v2, v1, e2, e1) };
    let iv = MatchingInterval::build(
        left,
        right,
        le,
        re,
        exponents(&orbit, n)?,
        pseudocenter,
        v.case,
        Some(n),
    );
    if !iv.contains(alpha) || !iv.contains(&pc_value) {
        return Err(Error::Internal(format!(
            "interval ({}, {}) misses {alpha} or its pseudocenter",
            iv.left, iv.right
        )));
    }
    Ok(iv)
}

/// The matching interval that contains `alpha` anywhere in `[0, 1]`.
///
/// `(g, 1]` uses the continued fraction formulas, `[0, 1-g)` reflects, and the central
/// range `(1-g, g)` is resolved by the symbolic cylinder computation.
pub fn interval_containing(alpha: &QuadraticNumber, n_max: usize) -> Result<MatchingInterval> {
    let g = QuadraticNumber::golden();
    let one = BigInt::one();
    let one_minus_g = (-&g).add_int(&one);
    if alpha.signum().is_lt() || alpha > &QuadraticNumber::one() {
        return Err(Error::Domain(format!("{alpha} is outside [0, 1]")));
    }
    if alpha > &g {
        return interval_from_alpha(alpha, n_max);
    }
    if alpha < &one_minus_g {
        return interval_from_alpha(&(-alpha).add_int(&one), n_max)?.reflect();
    }
    if alpha == &g || alpha == &one_minus_g {
        return Err(Error::NotInMatchingInterval(alpha.to_string()));
    }
    central_intervals()
        .iter()
        .find(|iv| iv.contains(alpha))
        .cloned()
        .ok_or_else(|| Error::NotInMatchingInterval(alpha.to_string()))
}

/// The three intervals filling `(1-g, g)`, each obtained as the cylinder of an
/// irrational parameter inside it.
pub fn central_intervals() -> &'static [MatchingInterval] {
    static CENTRAL: OnceLock<Vec<MatchingInterval>> = OnceLock::new();
    CENTRAL.get_or_init(|| {
        ["(0+1*sqrt(17))/10", "(0+1*sqrt(3))/3", "(0+1*sqrt(37))/10"]
            .iter()
            .map(|s| {
                let a: QuadraticNumber = s.parse().expect("literal");
                let cyl = matching_cylinder(&a, 64).expect("central cylinder");
                MatchingInterval::build(
                    cyl.left.clone(),
                    cyl.right.clone(),
                    rcf_expand(&cyl.left).expect("quadratic"),
                    rcf_expand(&cyl.right).expect("quadratic"),
                    (cyl.exp_m, cyl.exp_n),
                    simplest_between(&cyl.left, Some(&cyl.right)),
                    CaseTag::Central,
                    None,
                )
            })
            .collect()
    })
}

fn iterates(alpha: &QuadraticNumber, x0: QuadraticNumber, k: usize) -> Result<Vec<QuadraticNumber>> {
    let mut v = vec![x0];
    for _ in 0..k {
        let next = ti_step(alpha, v.last().unwrap())?;
        v.push(next);
    }
    Ok(v)
}

/// `T^M(a-1) = T^N(a)`, without the minimality requirement.
pub fn orbit_identity(alpha: &QuadraticNumber, exp_m: usize, exp_n: usize) -> Result<bool> {
    let xs = iterates(alpha, alpha.add_int(&-BigInt::one()), exp_m)?;
    let ys = iterates(alpha, alpha.clone(), exp_n)?;
    Ok(xs[exp_m] == ys[exp_n])
}

/// Neither orbit reaches 0 before step `M` (resp. `N`). At such parameters both sides
/// would already agree earlier through the absorbing point.
pub fn nondegenerate_at(alpha: &QuadraticNumber, exp_m: usize, exp_n: usize) -> Result<bool> {
    let xs = iterates(alpha, alpha.add_int(&-BigInt::one()), exp_m.saturating_sub(1))?;
    let ys = iterates(alpha, alpha.clone(), exp_n.saturating_sub(1))?;
    Ok(xs.iter().chain(&ys).all(|v| !v.is_zero()))
}

/// Checks `T^M(a-1) = T^N(a)` and `T^(M-1)(a-1) != T^(N-1)(a)` exactly at `alpha`.
pub fn matches_at(alpha: &QuadraticNumber, exp_m: usize, exp_n: usize) -> Result<bool> {
    let xs = iterates(alpha, alpha.add_int(&-BigInt::one()), exp_m)?;
    let ys = iterates(alpha, alpha.clone(), exp_n)?;
    let hit = xs[exp_m] == ys[exp_n];
    let earlier = exp_m >= 1 && exp_n >= 1 && xs[exp_m - 1] == ys[exp_n - 1];
    Ok(hit && !earlier)
}

/// Three rationals strictly inside the interval at which matching is checked.
///
/// Candidates are the pseudocenter and successive simplest rationals towards both
/// endpoints; those whose orbits hit 0 before the exponents are skipped.
pub fn interior_samples(iv: &MatchingInterval) -> Result<Vec<Rational>> {
    let mut out = Vec::new();
    let mut lo = iv.pseudocenter.to_quadratic();
    let mut hi = lo.clone();
    let mut next = Some(iv.pseudocenter.clone());
    for k in 0..200 {
        let Some(r) = next.take() else { break };
        let rq = r.to_quadratic();
        if nondegenerate_at(&rq, iv.exp_m, iv.exp_n)? {
            out.push(r);
            if out.len() == 3 {
                return Ok(out);
            }
        }
        next = Some(if k % 2 == 0 {
            let s = simplest_between(&iv.left, Some(&lo));
            lo = s.to_quadratic();
            s
        } else {
            let s = simplest_between(&hi, Some(&iv.right));
            hi = s.to_quadratic();
            s
        });
    }
    Err(Error::Internal(format!(
        "no three nondegenerate samples in the interval around {}",
        iv.pseudocenter
    )))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(s: &str) -> QuadraticNumber {
        s.parse().unwrap()
    }

    #[test]
    fn worked_interval() {
        let iv = interval_from_alpha(&q("7/10"), 1000).unwrap();
        assert_eq!(iv.left_expansion.to_string(), "[0;1,2,(3)]");
        assert_eq!(iv.right_expansion.to_string(), "[0;1,(2)]");
        assert_eq!(iv.right, q("(0+1*sqrt(2))/2"));
        assert_eq!(iv.left, q("(5-1*sqrt(13))/2"));
        assert_eq!((iv.exp_m, iv.exp_n, iv.index), (3, 3, 0));
        assert_eq!(iv.pseudocenter.to_string(), "7/10");
        assert_eq!((iv.case_tag, iv.gauss_index), (CaseTag::Inner, Some(2)));
        for s in interior_samples(&iv).unwrap() {
            assert!(matches_at(&s.to_quadratic(), 3, 3).unwrap());
        }
    }

    #[test]
    fn members_have_no_interval() {
        for s in ["4/5", "2/3", "1"] {
            assert!(matches!(
                interval_from_alpha(&q(s), 1000),
                Err(Error::NotInMatchingInterval(_))
            ));
        }
    }

    #[test]
    fn reflection_swaps_exponents() {
        let iv = interval_from_alpha(&q("7/10"), 1000).unwrap();
        let r = iv.reflect().unwrap();
        assert_eq!(r.pseudocenter.to_string(), "3/10");
        assert!(r.contains(&q("3/10")));
        assert!(r.reflected);
        let back = r.reflect().unwrap();
        assert_eq!(back, iv);
    }
}
