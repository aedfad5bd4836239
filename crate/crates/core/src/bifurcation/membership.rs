use std::collections::HashSet;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::cfdyn::ti_step;
use crate::error::{Error, Result};
use crate::exactnum::QuadraticNumber;
use crate::matching::{scan_gauss_orbit, GaussOrbit};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Membership {
    Yes,
    No,
    Undecided,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Method {
    ViaTalpha,
    ViaTg,
    ViaGauss,
}

impl std::str::FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "talpha" => Ok(Method::ViaTalpha),
            "tg" => Ok(Method::ViaTg),
            "gauss" => Ok(Method::ViaGauss),
            _ => Err(Error::Parse(format!("unknown method {s:?}"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Termination {
    /// Every orbit involved reached the fixed point 0.
    Absorbed,
    /// Every orbit involved closed up into an exact cycle.
    CycleClosed,
    /// A point violating the condition was found.
    Violation,
    BudgetHit,
}

/// Which orbit carries the witness: `a - 1`, `1/a - 1` or the Gauss orbit of `a`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub enum OrbitName {
    AlphaMinusOne,
    InverseMinusOne,
    Gauss,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MembershipWitness {
    pub n: usize,
    pub orbit: OrbitName,
    pub value: QuadraticNumber,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct MembershipVerdict {
    pub alpha: QuadraticNumber,
    pub member: Membership,
    pub method: Method,
    pub witness: Option<MembershipWitness>,
    pub termination_reason: Termination,
    /// `a = g` or `a = 1`, where the interval conventions are a matter of choice.
    pub boundary: bool,
}

/// Outcome of checking a predicate along one exact orbit.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) enum OrbitCheck {
    Holds(Termination),
    Fails { n: usize, value: QuadraticNumber },
    Budget,
}

/// Checks `pred(f^n(start))` for all `n >= first`, ending at 0, at a repeated point (all
/// later points were already checked) or after `budget` steps.
///
/// Rational orbits must have strictly decreasing denominators, which is asserted.
pub(crate) fn check_orbit(
    start: QuadraticNumber,
    first: usize,
    budget: usize,
    step: impl Fn(&QuadraticNumber) -> Result<QuadraticNumber>,
    pred: impl Fn(&QuadraticNumber) -> bool,
) -> Result<OrbitCheck> {
    let mut seen = HashSet::new();
    let mut z = start;
    for n in 0..=budget {
        if n >= first {
            if !pred(&z) {
                return Ok(OrbitCheck::Fails { n, value: z });
            }
            if z.is_zero() {
                return Ok(OrbitCheck::Holds(Termination::Absorbed));
            }
            if !seen.insert(z.clone()) {
                return Ok(OrbitCheck::Holds(Termination::CycleClosed));
            }
        }
        let next = step(&z)?;
        if let (Some(a), Some(b)) = (z.as_rational(), next.as_rational()) {
            if !a.num().is_zero() && !b.num().is_zero() && b.den() >= a.den() {
                return Err(Error::Internal(format!(
                    "denominator did not descend from {z} to {next}"
                )));
            }
        }
        z = next;
    }
    Ok(OrbitCheck::Budget)
}

fn upper_range(alpha: &QuadraticNumber) -> Result<bool> {
    let g = QuadraticNumber::golden();
    if alpha < &g || alpha > &QuadraticNumber::one() {
        return Err(Error::Domain(format!("{alpha} is outside [g, 1]")));
    }
    Ok(alpha == &g || alpha == &QuadraticNumber::one())
}

/// Combines the checks of the two orbits `a - 1` and `1/a - 1`.
fn combine(
    alpha: &QuadraticNumber,
    method: Method,
    boundary: bool,
    checks: [(OrbitName, OrbitCheck); 2],
) -> MembershipVerdict {
    let mut verdict = MembershipVerdict {
        alpha: alpha.clone(),
        member: Membership::Yes,
        method,
        witness: None,
        termination_reason: Termination::Absorbed,
        boundary,
    };
    for (name, c) in &checks {
        if let OrbitCheck::Fails { n, value } = c {
            verdict.member = Membership::No;
            verdict.termination_reason = Termination::Violation;
            verdict.witness = Some(MembershipWitness {
                n: *n,
                orbit: *name,
                value: value.clone(),
            });
            return verdict;
        }
    }
    for (_, c) in &checks {
        match c {
            OrbitCheck::Budget => {
                verdict.member = Membership::Undecided;
                verdict.termination_reason = Termination::BudgetHit;
                return verdict;
            }
            OrbitCheck::Holds(Termination::CycleClosed) => {
                verdict.termination_reason = Termination::CycleClosed;
            }
            _ => {}
        }
    }
    verdict
}

fn starts(alpha: &QuadraticNumber) -> Result<(QuadraticNumber, QuadraticNumber)> {
    let one = BigInt::one();
    Ok((alpha.add_int(&-&one), alpha.recip()?.add_int(&-&one)))
}

/// Membership through `T_a^n(a-1) <= 1/(a+1)` and `T_a^n(1/a-1) <= 1/(a+1)` for `n >= 1`.
pub fn in_e_via_talpha(alpha: &QuadraticNumber, budget: usize) -> Result<MembershipVerdict> {
    let boundary = upper_range(alpha)?;
    let bound = alpha.add_int(&BigInt::one()).recip()?;
    let (x0, y0) = starts(alpha)?;
    let step = |z: &QuadraticNumber| ti_step(alpha, z);
    let pred = |z: &QuadraticNumber| z <= &bound;
    Ok(combine(
        alpha,
        Method::ViaTalpha,
        boundary,
        [
            (OrbitName::AlphaMinusOne, check_orbit(x0, 1, budget, step, pred)?),
            (OrbitName::InverseMinusOne, check_orbit(y0, 1, budget, step, pred)?),
        ],
    ))
}

/// Membership through `T_g^n(a-1) >= a-1` and `T_g^n(1/a-1) >= a-1` for `n >= 1`.
///
/// `T_g` orbits stay in the field of `a`, so this is exact for every quadratic `a`;
/// outside `Q` and `Q(sqrt 5)` termination relies on a cycle appearing within budget.
pub fn in_e_via_tg(alpha: &QuadraticNumber, budget: usize) -> Result<MembershipVerdict> {
    let boundary = upper_range(alpha)?;
    let g = QuadraticNumber::golden();
    let (x0, y0) = starts(alpha)?;
    let lower = x0.clone();
    let step = |z: &QuadraticNumber| ti_step(&g, z);
    let pred = |z: &QuadraticNumber| z >= &lower;
    Ok(combine(
        alpha,
        Method::ViaTg,
        boundary,
        [
            (OrbitName::AlphaMinusOne, check_orbit(x0.clone(), 1, budget, step, pred)?),
            (OrbitName::InverseMinusOne, check_orbit(y0, 1, budget, step, pred)?),
        ],
    ))
}

/// Membership through the Gauss orbit: `T_1^n(a)` avoids `(1/(a+1), a)` for `n >= 2`,
/// and `(1-a, a/(a+1))` whenever `P_n` is odd. The form restricted to odd `P_n` for
/// both windows is evaluated too and must agree.
pub fn in_e_via_gauss(alpha: &QuadraticNumber, budget: usize) -> Result<MembershipVerdict> {
    let boundary = upper_range(alpha)?;
    let orbit = GaussOrbit::new(alpha, budget)?;
    let scan = scan_gauss_orbit(&orbit)?;
    let complete = orbit.is_complete();
    if complete && scan.violation.is_some() != scan.merged_violates {
        return Err(Error::InternalDisagreement(format!(
            "the two forms of the Gauss criterion disagree at {alpha}"
        )));
    }
    let (member, witness, termination_reason) = match &scan.violation {
        Some(v) => (
            Membership::No,
            Some(MembershipWitness {
                n: v.n,
                orbit: OrbitName::Gauss,
                value: v.z.clone(),
            }),
            Termination::Violation,
        ),
        None if !complete => (Membership::Undecided, None, Termination::BudgetHit),
        None if orbit.is_absorbed() => (Membership::Yes, None, Termination::Absorbed),
        None => (Membership::Yes, None, Termination::CycleClosed),
    };
    Ok(MembershipVerdict {
        alpha: alpha.clone(),
        member,
        method: Method::ViaGauss,
        witness,
        termination_reason,
        boundary,
    })
}

pub fn in_e(alpha: &QuadraticNumber, method: Method, budget: usize) -> Result<MembershipVerdict> {
    match method {
        Method::ViaTalpha => in_e_via_talpha(alpha, budget),
        Method::ViaTg => in_e_via_tg(alpha, budget),
        Method::ViaGauss => in_e_via_gauss(alpha, budget),
    }
}

/// All three verdicts; an error if two of them are decided and differ.
pub fn in_e_all(alpha: &QuadraticNumber, budget: usize) -> Result<[MembershipVerdict; 3]> {
    let all = [
        in_e_via_talpha(alpha, budget)?,
        in_e_via_tg(alpha, budget)?,
        in_e_via_gauss(alpha, budget)?,
    ];
    let decided: Vec<Membership> = all
        .iter()
        .map(|v| v.member)
        .filter(|m| *m != Membership::Undecided)
        .collect();
    if decided.windows(2).any(|w| w[0] != w[1]) {
        return Err(Error::InternalDisagreement(format!(
            "membership tests disagree at {alpha}: {:?}",
            all.iter().map(|v| v.member).collect::<Vec<_>>()
        )));
    }
    Ok(all)
}

/// Membership of `b` in `[0, 1-g]` by the mirror of the `T_a` test: with `1 - b` in
/// `[g, 1]`, the `T_b`-orbits of `b` and `-b/(1-b)` must stay `>= -1/(2-b)`.
pub fn in_e_reflected_talpha(beta: &QuadraticNumber, budget: usize) -> Result<MembershipVerdict> {
    let one = BigInt::one();
    let alpha = (-beta).add_int(&one);
    let boundary = upper_range(&alpha)?;
    let bound = -&alpha.add_int(&one).recip()?;
    let y0 = -&beta.checked_div(&alpha)?;
    let step = |z: &QuadraticNumber| ti_step(beta, z);
    let pred = |z: &QuadraticNumber| z >= &bound;
    let mut v = combine(
        beta,
        Method::ViaTalpha,
        boundary,
        [
            (OrbitName::AlphaMinusOne, check_orbit(beta.clone(), 1, budget, step, pred)?),
            (OrbitName::InverseMinusOne, check_orbit(y0, 1, budget, step, pred)?),
        ],
    );
    v.alpha = beta.clone();
    Ok(v)
}

/// The four conditions of the comparison between `T_a` and `T_g` at a point
/// `z in [a-1, g)`, each over all `n >= 0`:
/// `T_a^n z = T_g^n z`, `T_g^n z >= a-1`, `T_a^n z < g`, `T_a^n z <= 1/(a+1)`.
///
/// `None` when some orbit did not terminate within `budget`.
pub fn lemma_x_conditions(
    alpha: &QuadraticNumber,
    z: &QuadraticNumber,
    budget: usize,
) -> Result<Option<[bool; 4]>> {
    let one = BigInt::one();
    let g = QuadraticNumber::golden();
    let lower = alpha.add_int(&-&one);
    if alpha <= &g || alpha > &QuadraticNumber::one() || z < &lower || z >= &g {
        return Err(Error::Domain(format!("need a in (g, 1] and z in [a-1, g); got a = {alpha}, z = {z}")));
    }
    let bound = alpha.add_int(&one).recip()?;
    let t_a = |x: &QuadraticNumber| ti_step(alpha, x);
    let t_g = |x: &QuadraticNumber| ti_step(&g, x);
    let decided = |c: OrbitCheck| match c {
        OrbitCheck::Holds(_) => Some(true),
        OrbitCheck::Fails { .. } => Some(false),
        OrbitCheck::Budget => None,
    };

    let mut same = None;
    let (mut a, mut b) = (z.clone(), z.clone());
    let mut seen = HashSet::new();
    for _ in 0..=budget {
        if a != b {
            same = Some(false);
            break;
        }
        if a.is_zero() || !seen.insert(a.clone()) {
            same = Some(true);
            break;
        }
        // a and b agree here; stepping both keeps the comparison exact
        a = t_a(&a)?;
        b = t_g(&b)?;
    }
    let c2 = decided(check_orbit(z.clone(), 0, budget, t_g, |x| x >= &lower)?);
    let c3 = decided(check_orbit(z.clone(), 0, budget, t_a, |x| x < &g)?);
    let c4 = decided(check_orbit(z.clone(), 0, budget, t_a, |x| x <= &bound)?);
    Ok(match (same, c2, c3, c4) {
        (Some(a), Some(b), Some(c), Some(d)) => Some([a, b, c, d]),
        _ => None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(s: &str) -> QuadraticNumber {
        s.parse().unwrap()
    }

    #[test]
    fn known_members() {
        for s in ["4/5", "2/3", "1"] {
            let all = in_e_all(&q(s), 1000).unwrap();
            assert!(all.iter().all(|v| v.member == Membership::Yes), "{s}");
        }
        let all = in_e_all(&QuadraticNumber::golden(), 1000).unwrap();
        assert!(all.iter().all(|v| v.member == Membership::Yes && v.boundary));
        assert!(all.iter().all(|v| v.termination_reason == Termination::CycleClosed));
    }

    #[test]
    fn seven_tenths_is_not_a_member() {
        let all = in_e_all(&q("7/10"), 1000).unwrap();
        assert!(all.iter().all(|v| v.member == Membership::No));
        let w = all[2].witness.as_ref().unwrap();
        assert_eq!((w.n, &w.value), (2, &q("1/3")));
        let w = all[0].witness.as_ref().unwrap();
        assert!(w.value > q("10/17"));
    }

    #[test]
    fn reflected_test_mirrors_direct_test() {
        for s in ["1/5", "1/3", "3/10", "2/7", "5/17"] {
            let b = q(s);
            let a = (-&b).add_int(&BigInt::one());
            let r = in_e_reflected_talpha(&b, 1000).unwrap();
            let d = in_e_via_talpha(&a, 1000).unwrap();
            assert_eq!(r.member, d.member, "{s}");
        }
    }

    #[test]
    fn lemma_x_at_seven_tenths() {
        let a = q("7/10");
        let c = lemma_x_conditions(&a, &q("-3/10"), 1000).unwrap().unwrap();
        assert!(c.iter().all(|b| b == &c[0]));
    }
}
