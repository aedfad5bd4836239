use num_bigint::BigUint;
use num_traits::One;
use serde::{Deserialize, Serialize};

use super::digits::{digit_predicate, DigitConstraint};
use super::membership::{in_e_all, in_e_via_gauss, Membership};
use crate::error::{Error, Result};
use crate::exactnum::{rcf_expand, simplest_between, QuadraticNumber, Rational, RcfExpansion};
use crate::matching::{interval_from_alpha, MatchingInterval};

/// Orbit budget for the self-checks of generated members.
pub const GENERATOR_BUDGET: usize = 100_000;

fn all_yes(alpha: &QuadraticNumber) -> Result<bool> {
    Ok(in_e_all(alpha, GENERATOR_BUDGET)?
        .iter()
        .all(|v| v.member == Membership::Yes))
}

fn gauss_yes(alpha: &QuadraticNumber) -> Result<bool> {
    Ok(in_e_via_gauss(alpha, GENERATOR_BUDGET)?.member == Membership::Yes)
}

/// `(n-1)/n` for `3 <= n <= n_max`, each confirmed by all three membership tests.
pub fn gen_rational_members(n_max: u64) -> Result<Vec<Rational>> {
    (3..=n_max)
        .map(|n| {
            let r = Rational::new(n - 1, n)?;
            if !all_yes(&r.to_quadratic())? {
                return Err(Error::InternalDisagreement(format!("{r} rejected")));
            }
            Ok(r)
        })
        .collect()
}

/// From a rational member `[0;1,a_2,...,a_k]`, the value `[0;1,a_2,...,a_k,c,c_1,c_2,...]`
/// with tail digits `c_j >= a_2 + 2` and `c >= max(a_2..a_k) + 2` (the default).
///
/// The tail is read as the digit sequence of `tail` (preperiod then repeating period).
pub fn extend_member(alpha0: &Rational, tail: &RcfExpansion, c: Option<&BigUint>) -> Result<QuadraticNumber> {
    let a0 = alpha0.to_quadratic();
    let g = QuadraticNumber::golden();
    if a0 <= g || a0 >= QuadraticNumber::one() {
        return Err(Error::PreconditionFailed(format!("{alpha0} is outside (g, 1)")));
    }
    if !all_yes(&a0)? {
        return Err(Error::PreconditionFailed(format!("{alpha0} is not in the bifurcation set")));
    }
    let digits = rcf_expand(&a0)?.preperiod().to_vec();
    let a2 = digits[1].clone();
    let c_min = digits[1..].iter().max().expect("k >= 2") + 2u32;
    let c = match c {
        None => c_min,
        Some(c) if c >= &c_min => c.clone(),
        Some(c) => {
            return Err(Error::PreconditionFailed(format!("c = {c} is below {c_min}")));
        }
    };
    let floor = &a2 + 2u32;
    if let Some(small) = tail.preperiod().iter().chain(tail.period()).find(|d| **d < floor) {
        return Err(Error::PreconditionFailed(format!("tail digit {small} is below {floor}")));
    }
    let mut pre = digits;
    pre.push(c);
    pre.extend(tail.preperiod().iter().cloned());
    let value = RcfExpansion::new(pre, tail.period().to_vec())?.eval();
    if !gauss_yes(&value)? {
        return Err(Error::InternalDisagreement(format!("extension {value} is not a member")));
    }
    Ok(value)
}

/// `f_1^(2n+3)(f_2(x))` for `x` given by `e` in `C_{2n+1}`: the expansion of `x` prefixed
/// by `2n+3` ones and a 2. The result is checked to be a member above `g`.
pub fn hat_c_embed(n: usize, e: &RcfExpansion) -> Result<QuadraticNumber> {
    if !digit_predicate(DigitConstraint::NoOnesRun(2 * n + 1), e) {
        return Err(Error::PreconditionFailed(format!(
            "{e} has {} consecutive ones",
            2 * n + 1
        )));
    }
    let mut pre = vec![BigUint::one(); 2 * n + 3];
    pre.push(BigUint::from(2u32));
    pre.extend(e.preperiod().iter().cloned());
    let value = RcfExpansion::new(pre, e.period().to_vec())?.eval();
    if value <= QuadraticNumber::golden() {
        return Err(Error::InternalDisagreement(format!("{value} is not above g")));
    }
    if !gauss_yes(&value)? {
        return Err(Error::InternalDisagreement(format!("{value} is not a member")));
    }
    Ok(value)
}

/// An isolated member `gamma` with the two matching intervals on either side.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SeparatedMember {
    pub a: u32,
    pub beta: QuadraticNumber,
    pub gamma: QuadraticNumber,
    pub eta: QuadraticNumber,
    pub lower: MatchingInterval,
    pub upper: MatchingInterval,
}

/// `gamma_a = [0;(1,a,1)]` separating the intervals `(beta_a, gamma_a)` and
/// `(gamma_a, eta_a)`, `beta_a = [0;(1,a,1,1,a)]`, `eta_a = [0;(1,a)]`.
pub fn gamma_beta_eta(a: u32) -> Result<SeparatedMember> {
    if a < 2 {
        return Err(Error::Domain(format!("a = {a} must be at least 2")));
    }
    let per = |ds: &[u32]| -> Result<QuadraticNumber> {
        Ok(RcfExpansion::periodic(Vec::<u32>::new(), ds.to_vec())?.eval())
    };
    let beta = per(&[1, a, 1, 1, a])?;
    let gamma = per(&[1, a, 1])?;
    let eta = per(&[1, a])?;
    if !(beta < gamma && gamma < eta) {
        return Err(Error::Internal(format!("order fails for a = {a}")));
    }
    if !all_yes(&gamma)? {
        return Err(Error::InternalDisagreement(format!("gamma_{a} = {gamma} is not a member")));
    }
    let between = |l: &QuadraticNumber, r: &QuadraticNumber| -> Result<MatchingInterval> {
        let pc = simplest_between(l, Some(r));
        let iv = interval_from_alpha(&pc.to_quadratic(), GENERATOR_BUDGET)?;
        if &iv.left != l || &iv.right != r {
            return Err(Error::InternalDisagreement(format!(
                "interval at {pc} is ({}, {}), expected ({l}, {r})",
                iv.left, iv.right
            )));
        }
        Ok(iv)
    };
    let lower = between(&beta, &gamma)?;
    let upper = between(&gamma, &eta)?;
    Ok(SeparatedMember {
        a,
        beta,
        gamma,
        eta,
        lower,
        upper,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(s: &str) -> QuadraticNumber {
        s.parse().unwrap()
    }

    #[test]
    fn rational_family() {
        let m: Vec<String> = gen_rational_members(5).unwrap().iter().map(|r| r.to_string()).collect();
        assert_eq!(m, vec!["2/3", "3/4", "4/5"]);
        assert_eq!(gen_rational_members(3).unwrap().len(), 1);
    }

    #[test]
    fn extensions_of_two_thirds() {
        let two_thirds = Rational::new(2, 3).unwrap();
        let empty: RcfExpansion = "[0;]".parse().unwrap();
        let r = extend_member(&two_thirds, &empty, None).unwrap();
        assert_eq!(rcf_expand(&r).unwrap().to_string(), "[0;1,2,4]");
        let fours: RcfExpansion = "[0;(4)]".parse().unwrap();
        let x = extend_member(&two_thirds, &fours, None).unwrap();
        assert_eq!(rcf_expand(&x).unwrap().to_string(), "[0;1,2,(4)]");
        let y = extend_member(&two_thirds, &empty, Some(&BigUint::from(9u32))).unwrap();
        assert_ne!(r, y);
        let small: RcfExpansion = "[0;3]".parse().unwrap();
        assert!(matches!(extend_member(&two_thirds, &small, None), Err(Error::PreconditionFailed(_))));
        assert!(matches!(
            extend_member(&Rational::new(7, 10).unwrap(), &empty, None),
            Err(Error::PreconditionFailed(_))
        ));
    }

    #[test]
    fn embedded_runs() {
        let v = hat_c_embed(1, &"[0;(3)]".parse().unwrap()).unwrap();
        assert_eq!(rcf_expand(&v).unwrap().to_string(), "[0;1,1,1,1,1,2,(3)]");
        let w = hat_c_embed(1, &"[0;(2)]".parse().unwrap()).unwrap();
        let ex = rcf_expand(&w).unwrap();
        assert_eq!(ex.prefix(6).iter().filter(|d| d.is_one()).count(), 5);
        assert!(hat_c_embed(1, &"[0;(1)]".parse().unwrap()).is_err());
    }

    #[test]
    fn separated_members() {
        let s = gamma_beta_eta(2).unwrap();
        assert_eq!(s.eta, q("(-1+1*sqrt(3))/1"));
        assert_eq!(s.lower.pseudocenter.to_string(), "49/68");
        assert_eq!(s.upper.pseudocenter.to_string(), "8/11");
        for (a, lo, hi) in [(3, "89/114", "11/14"), (4, "141/172", "14/17"), (10, "705/772", "32/35")] {
            let s = gamma_beta_eta(a).unwrap();
            assert_eq!(s.lower.pseudocenter.to_string(), lo);
            assert_eq!(s.upper.pseudocenter.to_string(), hi);
        }
    }
}
