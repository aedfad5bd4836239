use alpha_cf::bifurcation::{
    digit_predicate, gamma_beta_eta, hat_c_embed, in_e_all, in_e_reflected_talpha, in_e_via_gauss,
    lemma_x_conditions, DigitConstraint, Membership, MembershipVerdict,
};
use alpha_cf::exactnum::{QuadraticNumber, RcfExpansion};
use alpha_cf::matching::{interval_from_alpha, scan_intervals};
use alpha_cf::Error;
use num_bigint::BigInt;
use num_traits::One;
use proptest::prelude::*;

fn upper_rationals(max_den: i64) -> Vec<QuadraticNumber> {
    let g = QuadraticNumber::golden();
    let mut out = Vec::new();
    for q in 1..=max_den {
        for p in 0..=q {
            if num_integer::gcd(p, q) == 1 {
                let a = QuadraticNumber::ratio(p, q).unwrap();
                if a >= g {
                    out.push(a);
                }
            }
        }
    }
    out
}

#[test]
fn member_or_interval_but_not_both() {
    for a in upper_rationals(300) {
        let member = in_e_via_gauss(&a, 10_000).unwrap().member;
        assert_ne!(member, Membership::Undecided, "{a}");
        match interval_from_alpha(&a, 10_000) {
            Ok(iv) => assert!(member == Membership::No && iv.contains(&a), "{a}"),
            Err(Error::NotInMatchingInterval(_)) => assert_eq!(member, Membership::Yes, "{a}"),
            Err(e) => panic!("{a}: {e}"),
        }
    }
}

#[test]
fn reflected_test_mirrors_membership() {
    let one = BigInt::one();
    for a in upper_rationals(300) {
        let up = in_e_via_gauss(&a, 10_000).unwrap().member;
        let down = in_e_reflected_talpha(&(-&a).add_int(&one), 10_000).unwrap().member;
        assert_eq!(up, down, "{a}");
    }
}

#[test]
fn generated_members_avoid_scanned_intervals() {
    let scan = scan_intervals(&QuadraticNumber::golden(), &QuadraticNumber::one(), 300).unwrap();
    let mut members = Vec::new();
    for a in 2..=10 {
        members.push(gamma_beta_eta(a).unwrap().gamma);
    }
    for n in 1..=3 {
        for w in ["[0;(2)]", "[0;(1,3)]", "[0;4,(1,1,2)]"] {
            members.push(hat_c_embed(n, &w.parse().unwrap()).unwrap());
        }
    }
    for x in &members {
        assert!(scan.find(x).is_none(), "{x} lies in a matching interval");
        let verdicts = in_e_all(x, 10_000).unwrap();
        assert!(verdicts.iter().all(|v| v.member == Membership::Yes), "{x}");
    }
}

fn expansion() -> impl Strategy<Value = RcfExpansion> {
    (prop::collection::vec(1u32..=4, 0..6), prop::collection::vec(1u32..=4, 0..5))
        .prop_filter_map("empty", |(pre, per)| {
            if pre.is_empty() && per.is_empty() {
                return None;
            }
            RcfExpansion::periodic(pre, per).ok()
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(2000))]

    #[test]
    fn high_type_is_monotone(e in expansion(), n in 1u32..5) {
        if digit_predicate(DigitConstraint::HighType(n + 1), &e) {
            prop_assert!(digit_predicate(DigitConstraint::HighType(n), &e));
        }
    }

    #[test]
    fn runs_imply_blocks(e in expansion(), n in 1usize..6) {
        if digit_predicate(DigitConstraint::NoOnesRun(n), &e) {
            prop_assert!(digit_predicate(DigitConstraint::BlockNoOnes(n), &e));
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn lemma_x_conditions_agree(p in 1i64..1000, q in 2i64..1000, t in 0i64..1000) {
        let a = QuadraticNumber::ratio(p.min(q), q).unwrap();
        prop_assume!(a > QuadraticNumber::golden());
        // z in [a - 1, 0.618), rational and below g
        let lower = a.add_int(&BigInt::from(-1));
        let top = QuadraticNumber::ratio(618, 1000).unwrap();
        let z = &lower + &(&QuadraticNumber::ratio(t, 1000).unwrap() * &(&top - &lower));
        if let Some(c) = lemma_x_conditions(&a, &z, 10_000).unwrap() {
            prop_assert!(c.iter().all(|b| *b == c[0]), "{:?} at a = {}, z = {}", c, a, z);
        }
    }

    #[test]
    fn verdicts_round_trip(p in 1i64..500, q in 2i64..500) {
        let a = QuadraticNumber::ratio(p.min(q), q).unwrap();
        prop_assume!(a >= QuadraticNumber::golden());
        for v in in_e_all(&a, 10_000).unwrap() {
            let back: MembershipVerdict = serde_json::from_str(&serde_json::to_string(&v).unwrap()).unwrap();
            prop_assert_eq!(back, v);
        }
    }
}
