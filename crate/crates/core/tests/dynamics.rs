use alpha_cf::cfdyn::{
    at_discontinuity, convergents, gauss_digit, orbit, ti_digit, ti_step, within_convergent_bound,
    FamilyKind, OrbitEnd,
};
use alpha_cf::exactnum::QuadraticNumber;
use num_bigint::BigInt;
use num_traits::One;
use proptest::prelude::*;

/// `alpha` in `(0, 1]` and a point of `[alpha - 1, alpha]`, either rational or quadratic.
fn pair() -> impl Strategy<Value = (QuadraticNumber, QuadraticNumber)> {
    (1i64..=997, 1i64..=997, 0i64..1_000_000, any::<bool>(), prop::sample::select(vec![2i64, 3, 6, 11]))
        .prop_map(|(p, q, t, quad, d)| {
            let (p, q) = (p.min(q), p.max(q));
            let alpha = QuadraticNumber::ratio(p, q).unwrap();
            let frac = if quad {
                let v = QuadraticNumber::new(0, t % 1000 + 1, 101, d).unwrap();
                v.add_int(&-v.floor())
            } else {
                QuadraticNumber::ratio(t, 1_000_000).unwrap()
            };
            let x = alpha.add_int(&BigInt::from(-1)).checked_add(&frac).unwrap();
            (alpha, x)
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn conjugation_symmetry((alpha, x) in pair()) {
        prop_assume!(!x.is_zero() && !at_discontinuity(FamilyKind::TanakaIto, &alpha, &x));
        let mirror = (-&alpha).add_int(&BigInt::one());
        let left = -ti_step(&alpha, &x).unwrap();
        let right = ti_step(&mirror, &-&x).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn orbits_stay_in_range((alpha, x) in pair()) {
        let lo = alpha.add_int(&BigInt::from(-1));
        let o = orbit(FamilyKind::TanakaIto, &alpha, &x, 60).unwrap();
        for v in o.values() {
            prop_assert!(lo <= v && v <= alpha);
        }
    }

    #[test]
    fn convergents_approximate((alpha, x) in pair()) {
        for c in convergents(&alpha, &x, 40).unwrap() {
            prop_assert!(within_convergent_bound(&x, &c));
        }
    }

    #[test]
    fn gauss_is_the_map_at_one(p in 1i64..100_000, q in 1i64..100_000) {
        let (p, q) = (p.min(q), p.max(q));
        let x = QuadraticNumber::ratio(p, q).unwrap();
        let one = QuadraticNumber::one();
        let a = orbit(FamilyKind::TanakaIto, &one, &x, 200).unwrap();
        let b = orbit(FamilyKind::Gauss, &one, &x, 200).unwrap();
        prop_assert_eq!(a.values(), b.values());
        for v in a.values().iter().filter(|v| !v.is_zero()) {
            prop_assert_eq!(ti_digit(&one, v).unwrap(), gauss_digit(v).unwrap());
        }
    }

    #[test]
    fn rational_orbits_absorb_with_falling_denominators(p in 1i64..=997, q in 1i64..=997, t in 0i64..1_000_000) {
        let (p, q) = (p.min(q), p.max(q));
        let alpha = QuadraticNumber::ratio(p, q).unwrap();
        let x = alpha.add_int(&BigInt::from(-1)).checked_add(&QuadraticNumber::ratio(t, 1_000_000).unwrap()).unwrap();
        let o = orbit(FamilyKind::TanakaIto, &alpha, &x, 10_000).unwrap();
        prop_assert!(matches!(o.end, OrbitEnd::Absorbed { .. }), "end {:?}", o.end);
        let dens: Vec<BigInt> = o.values().iter().map(|v| v.as_rational().unwrap().den().clone()).collect();
        for w in dens.windows(2) {
            prop_assert!(w[1] < w[0] || w[1] == BigInt::one());
        }
    }
}
