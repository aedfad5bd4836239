use alpha_cf::cfdyn::ti_step;
use alpha_cf::exactnum::QuadraticNumber;
use alpha_cf::matching::{
    detect_matching, interior_samples, interval_containing, interval_from_alpha, scan_intervals,
    MatchVerdict, MatchingInterval, ScanResult,
};
use num_bigint::BigInt;
use num_traits::One;
use proptest::prelude::*;

fn iterate(alpha: &QuadraticNumber, x: &QuadraticNumber, n: usize) -> Vec<QuadraticNumber> {
    let mut out = vec![x.clone()];
    for _ in 0..n {
        let next = ti_step(alpha, out.last().unwrap()).unwrap();
        out.push(next);
    }
    out
}

fn upper_scan() -> ScanResult {
    scan_intervals(&QuadraticNumber::golden(), &QuadraticNumber::one(), 150).unwrap()
}

#[test]
fn exponents_are_minimal_at_samples() {
    let one = BigInt::one();
    for iv in &upper_scan().intervals {
        for s in interior_samples(iv).unwrap() {
            let a = s.to_quadratic();
            let xs = iterate(&a, &a.add_int(&-&one), iv.exp_m);
            let ys = iterate(&a, &a, iv.exp_n);
            assert_eq!(xs[iv.exp_m], ys[iv.exp_n], "{a}");
            assert_ne!(xs[iv.exp_m - 1], ys[iv.exp_n - 1], "{a}");
            // the orbit of a never revisits a - 1 before matching
            for y in &ys[..iv.exp_n] {
                assert_ne!(y, &xs[0], "{a}");
            }
        }
    }
}

/// Orbit values of `a - 1` (after the start) and of `1/a - 1`, over `steps` steps.
fn endpoint_orbits(a: &QuadraticNumber, steps: usize) -> Vec<QuadraticNumber> {
    let one = BigInt::one();
    let mut v = iterate(a, &a.add_int(&-&one), steps).split_off(1);
    v.extend(iterate(a, &a.recip().unwrap().add_int(&-&one), steps));
    v
}

#[test]
fn endpoint_law() {
    let one = BigInt::one();
    for iv in upper_scan().intervals.iter().take(200) {
        let steps = iv.exp_m.max(iv.exp_n);
        let hits = |a: &QuadraticNumber| {
            let threshold = a.add_int(&one).recip().unwrap();
            endpoint_orbits(a, steps).contains(&threshold)
        };
        // at the other end the exceeding orbit tends to the endpoint, landing on a or a - 1
        let boundary = |a: &QuadraticNumber| {
            let orbits = endpoint_orbits(a, steps);
            orbits.contains(a) || orbits.contains(&a.add_int(&-&one))
        };
        let (l, r) = (&iv.left, &iv.right);
        assert!(
            (hits(l) && boundary(r)) || (hits(r) && boundary(l)),
            "interval around {}",
            iv.pseudocenter
        );
    }
}

#[test]
fn reflected_intervals_have_mirrored_indices() {
    let s = scan_intervals(&QuadraticNumber::zero(), &"(3-1*sqrt(5))/2".parse().unwrap(), 120).unwrap();
    assert!(!s.intervals.is_empty());
    for iv in &s.intervals {
        assert!(iv.index == 0 || iv.index == 2, "{iv:?}");
        assert!(iv.reflected);
    }
}

#[test]
fn scan_is_disjoint_and_restricts() {
    let s = upper_scan();
    for w in s.intervals.windows(2) {
        assert!(w[0].right <= w[1].left);
    }
    assert!(s.intervals.iter().all(|iv| iv.index == 0 || iv.index == -2));
    let direct = scan_intervals(&QuadraticNumber::golden(), &QuadraticNumber::one(), 60).unwrap();
    assert_eq!(s.restrict(60), direct);
}

#[test]
fn scan_is_independent_of_thread_count() {
    let run = |n| {
        let pool = rayon::ThreadPoolBuilder::new().num_threads(n).build().unwrap();
        pool.install(|| serde_json::to_string(&upper_scan()).unwrap())
    };
    assert_eq!(run(1), run(3));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn reflection_negates_the_index(p in 1i64..400, q in 2i64..400) {
        let (p, q) = (p.min(q - 1), q);
        let a = QuadraticNumber::ratio(p, q).unwrap();
        let mirror = (-&a).add_int(&BigInt::one());
        let (u, v) = (detect_matching(&a, 10_000).unwrap(), detect_matching(&mirror, 10_000).unwrap());
        prop_assert_eq!(u.index().map(|d| -d), v.index());
        prop_assert_eq!(u.is_member(), v.is_member());
    }

    #[test]
    fn json_round_trips(p in 1i64..400, q in 2i64..400) {
        let (p, q) = (p.min(q - 1), q);
        let a = QuadraticNumber::ratio(p, q).unwrap();
        let v = detect_matching(&a, 10_000).unwrap();
        let back: MatchVerdict = serde_json::from_str(&serde_json::to_string(&v).unwrap()).unwrap();
        prop_assert_eq!(back, v);
        if let Ok(iv) = interval_containing(&a, 10_000) {
            let back: MatchingInterval = serde_json::from_str(&serde_json::to_string(&iv).unwrap()).unwrap();
            prop_assert_eq!(back, iv);
        }
    }

    #[test]
    fn pseudocenter_reproduces_the_interval(p in 1i64..300, q in 2i64..300) {
        let a = QuadraticNumber::ratio(p.min(q), q).unwrap();
        prop_assume!(a > QuadraticNumber::golden());
        if let Ok(iv) = interval_from_alpha(&a, 10_000) {
            prop_assert!(iv.contains(&a));
            let again = interval_from_alpha(&iv.pseudocenter.to_quadratic(), 10_000).unwrap();
            prop_assert_eq!(again, iv);
        }
    }
}
