use alpha_cf::analysis::{
    boxcount_from_scan, coverage_of, entropy_curve, estimate_entropy, write_coverage_csv,
    write_dimension_csv, write_entropy_csv, CoverageReport, DimensionEstimate, EntropyEstimate,
};
use alpha_cf::cfdyn::FamilyKind;
use alpha_cf::exactnum::QuadraticNumber;
use alpha_cf::matching::scan_intervals;
use alpha_cf::Error;

#[test]
fn coverage_grows_with_the_denominator_bound() {
    let g = QuadraticNumber::golden();
    let one = QuadraticNumber::one();
    let scan = scan_intervals(&g, &one, 200).unwrap();
    let mut prev = None;
    for d in 1..=200 {
        let r = coverage_of(&scan.restrict(d), d, &g, &one);
        if let Some(p) = prev {
            assert!(r.covered_fixed >= p, "at {d}");
        }
        assert!(r.fraction >= 0.0 && r.fraction < 1.0);
        prev = Some(r.covered_fixed);
    }
}

#[test]
fn box_counts_are_scale_consistent() {
    let g = QuadraticNumber::golden();
    let one = QuadraticNumber::one();
    let scan = scan_intervals(&g, &one, 300).unwrap();
    let levels: Vec<u32> = (1..=12).collect();
    let d = boxcount_from_scan(&scan, &g, &one, 300, &levels).unwrap();
    let n = scan.intervals.len() as u64;
    for w in d.counts.windows(2) {
        assert!(w[0] <= w[1], "{:?}", d.counts);
        assert!(w[1] <= 2 * w[0] + 2 * n, "{:?}", d.counts);
    }
    for w in d.scales.windows(2) {
        assert!((w[0] / w[1] - 2.0).abs() < 1e-12);
    }
    assert!(d.slope > 0.0 && d.slope <= 1.0 + 1e-9);
}

#[test]
fn too_few_levels_are_rejected() {
    let g = QuadraticNumber::golden();
    let one = QuadraticNumber::one();
    let scan = scan_intervals(&g, &one, 50).unwrap();
    let err = boxcount_from_scan(&scan, &g, &one, 50, &[3, 3, 4]).unwrap_err();
    assert!(matches!(err, Error::InsufficientResolution(_)));
}

#[test]
fn entropy_is_reproducible() {
    let a = estimate_entropy(FamilyKind::TanakaIto, 0.7, 500, 50, 11).unwrap();
    let b = estimate_entropy(FamilyKind::TanakaIto, 0.7, 500, 50, 11).unwrap();
    assert_eq!(a, b);
    let c = estimate_entropy(FamilyKind::TanakaIto, 0.7, 500, 50, 12).unwrap();
    assert_ne!(a.mean, c.mean);
    let pool = rayon::ThreadPoolBuilder::new().num_threads(3).build().unwrap();
    let d = pool.install(|| estimate_entropy(FamilyKind::TanakaIto, 0.7, 500, 50, 11).unwrap());
    assert_eq!(a, d);
}

#[test]
fn entropy_rejects_bad_input() {
    assert!(estimate_entropy(FamilyKind::TanakaIto, 1.2, 500, 50, 0).is_err());
    assert!(estimate_entropy(FamilyKind::Nakada, 0.5, 50, 50, 0).is_err());
    assert!(estimate_entropy(FamilyKind::Nakada, 0.5, 500, 5, 0).is_err());
}

#[test]
fn entropy_plateau_inside_an_index_zero_interval() {
    let g = QuadraticNumber::golden();
    let scan = scan_intervals(&g, &QuadraticNumber::one(), 40).unwrap();
    let iv = scan
        .intervals
        .iter()
        .filter(|iv| iv.index == 0)
        .max_by(|a, b| a.length_f64().total_cmp(&b.length_f64()))
        .unwrap();
    let pts = [0.25, 0.5, 0.75].map(|t| iv.left_float + t * (iv.right_float - iv.left_float));
    let est: Vec<EntropyEstimate> = pts
        .iter()
        .map(|&a| estimate_entropy(FamilyKind::TanakaIto, a, 4_000, 300, 5).unwrap())
        .collect();
    for i in 0..3 {
        for j in i + 1..3 {
            assert!(est[i].agrees_with(&est[j], 3.0), "{:?} vs {:?}", est[i], est[j]);
        }
    }
}

#[test]
fn csv_and_json_outputs() {
    let rows = entropy_curve(&[FamilyKind::TanakaIto, FamilyKind::Nakada], 0.6, 0.7, 0.05, 200, 10, 3).unwrap();
    assert_eq!(rows.len(), 6);
    let mut buf = Vec::new();
    write_entropy_csv(&rows, &mut buf).unwrap();
    let text = String::from_utf8(buf).unwrap();
    assert!(text.starts_with("family,alpha,mean,stderr,n_iter,n_samples,seed\n"));
    assert_eq!(text.lines().count(), 7);
    for r in &rows {
        let back: EntropyEstimate = serde_json::from_str(&serde_json::to_string(r).unwrap()).unwrap();
        assert_eq!(&back, r);
    }

    let g = QuadraticNumber::golden();
    let one = QuadraticNumber::one();
    let scan = scan_intervals(&g, &one, 100).unwrap();
    let cov = coverage_of(&scan, 100, &g, &one);
    let back: CoverageReport = serde_json::from_str(&serde_json::to_string(&cov).unwrap()).unwrap();
    assert_eq!(back, cov);
    let mut buf = Vec::new();
    write_coverage_csv(&[cov], &mut buf).unwrap();
    assert!(String::from_utf8(buf).unwrap().starts_with("max_den,lo,hi,fraction,interval_count\n"));

    let d = boxcount_from_scan(&scan, &g, &one, 100, &[1, 2, 3, 4]).unwrap();
    let back: DimensionEstimate = serde_json::from_str(&serde_json::to_string(&d).unwrap()).unwrap();
    assert_eq!(back, d);
    let mut buf = Vec::new();
    write_dimension_csv(&d, &mut buf).unwrap();
    let text = String::from_utf8(buf).unwrap();
    assert!(text.starts_with("lo,hi,scale,count,slope,r2\n"));
    assert_eq!(text.lines().count(), 5);
}
