use serde::{Deserialize, Serialize};

use super::coverage::{check_range, fixed, fixed_to_f64};
use crate::error::{Error, Result};
use crate::exactnum::QuadraticNumber;
use crate::matching::{scan_intervals, MatchingInterval, ScanResult};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct DimensionEstimate {
    pub lo: QuadraticNumber,
    pub hi: QuadraticNumber,
    pub max_den: u64,
    /// Dyadic levels `k`; the box width is `(hi - lo) / 2^k`.
    pub levels: Vec<u32>,
    pub scales: Vec<f64>,
    /// Boxes meeting the complement of the scanned intervals.
    pub counts: Vec<u64>,
    pub slope: f64,
    pub r2: f64,
    /// The complement of finitely many intervals contains the bifurcation set, so the
    /// slope estimates its box dimension from above.
    pub upper_bound: bool,
}

/// Boxes of level `k` lying inside one of the (open, disjoint) intervals.
fn covered_boxes(intervals: &[MatchingInterval], lo: i128, hi: i128, k: u32) -> u64 {
    let span = hi - lo;
    let n = 1i128 << k;
    let edge = |j: i128| lo + span * j / n;
    let mut covered = 0u64;
    for iv in intervals {
        let (l, r) = (fixed(&iv.left), fixed(&iv.right));
        if r <= lo || l >= hi {
            continue;
        }
        // first box with left edge > l, last box with right edge < r
        let mut a = ((l - lo).max(0) * n / span).max(0);
        while a < n && edge(a) <= l {
            a += 1;
        }
        while a > 0 && edge(a - 1) > l {
            a -= 1;
        }
        let mut b = ((r - lo).min(span) * n / span).min(n);
        while b > 0 && edge(b) >= r {
            b -= 1;
        }
        while b < n && edge(b + 1) < r {
            b += 1;
        }
        // boxes a ..= b - 1 have edges in (l, r)
        if b > a {
            covered += (b - a) as u64;
        }
    }
    covered
}

/// Least-squares line `y = a + s x`, returning `(s, r^2)`.
pub fn least_squares(xs: &[f64], ys: &[f64]) -> (f64, f64) {
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let syy: f64 = ys.iter().map(|y| (y - my) * (y - my)).sum();
    let s = sxy / sxx;
    let r2 = if syy == 0.0 { 1.0 } else { sxy * sxy / (sxx * syy) };
    (s, r2)
}

/// The six finest dyadic levels whose boxes are no narrower than `1/max_den`, so every
/// box holds a rational the scan classified.
pub fn default_levels(lo: &QuadraticNumber, hi: &QuadraticNumber, max_den: u64) -> Vec<u32> {
    let span = (hi.to_f64() - lo.to_f64()) * max_den as f64;
    let top = span.log2().floor().max(5.0) as u32;
    (top - 5..=top).collect()
}

/// Box counts of the complement of `scan` in `[lo, hi]` at the given dyadic levels.
pub fn boxcount_from_scan(
    scan: &ScanResult,
    lo: &QuadraticNumber,
    hi: &QuadraticNumber,
    max_den: u64,
    levels: &[u32],
) -> Result<DimensionEstimate> {
    check_range(lo, hi)?;
    if let Some(k) = levels.iter().find(|&&k| k > 20) {
        return Err(Error::InsufficientResolution(format!(
            "level {k} is finer than (hi - lo) / 10^6"
        )));
    }
    let (lo_f, hi_f) = (fixed(lo), fixed(hi));
    let mut counts = Vec::new();
    let mut scales = Vec::new();
    for &k in levels {
        let total = 1u64 << k;
        counts.push(total - covered_boxes(&scan.intervals, lo_f, hi_f, k));
        scales.push(fixed_to_f64((hi_f - lo_f) >> k));
    }
    let mut distinct = levels.to_vec();
    distinct.sort();
    distinct.dedup();
    if distinct.len() < 3 || counts.contains(&0) {
        return Err(Error::InsufficientResolution(format!(
            "levels {levels:?} with counts {counts:?} give fewer than 3 usable scales"
        )));
    }
    let xs: Vec<f64> = scales.iter().map(|w| (1.0 / w).ln()).collect();
    let ys: Vec<f64> = counts.iter().map(|&c| (c as f64).ln()).collect();
    let (slope, r2) = least_squares(&xs, &ys);
    Ok(DimensionEstimate {
        lo: lo.clone(),
        hi: hi.clone(),
        max_den,
        levels: levels.to_vec(),
        scales,
        counts,
        slope,
        r2,
        upper_bound: true,
    })
}

/// Scans `[lo, hi]` at `max_den` and box-counts the complement.
pub fn boxcount_dimension(
    lo: &QuadraticNumber,
    hi: &QuadraticNumber,
    max_den: u64,
    levels: Option<&[u32]>,
) -> Result<DimensionEstimate> {
    check_range(lo, hi)?;
    let scan = scan_intervals(lo, hi, max_den)?;
    let default = default_levels(lo, hi, max_den);
    boxcount_from_scan(&scan, lo, hi, max_den, levels.unwrap_or(&default))
}

/// Writes `lo,hi,scale,count,slope,r2`, one row per scale.
pub fn write_dimension_csv<W: std::io::Write>(d: &DimensionEstimate, out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    let err = |e: csv::Error| Error::Internal(e.to_string());
    w.write_record(["lo", "hi", "scale", "count", "slope", "r2"]).map_err(err)?;
    for (s, c) in d.scales.iter().zip(&d.counts) {
        w.write_record([
            d.lo.to_f64().to_string(),
            d.hi.to_f64().to_string(),
            s.to_string(),
            c.to_string(),
            d.slope.to_string(),
            d.r2.to_string(),
        ])
        .map_err(err)?;
    }
    w.flush().map_err(|e| Error::Internal(e.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matching::interval_from_alpha;

    fn q(s: &str) -> QuadraticNumber {
        s.parse().unwrap()
    }

    #[test]
    fn single_interval_leaves_two_boxes() {
        let iv = interval_from_alpha(&q("7/10"), 100).unwrap();
        let (lo, hi) = (iv.left.clone(), iv.right.clone());
        let scan = ScanResult {
            intervals: vec![iv],
            members: vec![],
        };
        let d = boxcount_from_scan(&scan, &lo, &hi, 0, &[4, 6, 8, 10, 12]).unwrap();
        assert_eq!(d.counts, vec![2; 5]);
        assert_eq!(d.slope, 0.0);
        let d = boxcount_from_scan(&scan, &q("69/100"), &q("71/100"), 0, &[4, 6, 8, 10, 12]).unwrap();
        assert!(d.counts.windows(2).all(|w| w[0] <= w[1]));
        assert!(d.slope > 0.0 && d.slope < 1.0);
    }

    #[test]
    fn counts_for_whole_range_without_intervals() {
        let scan = ScanResult { intervals: vec![], members: vec![] };
        let d = boxcount_from_scan(&scan, &q("0"), &q("1"), 0, &[1, 2, 3, 4]).unwrap();
        assert_eq!(d.counts, vec![2, 4, 8, 16]);
        assert!((d.slope - 1.0).abs() < 1e-12);
    }

    #[test]
    fn least_squares_line() {
        let (s, r2) = least_squares(&[0.0, 1.0, 2.0], &[1.0, 3.0, 5.0]);
        assert!((s - 2.0).abs() < 1e-12 && (r2 - 1.0).abs() < 1e-12);
    }
}
