use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactnum::QuadraticNumber;
use crate::matching::{scan_intervals, ScanResult};

/// Fixed-point resolution (bits) for sums and box positions.
pub const FIXED_BITS: u32 = 100;

pub(crate) fn fixed(x: &QuadraticNumber) -> i128 {
    x.floor_scaled(FIXED_BITS).to_i128().expect("values in [0, 1]")
}

pub(crate) fn fixed_to_f64(v: i128) -> f64 {
    v as f64 / 2f64.powi(FIXED_BITS as i32)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct CoverageReport {
    pub max_den: u64,
    pub lo: QuadraticNumber,
    pub hi: QuadraticNumber,
    /// Covered length with each endpoint truncated to `FIXED_BITS` bits, so the error is
    /// below `2 * interval_count * 2^-FIXED_BITS`.
    #[serde(with = "crate::exactnum::serde_big")]
    pub covered_fixed: BigInt,
    pub covered: f64,
    pub fraction: f64,
    pub interval_count: usize,
}

/// Length of the scanned intervals inside `[lo, hi]` (clipped), for a scan made earlier.
pub fn coverage_of(scan: &ScanResult, max_den: u64, lo: &QuadraticNumber, hi: &QuadraticNumber) -> CoverageReport {
    let (lo_f, hi_f) = (fixed(lo), fixed(hi));
    let mut total: i128 = 0;
    let mut count = 0;
    for iv in &scan.intervals {
        let l = fixed(&iv.left).max(lo_f);
        let r = fixed(&iv.right).min(hi_f);
        if r > l {
            total += r - l;
            count += 1;
        }
    }
    let width = hi_f - lo_f;
    CoverageReport {
        max_den,
        lo: lo.clone(),
        hi: hi.clone(),
        covered_fixed: BigInt::from(total),
        covered: fixed_to_f64(total),
        fraction: if width > 0 { total as f64 / width as f64 } else { 0.0 },
        interval_count: count,
    }
}

/// Lebesgue measure of the union of matching intervals found by a scan at `max_den`.
pub fn coverage(max_den: u64, lo: &QuadraticNumber, hi: &QuadraticNumber) -> Result<CoverageReport> {
    check_range(lo, hi)?;
    let scan = scan_intervals(lo, hi, max_den)?;
    Ok(coverage_of(&scan, max_den, lo, hi))
}

pub(crate) fn check_range(lo: &QuadraticNumber, hi: &QuadraticNumber) -> Result<()> {
    if lo.signum().is_lt() || hi > &QuadraticNumber::one() || lo > hi {
        return Err(Error::Domain(format!("[{lo}, {hi}] is not a range inside [0, 1]")));
    }
    Ok(())
}

/// Writes `max_den,lo,hi,fraction,interval_count`.
pub fn write_coverage_csv<W: std::io::Write>(rows: &[CoverageReport], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    let err = |e: csv::Error| Error::Internal(e.to_string());
    w.write_record(["max_den", "lo", "hi", "fraction", "interval_count"]).map_err(err)?;
    for r in rows {
        w.write_record([
            r.max_den.to_string(),
            r.lo.to_f64().to_string(),
            r.hi.to_f64().to_string(),
            r.fraction.to_string(),
            r.interval_count.to_string(),
        ])
        .map_err(err)?;
    }
    w.flush().map_err(|e| Error::Internal(e.to_string()))
}
