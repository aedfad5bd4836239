//! Enumerate matching intervals in `[g, 1]` and check them at interior samples.
//!
//! cargo run --release --example scan_intervals -- 200

use std::time::Instant;

use alpha_cf::exactnum::QuadraticNumber;
use alpha_cf::matching::{interior_samples, matches_at, scan_intervals};

fn main() -> alpha_cf::Result<()> {
    let max_den: u64 = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(100);
    let start = Instant::now();
    let scan = scan_intervals(&QuadraticNumber::golden(), &QuadraticNumber::one(), max_den)?;
    let elapsed = start.elapsed();
    let mut bad = 0;
    for iv in &scan.intervals {
        for s in interior_samples(iv)? {
            if !matches_at(&s.to_quadratic(), iv.exp_m, iv.exp_n)? {
                bad += 1;
            }
        }
    }
    let covered: f64 = scan.intervals.iter().map(|iv| iv.length_f64()).sum();
    let mut indices: Vec<i64> = scan.intervals.iter().map(|iv| iv.index).collect();
    indices.sort();
    indices.dedup();
    println!("max denominator {max_den}: {} intervals, {} members", scan.intervals.len(), scan.members.len());
    println!("indices {indices:?}, covered length {covered:.6}, failed samples {bad}");
    println!("scan took {:.2?}", elapsed);
    for iv in scan.intervals.iter().take(5) {
        println!("  ({:.6}, {:.6})  M={} N={}  pseudocenter {}", iv.left_float, iv.right_float, iv.exp_m, iv.exp_n, iv.pseudocenter);
    }
    Ok(())
}
