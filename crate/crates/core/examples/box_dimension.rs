//! Box-counting slopes of the uncovered part of `[g, 1]`, near `g` and away from it.
//!
//! cargo run --release --example box_dimension -- 2000

use alpha_cf::analysis::{boxcount_from_scan, default_levels};
use alpha_cf::exactnum::QuadraticNumber;
use alpha_cf::matching::scan_intervals;

fn main() -> alpha_cf::Result<()> {
    let max_den: u64 = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(500);
    let g = QuadraticNumber::golden();
    let one = QuadraticNumber::one();
    let split = g.checked_add(&"1/20".parse()?)?;
    let scan = scan_intervals(&g, &one, max_den)?;
    for (name, lo, hi) in [("near g", &g, &split), ("away from g", &split, &one)] {
        let levels = default_levels(lo, hi, max_den);
        let d = boxcount_from_scan(&scan, lo, hi, max_den, &levels)?;
        println!("{name}: levels {:?}", d.levels);
        println!("  counts {:?}", d.counts);
        println!("  slope {:.4} (r2 {:.4}), an upper estimate", d.slope, d.r2);
    }
    Ok(())
}
