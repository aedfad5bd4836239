//! How much of `[g, 1]` the matching intervals found so far cover.
//!
//! cargo run --release --example coverage -- 10 100 500

use alpha_cf::analysis::{coverage_of, write_coverage_csv};
use alpha_cf::exactnum::QuadraticNumber;
use alpha_cf::matching::scan_intervals;

fn main() -> alpha_cf::Result<()> {
    let mut dens: Vec<u64> = std::env::args().skip(1).filter_map(|s| s.parse().ok()).collect();
    if dens.is_empty() {
        dens = vec![10, 50, 100, 300];
    }
    let g = QuadraticNumber::golden();
    let one = QuadraticNumber::one();
    let scan = scan_intervals(&g, &one, *dens.iter().max().unwrap())?;
    // one scan at the largest bound restricts to every smaller one
    let rows: Vec<_> = dens.iter().map(|&d| coverage_of(&scan.restrict(d), d, &g, &one)).collect();
    write_coverage_csv(&rows, std::io::stdout())?;
    Ok(())
}
