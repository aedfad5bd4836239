//! Matching exponents of a parameter, its interval, and the state traces behind them.
//!
//! cargo run --example matching_traces -- 7/10

use alpha_cf::exactnum::QuadraticNumber;
use alpha_cf::matching::{detect_matching, interval_containing, pair_trace, triple_trace};

fn main() -> alpha_cf::Result<()> {
    let arg = std::env::args().nth(1).unwrap_or_else(|| "7/10".into());
    let alpha: QuadraticNumber = arg.parse()?;

    let v = detect_matching(&alpha, 10_000)?;
    println!("{alpha}: {:?}", v.outcome);
    if v.exponents().is_some() {
        let iv = interval_containing(&alpha, 10_000)?;
        println!("interval ({}, {})", iv.left, iv.right);
        println!("  ≈ ({}, {})", iv.left_float, iv.right_float);
        println!("  ends {} and {}", iv.left_expansion, iv.right_expansion);
        println!("  M = {}, N = {}, pseudocenter {}, {:?}", iv.exp_m, iv.exp_n, iv.pseudocenter, iv.case_tag);
    }

    if alpha >= QuadraticNumber::golden() {
        let t = pair_trace(&alpha, 10_000)?;
        for s in &t.steps {
            println!("  pair   n = {:>2} {:?}  x = {}  y = {}", s.n, s.tag, s.x, s.y);
        }
        println!("  exceedance {:?}, end {:?}", t.exceedance, t.end);
        let t = triple_trace(&alpha, 10_000)?;
        for s in &t.states {
            println!("  triple n = {:>2} {:?}  z = {}  r = {}", s.n, s.tag, s.z, s.r);
        }
        println!("  end {:?}, {} parity checks", t.end, t.parity_checks);
    }
    Ok(())
}
