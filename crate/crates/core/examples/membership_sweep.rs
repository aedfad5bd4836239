//! Decide membership in the bifurcation set for every rational of `[g, 1]` up to a
//! denominator bound, with all three tests and the mirrored test at `1 - a`.
//!
//! cargo run --release --example membership_sweep -- 300

use std::time::Instant;

use alpha_cf::bifurcation::{in_e_all, in_e_reflected_talpha, Membership};
use alpha_cf::exactnum::QuadraticNumber;
use alpha_cf::matching::interval_from_alpha;
use num_bigint::BigInt;
use num_integer::Integer;

fn main() -> alpha_cf::Result<()> {
    let max_den: i64 = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(100);
    let g = QuadraticNumber::golden();
    let start = Instant::now();
    let (mut total, mut members, mut mirror_mismatch, mut complement_mismatch) = (0, 0, 0, 0);
    for q in 1..=max_den {
        for p in 1..=q {
            if p.gcd(&q) != 1 {
                continue;
            }
            let a = QuadraticNumber::ratio(p, q)?;
            if a < g {
                continue;
            }
            total += 1;
            let verdicts = in_e_all(&a, 10_000)?;
            let yes = verdicts[0].member == Membership::Yes;
            assert!(verdicts.iter().all(|v| v.member != Membership::Undecided));
            members += usize::from(yes);
            let b = (-&a).add_int(&BigInt::from(1));
            if (in_e_reflected_talpha(&b, 10_000)?.member == Membership::Yes) != yes {
                mirror_mismatch += 1;
                if mirror_mismatch <= 5 {
                    println!("mirror disagrees at {a}");
                }
            }
            if interval_from_alpha(&a, 10_000).is_ok() == yes {
                complement_mismatch += 1;
            }
        }
    }
    println!("{total} rationals, {members} members, all three tests agree");
    println!("mirror mismatches {mirror_mismatch}, complement mismatches {complement_mismatch}");
    println!("took {:.2?}", start.elapsed());
    Ok(())
}
