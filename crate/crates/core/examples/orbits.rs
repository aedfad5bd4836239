//! Orbits of one parameter under the three maps, and the convergent bounds.
//!
//! cargo run --example orbits -- 7/10

use alpha_cf::cfdyn::{convergents, orbit, within_convergent_bound, within_speed_bound, FamilyKind};
use alpha_cf::exactnum::QuadraticNumber;
use num_bigint::BigInt;

fn main() -> alpha_cf::Result<()> {
    let arg = std::env::args().nth(1).unwrap_or_else(|| "7/10".into());
    let alpha: QuadraticNumber = arg.parse()?;
    let minus_one = alpha.add_int(&BigInt::from(-1));
    let inv_minus_one = alpha.recip()?.add_int(&BigInt::from(-1));

    for (name, kind, x0) in [
        ("T_a on a-1", FamilyKind::TanakaIto, &minus_one),
        ("T_a on 1/a-1", FamilyKind::TanakaIto, &inv_minus_one),
        ("Nakada on a-1", FamilyKind::Nakada, &minus_one),
        ("Gauss on a", FamilyKind::Gauss, &alpha),
    ] {
        let o = orbit(kind, &alpha, x0, 40)?;
        let vals: Vec<String> = o.values().iter().map(|v| v.to_string()).collect();
        println!("{name:<14} {} ({:?})", vals.join(", "), o.end);
    }

    let x: QuadraticNumber = "(0+1*sqrt(2))/2".parse()?;
    let x = &x - &"1/2".parse::<QuadraticNumber>()?;
    println!("convergents of {x} at a = {alpha}:");
    for c in convergents(&alpha, &x, 12)?.iter().skip(1) {
        println!(
            "  n = {:>2}  {}  error bound {}  speed bound {}",
            c.index,
            c.value(),
            within_convergent_bound(&x, c),
            within_speed_bound(c)
        );
    }
    Ok(())
}
