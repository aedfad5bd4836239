//! Exact numbers and their regular continued fractions.
//!
//! cargo run --example expansions

use alpha_cf::exactnum::{rcf_eval, rcf_expand, simplest_between, QuadraticNumber, RcfExpansion};

fn main() -> alpha_cf::Result<()> {
    for s in ["7/10", "(-1+1*sqrt(5))/2", "(0+1*sqrt(2))/2", "(5-1*sqrt(13))/2", "(-13+1*sqrt(533))/14"] {
        let x: QuadraticNumber = s.parse()?;
        println!("{x:<24} ≈ {:<20} {}", x.to_f64(), rcf_expand(&x)?);
    }

    // periodic words evaluate to quadratic irrationals, and expand back to the same word
    for w in ["[0;(1)]", "[0;1,(2)]", "[0;(1,3,1)]", "[0;1,2,(3)]"] {
        let e: RcfExpansion = w.parse()?;
        let x = rcf_eval(&e);
        assert_eq!(rcf_expand(&x)?, e);
        println!("{w:<14} = {x}");
    }

    let lo: QuadraticNumber = "(5-1*sqrt(13))/2".parse()?;
    let hi: QuadraticNumber = "(0+1*sqrt(2))/2".parse()?;
    println!("simplest rational in ({lo}, {hi}): {}", simplest_between(&lo, Some(&hi)));
    Ok(())
}
