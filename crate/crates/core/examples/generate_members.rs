//! Members of the bifurcation set built from digit conditions.
//!
//! cargo run --release --example generate_members

use alpha_cf::bifurcation::{
    digit_predicate, extend_member, gamma_beta_eta, gen_rational_members, hat_c_embed, in_e_all,
    DigitConstraint,
};
use alpha_cf::exactnum::{rcf_expand, RcfExpansion};

fn main() -> alpha_cf::Result<()> {
    let rationals = gen_rational_members(8)?;
    println!("(n-1)/n: {}", rationals.iter().map(|r| r.to_string()).collect::<Vec<_>>().join(", "));

    let tail: RcfExpansion = "[0;(9)]".parse()?;
    for r in &rationals[1..4] {
        let x = extend_member(r, &tail, None)?;
        println!("extension of {r}: {} = {x}", rcf_expand(&x)?);
    }

    for (n, w) in [(1, "[0;(2)]"), (1, "[0;(1,2)]"), (2, "[0;1,1,(3)]")] {
        let e: RcfExpansion = w.parse()?;
        let ok = digit_predicate(DigitConstraint::NoOnesRun(2 * n + 1), &e);
        let x = hat_c_embed(n, &e)?;
        let agree = in_e_all(&x, 10_000)?.iter().all(|v| v.member == alpha_cf::bifurcation::Membership::Yes);
        println!("n = {n}, {w} (no run of {} ones: {ok}) -> {} ≈ {:.12}, member: {agree}", 2 * n + 1, rcf_expand(&x)?, x.to_f64());
    }

    for a in 2..=5 {
        let s = gamma_beta_eta(a)?;
        println!(
            "a = {a}: gamma ≈ {:.10} between ({:.10}, {:.10}) and ({:.10}, {:.10})",
            s.gamma.to_f64(),
            s.lower.left_float,
            s.lower.right_float,
            s.upper.left_float,
            s.upper.right_float
        );
    }
    Ok(())
}
