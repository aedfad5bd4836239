//! Entropy of the Tanaka-Ito and Nakada maps from Lyapunov exponents of random orbits.
//!
//! cargo run --release --example entropy -- 4000 400

use alpha_cf::analysis::{estimate_entropy, EntropyEstimate};
use alpha_cf::cfdyn::FamilyKind;

fn main() -> alpha_cf::Result<()> {
    let mut args = std::env::args().skip(1).map(|s| s.parse::<usize>().ok());
    let n_iter = args.next().flatten().unwrap_or(4_000);
    let n_samples = args.next().flatten().unwrap_or(400);
    let seed = 7;

    let gauss = estimate_entropy(FamilyKind::Gauss, 1.0, n_iter, n_samples, seed)?;
    let exact = std::f64::consts::PI.powi(2) / (6.0 * std::f64::consts::LN_2);
    println!("Gauss   {:.5} ± {:.5}  (exact {exact:.5})", gauss.mean, gauss.std_error);

    for alpha in [0.3, 0.5, 0.62, 0.7, 0.8, 0.95] {
        let ti = estimate_entropy(FamilyKind::TanakaIto, alpha, n_iter, n_samples, seed)?;
        let n = estimate_entropy(FamilyKind::Nakada, alpha, n_iter, n_samples, seed)?;
        // closed form of the Nakada entropy, valid for a >= g
        let closed = if alpha >= 0.5 * (5f64.sqrt() - 1.0) {
            format!("{:.5}", std::f64::consts::PI.powi(2) / (6.0 * (1.0 + alpha).ln()))
        } else {
            "-".into()
        };
        println!(
            "a = {alpha:.2}  TI {:.5} ± {:.5}  N {:.5} ± {:.5}  (N exact {closed})  agree: {}",
            ti.mean,
            ti.std_error,
            n.mean,
            n.std_error,
            EntropyEstimate::agrees_with(&ti, &n, 3.0)
        );
    }
    Ok(())
}
