use std::io::Write;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::cfdyn::FamilyKind;
use crate::error::{Error, Result};

pub const BURN_IN: usize = 100;
/// Resamples allowed per sample after hitting an exact float zero.
const MAX_RESAMPLES: usize = 64;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct EntropyEstimate {
    pub family: FamilyKind,
    pub alpha: f64,
    /// The parameter as given, when it was exact.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub exact: Option<String>,
    /// Nats.
    pub mean: f64,
    pub std_error: f64,
    pub n_iter: usize,
    pub n_samples: usize,
    pub seed: u64,
}

impl EntropyEstimate {
    /// `sqrt(se_1^2 + se_2^2)`.
    pub fn combined_error(&self, other: &EntropyEstimate) -> f64 {
        self.std_error.hypot(other.std_error)
    }

    /// `|mean_1 - mean_2| < k * combined error`.
    pub fn agrees_with(&self, other: &EntropyEstimate, k: f64) -> bool {
        (self.mean - other.mean).abs() < k * self.combined_error(other)
    }
}

/// One float step of the family, with its digit and the sign used by the recursion
/// `q_n = d_n q_(n-1) + e_n q_(n-2)`.
fn float_step(family: FamilyKind, alpha: f64, x: f64) -> (f64, f64, f64) {
    match family {
        FamilyKind::TanakaIto => {
            let s = 1.0 / x;
            let d = (s + 1.0 - alpha).floor();
            (s - d, d, 1.0)
        }
        FamilyKind::Nakada => {
            let s = 1.0 / x.abs();
            let d = (s + 1.0 - alpha).floor();
            (s - d, d, x.signum())
        }
        FamilyKind::Gauss => {
            let s = 1.0 / x;
            let d = s.floor();
            (s - d, d, 1.0)
        }
    }
}

/// `2 log|q_n| / n` along one orbit, or `None` if it hit 0.
fn sample_statistic(family: FamilyKind, alpha: f64, mut x: f64, n_iter: usize) -> Option<f64> {
    for _ in 0..BURN_IN {
        if x == 0.0 {
            return None;
        }
        x = float_step(family, alpha, x).0;
    }
    // (q_{n-1}, q_n), renormalized into [1/2, 1) magnitude with the exponent kept apart
    let (mut q_prev, mut q) = (0.0f64, 1.0f64);
    let mut log_scale = 0.0f64;
    for _ in 0..n_iter {
        if x == 0.0 {
            return None;
        }
        let (next, d, e) = float_step(family, alpha, x);
        let q_next = d * q + e * q_prev;
        q_prev = q;
        q = q_next;
        let m = q.abs().max(q_prev.abs());
        if !(0.25..=4.0).contains(&m) {
            if m == 0.0 || !m.is_finite() {
                return None;
            }
            let (_, exp) = frexp(m);
            let scale = (-exp as f64).exp2();
            q *= scale;
            q_prev *= scale;
            log_scale += exp as f64 * std::f64::consts::LN_2;
        }
        x = next;
    }
    Some(2.0 * (q.abs().ln() + log_scale) / n_iter as f64)
}

fn frexp(x: f64) -> (f64, i32) {
    let e = x.abs().log2().floor() as i32 + 1;
    (x / (e as f64).exp2(), e)
}

fn starting_interval(family: FamilyKind, alpha: f64) -> (f64, f64) {
    match family {
        FamilyKind::Gauss => (0.0, 1.0),
        _ => (alpha - 1.0, alpha),
    }
}

/// Mean of `2 log|q_n| / n` over uniform random starting points, simulated in `f64`.
///
/// Sample `i` draws from stream `i` of a ChaCha8 generator keyed by `seed`, so results
/// do not depend on the thread count, and runs with equal seeds share starting points.
pub fn estimate_entropy(
    family: FamilyKind,
    alpha: f64,
    n_iter: usize,
    n_samples: usize,
    seed: u64,
) -> Result<EntropyEstimate> {
    if family != FamilyKind::Gauss && !(alpha > 0.0 && alpha < 1.0) {
        return Err(Error::Domain(format!("alpha = {alpha} is outside (0, 1)")));
    }
    if n_iter < 100 || n_samples < 10 {
        return Err(Error::Domain(format!(
            "need at least 100 iterations and 10 samples, got {n_iter} and {n_samples}"
        )));
    }
    let (lo, hi) = starting_interval(family, alpha);
    let stats: Vec<f64> = (0..n_samples)
        .into_par_iter()
        .map(|i| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(i as u64);
            for _ in 0..MAX_RESAMPLES {
                let x = lo + (hi - lo) * rng.gen::<f64>();
                if let Some(s) = sample_statistic(family, alpha, x, n_iter) {
                    return Ok(s);
                }
            }
            Err(Error::DegenerateOrbit(format!(
                "sample {i} hit 0 on {MAX_RESAMPLES} consecutive starts"
            )))
        })
        .collect::<Result<_>>()?;
    let n = stats.len() as f64;
    let mean = pairwise_sum(&stats) / n;
    let dev: Vec<f64> = stats.iter().map(|s| (s - mean) * (s - mean)).collect();
    let var = pairwise_sum(&dev) / (n - 1.0);
    Ok(EntropyEstimate {
        family,
        alpha,
        exact: None,
        mean,
        std_error: (var / n).sqrt(),
        n_iter,
        n_samples,
        seed,
    })
}

fn pairwise_sum(xs: &[f64]) -> f64 {
    if xs.len() <= 8 {
        return xs.iter().sum();
    }
    let (a, b) = xs.split_at(xs.len() / 2);
    pairwise_sum(a) + pairwise_sum(b)
}

/// Grid `lo, lo + step, ...` up to `hi` (empty if `lo > hi`), one estimate per family and
/// point, in grid order and then family order.
pub fn entropy_curve(
    families: &[FamilyKind],
    lo: f64,
    hi: f64,
    step: f64,
    n_iter: usize,
    n_samples: usize,
    seed: u64,
) -> Result<Vec<EntropyEstimate>> {
    if !(step > 0.0) {
        return Err(Error::Domain(format!("step {step} must be positive")));
    }
    let mut out = Vec::new();
    let mut k = 0u32;
    loop {
        let a = lo + step * k as f64;
        if a > hi + step * 1e-9 {
            break;
        }
        for &f in families {
            out.push(estimate_entropy(f, a, n_iter, n_samples, seed)?);
        }
        k += 1;
    }
    Ok(out)
}

/// Rows `family,alpha,mean,stderr,n_iter,n_samples,seed`.
pub fn write_entropy_csv<W: Write>(rows: &[EntropyEstimate], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["family", "alpha", "mean", "stderr", "n_iter", "n_samples", "seed"])
        .map_err(|e| Error::Internal(e.to_string()))?;
    for r in rows {
        w.write_record([
            family_name(r.family).to_string(),
            r.alpha.to_string(),
            r.mean.to_string(),
            r.std_error.to_string(),
            r.n_iter.to_string(),
            r.n_samples.to_string(),
            r.seed.to_string(),
        ])
        .map_err(|e| Error::Internal(e.to_string()))?;
    }
    w.flush().map_err(|e| Error::Internal(e.to_string()))?;
    Ok(())
}

pub fn family_name(f: FamilyKind) -> &'static str {
    match f {
        FamilyKind::TanakaIto => "TI",
        FamilyKind::Nakada => "N",
        FamilyKind::Gauss => "Gauss",
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gauss_entropy() {
        let e = estimate_entropy(FamilyKind::Gauss, 1.0, 2000, 200, 7).unwrap();
        let h = std::f64::consts::PI.powi(2) / (6.0 * std::f64::consts::LN_2);
        assert!((e.mean - h).abs() < 0.03, "{e:?}");
    }

    #[test]
    fn deterministic_per_seed() {
        let a = estimate_entropy(FamilyKind::TanakaIto, 0.7, 500, 20, 1).unwrap();
        let b = estimate_entropy(FamilyKind::TanakaIto, 0.7, 500, 20, 1).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn empty_and_bad_grids() {
        let c = entropy_curve(&[FamilyKind::TanakaIto], 0.6, 0.5, 0.1, 100, 10, 0).unwrap();
        assert!(c.is_empty());
        assert!(entropy_curve(&[FamilyKind::TanakaIto], 0.5, 0.6, 0.0, 100, 10, 0).is_err());
        assert!(estimate_entropy(FamilyKind::TanakaIto, 1.5, 100, 10, 0).is_err());
    }
}
