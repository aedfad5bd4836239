use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactnum::QuadraticNumber;

/// The exact Gauss-map orbit `z_n = T_1^n(alpha)`, stored up to its first repetition.
///
/// For rational `alpha` the repeating part is the fixed point 0.
#[derive(Clone, Debug)]
pub struct GaussOrbit {
    alpha: QuadraticNumber,
    points: Vec<QuadraticNumber>,
    entry: usize,
    complete: bool,
}

impl GaussOrbit {
    pub fn new(alpha: &QuadraticNumber, budget: usize) -> Result<Self> {
        if alpha.signum().is_le() || alpha > &QuadraticNumber::one() {
            return Err(Error::Domain(format!("{alpha} is outside (0, 1]")));
        }
        let mut seen = HashMap::new();
        let mut points = Vec::new();
        let mut z = alpha.clone();
        loop {
            if let Some(&entry) = seen.get(&z) {
                return Ok(GaussOrbit {
                    alpha: alpha.clone(),
                    points,
                    entry,
                    complete: true,
                });
            }
            if points.len() > budget {
                return Ok(GaussOrbit {
                    alpha: alpha.clone(),
                    entry: points.len(),
                    points,
                    complete: false,
                });
            }
            seen.insert(z.clone(), points.len());
            points.push(z.clone());
            z = if z.is_zero() {
                z
            } else {
                let inv = z.recip()?;
                let k = inv.floor();
                inv.add_int(&-k)
            };
        }
    }

    pub fn alpha(&self) -> &QuadraticNumber {
        &self.alpha
    }

    /// False when the budget ran out before the orbit closed up.
    pub fn is_complete(&self) -> bool {
        self.complete
    }

    pub fn is_absorbed(&self) -> bool {
        self.complete && self.points[self.entry].is_zero()
    }

    pub fn entry(&self) -> usize {
        self.entry
    }

    pub fn period(&self) -> usize {
        self.points.len() - self.entry
    }

    /// Number of stored (pairwise distinct) points.
    pub fn stored(&self) -> usize {
        self.points.len()
    }

    /// `z_n`; `None` only past the end of a truncated orbit.
    pub fn z(&self, n: usize) -> Option<&QuadraticNumber> {
        if n < self.points.len() {
            return self.points.get(n);
        }
        if !self.complete {
            return None;
        }
        let p = self.period();
        self.points.get(self.entry + (n - self.entry) % p)
    }

    /// The regular continued fraction digit `a_k = floor(1/z_{k-1})`, for `k >= 1`.
    pub fn digit(&self, k: usize) -> Option<BigInt> {
        let z = self.z(k.checked_sub(1)?)?;
        if z.is_zero() {
            return None;
        }
        Some(z.recip().expect("nonzero").floor())
    }

    /// Last index worth inspecting: past it the pairs `(z_n, P_n mod 2)` repeat.
    pub fn horizon(&self) -> usize {
        if self.complete {
            (self.entry + 4 * self.period() + 2).max(2)
        } else {
            self.points.len().saturating_sub(1)
        }
    }

    /// `P_1, ..., P_upto` by the recurrence `P_1 = 0`, `P_n = 0` if `z_n <= 1 - alpha` or
    /// `z_{n-1} >= alpha`, else `P_{n-1} + 1`. Index 0 of the result is unused.
    pub fn p_values(&self, upto: usize) -> Vec<usize> {
        let one_minus = (-&self.alpha).add_int(&BigInt::one());
        let mut p = vec![0; upto + 1];
        for n in 2..=upto {
            let (Some(zn), Some(zp)) = (self.z(n), self.z(n - 1)) else {
                p.truncate(n);
                break;
            };
            p[n] = if zn <= &one_minus || zp >= &self.alpha {
                0
            } else {
                p[n - 1] + 1
            };
        }
        p
    }

    /// `R_n = #{1 <= k < n : z_k >= alpha}`.
    pub fn r_count(&self, n: usize) -> usize {
        (1..n)
            .filter(|&k| self.z(k).is_some_and(|z| z >= &self.alpha))
            .count()
    }
}

/// `P_n = min{k >= 0 : z_{n-k} <= 1 - alpha or z_{n-k-1} >= alpha}`, by direct search.
pub fn p_counter(alpha: &QuadraticNumber, n: usize) -> Result<usize> {
    if n == 0 {
        return Err(Error::Domain("P_n needs n >= 1".into()));
    }
    let orbit = GaussOrbit::new(alpha, n + 1)?;
    let z = |k: usize| orbit.z(k).cloned().ok_or(Error::Undecided(n));
    let one_minus = (-alpha).add_int(&BigInt::one());
    for k in 0..n {
        if z(n - k)? <= one_minus || &z(n - k - 1)? >= alpha {
            return Ok(k);
        }
    }
    Err(Error::Internal("P_n search passed z_0 = alpha".into()))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CaseTag {
    /// `1 - alpha < z_n < alpha/(alpha+1)` with `P_n` odd.
    Inner,
    /// `1/(alpha+1) < z_n < alpha`.
    Outer,
    /// An interval of the central range `(1-g, g)`, found symbolically.
    Central,
}

/// The first `n >= 2` at which the Gauss orbit leaves the admissible region.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GaussViolation {
    pub n: usize,
    pub z: QuadraticNumber,
    pub case: CaseTag,
    pub p: usize,
}

/// Result of scanning the Gauss orbit against both forms of the criterion.
#[derive(Clone, Debug)]
pub struct GaussScan {
    pub violation: Option<GaussViolation>,
    /// The form that only looks at indices with odd `P_n` found some violation.
    pub merged_violates: bool,
    pub checked_upto: usize,
}

/// Checks `z_n` for `2 <= n <= horizon` against `(1/(a+1), a)` and, when `P_n` is odd,
/// against `(1-a, a/(a+1))`.
pub fn scan_gauss_orbit(orbit: &GaussOrbit) -> Result<GaussScan> {
    let alpha = orbit.alpha();
    let one = BigInt::one();
    let a1 = alpha.add_int(&one);
    let inv_a1 = a1.recip()?;
    let a_over = alpha.checked_mul(&inv_a1)?;
    let one_minus = (-alpha).add_int(&one);
    let upto = orbit.horizon();
    let p = orbit.p_values(upto);
    let mut violation = None;
    let mut merged_violates = false;
    for n in 2..p.len() {
        let z = orbit.z(n).expect("within horizon");
        let outer = &inv_a1 < z && z < alpha;
        let inner = &one_minus < z && z < &a_over;
        let odd = p[n] % 2 == 1;
        if odd && (outer || inner) {
            merged_violates = true;
        }
        if violation.is_none() && (outer || (inner && odd)) {
            violation = Some(GaussViolation {
                n,
                z: z.clone(),
                case: if outer { CaseTag::Outer } else { CaseTag::Inner },
                p: p[n],
            });
        }
        if violation.is_some() && merged_violates {
            break;
        }
    }
    Ok(GaussScan {
        violation,
        merged_violates,
        checked_upto: p.len().saturating_sub(1),
    })
}
