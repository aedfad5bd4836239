use num_bigint::BigInt;
use num_traits::One;
use serde::{Deserialize, Serialize};

use super::interval::{central_intervals, orbit_identity};
use super::pair::{pair_trace, PairStep, TraceEnd};
use crate::error::{Error, Result};
use crate::exactnum::QuadraticNumber;

/// Why a parameter was classified into the bifurcation set.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "camelCase")]
pub enum Witness {
    /// Both orbits reached 0 at step `at` without exceeding `1/(a+1)`.
    Absorbed { at: usize },
    /// The pair `(x_n, y_n)` repeated without exceedance.
    Cycle { entry: usize, period: usize },
    /// An endpoint of one of the central intervals.
    Endpoint { value: String },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "outcome", rename_all = "camelCase")]
pub enum MatchOutcome {
    Matched {
        #[serde(rename = "M")]
        exp_m: usize,
        #[serde(rename = "N")]
        exp_n: usize,
        /// Exceedance step and side; absent for the central range, which is resolved
        /// without the pair trace.
        m: Option<usize>,
        epsilon: Option<i8>,
    },
    InBifurcationSet { witness: Witness },
    Undecided { budget: usize },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatchVerdict {
    pub alpha: QuadraticNumber,
    pub outcome: MatchOutcome,
    /// The verdict was computed at `1 - alpha` and mapped back.
    pub reflected: bool,
    pub trace: Vec<PairStep>,
}

impl MatchVerdict {
    pub fn exponents(&self) -> Option<(usize, usize)> {
        match self.outcome {
            MatchOutcome::Matched { exp_m, exp_n, .. } => Some((exp_m, exp_n)),
            _ => None,
        }
    }

    pub fn index(&self) -> Option<i64> {
        self.exponents().map(|(m, n)| m as i64 - n as i64)
    }

    pub fn is_member(&self) -> bool {
        matches!(self.outcome, MatchOutcome::InBifurcationSet { .. })
    }
}

fn upper(alpha: &QuadraticNumber, n_max: usize) -> Result<MatchVerdict> {
    let trace = pair_trace(alpha, n_max)?;
    let outcome = match (trace.exceedance, &trace.end) {
        (Some(ex), _) => {
            let (exp_m, exp_n) = ex.exponents();
            if !orbit_identity(alpha, exp_m, exp_n)? {
                return Err(Error::InternalDisagreement(format!(
                    "exceedance at m = {} predicts ({exp_m}, {exp_n}) but the orbits of {alpha} do not match there",
                    ex.m
                )));
            }
            MatchOutcome::Matched {
                exp_m,
                exp_n,
                m: Some(ex.m),
                epsilon: Some(ex.epsilon),
            }
        }
        (None, TraceEnd::Absorbed { at }) => MatchOutcome::InBifurcationSet {
            witness: Witness::Absorbed { at: *at },
        },
        (None, TraceEnd::Cycle { entry, period }) => MatchOutcome::InBifurcationSet {
            witness: Witness::Cycle {
                entry: *entry,
                period: *period,
            },
        },
        (None, _) => MatchOutcome::Undecided { budget: n_max },
    };
    Ok(MatchVerdict {
        alpha: alpha.clone(),
        outcome,
        reflected: false,
        trace: trace.steps,
    })
}

fn central(alpha: &QuadraticNumber) -> Result<MatchVerdict> {
    let outcome = match central_intervals().iter().find(|iv| iv.contains(alpha)) {
        None => MatchOutcome::InBifurcationSet {
            witness: Witness::Endpoint {
                value: alpha.to_string(),
            },
        },
        Some(iv) => {
            if !orbit_identity(alpha, iv.exp_m, iv.exp_n)? {
                return Err(Error::InternalDisagreement(format!(
                    "exponents ({}, {}) of the central interval fail at {alpha}",
                    iv.exp_m, iv.exp_n
                )));
            }
            MatchOutcome::Matched {
                exp_m: iv.exp_m,
                exp_n: iv.exp_n,
                m: None,
                epsilon: None,
            }
        }
    };
    Ok(MatchVerdict {
        alpha: alpha.clone(),
        outcome,
        reflected: false,
        trace: Vec::new(),
    })
}

/// Decides whether `alpha` in `[0, 1]` matches, with exponents checked exactly.
///
/// Parameters in `[0, 1-g)` are mapped to `1 - alpha`, where the exponents swap.
pub fn detect_matching(alpha: &QuadraticNumber, n_max: usize) -> Result<MatchVerdict> {
    let one = BigInt::one();
    if alpha.signum().is_lt() || alpha > &QuadraticNumber::one() {
        return Err(Error::Domain(format!("{alpha} is outside [0, 1]")));
    }
    let g = QuadraticNumber::golden();
    let one_minus_g = (-&g).add_int(&one);
    if alpha >= &g {
        return upper(alpha, n_max);
    }
    if alpha <= &one_minus_g {
        let mut v = upper(&(-alpha).add_int(&one), n_max)?;
        v.alpha = alpha.clone();
        v.reflected = true;
        if let MatchOutcome::Matched { exp_m, exp_n, .. } = &mut v.outcome {
            std::mem::swap(exp_m, exp_n);
        }
        return Ok(v);
    }
    central(alpha)
}
