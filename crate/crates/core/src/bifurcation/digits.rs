use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::exactnum::RcfExpansion;

/// Digit conditions on `x = [0; a_1, a_2, ...]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum DigitConstraint {
    /// `a_k >= n` for all `k`.
    HighType(u32),
    /// No `n` consecutive digits equal to 1.
    NoOnesRun(usize),
    /// No aligned block `a_{kn+1} .. a_{kn+n}` made of ones.
    BlockNoOnes(usize),
}

/// The digits `a_1 .. a_len`, or all of them for a finite expansion shorter than that.
fn window(e: &RcfExpansion, len: usize) -> Vec<BigUint> {
    (1..=len).map_while(|k| e.digit(k).cloned()).collect()
}

/// Exact evaluation on a finite or eventually periodic expansion.
///
/// For periodic expansions with preperiod `p` and period `l`, the condition at every
/// offset is decided by the first `p + l + n - 1` digits (for runs), or by the blocks
/// starting before `p + lcm(n, l)` (for aligned blocks). Finite expansions are read
/// in their canonical form, and a run may not extend past the last digit.
pub fn digit_predicate(kind: DigitConstraint, e: &RcfExpansion) -> bool {
    let (pre, per) = (e.preperiod().len(), e.period().len());
    match kind {
        DigitConstraint::HighType(n) => {
            let n = BigUint::from(n);
            e.preperiod().iter().chain(e.period()).all(|a| a >= &n)
        }
        DigitConstraint::NoOnesRun(n) => {
            if n == 0 {
                return false;
            }
            let digits = window(e, pre + per + n - 1);
            !digits.windows(n).any(|w| w.iter().all(|a| a.is_one()))
        }
        DigitConstraint::BlockNoOnes(n) => {
            if n == 0 {
                return false;
            }
            let span = if per == 0 { pre } else { pre + n.lcm(&per) };
            let digits = window(e, span + 2 * n);
            !digits
                .chunks(n)
                .filter(|b| b.len() == n)
                .any(|b| b.iter().all(|a| a.is_one()))
        }
    }
}
