//! Numerical estimates: entropy from convergent growth, measure of the matching set,
//! and box counts of its complement.

mod coverage;
mod dimension;
mod entropy;

use num_bigint::BigInt;

pub use coverage::{coverage, coverage_of, write_coverage_csv, CoverageReport, FIXED_BITS};
pub use dimension::{
    boxcount_dimension, boxcount_from_scan, default_levels, least_squares, write_dimension_csv,
    DimensionEstimate,
};
pub use entropy::{
    entropy_curve, estimate_entropy, family_name, write_entropy_csv, EntropyEstimate, BURN_IN,
};

use crate::bifurcation::DigitConstraint;
use crate::error::{Error, Result};
use crate::exactnum::{QuadraticNumber, Rational};

/// Least `n >= 1` with `F_(2n) / F_(2n+1) <= g + delta`, where `F_0 = F_1 = 1`.
///
/// Beyond `g + delta` the bifurcation set avoids `2n+1` consecutive ones, see
/// [`containing_constraint`].
pub fn fibonacci_threshold(delta: &Rational) -> Result<usize> {
    if delta.num() <= &BigInt::from(0) {
        return Err(Error::Domain(format!("delta = {delta} must be positive")));
    }
    let bound = QuadraticNumber::golden().checked_add(&delta.to_quadratic())?;
    let (mut f_even, mut f_odd) = (BigInt::from(2), BigInt::from(3));
    for n in 1.. {
        if QuadraticNumber::ratio(f_even.clone(), f_odd.clone())? <= bound {
            return Ok(n);
        }
        let next_even = &f_even + &f_odd;
        let next_odd = &next_even + &f_odd;
        f_even = next_even;
        f_odd = next_odd;
    }
    unreachable!()
}

/// `C_(2n+1)` for the threshold `n` of `delta`.
pub fn containing_constraint(delta: &Rational) -> Result<DigitConstraint> {
    Ok(DigitConstraint::NoOnesRun(2 * fibonacci_threshold(delta)? + 1))
}
