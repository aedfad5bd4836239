//! Exact arithmetic over the rationals and real quadratic fields, linear fractional
//! maps, and regular continued fraction expansions.

mod mobius;
mod quadratic;
mod rational;
mod rcf;
pub mod serde_big;

pub use mobius::MobiusMap;
pub use quadratic::QuadraticNumber;
pub use rational::Rational;
pub use rcf::{rcf_eval, rcf_expand, word_map, RcfExpansion};

/// The simplest rational (least denominator, then least numerator in absolute value)
/// strictly between `lo` and `hi`, where `hi = None` stands for positive infinity.
pub fn simplest_between(lo: &QuadraticNumber, hi: Option<&QuadraticNumber>) -> Rational {
    use num_bigint::BigInt;
    use num_traits::One;

    let mut heads: Vec<BigInt> = Vec::new();
    let mut lo = lo.clone();
    let mut hi = hi.cloned();
    let last = loop {
        let fl = lo.floor();
        let next: BigInt = &fl + 1;
        if hi.as_ref().is_none_or(|h| QuadraticNumber::from(next.clone()) < *h) {
            break next;
        }
        let lo_frac = lo.add_int(&-&fl);
        let hi_frac = hi.as_ref().unwrap().add_int(&-&fl);
        heads.push(fl);
        let new_lo = hi_frac.recip().expect("hi > lo >= floor");
        hi = (!lo_frac.is_zero()).then(|| lo_frac.recip().expect("nonzero"));
        lo = new_lo;
    };
    let (mut num, mut den) = (last, BigInt::one());
    for h in heads.into_iter().rev() {
        // h + 1/(num/den)
        let n = &h * &num + &den;
        den = num;
        num = n;
    }
    Rational::new(num, den).expect("positive denominators")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(s: &str) -> QuadraticNumber {
        s.parse().unwrap()
    }

    #[test]
    fn simplest_rationals() {
        let s = |a: &str, b: &str| simplest_between(&q(a), Some(&q(b))).to_string();
        assert_eq!(s("1/3", "1/2"), "2/5");
        assert_eq!(s("0", "1"), "1/2");
        assert_eq!(s("7/5", "3/2"), "10/7");
        assert_eq!(s("-1/2", "1/2"), "0/1");
        assert_eq!(s("(5-1*sqrt(13))/2", "(0+1*sqrt(2))/2"), "7/10");
        assert_eq!(simplest_between(&q("5/2"), None).to_string(), "3/1");
    }
}
