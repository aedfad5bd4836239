//! The Tanaka-Ito map family `T_a(x) = 1/x - floor(1/x + 1 - a)` on `[a - 1, a]`,
//! the Nakada variant with `1/|x|`, the Gauss map, orbits and convergents.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::io::Write;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactnum::QuadraticNumber;

/// Default bound on the bit length of any integer in an orbit point.
pub const DEFAULT_HEIGHT_BITS: u64 = 1_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum FamilyKind {
    TanakaIto,
    Nakada,
    Gauss,
}

impl FamilyKind {
    /// The interval `[lo, hi]` the map acts on.
    pub fn domain(self, alpha: &QuadraticNumber) -> (QuadraticNumber, QuadraticNumber) {
        match self {
            FamilyKind::Gauss => (QuadraticNumber::zero(), QuadraticNumber::one()),
            _ => (alpha.add_int(&-BigInt::one()), alpha.clone()),
        }
    }

    fn check(self, alpha: &QuadraticNumber, x: &QuadraticNumber) -> Result<()> {
        if self != FamilyKind::Gauss
            && (alpha.signum() == Ordering::Less || alpha > &QuadraticNumber::one())
        {
            return Err(Error::Domain(format!("parameter {alpha} is outside [0, 1]")));
        }
        let (lo, hi) = self.domain(alpha);
        if x < &lo || x > &hi {
            return Err(Error::Domain(format!("{x} is outside [{lo}, {hi}]")));
        }
        Ok(())
    }

    pub fn digit(self, alpha: &QuadraticNumber, x: &QuadraticNumber) -> Result<BigInt> {
        match self {
            FamilyKind::TanakaIto => ti_digit(alpha, x),
            FamilyKind::Nakada => nakada_digit(alpha, x),
            FamilyKind::Gauss => gauss_digit(x),
        }
    }

    pub fn step(self, alpha: &QuadraticNumber, x: &QuadraticNumber) -> Result<QuadraticNumber> {
        match self {
            FamilyKind::TanakaIto => ti_step(alpha, x),
            FamilyKind::Nakada => nakada_step(alpha, x),
            FamilyKind::Gauss => gauss_step(x),
        }
    }
}

fn one_minus(alpha: &QuadraticNumber) -> QuadraticNumber {
    (-alpha).add_int(&BigInt::one())
}

/// `floor(1/x + 1 - alpha)`.
pub fn ti_digit(alpha: &QuadraticNumber, x: &QuadraticNumber) -> Result<BigInt> {
    FamilyKind::TanakaIto.check(alpha, x)?;
    if x.is_zero() {
        return Err(Error::ZeroInput);
    }
    Ok(QuadraticNumber::floor_of_sum(&x.recip()?, &one_minus(alpha)))
}

pub fn ti_step(alpha: &QuadraticNumber, x: &QuadraticNumber) -> Result<QuadraticNumber> {
    if x.is_zero() {
        FamilyKind::TanakaIto.check(alpha, x)?;
        return Ok(QuadraticNumber::zero());
    }
    let d = ti_digit(alpha, x)?;
    Ok(x.recip()?.add_int(&-d))
}

/// `floor(1/|x| + 1 - alpha)`.
pub fn nakada_digit(alpha: &QuadraticNumber, x: &QuadraticNumber) -> Result<BigInt> {
    FamilyKind::Nakada.check(alpha, x)?;
    if x.is_zero() {
        return Err(Error::ZeroInput);
    }
    Ok(QuadraticNumber::floor_of_sum(&x.abs().recip()?, &one_minus(alpha)))
}

pub fn nakada_step(alpha: &QuadraticNumber, x: &QuadraticNumber) -> Result<QuadraticNumber> {
    if x.is_zero() {
        FamilyKind::Nakada.check(alpha, x)?;
        return Ok(QuadraticNumber::zero());
    }
    let d = nakada_digit(alpha, x)?;
    Ok(x.abs().recip()?.add_int(&-d))
}

pub fn gauss_digit(x: &QuadraticNumber) -> Result<BigInt> {
    FamilyKind::Gauss.check(&QuadraticNumber::one(), x)?;
    if x.is_zero() {
        return Err(Error::ZeroInput);
    }
    Ok(x.recip()?.floor())
}

pub fn gauss_step(x: &QuadraticNumber) -> Result<QuadraticNumber> {
    if x.is_zero() {
        return Ok(QuadraticNumber::zero());
    }
    let d = gauss_digit(x)?;
    Ok(x.recip()?.add_int(&-d))
}

/// True when `x` sits on a discontinuity of the map, i.e. `S(x) + 1 - alpha` is an integer.
pub fn at_discontinuity(kind: FamilyKind, alpha: &QuadraticNumber, x: &QuadraticNumber) -> bool {
    if x.is_zero() {
        return false;
    }
    let s = match kind {
        FamilyKind::Nakada => x.abs().recip(),
        _ => x.recip(),
    }
    .expect("nonzero");
    let shift = match kind {
        FamilyKind::Gauss => QuadraticNumber::zero(),
        _ => one_minus(alpha),
    };
    s.same_field(&shift) && s.checked_add(&shift).unwrap().is_integer()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrbitPoint {
    pub index: usize,
    pub value: QuadraticNumber,
    /// The digit emitted to reach this point; absent for the starting point.
    #[serde(with = "crate::exactnum::serde_big::option")]
    pub digit: Option<BigInt>,
    pub at_discontinuity: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum OrbitEnd {
    /// The orbit reached the fixed point 0 at this index.
    Absorbed { at: usize },
    /// `points[entry + period] == points[entry]`.
    Cycle { entry: usize, period: usize },
    /// Stopped after the requested number of steps.
    Budget,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Orbit {
    pub kind: FamilyKind,
    pub alpha: QuadraticNumber,
    pub points: Vec<OrbitPoint>,
    pub end: OrbitEnd,
}

impl Orbit {
    pub fn values(&self) -> Vec<QuadraticNumber> {
        self.points.iter().map(|p| p.value.clone()).collect()
    }

    /// Writes the orbit as CSV with columns `n, value, digit, float64`.
    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        let io = |e: csv::Error| Error::Internal(e.to_string());
        w.write_record(["n", "value", "digit", "float64"]).map_err(io)?;
        for p in &self.points {
            w.write_record([
                p.index.to_string(),
                p.value.to_string(),
                p.digit.as_ref().map(|d| d.to_string()).unwrap_or_default(),
                p.value.to_f64().to_string(),
            ])
            .map_err(io)?;
        }
        w.flush().map_err(|e| Error::Internal(e.to_string()))
    }
}

/// Exact orbit of `x0`, stopping at absorption, at a detected cycle, or after `n_max` steps.
pub fn orbit(
    kind: FamilyKind,
    alpha: &QuadraticNumber,
    x0: &QuadraticNumber,
    n_max: usize,
) -> Result<Orbit> {
    orbit_with_height(kind, alpha, x0, n_max, DEFAULT_HEIGHT_BITS)
}

pub fn orbit_with_height(
    kind: FamilyKind,
    alpha: &QuadraticNumber,
    x0: &QuadraticNumber,
    n_max: usize,
    height_bits: u64,
) -> Result<Orbit> {
    let alpha = match kind {
        FamilyKind::Gauss => QuadraticNumber::one(),
        _ => alpha.clone(),
    };
    kind.check(&alpha, x0)?;
    let mut seen = HashMap::new();
    let mut points = vec![OrbitPoint {
        index: 0,
        value: x0.clone(),
        digit: None,
        at_discontinuity: at_discontinuity(kind, &alpha, x0),
    }];
    let mut x = x0.clone();
    let mut n = 0;
    let end = loop {
        if x.is_zero() {
            break OrbitEnd::Absorbed { at: n };
        }
        if let Some(&entry) = seen.get(&x) {
            points.pop();
            break OrbitEnd::Cycle {
                entry,
                period: n - entry,
            };
        }
        if n >= n_max {
            break OrbitEnd::Budget;
        }
        seen.insert(x.clone(), n);
        let d = kind.digit(&alpha, &x)?;
        let next = x.recip()?;
        let next = if kind == FamilyKind::Nakada { next.abs() } else { next };
        x = next.add_int(&-&d);
        if x.height_bits() > height_bits {
            return Err(Error::HeightOverflow(height_bits));
        }
        n += 1;
        points.push(OrbitPoint {
            index: n,
            value: x.clone(),
            digit: Some(d),
            at_discontinuity: at_discontinuity(kind, &alpha, &x),
        });
    };
    Ok(Orbit {
        kind,
        alpha,
        points,
        end,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConvergentPair {
    pub index: usize,
    #[serde(with = "crate::exactnum::serde_big")]
    pub p: BigInt,
    #[serde(with = "crate::exactnum::serde_big")]
    pub q: BigInt,
}

impl ConvergentPair {
    pub fn value(&self) -> QuadraticNumber {
        QuadraticNumber::ratio(self.p.clone(), self.q.clone()).expect("q != 0")
    }
}

/// Tanaka-Ito convergents `p_n/q_n` for `n = 0..`, stopping at absorption or `n_max`.
///
/// `p_n = d_n p_{n-1} + p_{n-2}` and `q_n = d_n q_{n-1} + q_{n-2}` from
/// `p_{-1} = 1, p_0 = 0, q_{-1} = 0, q_0 = 1`.
pub fn convergents(
    alpha: &QuadraticNumber,
    x: &QuadraticNumber,
    n_max: usize,
) -> Result<Vec<ConvergentPair>> {
    FamilyKind::TanakaIto.check(alpha, x)?;
    let (mut p_prev, mut p) = (BigInt::one(), BigInt::zero());
    let (mut q_prev, mut q) = (BigInt::zero(), BigInt::one());
    let mut out = vec![ConvergentPair {
        index: 0,
        p: p.clone(),
        q: q.clone(),
    }];
    let mut z = x.clone();
    for n in 1..=n_max {
        if z.is_zero() {
            break;
        }
        let d = ti_digit(alpha, &z)?;
        z = z.recip()?.add_int(&-&d);
        let p_next = &d * &p + &p_prev;
        let q_next = &d * &q + &q_prev;
        p_prev = std::mem::replace(&mut p, p_next);
        q_prev = std::mem::replace(&mut q, q_next);
        out.push(ConvergentPair {
            index: n,
            p: p.clone(),
            q: q.clone(),
        });
    }
    Ok(out)
}

/// Nested fraction `1/(d_1 + 1/(d_2 + ... + 1/d_n))`, evaluated directly.
pub fn nested_fraction(digits: &[BigInt]) -> Result<QuadraticNumber> {
    let mut acc = QuadraticNumber::zero();
    for d in digits.iter().rev() {
        acc = acc.add_int(d).recip()?;
    }
    Ok(acc)
}

/// `|x - p/q| <= 1/q^2`, exactly.
pub fn within_convergent_bound(x: &QuadraticNumber, c: &ConvergentPair) -> bool {
    if c.q.is_zero() {
        return false;
    }
    let err = (x - &c.value()).abs();
    let bound = QuadraticNumber::ratio(1, &c.q * &c.q).unwrap();
    err <= bound
}

/// `1/q^2 <= g^n`, exactly in the golden field.
pub fn within_speed_bound(c: &ConvergentPair) -> bool {
    let g = QuadraticNumber::golden();
    let mut gn = QuadraticNumber::one();
    for _ in 0..c.index {
        gn = &gn * &g;
    }
    let q2 = QuadraticNumber::integer(&c.q * &c.q);
    (&q2 * &gn).cmp_exact(&QuadraticNumber::one()) != Ordering::Less && !c.q.is_zero()
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Signed;

    fn q(s: &str) -> QuadraticNumber {
        s.parse().unwrap()
    }

    #[test]
    fn digits_and_steps() {
        let a = q("4/5");
        assert_eq!(ti_digit(&a, &q("1/4")).unwrap(), BigInt::from(4));
        assert_eq!(ti_digit(&a, &q("-1/5")).unwrap(), BigInt::from(-5));
        assert_eq!(ti_step(&a, &q("-1/5")).unwrap(), QuadraticNumber::zero());
        let g = QuadraticNumber::golden();
        let gm1 = g.add_int(&BigInt::from(-1));
        assert_eq!(ti_digit(&g, &gm1).unwrap(), BigInt::from(-3));
        let one_minus_g = (-&g).add_int(&BigInt::one());
        assert_eq!(ti_step(&g, &gm1).unwrap(), one_minus_g);
        assert_eq!(ti_step(&g, &one_minus_g).unwrap(), gm1);
        assert_eq!(ti_digit(&a, &QuadraticNumber::zero()), Err(Error::ZeroInput));
        assert!(matches!(ti_step(&a, &q("9/10")), Err(Error::Domain(_))));
    }

    #[test]
    fn nakada_matches_on_positive_points() {
        assert_eq!(nakada_step(&q("1/2"), &q("-2/5")).unwrap(), q("-1/2"));
        let a = q("3/5");
        assert_eq!(nakada_step(&a, &q("2/7")).unwrap(), ti_step(&a, &q("2/7")).unwrap());
    }

    #[test]
    fn orbits_terminate() {
        let g = QuadraticNumber::golden();
        let gm1 = g.add_int(&BigInt::from(-1));
        let o = orbit(FamilyKind::TanakaIto, &g, &gm1, 6).unwrap();
        assert_eq!(o.end, OrbitEnd::Cycle { entry: 0, period: 2 });
        assert_eq!(o.points.len(), 2);
        let o = orbit(FamilyKind::Gauss, &QuadraticNumber::one(), &q("7/10"), 5).unwrap();
        assert_eq!(o.values(), vec![q("7/10"), q("3/7"), q("1/3"), q("0")]);
        assert_eq!(o.end, OrbitEnd::Absorbed { at: 3 });
        assert!(o.points[2].at_discontinuity && !o.points[1].at_discontinuity);
        let o = orbit(FamilyKind::TanakaIto, &q("4/5"), &q("1/4"), 3).unwrap();
        assert_eq!(o.values(), vec![q("1/4"), q("0")]);
    }

    #[test]
    fn gauss_is_alpha_one() {
        let one = QuadraticNumber::one();
        let x = q("13/29");
        let a = orbit(FamilyKind::TanakaIto, &one, &x, 20).unwrap();
        let b = orbit(FamilyKind::Gauss, &one, &x, 20).unwrap();
        assert_eq!(a.points, b.points);
    }

    #[test]
    fn convergent_examples() {
        let c = convergents(&QuadraticNumber::one(), &q("7/10"), 10).unwrap();
        let qs: Vec<i64> = c.iter().map(|c| i64::try_from(&c.q).unwrap()).collect();
        assert_eq!(qs, vec![1, 1, 3, 10]);
        assert_eq!(c.last().unwrap().value(), q("7/10"));
        let g = QuadraticNumber::golden();
        let x = (-&g).add_int(&BigInt::one());
        for c in convergents(&g, &x, 10).unwrap() {
            assert!(within_convergent_bound(&x, &c));
        }
    }

    #[test]
    fn speed_bound_fails_at_first_step_with_unit_digit() {
        // a first digit of absolute value 1 gives q_1 = 1, and 1/q_1^2 = 1 > g
        let x = q("9/10");
        let c = convergents(&QuadraticNumber::one(), &x, 1).unwrap();
        assert_eq!(c[1].q, BigInt::one());
        assert!(!within_speed_bound(&c[1]));
        assert!(within_convergent_bound(&x, &c[1]));
    }

    #[test]
    fn csv_dump() {
        let o = orbit(FamilyKind::Gauss, &QuadraticNumber::one(), &q("7/10"), 5).unwrap();
        let mut buf = Vec::new();
        o.write_csv(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert!(text.starts_with("n,value,digit,float64\n0,7/10,,0.7\n1,3/7,1,"));
        assert_eq!(text.lines().count(), 5);
    }

    #[test]
    fn nested_fraction_agrees_with_recurrence() {
        let a = q("1/2");
        let x = q("-5/17");
        let c = convergents(&a, &x, 20).unwrap();
        let o = orbit(FamilyKind::TanakaIto, &a, &x, 20).unwrap();
        let digits: Vec<BigInt> = o.points.iter().skip(1).map(|p| p.digit.clone().unwrap()).collect();
        for (n, cp) in c.iter().enumerate().skip(1) {
            assert_eq!(nested_fraction(&digits[..n]).unwrap(), cp.value());
        }
        assert!(digits.iter().any(|d| d.is_negative()));
    }
}
