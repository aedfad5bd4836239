use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::cfdyn::ti_digit;
use crate::error::{Error, Result};
use crate::exactnum::{MobiusMap, QuadraticNumber};

/// A parameter interval on which the digit sequences of both orbits up to matching are
/// constant, together with the matching exponents found symbolically.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cylinder {
    pub left: QuadraticNumber,
    pub right: QuadraticNumber,
    pub exp_m: usize,
    pub exp_n: usize,
}

/// One orbit tracked as a linear fractional function of the parameter `t`.
struct Branch {
    maps: Vec<MobiusMap>,
    values: Vec<QuadraticNumber>,
    digits: Vec<BigInt>,
}

impl Branch {
    fn new(map: MobiusMap, value: QuadraticNumber) -> Self {
        Branch {
            maps: vec![map],
            values: vec![value],
            digits: Vec::new(),
        }
    }

    fn advance(&mut self, alpha: &QuadraticNumber) -> Result<()> {
        let x = self.values.last().unwrap();
        if x.is_zero() {
            return Err(Error::Domain(format!(
                "orbit of {alpha} reaches 0 before matching; no open cylinder"
            )));
        }
        let d = ti_digit(alpha, x)?;
        let next_value = x.recip()?.add_int(&-&d);
        // T(x) = 1/x - d, and the parameter enters again only through d, which is fixed
        // on the cylinder.
        let next_map = self.maps.last().unwrap().then_reciprocal_shift(&d);
        self.maps.push(next_map);
        self.values.push(next_value);
        self.digits.push(d);
        Ok(())
    }
}

/// `1/f - 1/h` as an integer constant, if it is one identically.
fn reciprocal_gap(f: &MobiusMap, h: &MobiusMap) -> Option<BigInt> {
    // 1/f = (r t + s)/(p t + q)
    let (p1, q1, r1, s1) = (&f.p, &f.q, &f.r, &f.s);
    let (p2, q2, r2, s2) = (&h.p, &h.q, &h.r, &h.s);
    let num = [
        r1 * p2 - r2 * p1,
        r1 * q2 + s1 * p2 - r2 * q1 - s2 * p1,
        s1 * q2 - s2 * q1,
    ];
    let den = [p1 * p2, p1 * q2 + q1 * p2, q1 * q2];
    let (i, pivot) = den.iter().enumerate().find(|(_, d)| !d.is_zero())?;
    let (k, rem) = num[i].div_rem(pivot);
    if !rem.is_zero() {
        return None;
    }
    (0..3).all(|j| num[j] == &k * &den[j]).then_some(k)
}

/// Parameter values where `floor(1/F(t) + 1 - t)` can change: zeros of `F` and the
/// solutions of `1/F(t) + 1 - t = d` and `= d + 1`.
fn critical_points(f: &MobiusMap, d: &BigInt) -> Result<Vec<QuadraticNumber>> {
    // F = (a t + b)/(c t + e); (c t + e) + (1 - t - s)(a t + b) = 0 with s in {d, d+1}
    let (a, b, c, e) = (&f.p, &f.q, &f.r, &f.s);
    let mut out = Vec::new();
    if !a.is_zero() {
        out.push(QuadraticNumber::ratio(-b, a.clone())?);
    }
    for s in [d.clone(), d + 1] {
        let one_minus_s = BigInt::one() - &s;
        let qa = -a;
        let qb = c + a * &one_minus_s - b;
        let qc = e + b * &one_minus_s;
        if qa.is_zero() {
            if !qb.is_zero() {
                out.push(QuadraticNumber::ratio(-qc, qb)?);
            }
            continue;
        }
        let disc = &qb * &qb - BigInt::from(4) * &qa * &qc;
        if disc.is_negative() {
            continue;
        }
        let two_a = BigInt::from(2) * &qa;
        out.push(QuadraticNumber::new(-&qb, 1, two_a.clone(), disc.clone())?);
        out.push(QuadraticNumber::new(-&qb, -1, two_a, disc)?);
    }
    Ok(out)
}

/// Finds matching exponents for `alpha` by tracking both orbits as functions of the
/// parameter, then returns the cylinder of parameters sharing the digits used.
///
/// Matching at `(i, j)` is detected either as identical maps `X_i = Y_j`, or as
/// `1/X_i - 1/Y_j` being an integer constant, which forces `X_{i+1} = Y_{j+1}`.
pub fn matching_cylinder(alpha: &QuadraticNumber, n_max: usize) -> Result<Cylinder> {
    if alpha.signum().is_le() || alpha >= &QuadraticNumber::one() {
        return Err(Error::Domain(format!("{alpha} is outside (0, 1)")));
    }
    let one = BigInt::one();
    let mut xb = Branch::new(MobiusMap::new(1, -1, 0, 1)?, alpha.add_int(&-&one));
    let mut yb = Branch::new(MobiusMap::identity(), alpha.clone());
    for round in 0..=n_max {
        let mut found: Option<(usize, usize)> = None;
        let mut consider = |m: usize, n: usize| {
            if found.is_none_or(|(fm, fn_)| m + n < fm + fn_) {
                found = Some((m, n));
            }
        };
        for i in 0..=round {
            for j in 0..=round {
                if i.max(j) != round {
                    continue;
                }
                let (f, h) = (&xb.maps[i], &yb.maps[j]);
                if f.same_map(h) {
                    consider(i, j);
                } else if reciprocal_gap(f, h).is_some() {
                    // the digit map commutes with integer shifts, so the next maps agree
                    consider(i + 1, j + 1);
                }
            }
        }
        if let Some((m, n)) = found {
            return cylinder_for(alpha, &xb, &yb, m, n);
        }
        xb.advance(alpha)?;
        yb.advance(alpha)?;
    }
    Err(Error::Undecided(n_max))
}

fn cylinder_for(
    alpha: &QuadraticNumber,
    xb: &Branch,
    yb: &Branch,
    exp_m: usize,
    exp_n: usize,
) -> Result<Cylinder> {
    let mut left = QuadraticNumber::zero();
    let mut right = QuadraticNumber::one();
    let used = |b: &Branch, e: usize| {
        let k = e.saturating_sub(1).min(b.digits.len());
        b.maps[..k].iter().cloned().zip(b.digits[..k].iter().cloned()).collect::<Vec<_>>()
    };
    for (f, d) in used(xb, exp_m).into_iter().chain(used(yb, exp_n)) {
        for t in critical_points(&f, &d)? {
            match t.cmp(alpha) {
                std::cmp::Ordering::Less if t > left => left = t,
                std::cmp::Ordering::Greater if t < right => right = t,
                std::cmp::Ordering::Equal => {
                    return Err(Error::NotInMatchingInterval(alpha.to_string()));
                }
                _ => {}
            }
        }
    }
    Ok(Cylinder {
        left,
        right,
        exp_m,
        exp_n,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(s: &str) -> QuadraticNumber {
        s.parse().unwrap()
    }

    #[test]
    fn central_cylinders() {
        let s2 = QuadraticNumber::sqrt(2).unwrap();
        let g = QuadraticNumber::golden();
        let one = BigInt::one();
        let lower = s2.add_int(&-&one);
        let upper = (-&s2).add_int(&BigInt::from(2));
        let cases = [
            ("(0+1*sqrt(17))/10", (-&g).add_int(&one), lower.clone(), (3, 3)),
            ("(0+1*sqrt(3))/3", lower, upper.clone(), (2, 2)),
            ("(0+1*sqrt(37))/10", upper, g, (3, 3)),
        ];
        for (s, l, r, e) in cases {
            let c = matching_cylinder(&q(s), 100).unwrap();
            assert_eq!((&c.left, &c.right), (&l, &r), "{s}");
            assert_eq!((c.exp_m, c.exp_n), e, "{s}");
        }
    }

    #[test]
    fn agrees_with_formula_at_seven_tenths() {
        let c = matching_cylinder(&q("7/10"), 100).unwrap();
        assert_eq!(c.right, q("(0+1*sqrt(2))/2"));
        assert_eq!(c.left, q("(5-1*sqrt(13))/2"));
        assert_eq!((c.exp_m, c.exp_n), (3, 3));
    }
}
