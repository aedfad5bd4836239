use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::{MobiusMap, QuadraticNumber};
use crate::error::{Error, Result};

const EXPAND_LIMIT: usize = 1_000_000;

/// A regular continued fraction `[0; a1, a2, ...]`, finite or eventually periodic.
///
/// Stored canonically: a finite expansion never ends in 1 (except `[0;1]`), a period is
/// primitive and the preperiod is as short as possible.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RcfExpansion {
    preperiod: Vec<BigUint>,
    period: Vec<BigUint>,
}

impl RcfExpansion {
    pub fn new(preperiod: Vec<BigUint>, period: Vec<BigUint>) -> Result<Self> {
        if let Some(at) = preperiod.iter().chain(&period).position(|a| a.is_zero()) {
            return Err(Error::InvalidExpansion(format!("digit {} is zero", at + 1)));
        }
        let mut e = RcfExpansion { preperiod, period };
        e.canonicalize();
        Ok(e)
    }

    pub fn finite<I, T>(digits: I) -> Result<Self>
    where
        I: IntoIterator<Item = T>,
        T: Into<BigUint>,
    {
        Self::new(digits.into_iter().map(Into::into).collect(), Vec::new())
    }

    pub fn periodic<I, J, T, U>(preperiod: I, period: J) -> Result<Self>
    where
        I: IntoIterator<Item = T>,
        J: IntoIterator<Item = U>,
        T: Into<BigUint>,
        U: Into<BigUint>,
    {
        Self::new(
            preperiod.into_iter().map(Into::into).collect(),
            period.into_iter().map(Into::into).collect(),
        )
    }

    fn canonicalize(&mut self) {
        if self.period.is_empty() {
            if self.preperiod.len() > 1 && self.preperiod.last().is_some_and(|a| a.is_one()) {
                self.preperiod.pop();
                *self.preperiod.last_mut().unwrap() += 1u32;
            }
            return;
        }
        let n = self.period.len();
        if let Some(p) = (1..n)
            .filter(|p| n % p == 0)
            .find(|&p| (p..n).all(|i| self.period[i] == self.period[i - p]))
        {
            self.period.truncate(p);
        }
        while !self.preperiod.is_empty() && self.preperiod.last() == self.period.last() {
            self.preperiod.pop();
            self.period.rotate_right(1);
        }
    }

    pub fn preperiod(&self) -> &[BigUint] {
        &self.preperiod
    }

    pub fn period(&self) -> &[BigUint] {
        &self.period
    }

    pub fn is_finite(&self) -> bool {
        self.period.is_empty()
    }

    /// The digit `a_k`, counting from `k = 1`; `None` past the end of a finite expansion.
    pub fn digit(&self, k: usize) -> Option<&BigUint> {
        let i = k.checked_sub(1)?;
        if i < self.preperiod.len() {
            return self.preperiod.get(i);
        }
        if self.period.is_empty() {
            return None;
        }
        let j = (i - self.preperiod.len()) % self.period.len();
        self.period.get(j)
    }

    /// The first `n` digits (fewer for a short finite expansion).
    pub fn prefix(&self, n: usize) -> Vec<BigUint> {
        (1..=n).map_while(|k| self.digit(k).cloned()).collect()
    }

    pub fn eval(&self) -> QuadraticNumber {
        let pre = word_map(&self.preperiod);
        if self.period.is_empty() {
            return pre.apply(&QuadraticNumber::zero()).expect("digits are positive");
        }
        // fixed point of (A x + B)/(C x + D): C x^2 + (D - A) x - B = 0
        let m = word_map(&self.period);
        let disc = (&m.s - &m.p) * (&m.s - &m.p) + BigInt::from(4) * &m.q * &m.r;
        let root = QuadraticNumber::new(&m.p - &m.s, BigInt::one(), BigInt::from(2) * &m.r, disc)
            .expect("period map has r > 0");
        pre.apply(&root).expect("digits are positive")
    }
}

/// `f_{a1} ∘ ... ∘ f_{ak}`.
pub fn word_map(digits: &[BigUint]) -> MobiusMap {
    digits
        .iter()
        .fold(MobiusMap::identity(), |acc, a| acc.compose(&MobiusMap::digit(BigInt::from(a.clone()))))
}

/// Regular continued fraction of `x` in `[0, 1]` by exact Gauss-map iteration.
pub fn rcf_expand(x: &QuadraticNumber) -> Result<RcfExpansion> {
    if x.signum().is_lt() || x > &QuadraticNumber::one() {
        return Err(Error::Domain(format!("{x} is outside [0, 1]")));
    }
    let mut seen: HashMap<QuadraticNumber, usize> = HashMap::new();
    let mut digits = Vec::new();
    let mut z = x.clone();
    while !z.is_zero() {
        if let Some(&start) = seen.get(&z) {
            let period = digits.split_off(start);
            return RcfExpansion::new(digits, period);
        }
        if digits.len() >= EXPAND_LIMIT {
            return Err(Error::Internal(format!("no period found for {x}")));
        }
        seen.insert(z.clone(), digits.len());
        let inv = z.recip()?;
        let k = inv.floor();
        z = inv.add_int(&-&k);
        debug_assert!(k.is_positive());
        digits.push(k.magnitude().clone());
    }
    RcfExpansion::new(digits, Vec::new())
}

pub fn rcf_eval(e: &RcfExpansion) -> QuadraticNumber {
    e.eval()
}

fn join(digits: &[BigUint]) -> String {
    digits.iter().map(|a| a.to_string()).collect::<Vec<_>>().join(",")
}

impl fmt::Display for RcfExpansion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[0;{}", join(&self.preperiod))?;
        if !self.period.is_empty() {
            if !self.preperiod.is_empty() {
                write!(f, ",")?;
            }
            write!(f, "({})", join(&self.period))?;
        }
        write!(f, "]")
    }
}

impl fmt::Debug for RcfExpansion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

fn parse_digits(s: &str, whole: &str) -> Result<Vec<BigUint>> {
    if s.is_empty() {
        return Ok(Vec::new());
    }
    s.split(',')
        .map(|d| d.parse::<BigUint>().map_err(|_| Error::Parse(whole.to_string())))
        .collect()
}

impl FromStr for RcfExpansion {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let bad = || Error::Parse(s.to_string());
        let body = t.strip_prefix("[0").and_then(|r| r.strip_suffix(']')).ok_or_else(bad)?;
        let body = match body.strip_prefix(';') {
            Some(rest) => rest,
            None if body.is_empty() => "",
            None => return Err(bad()),
        };
        let (pre, per) = match body.find('(') {
            Some(open) => {
                let inner = body[open + 1..].strip_suffix(')').ok_or_else(bad)?;
                if inner.is_empty() || inner.contains(['(', ')']) {
                    return Err(bad());
                }
                let head = body[..open].strip_suffix(',').unwrap_or(&body[..open]);
                (head, inner)
            }
            None => (body, ""),
        };
        if pre.contains(')') {
            return Err(bad());
        }
        RcfExpansion::new(parse_digits(pre, s)?, parse_digits(per, s)?)
    }
}

impl Serialize for RcfExpansion {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for RcfExpansion {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}
