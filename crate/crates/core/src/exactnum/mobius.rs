use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::QuadraticNumber;
use crate::error::{Error, Result};

/// The linear fractional map `x -> (p x + q)/(r x + s)` of an integer matrix.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MobiusMap {
    pub p: BigInt,
    pub q: BigInt,
    pub r: BigInt,
    pub s: BigInt,
}

impl MobiusMap {
    pub fn new(
        p: impl Into<BigInt>,
        q: impl Into<BigInt>,
        r: impl Into<BigInt>,
        s: impl Into<BigInt>,
    ) -> Result<Self> {
        let m = MobiusMap {
            p: p.into(),
            q: q.into(),
            r: r.into(),
            s: s.into(),
        };
        if m.det().is_zero() {
            return Err(Error::SingularMap);
        }
        Ok(m)
    }

    pub fn identity() -> Self {
        MobiusMap {
            p: BigInt::one(),
            q: BigInt::zero(),
            r: BigInt::zero(),
            s: BigInt::one(),
        }
    }

    /// `f_a(x) = 1/(a + x)`, which prepends the digit `a` to a continued fraction.
    pub fn digit(a: impl Into<BigInt>) -> Self {
        MobiusMap {
            p: BigInt::zero(),
            q: BigInt::one(),
            r: BigInt::one(),
            s: a.into(),
        }
    }

    pub fn det(&self) -> BigInt {
        &self.p * &self.s - &self.q * &self.r
    }

    /// `self ∘ other`, the matrix product `self * other`.
    pub fn compose(&self, other: &MobiusMap) -> MobiusMap {
        MobiusMap {
            p: &self.p * &other.p + &self.q * &other.r,
            q: &self.p * &other.q + &self.q * &other.s,
            r: &self.r * &other.p + &self.s * &other.r,
            s: &self.r * &other.q + &self.s * &other.s,
        }
    }

    pub fn apply(&self, x: &QuadraticNumber) -> Result<QuadraticNumber> {
        let num = x.mul_int(&self.p).add_int(&self.q);
        let den = x.mul_int(&self.r).add_int(&self.s);
        if den.is_zero() {
            return Err(Error::PoleHit);
        }
        num.checked_div(&den)
    }

    /// The map `x -> 1/x - k` applied after `self`.
    pub fn then_reciprocal_shift(&self, k: &BigInt) -> MobiusMap {
        MobiusMap {
            p: &self.r - k * &self.p,
            q: &self.s - k * &self.q,
            r: self.p.clone(),
            s: self.q.clone(),
        }
    }

    /// The map `x -> 1/x` applied after `self`.
    pub fn then_reciprocal(&self) -> MobiusMap {
        self.then_reciprocal_shift(&BigInt::zero())
    }

    /// True when the map is `x -> x + k` for an integer `k`, returning `k`.
    pub fn as_translation(&self) -> Option<BigInt> {
        if !self.r.is_zero() || self.p != self.s || self.p.is_zero() {
            return None;
        }
        let (k, rem) = num_integer::Integer::div_rem(&self.q, &self.p);
        rem.is_zero().then_some(k)
    }

    /// Equality as maps, i.e. up to a common scalar factor.
    pub fn same_map(&self, other: &MobiusMap) -> bool {
        &self.p * &other.q == &self.q * &other.p
            && &self.p * &other.r == &self.r * &other.p
            && &self.p * &other.s == &self.s * &other.p
            && &self.q * &other.r == &self.r * &other.q
            && &self.q * &other.s == &self.s * &other.q
            && &self.r * &other.s == &self.s * &other.r
    }
}
