use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;
use std::sync::LazyLock;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use regex::Regex;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::Rational;
use crate::error::{Error, Result};

/// An exact element `(a + b*sqrt(d))/c` of the rationals or of a real quadratic field.
///
/// The representation is canonical: `c > 0`, `gcd(a, b, c) = 1`, and either `d` is
/// squarefree and at least 2, or `b = d = 0`. Equal values therefore have equal fields,
/// so the derived `Eq` and `Hash` are value semantics.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct QuadraticNumber {
    a: BigInt,
    b: BigInt,
    c: BigInt,
    d: BigInt,
}

impl QuadraticNumber {
    pub fn zero() -> Self {
        Self::integer(0)
    }

    pub fn one() -> Self {
        Self::integer(1)
    }

    pub fn integer(n: impl Into<BigInt>) -> Self {
        QuadraticNumber {
            a: n.into(),
            b: BigInt::zero(),
            c: BigInt::one(),
            d: BigInt::zero(),
        }
    }

    /// The rational `p/q`.
    pub fn ratio(p: impl Into<BigInt>, q: impl Into<BigInt>) -> Result<Self> {
        let q = q.into();
        if q.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::normalized(p.into(), BigInt::zero(), q, BigInt::zero()))
    }

    /// `(a + b*sqrt(d))/c` for any `d >= 0`; square factors of `d` are pulled out.
    pub fn new(
        a: impl Into<BigInt>,
        b: impl Into<BigInt>,
        c: impl Into<BigInt>,
        d: impl Into<BigInt>,
    ) -> Result<Self> {
        let (a, b, c, d) = (a.into(), b.into(), c.into(), d.into());
        if c.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if d.is_negative() {
            return Err(Error::Domain(format!("negative radicand {d}")));
        }
        if b.is_zero() || d.is_zero() {
            return Self::ratio(a, c);
        }
        let (s, core) = square_split(d.magnitude());
        let b = b * BigInt::from(s);
        if core.is_one() {
            return Self::ratio(a + b, c);
        }
        Ok(Self::normalized(a, b, c, BigInt::from(core)))
    }

    pub fn sqrt(n: impl Into<BigInt>) -> Result<Self> {
        Self::new(0, 1, 1, n)
    }

    /// The golden mean `g = (sqrt(5) - 1)/2`.
    pub fn golden() -> Self {
        Self::normalized(BigInt::from(-1), BigInt::one(), BigInt::from(2), BigInt::from(5))
    }

    fn normalized(mut a: BigInt, mut b: BigInt, mut c: BigInt, mut d: BigInt) -> Self {
        if b.is_zero() {
            d = BigInt::zero();
        }
        if c.is_negative() {
            a = -a;
            b = -b;
            c = -c;
        }
        let g = a.gcd(&b).gcd(&c);
        if !g.is_one() {
            a /= &g;
            b /= &g;
            c /= &g;
        }
        QuadraticNumber { a, b, c, d }
    }

    pub fn a(&self) -> &BigInt {
        &self.a
    }

    pub fn b(&self) -> &BigInt {
        &self.b
    }

    pub fn c(&self) -> &BigInt {
        &self.c
    }

    /// The radicand; zero for rationals.
    pub fn d(&self) -> &BigInt {
        &self.d
    }

    pub fn is_rational(&self) -> bool {
        self.d.is_zero()
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn is_integer(&self) -> bool {
        self.is_rational() && self.c.is_one()
    }

    pub fn as_rational(&self) -> Option<Rational> {
        self.is_rational()
            .then(|| Rational::new(self.a.clone(), self.c.clone()).expect("c > 0"))
    }

    /// Largest bit length among the stored integers.
    pub fn height_bits(&self) -> u64 {
        self.a.bits().max(self.b.bits()).max(self.c.bits())
    }

    pub fn same_field(&self, other: &Self) -> bool {
        self.is_rational() || other.is_rational() || self.d == other.d
    }

    fn common_radicand(&self, other: &Self) -> Result<BigInt> {
        if self.is_rational() {
            Ok(other.d.clone())
        } else if other.is_rational() || self.d == other.d {
            Ok(self.d.clone())
        } else {
            Err(Error::MixedField(self.d.to_string(), other.d.to_string()))
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        let d = self.common_radicand(other)?;
        if self.c == other.c {
            return Ok(Self::normalized(
                &self.a + &other.a,
                &self.b + &other.b,
                self.c.clone(),
                d,
            ));
        }
        Ok(Self::normalized(
            &self.a * &other.c + &other.a * &self.c,
            &self.b * &other.c + &other.b * &self.c,
            &self.c * &other.c,
            d,
        ))
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.checked_add(&-other)
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        let d = self.common_radicand(other)?;
        let a = &self.a * &other.a + &self.b * &other.b * &d;
        let b = &self.a * &other.b + &other.a * &self.b;
        Ok(Self::normalized(a, b, &self.c * &other.c, d))
    }

    pub fn recip(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if self.is_rational() {
            return Ok(Self::normalized(
                self.c.clone(),
                BigInt::zero(),
                self.a.clone(),
                BigInt::zero(),
            ));
        }
        let norm = &self.a * &self.a - &self.b * &self.b * &self.d;
        Ok(Self::normalized(
            &self.c * &self.a,
            -(&self.c * &self.b),
            norm,
            self.d.clone(),
        ))
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self> {
        self.checked_mul(&other.recip()?)
    }

    pub fn add_int(&self, k: &BigInt) -> Self {
        Self::normalized(&self.a + k * &self.c, self.b.clone(), self.c.clone(), self.d.clone())
    }

    pub fn mul_int(&self, k: &BigInt) -> Self {
        Self::normalized(&self.a * k, &self.b * k, self.c.clone(), self.d.clone())
    }

    pub fn abs(&self) -> Self {
        if self.signum() == Ordering::Less {
            -self
        } else {
            self.clone()
        }
    }

    /// Sign of the value as an ordering against zero.
    pub fn signum(&self) -> Ordering {
        sign_of(&self.a, &self.b, &self.d)
    }

    /// Exact comparison, also across different quadratic fields.
    pub fn cmp_exact(&self, other: &Self) -> Ordering {
        if self.same_field(other) {
            return self.checked_sub(other).expect("same field").signum();
        }
        // sign of c2*(a1 + b1 sqrt d1) - c1*(a2 + b2 sqrt d2) = u + t sqrt d2
        let r = &other.c * &self.a - &self.c * &other.a;
        let s = &other.c * &self.b;
        let t = -(&self.c * &other.b);
        let su = sign_of(&r, &s, &self.d);
        let sv = sign_of(&BigInt::zero(), &t, &other.d);
        if su == sv || sv == Ordering::Equal {
            return su;
        }
        if su == Ordering::Equal {
            return sv;
        }
        // opposite signs: compare u^2 with t^2 d2
        let rat = &r * &r + &s * &s * &self.d - &t * &t * &other.d;
        let irr = BigInt::from(2) * &r * &s;
        match sign_of(&rat, &irr, &self.d) {
            Ordering::Less => sv,
            _ => su,
        }
    }

    pub fn floor(&self) -> BigInt {
        let t = floor_b_sqrt_d(&self.b, &self.d);
        (&self.a + t).div_floor(&self.c)
    }

    pub fn ceil(&self) -> BigInt {
        -(-self).floor()
    }

    /// `floor(self * 2^k)`.
    pub fn floor_scaled(&self, k: u32) -> BigInt {
        let t = floor_b_sqrt_d(&(&self.b << k), &self.d);
        ((&self.a << k) + t).div_floor(&self.c)
    }

    /// `floor(u + v)` for operands from possibly different fields.
    pub fn floor_of_sum(u: &Self, v: &Self) -> BigInt {
        if u.same_field(v) {
            return u.checked_add(v).expect("same field").floor();
        }
        let guess = (u.to_f64() + v.to_f64()).floor();
        let mut k = BigInt::from(guess as i64);
        // k <= u + v  <=>  k - v <= u
        let fits = |k: &BigInt| (-v).add_int(k).cmp_exact(u) != Ordering::Greater;
        while !fits(&k) {
            k -= 1;
        }
        loop {
            let next = &k + 1;
            if fits(&next) {
                k = next;
            } else {
                break;
            }
        }
        k
    }

    pub fn to_f64(&self) -> f64 {
        let small = |x: &BigInt| x.bits() <= 52;
        if self.is_rational() && small(&self.a) && small(&self.c) {
            return self.a.to_f64().unwrap() / self.c.to_f64().unwrap();
        }
        if self.is_zero() {
            return 0.0;
        }
        // |value| >= 1/(c (|a| + |b| sqrt d)), so this many bits keeps ~60 significant ones.
        let spread = self.a.bits().max(self.b.bits() + self.d.bits() / 2 + 1) + 1;
        let k = 64 + self.c.bits() + spread;
        let k = u32::try_from(k).unwrap_or(u32::MAX / 2);
        let scaled = self.floor_scaled(k).to_f64().unwrap_or(f64::NAN);
        scale_by_pow2(scaled, -(k as i64))
    }
}

fn scale_by_pow2(mut x: f64, mut e: i64) -> f64 {
    while e < -1000 {
        x *= 2f64.powi(-1000);
        e += 1000;
    }
    while e > 1000 {
        x *= 2f64.powi(1000);
        e -= 1000;
    }
    x * 2f64.powi(e as i32)
}

/// Sign of `a + b*sqrt(d)` with `d` squarefree (or `b = 0`).
fn sign_of(a: &BigInt, b: &BigInt, d: &BigInt) -> Ordering {
    let sa = a.sign();
    let sb = if d.is_zero() { Sign::NoSign } else { b.sign() };
    let ord = |s: Sign| match s {
        Sign::Minus => Ordering::Less,
        Sign::NoSign => Ordering::Equal,
        Sign::Plus => Ordering::Greater,
    };
    if sb == Sign::NoSign {
        return ord(sa);
    }
    if sa == Sign::NoSign || sa == sb {
        return ord(sb);
    }
    let lhs = a * a;
    let rhs = b * b * d;
    if lhs > rhs {
        ord(sa)
    } else {
        ord(sb)
    }
}

/// `floor(b*sqrt(d))` for squarefree `d >= 2` (or `d = 0`).
fn floor_b_sqrt_d(b: &BigInt, d: &BigInt) -> BigInt {
    if d.is_zero() || b.is_zero() {
        return BigInt::zero();
    }
    let root = (b * b * d).sqrt();
    if b.is_positive() {
        root
    } else {
        -root - 1
    }
}

/// Splits `n = s^2 * core` with `core` squarefree.
fn square_split(n: &BigUint) -> (BigUint, BigUint) {
    let factors: BTreeMap<BigUint, usize> = match n.to_u128() {
        Some(small) => num_prime::nt_funcs::factorize128(small)
            .into_iter()
            .map(|(p, e)| (BigUint::from(p), e))
            .collect(),
        None => num_prime::nt_funcs::factorize(n.clone()),
    };
    let mut s = BigUint::one();
    let mut core = BigUint::one();
    for (p, e) in factors {
        s *= p.pow((e / 2) as u32);
        if e % 2 == 1 {
            core *= p;
        }
    }
    (s, core)
}

impl PartialOrd for QuadraticNumber {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for QuadraticNumber {
    fn cmp(&self, other: &Self) -> Ordering {
        self.cmp_exact(other)
    }
}

impl From<i64> for QuadraticNumber {
    fn from(n: i64) -> Self {
        Self::integer(n)
    }
}

impl From<BigInt> for QuadraticNumber {
    fn from(n: BigInt) -> Self {
        Self::integer(n)
    }
}

impl From<&Rational> for QuadraticNumber {
    fn from(r: &Rational) -> Self {
        Self::normalized(r.num().clone(), BigInt::zero(), r.den().clone(), BigInt::zero())
    }
}

impl From<Rational> for QuadraticNumber {
    fn from(r: Rational) -> Self {
        Self::from(&r)
    }
}

impl Neg for &QuadraticNumber {
    type Output = QuadraticNumber;
    fn neg(self) -> QuadraticNumber {
        QuadraticNumber {
            a: -&self.a,
            b: -&self.b,
            c: self.c.clone(),
            d: self.d.clone(),
        }
    }
}

impl Neg for QuadraticNumber {
    type Output = QuadraticNumber;
    fn neg(self) -> QuadraticNumber {
        -&self
    }
}

// Operator forms panic on mixed fields or division by zero; use the checked methods
// when operands are not known to be compatible.
macro_rules! binop {
    ($tr:ident, $method:ident, $checked:ident) => {
        impl $tr<&QuadraticNumber> for &QuadraticNumber {
            type Output = QuadraticNumber;
            fn $method(self, rhs: &QuadraticNumber) -> QuadraticNumber {
                self.$checked(rhs)
                    .unwrap_or_else(|e| panic!("{} {}: {e}", self, rhs))
            }
        }
        impl $tr<QuadraticNumber> for QuadraticNumber {
            type Output = QuadraticNumber;
            fn $method(self, rhs: QuadraticNumber) -> QuadraticNumber {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&QuadraticNumber> for QuadraticNumber {
            type Output = QuadraticNumber;
            fn $method(self, rhs: &QuadraticNumber) -> QuadraticNumber {
                (&self).$method(rhs)
            }
        }
        impl $tr<QuadraticNumber> for &QuadraticNumber {
            type Output = QuadraticNumber;
            fn $method(self, rhs: QuadraticNumber) -> QuadraticNumber {
                self.$method(&rhs)
            }
        }
    };
}

binop!(Add, add, checked_add);
binop!(Sub, sub, checked_sub);
binop!(Mul, mul, checked_mul);
binop!(Div, div, checked_div);

impl fmt::Display for QuadraticNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_rational() {
            return write!(f, "{}/{}", self.a, self.c);
        }
        let sign = if self.b.is_negative() { '-' } else { '+' };
        write!(
            f,
            "({}{}{}*sqrt({}))/{}",
            self.a,
            sign,
            self.b.magnitude(),
            self.d,
            self.c
        )
    }
}

impl fmt::Debug for QuadraticNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

static RATIONAL_RE: LazyLock<Regex> =
    LazyLock::new(|| Regex::new(r"^([+-]?\d+)(?:/([+-]?\d+))?$").unwrap());
static QUADRATIC_RE: LazyLock<Regex> = LazyLock::new(|| {
    Regex::new(r"^\(([+-]?\d+)([+-])(\d*)\*?sqrt\((\d+)\)\)(?:/([+-]?\d+))?$").unwrap()
});
static SURD_RE: LazyLock<Regex> =
    LazyLock::new(|| Regex::new(r"^([+-]?\d*)\*?sqrt\((\d+)\)$").unwrap());

fn big(s: &str) -> Result<BigInt> {
    s.parse().map_err(|_| Error::Parse(s.to_string()))
}

impl FromStr for QuadraticNumber {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if let Some(m) = RATIONAL_RE.captures(&t) {
            let den = m.get(2).map_or(Ok(BigInt::one()), |d| big(d.as_str()))?;
            return Self::ratio(big(&m[1])?, den);
        }
        if let Some(m) = QUADRATIC_RE.captures(&t) {
            let mut b = if m[3].is_empty() { BigInt::one() } else { big(&m[3])? };
            if &m[2] == "-" {
                b = -b;
            }
            let c = m.get(5).map_or(Ok(BigInt::one()), |c| big(c.as_str()))?;
            return Self::new(big(&m[1])?, b, c, big(&m[4])?);
        }
        if let Some(m) = SURD_RE.captures(&t) {
            let b = match &m[1] {
                "" | "+" => BigInt::one(),
                "-" => -BigInt::one(),
                other => big(other)?,
            };
            return Self::new(0, b, 1, big(&m[2])?);
        }
        Err(Error::Parse(s.to_string()))
    }
}

impl Serialize for QuadraticNumber {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for QuadraticNumber {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}
