//! Dual-mode scalar arithmetic.
//!
//! Quantities built from sums of products of probabilities (logical entropies,
//! variances, quadratic divergences) are exact when the inputs are rational, so
//! the whole crate computes on [`Scalar`]: either an arbitrary-precision
//! rational or an `f64`. Arithmetic promotes to float as soon as a float
//! operand appears; it never silently rounds an exact value.
//!
//! Log-based quantities (Shannon entropy, KL divergence) are always `f64`.
//!
//! [`SqrtRational`] covers the one place plain rationals are not enough:
//! density-matrix entries of the form `±√(p_j·p_k)`. Squares, and products of
//! entries sharing a radicand, come back out as exact rationals.

use num::bigint::{BigInt, Sign};
use num::{BigRational, BigUint, One, Signed, ToPrimitive, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use crate::{Error, Result};

/// Logarithm base for Shannon-type quantities.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum LogBase {
    /// Base 2: entropies in bits.
    #[default]
    Two,
    /// Base e: entropies in nats.
    E,
}

impl LogBase {
    /// log of `x` in this base. `x` must be positive.
    pub fn log(self, x: f64) -> f64 {
        match self {
            LogBase::Two => x.log2(),
            LogBase::E => x.ln(),
        }
    }
}

/// A number that is either an exact rational or a float.
#[derive(Debug, Clone)]
pub enum Scalar {
    Exact(BigRational),
    Float(f64),
}

/// Exact rational from an integer pair. Panics if `den == 0`.
pub fn ratio(num: i64, den: i64) -> Scalar {
    assert!(den != 0, "zero denominator");
    Scalar::Exact(BigRational::new(BigInt::from(num), BigInt::from(den)))
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar::Exact(BigRational::zero())
    }

    pub fn one() -> Self {
        Scalar::Exact(BigRational::one())
    }

    pub fn from_int(n: i64) -> Self {
        Scalar::Exact(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, Scalar::Exact(_))
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Exact(r) => r.is_zero(),
            Scalar::Float(f) => *f == 0.0,
        }
    }

    pub fn is_negative(&self) -> bool {
        match self {
            Scalar::Exact(r) => r.is_negative(),
            Scalar::Float(f) => *f < 0.0,
        }
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            Scalar::Exact(r) => rational_to_f64(r),
            Scalar::Float(f) => *f,
        }
    }

    /// The exact rational value, if this scalar is exact.
    pub fn as_exact(&self) -> Option<&BigRational> {
        match self {
            Scalar::Exact(r) => Some(r),
            Scalar::Float(_) => None,
        }
    }

    pub fn squared(&self) -> Scalar {
        self.clone() * self.clone()
    }

    /// Reinterpret in float mode.
    pub fn demote(&self) -> Scalar {
        Scalar::Float(self.to_f64())
    }

    /// Parse from text. `exact` accepts integers (`"5"`), fractions
    /// (`"5/17"`), and finite decimals (`"4.5"`, kept exact); float mode
    /// accepts anything `f64` parses.
    pub fn parse(text: &str, exact: bool) -> Result<Scalar> {
        let s = text.trim();
        if !exact {
            let f: f64 = s
                .parse()
                .map_err(|_| Error::Parse(format!("not a number: {s:?}")))?;
            return Ok(Scalar::Float(f));
        }
        if let Some((n, d)) = s.split_once('/') {
            let n: BigInt = n
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("bad numerator in {s:?}")))?;
            let d: BigInt = d
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("bad denominator in {s:?}")))?;
            if d.is_zero() {
                return Err(Error::Parse(format!("zero denominator in {s:?}")));
            }
            return Ok(Scalar::Exact(BigRational::new(n, d)));
        }
        if let Some((whole, frac)) = s.split_once('.') {
            let sign = if whole.trim_start().starts_with('-') { -1 } else { 1 };
            let whole: BigInt = if whole.is_empty() || whole == "-" {
                BigInt::zero()
            } else {
                whole
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad decimal {s:?}")))?
            };
            if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
                return Err(Error::Parse(format!("bad decimal {s:?}")));
            }
            let digits: BigInt = frac
                .parse()
                .map_err(|_| Error::Parse(format!("bad decimal {s:?}")))?;
            let den = BigInt::from(10u32).pow(frac.len() as u32);
            let value = BigRational::from_integer(whole)
                + BigRational::new(digits, den) * BigRational::from_integer(BigInt::from(sign));
            return Ok(Scalar::Exact(value));
        }
        let n: BigInt = s
            .parse()
            .map_err(|_| Error::Parse(format!("not an integer or fraction: {s:?}")))?;
        Ok(Scalar::Exact(BigRational::from_integer(n)))
    }
}

/// Lossless until ~2^53, then rounds like any float conversion.
pub(crate) fn rational_to_f64(r: &BigRational) -> f64 {
    r.to_f64().unwrap_or_else(|| {
        // Out-of-range BigRational: fall back to the ratio of parts.
        let n = r.numer().to_f64().unwrap_or(f64::MAX);
        let d = r.denom().to_f64().unwrap_or(f64::MAX);
        n / d
    })
}

macro_rules! scalar_binop {
    ($trait:ident, $method:ident) => {
        impl $trait for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                match (self, rhs) {
                    (Scalar::Exact(a), Scalar::Exact(b)) => Scalar::Exact(a.$method(b)),
                    (a, b) => Scalar::Float(a.to_f64().$method(b.to_f64())),
                }
            }
        }
        impl $trait for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                self.clone().$method(rhs.clone())
            }
        }
    };
}

scalar_binop!(Add, add);
scalar_binop!(Sub, sub);
scalar_binop!(Mul, mul);

impl Div for Scalar {
    type Output = Scalar;
    fn div(self, rhs: Scalar) -> Scalar {
        assert!(!rhs.is_zero(), "scalar division by zero");
        match (self, rhs) {
            (Scalar::Exact(a), Scalar::Exact(b)) => Scalar::Exact(a / b),
            (a, b) => Scalar::Float(a.to_f64() / b.to_f64()),
        }
    }
}

impl Div for &Scalar {
    type Output = Scalar;
    fn div(self, rhs: &Scalar) -> Scalar {
        self.clone() / rhs.clone()
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Exact(r) => Scalar::Exact(-r),
            Scalar::Float(f) => Scalar::Float(-f),
        }
    }
}

impl std::iter::Sum for Scalar {
    fn sum<I: Iterator<Item = Scalar>>(iter: I) -> Scalar {
        iter.fold(Scalar::zero(), |acc, x| acc + x)
    }
}

impl PartialEq for Scalar {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (Scalar::Exact(a), Scalar::Exact(b)) => a == b,
            (a, b) => a.to_f64() == b.to_f64(),
        }
    }
}

impl PartialOrd for Scalar {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        match (self, other) {
            (Scalar::Exact(a), Scalar::Exact(b)) => a.partial_cmp(b),
            (a, b) => a.to_f64().partial_cmp(&b.to_f64()),
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Exact(r) => {
                if r.denom().is_one() {
                    write!(f, "{}", r.numer())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
            Scalar::Float(x) => write!(f, "{x}"),
        }
    }
}

/// Exact scalars serialize as `[num, den]` (numbers when they fit in an `i64`,
/// decimal strings otherwise); floats as plain JSON numbers.
impl Serialize for Scalar {
    fn serialize<S: Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Scalar::Float(f) => ser.serialize_f64(*f),
            Scalar::Exact(r) => {
                let pair = (bigint_json(r.numer()), bigint_json(r.denom()));
                pair.serialize(ser)
            }
        }
    }
}

pub(crate) fn bigint_json(n: &BigInt) -> serde_json::Value {
    match n.to_i64() {
        Some(v) => serde_json::Value::from(v),
        None => serde_json::Value::from(n.to_string()),
    }
}

impl<'de> Deserialize<'de> for Scalar {
    fn deserialize<D: Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        let value = serde_json::Value::deserialize(de)?;
        scalar_from_json(&value).map_err(D::Error::custom)
    }
}

pub(crate) fn scalar_from_json(value: &serde_json::Value) -> Result<Scalar> {
    use serde_json::Value;
    match value {
        Value::Number(n) => {
            if let Some(i) = n.as_i64() {
                Ok(Scalar::from_int(i))
            } else {
                Ok(Scalar::Float(n.as_f64().ok_or_else(|| {
                    Error::Parse(format!("unrepresentable number {n}"))
                })?))
            }
        }
        Value::Array(items) if items.len() == 2 => {
            let part = |v: &Value| -> Result<BigInt> {
                match v {
                    Value::Number(n) => n
                        .as_i64()
                        .map(BigInt::from)
                        .ok_or_else(|| Error::Parse(format!("non-integer in pair: {n}"))),
                    Value::String(s) => s
                        .parse()
                        .map_err(|_| Error::Parse(format!("bad integer string {s:?}"))),
                    other => Err(Error::Parse(format!("bad rational component: {other}"))),
                }
            };
            let num = part(&items[0])?;
            let den = part(&items[1])?;
            if den.is_zero() {
                return Err(Error::Parse("zero denominator".into()));
            }
            Ok(Scalar::Exact(BigRational::new(num, den)))
        }
        other => Err(Error::Parse(format!(
            "expected number or [num, den] pair, got {other}"
        ))),
    }
}

/// A real number of the form `sign · √radicand` with `radicand` a non-negative
/// rational. The map `value ↔ (sign, radicand)` is one-to-one, so structural
/// equality is value equality.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SqrtRational {
    sign: i8,
    radicand: BigRational,
}

impl SqrtRational {
    pub fn zero() -> Self {
        SqrtRational {
            sign: 0,
            radicand: BigRational::zero(),
        }
    }

    /// `√q` for `q ≥ 0`. Panics on negative input.
    pub fn sqrt_of(q: BigRational) -> Self {
        assert!(!q.is_negative(), "negative radicand");
        if q.is_zero() {
            return Self::zero();
        }
        SqrtRational { sign: 1, radicand: q }
    }

    /// Embed a rational `r` as `sign(r)·√(r²)`.
    pub fn from_rational(r: &BigRational) -> Self {
        if r.is_zero() {
            return Self::zero();
        }
        SqrtRational {
            sign: if r.is_negative() { -1 } else { 1 },
            radicand: r * r,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.sign == 0
    }

    pub fn sign(&self) -> i8 {
        self.sign
    }

    pub fn radicand(&self) -> &BigRational {
        &self.radicand
    }

    /// The square of the value, always exact.
    pub fn squared(&self) -> BigRational {
        if self.sign == 0 {
            BigRational::zero()
        } else {
            self.radicand.clone()
        }
    }

    pub fn negate(&self) -> Self {
        SqrtRational {
            sign: -self.sign,
            radicand: self.radicand.clone(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.sign == 0 || other.sign == 0 {
            return Self::zero();
        }
        SqrtRational {
            sign: self.sign * other.sign,
            radicand: &self.radicand * &other.radicand,
        }
    }

    /// Scale by a rational factor.
    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() || self.sign == 0 {
            return Self::zero();
        }
        let sign = if c.is_negative() { -self.sign } else { self.sign };
        SqrtRational {
            sign,
            radicand: c * c * &self.radicand,
        }
    }

    /// Exact sum, available when the two radicands differ by a perfect-square
    /// rational factor (which covers sums of like-radicand terms). Returns
    /// `None` when the sum leaves the `c·√q` form.
    pub fn checked_add(&self, other: &Self) -> Option<Self> {
        if self.sign == 0 {
            return Some(other.clone());
        }
        if other.sign == 0 {
            return Some(self.clone());
        }
        // self = s1·√q1, other = s2·√q2 with q1 = t²·q2 ⇒ sum = (s1·t + s2)·√q2.
        let ratio = &self.radicand / &other.radicand;
        let t = rational_sqrt(&ratio)?;
        let coeff = BigRational::from_integer(BigInt::from(self.sign)) * t
            + BigRational::from_integer(BigInt::from(other.sign));
        Some(Self::sqrt_of(other.radicand.clone()).scale(&coeff))
    }

    /// Exact rational value, if the radicand is a perfect square.
    pub fn to_rational(&self) -> Option<BigRational> {
        if self.sign == 0 {
            return Some(BigRational::zero());
        }
        let root = rational_sqrt(&self.radicand)?;
        Some(root * BigRational::from_integer(BigInt::from(self.sign)))
    }

    pub fn to_f64(&self) -> f64 {
        f64::from(self.sign) * rational_to_f64(&self.radicand).sqrt()
    }
}

impl fmt::Display for SqrtRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.sign == 0 {
            return write!(f, "0");
        }
        let prefix = if self.sign < 0 { "-" } else { "" };
        match self.to_rational() {
            Some(r) => {
                let r = r.abs();
                if r.denom().is_one() {
                    write!(f, "{prefix}{}", r.numer())
                } else {
                    write!(f, "{prefix}{}/{}", r.numer(), r.denom())
                }
            }
            None => {
                if self.radicand.denom().is_one() {
                    write!(f, "{prefix}√{}", self.radicand.numer())
                } else {
                    write!(
                        f,
                        "{prefix}√({}/{})",
                        self.radicand.numer(),
                        self.radicand.denom()
                    )
                }
            }
        }
    }
}

/// Exact square root of a non-negative rational, if it has one.
pub(crate) fn rational_sqrt(q: &BigRational) -> Option<BigRational> {
    if q.is_negative() {
        return None;
    }
    let num = integer_sqrt_exact(q.numer().magnitude())?;
    let den = integer_sqrt_exact(q.denom().magnitude())?;
    Some(BigRational::new(
        BigInt::from_biguint(Sign::Plus, num),
        BigInt::from_biguint(Sign::Plus, den),
    ))
}

fn integer_sqrt_exact(n: &BigUint) -> Option<BigUint> {
    let root = n.sqrt();
    if &root * &root == *n {
        Some(root)
    } else {
        None
    }
}
