//! Dual-mode scalars: exact big rationals or IEEE `f64`.
//!
//! Strict inequalities (`d > r`) decide whether a ball family is valid, so
//! wherever the inputs allow it we keep arithmetic exact. A [`Scalar`] is
//! either an arbitrary-precision rational or a double; binary operations
//! stay exact when both sides are exact and fall back to `f64` otherwise.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Pow, Signed, ToPrimitive, Zero};
use serde::de::{self, Visitor};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::Error;

/// Arithmetic mode of a scalar or of a whole computation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ArithMode {
    /// Exact rational arithmetic; comparisons are certificates.
    Exact,
    /// `f64` arithmetic; comparisons need an explicit margin.
    Float,
}

/// A real number carrying its arithmetic mode.
///
/// `Exact op Exact` stays exact; any operation touching a `Float` is
/// performed in `f64`. In JSON, floats are numbers and exact values are
/// strings (`"3"`, `"-5/4"`, `"0.25"`).
#[derive(Clone, Debug)]
pub enum Scalar {
    Exact(BigRational),
    Float(f64),
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

    /// Exact rational `num/den`. Panics if `den == 0`.
    pub fn ratio(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        Scalar::Exact(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn from_f64(x: f64) -> Self {
        Scalar::Float(x)
    }

    pub fn mode(&self) -> ArithMode {
        match self {
            Scalar::Exact(_) => ArithMode::Exact,
            Scalar::Float(_) => ArithMode::Float,
        }
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, Scalar::Exact(_))
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            Scalar::Exact(r) => r.to_f64().unwrap_or(f64::NAN),
            Scalar::Float(x) => *x,
        }
    }

    /// The exact rational value, converting floats via their binary expansion.
    ///
    /// Returns `None` for non-finite floats.
    pub fn to_rational(&self) -> Option<BigRational> {
        match self {
            Scalar::Exact(r) => Some(r.clone()),
            Scalar::Float(x) => BigRational::from_float(*x),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Exact(r) => r.is_zero(),
            Scalar::Float(x) => *x == 0.0,
        }
    }

    pub fn is_negative(&self) -> bool {
        match self {
            Scalar::Exact(r) => r.is_negative(),
            Scalar::Float(x) => *x < 0.0,
        }
    }

    pub fn abs(&self) -> Scalar {
        match self {
            Scalar::Exact(r) => Scalar::Exact(r.abs()),
            Scalar::Float(x) => Scalar::Float(x.abs()),
        }
    }

    /// Square root; exact when the operand is a perfect rational square.
    pub fn sqrt(&self) -> Scalar {
        if let Scalar::Exact(r) = self {
            if r.is_negative() {
                return Scalar::Float(f64::NAN);
            }
            let (num, den) = (r.numer(), r.denom());
            let (sn, sd) = (num.sqrt(), den.sqrt());
            if &(&sn * &sn) == num && &(&sd * &sd) == den {
                return Scalar::Exact(BigRational::new(sn, sd));
            }
        }
        Scalar::Float(self.to_f64().sqrt())
    }

    /// `self^k` with an integer exponent; exact for exact operands.
    pub fn powi(&self, k: i32) -> Scalar {
        match self {
            Scalar::Exact(r) => {
                if r.is_zero() && k <= 0 {
                    return Scalar::Float(f64::INFINITY);
                }
                Scalar::Exact(r.pow(k))
            }
            Scalar::Float(x) => Scalar::Float(x.powi(k)),
        }
    }

    /// `|self|^p` in `f64`; exponents other than integers have no exact form.
    pub fn abs_powf(&self, p: f64) -> f64 {
        self.to_f64().abs().powf(p)
    }

    /// Total order usable for sorting; mixed comparisons are exact.
    pub fn total_cmp(&self, other: &Scalar) -> Ordering {
        match (self, other) {
            (Scalar::Exact(a), Scalar::Exact(b)) => a.cmp(b),
            (Scalar::Float(a), Scalar::Float(b)) => a.total_cmp(b),
            _ => match (self.to_rational(), other.to_rational()) {
                (Some(a), Some(b)) => a.cmp(&b),
                _ => self.to_f64().total_cmp(&other.to_f64()),
            },
        }
    }

    pub fn max(&self, other: &Scalar) -> Scalar {
        if self.total_cmp(other) == Ordering::Less {
            other.clone()
        } else {
            self.clone()
        }
    }

    pub fn min(&self, other: &Scalar) -> Scalar {
        if self.total_cmp(other) == Ordering::Greater {
            other.clone()
        } else {
            self.clone()
        }
    }

    pub fn recip(&self) -> Scalar {
        match self {
            Scalar::Exact(r) => {
                if r.is_zero() {
                    Scalar::Float(f64::INFINITY)
                } else {
                    Scalar::Exact(r.recip())
                }
            }
            Scalar::Float(x) => Scalar::Float(1.0 / x),
        }
    }
}

fn binop(
    a: &Scalar,
    b: &Scalar,
    exact: impl FnOnce(&BigRational, &BigRational) -> BigRational,
    float: impl FnOnce(f64, f64) -> f64,
) -> Scalar {
    match (a, b) {
        (Scalar::Exact(x), Scalar::Exact(y)) => Scalar::Exact(exact(x, y)),
        _ => Scalar::Float(float(a.to_f64(), b.to_f64())),
    }
}

macro_rules! impl_binop {
    ($trait:ident, $method:ident, $op:tt) => {
        impl $trait for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                binop(self, rhs, |a, b| a $op b, |a, b| a $op b)
            }
        }
        impl $trait for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                (&self).$method(rhs)
            }
        }
        impl $trait<Scalar> for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                self.$method(&rhs)
            }
        }
    };
}

impl_binop!(Add, add, +);
impl_binop!(Sub, sub, -);
impl_binop!(Mul, mul, *);
impl_binop!(Div, div, /);

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Exact(r) => Scalar::Exact(-r),
            Scalar::Float(x) => Scalar::Float(-x),
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

impl PartialEq for Scalar {
    fn eq(&self, other: &Self) -> bool {
        self.partial_cmp(other) == Some(Ordering::Equal)
    }
}

impl PartialOrd for Scalar {
    /// Numeric comparison; exact even across modes (floats are compared via
    /// their binary expansion). `None` only for NaN.
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        match (self, other) {
            (Scalar::Exact(a), Scalar::Exact(b)) => Some(a.cmp(b)),
            (Scalar::Float(a), Scalar::Float(b)) => a.partial_cmp(b),
            _ => {
                if self.to_f64().is_nan() || other.to_f64().is_nan() {
                    return None;
                }
                Some(self.to_rational()?.cmp(&other.to_rational()?))
            }
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

impl FromStr for Scalar {
    type Err = Error;

    /// Parses `"p/q"`, integers, and decimal literals as exact rationals.
    fn from_str(s: &str) -> Result<Self, Error> {
        let s = s.trim();
        let bad = || Error::ScalarParse(s.to_string());
        if let Some((num, den)) = s.split_once('/') {
            let n: BigInt = num.trim().parse().map_err(|_| bad())?;
            let d: BigInt = den.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            return Ok(Scalar::Exact(BigRational::new(n, d)));
        }
        if let Some((int, frac)) = s.split_once('.') {
            let sign = if int.trim_start().starts_with('-') { -1 } else { 1 };
            let i: BigInt = if int.is_empty() || int == "-" || int == "+" {
                BigInt::zero()
            } else {
                int.parse().map_err(|_| bad())?
            };
            if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
                return Err(bad());
            }
            let f: BigInt = frac.parse().map_err(|_| bad())?;
            let den = BigInt::from(10u32).pow(frac.len() as u32);
            let num = i * &den + BigInt::from(sign) * f;
            return Ok(Scalar::Exact(BigRational::new(num, den)));
        }
        let n: BigInt = s.parse().map_err(|_| bad())?;
        Ok(Scalar::Exact(BigRational::from_integer(n)))
    }
}

impl Serialize for Scalar {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        match self {
            Scalar::Exact(_) => serializer.serialize_str(&self.to_string()),
            Scalar::Float(x) => serializer.serialize_f64(*x),
        }
    }
}

struct ScalarVisitor;

impl Visitor<'_> for ScalarVisitor {
    type Value = Scalar;

    fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
        f.write_str("a number (float mode) or a rational string (exact mode)")
    }

    fn visit_f64<E: de::Error>(self, v: f64) -> Result<Scalar, E> {
        Ok(Scalar::Float(v))
    }

    fn visit_i64<E: de::Error>(self, v: i64) -> Result<Scalar, E> {
        Ok(Scalar::Float(v as f64))
    }

    fn visit_u64<E: de::Error>(self, v: u64) -> Result<Scalar, E> {
        Ok(Scalar::Float(v as f64))
    }

    fn visit_str<E: de::Error>(self, v: &str) -> Result<Scalar, E> {
        v.parse().map_err(|e| E::custom(format!("{e}")))
    }
}

impl<'de> Deserialize<'de> for Scalar {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Scalar, D::Error> {
        deserializer.deserialize_any(ScalarVisitor)
    }
}

/// Sum that stays exact when every term is exact.
pub fn scalar_sum<'a>(terms: impl IntoIterator<Item = &'a Scalar>) -> Scalar {
    terms
        .into_iter()
        .fold(Scalar::zero(), |acc, t| &acc + t)
}

/// [`scalar_sum`] over owned terms.
pub fn scalar_sum_owned(terms: impl IntoIterator<Item = Scalar>) -> Scalar {
    terms
        .into_iter()
        .fold(Scalar::zero(), |acc, t| &acc + &t)
}
