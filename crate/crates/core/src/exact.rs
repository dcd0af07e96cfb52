//! Serialization of exact quantities and the few real-valued outputs.
//!
//! Integers are emitted as JSON numbers when they fit in an i64 and as
//! decimal strings otherwise. Rationals carry an exact `p/q` string plus a
//! decimal convenience field that is ignored on input.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// Significant digits carried by real-valued outputs.
pub const REAL_DIGITS: usize = 12;

pub mod big {
    use super::*;

    pub fn serialize<S: Serializer>(v: &BigInt, s: S) -> Result<S::Ok, S::Error> {
        match v.to_i64() {
            Some(x) => s.serialize_i64(x),
            None => s.collect_str(v),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigInt, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Repr {
            Int(i64),
            Uint(u64),
            Str(String),
        }
        match Repr::deserialize(d)? {
            Repr::Int(x) => Ok(BigInt::from(x)),
            Repr::Uint(x) => Ok(BigInt::from(x)),
            Repr::Str(s) => s.parse().map_err(serde::de::Error::custom),
        }
    }
}

/// A rational serialized as `{"exact": "p/q", "decimal": x}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Exact(pub BigRational);

impl Exact {
    pub fn integer(v: impl Into<BigInt>) -> Self {
        Exact(BigRational::from_integer(v.into()))
    }

    pub fn decimal(&self) -> f64 {
        round_sig(rational_to_f64(&self.0), REAL_DIGITS)
    }
}

impl fmt::Display for Exact {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

#[derive(Serialize, Deserialize)]
struct ExactRepr {
    exact: String,
    #[serde(default)]
    decimal: Option<f64>,
}

impl Serialize for Exact {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        ExactRepr {
            exact: self.to_string(),
            decimal: Some(self.decimal()),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Exact {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let repr = ExactRepr::deserialize(d)?;
        parse_rational(&repr.exact)
            .map(Exact)
            .ok_or_else(|| serde::de::Error::custom(format!("bad rational `{}`", repr.exact)))
    }
}

/// Parses `p/q`, an integer, or a finite decimal such as `0.25`.
pub fn parse_rational(s: &str) -> Option<BigRational> {
    let s = s.trim();
    if let Some((p, q)) = s.split_once('/') {
        let p: BigInt = p.trim().parse().ok()?;
        let q: BigInt = q.trim().parse().ok()?;
        if q.is_zero() {
            return None;
        }
        return Some(BigRational::new(p, q));
    }
    if let Some((int, frac)) = s.split_once('.') {
        if frac.is_empty() || !frac.chars().all(|c| c.is_ascii_digit()) {
            return None;
        }
        let neg = int.starts_with('-');
        let int_part: BigInt = if int.is_empty() || int == "-" {
            BigInt::zero()
        } else {
            int.parse().ok()?
        };
        let scale = BigInt::from(10u32).pow(frac.len() as u32);
        let frac_part: BigInt = frac.parse().ok()?;
        let signed_frac = if neg { -frac_part } else { frac_part };
        return Some(BigRational::new(int_part * &scale + signed_frac, scale));
    }
    s.parse::<BigInt>().ok().map(BigRational::from_integer)
}

/// A real-valued output: a decimal rounded to [`REAL_DIGITS`] significant
/// digits, plus the exact integer value when the quantity happens to be one.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RealValue {
    pub decimal: f64,
    #[serde(default, with = "opt_big", skip_serializing_if = "Option::is_none")]
    pub exact: Option<BigInt>,
}

impl RealValue {
    pub fn exact(v: BigInt) -> Self {
        RealValue {
            decimal: round_sig(v.to_f64().unwrap_or(f64::INFINITY), REAL_DIGITS),
            exact: Some(v),
        }
    }

    pub fn approx(x: f64) -> Self {
        RealValue {
            decimal: round_sig(x, REAL_DIGITS),
            exact: None,
        }
    }
}

mod opt_big {
    use super::*;

    pub fn serialize<S: Serializer>(v: &Option<BigInt>, s: S) -> Result<S::Ok, S::Error> {
        match v {
            Some(x) => big::serialize(x, s),
            None => s.serialize_none(),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<BigInt>, D::Error> {
        big::deserialize(d).map(Some)
    }
}

pub fn round_sig(x: f64, digits: usize) -> f64 {
    if x == 0.0 || !x.is_finite() {
        return x;
    }
    format!("{:.*e}", digits - 1, x).parse().unwrap_or(x)
}

pub fn rational_to_f64(r: &BigRational) -> f64 {
    let (n, d) = (r.numer(), r.denom());
    if let (Some(a), Some(b)) = (n.to_f64(), d.to_f64()) {
        if a.is_finite() && b.is_finite() {
            return a / b;
        }
    }
    let sign = if n.is_negative() { -1.0 } else { 1.0 };
    (log2_big(&n.abs()) - log2_big(d)).exp2() * sign
}

/// log₂ of a positive big integer, to f64 precision.
pub fn log2_big(x: &BigInt) -> f64 {
    let bits = x.bits();
    if bits <= 1000 {
        return x.to_f64().unwrap_or(f64::INFINITY).log2();
    }
    let shift = bits - 64;
    let top = (x >> shift).to_f64().unwrap_or(f64::INFINITY);
    top.log2() + shift as f64
}
