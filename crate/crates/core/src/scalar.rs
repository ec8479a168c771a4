//! Scalar tower: exact rationals for discrete spaces, binary floats for
//! continuous models.

use std::fmt::{Debug, Display};
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_rational::Ratio;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Exact rational scalar used by every graph, word and finite metric.
pub type Rat = Ratio<i64>;

/// Shorthand for an integer-valued rational.
pub fn rat(n: i64) -> Rat {
    Rat::from_integer(n)
}

/// Shorthand for `num / den`.
pub fn frac(num: i64, den: i64) -> Rat {
    Rat::new(num, den)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ScalarKind {
    Exact,
    Float,
}

/// Arithmetic shared by [`Rat`] and `f64`.
pub trait Scalar:
    Copy
    + PartialOrd
    + Debug
    + Display
    + Send
    + Sync
    + Zero
    + Signed
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
    + 'static
{
    const KIND: ScalarKind;

    fn to_f64(self) -> f64;

    /// `false` for NaN and infinities; always `true` for rationals.
    fn is_finite_value(self) -> bool;

    /// Canonical text: `"p/q"` for rationals, shortest round-trip decimal
    /// for floats.
    fn to_text(self) -> String;

    /// The exact value, for exact scalars.
    fn to_rat(self) -> Option<Rat>;

    fn max_of(self, other: Self) -> Self {
        if other > self {
            other
        } else {
            self
        }
    }

    fn min_of(self, other: Self) -> Self {
        if other < self {
            other
        } else {
            self
        }
    }
}

impl Scalar for Rat {
    const KIND: ScalarKind = ScalarKind::Exact;

    fn to_f64(self) -> f64 {
        *self.numer() as f64 / *self.denom() as f64
    }

    fn is_finite_value(self) -> bool {
        true
    }

    fn to_text(self) -> String {
        rat_to_string(&self)
    }

    fn to_rat(self) -> Option<Rat> {
        Some(self)
    }
}

impl Scalar for f64 {
    const KIND: ScalarKind = ScalarKind::Float;

    fn to_f64(self) -> f64 {
        self
    }

    fn is_finite_value(self) -> bool {
        self.is_finite()
    }

    fn to_text(self) -> String {
        format!("{self}")
    }

    fn to_rat(self) -> Option<Rat> {
        None
    }
}

/// Formats a rational as `"p/q"`, always including the denominator.
pub fn rat_to_string(r: &Rat) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Parses `"p/q"`, `"p"` or a finite decimal such as `"2.5"`.
pub fn parse_rat(s: &str) -> Result<Rat> {
    let s = s.trim();
    if let Some((p, q)) = s.split_once('/') {
        let p = i64::from_str(p.trim()).map_err(|e| Error::Parse(format!("{s:?}: {e}")))?;
        let q = i64::from_str(q.trim()).map_err(|e| Error::Parse(format!("{s:?}: {e}")))?;
        if q == 0 {
            return Err(Error::Parse(format!("{s:?}: zero denominator")));
        }
        return Ok(Rat::new(p, q));
    }
    if let Some((int, dec)) = s.split_once('.') {
        if dec.is_empty() || !dec.bytes().all(|b| b.is_ascii_digit()) || dec.len() > 15 {
            return Err(Error::Parse(format!("{s:?}: not a rational")));
        }
        let negative = int.starts_with('-');
        let whole = if int.is_empty() || int == "-" {
            0
        } else {
            i64::from_str(int).map_err(|e| Error::Parse(format!("{s:?}: {e}")))?
        };
        let den = 10i64.pow(dec.len() as u32);
        let frac_part = i64::from_str(dec).map_err(|e| Error::Parse(format!("{s:?}: {e}")))?;
        let mag = whole.abs() * den + frac_part;
        return Ok(Rat::new(if negative { -mag } else { mag }, den));
    }
    i64::from_str(s)
        .map(Rat::from_integer)
        .map_err(|e| Error::Parse(format!("{s:?}: {e}")))
}

/// Serde adapter storing a [`Rat`] as a `"p/q"` string.
pub mod rat_string {
    use super::*;

    pub fn serialize<S: Serializer>(r: &Rat, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&rat_to_string(r))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Rat, D::Error> {
        let v = serde_json::Value::deserialize(d)?;
        value_to_rat(&v).map_err(serde::de::Error::custom)
    }
}

/// Serde adapter for `Vec<Rat>` as a list of `"p/q"` strings.
pub mod rat_vec {
    use super::*;

    pub fn serialize<S: Serializer>(v: &[Rat], s: S) -> std::result::Result<S::Ok, S::Error> {
        let strings: Vec<String> = v.iter().map(rat_to_string).collect();
        strings.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Vec<Rat>, D::Error> {
        let values = Vec::<serde_json::Value>::deserialize(d)?;
        values
            .iter()
            .map(value_to_rat)
            .collect::<Result<Vec<_>>>()
            .map_err(serde::de::Error::custom)
    }
}

/// Accepts a JSON string (`"p/q"`) or an integer.
pub fn value_to_rat(v: &serde_json::Value) -> Result<Rat> {
    match v {
        serde_json::Value::String(s) => parse_rat(s),
        serde_json::Value::Number(n) => n
            .as_i64()
            .map(Rat::from_integer)
            .ok_or_else(|| Error::Parse(format!("{n} is not an integer; use \"p/q\""))),
        other => Err(Error::Parse(format!("expected rational, got {other}"))),
    }
}
