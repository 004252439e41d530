//! Numeric carrier for probability values.
//!
//! Every model is either *exact* (arbitrary-precision rationals) or *float*
//! (f64). The two carriers are unified behind the [`Scalar`] trait so the
//! semantics, metric and composition code is written once. Exact rationals
//! are mandatory for the equivalence decision procedure, whose rank
//! decisions are numerically unstable over floats; float models get a fixed
//! comparison slack instead.

use std::fmt::{Debug, Display};
use std::hash::Hash;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Arbitrary-precision rational, the exact carrier.
pub type Rational = num_rational::BigRational;

/// Comparison slack used by all float-mode mass comparisons.
pub const FLOAT_SLACK: f64 = 1e-9;

/// Parse a rational from `p/q`, a decimal, or a plain integer.
///
/// Decimals are converted exactly (`0.6` becomes `3/5`).
pub fn parse_rational(text: &str) -> Result<Rational, String> {
    let s = text.trim();
    if s.is_empty() {
        return Err("empty number".to_string());
    }
    if let Some((p, q)) = s.split_once('/') {
        let num: BigInt = p
            .trim()
            .parse()
            .map_err(|_| format!("bad numerator in `{s}`"))?;
        let den: BigInt = q
            .trim()
            .parse()
            .map_err(|_| format!("bad denominator in `{s}`"))?;
        if den.is_zero() {
            return Err(format!("zero denominator in `{s}`"));
        }
        return Ok(Rational::new(num, den));
    }
    if let Some((int_part, frac_part)) = s.split_once('.') {
        let int_part = if int_part.is_empty() { "0" } else { int_part };
        if frac_part.is_empty() || !frac_part.bytes().all(|b| b.is_ascii_digit()) {
            return Err(format!("bad decimal `{s}`"));
        }
        let whole: BigInt = int_part.parse().map_err(|_| format!("bad decimal `{s}`"))?;
        let frac: BigInt = frac_part.parse().map_err(|_| format!("bad decimal `{s}`"))?;
        let scale = BigInt::from(10u32).pow(frac_part.len() as u32);
        let negative = s.starts_with('-');
        let magnitude = Rational::new(whole.abs() * &scale + frac, scale);
        return Ok(if negative { -magnitude } else { magnitude });
    }
    let whole: BigInt = s.parse().map_err(|_| format!("bad number `{s}`"))?;
    Ok(Rational::from_integer(whole))
}

/// Canonical `p/q` rendering (lowest terms, positive denominator).
pub fn format_rational(value: &Rational) -> String {
    format!("{}/{}", value.numer(), value.denom())
}

/// Shared scalar interface of the exact and float carriers.
pub trait Scalar:
    Clone + PartialEq + PartialOrd + Debug + Display + Send + Sync + 'static
{
    /// Whether arithmetic on this carrier is exact.
    const EXACT: bool;

    /// Hashable identity of a vector over this carrier, used to merge
    /// duplicate frontier nodes during word exploration.
    type Key: Hash + Eq + Clone;

    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    fn abs_diff(&self, rhs: &Self) -> Self;
    fn from_rational(q: &Rational) -> Self;
    fn to_f64(&self) -> f64;

    /// `self <= bound`, with the float-mode slack on the right-hand side.
    fn le_with_slack(&self, bound: &Self) -> bool;

    /// Equality up to the float-mode slack.
    fn eq_with_slack(&self, rhs: &Self) -> bool;

    /// Threshold check `self >= q` for a rational threshold, with the
    /// float-mode slack in the threshold's favour.
    fn meets_threshold(&self, q: &Rational) -> bool;

    fn vec_key(values: &[Self]) -> Self::Key;

    /// JSON model-file encoding: `"p/q"` strings for rationals, numbers
    /// for floats.
    fn to_json(&self) -> serde_json::Value;
    fn from_json(value: &serde_json::Value) -> Result<Self, String>;
}

impl Scalar for Rational {
    const EXACT: bool = true;
    type Key = Vec<Rational>;

    fn zero() -> Self {
        <Rational as Zero>::zero()
    }

    fn one() -> Self {
        <Rational as One>::one()
    }

    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }

    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }

    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }

    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }

    fn abs_diff(&self, rhs: &Self) -> Self {
        (self - rhs).abs()
    }

    fn from_rational(q: &Rational) -> Self {
        q.clone()
    }

    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }

    fn le_with_slack(&self, bound: &Self) -> bool {
        self <= bound
    }

    fn eq_with_slack(&self, rhs: &Self) -> bool {
        self == rhs
    }

    fn meets_threshold(&self, q: &Rational) -> bool {
        self >= q
    }

    fn vec_key(values: &[Self]) -> Self::Key {
        values.to_vec()
    }

    fn to_json(&self) -> serde_json::Value {
        serde_json::Value::String(format_rational(self))
    }

    fn from_json(value: &serde_json::Value) -> Result<Self, String> {
        match value {
            serde_json::Value::String(s) => parse_rational(s),
            other => Err(format!(
                "rational models store entries as \"p/q\" strings, got {other}"
            )),
        }
    }
}

impl Scalar for f64 {
    const EXACT: bool = false;
    type Key = Vec<u64>;

    fn zero() -> Self {
        0.0
    }

    fn one() -> Self {
        1.0
    }

    fn is_zero(&self) -> bool {
        *self == 0.0
    }

    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }

    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }

    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }

    fn abs_diff(&self, rhs: &Self) -> Self {
        (self - rhs).abs()
    }

    fn from_rational(q: &Rational) -> Self {
        Scalar::to_f64(q)
    }

    fn to_f64(&self) -> f64 {
        *self
    }

    fn le_with_slack(&self, bound: &Self) -> bool {
        *self <= bound + FLOAT_SLACK
    }

    fn eq_with_slack(&self, rhs: &Self) -> bool {
        (self - rhs).abs() <= FLOAT_SLACK
    }

    fn meets_threshold(&self, q: &Rational) -> bool {
        *self >= Scalar::to_f64(q) - FLOAT_SLACK
    }

    fn vec_key(values: &[Self]) -> Self::Key {
        values.iter().map(|v| v.to_bits()).collect()
    }

    fn to_json(&self) -> serde_json::Value {
        serde_json::json!(self)
    }

    fn from_json(value: &serde_json::Value) -> Result<Self, String> {
        value
            .as_f64()
            .ok_or_else(|| format!("float models store entries as numbers, got {value}"))
    }
}
