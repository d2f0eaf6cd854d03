//! Extended non-negative rationals: exact values plus a single absorbing infinity.

use std::fmt;
use std::ops::Add;
use std::str::FromStr;

use num::{BigInt, BigRational, One, Signed, Zero};
use thiserror::Error;

/// A cost value: either an exact rational or `Infinity`.
///
/// The derived ordering places every finite value below `Infinity`, which is
/// the total order the algorithms compare costs with.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ExtValue {
    Finite(BigRational),
    Infinity,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ValueParseError {
    #[error("empty value")]
    Empty,
    #[error("malformed rational `{0}`")]
    Malformed(String),
    #[error("zero denominator in `{0}`")]
    ZeroDenominator(String),
}

impl ExtValue {
    pub fn zero() -> Self {
        ExtValue::Finite(BigRational::zero())
    }

    pub fn from_int(v: i64) -> Self {
        ExtValue::Finite(BigRational::from_integer(BigInt::from(v)))
    }

    pub fn ratio(num: i64, den: i64) -> Self {
        ExtValue::Finite(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, ExtValue::Infinity)
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, ExtValue::Finite(v) if v.is_zero())
    }

    pub fn is_negative(&self) -> bool {
        matches!(self, ExtValue::Finite(v) if v.is_negative())
    }

    pub fn as_finite(&self) -> Option<&BigRational> {
        match self {
            ExtValue::Finite(v) => Some(v),
            ExtValue::Infinity => None,
        }
    }

    /// `self - rhs` for a finite `rhs`. Infinity stays infinite; a finite
    /// result below zero yields `None`.
    pub fn checked_sub(&self, rhs: &BigRational) -> Option<ExtValue> {
        match self {
            ExtValue::Infinity => Some(ExtValue::Infinity),
            ExtValue::Finite(v) => {
                let d = v - rhs;
                if d.is_negative() {
                    None
                } else {
                    Some(ExtValue::Finite(d))
                }
            }
        }
    }

    /// Scales by a non-negative rational. `Infinity * 0` is taken to be `Infinity`.
    pub fn scale(&self, k: &BigRational) -> ExtValue {
        match self {
            ExtValue::Infinity => ExtValue::Infinity,
            ExtValue::Finite(v) => ExtValue::Finite(v * k),
        }
    }
}

impl From<BigRational> for ExtValue {
    fn from(v: BigRational) -> Self {
        ExtValue::Finite(v)
    }
}

impl From<i64> for ExtValue {
    fn from(v: i64) -> Self {
        ExtValue::from_int(v)
    }
}

impl Add for ExtValue {
    type Output = ExtValue;

    fn add(self, rhs: ExtValue) -> ExtValue {
        match (self, rhs) {
            (ExtValue::Finite(a), ExtValue::Finite(b)) => ExtValue::Finite(a + b),
            _ => ExtValue::Infinity,
        }
    }
}

impl<'a> Add<&'a ExtValue> for &'a ExtValue {
    type Output = ExtValue;

    fn add(self, rhs: &'a ExtValue) -> ExtValue {
        match (self, rhs) {
            (ExtValue::Finite(a), ExtValue::Finite(b)) => ExtValue::Finite(a + b),
            _ => ExtValue::Infinity,
        }
    }
}

impl std::iter::Sum for ExtValue {
    fn sum<I: Iterator<Item = ExtValue>>(iter: I) -> ExtValue {
        iter.fold(ExtValue::zero(), |acc, v| acc + v)
    }
}

impl fmt::Display for ExtValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtValue::Infinity => f.write_str("inf"),
            ExtValue::Finite(v) => write!(f, "{}", v),
        }
    }
}

impl FromStr for ExtValue {
    type Err = ValueParseError;

    /// Accepts `inf`, integers and `num/den` fractions.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s.is_empty() {
            return Err(ValueParseError::Empty);
        }
        if s.eq_ignore_ascii_case("inf") {
            return Ok(ExtValue::Infinity);
        }
        parse_rational(s).map(ExtValue::Finite)
    }
}

/// Parses `n` or `n/d` into a reduced rational.
pub fn parse_rational(s: &str) -> Result<BigRational, ValueParseError> {
    let malformed = || ValueParseError::Malformed(s.to_string());
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s.trim(), "1"),
    };
    let num: BigInt = num.parse().map_err(|_| malformed())?;
    let den: BigInt = den.parse().map_err(|_| malformed())?;
    if den.is_zero() {
        return Err(ValueParseError::ZeroDenominator(s.to_string()));
    }
    Ok(BigRational::new(num, den))
}

/// Renders a rational as an exact fraction followed by a 6-decimal approximation,
/// e.g. `8/3 (2.666667)`.
pub fn fraction_with_decimal(v: &BigRational) -> String {
    format!("{} ({})", v, decimal6(v))
}

/// Rounds half away from zero to six decimals using integer arithmetic only.
pub fn decimal6(v: &BigRational) -> String {
    let scale = BigInt::from(1_000_000);
    let scaled = v * BigRational::from_integer(scale.clone());
    let two = BigRational::from_integer(BigInt::from(2));
    let half = BigRational::one() / two;
    let rounded = if scaled.is_negative() {
        (scaled - half).ceil().to_integer()
    } else {
        (scaled + half).floor().to_integer()
    };
    let neg = rounded.is_negative();
    let abs = rounded.abs();
    let int_part = &abs / &scale;
    let frac_part = &abs % &scale;
    format!("{}{}.{:0>6}", if neg { "-" } else { "" }, int_part, frac_part.to_string())
}
