//! Exact membership degrees.
//!
//! Every label handled by this crate is an integer multiple of a base step
//! `d = 10^-p`. A [`ScaledValue`] stores the integer multiple (`units`) and
//! the exponent `p` (`scale_exp`); no floating point is involved anywhere,
//! so edge sums can be compared for equality without rounding concerns.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::constructions::admissible;
use crate::model::Family;

/// Largest supported scale exponent; `10^18` is the largest power of ten
/// that fits in an `i64`.
pub const MAX_SCALE_EXP: u32 = 18;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NumericsError {
    #[error("scale exponent {0} is outside 1..={MAX_SCALE_EXP}")]
    InvalidScale(u32),
    #[error("mixed scales: 10^-{left} and 10^-{right}")]
    MixedScale { left: u32, right: u32 },
    #[error("integer overflow in label arithmetic")]
    Overflow,
    #[error("cannot parse decimal {text:?}: {reason}")]
    Parse { text: String, reason: String },
    #[error("no scale for n = {n}, m = {m}: {reason}")]
    Inadmissible { n: usize, m: usize, reason: String },
}

/// `10^p` as an `i64`, the number of units in the value one.
pub fn unit_one(scale_exp: u32) -> Result<i64, NumericsError> {
    check_scale(scale_exp)?;
    Ok(10_i64.pow(scale_exp))
}

pub(crate) fn check_scale(scale_exp: u32) -> Result<(), NumericsError> {
    if (1..=MAX_SCALE_EXP).contains(&scale_exp) {
        Ok(())
    } else {
        Err(NumericsError::InvalidScale(scale_exp))
    }
}

/// An exact value `units × 10^-scale_exp`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ScaledValue {
    units: i64,
    scale_exp: u32,
}

impl ScaledValue {
    pub fn new(units: i64, scale_exp: u32) -> Result<Self, NumericsError> {
        check_scale(scale_exp)?;
        Ok(Self { units, scale_exp })
    }

    /// Constructor for call sites that have already validated `scale_exp`.
    pub(crate) fn from_parts(units: i64, scale_exp: u32) -> Self {
        debug_assert!(check_scale(scale_exp).is_ok());
        Self { units, scale_exp }
    }

    pub fn units(self) -> i64 {
        self.units
    }

    pub fn scale_exp(self) -> u32 {
        self.scale_exp
    }

    fn same_scale(self, other: Self) -> Result<(), NumericsError> {
        if self.scale_exp == other.scale_exp {
            Ok(())
        } else {
            Err(NumericsError::MixedScale {
                left: self.scale_exp,
                right: other.scale_exp,
            })
        }
    }

    pub fn checked_add(self, other: Self) -> Result<Self, NumericsError> {
        self.same_scale(other)?;
        let units = self
            .units
            .checked_add(other.units)
            .ok_or(NumericsError::Overflow)?;
        Ok(Self { units, ..self })
    }

    pub fn checked_sub(self, other: Self) -> Result<Self, NumericsError> {
        self.same_scale(other)?;
        let units = self
            .units
            .checked_sub(other.units)
            .ok_or(NumericsError::Overflow)?;
        Ok(Self { units, ..self })
    }

    pub fn checked_neg(self) -> Result<Self, NumericsError> {
        let units = self.units.checked_neg().ok_or(NumericsError::Overflow)?;
        Ok(Self { units, ..self })
    }

    /// Total order on equal-scale values; mixed scales are an error.
    pub fn try_cmp(self, other: Self) -> Result<Ordering, NumericsError> {
        self.same_scale(other)?;
        Ok(self.units.cmp(&other.units))
    }

    /// Membership degree in `(0, 1]`.
    pub fn is_positive_degree(self) -> bool {
        let one = 10_i64.pow(self.scale_exp);
        self.units > 0 && self.units <= one
    }

    /// Membership degree in `[-1, 0)`.
    pub fn is_negative_degree(self) -> bool {
        let one = 10_i64.pow(self.scale_exp);
        self.units < 0 && self.units >= -one
    }

    /// Renders the value with exactly `scale_exp` fraction digits.
    pub fn to_decimal_string(self) -> String {
        let one = 10_u64.pow(self.scale_exp);
        let magnitude = self.units.unsigned_abs();
        let sign = if self.units < 0 { "-" } else { "" };
        format!(
            "{sign}{}.{:0width$}",
            magnitude / one,
            magnitude % one,
            width = self.scale_exp as usize
        )
    }

    /// Parses a decimal and requires exactly `scale_exp` fraction digits.
    pub fn parse_at(text: &str, scale_exp: u32) -> Result<Self, NumericsError> {
        let value: Self = text.parse()?;
        if value.scale_exp != scale_exp {
            return Err(NumericsError::MixedScale {
                left: value.scale_exp,
                right: scale_exp,
            });
        }
        Ok(value)
    }
}

impl PartialOrd for ScaledValue {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        self.try_cmp(*other).ok()
    }
}

impl fmt::Display for ScaledValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_decimal_string())
    }
}

impl FromStr for ScaledValue {
    type Err = NumericsError;

    /// Accepts `[-]<digits>.<digits>`; the number of fraction digits
    /// becomes the scale exponent.
    fn from_str(text: &str) -> Result<Self, Self::Err> {
        let fail = |reason: &str| NumericsError::Parse {
            text: text.to_string(),
            reason: reason.to_string(),
        };
        let (negative, body) = match text.strip_prefix('-') {
            Some(rest) => (true, rest),
            None => (false, text),
        };
        let (int_part, frac_part) = body
            .split_once('.')
            .ok_or_else(|| fail("missing decimal point"))?;
        if int_part.is_empty() || frac_part.is_empty() {
            return Err(fail("empty integer or fraction part"));
        }
        if !int_part.bytes().all(|b| b.is_ascii_digit())
            || !frac_part.bytes().all(|b| b.is_ascii_digit())
        {
            return Err(fail("non-digit character"));
        }
        let scale_exp = u32::try_from(frac_part.len()).map_err(|_| fail("too many digits"))?;
        check_scale(scale_exp)?;
        let one = 10_i64.pow(scale_exp);
        let int: i64 = int_part.parse().map_err(|_| NumericsError::Overflow)?;
        let frac: i64 = frac_part.parse().map_err(|_| NumericsError::Overflow)?;
        let magnitude = int
            .checked_mul(one)
            .and_then(|v| v.checked_add(frac))
            .ok_or(NumericsError::Overflow)?;
        let units = if negative { -magnitude } else { magnitude };
        Ok(Self { units, scale_exp })
    }
}

impl Serialize for ScaledValue {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_decimal_string())
    }
}

impl<'de> Deserialize<'de> for ScaledValue {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let text = String::deserialize(deserializer)?;
        text.parse().map_err(serde::de::Error::custom)
    }
}

/// Scale exponent from the granularity tables, ignoring admissibility.
///
/// Anti-fuzzy: `p = 2` below 31, `p = 3` below 331, then `p = j + 4` for
/// `331·10^j <= n < 331·10^(j+1)`. Bipolar: `p = 2` below 11, `p = 3` below
/// 35, `p = 4` below 334, then `p = j + 4` for `334·10^j <= n < 334·10^(j+1)`.
pub fn scale_band(n: usize, family: Family) -> u32 {
    let n = n as u128;
    let (bands, tail_base): (&[(u128, u32)], u128) = match family {
        Family::AntiFuzzy => (&[(31, 2), (331, 3)], 331),
        Family::Bipolar => (&[(11, 2), (35, 3), (334, 4)], 334),
    };
    if let Some(&(_, p)) = bands.iter().find(|(upper, _)| n < *upper) {
        return p;
    }
    let mut j = 0;
    let mut upper = tail_base * 10;
    while n >= upper {
        j += 1;
        upper *= 10;
    }
    j + 4
}

/// Scale exponent for an admissible `(n, m)` query.
pub fn select_scale(n: usize, m: usize, family: Family) -> Result<u32, NumericsError> {
    let report = admissible(n, m, family);
    if !report.admissible {
        return Err(NumericsError::Inadmissible {
            n,
            m,
            reason: report.reason,
        });
    }
    Ok(scale_band(n, family))
}

/// Like [`select_scale`] but an explicit exponent wins. The override is
/// only checked for representability here; label ranges are checked by the
/// generators.
pub fn resolve_scale(
    n: usize,
    m: usize,
    family: Family,
    override_exp: Option<u32>,
) -> Result<u32, NumericsError> {
    match override_exp {
        Some(p) => {
            check_scale(p)?;
            Ok(p)
        }
        None => select_scale(n, m, family),
    }
}
