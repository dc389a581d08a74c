//! Numeric type used for reported ratios.
//!
//! Metrics are computed from integer counts, so any field that can represent
//! `num / den` works: `f32`, `f64`, or the exact [`Rational`].

use std::fmt::Debug;

use num_rational::Ratio;
use num_traits::{Num, ToPrimitive};

/// Exact non-negative ratio of counts.
pub type Rational = Ratio<u64>;

pub trait Score: Num + Copy + PartialOrd + Debug + Send + Sync {
    /// `num / den`; callers guarantee `den > 0`.
    fn from_counts(num: u64, den: u64) -> Self;

    fn to_f64(self) -> f64;
}

impl Score for f64 {
    fn from_counts(num: u64, den: u64) -> Self {
        num as f64 / den as f64
    }

    fn to_f64(self) -> f64 {
        self
    }
}

impl Score for f32 {
    fn from_counts(num: u64, den: u64) -> Self {
        (num as f64 / den as f64) as f32
    }

    fn to_f64(self) -> f64 {
        f64::from(self)
    }
}

impl Score for Rational {
    fn from_counts(num: u64, den: u64) -> Self {
        Ratio::new(num, den)
    }

    fn to_f64(self) -> f64 {
        ToPrimitive::to_f64(&self).unwrap_or(f64::NAN)
    }
}

/// Rounds `num / den` half-up to `digits` decimals using integer arithmetic.
pub fn round_decimal(num: u64, den: u64, digits: u32) -> String {
    assert!(den > 0, "denominator must be positive");
    let scale = 10u128.pow(digits);
    let scaled = (u128::from(num) * scale * 2 + u128::from(den)) / (u128::from(den) * 2);
    let whole = scaled / scale;
    if digits == 0 {
        return whole.to_string();
    }
    let frac = scaled % scale;
    format!("{whole}.{frac:0width$}", width = digits as usize)
}

/// Exact rounding of a rational value.
pub fn round_rational(value: Rational, digits: u32) -> String {
    round_decimal(*value.numer(), *value.denom(), digits)
}

/// A rational as a percentage with `digits` decimals, e.g. `66.7`.
pub fn percent_rational(value: Rational, digits: u32) -> String {
    round_decimal(value.numer() * 100, *value.denom(), digits)
}
