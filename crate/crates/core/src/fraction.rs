//! Exact count ratios.
//!
//! Every metric (support, confidence, accuracy, coverage) is kept as the pair
//! of integer counts it was computed from. Fractions are never reduced, so
//! `8/10` still reports the ten antecedent transactions it came from, and all
//! comparisons go through cross-multiplication.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct MetricFraction {
    numerator: u64,
    denominator: u64,
}

/// Builds `numer / denom`; the denominator must be positive.
pub fn fraction(numer: u64, denom: u64) -> Result<MetricFraction> {
    MetricFraction::new(numer, denom)
}

impl MetricFraction {
    pub const ZERO: MetricFraction = MetricFraction { numerator: 0, denominator: 1 };
    pub const ONE: MetricFraction = MetricFraction { numerator: 1, denominator: 1 };

    pub fn new(numerator: u64, denominator: u64) -> Result<Self> {
        if denominator == 0 {
            return Err(Error::ZeroDenominator);
        }
        Ok(MetricFraction { numerator, denominator })
    }

    pub fn numerator(&self) -> u64 {
        self.numerator
    }

    pub fn denominator(&self) -> u64 {
        self.denominator
    }

    /// Within `[0, 1]`.
    pub fn is_proportion(&self) -> bool {
        self.numerator <= self.denominator
    }

    /// Smallest count `c` with `c / total >= self`, i.e. `ceil(self * total)`.
    pub fn min_count(&self, total: u64) -> u64 {
        let scaled = self.numerator as u128 * total as u128;
        let den = self.denominator as u128;
        scaled.div_ceil(den) as u64
    }

    /// Whether `count / total` reaches this threshold.
    pub fn admits(&self, count: u64, total: u64) -> bool {
        count as u128 * self.denominator as u128 >= self.numerator as u128 * total as u128
    }

    /// Percentage rounded half away from zero to `precision` decimal places,
    /// e.g. `4/5` at precision 0 renders as `80%`.
    pub fn percent(&self, precision: u32) -> String {
        let scale = 10u128.pow(precision);
        let scaled = self.numerator as u128 * 100 * scale;
        let den = self.denominator as u128;
        let rounded = (2 * scaled + den) / (2 * den);
        if precision == 0 {
            format!("{rounded}%")
        } else {
            let whole = rounded / scale;
            let frac = rounded % scale;
            format!("{whole}.{frac:0width$}%", width = precision as usize)
        }
    }

    /// Parses a threshold given either as a percentage (`50%`, `33.5%`) or
    /// as a fraction of one (`0.5`, `1`). The decimal is read exactly.
    pub fn parse_threshold(text: &str) -> Result<Self> {
        let trimmed = text.trim();
        let (digits, percent) = match trimmed.strip_suffix('%') {
            Some(rest) => (rest.trim_end(), true),
            None => (trimmed, false),
        };
        let bad = || Error::Config(format!("invalid threshold {text:?}: expected e.g. 50% or 0.5"));
        let (whole, frac) = match digits.split_once('.') {
            Some((w, f)) => (w, f),
            None => (digits, ""),
        };
        if whole.is_empty() && frac.is_empty() {
            return Err(bad());
        }
        if !whole.chars().chain(frac.chars()).all(|c| c.is_ascii_digit()) {
            return Err(bad());
        }
        if whole.len() + frac.len() > 18 {
            return Err(bad());
        }
        let numerator: u64 = format!("{whole}{frac}").parse().map_err(|_| bad())?;
        let mut denominator = 10u64.pow(frac.len() as u32);
        if percent {
            denominator *= 100;
        }
        let value = MetricFraction { numerator, denominator };
        if !value.is_proportion() {
            return Err(Error::Config(format!("threshold {text:?} is outside [0, 1]")));
        }
        Ok(value)
    }
}

impl PartialEq for MetricFraction {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for MetricFraction {}

impl PartialOrd for MetricFraction {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for MetricFraction {
    fn cmp(&self, other: &Self) -> Ordering {
        let lhs = self.numerator as u128 * other.denominator as u128;
        let rhs = other.numerator as u128 * self.denominator as u128;
        lhs.cmp(&rhs)
    }
}

impl fmt::Display for MetricFraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.numerator, self.denominator)
    }
}

impl FromStr for MetricFraction {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::parse_threshold(s)
    }
}
