use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fraction::MetricFraction;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum AprioriMode {
    /// Classic minimum-support Apriori with join and subset pruning.
    Threshold,
    /// Drop the minimum-count candidates of each level until one itemset is left.
    LowestCount,
}

impl fmt::Display for AprioriMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            AprioriMode::Threshold => "threshold",
            AprioriMode::LowestCount => "lowest-count",
        })
    }
}

impl FromStr for AprioriMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "threshold" => Ok(AprioriMode::Threshold),
            "lowest-count" => Ok(AprioriMode::LowestCount),
            other => Err(Error::Config(format!("unknown apriori mode {other:?}"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MiningConfig {
    pub min_support: MetricFraction,
    pub min_confidence: MetricFraction,
    pub min_accuracy: MetricFraction,
    pub min_coverage: MetricFraction,
    pub apriori_mode: AprioriMode,
    /// Decimal places for rendered percentages.
    pub display_precision: u32,
    /// Emit both `a -> b` and `b -> a` for each pair instead of only the
    /// upper triangle.
    pub both_directions: bool,
    /// Threads used for support counting; output never depends on it.
    #[serde(skip, default = "one")]
    pub workers: usize,
}

fn one() -> usize {
    1
}

fn percent(p: u64) -> MetricFraction {
    MetricFraction::new(p, 100).expect("nonzero denominator")
}

impl Default for MiningConfig {
    /// 50% support, 70% confidence, 50% accuracy, 70% coverage, lowest-count
    /// Apriori, integer percentages.
    fn default() -> Self {
        MiningConfig {
            min_support: percent(50),
            min_confidence: percent(70),
            min_accuracy: percent(50),
            min_coverage: percent(70),
            apriori_mode: AprioriMode::LowestCount,
            display_precision: 0,
            both_directions: false,
            workers: 1,
        }
    }
}

impl MiningConfig {
    pub fn validate(&self) -> Result<()> {
        let named = [
            ("min support", self.min_support),
            ("min confidence", self.min_confidence),
            ("min accuracy", self.min_accuracy),
            ("min coverage", self.min_coverage),
        ];
        for (name, value) in named {
            if !value.is_proportion() {
                return Err(Error::Config(format!("{name} {value} is outside [0, 1]")));
            }
        }
        if self.display_precision > 6 {
            return Err(Error::Config("display precision is limited to 6 digits".into()));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_validate() {
        let config = MiningConfig::default();
        config.validate().unwrap();
        assert_eq!(config.min_support.percent(0), "50%");
        assert_eq!(config.min_coverage.percent(0), "70%");
    }

    #[test]
    fn out_of_range_threshold() {
        let config = MiningConfig { min_confidence: MetricFraction::new(3, 2).unwrap(), ..MiningConfig::default() };
        assert!(matches!(config.validate(), Err(Error::Config(_))));
    }

    #[test]
    fn mode_names() {
        for mode in [AprioriMode::Threshold, AprioriMode::LowestCount] {
            assert_eq!(mode.to_string().parse::<AprioriMode>().unwrap(), mode);
        }
        assert!("fp-growth".parse::<AprioriMode>().is_err());
    }
}
