//! "If x then y" rules scored by accuracy and coverage, classified into a
//! 2×2 grid.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::association::{check_selection, conditional, pair_counts, rule_pairs};
use crate::config::MiningConfig;
use crate::error::Result;
use crate::fraction::MetricFraction;
use crate::model::{ItemId, Itemset, TransactionDatabase};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Quadrant {
    HighAccHighCov,
    HighAccLowCov,
    LowAccHighCov,
    LowAccLowCov,
}

impl Quadrant {
    pub fn label(self) -> &'static str {
        match self {
            Quadrant::HighAccHighCov => "HIGH_ACC_HIGH_COV",
            Quadrant::HighAccLowCov => "HIGH_ACC_LOW_COV",
            Quadrant::LowAccHighCov => "LOW_ACC_HIGH_COV",
            Quadrant::LowAccLowCov => "LOW_ACC_LOW_COV",
        }
    }

    pub fn description(self) -> &'static str {
        match self {
            Quadrant::HighAccHighCov => "often correct and can be used often",
            Quadrant::HighAccLowCov => "often correct but can be only rarely used",
            Quadrant::LowAccHighCov => "rarely correct but can be used often",
            Quadrant::LowAccLowCov => "rarely correct and can be only rarely used",
        }
    }

    pub fn high_accuracy(self) -> bool {
        matches!(self, Quadrant::HighAccHighCov | Quadrant::HighAccLowCov)
    }

    pub fn high_coverage(self) -> bool {
        matches!(self, Quadrant::HighAccHighCov | Quadrant::LowAccHighCov)
    }
}

impl fmt::Display for Quadrant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// `count(x ∪ y) / count(x)`. The same ratio as confidence.
pub fn accuracy(db: &TransactionDatabase, x: &Itemset, y: &Itemset) -> Result<MetricFraction> {
    let base = db.count_support(x)?;
    let joint = db.count_support(&x.union(y))?;
    conditional(joint, base, "accuracy")
}

/// `count(x) / total`; depends on the antecedent only.
pub fn coverage(db: &TransactionDatabase, x: &Itemset) -> Result<MetricFraction> {
    MetricFraction::new(db.count_support(x)?, db.total())
}

/// Inclusive on both thresholds.
pub fn classify_quadrant(accuracy: MetricFraction, coverage: MetricFraction, config: &MiningConfig) -> Quadrant {
    let high_acc = accuracy >= config.min_accuracy;
    let high_cov = coverage >= config.min_coverage;
    match (high_acc, high_cov) {
        (true, true) => Quadrant::HighAccHighCov,
        (true, false) => Quadrant::HighAccLowCov,
        (false, true) => Quadrant::LowAccHighCov,
        (false, false) => Quadrant::LowAccLowCov,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InductionRule {
    pub antecedent_item: ItemId,
    pub consequent_item: ItemId,
    /// `None` when the antecedent never occurs.
    pub accuracy: Option<MetricFraction>,
    pub coverage: MetricFraction,
    /// Unset for rules whose accuracy is undefined.
    pub quadrant: Option<Quadrant>,
    pub passes: bool,
}

pub fn mine_induction_rules(
    db: &TransactionDatabase,
    selection: &[ItemId],
    config: &MiningConfig,
) -> Result<Vec<InductionRule>> {
    check_selection(selection)?;
    let pairs = rule_pairs(selection, config.both_directions);
    let (single, joint) = pair_counts(db, selection, &pairs, config.workers)?;
    let position = |id: ItemId| selection.iter().position(|s| *s == id).expect("selected");
    pairs
        .iter()
        .zip(joint)
        .map(|((x, y), joint)| {
            let base = single[position(*x)];
            let accuracy = conditional(joint, base, "accuracy").ok();
            let coverage = MetricFraction::new(base, db.total())?;
            let quadrant = accuracy.map(|acc| classify_quadrant(acc, coverage, config));
            Ok(InductionRule {
                antecedent_item: *x,
                consequent_item: *y,
                accuracy,
                coverage,
                quadrant,
                passes: quadrant == Some(Quadrant::HighAccHighCov),
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pct(p: u64) -> MetricFraction {
        MetricFraction::new(p, 100).unwrap()
    }

    #[test]
    fn grid_cells() {
        let config = MiningConfig::default();
        assert_eq!(classify_quadrant(pct(75), pct(75), &config), Quadrant::HighAccHighCov);
        assert_eq!(classify_quadrant(pct(71), pct(44), &config), Quadrant::HighAccLowCov);
        assert_eq!(classify_quadrant(pct(29), pct(44), &config), Quadrant::LowAccLowCov);
        assert_eq!(classify_quadrant(pct(17), pct(75), &config), Quadrant::LowAccHighCov);
        // thresholds are inclusive
        assert_eq!(classify_quadrant(pct(50), pct(70), &config), Quadrant::HighAccHighCov);
        assert_eq!(Quadrant::HighAccLowCov.description(), "often correct but can be only rarely used");
    }

    #[test]
    fn coverage_of_empty_antecedent() {
        let db = TransactionDatabase::from_item_lists(&[vec!["a"], vec!["b"]]).unwrap();
        assert_eq!(coverage(&db, &Itemset::empty()).unwrap(), MetricFraction::ONE);
        let a = Itemset::singleton(db.catalog().lookup("a").unwrap());
        assert_eq!(accuracy(&db, &a, &a).unwrap(), MetricFraction::ONE);
    }

    #[test]
    fn zero_thresholds_pass_everything() {
        let db = TransactionDatabase::from_item_lists(&[vec!["a", "b"], vec!["b", "c"], vec!["c"]]).unwrap();
        let config = MiningConfig {
            min_accuracy: MetricFraction::ZERO,
            min_coverage: MetricFraction::ZERO,
            both_directions: true,
            ..MiningConfig::default()
        };
        let selection: Vec<ItemId> = db.catalog().ids().collect();
        let rules = mine_induction_rules(&db, &selection, &config).unwrap();
        assert_eq!(rules.len(), 6);
        assert!(rules.iter().all(|r| r.passes));
    }
}
