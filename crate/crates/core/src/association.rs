//! Support/confidence rules over pairs of selected items.

use serde::Serialize;

use crate::config::MiningConfig;
use crate::error::{Error, Result};
use crate::fraction::MetricFraction;
use crate::model::{ItemId, Itemset, TransactionDatabase};

/// `count(X ∪ Y) / total`.
pub fn support(db: &TransactionDatabase, x: &Itemset, y: &Itemset) -> Result<MetricFraction> {
    let joint = db.count_support(&x.union(y))?;
    MetricFraction::new(joint, db.total())
}

/// `count(X ∪ Y) / count(X)`; undefined when X occurs nowhere.
pub fn confidence(db: &TransactionDatabase, x: &Itemset, y: &Itemset) -> Result<MetricFraction> {
    let base = db.count_support(x)?;
    let joint = db.count_support(&x.union(y))?;
    conditional(joint, base, "confidence")
}

pub(crate) fn conditional(joint: u64, base: u64, metric: &'static str) -> Result<MetricFraction> {
    if base == 0 {
        return Err(Error::UndefinedRatio { metric });
    }
    MetricFraction::new(joint, base)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AssociationRule {
    pub antecedent: Itemset,
    pub consequent: Itemset,
    pub support: MetricFraction,
    /// `None` when the antecedent never occurs; such a rule never passes.
    pub confidence: Option<MetricFraction>,
    pub passes: bool,
}

impl AssociationRule {
    /// Builds a rule from precomputed counts.
    pub(crate) fn from_counts(
        antecedent: Itemset,
        consequent: Itemset,
        joint: u64,
        base: u64,
        total: u64,
        min_support: MetricFraction,
        min_confidence: MetricFraction,
    ) -> Result<Self> {
        let support = MetricFraction::new(joint, total)?;
        let confidence = conditional(joint, base, "confidence").ok();
        let passes = support >= min_support && confidence.is_some_and(|c| c >= min_confidence);
        Ok(AssociationRule { antecedent, consequent, support, confidence, passes })
    }

    /// Evaluates `x -> y` against the thresholds in `config`.
    pub fn evaluate(db: &TransactionDatabase, x: Itemset, y: Itemset, config: &MiningConfig) -> Result<Self> {
        if x.is_empty() || y.is_empty() || !x.is_disjoint(&y) {
            return Err(Error::Config("rule sides must be non-empty and disjoint".into()));
        }
        let joint = db.count_support(&x.union(&y))?;
        let base = db.count_support(&x)?;
        Self::from_counts(x, y, joint, base, db.total(), config.min_support, config.min_confidence)
    }
}

/// Ordered `(antecedent, consequent)` pairs in selection order: the upper
/// triangle, or every ordered pair when `both_directions` is set.
pub fn rule_pairs(selection: &[ItemId], both_directions: bool) -> Vec<(ItemId, ItemId)> {
    let mut pairs = Vec::new();
    for (i, a) in selection.iter().enumerate() {
        for (j, b) in selection.iter().enumerate() {
            if (both_directions && i != j) || j > i {
                pairs.push((*a, *b));
            }
        }
    }
    pairs
}

/// Counts for every single item and every pair among `pairs`, computed in
/// one pass.
pub(crate) fn pair_counts(
    db: &TransactionDatabase,
    selection: &[ItemId],
    pairs: &[(ItemId, ItemId)],
    workers: usize,
) -> Result<(Vec<u64>, Vec<u64>)> {
    let mut sets: Vec<Itemset> = selection.iter().map(|id| Itemset::singleton(*id)).collect();
    sets.extend(pairs.iter().map(|(a, b)| Itemset::new([*a, *b])));
    let mut counts = db.count_many(&sets, workers)?;
    let joint = counts.split_off(selection.len());
    Ok((counts, joint))
}

pub(crate) fn check_selection(selection: &[ItemId]) -> Result<()> {
    if selection.len() < 2 {
        return Err(Error::Config(format!("pairwise analysis needs at least two items, got {}", selection.len())));
    }
    Ok(())
}

pub fn mine_pairwise_rules(
    db: &TransactionDatabase,
    selection: &[ItemId],
    config: &MiningConfig,
) -> Result<Vec<AssociationRule>> {
    check_selection(selection)?;
    let pairs = rule_pairs(selection, config.both_directions);
    let (single, joint) = pair_counts(db, selection, &pairs, config.workers)?;
    let position = |id: ItemId| selection.iter().position(|s| *s == id).expect("selected");
    pairs
        .iter()
        .zip(joint)
        .map(|((a, b), joint)| {
            AssociationRule::from_counts(
                Itemset::singleton(*a),
                Itemset::singleton(*b),
                joint,
                single[position(*a)],
                db.total(),
                config.min_support,
                config.min_confidence,
            )
        })
        .collect()
}
