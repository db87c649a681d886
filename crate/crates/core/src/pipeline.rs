//! Runs the selected analyses and collects them into one report.

use crate::apriori::{derive_rules, run_apriori, AprioriResult};
use crate::association::mine_pairwise_rules;
use crate::config::MiningConfig;
use crate::error::Result;
use crate::induction::mine_induction_rules;
use crate::model::{ItemId, TransactionDatabase};
use crate::report::{AnalysisReport, ReportMetadata};

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Analyses {
    pub association: bool,
    pub induction: bool,
    pub apriori: bool,
}

impl Analyses {
    pub const ALL: Analyses = Analyses { association: true, induction: true, apriori: true };
    pub const NONE: Analyses = Analyses { association: false, induction: false, apriori: false };
}

/// Rules derived from every frequent itemset with two or more items.
pub fn apriori_rules(
    db: &TransactionDatabase,
    result: &AprioriResult,
    config: &MiningConfig,
) -> Result<Vec<crate::AssociationRule>> {
    let mut rules = Vec::new();
    for counted in result.frequent.iter().filter(|c| c.itemset.len() >= 2) {
        rules.extend(derive_rules(db, &counted.itemset, config.min_confidence)?);
    }
    Ok(rules)
}

/// An empty `selection` means every catalog item.
pub fn analyze(
    db: &TransactionDatabase,
    selection: &[ItemId],
    config: &MiningConfig,
    analyses: Analyses,
    input_label: &str,
    timestamp: Option<String>,
) -> Result<AnalysisReport> {
    config.validate()?;
    let selection: Vec<ItemId> = if selection.is_empty() { db.catalog().ids().collect() } else { selection.to_vec() };
    let items = selection.iter().map(|id| db.item_name(*id).map(str::to_owned)).collect::<Result<_>>()?;
    let mut report = AnalysisReport::new(ReportMetadata {
        input: input_label.to_owned(),
        transactions: db.total(),
        items,
        config: config.clone(),
        timestamp,
    });
    if analyses.association {
        report.add_association(db, &mine_pairwise_rules(db, &selection, config)?)?;
    }
    if analyses.induction {
        report.add_induction(db, &mine_induction_rules(db, &selection, config)?)?;
    }
    if analyses.apriori {
        let result = run_apriori(db, &selection, config)?;
        let rules = apriori_rules(db, &result, config)?;
        report.add_apriori(db, &result, &rules)?;
    }
    Ok(report)
}
