//! Level-wise frequent itemset mining.
//!
//! Two modes share the C_k/L_k ladder:
//!
//! * [`AprioriMode::Threshold`]: classic Apriori. C_k is the prefix join of
//!   L_{k-1} with subset pruning, L_k keeps candidates whose count reaches
//!   `ceil(min_support * total)`.
//! * [`AprioriMode::LowestCount`]: C_k is every k-subset of the selection.
//!   L_k drops all candidates tied at the level's minimum count, then any
//!   candidate with a (k-1)-subset missing from L_{k-1} and any candidate that
//!   occurs nowhere. The ladder stops at a single survivor, at a level where
//!   every candidate is tied, or when k reaches the selection size.

use std::collections::HashSet;

use serde::Serialize;

use crate::association::AssociationRule;
use crate::config::{AprioriMode, MiningConfig};
use crate::error::{Error, Result};
use crate::fraction::MetricFraction;
use crate::model::{ItemId, Itemset, TransactionDatabase};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CountedItemset {
    pub itemset: Itemset,
    pub count: u64,
}

/// One rung of the ladder: the C_k table and the L_k table.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AprioriLevel {
    pub k: usize,
    pub candidates: Vec<CountedItemset>,
    pub survivors: Vec<CountedItemset>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AprioriResult {
    pub mode: AprioriMode,
    pub levels: Vec<AprioriLevel>,
    /// Every survivor in threshold mode; the last level's survivors in
    /// lowest-count mode.
    pub frequent: Vec<CountedItemset>,
}

impl AprioriResult {
    /// Frequent itemsets of size ≥ 2 that are not contained in another
    /// frequent itemset.
    pub fn maximal_multi_item(&self) -> Vec<&CountedItemset> {
        self.frequent
            .iter()
            .filter(|c| c.itemset.len() >= 2)
            .filter(|c| {
                !self.frequent.iter().any(|o| o.itemset.len() > c.itemset.len() && c.itemset.is_subset(&o.itemset))
            })
            .collect()
    }
}

/// Joins itemsets sharing all but their last member, then removes any
/// candidate with a (k-1)-subset outside `prev`. Output is sorted.
pub fn generate_candidates_join(prev: &[Itemset]) -> Vec<Itemset> {
    let mut sorted: Vec<&Itemset> = prev.iter().collect();
    sorted.sort();
    sorted.dedup();
    let known: HashSet<&Itemset> = sorted.iter().copied().collect();

    let mut out = Vec::new();
    for (i, a) in sorted.iter().enumerate() {
        let Some((a_last, a_prefix)) = a.members().split_last() else {
            continue;
        };
        for b in &sorted[i + 1..] {
            let Some((b_last, b_prefix)) = b.members().split_last() else {
                continue;
            };
            if a_prefix != b_prefix {
                // sorted order groups each prefix together
                break;
            }
            debug_assert!(a_last < b_last);
            let candidate = a.union(&Itemset::singleton(*b_last));
            if candidate.maximal_subsets().all(|s| known.contains(&s)) {
                out.push(candidate);
            }
        }
    }
    out
}

/// All k-subsets of `selection`, in lexicographic order of selection
/// position.
pub fn generate_candidates_universe(selection: &[ItemId], k: usize) -> Result<Vec<Itemset>> {
    if k == 0 || k > selection.len() {
        return Err(Error::Config(format!("cannot form {k}-itemsets from {} selected items", selection.len())));
    }
    let n = selection.len();
    let mut out = Vec::new();
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        out.push(idx.iter().map(|&i| selection[i]).collect());
        // advance the rightmost index that still has room
        let Some(pos) = (0..k).rev().find(|&p| idx[p] < n - k + p) else {
            return Ok(out);
        };
        idx[pos] += 1;
        for p in pos + 1..k {
            idx[p] = idx[p - 1] + 1;
        }
    }
}

/// Keeps candidates with `count / total >= min_support`, in order.
pub fn prune_threshold(candidates: &[CountedItemset], min_support: MetricFraction, total: u64) -> Vec<CountedItemset> {
    candidates.iter().filter(|c| min_support.admits(c.count, total)).cloned().collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LowestCountPrune {
    pub survivors: Vec<CountedItemset>,
    /// Every candidate shared the minimum count, so nothing was removed.
    pub tied: bool,
}

/// Removes every candidate whose count equals the level minimum. When all
/// candidates are tied the level is returned unchanged and `tied` is set.
pub fn prune_lowest(candidates: &[CountedItemset]) -> LowestCountPrune {
    let Some(min) = candidates.iter().map(|c| c.count).min() else {
        return LowestCountPrune { survivors: Vec::new(), tied: true };
    };
    let survivors: Vec<CountedItemset> = candidates.iter().filter(|c| c.count > min).cloned().collect();
    if survivors.is_empty() {
        LowestCountPrune { survivors: candidates.to_vec(), tied: true }
    } else {
        LowestCountPrune { survivors, tied: false }
    }
}

fn count_level(db: &TransactionDatabase, sets: Vec<Itemset>, workers: usize) -> Result<Vec<CountedItemset>> {
    let counts = db.count_many(&sets, workers)?;
    Ok(sets.into_iter().zip(counts).map(|(itemset, count)| CountedItemset { itemset, count }).collect())
}

pub fn run_apriori(db: &TransactionDatabase, selection: &[ItemId], config: &MiningConfig) -> Result<AprioriResult> {
    if selection.is_empty() {
        return Err(Error::Config("apriori needs at least one selected item".into()));
    }
    for id in selection {
        db.validate(&Itemset::singleton(*id))?;
    }
    match config.apriori_mode {
        AprioriMode::Threshold => run_threshold(db, selection, config),
        AprioriMode::LowestCount => run_lowest_count(db, selection, config),
    }
}

fn run_threshold(db: &TransactionDatabase, selection: &[ItemId], config: &MiningConfig) -> Result<AprioriResult> {
    let mut levels = Vec::new();
    let mut frequent = Vec::new();
    let mut sets: Vec<Itemset> = selection.iter().map(|id| Itemset::singleton(*id)).collect();
    let mut k = 1;
    while !sets.is_empty() {
        let candidates = count_level(db, sets, config.workers)?;
        let survivors = prune_threshold(&candidates, config.min_support, db.total());
        frequent.extend(survivors.iter().cloned());
        let prev: Vec<Itemset> = survivors.iter().map(|c| c.itemset.clone()).collect();
        levels.push(AprioriLevel { k, candidates, survivors });
        sets = generate_candidates_join(&prev);
        k += 1;
    }
    Ok(AprioriResult { mode: AprioriMode::Threshold, levels, frequent })
}

fn run_lowest_count(db: &TransactionDatabase, selection: &[ItemId], config: &MiningConfig) -> Result<AprioriResult> {
    let mut levels: Vec<AprioriLevel> = Vec::new();
    for k in 1..=selection.len() {
        let candidates = count_level(db, generate_candidates_universe(selection, k)?, config.workers)?;
        let LowestCountPrune { survivors, tied } = prune_lowest(&candidates);
        let prev: HashSet<&Itemset> =
            levels.last().map(|l| l.survivors.iter().map(|c| &c.itemset).collect()).unwrap_or_default();
        let survivors: Vec<CountedItemset> = survivors
            .into_iter()
            .filter(|c| c.count > 0)
            .filter(|c| k == 1 || c.itemset.maximal_subsets().all(|s| prev.contains(&s)))
            .collect();
        if survivors.is_empty() {
            break;
        }
        let done = tied || survivors.len() == 1;
        levels.push(AprioriLevel { k, candidates, survivors });
        if done {
            break;
        }
    }
    let frequent = levels.last().map(|l| l.survivors.clone()).unwrap_or_default();
    Ok(AprioriResult { mode: AprioriMode::LowestCount, levels, frequent })
}

/// Every rule `A -> frequent \ A` for non-empty proper subsets `A`, ordered
/// by antecedent size and then lexicographically. Verdicts use
/// `min_confidence` only.
pub fn derive_rules(
    db: &TransactionDatabase,
    frequent: &Itemset,
    min_confidence: MetricFraction,
) -> Result<Vec<AssociationRule>> {
    let n = frequent.len();
    if n < 2 {
        return Err(Error::Config("rule derivation needs an itemset of at least two items".into()));
    }
    if n > 20 {
        return Err(Error::Config(format!("rule derivation is limited to 20 items, got {n}")));
    }
    db.validate(frequent)?;
    let members = frequent.members();
    let mut antecedents: Vec<Itemset> = (1u32..(1 << n) - 1)
        .map(|mask| members.iter().enumerate().filter(|(i, _)| mask & (1 << i) != 0).map(|(_, id)| *id).collect())
        .collect();
    antecedents.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));

    let joint = db.count_support(frequent)?;
    let bases = db.count_many(&antecedents, 1)?;
    antecedents
        .into_iter()
        .zip(bases)
        .map(|(antecedent, base)| {
            let consequent = frequent.difference(&antecedent);
            AssociationRule::from_counts(
                antecedent,
                consequent,
                joint,
                base,
                db.total(),
                MetricFraction::ZERO,
                min_confidence,
            )
        })
        .collect()
}
