//! Market-basket mining over retail transaction records.
//!
//! Bills are read into an immutable [`TransactionDatabase`], optionally
//! coded as a 0/1 item matrix, and analysed three ways:
//!
//! * pairwise association rules scored by support and confidence,
//! * "if x then y" rules scored by accuracy and coverage and placed in a
//!   2×2 quadrant grid,
//! * level-wise Apriori, either with a minimum-support threshold or by
//!   repeatedly dropping the lowest-count candidates.
//!
//! All metrics are exact count ratios ([`MetricFraction`]); percentages only
//! appear when a report is rendered.
//!
//! ```
//! use basketmine::{parse_transactions_str, select_items, mine_pairwise_rules, AliasTable, MiningConfig};
//!
//! let db = parse_transactions_str("1\tBread, Milk\n2\tBread\n", &AliasTable::builtin()).unwrap();
//! let items = select_items(&db, &["bread", "milk"]).unwrap();
//! let rules = mine_pairwise_rules(&db, &items, &MiningConfig::default()).unwrap();
//! assert_eq!(rules[0].confidence.unwrap().to_string(), "1/2");
//! ```

pub mod apriori;
pub mod association;
mod bitset;
pub mod cli;
pub mod config;
pub mod error;
pub mod fraction;
pub mod induction;
pub mod ingest;
pub mod model;
pub mod pipeline;
pub mod report;

pub use apriori::{
    derive_rules, generate_candidates_join, generate_candidates_universe, prune_lowest, prune_threshold, run_apriori,
    AprioriLevel, AprioriResult, CountedItemset, LowestCountPrune,
};
pub use association::{confidence, mine_pairwise_rules, rule_pairs, support, AssociationRule};
pub use config::{AprioriMode, MiningConfig};
pub use error::{Error, Result};
pub use fraction::{fraction, MetricFraction};
pub use induction::{accuracy, classify_quadrant, coverage, mine_induction_rules, InductionRule, Quadrant};
pub use ingest::{
    encode_binary, parse_transactions, parse_transactions_str, read_transactions, select_items, write_transactions,
    AliasTable, BinaryMatrix,
};
pub use model::{normalize_name, ItemCatalog, ItemId, Itemset, Transaction, TransactionDatabase};
pub use pipeline::{analyze, Analyses};
pub use report::{placement_suggestions, AnalysisReport, ReportFormat};
