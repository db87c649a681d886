#![allow(dead_code)]

//! Shared fixtures and an exhaustive-scan oracle.
//!
//! The oracle works on plain `Vec<Vec<usize>>` transactions and `contains`
//! scans; it never touches the library's bitset counting.

use std::path::{Path, PathBuf};

use basketmine::{AliasTable, ItemCatalog, ItemId, Itemset, Transaction, TransactionDatabase};
use rand::Rng;

pub const FOUR_ITEMS: [&str; 4] = ["sunflower oil", "sugar", "rava", "dhoop"];

pub fn data_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("data")
}

pub fn fixture_path() -> PathBuf {
    data_dir().join("bills.txt")
}

pub fn fixture_db() -> TransactionDatabase {
    let aliases = AliasTable::read(&data_dir().join("aliases.txt")).unwrap();
    basketmine::read_transactions(&fixture_path(), &aliases).unwrap()
}

pub fn four_items(db: &TransactionDatabase) -> Vec<ItemId> {
    basketmine::select_items(db, &FOUR_ITEMS).unwrap()
}

pub fn set(db: &TransactionDatabase, names: &[&str]) -> Itemset {
    names.iter().map(|n| db.catalog().lookup(n).unwrap()).collect()
}

/// The expected 0/1 coding of the fixture, typed in by hand: rows are bills
/// 1..=15, columns are sunflower oil, sugar, rava, dhoop.
pub const GOLDEN_MATRIX: [[u8; 4]; 15] = [
    [0, 0, 0, 0],
    [1, 0, 0, 0],
    [1, 1, 1, 1],
    [1, 1, 1, 0],
    [0, 0, 1, 1],
    [0, 1, 1, 0],
    [1, 0, 1, 0],
    [0, 1, 1, 0],
    [0, 1, 0, 0],
    [1, 1, 1, 0],
    [0, 1, 1, 0],
    [1, 0, 0, 0],
    [0, 1, 1, 0],
    [1, 1, 1, 0],
    [1, 1, 0, 1],
];

/// Transactions as item-index lists over `items` items.
#[derive(Debug, Clone)]
pub struct RawDb {
    pub items: usize,
    pub rows: Vec<Vec<usize>>,
}

impl RawDb {
    pub fn golden() -> Self {
        RawDb { items: 4, rows: GOLDEN_MATRIX.iter().map(|r| (0..4).filter(|c| r[*c] == 1).collect()).collect() }
    }

    pub fn random(rng: &mut impl Rng, max_items: usize, max_rows: usize) -> Self {
        let items = rng.gen_range(1..=max_items);
        let n = rng.gen_range(1..=max_rows);
        let density: f64 = rng.gen_range(0.05..0.95);
        let rows = (0..n).map(|_| (0..items).filter(|_| rng.gen_bool(density)).collect()).collect();
        RawDb { items, rows }
    }

    /// Library database whose `ItemId(i)` is item `i`.
    pub fn to_db(&self) -> TransactionDatabase {
        let mut catalog = ItemCatalog::new();
        let ids: Vec<ItemId> = (0..self.items).map(|i| catalog.insert(&format!("i{i}"))).collect();
        let transactions = self
            .rows
            .iter()
            .enumerate()
            .map(|(t, row)| Transaction { txn_id: format!("t{t}"), items: row.iter().map(|i| ids[*i]).collect() })
            .collect();
        TransactionDatabase::new(catalog, transactions).unwrap()
    }

    pub fn total(&self) -> u64 {
        self.rows.len() as u64
    }

    /// Number of rows containing every item of `set`.
    pub fn count(&self, set: &[usize]) -> u64 {
        self.rows.iter().filter(|row| set.iter().all(|i| row.contains(i))).count() as u64
    }

    /// Every subset of the item universe, as sorted index lists.
    pub fn all_itemsets(&self) -> Vec<Vec<usize>> {
        (0u32..1 << self.items).map(|mask| (0..self.items).filter(|i| mask & (1 << i) != 0).collect()).collect()
    }

    /// Non-empty itemsets whose count reaches `num/den` of the total.
    pub fn frequent(&self, num: u64, den: u64) -> Vec<(Vec<usize>, u64)> {
        let mut out: Vec<(Vec<usize>, u64)> = self
            .all_itemsets()
            .into_iter()
            .filter(|s| !s.is_empty())
            .map(|s| {
                let c = self.count(&s);
                (s, c)
            })
            .filter(|(_, c)| c * den >= num * self.total())
            .collect();
        out.sort();
        out
    }
}

pub fn to_itemset(indices: &[usize]) -> Itemset {
    indices.iter().map(|i| ItemId::new(*i as u32)).collect()
}

pub fn to_indices(set: &Itemset) -> Vec<usize> {
    set.members().iter().map(|id| id.index()).collect()
}
