//! Domain types and the support-counting engine.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::thread;

use serde::{Deserialize, Serialize};

use crate::bitset::Bits;
use crate::error::{Error, Result};

/// Dense catalog index, assigned in insertion order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ItemId(u32);

impl ItemId {
    pub const fn new(index: u32) -> Self {
        ItemId(index)
    }

    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Display for ItemId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}

/// Lowercases, trims and collapses internal whitespace runs.
pub fn normalize_name(raw: &str) -> String {
    raw.split_whitespace().map(str::to_lowercase).collect::<Vec<_>>().join(" ")
}

/// Canonical item names plus every raw spelling observed for them.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ItemCatalog {
    names: Vec<String>,
    index: HashMap<String, ItemId>,
    spellings: BTreeMap<String, String>,
}

impl ItemCatalog {
    pub fn new() -> Self {
        Self::default()
    }

    /// Returns the id of `canonical`, inserting it if new.
    pub fn insert(&mut self, canonical: &str) -> ItemId {
        if let Some(&id) = self.index.get(canonical) {
            return id;
        }
        let id = ItemId(self.names.len() as u32);
        self.names.push(canonical.to_owned());
        self.index.insert(canonical.to_owned(), id);
        id
    }

    /// Records that `raw` was read as `canonical`, inserting the canonical
    /// name if needed.
    pub fn insert_spelling(&mut self, raw: &str, canonical: &str) -> ItemId {
        let id = self.insert(canonical);
        for spelling in [raw.to_owned(), normalize_name(raw)] {
            if spelling != canonical {
                self.spellings.insert(spelling, canonical.to_owned());
            }
        }
        id
    }

    /// Resolves a canonical name, a recorded raw spelling, or anything that
    /// normalizes to one of those.
    pub fn lookup(&self, name: &str) -> Option<ItemId> {
        let direct =
            |n: &str| self.index.get(n).or_else(|| self.spellings.get(n).and_then(|c| self.index.get(c))).copied();
        direct(name).or_else(|| direct(&normalize_name(name)))
    }

    pub fn name(&self, id: ItemId) -> Option<&str> {
        self.names.get(id.index()).map(String::as_str)
    }

    pub fn contains(&self, id: ItemId) -> bool {
        id.index() < self.names.len()
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    /// All ids in catalog order.
    pub fn ids(&self) -> impl Iterator<Item = ItemId> + '_ {
        (0..self.names.len() as u32).map(ItemId)
    }

    pub fn entries(&self) -> impl Iterator<Item = (ItemId, &str)> + '_ {
        self.names.iter().enumerate().map(|(i, n)| (ItemId(i as u32), n.as_str()))
    }

    /// Raw spelling to canonical name, for spellings that differ.
    pub fn spellings(&self) -> &BTreeMap<String, String> {
        &self.spellings
    }

    /// Catalog names closest to `name`, best first.
    pub fn near_matches(&self, name: &str, limit: usize) -> Vec<String> {
        let wanted = normalize_name(name);
        let mut scored: Vec<(f64, &str)> = self
            .names
            .iter()
            .map(|n| (strsim::normalized_damerau_levenshtein(&wanted, n), n.as_str()))
            .filter(|(score, n)| *score >= 0.5 || n.contains(&wanted) || wanted.contains(*n))
            .collect();
        scored.sort_by(|a, b| b.0.total_cmp(&a.0).then_with(|| a.1.cmp(b.1)));
        scored.into_iter().take(limit).map(|(_, n)| n.to_owned()).collect()
    }
}

/// A set of items, stored as strictly ascending ids.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Itemset {
    members: Vec<ItemId>,
}

impl Itemset {
    pub fn empty() -> Self {
        Itemset::default()
    }

    pub fn singleton(id: ItemId) -> Self {
        Itemset { members: vec![id] }
    }

    pub fn new(ids: impl IntoIterator<Item = ItemId>) -> Self {
        let mut members: Vec<ItemId> = ids.into_iter().collect();
        members.sort_unstable();
        members.dedup();
        Itemset { members }
    }

    pub fn members(&self) -> &[ItemId] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, id: ItemId) -> bool {
        self.members.binary_search(&id).is_ok()
    }

    pub fn is_subset(&self, other: &Itemset) -> bool {
        self.members.iter().all(|id| other.contains(*id))
    }

    pub fn is_disjoint(&self, other: &Itemset) -> bool {
        self.members.iter().all(|id| !other.contains(*id))
    }

    pub fn union(&self, other: &Itemset) -> Itemset {
        Itemset::new(self.members.iter().chain(&other.members).copied())
    }

    pub fn difference(&self, other: &Itemset) -> Itemset {
        Itemset { members: self.members.iter().copied().filter(|id| !other.contains(*id)).collect() }
    }

    /// The `len() - 1` subsets obtained by dropping one member each.
    pub fn maximal_subsets(&self) -> impl Iterator<Item = Itemset> + '_ {
        (0..self.members.len()).map(move |skip| Itemset {
            members: self.members.iter().enumerate().filter(|(i, _)| *i != skip).map(|(_, id)| *id).collect(),
        })
    }
}

impl FromIterator<ItemId> for Itemset {
    fn from_iter<T: IntoIterator<Item = ItemId>>(iter: T) -> Self {
        Itemset::new(iter)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Transaction {
    pub txn_id: String,
    pub items: Itemset,
}

/// Immutable transaction store. All metrics are computed from its counts.
#[derive(Debug, Clone)]
pub struct TransactionDatabase {
    catalog: ItemCatalog,
    transactions: Vec<Transaction>,
    rows: Vec<Bits>,
}

impl TransactionDatabase {
    pub fn new(catalog: ItemCatalog, transactions: Vec<Transaction>) -> Result<Self> {
        if transactions.is_empty() {
            return Err(Error::EmptyDatabase);
        }
        for t in &transactions {
            if let Some(id) = t.items.members().iter().find(|id| !catalog.contains(**id)) {
                return Err(Error::UnknownItemId(*id));
            }
        }
        let width = catalog.len();
        let rows = transactions.iter().map(|t| Bits::from_ids(width, t.items.members())).collect();
        Ok(TransactionDatabase { catalog, transactions, rows })
    }

    /// Builds a database from lists of canonical names; transaction ids are
    /// `1..=n`.
    pub fn from_item_lists<S: AsRef<str>>(lists: &[Vec<S>]) -> Result<Self> {
        let mut catalog = ItemCatalog::new();
        let transactions = lists
            .iter()
            .enumerate()
            .map(|(i, items)| Transaction {
                txn_id: (i + 1).to_string(),
                items: items.iter().map(|n| catalog.insert(n.as_ref())).collect(),
            })
            .collect();
        Self::new(catalog, transactions)
    }

    pub fn catalog(&self) -> &ItemCatalog {
        &self.catalog
    }

    pub fn transactions(&self) -> &[Transaction] {
        &self.transactions
    }

    pub fn total(&self) -> u64 {
        self.transactions.len() as u64
    }

    pub fn item_name(&self, id: ItemId) -> Result<&str> {
        self.catalog.name(id).ok_or(Error::UnknownItemId(id))
    }

    pub fn itemset_names(&self, set: &Itemset) -> Result<Vec<&str>> {
        set.members().iter().map(|id| self.item_name(*id)).collect()
    }

    pub fn validate(&self, set: &Itemset) -> Result<()> {
        match set.members().iter().find(|id| !self.catalog.contains(**id)) {
            Some(id) => Err(Error::UnknownItemId(*id)),
            None => Ok(()),
        }
    }

    /// Number of transactions containing every member of `set`. The empty
    /// set is contained in every transaction.
    pub fn count_support(&self, set: &Itemset) -> Result<u64> {
        self.validate(set)?;
        let mask = self.mask(set);
        Ok(self.rows.iter().filter(|row| row.contains_all(&mask)).count() as u64)
    }

    /// Counts every itemset, splitting the transactions across `workers`
    /// threads. The result does not depend on `workers`.
    pub fn count_many(&self, sets: &[Itemset], workers: usize) -> Result<Vec<u64>> {
        for set in sets {
            self.validate(set)?;
        }
        let masks: Vec<Bits> = sets.iter().map(|s| self.mask(s)).collect();
        let workers = workers.clamp(1, self.rows.len());
        if workers == 1 || masks.is_empty() {
            return Ok(count_rows(&self.rows, &masks));
        }
        let chunk = self.rows.len().div_ceil(workers);
        let partials: Vec<Vec<u64>> = thread::scope(|scope| {
            let handles: Vec<_> = self
                .rows
                .chunks(chunk)
                .map(|rows| {
                    let masks = &masks;
                    scope.spawn(move || count_rows(rows, masks))
                })
                .collect();
            handles.into_iter().map(|h| h.join().expect("counting worker panicked")).collect()
        });
        let mut totals = vec![0u64; masks.len()];
        for partial in partials {
            for (total, n) in totals.iter_mut().zip(partial) {
                *total += n;
            }
        }
        Ok(totals)
    }

    /// Whether transaction `row` contains `id`.
    pub fn row_contains(&self, row: usize, id: ItemId) -> bool {
        self.rows[row].get(id.index())
    }

    fn mask(&self, set: &Itemset) -> Bits {
        Bits::from_ids(self.catalog.len(), set.members())
    }
}

fn count_rows(rows: &[Bits], masks: &[Bits]) -> Vec<u64> {
    let mut counts = vec![0u64; masks.len()];
    for row in rows {
        for (count, mask) in counts.iter_mut().zip(masks) {
            if row.contains_all(mask) {
                *count += 1;
            }
        }
    }
    counts
}
