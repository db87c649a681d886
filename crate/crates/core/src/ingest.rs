//! Transaction files, alias tables and the binary item matrix.
//!
//! A transaction file holds one bill per line: `<txn_id>\t<item>, <item>, ...`.
//! Blank lines and lines starting with `#` are skipped; CRLF endings are
//! accepted. Item names are canonicalized (trimmed, lowercased, whitespace
//! collapsed, then mapped through the alias table) and deduplicated per bill.

use std::collections::{BTreeMap, HashSet};
use std::fs;
use std::io::BufRead;
use std::path::Path;

use crate::error::{Error, Result};
use crate::model::{normalize_name, ItemCatalog, ItemId, Itemset, Transaction, TransactionDatabase};

/// Maps alternative spellings to canonical item names.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct AliasTable {
    map: BTreeMap<String, String>,
}

impl AliasTable {
    pub fn new() -> Self {
        Self::default()
    }

    /// The spellings every run understands: `suger` and `sabu`.
    pub fn builtin() -> Self {
        let mut table = Self::new();
        table.insert("suger", "sugar");
        table.insert("sabu", "shabu");
        table
    }

    pub fn insert(&mut self, alias: &str, canonical: &str) {
        self.map.insert(normalize_name(alias), normalize_name(canonical));
    }

    pub fn extend(&mut self, other: AliasTable) {
        self.map.extend(other.map);
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }

    /// Parses `alias,canonical` lines; `#` comments and blank lines are skipped.
    pub fn parse(text: &str) -> Result<Self> {
        let mut table = Self::new();
        for (i, line) in text.lines().enumerate() {
            let line_no = i + 1;
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (alias, canonical) = line
                .split_once(',')
                .ok_or_else(|| Error::Parse { line: line_no, message: "expected `alias,canonical`".into() })?;
            if alias.trim().is_empty() || canonical.trim().is_empty() {
                return Err(Error::EmptyItem { line: line_no });
            }
            table.insert(alias, canonical);
        }
        Ok(table)
    }

    pub fn read(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
        Self::parse(&text)
    }

    /// Canonical name for `raw`, or `None` when it is blank.
    pub fn canonicalize(&self, raw: &str) -> Option<String> {
        let name = normalize_name(raw);
        if name.is_empty() {
            return None;
        }
        Some(self.map.get(&name).cloned().unwrap_or(name))
    }
}

/// Reads a transaction stream into a database. The catalog is built in
/// order of first appearance.
pub fn parse_transactions(input: impl BufRead, aliases: &AliasTable) -> Result<TransactionDatabase> {
    let mut catalog = ItemCatalog::new();
    let mut transactions = Vec::new();
    let mut seen_ids = HashSet::new();

    for (i, line) in input.lines().enumerate() {
        let line_no = i + 1;
        let line = line.map_err(|e| Error::Parse { line: line_no, message: e.to_string() })?;
        let line = line.strip_suffix('\r').unwrap_or(&line);
        if line.trim().is_empty() || line.trim_start().starts_with('#') {
            continue;
        }
        let (txn_id, items) = line.split_once('\t').ok_or_else(|| Error::Parse {
            line: line_no,
            message: "expected `<txn_id>\\t<item>, <item>, ...`".into(),
        })?;
        let txn_id = txn_id.trim();
        if txn_id.is_empty() {
            return Err(Error::Parse { line: line_no, message: "missing transaction id".into() });
        }
        if !seen_ids.insert(txn_id.to_owned()) {
            return Err(Error::DuplicateTxnId { line: line_no, id: txn_id.to_owned() });
        }
        let mut ids = Vec::new();
        for raw in items.split(',') {
            let canonical = aliases.canonicalize(raw).ok_or(Error::EmptyItem { line: line_no })?;
            ids.push(catalog.insert_spelling(raw.trim(), &canonical));
        }
        transactions.push(Transaction { txn_id: txn_id.to_owned(), items: Itemset::new(ids) });
    }

    TransactionDatabase::new(catalog, transactions)
}

pub fn parse_transactions_str(text: &str, aliases: &AliasTable) -> Result<TransactionDatabase> {
    parse_transactions(text.as_bytes(), aliases)
}

pub fn read_transactions(path: &Path, aliases: &AliasTable) -> Result<TransactionDatabase> {
    let file = fs::File::open(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    parse_transactions(std::io::BufReader::new(file), aliases)
}

/// Serializes a database back to the transaction file format using
/// canonical names.
pub fn write_transactions(db: &TransactionDatabase) -> Result<String> {
    let mut out = String::new();
    for t in db.transactions() {
        out.push_str(&t.txn_id);
        out.push('\t');
        out.push_str(&db.itemset_names(&t.items)?.join(", "));
        out.push('\n');
    }
    Ok(out)
}

/// Resolves item names to ids, keeping the order given.
pub fn select_items<S: AsRef<str>>(db: &TransactionDatabase, names: &[S]) -> Result<Vec<ItemId>> {
    let mut ids = Vec::with_capacity(names.len());
    for name in names {
        let name = name.as_ref();
        let id = db.catalog().lookup(name).ok_or_else(|| Error::UnknownItemName {
            name: name.to_owned(),
            near: db.catalog().near_matches(name, 3),
        })?;
        if ids.contains(&id) {
            return Err(Error::Config(format!("item {name:?} is selected twice")));
        }
        ids.push(id);
    }
    Ok(ids)
}

/// Presence/absence coding of the selected items, one row per transaction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BinaryMatrix {
    item_columns: Vec<ItemId>,
    column_names: Vec<String>,
    txn_ids: Vec<String>,
    rows: Vec<Vec<u8>>,
}

impl BinaryMatrix {
    pub fn item_columns(&self) -> &[ItemId] {
        &self.item_columns
    }

    pub fn column_names(&self) -> &[String] {
        &self.column_names
    }

    pub fn txn_ids(&self) -> &[String] {
        &self.txn_ids
    }

    pub fn rows(&self) -> &[Vec<u8>] {
        &self.rows
    }

    pub fn cell(&self, row: usize, col: usize) -> u8 {
        self.rows[row][col]
    }

    /// The selected items present in transaction `row`.
    pub fn decode_row(&self, row: usize) -> Itemset {
        self.rows[row].iter().zip(&self.item_columns).filter(|(bit, _)| **bit == 1).map(|(_, id)| *id).collect()
    }

    /// Comma-separated export with a `txn_id,<item>...` header.
    pub fn to_csv(&self) -> Result<String> {
        let mut writer = csv::Writer::from_writer(Vec::new());
        let header = std::iter::once("txn_id").chain(self.column_names.iter().map(String::as_str));
        writer.write_record(header).map_err(csv_err)?;
        for (txn_id, row) in self.txn_ids.iter().zip(&self.rows) {
            let cells = std::iter::once(txn_id.clone()).chain(row.iter().map(u8::to_string));
            writer.write_record(cells).map_err(csv_err)?;
        }
        let bytes = writer.into_inner().map_err(|e| Error::Io(e.to_string()))?;
        String::from_utf8(bytes).map_err(|e| Error::Io(e.to_string()))
    }
}

pub(crate) fn csv_err(e: csv::Error) -> Error {
    Error::Io(e.to_string())
}

pub fn encode_binary(db: &TransactionDatabase, selection: &[ItemId]) -> Result<BinaryMatrix> {
    let column_names = selection.iter().map(|id| db.item_name(*id).map(str::to_owned)).collect::<Result<Vec<_>>>()?;
    let rows = (0..db.transactions().len())
        .map(|r| selection.iter().map(|id| u8::from(db.row_contains(r, *id))).collect())
        .collect();
    Ok(BinaryMatrix {
        item_columns: selection.to_vec(),
        column_names,
        txn_ids: db.transactions().iter().map(|t| t.txn_id.clone()).collect(),
        rows,
    })
}
