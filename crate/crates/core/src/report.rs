//! Report assembly and rendering.
//!
//! An [`AnalysisReport`] is self-contained: every row carries item names,
//! the exact counts behind each metric, and the percentage shown for it.
//! Verdicts are copied from the analyses and never recomputed from the
//! rounded display values.

use std::fmt::Write as _;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::apriori::{AprioriResult, CountedItemset};
use crate::association::AssociationRule;
use crate::config::{AprioriMode, MiningConfig};
use crate::error::{Error, Result};
use crate::fraction::MetricFraction;
use crate::induction::{InductionRule, Quadrant};
use crate::ingest::csv_err;
use crate::model::{Itemset, TransactionDatabase};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReportFormat {
    /// Aligned tables for reading.
    Text,
    /// Pretty-printed JSON with exact counts.
    Structured,
    /// Comma-separated rows, one per rule or itemset.
    Delimited,
}

impl FromStr for ReportFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "text" => Ok(ReportFormat::Text),
            "structured" => Ok(ReportFormat::Structured),
            "delimited" => Ok(ReportFormat::Delimited),
            other => Err(Error::Config(format!("unknown format {other:?} (expected text, structured or delimited)"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportMetadata {
    pub input: String,
    pub transactions: u64,
    pub items: Vec<String>,
    pub config: MiningConfig,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub timestamp: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RuleRow {
    pub antecedent: Vec<String>,
    pub consequent: Vec<String>,
    pub support_num: u64,
    pub support_den: u64,
    pub support_pct: String,
    pub confidence_num: Option<u64>,
    pub confidence_den: Option<u64>,
    pub confidence_pct: Option<String>,
    pub passes: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InductionRow {
    pub antecedent: String,
    pub consequent: String,
    pub accuracy_num: Option<u64>,
    pub accuracy_den: Option<u64>,
    pub accuracy_pct: Option<String>,
    pub coverage_num: u64,
    pub coverage_den: u64,
    pub coverage_pct: String,
    pub quadrant: Option<Quadrant>,
    pub passes: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ItemsetRow {
    pub items: Vec<String>,
    pub support_count: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LevelRows {
    pub k: usize,
    pub candidates: Vec<ItemsetRow>,
    pub survivors: Vec<ItemsetRow>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AprioriSection {
    pub mode: AprioriMode,
    pub levels: Vec<LevelRows>,
    pub frequent: Vec<ItemsetRow>,
    pub rules: Vec<RuleRow>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnalysisReport {
    pub metadata: ReportMetadata,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub association: Option<Vec<RuleRow>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub induction: Option<Vec<InductionRow>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub apriori: Option<AprioriSection>,
    #[serde(default)]
    pub suggestions: Vec<String>,
}

fn names(db: &TransactionDatabase, set: &Itemset) -> Result<Vec<String>> {
    Ok(db.itemset_names(set)?.into_iter().map(str::to_owned).collect())
}

fn rule_row(db: &TransactionDatabase, rule: &AssociationRule, precision: u32) -> Result<RuleRow> {
    Ok(RuleRow {
        antecedent: names(db, &rule.antecedent)?,
        consequent: names(db, &rule.consequent)?,
        support_num: rule.support.numerator(),
        support_den: rule.support.denominator(),
        support_pct: rule.support.percent(precision),
        confidence_num: rule.confidence.map(|c| c.numerator()),
        confidence_den: rule.confidence.map(|c| c.denominator()),
        confidence_pct: rule.confidence.map(|c| c.percent(precision)),
        passes: rule.passes,
    })
}

fn itemset_rows(db: &TransactionDatabase, sets: &[CountedItemset]) -> Result<Vec<ItemsetRow>> {
    sets.iter().map(|c| Ok(ItemsetRow { items: names(db, &c.itemset)?, support_count: c.count })).collect()
}

impl AnalysisReport {
    pub fn new(metadata: ReportMetadata) -> Self {
        AnalysisReport { metadata, association: None, induction: None, apriori: None, suggestions: Vec::new() }
    }

    fn precision(&self) -> u32 {
        self.metadata.config.display_precision
    }

    pub fn add_association(&mut self, db: &TransactionDatabase, rules: &[AssociationRule]) -> Result<()> {
        let precision = self.precision();
        let rows = rules.iter().map(|r| rule_row(db, r, precision)).collect::<Result<_>>()?;
        self.association = Some(rows);
        Ok(())
    }

    pub fn add_induction(&mut self, db: &TransactionDatabase, rules: &[InductionRule]) -> Result<()> {
        let precision = self.precision();
        let rows = rules
            .iter()
            .map(|r| {
                Ok(InductionRow {
                    antecedent: db.item_name(r.antecedent_item)?.to_owned(),
                    consequent: db.item_name(r.consequent_item)?.to_owned(),
                    accuracy_num: r.accuracy.map(|a| a.numerator()),
                    accuracy_den: r.accuracy.map(|a| a.denominator()),
                    accuracy_pct: r.accuracy.map(|a| a.percent(precision)),
                    coverage_num: r.coverage.numerator(),
                    coverage_den: r.coverage.denominator(),
                    coverage_pct: r.coverage.percent(precision),
                    quadrant: r.quadrant,
                    passes: r.passes,
                })
            })
            .collect::<Result<_>>()?;
        self.induction = Some(rows);
        Ok(())
    }

    /// Adds the level tables, the rules derived from the frequent itemsets,
    /// and the placement suggestions.
    pub fn add_apriori(
        &mut self,
        db: &TransactionDatabase,
        result: &AprioriResult,
        rules: &[AssociationRule],
    ) -> Result<()> {
        let precision = self.precision();
        let levels = result
            .levels
            .iter()
            .map(|l| {
                Ok(LevelRows {
                    k: l.k,
                    candidates: itemset_rows(db, &l.candidates)?,
                    survivors: itemset_rows(db, &l.survivors)?,
                })
            })
            .collect::<Result<_>>()?;
        self.apriori = Some(AprioriSection {
            mode: result.mode,
            levels,
            frequent: itemset_rows(db, &result.frequent)?,
            rules: rules.iter().map(|r| rule_row(db, r, precision)).collect::<Result<_>>()?,
        });
        self.suggestions = placement_suggestions(db, result)?;
        Ok(())
    }

    pub fn render(&self, format: ReportFormat) -> Result<String> {
        match format {
            ReportFormat::Text => Ok(render_text(self)),
            ReportFormat::Structured => {
                let mut out = serde_json::to_string_pretty(self).map_err(|e| Error::Io(e.to_string()))?;
                out.push('\n');
                Ok(out)
            }
            ReportFormat::Delimited => render_delimited(self),
        }
    }

    pub fn from_structured(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse { line: e.line(), message: e.to_string() })
    }
}

/// One co-location suggestion per maximal frequent itemset with at least
/// two items, most frequent first, ties broken by item order.
pub fn placement_suggestions(db: &TransactionDatabase, result: &AprioriResult) -> Result<Vec<String>> {
    let mut sets = result.maximal_multi_item();
    sets.sort_by(|a, b| b.count.cmp(&a.count).then_with(|| a.itemset.cmp(&b.itemset)));
    sets.into_iter()
        .map(|c| {
            Ok(format!(
                "Co-locate: {} (appear together in {} of {} transactions)",
                db.itemset_names(&c.itemset)?.join(", "),
                c.count,
                db.total()
            ))
        })
        .collect()
}

fn cell(pct: &str, num: u64, den: u64) -> String {
    format!("{pct} ({num}/{den})")
}

fn optional_cell(pct: &Option<String>, num: Option<u64>, den: Option<u64>) -> String {
    match (pct, num, den) {
        (Some(p), Some(n), Some(d)) => cell(p, n, d),
        _ => "undefined".to_owned(),
    }
}

fn verdict(passes: bool) -> String {
    if passes { "True" } else { "False" }.to_owned()
}

fn table(out: &mut String, headers: &[&str], rows: &[Vec<String>]) {
    let mut widths: Vec<usize> = headers.iter().map(|h| h.chars().count()).collect();
    for row in rows {
        for (w, c) in widths.iter_mut().zip(row) {
            *w = (*w).max(c.chars().count());
        }
    }
    let line = |cells: &mut dyn Iterator<Item = &str>| {
        let padded: Vec<String> =
            cells.zip(&widths).map(|(c, w)| format!("{c}{}", " ".repeat(w - c.chars().count()))).collect();
        padded.join(" | ").trim_end().to_owned()
    };
    out.push_str(&line(&mut headers.iter().copied()));
    out.push('\n');
    let rule: Vec<String> = widths.iter().map(|w| "-".repeat(*w)).collect();
    out.push_str(&rule.join("-+-"));
    out.push('\n');
    for row in rows {
        out.push_str(&line(&mut row.iter().map(String::as_str)));
        out.push('\n');
    }
}

fn rule_table(out: &mut String, rows: &[RuleRow]) {
    let body: Vec<Vec<String>> = rows
        .iter()
        .map(|r| {
            vec![
                r.antecedent.join(", "),
                r.consequent.join(", "),
                cell(&r.support_pct, r.support_num, r.support_den),
                optional_cell(&r.confidence_pct, r.confidence_num, r.confidence_den),
                verdict(r.passes),
            ]
        })
        .collect();
    table(out, &["X", "Y", "Support", "Confidence", "Is in rule?"], &body);
}

fn itemset_table(out: &mut String, rows: &[ItemsetRow]) {
    let body: Vec<Vec<String>> = rows.iter().map(|r| vec![r.items.join(", "), r.support_count.to_string()]).collect();
    table(out, &["Item", "Support count"], &body);
}

fn render_text(report: &AnalysisReport) -> String {
    let meta = &report.metadata;
    let config = &meta.config;
    let p = config.display_precision;
    let mut out = String::new();
    let _ = writeln!(out, "Market basket analysis");
    let _ = writeln!(out, "Input: {}", meta.input);
    let _ = writeln!(out, "Transactions: {}", meta.transactions);
    let _ = writeln!(out, "Items: {}", meta.items.join(", "));
    let _ = writeln!(
        out,
        "Thresholds: min support {}, min confidence {}, min accuracy {}, min coverage {}",
        config.min_support.percent(p),
        config.min_confidence.percent(p),
        config.min_accuracy.percent(p),
        config.min_coverage.percent(p),
    );
    let _ = writeln!(out, "Apriori mode: {}", config.apriori_mode);
    if let Some(ts) = &meta.timestamp {
        let _ = writeln!(out, "Generated: {ts}");
    }

    if let Some(rows) = &report.association {
        let _ = writeln!(out, "\nAssociation rules");
        rule_table(&mut out, rows);
    }

    if let Some(rows) = &report.induction {
        let _ = writeln!(out, "\nRule induction");
        let body: Vec<Vec<String>> = rows
            .iter()
            .map(|r| {
                vec![
                    r.antecedent.clone(),
                    r.consequent.clone(),
                    optional_cell(&r.accuracy_pct, r.accuracy_num, r.accuracy_den),
                    cell(&r.coverage_pct, r.coverage_num, r.coverage_den),
                    r.quadrant.map_or("undefined", Quadrant::description).to_owned(),
                    verdict(r.passes),
                ]
            })
            .collect();
        table(&mut out, &["X", "Y", "Accuracy", "Coverage", "Quadrant", "Is in rule?"], &body);
    }

    if let Some(section) = &report.apriori {
        let _ = writeln!(out, "\nApriori ({})", section.mode);
        for level in &section.levels {
            let _ = writeln!(out, "\nC{}", level.k);
            itemset_table(&mut out, &level.candidates);
            let _ = writeln!(out, "\nL{}", level.k);
            itemset_table(&mut out, &level.survivors);
        }
        if !section.rules.is_empty() {
            let _ =
                writeln!(out, "\nRules from frequent itemsets (min confidence {})", config.min_confidence.percent(p));
            rule_table(&mut out, &section.rules);
        }
    }

    if !report.suggestions.is_empty() {
        let _ = writeln!(out, "\nSuggestions");
        for s in &report.suggestions {
            let _ = writeln!(out, "- {s}");
        }
    }
    out
}

fn opt<T: ToString>(v: &Option<T>) -> String {
    v.as_ref().map(T::to_string).unwrap_or_default()
}

fn render_delimited(report: &AnalysisReport) -> Result<String> {
    let meta = &report.metadata;
    let mut out = String::new();
    let _ = writeln!(out, "# input: {}", meta.input);
    let _ = writeln!(out, "# transactions: {}", meta.transactions);
    let _ = writeln!(out, "# items: {}", meta.items.join("; "));
    let _ = writeln!(out, "# apriori mode: {}", meta.config.apriori_mode);
    if let Some(ts) = &meta.timestamp {
        let _ = writeln!(out, "# generated: {ts}");
    }

    let mut sections: Vec<Vec<Vec<String>>> = Vec::new();
    let rule_header = || {
        [
            "section",
            "antecedent",
            "consequent",
            "support_num",
            "support_den",
            "support_pct",
            "confidence_num",
            "confidence_den",
            "confidence_pct",
            "passes",
        ]
        .map(str::to_owned)
        .to_vec()
    };
    let rule_record = |section: &str, r: &RuleRow| {
        vec![
            section.to_owned(),
            r.antecedent.join("; "),
            r.consequent.join("; "),
            r.support_num.to_string(),
            r.support_den.to_string(),
            r.support_pct.clone(),
            opt(&r.confidence_num),
            opt(&r.confidence_den),
            opt(&r.confidence_pct),
            r.passes.to_string(),
        ]
    };

    if let Some(rows) = &report.association {
        let mut s = vec![rule_header()];
        s.extend(rows.iter().map(|r| rule_record("association", r)));
        sections.push(s);
    }
    if let Some(rows) = &report.induction {
        let mut s = vec![[
            "section",
            "antecedent",
            "consequent",
            "accuracy_num",
            "accuracy_den",
            "accuracy_pct",
            "coverage_num",
            "coverage_den",
            "coverage_pct",
            "quadrant",
            "passes",
        ]
        .map(str::to_owned)
        .to_vec()];
        s.extend(rows.iter().map(|r| {
            vec![
                "induction".to_owned(),
                r.antecedent.clone(),
                r.consequent.clone(),
                opt(&r.accuracy_num),
                opt(&r.accuracy_den),
                opt(&r.accuracy_pct),
                r.coverage_num.to_string(),
                r.coverage_den.to_string(),
                r.coverage_pct.clone(),
                r.quadrant.map(Quadrant::label).unwrap_or_default().to_owned(),
                r.passes.to_string(),
            ]
        }));
        sections.push(s);
    }
    if let Some(section) = &report.apriori {
        let mut s = vec![["section", "table", "k", "itemset", "support_count"].map(str::to_owned).to_vec()];
        for level in &section.levels {
            for (table, rows) in [("C", &level.candidates), ("L", &level.survivors)] {
                s.extend(rows.iter().map(|r| {
                    vec![
                        "apriori".to_owned(),
                        format!("{table}{}", level.k),
                        level.k.to_string(),
                        r.items.join("; "),
                        r.support_count.to_string(),
                    ]
                }));
            }
        }
        sections.push(s);
        if !section.rules.is_empty() {
            let mut s = vec![rule_header()];
            s.extend(section.rules.iter().map(|r| rule_record("apriori-rule", r)));
            sections.push(s);
        }
    }
    if !report.suggestions.is_empty() {
        let mut s = vec![vec!["section".to_owned(), "suggestion".to_owned()]];
        s.extend(report.suggestions.iter().map(|t| vec!["suggestion".to_owned(), t.clone()]));
        sections.push(s);
    }

    for records in sections {
        out.push('\n');
        let mut writer = csv::WriterBuilder::new().flexible(true).from_writer(Vec::new());
        for record in records {
            writer.write_record(&record).map_err(csv_err)?;
        }
        let bytes = writer.into_inner().map_err(|e| Error::Io(e.to_string()))?;
        out.push_str(&String::from_utf8(bytes).map_err(|e| Error::Io(e.to_string()))?);
    }
    Ok(out)
}

/// Re-derives a displayed percentage from its exact counts.
pub fn redisplay(num: u64, den: u64, precision: u32) -> Result<String> {
    Ok(MetricFraction::new(num, den)?.percent(precision))
}
