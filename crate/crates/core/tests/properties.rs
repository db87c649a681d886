mod common;

use basketmine::{
    classify_quadrant, derive_rules, encode_binary, mine_pairwise_rules, parse_transactions_str, run_apriori,
    write_transactions, AliasTable, Analyses, AnalysisReport, AprioriMode, ItemId, Itemset, MetricFraction,
    MiningConfig, ReportFormat,
};
use common::{to_itemset, RawDb};
use proptest::prelude::*;

fn raw_db(max_items: usize, max_rows: usize) -> impl Strategy<Value = RawDb> {
    (1..=max_items).prop_flat_map(move |items| {
        prop::collection::vec(prop::collection::vec(any::<bool>(), items), 1..=max_rows).prop_map(move |bits| RawDb {
            items,
            rows: bits
                .into_iter()
                .map(|row| row.into_iter().enumerate().filter(|(_, b)| *b).map(|(i, _)| i).collect())
                .collect(),
        })
    })
}

fn fraction() -> impl Strategy<Value = MetricFraction> {
    (1u64..=20).prop_flat_map(|den| (0..=den).prop_map(move |num| MetricFraction::new(num, den).unwrap()))
}

fn all_ids(raw: &RawDb) -> Vec<ItemId> {
    (0..raw.items as u32).map(ItemId::new).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn counts_ignore_transaction_order(raw in raw_db(6, 20), seed in any::<u64>()) {
        let db = raw.to_db();
        let mut shuffled = raw.clone();
        let n = shuffled.rows.len();
        for i in (1..n).rev() {
            let j = (seed.wrapping_mul(i as u64 + 7) % (i as u64 + 1)) as usize;
            shuffled.rows.swap(i, j);
        }
        let other = shuffled.to_db();
        for s in raw.all_itemsets() {
            let set = to_itemset(&s);
            prop_assert_eq!(db.count_support(&set).unwrap(), other.count_support(&set).unwrap());
        }
    }

    #[test]
    fn counts_ignore_worker_count(raw in raw_db(8, 30), workers in 2usize..9) {
        let db = raw.to_db();
        let sets: Vec<Itemset> = raw.all_itemsets().iter().map(|s| to_itemset(s)).collect();
        prop_assert_eq!(db.count_many(&sets, 1).unwrap(), db.count_many(&sets, workers).unwrap());
    }

    #[test]
    fn reserialized_database_parses_identically(raw in raw_db(6, 15)) {
        let mut raw = raw;
        raw.rows.retain(|r| !r.is_empty());
        prop_assume!(!raw.rows.is_empty());
        let first = parse_transactions_str(&write_transactions(&raw.to_db()).unwrap(), &AliasTable::builtin()).unwrap();
        let text = write_transactions(&first).unwrap();
        let again = parse_transactions_str(&text, &AliasTable::builtin()).unwrap();
        prop_assert_eq!(write_transactions(&again).unwrap(), text);
        prop_assert_eq!(first.catalog(), again.catalog());
        prop_assert_eq!(first.transactions(), again.transactions());
    }

    #[test]
    fn matrix_rows_decode_to_selected_items(raw in raw_db(8, 15), pick in prop::collection::vec(any::<bool>(), 8)) {
        let db = raw.to_db();
        let selection: Vec<ItemId> = all_ids(&raw).into_iter().filter(|id| pick[id.index()]).rev().collect();
        let matrix = encode_binary(&db, &selection).unwrap();
        prop_assert_eq!(matrix.rows().len() as u64, db.total());
        let chosen: Itemset = selection.iter().copied().collect();
        for (r, t) in db.transactions().iter().enumerate() {
            let expected: Itemset = t.items.members().iter().copied().filter(|id| chosen.contains(*id)).collect();
            prop_assert_eq!(matrix.decode_row(r), expected);
        }
    }

    #[test]
    fn lowering_thresholds_never_fails_a_rule(
        raw in raw_db(5, 20),
        (s_lo, s_hi) in (fraction(), fraction()),
        (c_lo, c_hi) in (fraction(), fraction()),
    ) {
        prop_assume!(raw.items >= 2);
        let db = raw.to_db();
        let strict = MiningConfig { min_support: s_lo.max(s_hi), min_confidence: c_lo.max(c_hi), both_directions: true, ..Default::default() };
        let loose = MiningConfig { min_support: s_lo.min(s_hi), min_confidence: c_lo.min(c_hi), ..strict.clone() };
        let strict_rules = mine_pairwise_rules(&db, &all_ids(&raw), &strict).unwrap();
        let loose_rules = mine_pairwise_rules(&db, &all_ids(&raw), &loose).unwrap();
        for (s, l) in strict_rules.iter().zip(&loose_rules) {
            prop_assert!(!s.passes || l.passes);
            if let Some(c) = s.confidence {
                // confidence · count(X) = count(X ∪ Y)
                let cx = db.count_support(&s.antecedent).unwrap();
                prop_assert_eq!(c, MetricFraction::new(s.support.numerator(), cx).unwrap());
                prop_assert!(c >= s.support);
            }
        }
    }

    #[test]
    fn quadrants_are_monotone(acc in fraction(), cov in fraction(), more in fraction()) {
        let config = MiningConfig::default();
        let base = classify_quadrant(acc, cov, &config);
        let up_acc = classify_quadrant(acc.max(more), cov, &config);
        let up_cov = classify_quadrant(acc, cov.max(more), &config);
        prop_assert!(!base.high_accuracy() || up_acc.high_accuracy());
        prop_assert_eq!(base.high_coverage(), up_acc.high_coverage());
        prop_assert!(!base.high_coverage() || up_cov.high_coverage());
        prop_assert_eq!(base.high_accuracy(), up_cov.high_accuracy());
    }

    #[test]
    fn threshold_output_is_downward_closed(raw in raw_db(8, 25), min in fraction()) {
        let db = raw.to_db();
        let config = MiningConfig { apriori_mode: AprioriMode::Threshold, min_support: min, ..Default::default() };
        let result = run_apriori(&db, &all_ids(&raw), &config).unwrap();
        let frequent: Vec<&Itemset> = result.frequent.iter().map(|c| &c.itemset).collect();
        for c in &result.frequent {
            prop_assert!(min.admits(c.count, db.total()));
            prop_assert!(c.count >= min.min_count(db.total()));
            for sub in c.itemset.maximal_subsets().filter(|s| !s.is_empty()) {
                prop_assert!(frequent.contains(&&sub));
            }
        }
        for level in &result.levels {
            for c in level.candidates.iter().chain(&level.survivors) {
                prop_assert_eq!(c.itemset.len(), level.k);
                prop_assert_eq!(c.count, db.count_support(&c.itemset).unwrap());
            }
            for s in &level.survivors {
                prop_assert!(level.candidates.contains(s));
            }
        }
    }

    #[test]
    fn lowest_count_terminates_within_selection_size(raw in raw_db(8, 25)) {
        let db = raw.to_db();
        let selection = all_ids(&raw);
        let config = MiningConfig { apriori_mode: AprioriMode::LowestCount, ..Default::default() };
        let result = run_apriori(&db, &selection, &config).unwrap();
        prop_assert!(result.levels.len() <= selection.len());
        let any_item_occurs = raw.rows.iter().any(|r| !r.is_empty());
        prop_assert_eq!(!result.levels.is_empty(), any_item_occurs);
        if let Some(last) = result.levels.last() {
            prop_assert!(!last.survivors.is_empty());
            prop_assert_eq!(&result.frequent, &last.survivors);
        }
        for level in &result.levels {
            for s in &level.survivors {
                prop_assert!(level.candidates.contains(s));
                prop_assert!(s.count > 0);
            }
        }
    }

    #[test]
    fn derived_rule_confidence_bounds(raw in raw_db(6, 20)) {
        let db = raw.to_db();
        let config = MiningConfig { apriori_mode: AprioriMode::Threshold, min_support: MetricFraction::new(1, 5).unwrap(), ..Default::default() };
        let result = run_apriori(&db, &all_ids(&raw), &config).unwrap();
        for c in result.frequent.iter().filter(|c| c.itemset.len() >= 2) {
            let rules = derive_rules(&db, &c.itemset, config.min_confidence).unwrap();
            prop_assert_eq!(rules.len(), (1usize << c.itemset.len()) - 2);
            for r in rules {
                let base = db.count_support(&r.antecedent).unwrap();
                prop_assert!(base >= c.count);
                let conf = r.confidence.unwrap();
                prop_assert!(conf >= r.support);
                prop_assert_eq!(r.antecedent.union(&r.consequent), c.itemset.clone());
                prop_assert!(r.antecedent.is_disjoint(&r.consequent));
            }
        }
    }

    #[test]
    fn structured_report_round_trips(raw in raw_db(5, 20), precision in 0u32..3) {
        prop_assume!(raw.items >= 2);
        let db = raw.to_db();
        let config = MiningConfig { display_precision: precision, ..Default::default() };
        let report = basketmine::analyze(&db, &[], &config, Analyses::ALL, "random", None).unwrap();
        let text = report.render(ReportFormat::Structured).unwrap();
        let parsed = AnalysisReport::from_structured(&text).unwrap();
        prop_assert_eq!(&parsed, &report);
        let rows = parsed.association.iter().flatten().chain(parsed.apriori.iter().flat_map(|a| &a.rules));
        for row in rows {
            prop_assert_eq!(basketmine::report::redisplay(row.support_num, row.support_den, precision).unwrap(), row.support_pct.clone());
            if let (Some(n), Some(d)) = (row.confidence_num, row.confidence_den) {
                prop_assert_eq!(Some(basketmine::report::redisplay(n, d, precision).unwrap()), row.confidence_pct.clone());
            }
        }
    }

    #[test]
    fn percent_matches_float_rounding_away_from_ties(num in 0u64..500, den in 1u64..500) {
        prop_assume!(num <= den);
        let exact = MetricFraction::new(num, den).unwrap().percent(1);
        let scaled = num as f64 * 1000.0 / den as f64;
        // skip values within float noise of a .5 boundary
        prop_assume!((scaled.fract() - 0.5).abs() > 1e-6);
        prop_assert_eq!(exact, format!("{:.1}%", scaled.round() / 10.0));
    }
}
