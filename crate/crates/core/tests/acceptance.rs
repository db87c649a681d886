//! Acceptance criteria. Runs without the libtest harness so that one
//! PASS/FAIL line per criterion is always printed.

mod common;

use std::panic::{self, AssertUnwindSafe};
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use basketmine::{
    accuracy, classify_quadrant, confidence, coverage, encode_binary, mine_pairwise_rules, run_apriori, support,
    AprioriMode, Itemset, MetricFraction, MiningConfig, Quadrant,
};
use common::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const RANDOM_DATABASES: usize = 240;
const SUPPORT_GRID: [(u64, u64); 4] = [(10, 100), (25, 100), (50, 100), (75, 100)];

fn pct(p: u64) -> MetricFraction {
    MetricFraction::new(p, 100).unwrap()
}

fn reference_config() -> MiningConfig {
    MiningConfig {
        min_support: pct(50),
        min_confidence: pct(70),
        min_accuracy: pct(50),
        min_coverage: pct(70),
        ..MiningConfig::default()
    }
}

fn golden_ingestion() -> String {
    let start = Instant::now();
    let db = fixture_db();
    let matrix = encode_binary(&db, &four_items(&db)).unwrap();
    let elapsed = start.elapsed();
    assert_eq!(matrix.rows().len(), 15);
    for (r, expected) in GOLDEN_MATRIX.iter().enumerate() {
        assert_eq!(matrix.rows()[r], expected.to_vec(), "row {}", r + 1);
    }
    let golden = std::fs::read_to_string(data_dir().join("bills_matrix.csv")).unwrap();
    assert_eq!(matrix.to_csv().unwrap(), golden);
    assert!(elapsed < Duration::from_secs(1), "took {elapsed:?}");
    format!("15x4 matrix bit-exact in {elapsed:?}")
}

fn golden_association_verdicts() -> String {
    let db = fixture_db();
    let rules = mine_pairwise_rules(&db, &four_items(&db), &reference_config()).unwrap();
    assert_eq!(rules.len(), 6);
    let verdicts: Vec<bool> = rules.iter().map(|r| r.passes).collect();
    assert_eq!(verdicts, [false, false, false, true, false, false]);
    let pass = &rules[3];
    assert_eq!(pass.antecedent, set(&db, &["sugar"]));
    assert_eq!(pass.consequent, set(&db, &["rava"]));
    assert_eq!((pass.support.numerator(), pass.support.denominator()), (8, 15));
    let conf = pass.confidence.unwrap();
    assert_eq!((conf.numerator(), conf.denominator()), (8, 10));
    "single True row sugar -> rava, support 8/15, confidence 8/10".into()
}

fn quadrant_replay() -> String {
    // reported (accuracy %, coverage %) pairs for the six fixture rules
    let reported = [(71, 44), (71, 44), (29, 44), (75, 75), (17, 75), (18, 69)];
    let expected = [false, false, false, true, false, false];
    let config = reference_config();
    let verdicts: Vec<bool> = reported
        .iter()
        .map(|(a, c)| classify_quadrant(pct(*a), pct(*c), &config) == Quadrant::HighAccHighCov)
        .collect();
    assert_eq!(verdicts, expected);
    "verdicts F,F,F,T,F,F".into()
}

fn apriori_ladder() -> String {
    let db = fixture_db();
    let config = MiningConfig { apriori_mode: AprioriMode::LowestCount, ..reference_config() };
    let result = run_apriori(&db, &four_items(&db), &config).unwrap();
    let survivors =
        |k: usize| -> Vec<Itemset> { result.levels[k - 1].survivors.iter().map(|c| c.itemset.clone()).collect() };
    assert_eq!(result.levels.len(), 3);
    assert_eq!(survivors(1), [set(&db, &["sunflower oil"]), set(&db, &["sugar"]), set(&db, &["rava"])]);
    assert_eq!(
        survivors(2),
        [set(&db, &["sunflower oil", "sugar"]), set(&db, &["sunflower oil", "rava"]), set(&db, &["sugar", "rava"])]
    );
    let triple = set(&db, &["sunflower oil", "sugar", "rava"]);
    assert_eq!(survivors(3), std::slice::from_ref(&triple));
    assert_eq!(result.levels[2].survivors[0].count, 4);

    let rules = basketmine::derive_rules(&db, &triple, config.min_confidence).unwrap();
    let rule = rules.iter().find(|r| r.antecedent == set(&db, &["sunflower oil", "sugar"])).unwrap();
    assert_eq!(rule.consequent, set(&db, &["rava"]));
    let conf = rule.confidence.unwrap();
    assert_eq!((conf.numerator(), conf.denominator()), (4, 5));
    assert!(rule.passes);
    "L1/L2/L3 membership match, triple count 4, {sunflower oil, sugar} -> rava passes at 4/5".into()
}

fn oracle_equivalence() -> String {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_ba5e);
    let mut checked_values = 0u64;
    for _ in 0..RANDOM_DATABASES {
        let raw = RawDb::random(&mut rng, 10, 30);
        let db = raw.to_db();
        let all = raw.all_itemsets();

        // (a) metric values against the scan oracle
        for s in &all {
            assert_eq!(db.count_support(&to_itemset(s)).unwrap(), raw.count(s));
        }
        for x in 0..raw.items {
            let xs = to_itemset(&[x]);
            let cx = raw.count(&[x]);
            assert_eq!(coverage(&db, &xs).unwrap(), MetricFraction::new(cx, raw.total()).unwrap());
            for y in 0..raw.items {
                if x == y {
                    continue;
                }
                let ys = to_itemset(&[y]);
                let cxy = raw.count(&[x.min(y), x.max(y)]);
                let sup = support(&db, &xs, &ys).unwrap();
                assert_eq!((sup.numerator(), sup.denominator()), (cxy, raw.total()));
                match (confidence(&db, &xs, &ys), accuracy(&db, &xs, &ys)) {
                    (Ok(c), Ok(a)) => {
                        assert!(cx > 0);
                        assert_eq!((c.numerator(), c.denominator()), (cxy, cx));
                        assert_eq!((a.numerator(), a.denominator()), (cxy, cx));
                    }
                    (Err(_), Err(_)) => assert_eq!(cx, 0),
                    other => panic!("confidence/accuracy disagree on definedness: {other:?}"),
                }
                checked_values += 4;
            }
        }

        // (b) threshold-mode apriori against brute-force enumeration
        let selection: Vec<_> = db.catalog().ids().collect();
        for (num, den) in SUPPORT_GRID {
            let config = MiningConfig {
                apriori_mode: AprioriMode::Threshold,
                min_support: MetricFraction::new(num, den).unwrap(),
                ..MiningConfig::default()
            };
            let result = run_apriori(&db, &selection, &config).unwrap();
            let mut got: Vec<(Vec<usize>, u64)> =
                result.frequent.iter().map(|c| (to_indices(&c.itemset), c.count)).collect();
            got.sort();
            assert_eq!(got, raw.frequent(num, den), "min support {num}/{den}");
        }

        // (c) anti-monotonicity over sampled pairs X ⊆ Y
        for (i, y) in all.iter().enumerate().step_by(7) {
            for x in all.iter().skip(i % 5).step_by(11) {
                if x.iter().all(|m| y.contains(m)) {
                    let cx = db.count_support(&to_itemset(x)).unwrap();
                    let cy = db.count_support(&to_itemset(y)).unwrap();
                    assert!(cx >= cy, "{x:?} ⊆ {y:?} but {cx} < {cy}");
                }
            }
        }
    }
    let elapsed = start.elapsed();
    assert!(elapsed < Duration::from_secs(60), "took {elapsed:?}");
    format!("{RANDOM_DATABASES} databases, {checked_values} pair metrics, in {elapsed:?}")
}

fn identity_properties() -> String {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_ba5e);
    for _ in 0..RANDOM_DATABASES {
        let raw = RawDb::random(&mut rng, 10, 30);
        let db = raw.to_db();
        for x in 0..raw.items {
            let xs = to_itemset(&[x]);
            let mut coverages = Vec::new();
            for y in 0..raw.items {
                if x == y {
                    continue;
                }
                let ys = to_itemset(&[y]);
                assert_eq!(accuracy(&db, &xs, &ys).ok(), confidence(&db, &xs, &ys).ok());
                assert_eq!(support(&db, &xs, &ys).unwrap(), support(&db, &ys, &xs).unwrap());
                let c = coverage(&db, &xs).unwrap();
                coverages.push((c.numerator(), c.denominator()));
            }
            coverages.dedup();
            assert!(coverages.len() <= 1, "coverage depends on consequent: {coverages:?}");
        }
    }
    format!("{RANDOM_DATABASES} databases")
}

fn run_cli(args: &[&str]) -> Vec<u8> {
    let output = Command::new(env!("CARGO_BIN_EXE_basketmine")).args(args).output().expect("run basketmine");
    assert!(output.status.success(), "{args:?}: {}", String::from_utf8_lossy(&output.stderr));
    output.stdout
}

fn determinism() -> String {
    let input = fixture_path();
    let input = input.to_str().unwrap();
    let items = FOUR_ITEMS.join(",");
    let mut runs = 0;
    for sub in ["encode", "assoc", "induct", "apriori", "report"] {
        for format in ["text", "structured", "delimited"] {
            for mode in ["lowest-count", "threshold"] {
                let base =
                    [sub, "--input", input, "--items", &items, "--format", format, "--mode", mode, "--no-timestamp"];
                let reference = run_cli(&[&base[..], &["--workers", "1"]].concat());
                assert!(!reference.is_empty());
                for workers in ["1", "3", "8"] {
                    let again = run_cli(&[&base[..], &["--workers", workers]].concat());
                    assert_eq!(again, reference, "{sub} {format} {mode} workers={workers}");
                    runs += 1;
                }
            }
        }
    }
    format!("{runs} repeated runs byte-identical")
}

type Criterion = (&'static str, fn() -> String);

fn main() -> ExitCode {
    let criteria: [Criterion; 7] = [
        ("1 golden ingestion", golden_ingestion),
        ("2 golden association verdicts", golden_association_verdicts),
        ("3 quadrant replay", quadrant_replay),
        ("4 apriori ladder", apriori_ladder),
        ("5 oracle equivalence", oracle_equivalence),
        ("6 identity properties", identity_properties),
        ("7 determinism", determinism),
    ];
    panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for (name, check) in criteria {
        match panic::catch_unwind(AssertUnwindSafe(check)) {
            Ok(detail) => println!("PASS  criterion {name}: {detail}"),
            Err(payload) => {
                failed += 1;
                let msg = payload
                    .downcast_ref::<String>()
                    .cloned()
                    .or_else(|| payload.downcast_ref::<&str>().map(|s| s.to_string()))
                    .unwrap_or_default();
                println!("FAIL  criterion {name}: {msg}");
            }
        }
    }
    let _ = panic::take_hook();
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
