//! C ABI for basketmine.
//!
//! Databases are opaque `BmDatabase` handles created by `bm_database_parse`
//! or `bm_database_read` and released with `bm_database_free`. Every call
//! returns a `BmStatus`; on failure `bm_last_error` describes the problem
//! until the next call on the same thread. Strings handed out by the library
//! must be released with `bm_string_free`.

#![allow(clippy::missing_safety_doc)]

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{self, AssertUnwindSafe};
use std::path::Path;
use std::ptr;

use basketmine::{
    analyze, classify_quadrant, confidence, encode_binary, read_transactions, select_items, AliasTable, Analyses,
    AprioriMode, Error, ItemId, Itemset, MetricFraction, MiningConfig, Quadrant, ReportFormat, TransactionDatabase,
};

/// Run the association analysis in `bm_analyze`.
pub const BM_ANALYSIS_ASSOCIATION: u32 = 1;
/// Run the rule-induction analysis in `bm_analyze`.
pub const BM_ANALYSIS_INDUCTION: u32 = 2;
/// Run Apriori in `bm_analyze`.
pub const BM_ANALYSIS_APRIORI: u32 = 4;

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BmStatus {
    Ok = 0,
    NullArgument = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    UnknownItem = 4,
    Config = 5,
    Undefined = 6,
    Io = 7,
    Panic = 8,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BmFormat {
    Text = 0,
    Structured = 1,
    Delimited = 2,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BmAprioriMode {
    Threshold = 0,
    LowestCount = 1,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BmQuadrant {
    HighAccHighCov = 0,
    HighAccLowCov = 1,
    LowAccHighCov = 2,
    LowAccLowCov = 3,
}

/// An exact ratio of two counts.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BmFraction {
    pub numerator: u64,
    pub denominator: u64,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BmConfig {
    pub min_support: BmFraction,
    pub min_confidence: BmFraction,
    pub min_accuracy: BmFraction,
    pub min_coverage: BmFraction,
    pub apriori_mode: BmAprioriMode,
    pub display_precision: u32,
    pub both_directions: bool,
    pub workers: u32,
}

/// Opaque transaction database.
pub struct BmDatabase {
    inner: TransactionDatabase,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_last_error(message: String) {
    let message = CString::new(message.replace('\0', " ")).expect("nul bytes removed");
    LAST_ERROR.with(|slot| *slot.borrow_mut() = Some(message));
}

fn status_of(err: &Error) -> BmStatus {
    match err {
        Error::UnknownItemId(_) | Error::UnknownItemName { .. } => BmStatus::UnknownItem,
        Error::ZeroDenominator | Error::Config(_) => BmStatus::Config,
        Error::UndefinedRatio { .. } => BmStatus::Undefined,
        Error::EmptyItem { .. } | Error::Parse { .. } | Error::DuplicateTxnId { .. } | Error::EmptyDatabase => {
            BmStatus::Parse
        }
        Error::Io(_) => BmStatus::Io,
    }
}

struct Failure(BmStatus, String);

impl From<Error> for Failure {
    fn from(err: Error) -> Self {
        Failure(status_of(&err), err.to_string())
    }
}

/// Runs `body`, recording any failure (including a panic) as the last error.
fn guard(body: impl FnOnce() -> Result<(), Failure>) -> BmStatus {
    LAST_ERROR.with(|slot| *slot.borrow_mut() = None);
    match panic::catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => BmStatus::Ok,
        Ok(Err(Failure(status, message))) => {
            set_last_error(message);
            status
        }
        Err(_) => {
            set_last_error("internal panic".to_owned());
            BmStatus::Panic
        }
    }
}

fn null(what: &str) -> Failure {
    Failure(BmStatus::NullArgument, format!("{what} is null"))
}

unsafe fn str_arg<'a>(ptr: *const c_char, what: &str) -> Result<&'a str, Failure> {
    if ptr.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(ptr).to_str().map_err(|_| Failure(BmStatus::InvalidUtf8, format!("{what} is not valid UTF-8")))
}

unsafe fn opt_str_arg<'a>(ptr: *const c_char, what: &str) -> Result<Option<&'a str>, Failure> {
    if ptr.is_null() {
        Ok(None)
    } else {
        str_arg(ptr, what).map(Some)
    }
}

unsafe fn db_arg<'a>(db: *const BmDatabase) -> Result<&'a TransactionDatabase, Failure> {
    db.as_ref().map(|d| &d.inner).ok_or_else(|| null("database"))
}

unsafe fn write_out<T>(out: *mut T, value: T) -> Result<(), Failure> {
    if out.is_null() {
        return Err(null("output pointer"));
    }
    out.write(value);
    Ok(())
}

fn split_names(csv: Option<&str>) -> Vec<&str> {
    csv.map(|s| s.split(',').map(str::trim).filter(|s| !s.is_empty()).collect()).unwrap_or_default()
}

fn selection(db: &TransactionDatabase, csv: Option<&str>) -> Result<Vec<ItemId>, Failure> {
    Ok(select_items(db, &split_names(csv))?)
}

fn itemset(db: &TransactionDatabase, csv: &str) -> Result<Itemset, Failure> {
    Ok(selection(db, Some(csv))?.into_iter().collect())
}

fn aliases_from(text: Option<&str>) -> Result<AliasTable, Failure> {
    let mut aliases = AliasTable::builtin();
    if let Some(text) = text {
        aliases.extend(AliasTable::parse(text)?);
    }
    Ok(aliases)
}

fn to_fraction(f: BmFraction) -> Result<MetricFraction, Failure> {
    Ok(MetricFraction::new(f.numerator, f.denominator)?)
}

fn from_fraction(f: MetricFraction) -> BmFraction {
    BmFraction { numerator: f.numerator(), denominator: f.denominator() }
}

fn to_config(c: &BmConfig) -> Result<MiningConfig, Failure> {
    let config = MiningConfig {
        min_support: to_fraction(c.min_support)?,
        min_confidence: to_fraction(c.min_confidence)?,
        min_accuracy: to_fraction(c.min_accuracy)?,
        min_coverage: to_fraction(c.min_coverage)?,
        apriori_mode: match c.apriori_mode {
            BmAprioriMode::Threshold => AprioriMode::Threshold,
            BmAprioriMode::LowestCount => AprioriMode::LowestCount,
        },
        display_precision: c.display_precision,
        both_directions: c.both_directions,
        workers: c.workers.max(1) as usize,
    };
    config.validate()?;
    Ok(config)
}

fn into_c_string(text: String) -> Result<*mut c_char, Failure> {
    CString::new(text)
        .map(CString::into_raw)
        .map_err(|_| Failure(BmStatus::Io, "output contains a nul byte".to_owned()))
}

/// Message for the most recent failure on this thread, or null. The
/// pointer stays valid until the next `bm_*` call on the same thread.
#[no_mangle]
pub extern "C" fn bm_last_error() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Fills `out` with the default thresholds (50% support, 70% confidence,
/// 50% accuracy, 70% coverage) and lowest-count Apriori.
#[no_mangle]
pub unsafe extern "C" fn bm_config_default(out: *mut BmConfig) -> BmStatus {
    guard(|| {
        let d = MiningConfig::default();
        write_out(
            out,
            BmConfig {
                min_support: from_fraction(d.min_support),
                min_confidence: from_fraction(d.min_confidence),
                min_accuracy: from_fraction(d.min_accuracy),
                min_coverage: from_fraction(d.min_coverage),
                apriori_mode: BmAprioriMode::LowestCount,
                display_precision: d.display_precision,
                both_directions: d.both_directions,
                workers: 1,
            },
        )
    })
}

/// Parses transaction text. `aliases` holds extra `alias,canonical` lines
/// and may be null.
#[no_mangle]
pub unsafe extern "C" fn bm_database_parse(
    text: *const c_char,
    aliases: *const c_char,
    out: *mut *mut BmDatabase,
) -> BmStatus {
    guard(|| {
        let text = str_arg(text, "text")?;
        let aliases = aliases_from(opt_str_arg(aliases, "aliases")?)?;
        let db = basketmine::parse_transactions_str(text, &aliases)?;
        write_out(out, Box::into_raw(Box::new(BmDatabase { inner: db })))
    })
}

/// Reads a transaction file. `aliases_path` may be null.
#[no_mangle]
pub unsafe extern "C" fn bm_database_read(
    path: *const c_char,
    aliases_path: *const c_char,
    out: *mut *mut BmDatabase,
) -> BmStatus {
    guard(|| {
        let path = str_arg(path, "path")?;
        let mut aliases = AliasTable::builtin();
        if let Some(p) = opt_str_arg(aliases_path, "aliases_path")? {
            aliases.extend(AliasTable::read(Path::new(p))?);
        }
        let db = read_transactions(Path::new(path), &aliases)?;
        write_out(out, Box::into_raw(Box::new(BmDatabase { inner: db })))
    })
}

/// Releases a database handle. Null is ignored.
#[no_mangle]
pub unsafe extern "C" fn bm_database_free(db: *mut BmDatabase) {
    if !db.is_null() {
        drop(Box::from_raw(db));
    }
}

#[no_mangle]
pub unsafe extern "C" fn bm_database_total(db: *const BmDatabase, out: *mut u64) -> BmStatus {
    guard(|| write_out(out, db_arg(db)?.total()))
}

/// Number of distinct canonical items.
#[no_mangle]
pub unsafe extern "C" fn bm_database_item_count(db: *const BmDatabase, out: *mut usize) -> BmStatus {
    guard(|| write_out(out, db_arg(db)?.catalog().len()))
}

/// Transactions containing every comma-separated item in `items`. An empty
/// string is the empty itemset.
#[no_mangle]
pub unsafe extern "C" fn bm_count_support(db: *const BmDatabase, items: *const c_char, out: *mut u64) -> BmStatus {
    guard(|| {
        let db = db_arg(db)?;
        let set = itemset(db, str_arg(items, "items")?)?;
        write_out(out, db.count_support(&set)?)
    })
}

/// Confidence of `antecedent -> consequent`, both comma-separated item lists.
#[no_mangle]
pub unsafe extern "C" fn bm_confidence(
    db: *const BmDatabase,
    antecedent: *const c_char,
    consequent: *const c_char,
    out: *mut BmFraction,
) -> BmStatus {
    guard(|| {
        let db = db_arg(db)?;
        let x = itemset(db, str_arg(antecedent, "antecedent")?)?;
        let y = itemset(db, str_arg(consequent, "consequent")?)?;
        write_out(out, from_fraction(confidence(db, &x, &y)?))
    })
}

#[no_mangle]
pub unsafe extern "C" fn bm_classify_quadrant(
    accuracy: BmFraction,
    coverage: BmFraction,
    config: *const BmConfig,
    out: *mut BmQuadrant,
) -> BmStatus {
    guard(|| {
        let config = to_config(config.as_ref().ok_or_else(|| null("config"))?)?;
        let q = classify_quadrant(to_fraction(accuracy)?, to_fraction(coverage)?, &config);
        write_out(
            out,
            match q {
                Quadrant::HighAccHighCov => BmQuadrant::HighAccHighCov,
                Quadrant::HighAccLowCov => BmQuadrant::HighAccLowCov,
                Quadrant::LowAccHighCov => BmQuadrant::LowAccHighCov,
                Quadrant::LowAccLowCov => BmQuadrant::LowAccLowCov,
            },
        )
    })
}

/// The 0/1 matrix as comma-separated text. `items` may be null for every
/// catalog item. Free the result with `bm_string_free`.
#[no_mangle]
pub unsafe extern "C" fn bm_encode_matrix(
    db: *const BmDatabase,
    items: *const c_char,
    out: *mut *mut c_char,
) -> BmStatus {
    guard(|| {
        let db = db_arg(db)?;
        let mut ids = selection(db, opt_str_arg(items, "items")?)?;
        if ids.is_empty() {
            ids = db.catalog().ids().collect();
        }
        let csv = encode_binary(db, &ids)?.to_csv()?;
        write_out(out, into_c_string(csv)?)
    })
}

/// Runs the analyses selected by `analyses` (a mask of `BM_ANALYSIS_*`) and
/// renders the report without a timestamp. `items` may be null for every
/// catalog item. Free the result with `bm_string_free`.
#[no_mangle]
pub unsafe extern "C" fn bm_analyze(
    db: *const BmDatabase,
    items: *const c_char,
    config: *const BmConfig,
    analyses: u32,
    format: BmFormat,
    out: *mut *mut c_char,
) -> BmStatus {
    guard(|| {
        let db = db_arg(db)?;
        let ids = selection(db, opt_str_arg(items, "items")?)?;
        let config = to_config(config.as_ref().ok_or_else(|| null("config"))?)?;
        let which = Analyses {
            association: analyses & BM_ANALYSIS_ASSOCIATION != 0,
            induction: analyses & BM_ANALYSIS_INDUCTION != 0,
            apriori: analyses & BM_ANALYSIS_APRIORI != 0,
        };
        let report = analyze(db, &ids, &config, which, "<memory>", None)?;
        let format = match format {
            BmFormat::Text => ReportFormat::Text,
            BmFormat::Structured => ReportFormat::Structured,
            BmFormat::Delimited => ReportFormat::Delimited,
        };
        write_out(out, into_c_string(report.render(format)?)?)
    })
}

/// Releases a string returned by this library. Null is ignored.
#[no_mangle]
pub unsafe extern "C" fn bm_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
