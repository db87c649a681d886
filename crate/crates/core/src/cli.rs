//! Command-line front end.
//!
//! Exit codes: 0 on success, 1 for usage errors, 2 for data errors (unreadable
//! input, parse failures, unknown items).

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use crate::config::{AprioriMode, MiningConfig};
use crate::error::{Error, Result};
use crate::fraction::MetricFraction;
use crate::ingest::{encode_binary, read_transactions, select_items, AliasTable};
use crate::pipeline::{analyze, Analyses};
use crate::report::ReportFormat;

pub const EXIT_OK: u8 = 0;
pub const EXIT_USAGE: u8 = 1;
pub const EXIT_DATA: u8 = 2;

#[derive(Debug, Parser)]
#[command(name = "basketmine", version, about = "Market-basket mining over transaction files")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Emit the 0/1 item matrix.
    Encode(CommonArgs),
    /// Pairwise association rules (support / confidence).
    Assoc(CommonArgs),
    /// Rule induction (accuracy / coverage quadrants).
    Induct(CommonArgs),
    /// Level-wise Apriori tables, derived rules and placement suggestions.
    Apriori(CommonArgs),
    /// All three analyses.
    Report(CommonArgs),
}

#[derive(Debug, Args)]
struct CommonArgs {
    /// Transaction file (`<txn_id>\t<item>, <item>, ...`).
    #[arg(long)]
    input: PathBuf,
    /// Extra `alias,canonical` pairs, on top of the built-in ones.
    #[arg(long)]
    aliases: Option<PathBuf>,
    /// Comma-separated item names; defaults to every item in the input.
    #[arg(long)]
    items: Option<String>,
    /// e.g. `50%` or `0.5`.
    #[arg(long, default_value = "50%")]
    min_support: MetricFraction,
    #[arg(long, default_value = "70%")]
    min_confidence: MetricFraction,
    #[arg(long, default_value = "50%")]
    min_accuracy: MetricFraction,
    #[arg(long, default_value = "70%")]
    min_coverage: MetricFraction,
    #[arg(long, default_value = "lowest-count")]
    mode: AprioriMode,
    /// text, structured or delimited.
    #[arg(long, default_value = "text")]
    format: ReportFormat,
    /// Write the report here instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Leave the generation time out of the report.
    #[arg(long)]
    no_timestamp: bool,
    /// Decimal places for percentages.
    #[arg(long, default_value_t = 0)]
    precision: u32,
    /// List both `a -> b` and `b -> a` for every pair.
    #[arg(long)]
    both_directions: bool,
    /// Threads used for support counting.
    #[arg(long, default_value_t = 1)]
    workers: usize,
}

impl CommonArgs {
    fn config(&self) -> MiningConfig {
        MiningConfig {
            min_support: self.min_support,
            min_confidence: self.min_confidence,
            min_accuracy: self.min_accuracy,
            min_coverage: self.min_coverage,
            apriori_mode: self.mode,
            display_precision: self.precision,
            both_directions: self.both_directions,
            workers: self.workers.max(1),
        }
    }

    fn item_names(&self) -> Vec<String> {
        self.items
            .as_deref()
            .map(|s| s.split(',').map(str::trim).filter(|s| !s.is_empty()).map(str::to_owned).collect())
            .unwrap_or_default()
    }
}

/// Parses `args` (including the program name) and runs the command,
/// returning the process exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(err) => {
            let code = if err.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let rendered = err.render().to_string();
            let sink: &mut dyn Write = if err.use_stderr() { stderr } else { stdout };
            let _ = sink.write_all(rendered.as_bytes());
            return code;
        }
    };
    match execute(cli.command, stdout) {
        Ok(()) => EXIT_OK,
        Err(err) => {
            let _ = writeln!(stderr, "basketmine: {err}");
            if err.is_data_error() {
                EXIT_DATA
            } else {
                EXIT_USAGE
            }
        }
    }
}

fn execute(command: Command, stdout: &mut dyn Write) -> Result<()> {
    let (args, analyses) = match command {
        Command::Encode(args) => return encode(&args, stdout),
        Command::Assoc(args) => (args, Analyses { association: true, ..Analyses::NONE }),
        Command::Induct(args) => (args, Analyses { induction: true, ..Analyses::NONE }),
        Command::Apriori(args) => (args, Analyses { apriori: true, ..Analyses::NONE }),
        Command::Report(args) => (args, Analyses::ALL),
    };
    let config = args.config();
    config.validate()?;
    let (db, selection) = load(&args)?;
    let timestamp = (!args.no_timestamp).then(|| chrono::Utc::now().to_rfc3339_opts(chrono::SecondsFormat::Secs, true));
    let report = analyze(&db, &selection, &config, analyses, &args.input.display().to_string(), timestamp)?;
    emit(&args, &report.render(args.format)?, stdout)
}

fn load(args: &CommonArgs) -> Result<(crate::TransactionDatabase, Vec<crate::ItemId>)> {
    let mut aliases = AliasTable::builtin();
    if let Some(path) = &args.aliases {
        aliases.extend(AliasTable::read(path)?);
    }
    let db = read_transactions(&args.input, &aliases)?;
    let selection = select_items(&db, &args.item_names())?;
    Ok((db, selection))
}

fn encode(args: &CommonArgs, stdout: &mut dyn Write) -> Result<()> {
    let (db, selection) = load(args)?;
    let selection = if selection.is_empty() { db.catalog().ids().collect() } else { selection };
    let matrix = encode_binary(&db, &selection)?;
    let text = match args.format {
        ReportFormat::Structured => {
            let value = serde_json::json!({
                "columns": matrix.column_names(),
                "txn_ids": matrix.txn_ids(),
                "rows": matrix.rows(),
            });
            let mut s = serde_json::to_string_pretty(&value).map_err(|e| Error::Io(e.to_string()))?;
            s.push('\n');
            s
        }
        ReportFormat::Text | ReportFormat::Delimited => matrix.to_csv()?,
    };
    emit(args, &text, stdout)
}

fn emit(args: &CommonArgs, text: &str, stdout: &mut dyn Write) -> Result<()> {
    match &args.out {
        Some(path) => fs::write(path, text).map_err(|e| Error::Io(format!("{}: {e}", path.display()))),
        None => stdout.write_all(text.as_bytes()).map_err(Error::from),
    }
}
