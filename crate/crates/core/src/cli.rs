//! The `qsc` command-line front end.
//!
//! Exit codes: 0 success, 1 a check failed, 2 usage or input error, 3 a
//! request exceeds the computation budget. Output is byte-deterministic for
//! a fixed command line unless `--timing` is given.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::fmt::Write as _;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use crate::counting::{self, CountingError};
use crate::ring_series::Ring;
use crate::theorem_suite::{
    self, registry, Context, Profile, Status, SuiteError, VerificationReport, EXACT_SQUARES_LIMIT, TRUNC_LIMIT,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;

/// Version of the JSON report document.
pub const SCHEMA_VERSION: u32 = 1;
/// Largest `limit` for exact `p̄_k` tables.
pub const EXACT_OVERPARTITION_LIMIT: usize = 50_000;
/// Largest `k` for exact `p̄_k` tables.
pub const EXACT_OVERPARTITION_MAX_K: u32 = 64;

#[derive(Parser, Debug)]
#[command(name = "qsc", version, about = "Truncated q-series tables and congruence checks for overpartition k-tuples")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print p̄_k(n) or r_k(n) for 0 ≤ n ≤ limit.
    Coeff(CoeffArgs),
    /// Run registered checks and report their status.
    Verify(VerifyArgs),
    /// List registered checks.
    List(ListArgs),
    /// Merge JSON reports; per id the report with the larger bound wins.
    Report(ReportArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Function {
    /// Overpartition k-tuples p̄_k(n).
    Op,
    /// Representations as a sum of k squares r_k(n).
    Rk,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Args, Debug)]
struct Output {
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
    /// Write to this file instead of standard output.
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct CoeffArgs {
    #[arg(long = "fn", value_enum)]
    function: Function,
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
    k: u32,
    #[arg(long)]
    limit: usize,
    /// Reduce modulo M (2 ≤ M ≤ 2^32); exact integers otherwise.
    #[arg(long, value_parser = clap::value_parser!(u64).range(2..=1 << 32))]
    modulus: Option<u64>,
    #[command(flatten)]
    out: Output,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    /// Glob over check ids, e.g. `T2.*`.
    #[arg(long, conflicts_with = "all")]
    filter: Option<String>,
    /// Run every registered check (the default without --filter).
    #[arg(long)]
    all: bool,
    #[arg(long, default_value = "default")]
    profile: Profile,
    /// Override the profile's table order.
    #[arg(long)]
    trunc: Option<usize>,
    /// Record wall-clock time per check; output is no longer deterministic.
    #[arg(long)]
    timing: bool,
    #[command(flatten)]
    out: Output,
}

#[derive(Args, Debug)]
struct ListArgs {
    #[command(flatten)]
    out: Output,
}

#[derive(Args, Debug)]
struct ReportArgs {
    files: Vec<PathBuf>,
    #[command(flatten)]
    out: Output,
}

/// The JSON document written by `verify` and `report`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportDocument {
    pub schema: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub profile: Option<Profile>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub trunc: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub summary: Option<Summary>,
    pub reports: Vec<VerificationReport>,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub pass: u64,
    pub fail: u64,
    #[serde(rename = "skipped-budget")]
    pub skipped_budget: u64,
    pub informational: u64,
}

impl Summary {
    pub fn of(reports: &[VerificationReport]) -> Self {
        let mut s = Summary::default();
        for r in reports {
            match r.status {
                Status::Pass => s.pass += 1,
                Status::Fail => s.fail += 1,
                Status::SkippedBudget => s.skipped_budget += 1,
                Status::Informational => s.informational += 1,
            }
        }
        s
    }

    /// Exit code for a set of reports: failures dominate skips.
    pub fn exit_code(&self) -> i32 {
        if self.fail > 0 {
            EXIT_FAIL
        } else if self.skipped_budget > 0 {
            EXIT_BUDGET
        } else {
            EXIT_OK
        }
    }
}

struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Failure { code: EXIT_USAGE, message: message.into() }
    }

    fn budget(message: impl Into<String>) -> Self {
        Failure { code: EXIT_BUDGET, message: message.into() }
    }
}

impl From<SuiteError> for Failure {
    fn from(e: SuiteError) -> Self {
        Failure::usage(e.to_string())
    }
}

/// Parse `args` (including the program name), run the command and return
/// its exit code. Normal output goes to `stdout`, diagnostics to `stderr`.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() { stderr.write_all(text.as_bytes()) } else { stdout.write_all(text.as_bytes()) };
            return code;
        }
    };
    let result = match cli.command {
        Command::Coeff(a) => cmd_coeff(&a).and_then(|body| emit(&a.out, &body, stdout).map(|_| EXIT_OK)),
        Command::Verify(a) => cmd_verify(&a, stdout),
        Command::List(a) => emit(&a.out, &cmd_list(a.out.format), stdout).map(|_| EXIT_OK),
        Command::Report(a) => cmd_report(&a, stdout),
    };
    match result {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(stderr, "qsc: error: {}", f.message);
            f.code
        }
    }
}

fn emit(out: &Output, body: &str, stdout: &mut dyn Write) -> Result<(), Failure> {
    match &out.output {
        Some(path) => fs::write(path, body).map_err(|e| Failure::usage(format!("cannot write {}: {e}", path.display()))),
        None => stdout.write_all(body.as_bytes()).map_err(|e| Failure::usage(format!("cannot write output: {e}"))),
    }
}

fn cmd_coeff(a: &CoeffArgs) -> Result<String, Failure> {
    let ring = a.modulus.map_or(Ring::Exact, Ring::Modular);
    let (limit, max_k) = match (a.function, ring) {
        (_, Ring::Modular(_)) => (TRUNC_LIMIT, u32::MAX),
        (Function::Op, Ring::Exact) => (EXACT_OVERPARTITION_LIMIT, EXACT_OVERPARTITION_MAX_K),
        (Function::Rk, Ring::Exact) => (EXACT_SQUARES_LIMIT, EXACT_OVERPARTITION_MAX_K),
    };
    if a.limit > limit {
        return Err(Failure::budget(format!("limit {} exceeds the budget {limit} for this table", a.limit)));
    }
    if a.k > max_k {
        return Err(Failure::budget(format!("k = {} exceeds the budget {max_k} for exact tables", a.k)));
    }
    let series = match a.function {
        Function::Op => counting::overpartition_series(a.k, ring, a.limit).map(|t| t.into_series()),
        Function::Rk => counting::rk_series(a.k, ring, a.limit).map(|t| t.into_series()),
    }
    .map_err(|e: CountingError| Failure::usage(e.to_string()))?;
    let values: Vec<String> = (0..=a.limit).map(|n| series.coeff(n).expect("n ≤ trunc").to_string()).collect();

    let name = match a.function {
        Function::Op => "op",
        Function::Rk => "rk",
    };
    Ok(match a.out.format {
        Format::Csv => {
            let mut s = String::from("n,value\n");
            for (n, v) in values.iter().enumerate() {
                let _ = writeln!(s, "{n},{v}");
            }
            s
        }
        Format::Text => {
            let width = a.limit.to_string().len();
            let mut s = String::new();
            for (n, v) in values.iter().enumerate() {
                let _ = writeln!(s, "{n:>width$}  {v}");
            }
            s
        }
        Format::Json => {
            #[derive(Serialize)]
            struct Table<'a> {
                schema: u32,
                function: &'a str,
                k: u32,
                modulus: Option<u64>,
                limit: usize,
                values: &'a [String],
            }
            let table = Table { schema: SCHEMA_VERSION, function: name, k: a.k, modulus: a.modulus, limit: a.limit, values: &values };
            json(&table)
        }
    })
}

fn cmd_verify(a: &VerifyArgs, stdout: &mut dyn Write) -> Result<i32, Failure> {
    let filter = match (&a.filter, a.all) {
        (Some(f), _) => f.as_str(),
        (None, _) => "*",
    };
    let checks = theorem_suite::select(filter)?;
    let ctx = match a.trunc {
        Some(t) if t > TRUNC_LIMIT => {
            return Err(Failure::budget(format!("table order {t} exceeds the budget {TRUNC_LIMIT}")));
        }
        Some(t) => Context::with_trunc(a.profile, t),
        None => Context::new(a.profile),
    };
    let mut reports = theorem_suite::run_checks(&checks, &ctx)?;
    if !a.timing {
        reports.iter_mut().for_each(|r| r.elapsed_ms = 0);
    }
    let summary = Summary::of(&reports);
    let doc = ReportDocument {
        schema: SCHEMA_VERSION,
        profile: Some(a.profile),
        trunc: Some(ctx.trunc()),
        summary: Some(summary),
        reports,
    };
    emit(&a.out, &render_document(&doc, a.out.format), stdout)?;
    Ok(summary.exit_code())
}

fn cmd_list(format: Format) -> String {
    let checks = registry();
    match format {
        Format::Json => {
            #[derive(Serialize)]
            struct Entry {
                id: &'static str,
                kind: String,
                expectation: String,
                statement: &'static str,
                bounds: &'static str,
            }
            let entries: Vec<Entry> = checks
                .iter()
                .map(|c| Entry {
                    id: c.id,
                    kind: c.kind.to_string(),
                    expectation: format!("{:?}", c.expectation),
                    statement: c.statement,
                    bounds: c.bounds,
                })
                .collect();
            json(&entries)
        }
        Format::Csv => {
            let mut s = String::from("id,kind,statement,bounds\n");
            for c in checks {
                let _ = writeln!(s, "{},{},{},{}", c.id, c.kind, csv_field(c.statement), csv_field(c.bounds));
            }
            s
        }
        Format::Text => {
            let mut s = String::new();
            for c in checks {
                let _ = writeln!(s, "{:<13} {:<24} {}", c.id, c.kind.to_string(), c.statement);
                let _ = writeln!(s, "{:<13} {:<24} bounds: {}", "", "", c.bounds);
            }
            s
        }
    }
}

fn cmd_report(a: &ReportArgs, stdout: &mut dyn Write) -> Result<i32, Failure> {
    let docs = a.files.iter().map(|p| read_document(p)).collect::<Result<Vec<_>, _>>()?;
    let reports = merge_reports(docs.into_iter().flat_map(|d| d.reports));
    let summary = Summary::of(&reports);
    let doc = ReportDocument { schema: SCHEMA_VERSION, profile: None, trunc: None, summary: Some(summary), reports };
    emit(&a.out, &render_document(&doc, a.out.format), stdout)?;
    Ok(summary.exit_code())
}

fn read_document(path: &Path) -> Result<ReportDocument, Failure> {
    let text = fs::read_to_string(path).map_err(|e| Failure::usage(format!("cannot read {}: {e}", path.display())))?;
    let doc: ReportDocument =
        serde_json::from_str(&text).map_err(|e| Failure::usage(format!("{} is not a report: {e}", path.display())))?;
    if doc.schema != SCHEMA_VERSION {
        return Err(Failure::usage(format!("{} has unsupported schema {}", path.display(), doc.schema)));
    }
    Ok(doc)
}

/// One report per id, sorted by id. The larger bound wins; on equal bounds
/// the later report wins.
pub fn merge_reports(reports: impl IntoIterator<Item = VerificationReport>) -> Vec<VerificationReport> {
    let mut by_id: BTreeMap<String, VerificationReport> = BTreeMap::new();
    for r in reports {
        match by_id.get(&r.id) {
            Some(old) if old.bound > r.bound => {}
            _ => {
                by_id.insert(r.id.clone(), r);
            }
        }
    }
    by_id.into_values().collect()
}

fn render_document(doc: &ReportDocument, format: Format) -> String {
    match format {
        Format::Json => json(doc),
        Format::Csv => {
            let mut s = String::from("id,status,checked_count,bound,counterexample_n,observed,expected,elapsed_ms\n");
            for r in &doc.reports {
                let (n, obs, exp) = match &r.first_counterexample {
                    Some(c) => (c.n.to_string(), c.observed.clone(), c.expected.clone()),
                    None => Default::default(),
                };
                let _ = writeln!(s, "{},{},{},{},{n},{obs},{exp},{}", r.id, r.status, r.checked_count, r.bound, r.elapsed_ms);
            }
            s
        }
        Format::Text => {
            let mut s = String::new();
            if let Some(p) = doc.profile {
                let _ = write!(s, "profile {p}");
                if let Some(t) = doc.trunc {
                    let _ = write!(s, ", table order {t}");
                }
                s.push('\n');
            }
            for r in &doc.reports {
                let _ = write!(s, "{:<13} {:<15} checked {:>8}  bound {:>8}", r.id, r.status.as_str(), r.checked_count, r.bound);
                if r.elapsed_ms > 0 {
                    let _ = write!(s, "  {} ms", r.elapsed_ms);
                }
                s.push('\n');
                if let Some(c) = &r.first_counterexample {
                    let _ = writeln!(s, "    first counterexample: n = {}, observed {}, expected {}", c.n, c.observed, c.expected);
                }
                if !r.legs.is_empty() {
                    let _ = writeln!(s, "    legs: {}", r.legs.join(", "));
                }
                for note in &r.notes {
                    let _ = writeln!(s, "    {note}");
                }
            }
            let sum = doc.summary.unwrap_or_else(|| Summary::of(&doc.reports));
            let _ = writeln!(
                s,
                "{} checks: {} pass, {} fail, {} skipped-budget, {} informational",
                doc.reports.len(),
                sum.pass,
                sum.fail,
                sum.skipped_budget,
                sum.informational
            );
            s
        }
    }
}

fn json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("plain data serializes");
    s.push('\n');
    s
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}
