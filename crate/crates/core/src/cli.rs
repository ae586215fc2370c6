//! Command-line surface: argument parsing, command execution and output.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage error,
//! 3 resource guard.

use std::ffi::OsString;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::binmat::BinaryMatrix;
use crate::error::{Error, Result};
use crate::oracle::{brute_force_psi_with, check_feasible, OracleOptions, OracleResult};
use crate::primes::{search_triples, Sign, TripleWitness};
use crate::psi::{psi, PsiResult, PsiStatus, Witness};
use crate::report::{fmt_float, Meta, RunReport, Table};
use crate::spectral::{singular_spectrum, Spectrum};
use crate::step_forms::{recognize, two_step_spectrum, TwoStepShape};
use crate::verify::{run_suite, Limit, Suite, SuiteReport};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_GUARD: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "tracemin", version, about = "Minimum trace norm of square (0,1)-matrices with m ones")]
pub struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Worker threads for parallel sweeps (default: all cores).
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    /// Accepted for scripts asserting determinism; no command uses randomness.
    #[arg(long, global = true)]
    pub seedless: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Exact value or bounds for ψₙ(m).
    Psi(PsiArgs),
    /// Closed-form and numeric singular values of a shape or matrix.
    Spectrum(SpectrumArgs),
    /// k for which 4k±1, 6k±1 and 12k±1 are all prime.
    SearchTriples(TripleArgs),
    /// Exhaustive minimum over all n×n matrices with m ones (n <= 5).
    BruteForce(BruteArgs),
    /// Run an invariant sweep.
    Verify(VerifyArgs),
}

#[derive(Debug, Args, Serialize)]
pub struct PsiArgs {
    #[arg(long)]
    pub n: u64,
    #[arg(long)]
    pub m: u64,
    /// Also run the brute-force oracle when it is feasible.
    #[arg(long)]
    pub oracle: bool,
}

#[derive(Debug, Args, Serialize)]
#[group(required = true, multiple = false)]
pub struct SpectrumArgs {
    /// Two-step shape "s,p,r,q".
    #[arg(long)]
    pub shape: Option<TwoStepShape>,
    /// File with one row of 0/1 characters per line.
    #[arg(long)]
    pub matrix: Option<PathBuf>,
}

#[derive(Debug, Args, Serialize)]
pub struct TripleArgs {
    #[arg(long)]
    pub k_min: u64,
    #[arg(long)]
    pub k_max: u64,
    /// +1 or -1.
    #[arg(long, allow_hyphen_values = true)]
    pub sign: Sign,
}

#[derive(Debug, Args, Serialize)]
pub struct BruteArgs {
    #[arg(long)]
    pub n: u64,
    #[arg(long)]
    pub m: u64,
    /// Score only matrices with rows in descending order.
    #[arg(long)]
    pub prune: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SuiteArg {
    Theorem1,
    Theorem2,
    Theorem3,
    Tsm,
    Exa,
    Gb,
    Pro4,
    Cor1,
    #[value(name = "claimA", alias = "claima")]
    #[serde(rename = "claimA")]
    ClaimA,
    /// Every suite at its default range.
    All,
}

impl SuiteArg {
    fn suites(self) -> Vec<Suite> {
        match self {
            SuiteArg::Theorem1 => vec![Suite::Theorem1],
            SuiteArg::Theorem2 => vec![Suite::Theorem2],
            SuiteArg::Theorem3 => vec![Suite::Theorem3],
            SuiteArg::Tsm => vec![Suite::Tsm],
            SuiteArg::Exa => vec![Suite::Exa],
            SuiteArg::Gb => vec![Suite::Gb],
            SuiteArg::Pro4 => vec![Suite::Pro4],
            SuiteArg::Cor1 => vec![Suite::Cor1],
            SuiteArg::ClaimA => vec![Suite::ClaimA],
            SuiteArg::All => Suite::ALL.to_vec(),
        }
    }
}

#[derive(Debug, Args, Serialize)]
pub struct VerifyArgs {
    #[arg(long, value_enum)]
    pub suite: SuiteArg,
    /// Upper end of the n range (n-based suites).
    #[arg(long)]
    pub n_max: Option<u64>,
    /// Upper end of the m range (exa, pro4, claimA).
    #[arg(long)]
    pub m_max: Option<u64>,
    /// List every instance, not only failures and skips.
    #[arg(long)]
    pub verbose: bool,
}

/// Output of one command before formatting.
pub struct Outcome {
    pub report: RunReport,
    pub text: String,
    pub table: Table,
    pub exit_code: i32,
}

/// Parses `args` and runs the command, writing to stdout/stderr.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let args: Vec<OsString> = args.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    let argv = args.iter().map(|a| a.to_string_lossy().into_owned()).collect();
    match execute(&cli, argv) {
        Ok(out) => {
            match render(&out, cli.format) {
                Ok(s) => print!("{s}"),
                Err(e) => {
                    eprintln!("error: {e}");
                    return EXIT_USAGE;
                }
            }
            out.exit_code
        }
        Err(e) => {
            eprintln!("error: {e}");
            exit_code_for(&e)
        }
    }
}

pub fn exit_code_for(e: &Error) -> i32 {
    if e.is_resource_guard() {
        EXIT_GUARD
    } else {
        EXIT_USAGE
    }
}

pub fn render(out: &Outcome, format: Format) -> Result<String> {
    Ok(match format {
        Format::Json => out.report.to_json() + "\n",
        Format::Csv => out.table.to_csv()?,
        Format::Text => out.text.clone(),
    })
}

/// Runs the parsed command inside a pool of the requested size.
pub fn execute(cli: &Cli, argv: Vec<String>) -> Result<Outcome> {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(t) = cli.threads {
        if t == 0 {
            return Err(Error::OutOfRange("--threads must be at least 1".into()));
        }
        builder = builder.num_threads(t);
    }
    let pool = builder.build().map_err(|e| Error::OutOfRange(e.to_string()))?;
    let threads = pool.current_num_threads();
    let start = Instant::now();
    let (name, parameters, body) = pool.install(|| run_command(&cli.command))?;
    let meta = Meta { argv, threads, wall_time_ms: start.elapsed().as_secs_f64() * 1e3 };
    let report = RunReport::new(name, &parameters, &body.results, meta)?;
    Ok(Outcome { report, text: body.text, table: body.table, exit_code: body.exit_code })
}

pub struct Body {
    pub results: serde_json::Value,
    pub text: String,
    pub table: Table,
    pub exit_code: i32,
}

fn run_command(cmd: &Command) -> Result<(&'static str, serde_json::Value, Body)> {
    Ok(match cmd {
        Command::Psi(a) => ("psi", to_value(a)?, cmd_psi(a)?),
        Command::Spectrum(a) => ("spectrum", to_value(a)?, cmd_spectrum(a)?),
        Command::SearchTriples(a) => ("search-triples", to_value(a)?, cmd_search_triples(a)?),
        Command::BruteForce(a) => ("brute-force", to_value(a)?, cmd_brute_force(a)?),
        Command::Verify(a) => ("verify", to_value(a)?, cmd_verify(a)?),
    })
}

fn to_value(x: &impl Serialize) -> Result<serde_json::Value> {
    crate::report::to_rounded_value(x)
}

fn opt<T: ToString>(x: Option<T>) -> String {
    x.map(|v| v.to_string()).unwrap_or_default()
}

fn witness_text(w: &Option<Witness>) -> String {
    match w {
        Some(Witness::Rank1 { rows, cols }) => format!("J{rows}x{cols}"),
        Some(Witness::Shape { shape }) => shape.to_string(),
        None => String::new(),
    }
}

fn classification_text(r: &PsiResult) -> String {
    serde_json::to_value(r.classification).ok().and_then(|v| v.as_str().map(str::to_string)).unwrap_or_default()
}

#[derive(Serialize)]
struct PsiOutput {
    psi: PsiResult,
    #[serde(skip_serializing_if = "Option::is_none")]
    oracle: Option<OracleResult>,
    #[serde(skip_serializing_if = "Option::is_none")]
    oracle_agrees: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    oracle_skipped: Option<String>,
}

/// CSV columns of `psi`.
pub const PSI_COLUMNS: [&str; 14] = [
    "n",
    "m",
    "status",
    "value",
    "lower",
    "upper",
    "classification",
    "witness",
    "key_ones",
    "key_inner",
    "triple_k",
    "triple_sign",
    "oracle_psi",
    "oracle_agrees",
];

pub fn cmd_psi(a: &PsiArgs) -> Result<Body> {
    let res = psi(a.n, a.m)?;
    let mut out = PsiOutput { psi: res.clone(), oracle: None, oracle_agrees: None, oracle_skipped: None };
    if a.oracle {
        match check_feasible(a.n, a.m) {
            Ok(()) => {
                let o = brute_force_psi_with(a.n, a.m, OracleOptions::default())?;
                let agrees = match res.status {
                    PsiStatus::Exact { value } => (o.psi - value).abs() < 1e-9,
                    PsiStatus::Bounds { lower, upper } => lower - 1e-9 <= o.psi && o.psi <= upper + 1e-9,
                };
                out.oracle_agrees = Some(agrees);
                out.oracle = Some(o);
            }
            Err(e) => out.oracle_skipped = Some(e.to_string()),
        }
    }

    let (status, value) = match res.status {
        PsiStatus::Exact { value } => ("exact", fmt_float(value)),
        PsiStatus::Bounds { .. } => ("bounds", String::new()),
    };
    let mut table = Table::new(&PSI_COLUMNS);
    table.push(vec![
        res.n.to_string(),
        res.m.to_string(),
        status.into(),
        value,
        fmt_float(res.lower()),
        fmt_float(res.upper()),
        classification_text(&res),
        witness_text(&res.witness),
        opt(res.key.map(|k| k.ones)),
        opt(res.key.map(|k| k.inner)),
        opt(res.triple.map(|t| t.k)),
        opt(res.triple.map(|t| t.sign.as_i8())),
        opt(out.oracle.as_ref().map(|o| fmt_float(o.psi))),
        opt(out.oracle_agrees),
    ]);

    let mut text = format!("psi_{}({}): ", res.n, res.m);
    match res.status {
        PsiStatus::Exact { value } => text += &format!("exact {}", fmt_float(value)),
        PsiStatus::Bounds { lower, upper } => text += &format!("between {} and {}", fmt_float(lower), fmt_float(upper)),
    }
    if let Some(k) = res.key {
        text += &format!("  [sqrt({} + 2 sqrt({}))]", k.ones, k.inner);
    }
    text += &format!("\nclassification: {}\nwitness: {}\n", classification_text(&res), witness_text(&res.witness));
    if let Some(t) = res.triple {
        text += &format!("triple: k={} sign={:+} primes {:?}\n", t.k, t.sign.as_i8(), t.primes);
    }
    if let Some(o) = &out.oracle {
        text += &format!(
            "oracle: {} over {} matrices, {}\n",
            fmt_float(o.psi),
            o.count_scanned,
            if out.oracle_agrees == Some(true) { "agrees" } else { "DISAGREES" }
        );
    }
    if let Some(s) = &out.oracle_skipped {
        text += &format!("oracle skipped: {s}\n");
    }

    let exit_code = if out.oracle_agrees == Some(false) { EXIT_VERIFY_FAILED } else { EXIT_OK };
    Ok(Body { results: to_value(&out)?, text, table, exit_code })
}

#[derive(Serialize)]
struct SpectrumOutput {
    rows: usize,
    cols: usize,
    ones: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    shape: Option<TwoStepShape>,
    #[serde(skip_serializing_if = "Option::is_none")]
    closed_form: Option<Spectrum>,
    #[serde(skip_serializing_if = "Option::is_none")]
    numeric: Option<Spectrum>,
    #[serde(skip_serializing_if = "Option::is_none")]
    max_deviation: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    numeric_skipped: Option<String>,
}

/// CSV columns of `spectrum`: one row per singular value, then the trace
/// norm and Frobenius norm.
pub const SPECTRUM_COLUMNS: [&str; 4] = ["quantity", "closed_form", "numeric", "deviation"];

fn load_matrix(path: &PathBuf) -> Result<BinaryMatrix> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    text.parse()
}

pub fn cmd_spectrum(a: &SpectrumArgs) -> Result<Body> {
    let (shape, matrix) = match (&a.shape, &a.matrix) {
        (Some(s), _) => (Some(*s), s.materialize()),
        (None, Some(p)) => {
            let m = load_matrix(p)?;
            (recognize(&m), Ok(m))
        }
        (None, None) => return Err(Error::Parse("give --shape or --matrix".into())),
    };
    let closed = shape.as_ref().map(two_step_spectrum);
    let (dims, numeric, skipped) = match matrix {
        Ok(m) => {
            let dims = (m.rows(), m.cols(), m.ones());
            match singular_spectrum(&m) {
                Ok(s) => (dims, Some(s), None),
                Err(e) if e.is_resource_guard() => (dims, None, Some(e)),
                Err(e) => return Err(e),
            }
        }
        Err(e) if e.is_resource_guard() => {
            let s = shape.expect("shape given");
            ((s.rows() as usize, s.cols() as usize, s.ones() as usize), None, Some(e))
        }
        Err(e) => return Err(e),
    };

    let len = closed.as_ref().map(|c| c.singular_values.len()).max(numeric.as_ref().map(|n| n.singular_values.len()));
    let len = len.unwrap_or(0);
    let at = |s: &Option<Spectrum>, i: usize| s.as_ref().map(|s| s.singular_values.get(i).copied().unwrap_or(0.0));
    let mut rows: Vec<(String, Option<f64>, Option<f64>)> =
        (0..len).map(|i| (format!("sigma_{}", i + 1), at(&closed, i), at(&numeric, i))).collect();
    rows.push(("trace_norm".into(), closed.as_ref().map(|c| c.trace_norm), numeric.as_ref().map(|n| n.trace_norm)));
    rows.push(("frobenius".into(), closed.as_ref().map(|c| c.frobenius), numeric.as_ref().map(|n| n.frobenius)));

    let dev = |c: Option<f64>, n: Option<f64>| c.zip(n).map(|(c, n)| (c - n).abs());
    let max_deviation = rows.iter().filter_map(|(_, c, n)| dev(*c, *n)).reduce(f64::max);

    let mut table = Table::new(&SPECTRUM_COLUMNS);
    let mut text = format!("{}x{} matrix with {} ones", dims.0, dims.1, dims.2);
    if let Some(s) = shape {
        text += &format!(", shape {s}");
    }
    text += "\n";
    for (q, c, n) in &rows {
        table.push(vec![q.clone(), opt(c.map(fmt_float)), opt(n.map(fmt_float)), opt(dev(*c, *n).map(fmt_float))]);
        text += &format!("{q:>12}  closed {:<20} numeric {}\n", opt(c.map(fmt_float)), opt(n.map(fmt_float)));
    }
    if let Some(d) = max_deviation {
        text += &format!("max deviation: {d:e}\n");
    }
    if let Some(e) = &skipped {
        text += &format!("numeric spectrum skipped: {e}\n");
    }

    let exit_code = if skipped.is_some() {
        EXIT_GUARD
    } else if max_deviation.is_some_and(|d| d >= 1e-9) {
        EXIT_VERIFY_FAILED
    } else {
        EXIT_OK
    };
    let out = SpectrumOutput {
        rows: dims.0,
        cols: dims.1,
        ones: dims.2,
        shape,
        closed_form: closed,
        numeric,
        max_deviation,
        numeric_skipped: skipped.map(|e| e.to_string()),
    };
    Ok(Body { results: to_value(&out)?, text, table, exit_code })
}

#[derive(Serialize)]
struct TripleOutput {
    count: usize,
    witnesses: Vec<TripleWitness>,
}

/// CSV columns of `search-triples`.
pub const TRIPLE_COLUMNS: [&str; 6] = ["k", "sign", "p4", "p6", "p12", "m"];

pub fn cmd_search_triples(a: &TripleArgs) -> Result<Body> {
    let witnesses = search_triples(a.k_min, a.k_max, a.sign)?;
    let mut table = Table::new(&TRIPLE_COLUMNS);
    let mut text =
        format!("{} witnesses for k in [{}, {}], sign {:+}\n", witnesses.len(), a.k_min, a.k_max, a.sign.as_i8());
    for w in &witnesses {
        let [p4, p6, p12] = w.primes;
        table.push(vec![
            w.k.to_string(),
            w.sign.as_i8().to_string(),
            p4.to_string(),
            p6.to_string(),
            p12.to_string(),
            w.m.to_string(),
        ]);
        text += &format!("k={} primes {p4} {p6} {p12} m={}\n", w.k, w.m);
    }
    let out = TripleOutput { count: witnesses.len(), witnesses };
    Ok(Body { results: to_value(&out)?, text, table, exit_code: EXIT_OK })
}

/// CSV columns of `brute-force`; tags are `;`-separated.
pub const BRUTE_COLUMNS: [&str; 6] = ["n", "m", "psi", "count_scanned", "minimizer_count", "minimizer_tags"];

pub fn cmd_brute_force(a: &BruteArgs) -> Result<Body> {
    let res = brute_force_psi_with(a.n, a.m, OracleOptions { prune_sorted_rows: a.prune })?;
    let mut table = Table::new(&BRUTE_COLUMNS);
    table.push(vec![
        res.n.to_string(),
        res.m.to_string(),
        fmt_float(res.psi),
        res.count_scanned.to_string(),
        res.minimizer_tags.len().to_string(),
        res.minimizer_tags.join(";"),
    ]);
    let mut text = format!(
        "psi_{}({}) = {} over {} matrices\n{} minimizer classes:\n",
        res.n,
        res.m,
        fmt_float(res.psi),
        res.count_scanned,
        res.minimizers.len()
    );
    for f in &res.minimizers {
        text += &format!("{}\n{}\n", f.tag_hex(), f.matrix);
    }
    Ok(Body { results: to_value(&res)?, text, table, exit_code: EXIT_OK })
}

/// CSV columns of `verify`: one row per suite.
pub const VERIFY_COLUMNS: [&str; 7] = ["suite", "limit", "checked", "passed", "failed", "skipped", "first_failure"];

pub fn cmd_verify(a: &VerifyArgs) -> Result<Body> {
    let mut reports: Vec<SuiteReport> = Vec::new();
    for suite in a.suite.suites() {
        let limit = match suite.limit_kind() {
            Limit::NMax => a.n_max,
            Limit::MMax => a.m_max,
        };
        let limit = if a.suite == SuiteArg::All { None } else { limit };
        reports.push(run_suite(suite, limit, a.verbose)?);
    }

    let mut table = Table::new(&VERIFY_COLUMNS);
    let mut text = String::new();
    for r in &reports {
        let first_failure = r.notable.iter().find(|c| matches!(c.outcome, crate::verify::Outcome::Fail(_)));
        table.push(vec![
            r.suite.to_string(),
            r.limit.to_string(),
            r.checked.to_string(),
            r.passed.to_string(),
            r.failed.to_string(),
            r.skipped.to_string(),
            opt(first_failure.map(|c| c.label.clone())),
        ]);
        text += &format!(
            "{} {} (limit {}): {} checked, {} passed, {} failed, {} skipped\n",
            if r.ok() { "PASS" } else { "FAIL" },
            r.suite,
            r.limit,
            r.checked,
            r.passed,
            r.failed,
            r.skipped
        );
        let listed = r.instances.as_ref().unwrap_or(&r.notable);
        for c in listed {
            let line = match &c.outcome {
                crate::verify::Outcome::Pass => format!("  pass {}\n", c.label),
                crate::verify::Outcome::Fail(d) => format!("  FAIL {}: {d}\n", c.label),
                crate::verify::Outcome::Skip(d) => format!("  skip {}: {d}\n", c.label),
            };
            text += &line;
        }
    }
    let exit_code = if reports.iter().all(SuiteReport::ok) { EXIT_OK } else { EXIT_VERIFY_FAILED };
    Ok(Body { results: to_value(&reports)?, text, table, exit_code })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run(args: &[&str]) -> Result<Outcome> {
        let cli = Cli::try_parse_from(std::iter::once("tracemin").chain(args.iter().copied())).expect("parses");
        execute(&cli, vec![])
    }

    #[test]
    fn psi_with_oracle_agrees() {
        let out = run(&["psi", "--n", "2", "--m", "3", "--oracle"]).unwrap();
        assert_eq!(out.exit_code, EXIT_OK);
        let r = &out.report.results;
        assert_eq!(r["oracle_agrees"], true);
        assert_eq!(r["psi"]["status"]["value"].as_f64().unwrap(), 2.23606797749979);
        assert_eq!(r["psi"]["key"], serde_json::json!({"ones": 3, "inner": 1}));
    }

    #[test]
    fn psi_oracle_skip_notice() {
        let out = run(&["psi", "--n", "7", "--m", "26", "--oracle"]).unwrap();
        assert!(out.report.results["oracle_skipped"].is_string());
        assert_eq!(out.report.results["psi"]["status"]["kind"], "bounds");
        assert_eq!(out.exit_code, EXIT_OK);
    }

    #[test]
    fn spectrum_of_shape() {
        let out = run(&["spectrum", "--shape", "1,1,2,3"]).unwrap();
        assert_eq!(out.exit_code, EXIT_OK);
        let numeric = &out.report.results["numeric"]["singular_values"];
        assert!((numeric[1].as_f64().unwrap() - 1.0).abs() < 1e-12);
        assert!(out.report.results["max_deviation"].as_f64().unwrap() < 1e-9);
    }

    #[test]
    fn triple_search_report() {
        let out = run(&["search-triples", "--k-min", "1", "--k-max", "1", "--sign", "+1"]).unwrap();
        assert_eq!(out.report.results["count"], 1);
        assert_eq!(out.report.results["witnesses"][0]["primes"], serde_json::json!([5, 7, 13]));
        let out = run(&["--format", "csv", "search-triples", "--k-min", "2", "--k-max", "2", "--sign", "+1"]).unwrap();
        assert_eq!(out.report.results["count"], 0);
        assert_eq!(render(&out, Format::Csv).unwrap(), "k,sign,p4,p6,p12,m\n");
    }

    #[test]
    fn usage_errors() {
        assert!(Cli::try_parse_from(["tracemin", "verify", "--suite", "nope"]).is_err());
        assert!(Cli::try_parse_from(["tracemin", "spectrum"]).is_err());
        assert!(Cli::try_parse_from(["tracemin", "spectrum", "--shape", "1,2,3"]).is_err());
        let e = run(&["psi", "--n", "2", "--m", "5"]).err().unwrap();
        assert_eq!(exit_code_for(&e), EXIT_USAGE);
        let e = run(&["brute-force", "--n", "5", "--m", "12"]).err().unwrap();
        assert_eq!(exit_code_for(&e), EXIT_GUARD);
    }

    #[test]
    fn verify_reports_counts() {
        let out = run(&["verify", "--suite", "claimA", "--m-max", "2000"]).unwrap();
        assert_eq!(out.exit_code, EXIT_OK);
        assert_eq!(out.report.results[0]["failed"], 0);
        assert!(out.report.results[0]["checked"].as_u64().unwrap() > 300);
    }
}
