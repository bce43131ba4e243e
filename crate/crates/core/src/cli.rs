//! Command-line front end: suites, single identities, kernel plot data,
//! prime diagnostics and s-grid tables.
//!
//! Exit codes: 0 when every asserted check passes, 1 on any FAIL, 2 on
//! configuration or usage errors. REPORT_ONLY and DIVERGENT never count.

use std::ffi::OsString;
use std::fs::File;
use std::io::{self, Write};
use std::path::PathBuf;
use std::time::{SystemTime, UNIX_EPOCH};

use clap::{Args, Parser, Subcommand, ValueEnum};
use indexmap::IndexMap;
use serde::Serialize;

use crate::identities::{self, IdentityCase, IdentityId, IdentityReport, Status, Suite, SuiteReport};
use crate::primes::{self, PrimeSumResult};
use crate::series::{self, Parity, PhiSpec, SeriesKernel, Strategy};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_CONFIG: i32 = 2;

/// Max points in a kernel grid or s-table.
const MAX_GRID: usize = 1_000_000;

/// Plain decimal only: optional sign, digits, optional fraction, optional
/// exponent. No `inf`/`nan`, digit separators, commas or hex.
pub fn parse_decimal(text: &str) -> Result<f64, String> {
    let bad = || format!("'{text}' is not a plain decimal number (e.g. 0.25, -3, 1e-6)");
    let b = text.as_bytes();
    let mut i = 0;
    if i < b.len() && (b[i] == b'+' || b[i] == b'-') {
        i += 1;
    }
    let int_start = i;
    while i < b.len() && b[i].is_ascii_digit() {
        i += 1;
    }
    let mut digits = i - int_start;
    if i < b.len() && b[i] == b'.' {
        i += 1;
        let frac_start = i;
        while i < b.len() && b[i].is_ascii_digit() {
            i += 1;
        }
        digits += i - frac_start;
    }
    if digits == 0 {
        return Err(bad());
    }
    if i < b.len() && (b[i] == b'e' || b[i] == b'E') {
        i += 1;
        if i < b.len() && (b[i] == b'+' || b[i] == b'-') {
            i += 1;
        }
        let exp_start = i;
        while i < b.len() && b[i].is_ascii_digit() {
            i += 1;
        }
        if i == exp_start {
            return Err(bad());
        }
    }
    if i != b.len() {
        return Err(bad());
    }
    let v: f64 = text.parse().map_err(|_| bad())?;
    if !v.is_finite() {
        return Err(format!("'{text}' overflows"));
    }
    Ok(v)
}

fn parse_count(text: &str) -> Result<u64, String> {
    if text.is_empty() || !text.bytes().all(|c| c.is_ascii_digit()) {
        return Err(format!("'{text}' is not a non-negative integer"));
    }
    text.parse().map_err(|e| format!("'{text}': {e}"))
}

#[derive(Debug, Parser)]
#[command(name = "ramellin", version, about = "Verify Mellin-transform identities numerically")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run a fixed verification suite
    Verify(VerifyArgs),
    /// Evaluate one identity at one parameter point
    Eval(EvalArgs),
    /// Write kernel values on an x-grid (plot data)
    Kernel(KernelArgs),
    /// Prime log-sum diagnostics
    Primes(PrimesArgs),
    /// Tabulate one identity over an s-grid (plot data)
    Table(TableArgs),
}

#[derive(Debug, Clone, Default, Args)]
pub struct ParamArgs {
    #[arg(long, value_parser = parse_decimal, allow_hyphen_values = true)]
    pub s: Option<f64>,
    #[arg(long, value_parser = parse_decimal, allow_hyphen_values = true)]
    pub a: Option<f64>,
    #[arg(long, value_parser = parse_decimal, allow_hyphen_values = true)]
    pub v: Option<f64>,
    #[arg(long, value_parser = parse_decimal, allow_hyphen_values = true)]
    pub c: Option<f64>,
    #[arg(long, value_parser = parse_decimal, allow_hyphen_values = true)]
    pub p: Option<f64>,
    #[arg(long, value_parser = parse_decimal, allow_hyphen_values = true)]
    pub k: Option<f64>,
    #[arg(long, value_parser = parse_decimal, allow_hyphen_values = true)]
    pub t: Option<f64>,
    #[arg(long, value_parser = parse_decimal, allow_hyphen_values = true)]
    pub n: Option<f64>,
}

impl ParamArgs {
    /// Given parameters in flag order.
    pub fn given(&self) -> Vec<(&'static str, f64)> {
        [
            ("s", self.s),
            ("a", self.a),
            ("v", self.v),
            ("c", self.c),
            ("p", self.p),
            ("k", self.k),
            ("t", self.t),
            ("n", self.n),
        ]
        .into_iter()
        .filter_map(|(k, v)| v.map(|v| (k, v)))
        .collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, Args)]
pub struct OutputArgs {
    /// Write the report here instead of standard output
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "json")]
    pub format: Format,
    /// Omit the generated_at field (byte-identical reruns)
    #[arg(long)]
    pub no_timestamp: bool,
    /// List REPORT_ONLY and DIVERGENT cases on the error stream
    #[arg(long)]
    pub strict_report: bool,
}

#[derive(Debug, Clone, Args)]
pub struct CheckArgs {
    /// Relative tolerance override for asserted identities
    #[arg(long, value_parser = parse_decimal)]
    pub tol: Option<f64>,
    /// Sieve limit for the direct prime sums
    #[arg(long, value_parser = parse_count)]
    pub primes_limit: Option<u64>,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long, default_value = "all")]
    pub suite: String,
    /// Only run the suite's cases of this identity
    #[arg(long)]
    pub identity: Option<String>,
    #[command(flatten)]
    pub params: ParamArgs,
    #[command(flatten)]
    pub check: CheckArgs,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct EvalArgs {
    #[arg(long)]
    pub identity: String,
    #[command(flatten)]
    pub params: ParamArgs,
    #[command(flatten)]
    pub check: CheckArgs,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum PhiKind {
    Power,
    Binomial,
    Zeta,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ParityArg {
    Full,
    Odd,
    Even,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum StrategyArg {
    Auto,
    Maclaurin,
    ClosedForm,
}

#[derive(Debug, Clone, Args)]
pub struct GridArgs {
    #[arg(long, value_parser = parse_decimal, allow_hyphen_values = true)]
    pub start: f64,
    #[arg(long, value_parser = parse_decimal, allow_hyphen_values = true)]
    pub stop: f64,
    /// Grid spacing (exclusive with --points)
    #[arg(long, value_parser = parse_decimal, conflicts_with = "points")]
    pub step: Option<f64>,
    /// Number of equally spaced points including both ends
    #[arg(long, value_parser = parse_count)]
    pub points: Option<u64>,
}

impl GridArgs {
    pub fn values(&self) -> Result<Vec<f64>, String> {
        let (a, b) = (self.start, self.stop);
        if b < a {
            return Err(format!("invalid range: stop {b} < start {a}"));
        }
        match (self.step, self.points) {
            (Some(h), None) => {
                if !(h > 0.0) {
                    return Err("step must be positive".into());
                }
                let steps = (b - a) / h;
                let n = (steps + 1e-9 * steps.max(1.0)).floor();
                if n + 1.0 > MAX_GRID as f64 {
                    return Err(format!("grid larger than {MAX_GRID} points"));
                }
                Ok((0..=n as usize).map(|i| a + i as f64 * h).collect())
            }
            (None, Some(n)) => {
                if n < 1 || n as usize > MAX_GRID {
                    return Err(format!("points must be in 1..={MAX_GRID}"));
                }
                if n == 1 {
                    return Ok(vec![a]);
                }
                let h = (b - a) / (n - 1) as f64;
                Ok((0..n).map(|i| if i == n - 1 { b } else { a + i as f64 * h }).collect())
            }
            _ => Err("give exactly one of --step or --points".into()),
        }
    }
}

#[derive(Debug, Args)]
pub struct KernelArgs {
    #[arg(long, value_enum, default_value = "power")]
    pub phi: PhiKind,
    #[arg(long, value_enum, default_value = "full")]
    pub parity: ParityArg,
    #[arg(long, value_enum, default_value = "auto")]
    pub strategy: StrategyArg,
    #[arg(long, value_parser = parse_decimal)]
    pub c: Option<f64>,
    #[arg(long, value_parser = parse_decimal)]
    pub a: Option<f64>,
    #[arg(long, value_parser = parse_decimal)]
    pub v: Option<f64>,
    /// Scaling x ↦ x^k / p
    #[arg(long, value_parser = parse_decimal)]
    pub p: Option<f64>,
    #[arg(long, value_parser = parse_decimal)]
    pub k: Option<f64>,
    #[command(flatten)]
    pub grid: GridArgs,
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "csv")]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct PrimesArgs {
    #[arg(long, value_parser = parse_decimal, default_value = "3")]
    pub s: f64,
    /// Möbius terms
    #[arg(long, value_parser = parse_count, default_value = "30")]
    pub n: u64,
    /// Also run the formal-identity diagnostics for this n
    #[arg(long, value_parser = parse_count)]
    pub formal_n: Option<u64>,
    #[command(flatten)]
    pub check: CheckArgs,
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long)]
    pub no_timestamp: bool,
}

#[derive(Debug, Args)]
pub struct TableArgs {
    #[arg(long)]
    pub identity: String,
    /// Parameter swept over the grid
    #[arg(long, default_value = "s")]
    pub sweep: String,
    #[command(flatten)]
    pub grid: GridArgs,
    #[command(flatten)]
    pub params: ParamArgs,
    #[command(flatten)]
    pub check: CheckArgs,
    #[command(flatten)]
    pub output: OutputArgs,
}

/// A configuration problem (exit 2).
#[derive(Debug)]
pub struct ConfigError(pub String);

impl<T: Into<String>> From<T> for ConfigError {
    fn from(s: T) -> Self {
        ConfigError(s.into())
    }
}

/// 1 if any report is FAIL, else 0.
pub fn exit_code(reports: &[IdentityReport]) -> i32 {
    if reports.iter().any(|r| r.status == Status::Fail) {
        EXIT_FAIL
    } else {
        EXIT_OK
    }
}

/// Overlay user parameters on a case. A Binomial φ (a, v) given for an
/// identity that also takes Power c replaces c, and vice versa.
pub fn apply_params(case: &mut IdentityCase, given: &[(&str, f64)]) {
    let names = case.id.param_names();
    let takes_phi = names.contains(&"v") && names.contains(&"c");
    let has = |k: &str| given.iter().any(|(g, _)| *g == k);
    if takes_phi {
        if has("v") || has("a") {
            case.params.shift_remove("c");
        }
        if has("c") {
            case.params.shift_remove("a");
            case.params.shift_remove("v");
        }
    }
    for (k, v) in given {
        if names.contains(k) {
            case.params.insert(k.to_string(), *v);
        }
    }
}

fn apply_check(case: &mut IdentityCase, check: &CheckArgs) {
    if check.tol.is_some() {
        case.tol = check.tol;
    }
    if let Some(l) = check.primes_limit {
        case.primes_limit = l;
    }
}

fn check_args(check: &CheckArgs) -> Result<(), ConfigError> {
    if let Some(t) = check.tol {
        if !(t > 0.0) {
            return Err("--tol must be positive".into());
        }
    }
    if let Some(l) = check.primes_limit {
        if !(2..=primes::MAX_LIMIT).contains(&l) {
            return Err(format!("--primes-limit must be in 2..={}", primes::MAX_LIMIT).into());
        }
    }
    Ok(())
}

fn validate_all(cases: &[IdentityCase]) -> Result<(), ConfigError> {
    let mut errs: Vec<String> = Vec::new();
    for c in cases {
        if let Err(e) = c.validate() {
            let msg = format!("{}: {e}", c.id);
            if !errs.contains(&msg) {
                errs.push(msg);
            }
        }
    }
    if errs.is_empty() {
        Ok(())
    } else {
        Err(errs.join("\n").into())
    }
}

fn timestamp(no_timestamp: bool) -> Option<u64> {
    if no_timestamp {
        None
    } else {
        SystemTime::now().duration_since(UNIX_EPOCH).ok().map(|d| d.as_secs())
    }
}

fn write_out(path: &Option<PathBuf>, stdout: &mut dyn Write, text: &str) -> Result<(), ConfigError> {
    match path {
        Some(p) => {
            let mut f = File::create(p).map_err(|e| format!("cannot write {}: {e}", p.display()))?;
            f.write_all(text.as_bytes())
                .map_err(|e| format!("cannot write {}: {e}", p.display()))?;
        }
        None => stdout
            .write_all(text.as_bytes())
            .map_err(|e| format!("stdout: {e}"))?,
    }
    Ok(())
}

fn render(report: &SuiteReport, format: Format) -> String {
    match format {
        Format::Json => report.to_json() + "\n",
        Format::Csv => report.to_csv(),
    }
}

fn strict_listing(reports: &[IdentityReport], stderr: &mut dyn Write) {
    for r in reports {
        if matches!(r.status, Status::ReportOnly | Status::Divergent) {
            let _ = writeln!(stderr, "** {} {}: {}", r.status, r.id, r.notes);
        }
    }
}

fn emit_reports(
    suite: &str,
    reports: Vec<IdentityReport>,
    out: &OutputArgs,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> Result<i32, ConfigError> {
    if out.strict_report {
        strict_listing(&reports, stderr);
    }
    let code = exit_code(&reports);
    let mut report = SuiteReport::new(suite, reports);
    report.generated_at = timestamp(out.no_timestamp);
    let s = report.summary;
    let _ = writeln!(
        stderr,
        "{suite}: {} pass, {} fail, {} report-only, {} divergent",
        s.pass, s.fail, s.report_only, s.divergent
    );
    write_out(&out.out, stdout, &render(&report, out.format))?;
    Ok(code)
}

fn run_verify(a: &VerifyArgs, stdout: &mut dyn Write, stderr: &mut dyn Write) -> Result<i32, ConfigError> {
    let suite: Suite = a.suite.parse()?;
    let only: Option<IdentityId> = a.identity.as_deref().map(str::parse).transpose()?;
    check_args(&a.check)?;
    let given = a.params.given();
    let mut cases: Vec<IdentityCase> = suite
        .cases()
        .into_iter()
        .filter(|c| only.is_none_or(|id| c.id == id))
        .collect();
    if cases.is_empty() {
        return Err(format!("suite '{suite}' has no cases for the requested identity").into());
    }
    for c in &mut cases {
        apply_params(c, &given);
        apply_check(c, &a.check);
    }
    validate_all(&cases)?;
    let reports = identities::verify_cases(&cases);
    emit_reports(suite.as_str(), reports, &a.output, stdout, stderr)
}

fn case_for(identity: &str, params: &ParamArgs, check: &CheckArgs) -> Result<IdentityCase, ConfigError> {
    let id: IdentityId = identity.parse()?;
    check_args(check)?;
    let given = params.given();
    for (k, _) in &given {
        if !id.param_names().contains(k) {
            return Err(format!("{id} does not take --{k}").into());
        }
    }
    let mut case = IdentityCase::new(id, &[]);
    case.params = id.default_params();
    apply_params(&mut case, &given);
    apply_check(&mut case, check);
    case.validate()?;
    Ok(case)
}

fn run_eval(a: &EvalArgs, stdout: &mut dyn Write, stderr: &mut dyn Write) -> Result<i32, ConfigError> {
    let case = case_for(&a.identity, &a.params, &a.check)?;
    let report = identities::verify(&case);
    if a.output.strict_report {
        strict_listing(std::slice::from_ref(&report), stderr);
    }
    let code = exit_code(std::slice::from_ref(&report));
    let text = match a.output.format {
        Format::Json => {
            #[derive(Serialize)]
            struct Single<'a> {
                #[serde(flatten)]
                report: &'a IdentityReport,
                #[serde(skip_serializing_if = "Option::is_none")]
                generated_at: Option<u64>,
            }
            let single = Single {
                report: &report,
                generated_at: timestamp(a.output.no_timestamp),
            };
            serde_json::to_string_pretty(&single).expect("report serializes") + "\n"
        }
        Format::Csv => SuiteReport::new("eval", vec![report]).to_csv(),
    };
    write_out(&a.output.out, stdout, &text)?;
    Ok(code)
}

fn kernel_from(a: &KernelArgs) -> Result<SeriesKernel, ConfigError> {
    let phi = match a.phi {
        PhiKind::Power => {
            if a.a.is_some() || a.v.is_some() {
                return Err("power φ takes --c only".into());
            }
            PhiSpec::Power { c: a.c.unwrap_or(1.0) }
        }
        PhiKind::Binomial => {
            if a.c.is_some() {
                return Err("binomial φ takes --a and --v".into());
            }
            PhiSpec::Binomial {
                a: a.a.unwrap_or(1.0),
                v: a.v.unwrap_or(1.0),
            }
        }
        PhiKind::Zeta => {
            if a.a.is_some() || a.v.is_some() || a.c.is_some() {
                return Err("zeta φ takes no parameters".into());
            }
            PhiSpec::Zeta
        }
    };
    let parity = match a.parity {
        ParityArg::Full => Parity::Full,
        ParityArg::Odd => Parity::Odd,
        ParityArg::Even => Parity::Even,
    };
    let strategy = match a.strategy {
        StrategyArg::Auto => Strategy::Auto,
        StrategyArg::Maclaurin => Strategy::Maclaurin,
        StrategyArg::ClosedForm => Strategy::ClosedForm,
    };
    let mut kernel = SeriesKernel::new(phi, parity).map_err(|e| e.to_string())?;
    if a.p.is_some() || a.k.is_some() {
        kernel = kernel
            .scaled(a.p.unwrap_or(1.0), a.k.unwrap_or(1.0))
            .map_err(|e| e.to_string())?;
    }
    if strategy == Strategy::ClosedForm && !kernel.has_closed_form() {
        return Err("this kernel has no closed form".into());
    }
    Ok(kernel.with_strategy(strategy))
}

fn run_kernel(a: &KernelArgs, stdout: &mut dyn Write) -> Result<i32, ConfigError> {
    let kernel = kernel_from(a)?;
    let xs = a.grid.values()?;
    if xs.iter().any(|&x| x < 0.0) {
        return Err("kernel grid must lie in x ≥ 0".into());
    }
    let rows: Vec<_> = xs.iter().map(|&x| (x, series::eval_kernel(&kernel, x))).collect();
    let text = match a.format {
        Format::Csv => {
            let mut buf = Vec::new();
            series::write_kernel_csv(&rows, &mut buf).map_err(|e| e.to_string())?;
            String::from_utf8(buf).expect("csv is utf-8")
        }
        Format::Json => {
            #[derive(Serialize)]
            struct Row {
                x: f64,
                value: f64,
                abs_err: f64,
                flags: String,
            }
            let rows: Vec<Row> = rows
                .iter()
                .map(|(x, r)| Row {
                    x: *x,
                    value: r.value,
                    abs_err: r.abs_err,
                    flags: r.flags.to_string(),
                })
                .collect();
            serde_json::to_string_pretty(&rows).expect("rows serialize") + "\n"
        }
    };
    write_out(&a.out, stdout, &text)?;
    Ok(EXIT_OK)
}

#[derive(Debug, Serialize)]
struct PrimesReport {
    s: f64,
    mobius_terms: u64,
    primes_limit: u64,
    direct: PrimeSumResult,
    mobius: PrimeSumResult,
    abs_diff: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    formal: Option<FormalReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    generated_at: Option<u64>,
}

#[derive(Debug, Serialize)]
struct FormalReport {
    n: u32,
    c_n: IndexMap<String, f64>,
    a_n: Vec<PrimeSumResult>,
    divergence: PrimeSumResult,
    theorem_lhs: PrimeSumResult,
}

fn run_primes(a: &PrimesArgs, stdout: &mut dyn Write) -> Result<i32, ConfigError> {
    check_args(&a.check)?;
    if !(a.s > 1.0) {
        return Err("--s must exceed 1 for the prime log-sum".into());
    }
    if a.n < 1 {
        return Err("--n must be at least 1".into());
    }
    let limit = a.check.primes_limit.unwrap_or(identities::DEFAULT_PRIMES_LIMIT);
    let tables = primes::build_tables(limit).map_err(|e| e.to_string())?;
    let direct = primes::prime_log_sum_direct(&tables, a.s, limit).map_err(|e| e.to_string())?;
    let mobius = primes::prime_log_sum_mobius(a.s, a.n).map_err(|e| e.to_string())?;
    let formal = match a.formal_n {
        None => None,
        Some(n) => {
            if !(1..=20).contains(&n) {
                return Err("--formal-n must be in 1..=20".into());
            }
            let n = n as u32;
            let up_to = limit.min(100_000);
            let c_n = (0..=n).map(|i| (format!("c_{i}"), primes::c_n(i).value)).collect();
            let a_n = (1..=n)
                .map(|i| primes::a_n_formal(i, a.n.max(2)))
                .collect::<Result<Vec<_>, _>>()
                .map_err(|e| e.to_string())?;
            Some(FormalReport {
                n,
                c_n,
                a_n,
                divergence: primes::divergence_diagnostic(&tables, n, up_to).map_err(|e| e.to_string())?,
                theorem_lhs: primes::theorem22_lhs(&tables, up_to, 0).map_err(|e| e.to_string())?,
            })
        }
    };
    let report = PrimesReport {
        s: a.s,
        mobius_terms: a.n,
        primes_limit: limit,
        abs_diff: (direct.value - mobius.value).abs(),
        direct,
        mobius,
        formal,
        generated_at: timestamp(a.no_timestamp),
    };
    let text = serde_json::to_string_pretty(&report).expect("report serializes") + "\n";
    write_out(&a.out, stdout, &text)?;
    Ok(EXIT_OK)
}

fn run_table(a: &TableArgs, stdout: &mut dyn Write, stderr: &mut dyn Write) -> Result<i32, ConfigError> {
    let base = case_for(&a.identity, &a.params, &a.check)?;
    let key = a.sweep.as_str();
    if !base.id.param_names().contains(&key) {
        return Err(format!("{} has no parameter '{key}' to sweep", base.id).into());
    }
    let key: &'static str = base.id.param_names().iter().find(|k| **k == key).unwrap();
    let cases: Vec<IdentityCase> = a
        .grid
        .values()?
        .into_iter()
        .map(|x| {
            let mut c = base.clone();
            apply_params(&mut c, &[(key, x)]);
            c
        })
        .collect();
    validate_all(&cases)?;
    let reports = identities::verify_cases(&cases);
    emit_reports("table", reports, &a.output, stdout, stderr)
}

fn configure_threads() -> Result<(), ConfigError> {
    let Ok(raw) = std::env::var("RAMELLIN_MAX_THREADS") else {
        return Ok(());
    };
    let n = parse_count(raw.trim()).map_err(|e| format!("RAMELLIN_MAX_THREADS: {e}"))?;
    if n == 0 {
        return Err("RAMELLIN_MAX_THREADS must be at least 1".into());
    }
    // a second call in the same process (tests) finds the pool already built
    let _ = rayon::ThreadPoolBuilder::new().num_threads(n as usize).build_global();
    Ok(())
}

/// Parse `argv` (including the program name) and run; returns the exit code.
pub fn run<I, T>(argv: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_CONFIG } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                stderr.write_all(text.as_bytes())
            } else {
                stdout.write_all(text.as_bytes())
            };
            return code;
        }
    };
    let result = configure_threads().and_then(|()| match &cli.command {
        Command::Verify(a) => run_verify(a, stdout, stderr),
        Command::Eval(a) => run_eval(a, stdout, stderr),
        Command::Kernel(a) => run_kernel(a, stdout),
        Command::Primes(a) => run_primes(a, stdout),
        Command::Table(a) => run_table(a, stdout, stderr),
    });
    match result {
        Ok(code) => code,
        Err(ConfigError(msg)) => {
            let _ = writeln!(stderr, "error: {msg}");
            EXIT_CONFIG
        }
    }
}

/// Entry point for the binary.
pub fn main_with_env() -> i32 {
    let stdout = io::stdout();
    let stderr = io::stderr();
    run(std::env::args_os(), &mut stdout.lock(), &mut stderr.lock())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn decimal_parsing() {
        for ok in ["0.25", "-3", "1e-6", "+2.", ".5", "1E+3"] {
            assert!(parse_decimal(ok).is_ok(), "{ok}");
        }
        for bad in ["", "0,25", "inf", "NaN", "1_000", "0x10", "1e", ".", "2 ", "١"] {
            assert!(parse_decimal(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn grid_counts() {
        let g = GridArgs { start: 0.0, stop: 50.0, step: Some(0.5), points: None };
        assert_eq!(g.values().unwrap().len(), 101);
        let g = GridArgs { start: 0.0, stop: 1.0, step: Some(0.1), points: None };
        assert_eq!(g.values().unwrap().len(), 11);
        let g = GridArgs { start: 1.0, stop: 0.0, step: Some(0.1), points: None };
        assert!(g.values().is_err());
        let g = GridArgs { start: 0.0, stop: 2.0, step: None, points: Some(5) };
        assert_eq!(g.values().unwrap(), vec![0.0, 0.5, 1.0, 1.5, 2.0]);
    }

    #[test]
    fn binomial_override_replaces_power() {
        let mut c = IdentityCase::new(IdentityId::RMT_1_2, &[("s", 0.5), ("c", 1.0)]);
        apply_params(&mut c, &[("a", 2.0), ("v", 3.0)]);
        assert!(!c.params.contains_key("c"));
        assert_eq!(c.params["v"], 3.0);
    }
}
