use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Context;
use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;

use heegner_core::heegner::{
    compare_with_table, construct, reproduce_row, Cell, ConstructOptions, ReproduceOptions, RowReport, Status, TableMatch,
    TABLE,
};
use heegner_core::lseries::ConductorTable;
use heegner_core::verify::{run_suite, CheckResult, Suite, VerifyOptions};
use heegner_core::{Case, Error};

/// println! that stops quietly when stdout is closed (e.g. piped into head).
macro_rules! out {
    ($($t:tt)*) => {{
        let _ = writeln!(std::io::stdout(), $($t)*);
    }};
}

/// Rational points on x^3 + y^3 = p and p^2 from CM points on X0(243).
#[derive(Parser)]
#[command(name = "heegner", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Construct the point for one prime p = 4, 7 (mod 9) and print a JSON report.
    Construct(ConstructArgs),
    /// Run the self-check suites and print a pass/fail matrix.
    Verify(VerifyArgs),
    /// Recompute the tables of points, L-values and cube residuosity.
    Table(TableArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Markdown,
}

#[derive(Args)]
struct PrecisionArgs {
    /// Starting precision in decimal digits (default max(120, 8p)).
    #[arg(long, value_parser = clap::value_parser!(u32).range(60..))]
    digits: Option<u32>,
    /// Highest precision tried before giving up (default twice the start).
    #[arg(long, value_parser = clap::value_parser!(u32).range(60..))]
    max_digits: Option<u32>,
}

impl PrecisionArgs {
    fn options(&self) -> ConstructOptions {
        ConstructOptions { digits: self.digits, max_digits: self.max_digits, ..ConstructOptions::default() }
    }
}

#[derive(Args)]
struct ConstructArgs {
    #[arg(long)]
    p: u64,
    /// 1 for x^3 + y^3 = p, 2 for x^3 + y^3 = p^2.
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u32).range(1..=2))]
    case: u32,
    #[command(flatten)]
    precision: PrecisionArgs,
    /// Include per-stage wall-clock timings (the report is then not reproducible).
    #[arg(long)]
    timings: bool,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SuiteArg {
    Parametrization,
    Constants,
    Shimura,
    Product,
    All,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long, value_enum, default_value_t = SuiteArg::All)]
    suite: SuiteArg,
    /// Precision of the numerical checks.
    #[arg(long, default_value_t = 100, value_parser = clap::value_parser!(u32).range(60..))]
    digits: u32,
    /// Primes for the Galois and product checks (repeatable; default 7, 13, 31, 43).
    #[arg(long = "p")]
    primes: Vec<u64>,
    /// Order of the q-expansion identity check.
    #[arg(long, default_value_t = 250)]
    order: i64,
    #[arg(long, value_enum, default_value_t = Format::Markdown)]
    format: Format,
}

#[derive(Args)]
struct TableArgs {
    /// Largest prime included.
    #[arg(long, default_value_t = 193)]
    max_p: u64,
    #[arg(long, value_enum, default_value_t = Format::Markdown)]
    format: Format,
    /// Leave the L-value column uncomputed.
    #[arg(long)]
    skip_lvalue: bool,
    /// Rows computed in parallel.
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..))]
    jobs: u64,
    /// JSON file {"conductors": {"n": N, ...}} overriding the built-in conductors.
    #[arg(long)]
    conductors: Option<PathBuf>,
    #[command(flatten)]
    precision: PrecisionArgs,
}

/// Usage errors (bad or unsupported input) exit with 2, computation errors with 1.
fn failure(e: &Error) -> ExitCode {
    eprintln!("error: {e}");
    match e.root() {
        Error::InvalidInput(_) | Error::UnsupportedPrime(_) => ExitCode::from(2),
        _ => ExitCode::from(1),
    }
}

fn cmd_construct(args: &ConstructArgs) -> anyhow::Result<ExitCode> {
    let case = Case::try_from(args.case)?;
    let opts = ConstructOptions { timings: args.timings, ..args.precision.options() };
    let report = match construct(args.p, case, &opts) {
        Ok(r) => r,
        Err(e) => return Ok(failure(&e)),
    };
    match args.format {
        Format::Json => {
            let mut out = serde_json::to_value(&report)?;
            if let Ok(m) = compare_with_table(report.p, report.case, report.w.as_ref()) {
                if m != TableMatch::NoRow {
                    out["table"] = serde_json::to_value(m)?;
                }
            }
            out!("{}", serde_json::to_string_pretty(&out)?);
        }
        Format::Markdown => {
            out!("| field | value |\n|---|---|");
            out!("| p | {} |\n| case | {} |\n| digits | {} |", report.p, report.case, report.digits);
            out!("| verdict | {} |", serde_json::to_value(report.verdict)?.as_str().unwrap_or_default());
            if let Some(xy) = &report.point {
                out!("| x | {} |\n| y | {} |", xy.x, xy.y);
            }
            if let Some(h) = report.height {
                out!("| height | {h:.6} |");
            }
            out!("| certificate | {} |", report.certificate.verdict);
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_verify(args: &VerifyArgs) -> anyhow::Result<ExitCode> {
    let suites: Vec<Suite> = match args.suite {
        SuiteArg::Parametrization => vec![Suite::Parametrization],
        SuiteArg::Constants => vec![Suite::Constants],
        SuiteArg::Shimura => vec![Suite::Shimura],
        SuiteArg::Product => vec![Suite::Product],
        SuiteArg::All => Suite::ALL.to_vec(),
    };
    let mut opts = VerifyOptions { digits: args.digits, order: args.order, ..VerifyOptions::default() };
    if !args.primes.is_empty() {
        opts.primes = args.primes.clone();
    }
    let rows: Vec<CheckResult> = suites.iter().flat_map(|&s| run_suite(s, &opts)).collect();
    match args.format {
        Format::Json => out!("{}", serde_json::to_string_pretty(&rows)?),
        Format::Markdown => {
            out!("| suite | check | result | detail |\n|---|---|---|---|");
            for r in &rows {
                let mark = if r.passed { "PASS" } else { "FAIL" };
                out!("| {} | {} | {mark} | {} |", r.suite, r.name, r.detail);
            }
        }
    }
    Ok(if rows.iter().all(|r| r.passed) { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

fn status_name(s: Status) -> &'static str {
    match s {
        Status::Match => "MATCH",
        Status::Differ => "DIFFER",
        Status::Error => "ERROR",
        Status::Skipped => "SKIPPED",
    }
}

fn markdown_table(title: &str, rows: &[&RowReport]) {
    out!("### {title}\n");
    out!("| p | L_alg | 3 is a cube mod p | point | row |\n|---|---|---|---|---|");
    for r in rows {
        let cell = |c: &Cell| match c.status {
            Status::Skipped => format!("— ({})", c.expected),
            Status::Match => format!("{} {}", c.computed, status_name(c.status)),
            _ => format!("{} {} (expected {})", c.computed, status_name(c.status), c.expected),
        };
        out!(
            "| {} | {} | {} | {} | {} |",
            r.p,
            cell(&r.l_alg),
            cell(&r.three_is_cube),
            cell(&r.point),
            status_name(r.status())
        );
    }
    out!();
}

fn cmd_table(args: &TableArgs) -> anyhow::Result<ExitCode> {
    let conductors = match &args.conductors {
        Some(path) => ConductorTable::from_path(path)?,
        None => ConductorTable::embedded(),
    };
    let opts = ReproduceOptions {
        construct: args.precision.options(),
        skip_lvalue: args.skip_lvalue,
        conductors,
        ..ReproduceOptions::new()
    };
    let rows: Vec<_> = TABLE.iter().filter(|r| r.p <= args.max_p).collect();
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(args.jobs as usize)
        .build()
        .context("building the worker pool")?;
    let reports: Vec<RowReport> = pool.install(|| rows.par_iter().map(|r| reproduce_row(r, &opts)).collect());
    let worst = reports.iter().map(|r| r.status()).fold(Status::Match, |acc, s| match (acc, s) {
        (Status::Error, _) | (_, Status::Error) => Status::Error,
        (Status::Differ, _) | (_, Status::Differ) => Status::Differ,
        _ => Status::Match,
    });
    match args.format {
        Format::Json => {
            let out = serde_json::json!({ "status": worst, "rows": reports });
            out!("{}", serde_json::to_string_pretty(&out)?);
        }
        Format::Markdown => {
            for (case, title) in [(Case::One, "x^3 + y^3 = p"), (Case::Two, "x^3 + y^3 = p^2")] {
                let part: Vec<&RowReport> = reports.iter().filter(|r| r.case == case).collect();
                markdown_table(title, &part);
            }
            out!("overall: {}", status_name(worst));
        }
    }
    Ok(if worst == Status::Match { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Construct(a) => cmd_construct(a),
        Command::Verify(a) => cmd_verify(a),
        Command::Table(a) => cmd_table(a),
    };
    result.unwrap_or_else(|e| match e.downcast_ref::<Error>() {
        Some(e) => failure(e),
        None => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    })
}
