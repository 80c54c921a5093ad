//! `syzygy`: Betti tables, theorem sweeps and property suites from the
//! command line.
//!
//! Exit status is 0 when everything requested passed, 1 when a verdict or an
//! internal consistency check failed, and 2 for invalid requests.

mod args;
mod maps;

use std::fs;
use std::path::Path;
use std::process::ExitCode;

use clap::Parser;
use thiserror::Error;

use args::{BettiArgs, Cli, Command, Common, Format, SuiteArgs, SweepArgs, TheoremArgs};
use syzygy_core::gates::{run_theorem, Gate, GateRun, Report, Suite, SuiteConfig, TheoremConfig, Verdict};
use syzygy_core::koszul::{hilbert_numerator_check, CellRecord};
use syzygy_core::models::{compute_betti_table, BettiOptions, ModelSpec};
use syzygy_core::{BettiTable, CharZeroPolicy};

#[derive(Debug, Error)]
enum CliError {
    #[error(transparent)]
    Core(#[from] syzygy_core::Error),

    #[error("{0}")]
    Usage(String),

    #[error("writing {path}: {source}")]
    Io { path: String, source: std::io::Error },
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Core(e) if !e.is_precondition() => 1,
            _ => 2,
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(jobs) = cli.common.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(jobs).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

/// Runs the command; `Ok(false)` means some verdict failed.
fn run(cli: &Cli) -> Result<bool, CliError> {
    let common = &cli.common;
    match &cli.command {
        Command::Betti(a) => betti(common, a),
        Command::Theorem(a) => theorem(common, a),
        Command::Suite(a) => suite(common, a),
        Command::Maps(a) => maps::run(common, a),
        Command::Sweep(a) => sweep(common, a),
    }
}

fn policy(common: &Common) -> Result<CharZeroPolicy, CliError> {
    let mut policy = CharZeroPolicy::with_primes(common.proxy_primes.clone()).map_err(syzygy_core::Error::from)?;
    policy.rank.seed = common.seed;
    Ok(policy)
}

fn betti_options(common: &Common, q_max: usize) -> BettiOptions {
    BettiOptions {
        q_max,
        seed: common.seed,
        timings: common.timings,
        cache_dir: std::env::var_os("SYZYGY_CACHE_DIR").map(Into::into),
        ..BettiOptions::default()
    }
}

fn parse_model(s: &str) -> Result<ModelSpec, CliError> {
    s.parse::<ModelSpec>().map_err(|e| CliError::Core(e.into()))
}

fn write_file(dir: &Path, name: &str, contents: &str) -> Result<(), CliError> {
    let io = |source| CliError::Io {
        path: dir.join(name).display().to_string(),
        source,
    };
    fs::create_dir_all(dir).map_err(io)?;
    fs::write(dir.join(name), contents).map_err(io)
}

fn table_csv(table: &BettiTable) -> String {
    let mut out = format!("{}\n", CellRecord::CSV_HEADER);
    for r in table.records() {
        out.push_str(&r.to_csv());
        out.push('\n');
    }
    out
}

fn table_pretty(table: &BettiTable) -> String {
    let mut head = format!(
        "{} char={} ({})",
        table.model, table.characteristic, table.certification
    );
    if let Some(flag) = &table.flagged {
        head.push_str(&format!(" FLAGGED: {flag}"));
    }
    format!("{head}\n{}", table.to_pretty())
}

fn betti(common: &Common, a: &BettiArgs) -> Result<bool, CliError> {
    let spec = match (&a.model, a.g, a.d) {
        (Some(m), _, _) => parse_model(m)?,
        (None, Some(g), _) => parse_model(&format!("tangent-rnc:g={g}"))?,
        (None, None, Some(d)) => parse_model(&format!("elliptic:d={d}"))?,
        (None, None, None) => return Err(CliError::Usage("one of --model, --g or --d is required".into())),
    };
    let policy = policy(common)?;
    let options = betti_options(common, *a.q.end());
    for &field in &a.chars {
        let table = compute_betti_table(spec, field, &policy, &options)?;
        let json = table.to_json();
        match common.format {
            Format::Json => println!("{json}"),
            Format::Csv => print!("{}", table_csv(&table)),
            Format::Pretty => print!("{}", table_pretty(&table)),
        }
        if let Some(dir) = &common.out {
            let stem = format!("{}-char{}", slug(&table.model), table.characteristic);
            write_file(dir, &format!("{stem}.json"), &(json + "\n"))?;
            write_file(dir, &format!("{stem}.txt"), &table_pretty(&table))?;
        }
    }
    Ok(true)
}

fn slug(model: &str) -> String {
    model
        .chars()
        .map(|c| if c.is_ascii_alphanumeric() || c == '-' { c } else { '_' })
        .collect()
}

fn emit_report(common: &Common, report: &Report, stem: &str) -> Result<bool, CliError> {
    match common.format {
        Format::Json => println!("{}", report.to_json()),
        Format::Csv => print!("{}", report.to_csv()),
        Format::Pretty => print!("{}", report.summary()),
    }
    if let Some(dir) = &common.out {
        write_file(dir, &format!("{stem}.json"), &(report.to_json() + "\n"))?;
        write_file(dir, &format!("{stem}.csv"), &report.to_csv())?;
    }
    Ok(report.passed())
}

fn theorem(common: &Common, a: &TheoremArgs) -> Result<bool, CliError> {
    let mut config = TheoremConfig::default_for(a.which);
    config.genera = a.g.clone();
    if !a.chars.is_empty() {
        config.chars = a.chars.clone();
    }
    config.policy = policy(common)?;
    config.timings = common.timings;
    let report = run_theorem(a.which, &config)?;
    emit_report(common, &report, &format!("theorem-{}", a.which))
}

fn suite(common: &Common, a: &SuiteArgs) -> Result<bool, CliError> {
    let mut config = SuiteConfig {
        policy: policy(common)?,
        betti: betti_options(common, 4),
        rnc_g_max: a.g_max,
        seed: common.seed,
        ..SuiteConfig::default()
    };
    if !a.chars.is_empty() {
        config.chars = a.chars.clone();
    }
    if !a.model.is_empty() {
        config.curve_models = a.model.iter().map(|m| parse_model(m)).collect::<Result<_, _>>()?;
    }
    let gates: Vec<Gate> = if a.gate.is_empty() {
        Gate::ALL.to_vec()
    } else {
        a.gate.clone()
    };
    let report = Suite::new(config).run(&gates)?;
    emit_report(common, &report, "suite")
}

fn sweep(common: &Common, a: &SweepArgs) -> Result<bool, CliError> {
    let specs: Vec<ModelSpec> = match a.model.as_str() {
        "tangent-rnc" => a.g.clone().map(|g| ModelSpec::TangentRnc { g }).collect(),
        "elliptic" => a.d.clone().map(|d| ModelSpec::Elliptic { d }).collect(),
        "genus2" => vec![ModelSpec::Genus2],
        other => {
            return Err(CliError::Usage(format!(
                "unknown model family {other:?} (expected tangent-rnc, elliptic or genus2)"
            )))
        }
    };
    let policy = policy(common)?;
    let options = betti_options(common, (*a.q.end()).max(3));
    let mut records = Vec::new();
    let mut failures = Vec::new();
    for spec in &specs {
        for &field in &a.chars {
            let table = compute_betti_table(*spec, field, &policy, &options)?;
            let h = spec.hilbert();
            if !hilbert_numerator_check(&table, |m| h.value(m)) {
                failures.push(format!("{spec} char={field}: numerator identity fails"));
            }
            records.extend(
                table
                    .records()
                    .into_iter()
                    .filter(|r| a.q.contains(&r.q) && a.p.as_ref().map_or(true, |p| p.contains(&r.p))),
            );
        }
    }
    let mut report = Report::new();
    report.add(GateRun {
        verdict: Verdict::new("numerator", specs.len() * a.chars.len(), failures),
        records,
        notes: Vec::new(),
    });
    emit_report(common, &report, "sweep")
}
