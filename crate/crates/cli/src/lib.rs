//! Command-line front end: reads a run configuration, executes the
//! selected theorem checks and writes a JSON report.
//!
//! Exit status: 0 when every check passed, 1 when any check failed,
//! 2 on configuration or usage errors.

pub mod config;
pub mod describe;
pub mod error;
pub mod runner;

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use hcmono::TheoremId;

use crate::config::{RawConfig, Suite};
use crate::error::CliError;
use crate::runner::RunOptions;

#[derive(Debug, Parser)]
#[command(
    name = "hcmono",
    version,
    about = "Numerical checks of integral theorems for G-monogenic mappings"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run the checks listed in a configuration file.
    Run(RunArgs),
    /// Print derived quantities of a frame or map.
    Describe(DescribeArgs),
    /// Print the available theorem ids.
    ListChecks,
}

#[derive(Debug, Args)]
pub struct RunArgs {
    /// Configuration file (TOML).
    #[arg(long, required_unless_present = "list_checks")]
    pub config: Option<PathBuf>,
    /// Run only these theorem ids.
    #[arg(long, value_delimiter = ',')]
    pub only: Vec<String>,
    /// Override the acceptance tolerance of every check.
    #[arg(long)]
    pub tol: Option<f64>,
    /// Print the available theorem ids and exit.
    #[arg(long)]
    pub list_checks: bool,
    /// Report path; `-` writes to stdout.
    #[arg(long)]
    pub output: Option<PathBuf>,
    /// Seed for randomly sampled points.
    #[arg(long)]
    pub seed: Option<u64>,
    /// Suppress the per-check summary on stderr.
    #[arg(long, short)]
    pub quiet: bool,
}

#[derive(Debug, Args)]
pub struct DescribeArgs {
    /// Name of a frame or map in the config, or `frame_a` / `frame_harmonic`.
    #[arg(required_unless_present = "frame")]
    pub name: Option<String>,
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Inline frame `a1,a2,b1,b2`, e.g. `i,0,0,i`.
    #[arg(long, conflicts_with = "name")]
    pub frame: Option<String>,
}

fn list_checks() -> String {
    TheoremId::ALL
        .iter()
        .map(|t| format!("{:<22} {}\n", t.as_str(), t.summary()))
        .collect()
}

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|source| CliError::Read {
        path: path.to_path_buf(),
        source,
    })
}

fn run(args: &RunArgs) -> Result<i32, CliError> {
    if args.list_checks {
        print!("{}", list_checks());
        return Ok(0);
    }
    let path = args.config.as_ref().expect("clap enforces --config");
    let text = read(path)?;
    let suite = Suite::from_raw(RawConfig::parse(&text)?)?;

    let only = if args.only.is_empty() {
        None
    } else {
        let ids = args
            .only
            .iter()
            .map(|s| s.parse::<TheoremId>())
            .collect::<Result<Vec<_>, _>>()
            .map_err(CliError::Usage)?;
        Some(ids)
    };
    if let Some(t) = args.tol {
        if !(t.is_finite() && t >= 0.0) {
            return Err(CliError::Usage(format!("--tol must be a non-negative number, got {t}")));
        }
    }
    let opts = RunOptions {
        only,
        tol: args.tol,
        seed: args.seed,
    };
    let report = match runner::execute(&suite, &opts, &text) {
        Ok(r) => r,
        Err(rejected) => {
            let list = rejected
                .iter()
                .map(|r| format!("check #{} ({}): {}", r.check + 1, r.theorem, r.error))
                .collect();
            return Err(CliError::Invalid(list));
        }
    };

    if !args.quiet {
        for line in runner::summary_lines(&report) {
            eprintln!("{line}");
        }
        eprintln!(
            "{} checks, {} passed, {} failed",
            report.summary.total, report.summary.passed, report.summary.failed
        );
    }

    let json = runner::to_json(&report);
    let target = args.output.clone().or_else(|| {
        suite
            .output
            .as_ref()
            .map(|o| path.parent().unwrap_or(Path::new(".")).join(o))
    });
    match target {
        Some(p) if p.as_os_str() != "-" => std::fs::write(&p, json).map_err(|source| CliError::Write {
            path: p.clone(),
            source,
        })?,
        _ => {
            let _ = std::io::stdout().write_all(json.as_bytes());
        }
    }
    Ok(if report.all_passed() { 0 } else { 1 })
}

fn describe(args: &DescribeArgs) -> Result<i32, CliError> {
    let text = if let Some(lit) = &args.frame {
        describe::describe_frame(lit, describe::parse_frame_literal(lit)?)
    } else {
        let raw = match &args.config {
            Some(p) => Some(RawConfig::parse(&read(p)?)?),
            None => None,
        };
        describe::describe_name(args.name.as_deref().expect("clap enforces a name"), raw.as_ref())?
    };
    print!("{text}");
    Ok(0)
}

/// Parses arguments, runs the command and returns the exit status.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return e.exit_code();
        }
    };
    let outcome = match &cli.command {
        Command::Run(a) => run(a),
        Command::Describe(a) => describe(a),
        Command::ListChecks => {
            print!("{}", list_checks());
            Ok(0)
        }
    };
    outcome.unwrap_or_else(|e| {
        eprintln!("error: {e}");
        e.exit_code()
    })
}
