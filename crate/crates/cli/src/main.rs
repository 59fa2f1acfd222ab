//! `ozeta`: zeta-function tables and brute-force verification from the
//! command line.
//!
//! Exit status is 0 when every check passes, 1 when a check fails and 2
//! for configuration or bound errors.

mod commands;
mod config;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, Context, Result};
use clap::{Args, Parser, Subcommand};

use config::{CommandName, Dec, Format, JobConfig, StratumSpec, SurfaceSpec};
use report::Report;

#[derive(Parser, Debug)]
#[command(name = "ozeta", version, about = "Exact zeta functions of orders, with brute-force oracles")]
struct Cli {
    /// JSON job file; flags given on the command line override it.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Hard cap on the truncation N.
    #[arg(long = "max-N", global = true)]
    max_truncation: Option<usize>,
    /// JSON results file from an earlier run to compare against.
    #[arg(long, global = true)]
    compare: Option<PathBuf>,
    #[command(subcommand)]
    command: Option<Command>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Hey and slice series of a local order.
    Local(LocalArgs),
    /// Zeta function of a global order, with its ratio to the matrix algebra.
    Global(OrderArgs),
    /// Poincare series of a global order.
    Poincare(OrderArgs),
    /// Euler product over closed points against the closed form.
    Euler(OrderArgs),
    /// Symbolic Hecke identities against the slice series.
    HeckeVerify(LocalArgs),
    /// Formula series against brute-force counts.
    OracleVerify(OracleArgs),
    /// Brute-force counts only.
    Census(CensusArgs),
}

#[derive(Args, Debug)]
struct LocalArgs {
    #[arg(long)]
    q: Option<u64>,
    #[arg(long)]
    r: Option<usize>,
    #[arg(long)]
    m: Option<usize>,
    /// Residue degree for the unramified local factor.
    #[arg(long)]
    k: Option<usize>,
    #[arg(long = "N")]
    truncation: Option<usize>,
}

#[derive(Args, Debug)]
struct OrderArgs {
    #[arg(long)]
    q: Option<u64>,
    #[arg(long)]
    d: Option<usize>,
    #[arg(long)]
    e: Option<usize>,
    /// three_lines, conic_line, nodal_cubic or sklyanin.
    #[arg(long)]
    preset: Option<String>,
    /// Frobenius trace of the elliptic curve for the sklyanin preset.
    #[arg(long, allow_hyphen_values = true)]
    trace: Option<i64>,
    /// Catalog entry, as `name` or `name(p1,p2,...)`.
    #[arg(long)]
    surface: Option<String>,
    /// Ramification stratum `cover:e`; repeatable.
    #[arg(long)]
    stratum: Vec<String>,
    #[arg(long = "N")]
    truncation: Option<usize>,
}

#[derive(Args, Debug)]
struct OracleArgs {
    /// hey, plane, symbol, tower, segal or p2.
    #[arg(long)]
    suite: Option<String>,
    #[arg(long)]
    q: Option<u64>,
    #[arg(long)]
    r: Option<usize>,
    /// Colength bound.
    #[arg(long)]
    n: Option<usize>,
}

#[derive(Args, Debug)]
struct CensusArgs {
    /// sublattices, ideals-2d, symbol, p2 or integer-poly.
    #[arg(long)]
    kind: Option<String>,
    #[arg(long)]
    q: Option<u64>,
    #[arg(long)]
    r: Option<usize>,
    #[arg(long)]
    n: Option<usize>,
}

fn dec<T>(v: Option<T>) -> Option<Dec<T>> {
    v.map(Dec)
}

impl Command {
    fn into_config(self) -> Result<JobConfig> {
        let mut c = JobConfig::default();
        match self {
            Command::Local(a) | Command::HeckeVerify(a) => {
                (c.q, c.r, c.m, c.k, c.truncation) = (dec(a.q), dec(a.r), dec(a.m), dec(a.k), dec(a.truncation));
            }
            Command::Global(a) | Command::Poincare(a) | Command::Euler(a) => {
                (c.q, c.d, c.e, c.trace, c.truncation) =
                    (dec(a.q), dec(a.d), dec(a.e), dec(a.trace), dec(a.truncation));
                c.preset = a.preset;
                c.surface = a.surface.as_deref().map(SurfaceSpec::parse).transpose()?;
                if !a.stratum.is_empty() {
                    c.strata = Some(a.stratum.iter().map(|s| StratumSpec::parse(s)).collect::<Result<_>>()?);
                }
            }
            Command::OracleVerify(a) => {
                (c.suite, c.q, c.r, c.n) = (a.suite, dec(a.q), dec(a.r), dec(a.n));
            }
            Command::Census(a) => {
                (c.census, c.q, c.r, c.n) = (a.kind, dec(a.q), dec(a.r), dec(a.n));
            }
        }
        Ok(c)
    }

    fn name(&self) -> CommandName {
        match self {
            Command::Local(_) => CommandName::Local,
            Command::Global(_) => CommandName::Global,
            Command::Poincare(_) => CommandName::Poincare,
            Command::Euler(_) => CommandName::Euler,
            Command::HeckeVerify(_) => CommandName::HeckeVerify,
            Command::OracleVerify(_) => CommandName::OracleVerify,
            Command::Census(_) => CommandName::Census,
        }
    }
}

fn init_threads() -> Result<()> {
    let Ok(value) = std::env::var("OZETA_THREADS") else {
        return Ok(());
    };
    let n: usize =
        value.trim().parse().map_err(|_| anyhow!("OZETA_THREADS must be a positive integer, got `{value}`"))?;
    if n == 0 {
        return Err(anyhow!("OZETA_THREADS must be a positive integer, got `{value}`"));
    }
    rayon::ThreadPoolBuilder::new().num_threads(n).build_global().context("configuring worker threads")
}

fn execute(cli: Cli) -> Result<Report> {
    init_threads()?;
    let mut job = match &cli.config {
        Some(path) => JobConfig::load(path)?,
        None => JobConfig::default(),
    };
    if let Some(cmd) = cli.command {
        let name = cmd.name();
        if job.command.is_some_and(|c| c != name) {
            return Err(anyhow!("config command {:?} conflicts with subcommand {:?}", job.command.unwrap(), name));
        }
        let mut flags = cmd.into_config()?;
        flags.command = Some(name);
        job = job.overlay(flags);
    }
    job = job.overlay(JobConfig { format: cli.format, max_truncation: dec(cli.max_truncation), ..Default::default() });
    let mut report = commands::run(&job)?;
    if let Some(path) = &cli.compare {
        report.compare_with(&Report::load(path)?);
    }
    Ok(report)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let flag_format = cli.format;
    match execute(cli) {
        Ok(report) => {
            let format = report.config.format.or(flag_format).unwrap_or_default();
            let out = match format {
                Format::Text => report.render_text(),
                Format::Json => report.render_json(),
                Format::Csv => report.render_csv(),
            };
            print!("{out}");
            if report.passed() {
                ExitCode::SUCCESS
            } else {
                for c in report.checks.iter().filter(|c| !c.passed) {
                    eprintln!("mismatch in {}: {}", c.name, c.detail);
                }
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
