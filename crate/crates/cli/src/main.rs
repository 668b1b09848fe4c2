//! `modinv`: command-line experiments for modular invariant theory.
//!
//! Every subcommand prints one JSON report. Exit status is 0 when all
//! checks pass, 1 on a violation, 2 when some check is inconclusive and 3
//! on bad usage or malformed input.

mod commands;
mod report;
mod setup;

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand};

use crate::commands::*;
use crate::report::{CommandEcho, Report, Timing, Tool, SCHEMA_VERSION};

const INPUT_ERROR: u8 = 3;

#[derive(Parser, Debug)]
#[command(
    name = "modinv",
    version,
    about = "Exact modular invariant theory experiments"
)]
struct Cli {
    /// Seed for randomized checks.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Dickson invariants of GL(d, q).
    Dickson(DicksonArgs),
    /// Steenrod reduced powers.
    #[command(subcommand)]
    Steenrod(SteenrodCommand),
    /// Graded pieces of an invariant ring.
    Invariants(InvariantsArgs),
    /// Cartan operators on localizations.
    #[command(subcommand)]
    Cartan(CartanCommand),
    /// A window of graded local cohomology.
    Localcoh(LocalcohArgs),
    /// Annihilator and regular-sequence probes.
    #[command(subcommand)]
    Probe(ProbeCommand),
    /// Tests a sequence of invariants for regularity.
    Depth(DepthArgs),
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Dickson(_) => "dickson",
            Command::Steenrod(SteenrodCommand::Apply(_)) => "steenrod apply",
            Command::Steenrod(SteenrodCommand::Check(_)) => "steenrod check",
            Command::Invariants(_) => "invariants",
            Command::Cartan(CartanCommand::Qr(_)) => "cartan qr",
            Command::Localcoh(_) => "localcoh",
            Command::Probe(ProbeCommand::Main(_)) => "probe main",
            Command::Probe(ProbeCommand::Ls(_)) => "probe ls",
            Command::Probe(ProbeCommand::Annp(_)) => "probe annp",
            Command::Depth(_) => "depth",
        }
    }
}

fn configure_threads() -> Result<()> {
    if let Ok(v) = std::env::var("MODINV_THREADS") {
        let n: usize = v
            .trim()
            .parse()
            .with_context(|| format!("MODINV_THREADS={v:?}"))?;
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .context("configuring the thread pool")?;
    }
    Ok(())
}

fn run(cli: Cli, args: Vec<String>) -> Result<u8> {
    configure_threads()?;
    let start = Instant::now();
    let outcome = match &cli.command {
        Command::Dickson(a) => dickson(a)?,
        Command::Steenrod(SteenrodCommand::Apply(a)) => steenrod_apply(a)?,
        Command::Steenrod(SteenrodCommand::Check(a)) => steenrod_check(a, cli.seed)?,
        Command::Invariants(a) => invariants(a)?,
        Command::Cartan(CartanCommand::Qr(a)) => cartan_qr(a)?,
        Command::Localcoh(a) => localcoh(a)?,
        Command::Probe(ProbeCommand::Main(a)) => probe_main(a)?,
        Command::Probe(ProbeCommand::Ls(a)) => probe_ls(a)?,
        Command::Probe(ProbeCommand::Annp(a)) => probe_annp(a)?,
        Command::Depth(a) => depth(a)?,
    };
    let status = outcome.status();
    let report = Report {
        schema_version: SCHEMA_VERSION,
        tool: Tool {
            name: "modinv",
            version: env!("CARGO_PKG_VERSION"),
        },
        command: CommandEcho {
            subcommand: cli.command.name().into(),
            args,
            seed: cli.seed,
        },
        status,
        checks: outcome.checks,
        result: outcome.result,
        timing: Timing {
            elapsed_ms: start.elapsed().as_millis() as u64,
        },
    };
    let mut text = serde_json::to_string_pretty(&report)?;
    text.push('\n');
    match &cli.output {
        Some(path) => {
            std::fs::write(path, text).with_context(|| format!("writing {}", path.display()))?
        }
        None => print!("{text}"),
    }
    Ok(status.exit_code() as u8)
}

fn main() -> ExitCode {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { INPUT_ERROR } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli, args) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(INPUT_ERROR)
        }
    }
}
