mod args;
mod commands;
mod output;
mod verify;

use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand};
use instanton_pvi::Error;
use serde_json::Value;

use args::{resolve, AnalyzeArgs, IntegrateArgs, MapArgs, ShootArgs};

const EXIT_CODES: &str = "\
Exit codes:
   0  success
   1  other library error
   2  invalid command line
   3  file could not be read or written
   4  malformed input file or configuration
   5  missing or inconsistent options
  10  parameter outside its domain
  11  non-finite value
  12  solution blew up
  13  step size underflow
  14  step budget exhausted
  15  degenerate branch (two coefficients vanish identically)
  16  pole of y or of the equation
  17  Okamoto transformation singular
  18  inverse map inconsistent
  19  shooting did not converge
  20  no bracket for the target r+
  21  c -> r+ not monotone
  22  too few samples in the fit window
  23  data not a power law on the window
  24  limit extrapolation unstable
  30  verify: at least one check failed

CSV columns:
  integrate, shoot --trajectory: t,a1,a2,a3,conserved_quantity
  map: t,x,y_re,y_im,dy_dx_re,dy_dx_im,residual
Numbers are written with 17 significant digits. JSON tables have the form
{\"columns\": [...], \"rows\": [[...], ...]}.

A --config file holds one object per subcommand, keyed by its name, with
the long option names as keys, e.g. {\"shoot\": {\"r-minus\": 3, \"c\": 1.5}}.
Options given on the command line take precedence.";

#[derive(Parser)]
#[command(
    name = "instanton-pvi",
    version,
    about = "Reduced SU(2) instantons on S^4 and their Painleve VI solutions",
    after_help = EXIT_CODES
)]
struct Cli {
    /// JSON configuration file
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Integrate the reduced ASD system and write the trajectory
    Integrate(IntegrateArgs),
    /// Integrate and map the trajectory to a Painleve VI solution
    Map(MapArgs),
    /// Solve the boundary-value problem with singular endpoints by shooting
    Shoot(ShootArgs),
    /// Fit the critical exponent of a mapped solution at x = 0, 1 or infinity
    Analyze(AnalyzeArgs),
    /// Run the built-in invariant suite and print a pass/fail table
    Verify,
}

/// A `verify` run with failing checks.
#[derive(Debug)]
struct VerifyFailed(usize);

impl std::fmt::Display for VerifyFailed {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{} check(s) failed", self.0)
    }
}

impl std::error::Error for VerifyFailed {}

fn library_code(e: &Error) -> u8 {
    match e {
        Error::Domain { .. } => 10,
        Error::NonFinite(_) => 11,
        Error::BlowUp { .. } => 12,
        Error::StepUnderflow { .. } => 13,
        Error::StepBudget { .. } => 14,
        Error::DegenerateBranch => 15,
        Error::Pole { .. } => 16,
        Error::OkamotoSingular => 17,
        Error::Inconsistent { .. } => 18,
        Error::NonConvergence { .. } => 19,
        Error::BracketFailure { .. } => 20,
        Error::NonMonotone { .. } => 21,
        Error::InsufficientWindow { .. } => 22,
        Error::NonPowerLaw { .. } => 23,
        Error::ExtrapolationUnstable { .. } => 24,
        _ => 1,
    }
}

fn exit_code(e: &anyhow::Error) -> u8 {
    for cause in e.chain() {
        if let Some(e) = cause.downcast_ref::<Error>() {
            return library_code(e);
        }
        if cause.downcast_ref::<VerifyFailed>().is_some() {
            return 30;
        }
        if cause.downcast_ref::<std::io::Error>().is_some() {
            return 3;
        }
        if let Some(e) = cause.downcast_ref::<csv::Error>() {
            return if e.is_io_error() { 3 } else { 4 };
        }
        if let Some(e) = cause.downcast_ref::<serde_json::Error>() {
            return if e.is_io() { 3 } else { 4 };
        }
    }
    5
}

fn verify() -> Result<()> {
    let checks = verify::run_suite();
    let width = checks.iter().map(|c| c.name.len()).max().unwrap_or(0);
    let mut failed = 0;
    for c in &checks {
        let status = if c.pass { "PASS" } else { "FAIL" };
        println!("{status}  {:width$}  {}", c.name, c.detail);
        failed += usize::from(!c.pass);
    }
    println!("{} passed, {failed} failed", checks.len() - failed);
    if failed > 0 {
        return Err(VerifyFailed(failed).into());
    }
    Ok(())
}

fn run(cli: Cli) -> Result<()> {
    let config: Option<Value> = match &cli.config {
        Some(p) => {
            let text = std::fs::read_to_string(p)
                .with_context(|| format!("cannot read {}", p.display()))?;
            Some(serde_json::from_str(&text).context("invalid configuration file")?)
        }
        None => None,
    };
    let config = config.as_ref();
    match cli.command {
        Command::Integrate(a) => commands::cmd_integrate(&resolve(a, config, "integrate")?),
        Command::Map(a) => commands::cmd_map(&resolve(a, config, "map")?),
        Command::Shoot(a) => commands::cmd_shoot(&resolve(a, config, "shoot")?),
        Command::Analyze(a) => commands::cmd_analyze(&resolve(a, config, "analyze")?),
        Command::Verify => verify(),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}
