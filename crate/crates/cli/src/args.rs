use std::path::PathBuf;

use anyhow::{bail, Context, Result};
use clap::{Args, ValueEnum};
use instanton_pvi::{closed_form_solution, ClosedForm, InstantonState, SignChoice};
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use serde_json::Value;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Preset {
    /// a = (1,1,1), θ = 1
    Octahedral,
    /// a = (3(1−t²), 6(t+1), 6(1−t))/(t²+3), θ = 3
    Hopf,
    /// a₂ = a₃ = 0, needs --theta
    DegenerateA1,
    /// a₁ = a₃ = 0, needs --theta
    DegenerateA2,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Sign {
    Plus,
    Minus,
}

impl From<Sign> for SignChoice {
    fn from(s: Sign) -> Self {
        match s {
            Sign::Plus => SignChoice::Plus,
            Sign::Minus => SignChoice::Minus,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Point {
    Zero,
    One,
    Infinity,
}

/// Initial state and integration range shared by `integrate` and `map`.
#[derive(Debug, Clone, Default, Args, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub struct StateArgs {
    /// Initial coefficients a1,a2,a3 at t0
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub a: Option<Vec<f64>>,
    /// Built-in reference solution evaluated at t0 (instead of --a)
    #[arg(long, conflicts_with = "a")]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub preset: Option<Preset>,
    /// θ for the degenerate presets
    #[arg(long, allow_hyphen_values = true)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub theta: Option<f64>,
    /// Initial t in (0,1) [default: 0.5]
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub t0: Option<f64>,
    /// Final t in (0,1)
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub t_end: Option<f64>,
    /// Local error tolerance [default: 1e-10]
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tol: Option<f64>,
}

impl StateArgs {
    pub fn initial_state(&self) -> Result<InstantonState> {
        let t0 = self.t0.unwrap_or(0.5);
        match (&self.a, self.preset) {
            (Some(a), None) => {
                let Ok(a) = <[f64; 3]>::try_from(a.as_slice()) else {
                    bail!("--a takes exactly three values, got {}", a.len());
                };
                Ok(InstantonState::new(t0, a)?)
            }
            (None, Some(p)) => {
                let th = || self.theta.context("degenerate presets need --theta");
                let kind = match p {
                    Preset::Octahedral => ClosedForm::Octahedral,
                    Preset::Hopf => ClosedForm::Hopf,
                    Preset::DegenerateA1 => ClosedForm::DegenerateA1(th()?),
                    Preset::DegenerateA2 => ClosedForm::DegenerateA2(th()?),
                };
                Ok(closed_form_solution(kind, t0)?)
            }
            (Some(_), Some(_)) => bail!("--a and --preset are mutually exclusive"),
            (None, None) => bail!("one of --a or --preset is required"),
        }
    }

    pub fn t_end(&self) -> Result<f64> {
        self.t_end.context("--t-end is required")
    }

    pub fn tol(&self) -> f64 {
        self.tol.unwrap_or(1e-10)
    }
}

#[derive(Debug, Clone, Default, Args, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub struct OutputArgs {
    /// Output file [default: standard output]
    #[arg(long, short)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub output: Option<PathBuf>,
    /// Output format [default: csv]
    #[arg(long, value_enum)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub format: Option<Format>,
}

#[derive(Debug, Clone, Default, Args, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub struct IntegrateArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub state: StateArgs,
    #[command(flatten)]
    #[serde(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Clone, Default, Args, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub struct MapArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub state: StateArgs,
    /// Sign of θ in the map [default: plus]
    #[arg(long, value_enum)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sign: Option<Sign>,
    #[command(flatten)]
    #[serde(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Clone, Default, Args, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", deny_unknown_fields)]
pub struct ShootArgs {
    /// Boundary value r- = lim a2 at t = 1 (>= 1)
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub r_minus: Option<f64>,
    /// Boundary amplitude c (>= 0)
    #[arg(long, conflicts_with = "target_r_plus")]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub c: Option<f64>,
    /// Solve for the c giving this r+ = lim a1 at t = 0
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub target_r_plus: Option<f64>,
    /// Integration tolerance [default: 1e-10]
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tol: Option<f64>,
    /// 1 − t at the series handoff [default: 1e-5]
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub eps_start: Option<f64>,
    /// Smallest t reached [default: 1e-6]
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub eps_end: Option<f64>,
    /// Also write the trajectory (t, a1, a2, a3, conserved_quantity) as CSV
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub trajectory: Option<PathBuf>,
    /// Output file [default: standard output]
    #[arg(long, short)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Clone, Default, Args, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", deny_unknown_fields)]
pub struct AnalyzeArgs {
    /// Solution file written by `map` (CSV, or JSON by extension)
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub input: Option<PathBuf>,
    /// Critical point to fit
    #[arg(long, value_enum)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub point: Option<Point>,
    /// Window width ratio [default: 1e-3]
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ratio: Option<f64>,
    /// Minimum samples per window [default: 8]
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub min_samples: Option<usize>,
    /// Largest accepted log deviation from the fitted line [default: 0.05]
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub max_residual: Option<f64>,
    /// Output file [default: standard output]
    #[arg(long, short)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub output: Option<PathBuf>,
}

/// Overlay the flags given on the command line onto the section of the
/// configuration file named after the subcommand.
pub fn resolve<T: Serialize + DeserializeOwned>(
    cli: T,
    config: Option<&Value>,
    section: &str,
) -> Result<T> {
    let Some(config) = config else {
        return Ok(cli);
    };
    let mut base = match config.get(section) {
        Some(Value::Object(m)) => m.clone(),
        Some(_) => bail!("config section `{section}` is not an object"),
        None => return Ok(cli),
    };
    if let Value::Object(flags) = serde_json::to_value(&cli)? {
        base.extend(flags);
    }
    serde_json::from_value(Value::Object(base))
        .with_context(|| format!("invalid config section `{section}`"))
}
