use anyhow::{Context, Result};
use instanton_pvi::critical::FitConfig;
use instanton_pvi::painleve::residual_report;
use instanton_pvi::shooting::{ShootingConfig, SolveConfig};
use instanton_pvi::{
    conserved_quantity, fit_exponent, integrate_asd, map_to_pvi, pvi_parameters, shoot,
    solve_for_target, theta_from_state, CoefficientConvention, Complex64, CriticalPoint,
    IntegratorConfig, PviSample, RootSign, SignChoice, Trajectory,
};
use serde::Serialize;

use crate::args::{AnalyzeArgs, Format, IntegrateArgs, MapArgs, Point, ShootArgs, StateArgs};
use crate::output::{write_json, Table};

pub const TRAJECTORY_COLUMNS: [&str; 5] = ["t", "a1", "a2", "a3", "conserved_quantity"];
pub const SOLUTION_COLUMNS: [&str; 7] =
    ["t", "x", "y_re", "y_im", "dy_dx_re", "dy_dx_im", "residual"];

/// Samples closer than this to a pole of the equation get no residual.
const RESIDUAL_MASK: f64 = 1e-6;

fn integrate(state: &StateArgs) -> Result<Trajectory> {
    let s0 = state.initial_state()?;
    Ok(integrate_asd(
        &s0,
        state.t_end()?,
        &IntegratorConfig::with_tol(state.tol()),
    )?)
}

pub fn trajectory_table(traj: &Trajectory) -> Table {
    let mut t = Table::new(&TRAJECTORY_COLUMNS);
    for s in traj.samples() {
        let a = s.a();
        t.push(
            [s.t(), a[0], a[1], a[2], conserved_quantity(s)]
                .map(Some)
                .to_vec(),
        );
    }
    t
}

pub fn cmd_integrate(args: &IntegrateArgs) -> Result<()> {
    let traj = integrate(&args.state)?;
    trajectory_table(&traj).write(
        args.out.output.as_deref(),
        args.out.format.unwrap_or(Format::Csv),
    )
}

pub fn solution_table(traj: &Trajectory, sign: SignChoice) -> Result<Table> {
    let theta = theta_from_state(traj.first(), RootSign::Positive)?;
    let samples = map_to_pvi(traj, &theta, sign)?;
    let params = pvi_parameters(&theta, sign.paired_alpha_sign());
    let report = residual_report(
        &samples,
        &params,
        CoefficientConvention::Standard,
        RESIDUAL_MASK,
    )?;
    let mut t = Table::new(&SOLUTION_COLUMNS);
    for (p, r) in samples.iter().zip(&report.residuals) {
        t.push(vec![
            Some(p.t_source),
            Some(p.x),
            Some(p.y.re),
            Some(p.y.im),
            Some(p.dy_dx.re),
            Some(p.dy_dx.im),
            *r,
        ]);
    }
    Ok(t)
}

pub fn cmd_map(args: &MapArgs) -> Result<()> {
    let traj = integrate(&args.state)?;
    let sign = args.sign.map_or(SignChoice::Plus, SignChoice::from);
    solution_table(&traj, sign)?.write(
        args.out.output.as_deref(),
        args.out.format.unwrap_or(Format::Csv),
    )
}

#[derive(Debug, Serialize)]
pub struct ShootReport {
    pub c: f64,
    pub r_minus: f64,
    pub r_plus: f64,
    pub r_plus_error_estimate: f64,
    pub theta: f64,
    pub theta_squared: f64,
    pub non_decaying_mode: bool,
}

pub fn cmd_shoot(args: &ShootArgs) -> Result<()> {
    let r_minus = args.r_minus.context("--r-minus is required")?;
    let mut template = ShootingConfig::new(args.c.unwrap_or(0.0), r_minus);
    if let Some(tol) = args.tol {
        template.tol = tol;
    }
    if let Some(e) = args.eps_start {
        template.eps_start = e;
    }
    if let Some(e) = args.eps_end {
        template.eps_end = e;
    }
    let (c, res) = match (args.c, args.target_r_plus) {
        (Some(c), None) => (c, shoot(&template)?),
        (None, Some(target)) => {
            let cfg = SolveConfig {
                shooting: template,
                ..Default::default()
            };
            solve_for_target(target, r_minus, &cfg)?
        }
        _ => anyhow::bail!("exactly one of --c or --target-r-plus is required"),
    };
    if let Some(path) = &args.trajectory {
        trajectory_table(&res.trajectory).write(Some(path), Format::Csv)?;
    }
    let report = ShootReport {
        c,
        r_minus,
        r_plus: res.r_plus,
        r_plus_error_estimate: res.r_plus_error_estimate,
        theta: res.theta.theta().re,
        theta_squared: res.theta.theta_squared(),
        non_decaying_mode: res.non_decaying_mode,
    };
    write_json(&report, args.output.as_deref())
}

/// Read `(x, y, dy/dx)` samples from a table with the solution columns.
pub fn samples_from_table(table: &Table) -> Result<Vec<PviSample>> {
    let col = |name: &str| {
        table
            .column(name)
            .with_context(|| format!("input has no `{name}` column"))
    };
    let (x, y_re) = (col("x")?, col("y_re")?);
    let opt = |name: &str| table.column(name);
    let (t, y_im, d_re, d_im) = (opt("t"), opt("y_im"), opt("dy_dx_re"), opt("dy_dx_im"));
    let cell = |row: &[Option<f64>], i: usize| row.get(i).copied().flatten();
    let get = |row: &[Option<f64>], i: Option<usize>| i.and_then(|i| cell(row, i)).unwrap_or(0.0);
    Ok(table
        .rows
        .iter()
        .filter_map(|row| {
            Some(PviSample {
                t_source: get(row, t),
                x: cell(row, x)?,
                y: Complex64::new(cell(row, y_re)?, get(row, y_im)),
                dy_dx: Complex64::new(get(row, d_re), get(row, d_im)),
                d2y_dx2: None,
            })
        })
        .collect())
}

pub fn cmd_analyze(args: &AnalyzeArgs) -> Result<()> {
    let input = args.input.as_deref().context("--input is required")?;
    let point = match args.point.context("--point is required")? {
        Point::Zero => CriticalPoint::Zero,
        Point::One => CriticalPoint::One,
        Point::Infinity => CriticalPoint::Infinity,
    };
    let mut cfg = FitConfig::default();
    if let Some(r) = args.ratio {
        cfg.ratio = r;
    }
    if let Some(n) = args.min_samples {
        cfg.min_samples = n;
    }
    if let Some(r) = args.max_residual {
        cfg.max_residual = r;
    }
    let samples = samples_from_table(&Table::read(input)?)?;
    let fit = fit_exponent(&samples, point, &cfg)?;
    write_json(&fit, args.output.as_deref())
}
