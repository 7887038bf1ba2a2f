//! Built-in invariant suite behind `verify`.

use anyhow::Result;
use instanton_pvi::asd::Trajectory;
use instanton_pvi::critical::{
    geometric_offsets, limit_check, samples_at, FitConfig, LimitConfig, VerdictConfig,
};
use instanton_pvi::painleve::{pvi_sample_at, squares_from_solution};
use instanton_pvi::shooting::{ShootingConfig, SolveConfig};
use instanton_pvi::{
    algebraicity_verdict, closed_form_solution, conserved_quantity, fit_exponent, integrate_asd,
    map_to_pvi, pvi_parameters, pvi_residual, rationality_test, shoot, solve_for_target,
    theta_from_state, ClosedForm, CoefficientConvention, CriticalPoint, InstantonState,
    IntegratorConfig, RootSign, SignChoice, ThetaData, Verdict,
};

pub struct Check {
    pub name: &'static str,
    pub pass: bool,
    pub detail: String,
}

fn check(name: &'static str, f: impl FnOnce() -> Result<(bool, String)>) -> Check {
    match f() {
        Ok((pass, detail)) => Check { name, pass, detail },
        Err(e) => Check {
            name,
            pass: false,
            detail: format!("error: {e:#}"),
        },
    }
}

/// `y` of the octahedral and Hopf solutions on the `+` branch.
fn reference_y(t: f64) -> f64 {
    (t - 3.0).powi(2) * (t + 1.0) / ((t + 3.0) * (t * t + 3.0))
}

fn grid(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    (0..n)
        .map(|i| lo + (hi - lo) * i as f64 / (n - 1) as f64)
        .collect()
}

const STATES: [[f64; 3]; 4] = [
    [1.0, 1.0, 1.0],
    [0.9, -1.3, 0.4],
    [-0.5, 0.7, 1.2],
    [1.4, 0.3, -0.8],
];

fn closed_form_map(kind: ClosedForm) -> Result<(bool, String)> {
    let th = ThetaData::from_real(kind.theta())?;
    let mut worst = 0.0f64;
    for t in grid(0.1, 0.9, 81) {
        let p = pvi_sample_at(t, kind.coefficients_at(t)?, &th, SignChoice::Plus)?;
        let want = reference_y(t);
        worst = worst.max((p.y.re - want).abs() / want.abs());
    }
    let s = closed_form_solution(kind, 0.5)?;
    let dth =
        (theta_from_state(&s, RootSign::Positive)?.theta_squared() - th.theta_squared()).abs();
    Ok((
        worst < 1e-8 && dth < 1e-10,
        format!("max rel {worst:.1e}, |theta^2 drift| {dth:.1e}"),
    ))
}

fn both_ways(s0: &InstantonState, cfg: &IntegratorConfig) -> Result<[Trajectory; 2]> {
    Ok([integrate_asd(s0, 0.1, cfg)?, integrate_asd(s0, 0.9, cfg)?])
}

fn conservation() -> Result<(bool, String)> {
    let cfg = IntegratorConfig::with_tol(1e-10);
    let mut worst = 0.0f64;
    for a in STATES {
        let s0 = InstantonState::new(0.5, a)?;
        let q0 = conserved_quantity(&s0);
        for tr in both_ways(&s0, &cfg)? {
            for s in tr.samples() {
                worst = worst.max((conserved_quantity(s) - q0).abs() / q0.abs().max(1.0));
            }
        }
    }
    Ok((worst < 1e-8, format!("max drift {worst:.1e}")))
}

fn hopf_integration() -> Result<(bool, String)> {
    let s0 = closed_form_solution(ClosedForm::Hopf, 0.5)?;
    let mut worst = 0.0f64;
    for tr in both_ways(&s0, &IntegratorConfig::with_tol(1e-10))? {
        for s in tr.samples() {
            let exact = ClosedForm::Hopf.coefficients_at(s.t())?;
            for (got, want) in s.a().into_iter().zip(exact) {
                worst = worst.max((got - want).abs());
            }
        }
    }
    Ok((worst < 1e-8, format!("max abs error {worst:.1e}")))
}

fn residual_and_round_trip() -> Result<(bool, String)> {
    let cfg = IntegratorConfig::with_tol(1e-10);
    let (mut res, mut rt) = (0.0f64, 0.0f64);
    for kind in [ClosedForm::Octahedral, ClosedForm::Hopf] {
        let s0 = closed_form_solution(kind, 0.5)?;
        let th = theta_from_state(&s0, RootSign::Positive)?;
        for tr in both_ways(&s0, &cfg)? {
            for sign in [SignChoice::Plus, SignChoice::Minus] {
                let params = pvi_parameters(&th, sign.paired_alpha_sign());
                let ps = map_to_pvi(&tr, &th, sign)?;
                for (p, s) in ps.iter().zip(tr.samples()) {
                    res = res.max(pvi_residual(p, &params, CoefficientConvention::Standard)?);
                    let sq = squares_from_solution(s.t(), p.x, p.y, p.dy_dx, &th, sign)?;
                    for (got, a) in sq.into_iter().zip(s.a()) {
                        rt = rt.max((got - a * a).norm());
                    }
                }
            }
        }
    }
    Ok((
        res < 1e-6 && rt < 1e-7,
        format!("max residual {res:.1e}, max round trip {rt:.1e}"),
    ))
}

fn hopf_shot() -> Result<(bool, String)> {
    let res = shoot(&ShootingConfig::new(1.5, 3.0))?;
    let err = (res.r_plus - 1.0).abs();
    Ok((err < 1e-8, format!("r+ = {:.10}", res.r_plus)))
}

fn target_solve() -> Result<(bool, String)> {
    let (c, res) = solve_for_target(0.5, 2.0, &SolveConfig::default())?;
    let err = (res.r_plus - 0.5).abs();
    Ok((err <= 1e-8, format!("c = {c:.8}, |r+ - 0.5| = {err:.1e}")))
}

fn rationality() -> Result<(bool, String)> {
    let two_thirds = rationality_test(0.666_666_7, 12, 1e-6);
    let none = rationality_test(0.708, 12, 1e-3);
    let pass = matches!(two_thirds, Some(r) if (r.numer, r.denom) == (2, 3)) && none.is_none();
    Ok((pass, "0.6666667 -> 2/3, 0.708 -> none".into()))
}

fn verdicts() -> Result<(bool, String)> {
    let u = geometric_offsets(1e-6, 0.5, 300)?;
    let ts: Vec<f64> = u
        .iter()
        .copied()
        .chain(u.iter().rev().skip(1).map(|u| 1.0 - u))
        .collect();
    let octa = Trajectory::from_closed_form(ClosedForm::Octahedral, &ts)?;
    let nonres = shoot(&ShootingConfig::new(0.7, 2.5))?;
    let mut out = Vec::new();
    for (traj, th) in [
        (&octa, ThetaData::from_real(1.0)?),
        (&nonres.trajectory, nonres.theta),
    ] {
        let (lo, hi) = traj.t_range();
        let near0 = geometric_offsets(lo.max(1e-6), 0.1, 200)?;
        let near1: Vec<f64> = geometric_offsets((1.0 - hi).max(1e-6), 0.1, 200)?
            .into_iter()
            .map(|u| 1.0 - u)
            .collect();
        let (mut fits, mut limits) = (Vec::new(), Vec::new());
        for sign in [SignChoice::Plus, SignChoice::Minus] {
            let cfg = FitConfig::default();
            fits.push(fit_exponent(
                &samples_at(traj, &near0, &th, sign)?,
                CriticalPoint::One,
                &cfg,
            )?);
            fits.push(fit_exponent(
                &samples_at(traj, &near1, &th, sign)?,
                CriticalPoint::Infinity,
                &cfg,
            )?);
            limits.push(limit_check(traj, &th, sign, None, &LimitConfig::default())?);
        }
        out.push(algebraicity_verdict(
            th.theta().re,
            &fits,
            &limits,
            &VerdictConfig::default(),
        ));
    }
    let pass = out[0] == Verdict::ConsistentWithAlgebraic
        && matches!(out[1], Verdict::NonAlgebraic { .. });
    Ok((
        pass,
        "octahedral consistent, theta = 2.5 shot non-algebraic".into(),
    ))
}

pub fn run_suite() -> Vec<Check> {
    vec![
        check("octahedral-map", || closed_form_map(ClosedForm::Octahedral)),
        check("hopf-map", || closed_form_map(ClosedForm::Hopf)),
        check("conservation", conservation),
        check("hopf-integration", hopf_integration),
        check("residual-round-trip", residual_and_round_trip),
        check("hopf-shot", hopf_shot),
        check("target-solve", target_solve),
        check("rationality", rationality),
        check("verdicts", verdicts),
    ]
}
