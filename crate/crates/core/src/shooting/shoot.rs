use alloc::vec::Vec;

use super::series::{boundary_series, SeriesOrder};
use crate::asd::{integrate_asd, IntegratorConfig, Trajectory};
use crate::painleve::{theta_from_state, RootSign, ThetaData};
use crate::{Error, Result};

/// Parameters of one shot from the boundary series at `t = 1` towards `t = 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct ShootingConfig {
    pub c: f64,
    pub r_minus: f64,
    /// `1 − t` at the series handoff.
    pub eps_start: f64,
    /// Smallest `t` reached.
    pub eps_end: f64,
    pub tol: f64,
    pub series_order: SeriesOrder,
    pub overflow_bound: f64,
    /// Largest accepted change of `r₊` when `eps_start` is halved, as a
    /// multiple of `tol`.
    pub stability_factor: f64,
}

impl ShootingConfig {
    pub fn new(c: f64, r_minus: f64) -> Self {
        ShootingConfig {
            c,
            r_minus,
            eps_start: 1e-5,
            eps_end: 1e-6,
            tol: 1e-10,
            series_order: SeriesOrder::FirstOrder,
            overflow_bound: 1e8,
            stability_factor: 10.0,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let dom = |what, value, domain| {
            Err(Error::Domain {
                what,
                value,
                domain,
            })
        };
        if !(self.c.is_finite() && self.c >= 0.0) {
            return dom("c", self.c, "[0, inf)");
        }
        if !(self.r_minus.is_finite() && self.r_minus >= 1.0) {
            return dom("r_minus", self.r_minus, "[1, inf)");
        }
        if !(self.eps_start > 0.0
            && self.eps_end > 0.0
            && 4.0 * self.eps_end < 1.0 - self.eps_start)
        {
            return dom("eps_end", self.eps_end, "0 < 4 eps_end < 1 - eps_start");
        }
        if !(self.tol.is_finite() && self.tol > 0.0) {
            return dom("tol", self.tol, "(0, inf)");
        }
        if !(self.stability_factor > 0.0) {
            return dom("stability_factor", self.stability_factor, "(0, inf)");
        }
        Ok(())
    }

    /// The absolute weight follows the size of the seeded mode so that its
    /// relative accuracy is `tol` from the first step.
    fn integrator(&self, eps_start: f64) -> IntegratorConfig {
        let lead = self.c * libm::pow(eps_start, (self.r_minus - 1.0) / 2.0);
        IntegratorConfig {
            tol: self.tol,
            atol: Some(self.tol * lead.clamp(1e-12, 1.0)),
            overflow_bound: self.overflow_bound,
            eps_end: self.eps_end.min(eps_start),
            ..Default::default()
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct ShootingResult {
    pub config: ShootingConfig,
    pub trajectory: Trajectory,
    /// `lim_{t→0} a₁`.
    pub r_plus: f64,
    /// Sum of the handoff-refinement change and the extrapolation spread.
    pub r_plus_error_estimate: f64,
    pub theta: ThetaData,
    /// `r₋ = 1`: the boundary mode does not decay, so the series error terms
    /// are of a different character.
    pub non_decaying_mode: bool,
}

/// One integration from the handoff at `1 − eps_start` down to `eps_end`.
pub(crate) struct Shot {
    pub trajectory: Trajectory,
    pub r_plus: f64,
    pub spread: f64,
}

pub(crate) fn single_shot(cfg: &ShootingConfig, eps_start: f64) -> Result<Shot> {
    let s0 = boundary_series(cfg.c, cfg.r_minus, eps_start, cfg.series_order)?;
    let trajectory = integrate_asd(&s0, cfg.eps_end, &cfg.integrator(eps_start))?;
    let e = cfg.eps_end;
    let a = |t: f64| trajectory.interpolate(t).map(|s| s.a1());
    let (a1, a2, a4) = (a(e)?, a(2.0 * e)?, a(4.0 * e)?);
    // a₁ − r₊ is even in t to leading order.
    let r1 = (4.0 * a1 - a2) / 3.0;
    let r2 = (4.0 * a2 - a4) / 3.0;
    let r_plus = (16.0 * r1 - r2) / 15.0;
    if !r_plus.is_finite() {
        return Err(Error::NonFinite("r_plus"));
    }
    Ok(Shot {
        trajectory,
        r_plus,
        spread: (r1 - r2).abs(),
    })
}

/// Shoot from the boundary series and extract `r₊ = lim_{t→0} a₁`.
///
/// The handoff is repeated with `eps_start / 2`; a change of `r₊` larger
/// than `stability_factor · tol` is reported as non-convergence.
pub fn shoot(config: &ShootingConfig) -> Result<ShootingResult> {
    config.validate()?;
    let main = single_shot(config, config.eps_start)?;
    let refined = single_shot(config, config.eps_start / 2.0)?;
    let change = (main.r_plus - refined.r_plus).abs();
    let allowed = config.stability_factor * config.tol;
    if !(change <= allowed) {
        return Err(Error::NonConvergence { change, allowed });
    }
    let theta = theta_from_state(main.trajectory.first(), RootSign::Positive)?;
    Ok(ShootingResult {
        config: *config,
        r_plus: main.r_plus,
        r_plus_error_estimate: change + main.spread,
        trajectory: main.trajectory,
        theta,
        non_decaying_mode: config.r_minus == 1.0,
    })
}

/// Controls for [`solve_for_target`].
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct SolveConfig {
    /// Template for every shot; its `c` and `r_minus` are overwritten.
    pub shooting: ShootingConfig,
    /// Accepted `|r₊ − target|`.
    pub tol: f64,
    /// Bracket growth stops once `c` would exceed this.
    pub c_cap: f64,
    pub max_iterations: usize,
}

impl Default for SolveConfig {
    fn default() -> Self {
        SolveConfig {
            shooting: ShootingConfig::new(0.0, 1.0),
            tol: 1e-8,
            c_cap: 64.0,
            max_iterations: 200,
        }
    }
}

/// `r₊(c)`, with blow-up read as overshoot (`+∞`).
fn r_plus_of(template: &ShootingConfig, c: f64, r_minus: f64) -> Result<f64> {
    let cfg = ShootingConfig {
        c,
        r_minus,
        ..*template
    };
    match single_shot(&cfg, cfg.eps_start) {
        Ok(s) => Ok(s.r_plus),
        Err(Error::BlowUp { .. }) => Ok(f64::INFINITY),
        Err(e) => Err(e),
    }
}

/// Find `[c_lo, c_hi]` with `r₊(c_lo) < target ≤ r₊(c_hi)`, doubling from
/// `c = 1`.
pub fn bracket_target(
    r_plus_target: f64,
    r_minus: f64,
    cfg: &SolveConfig,
) -> Result<((f64, f64), (f64, f64))> {
    let mut lo = (0.0, 0.0);
    let mut c = 1.0;
    while c <= cfg.c_cap {
        let r = r_plus_of(&cfg.shooting, c, r_minus)?;
        if r >= r_plus_target {
            return Ok((lo, (c, r)));
        }
        lo = (c, r);
        c *= 2.0;
    }
    Err(Error::BracketFailure {
        target: r_plus_target,
        cap: cfg.c_cap,
    })
}

/// Solve `r₊(c) = target` for `c` on the family with boundary value `r₋`.
///
/// The map `c ↦ r₊` is increasing with `r₊(0) = 0`. After bracketing, the
/// Illinois variant of regula falsi is used, falling back to bisection when
/// the bracket end has blown up or the interval stops shrinking.
pub fn solve_for_target(
    r_plus_target: f64,
    r_minus: f64,
    cfg: &SolveConfig,
) -> Result<(f64, ShootingResult)> {
    if !(0.0..=1.0).contains(&r_plus_target) {
        return Err(Error::Domain {
            what: "r_plus_target",
            value: r_plus_target,
            domain: "[0, 1]",
        });
    }
    let finish = |c: f64| -> Result<(f64, ShootingResult)> {
        let res = shoot(&ShootingConfig {
            c,
            r_minus,
            ..cfg.shooting
        })?;
        Ok((c, res))
    };
    if r_plus_target == 0.0 {
        return finish(0.0);
    }
    let ((mut a, mut fa), (mut b, mut fb)) = bracket_target(r_plus_target, r_minus, cfg)?;
    fa -= r_plus_target;
    fb -= r_plus_target;
    if fb.abs() <= cfg.tol {
        return finish(b);
    }
    let mut side = 0i8;
    for _ in 0..cfg.max_iterations {
        let width = b - a;
        let c = if fb.is_finite() {
            let s = b - fb * (b - a) / (fb - fa);
            if s > a && s < b {
                s
            } else {
                0.5 * (a + b)
            }
        } else {
            0.5 * (a + b)
        };
        let fc = r_plus_of(&cfg.shooting, c, r_minus)? - r_plus_target;
        if fc.abs() <= cfg.tol {
            return finish(c);
        }
        if fc < 0.0 {
            a = c;
            fa = fc;
            if side == -1 && fb.is_finite() {
                fb /= 2.0;
            }
            side = -1;
        } else {
            b = c;
            fb = fc;
            if side == 1 {
                fa /= 2.0;
            }
            side = 1;
        }
        if b - a > 0.75 * width {
            // regula falsi stalled; force a bisection on the next round
            fb = f64::INFINITY;
        }
        if b - a <= 4.0 * f64::EPSILON * b {
            break;
        }
    }
    let c = 0.5 * (a + b);
    let res = finish(c)?;
    if (res.1.r_plus - r_plus_target).abs() <= cfg.tol {
        Ok(res)
    } else {
        Err(Error::NonConvergence {
            change: (res.1.r_plus - r_plus_target).abs(),
            allowed: cfg.tol,
        })
    }
}

/// Sample `r₊` on `n + 1` equally spaced `c ∈ [0, c_max]` and check that it
/// is strictly increasing.
pub fn sample_c_map(
    r_minus: f64,
    c_max: f64,
    n: usize,
    template: &ShootingConfig,
) -> Result<Vec<(f64, f64)>> {
    if !(c_max > 0.0) || n == 0 {
        return Err(Error::Domain {
            what: "c_max",
            value: c_max,
            domain: "(0, inf) with at least one interval",
        });
    }
    let mut out: Vec<(f64, f64)> = Vec::with_capacity(n + 1);
    for i in 0..=n {
        let c = c_max * i as f64 / n as f64;
        let r = r_plus_of(template, c, r_minus)?;
        if let Some(&(c_prev, r_prev)) = out.last() {
            if !(r > r_prev) {
                return Err(Error::NonMonotone {
                    c_lo: c_prev,
                    c_hi: c,
                });
            }
        }
        out.push((c, r));
    }
    Ok(out)
}
