//! Dormand–Prince 5(4) with PI step control and cubic Hermite dense output.

use alloc::vec::Vec;

use super::closed::{closed_form_solution, ClosedForm};
use super::system::{check_open_unit, vector_field, InstantonState};
use crate::{Error, Result};

const C: [f64; 7] = [0.0, 1.0 / 5.0, 3.0 / 10.0, 4.0 / 5.0, 8.0 / 9.0, 1.0, 1.0];
const A2: [f64; 1] = [1.0 / 5.0];
const A3: [f64; 2] = [3.0 / 40.0, 9.0 / 40.0];
const A4: [f64; 3] = [44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0];
const A5: [f64; 4] = [
    19372.0 / 6561.0,
    -25360.0 / 2187.0,
    64448.0 / 6561.0,
    -212.0 / 729.0,
];
const A6: [f64; 5] = [
    9017.0 / 3168.0,
    -355.0 / 33.0,
    46732.0 / 5247.0,
    49.0 / 176.0,
    -5103.0 / 18656.0,
];
const B: [f64; 6] = [
    35.0 / 384.0,
    0.0,
    500.0 / 1113.0,
    125.0 / 192.0,
    -2187.0 / 6784.0,
    11.0 / 84.0,
];
const E: [f64; 7] = [
    71.0 / 57600.0,
    0.0,
    -71.0 / 16695.0,
    71.0 / 1920.0,
    -17253.0 / 339200.0,
    22.0 / 525.0,
    -1.0 / 40.0,
];
// Quartic term of the continuous extension; the cubic Hermite interpolant
// differs from it by θ²(1−θ)²·h·Σdᵢkᵢ.
const D: [f64; 7] = [
    -12715105075.0 / 11282082432.0,
    0.0,
    87487479700.0 / 32700410799.0,
    -10690763975.0 / 1880347072.0,
    701980252875.0 / 199316789632.0,
    -1453857185.0 / 822651844.0,
    69997945.0 / 29380423.0,
];

const SAFETY: f64 = 0.9;
const FAC_MIN: f64 = 0.2;
const FAC_MAX: f64 = 10.0;
const BETA: f64 = 0.04;
const EXPO: f64 = 0.2 - BETA * 0.75;

/// Direction of integration in `t`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "kebab-case"))]
pub enum Direction {
    Increasing,
    Decreasing,
}

impl Direction {
    fn sign(self) -> f64 {
        match self {
            Direction::Increasing => 1.0,
            Direction::Decreasing => -1.0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct IntegratorConfig {
    /// Local error tolerance; the relative weight, and the absolute one
    /// unless `atol` is given.
    pub tol: f64,
    /// Absolute error weight. Set it below `tol` when components start
    /// far smaller than one and their relative accuracy matters.
    pub atol: Option<f64>,
    /// Largest admissible `|aᵢ|` before reporting blow-up.
    pub overflow_bound: f64,
    /// Integration is confined to `[eps_end, 1 − eps_end]`.
    pub eps_end: f64,
    pub max_steps: usize,
    /// First trial step; chosen automatically when absent.
    pub initial_step: Option<f64>,
}

impl Default for IntegratorConfig {
    fn default() -> Self {
        IntegratorConfig {
            tol: 1e-10,
            atol: None,
            overflow_bound: 1e8,
            eps_end: 1e-6,
            max_steps: 1_000_000,
            initial_step: None,
        }
    }
}

impl IntegratorConfig {
    pub fn with_tol(tol: f64) -> Self {
        IntegratorConfig {
            tol,
            ..Default::default()
        }
    }

    fn validate(&self) -> Result<()> {
        if !(self.tol.is_finite() && self.tol > 0.0) {
            return Err(Error::Domain {
                what: "tol",
                value: self.tol,
                domain: "(0, inf)",
            });
        }
        if let Some(a) = self.atol {
            if !(a.is_finite() && a > 0.0) {
                return Err(Error::Domain {
                    what: "atol",
                    value: a,
                    domain: "(0, inf)",
                });
            }
        }
        if !(self.eps_end > 0.0 && self.eps_end < 0.5) {
            return Err(Error::Domain {
                what: "eps_end",
                value: self.eps_end,
                domain: "(0, 0.5)",
            });
        }
        if !(self.overflow_bound > 0.0) {
            return Err(Error::Domain {
                what: "overflow_bound",
                value: self.overflow_bound,
                domain: "(0, inf]",
            });
        }
        Ok(())
    }
}

/// Samples of a solution, monotone in `t`, with the derivative at every
/// sample so that cubic Hermite interpolation is available between them.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct Trajectory {
    samples: Vec<InstantonState>,
    derivatives: Vec<[f64; 3]>,
    tol_used: f64,
    direction: Direction,
}

impl Trajectory {
    pub fn samples(&self) -> &[InstantonState] {
        &self.samples
    }

    pub fn derivatives(&self) -> &[[f64; 3]] {
        &self.derivatives
    }

    /// Bound on the interpolation error between adjacent samples.
    pub fn tol_used(&self) -> f64 {
        self.tol_used
    }

    pub fn direction(&self) -> Direction {
        self.direction
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    pub fn first(&self) -> &InstantonState {
        &self.samples[0]
    }

    pub fn last(&self) -> &InstantonState {
        &self.samples[self.samples.len() - 1]
    }

    /// Smallest and largest `t` covered.
    pub fn t_range(&self) -> (f64, f64) {
        let (a, b) = (self.first().t(), self.last().t());
        if a < b {
            (a, b)
        } else {
            (b, a)
        }
    }

    /// Cubic Hermite interpolation at `t`.
    pub fn interpolate(&self, t: f64) -> Result<InstantonState> {
        let (lo, hi) = self.t_range();
        if !(t >= lo && t <= hi) {
            return Err(Error::Domain {
                what: "t",
                value: t,
                domain: "trajectory range",
            });
        }
        let s = self.direction.sign();
        // First index whose sample lies at or beyond t in the direction of travel.
        let j = self
            .samples
            .partition_point(|p| s * (p.t() - t) < 0.0)
            .clamp(1, self.samples.len() - 1);
        let i = j - 1;
        let (p0, p1) = (&self.samples[i], &self.samples[j]);
        let (f0, f1) = (self.derivatives[i], self.derivatives[j]);
        let h = p1.t() - p0.t();
        let th = (t - p0.t()) / h;
        let mut a = [0.0; 3];
        for k in 0..3 {
            let y0 = p0.a()[k];
            let dy = p1.a()[k] - y0;
            let r3 = h * f0[k] - dy;
            let r4 = dy - h * f1[k] - r3;
            a[k] = y0 + th * (dy + (1.0 - th) * (r3 + th * r4));
        }
        InstantonState::new(t, a)
    }

    /// Sample a reference solution at the given strictly monotone `t` values.
    ///
    /// `tol_used` is set to the largest Hermite error observed at interval
    /// midpoints against the exact solution.
    pub fn from_closed_form(kind: ClosedForm, ts: &[f64]) -> Result<Self> {
        if ts.len() < 2 {
            return Err(Error::InsufficientWindow {
                found: ts.len(),
                needed: 2,
            });
        }
        let direction = if ts[1] > ts[0] {
            Direction::Increasing
        } else {
            Direction::Decreasing
        };
        let s = direction.sign();
        if ts.windows(2).any(|w| !(s * (w[1] - w[0]) > 0.0)) {
            return Err(Error::Domain {
                what: "t",
                value: ts[0],
                domain: "strictly monotone grid",
            });
        }
        let samples = ts
            .iter()
            .map(|&t| closed_form_solution(kind, t))
            .collect::<Result<Vec<_>>>()?;
        let derivatives = samples.iter().map(|p| vector_field(p.t(), p.a())).collect();
        let mut traj = Trajectory {
            samples,
            derivatives,
            tol_used: 0.0,
            direction,
        };
        let mut worst = 0.0f64;
        for w in ts.windows(2) {
            let m = 0.5 * (w[0] + w[1]);
            let exact = closed_form_solution(kind, m)?.a();
            let approx = traj.interpolate(m)?.a();
            for k in 0..3 {
                worst = worst.max((exact[k] - approx[k]).abs());
            }
        }
        traj.tol_used = worst.max(f64::EPSILON);
        Ok(traj)
    }
}

fn stage(t: f64, y: [f64; 3], h: f64, ks: &[[f64; 3]], coeffs: &[f64], c: f64) -> [f64; 3] {
    let mut z = y;
    for (k, &a) in ks.iter().zip(coeffs) {
        for i in 0..3 {
            z[i] += h * a * k[i];
        }
    }
    vector_field(t + c * h, z)
}

/// Integrate from `s0` to `t_end` with adaptive Dormand–Prince steps.
///
/// Every accepted step also satisfies the dense-output contract: the cubic
/// Hermite interpolant deviates from the fifth-order continuous extension by
/// at most the local tolerance at the step midpoint.
pub fn integrate_asd(
    s0: &InstantonState,
    t_end: f64,
    config: &IntegratorConfig,
) -> Result<Trajectory> {
    config.validate()?;
    check_open_unit(t_end, "t_end")?;
    let (lo, hi) = (config.eps_end, 1.0 - config.eps_end);
    for (what, v) in [("t0", s0.t()), ("t_end", t_end)] {
        if !(v >= lo && v <= hi) {
            return Err(Error::Domain {
                what,
                value: v,
                domain: "[eps_end, 1 - eps_end]",
            });
        }
    }
    if t_end == s0.t() {
        return Err(Error::Domain {
            what: "t_end",
            value: t_end,
            domain: "values different from t0",
        });
    }
    let direction = if t_end > s0.t() {
        Direction::Increasing
    } else {
        Direction::Decreasing
    };
    let sgn = direction.sign();
    let tol = config.tol;
    let atol = config.atol.unwrap_or(tol);
    let scale = |y0: &[f64; 3], y1: &[f64; 3], i: usize| atol + tol * y0[i].abs().max(y1[i].abs());

    let mut t = s0.t();
    let mut y = s0.a();
    let mut k1 = vector_field(t, y);
    let mut samples = alloc::vec![*s0];
    let mut derivatives = alloc::vec![k1];

    let span = (t_end - t).abs();
    let mut h = match config.initial_step {
        Some(h0) if h0 > 0.0 => h0.min(span),
        _ => initial_step(t, &y, &k1, sgn, atol, tol, span),
    };
    let mut facold: f64 = 1e-4;
    let mut steps = 0usize;
    let mut last_rejected = false;

    loop {
        if steps >= config.max_steps {
            return Err(Error::StepBudget { t, steps });
        }
        steps += 1;
        let remaining = (t_end - t).abs();
        let mut last = false;
        if h >= remaining * (1.0 - 1e-12) {
            h = remaining;
            last = true;
        }
        if h <= 16.0 * f64::EPSILON * t.abs().max(1e-300) {
            return Err(Error::StepUnderflow { t, h });
        }
        let hs = sgn * h;

        let k2 = stage(t, y, hs, &[k1], &A2, C[1]);
        let k3 = stage(t, y, hs, &[k1, k2], &A3, C[2]);
        let k4 = stage(t, y, hs, &[k1, k2, k3], &A4, C[3]);
        let k5 = stage(t, y, hs, &[k1, k2, k3, k4], &A5, C[4]);
        let k6 = stage(t, y, hs, &[k1, k2, k3, k4, k5], &A6, C[5]);
        let mut ynew = y;
        let ks = [k1, k2, k3, k4, k5, k6];
        for (k, b) in ks.iter().zip(B) {
            for i in 0..3 {
                ynew[i] += hs * b * k[i];
            }
        }
        let tnew = if last { t_end } else { t + hs };
        let k7 = vector_field(tnew, ynew);
        let all = [k1, k2, k3, k4, k5, k6, k7];

        let finite = ynew.iter().chain(k7.iter()).all(|v| v.is_finite());
        let mut err = 0.0;
        let mut herm = 0.0f64;
        if finite {
            for i in 0..3 {
                let sc = scale(&y, &ynew, i);
                let e: f64 = all.iter().zip(E).map(|(k, c)| c * k[i]).sum::<f64>() * hs;
                err += (e / sc) * (e / sc);
                let r5: f64 = all.iter().zip(D).map(|(k, c)| c * k[i]).sum::<f64>() * hs;
                herm = herm.max((r5 / 16.0).abs() / sc);
            }
            err = libm::sqrt(err / 3.0);
        } else {
            err = f64::INFINITY;
        }

        if err <= 1.0 && herm <= 1.0 {
            let fac11 = libm::pow(err.max(1e-300), EXPO);
            let mut fac = fac11 / libm::pow(facold, BETA);
            fac = (fac / SAFETY).clamp(1.0 / FAC_MAX, 1.0 / FAC_MIN);
            let mut hnew = h / fac;
            facold = err.max(1e-4);
            if last_rejected {
                hnew = hnew.min(h);
            }
            last_rejected = false;

            let big = ynew.iter().fold(0.0f64, |m, v| m.max(v.abs()));
            if big > config.overflow_bound {
                return Err(Error::BlowUp {
                    t: tnew,
                    magnitude: big,
                    bound: config.overflow_bound,
                });
            }
            t = tnew;
            y = ynew;
            k1 = k7;
            samples.push(InstantonState::new(t, y)?);
            derivatives.push(k1);
            if last {
                break;
            }
            h = hnew;
        } else {
            last_rejected = true;
            let shrink = if !finite {
                FAC_MIN
            } else {
                let by_err = SAFETY / libm::pow(err.max(1e-300), EXPO);
                let by_herm = SAFETY / libm::pow(herm.max(1e-300), 0.25);
                by_err.min(by_herm).clamp(FAC_MIN, 1.0)
            };
            h *= shrink;
        }
    }

    Ok(Trajectory {
        samples,
        derivatives,
        tol_used: tol,
        direction,
    })
}

/// Starting step from the usual two-evaluation heuristic.
fn initial_step(
    t: f64,
    y: &[f64; 3],
    f0: &[f64; 3],
    sgn: f64,
    atol: f64,
    tol: f64,
    span: f64,
) -> f64 {
    let norm = |v: &[f64; 3]| {
        let s: f64 = (0..3)
            .map(|i| {
                let sc = atol + tol * y[i].abs();
                (v[i] / sc) * (v[i] / sc)
            })
            .sum();
        libm::sqrt(s / 3.0)
    };
    let d0 = norm(y);
    let d1 = norm(f0);
    let mut h0 = if d0 < 1e-5 || d1 < 1e-5 {
        1e-6
    } else {
        0.01 * d0 / d1
    };
    h0 = h0.min(span).min(0.1 * t.min(1.0 - t));
    let mut y1 = *y;
    for i in 0..3 {
        y1[i] += sgn * h0 * f0[i];
    }
    let f1 = vector_field(t + sgn * h0, y1);
    let mut df = [0.0; 3];
    for i in 0..3 {
        df[i] = f1[i] - f0[i];
    }
    let d2 = norm(&df) / h0;
    let h1 = if d1.max(d2) <= 1e-15 {
        (h0 * 1e-3).max(1e-6)
    } else {
        libm::pow(0.01 / d1.max(d2), 0.2)
    };
    (100.0 * h0).min(h1).min(span)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::asd::conserved_quantity;
    use proptest::prelude::*;

    fn state(t: f64, a: [f64; 3]) -> InstantonState {
        InstantonState::new(t, a).unwrap()
    }

    #[test]
    fn stationary_solutions_stay_put() {
        let cfg = IntegratorConfig::default();
        for (a, te) in [([1.0; 3], 0.1), ([0.0; 3], 0.9)] {
            let tr = integrate_asd(&state(0.5, a), te, &cfg).unwrap();
            assert_eq!(tr.last().t(), te);
            for p in tr.samples() {
                for (got, want) in p.a().into_iter().zip(a) {
                    assert!((got - want).abs() <= cfg.tol);
                }
            }
        }
    }

    #[test]
    fn hopf_matches_closed_form() {
        let cfg = IntegratorConfig::default();
        let s0 = closed_form_solution(ClosedForm::Hopf, 0.5).unwrap();
        let tr = integrate_asd(&s0, 0.8, &cfg).unwrap();
        assert_eq!(tr.direction(), Direction::Increasing);
        for p in tr.samples() {
            let e = closed_form_solution(ClosedForm::Hopf, p.t()).unwrap();
            for k in 0..3 {
                assert!((p.a()[k] - e.a()[k]).abs() < 10.0 * cfg.tol);
            }
        }
    }

    #[test]
    fn dense_output_meets_contract() {
        let cfg = IntegratorConfig::with_tol(1e-9);
        let s0 = closed_form_solution(ClosedForm::Hopf, 0.9).unwrap();
        let tr = integrate_asd(&s0, 0.05, &cfg).unwrap();
        assert_eq!(tr.direction(), Direction::Decreasing);
        for w in tr.samples().windows(2) {
            let m = 0.5 * (w[0].t() + w[1].t());
            let e = closed_form_solution(ClosedForm::Hopf, m).unwrap();
            let a = tr.interpolate(m).unwrap();
            for k in 0..3 {
                let sc = 1.0 + e.a()[k].abs();
                assert!((a.a()[k] - e.a()[k]).abs() < 10.0 * cfg.tol * sc);
            }
        }
    }

    #[test]
    fn degenerate_a2_matches_closed_form() {
        let cfg = IntegratorConfig::default();
        let s0 = closed_form_solution(ClosedForm::DegenerateA2(1.7), 0.3).unwrap();
        let tr = integrate_asd(&s0, 0.95, &cfg).unwrap();
        for p in tr.samples() {
            let e = closed_form_solution(ClosedForm::DegenerateA2(1.7), p.t()).unwrap();
            assert!((p.a2() - e.a2()).abs() < 10.0 * cfg.tol);
            assert_eq!((p.a1(), p.a3()), (0.0, 0.0));
        }
    }

    #[test]
    fn blow_up_is_reported() {
        let cfg = IntegratorConfig {
            overflow_bound: 50.0,
            ..Default::default()
        };
        let r = integrate_asd(&state(0.5, [20.0, -20.0, 20.0]), 0.01, &cfg);
        assert!(matches!(r, Err(Error::BlowUp { .. })), "{r:?}");
    }

    #[test]
    fn endpoint_policy() {
        let cfg = IntegratorConfig::default();
        let s = state(0.5, [1.0; 3]);
        assert!(integrate_asd(&s, 1.0 - 1e-7, &cfg).is_err());
        assert!(integrate_asd(&s, 0.5, &cfg).is_err());
        assert!(integrate_asd(&s, 1.0 - 1e-6, &cfg).is_ok());
        let bad = IntegratorConfig::with_tol(0.0);
        assert!(integrate_asd(&s, 0.2, &bad).is_err());
    }

    #[test]
    fn step_budget_is_reported() {
        let cfg = IntegratorConfig {
            max_steps: 3,
            ..Default::default()
        };
        let s0 = closed_form_solution(ClosedForm::Hopf, 0.5).unwrap();
        assert!(matches!(
            integrate_asd(&s0, 0.01, &cfg),
            Err(Error::StepBudget { .. })
        ));
    }

    #[test]
    fn closed_form_trajectory_reports_interpolation_error() {
        let ts: Vec<f64> = (1..=9).map(|i| i as f64 / 10.0).collect();
        let tr = Trajectory::from_closed_form(ClosedForm::Hopf, &ts).unwrap();
        assert!(tr.tol_used() > 1e-8 && tr.tol_used() < 1e-2);
        let oct = Trajectory::from_closed_form(ClosedForm::Octahedral, &ts).unwrap();
        assert_eq!(oct.tol_used(), f64::EPSILON);
        assert!(Trajectory::from_closed_form(ClosedForm::Hopf, &[0.2, 0.2]).is_err());
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]

        #[test]
        fn conservation_and_monotonicity(
            t0 in 0.2f64..0.8,
            te in 0.05f64..0.95,
            a in prop::array::uniform3(-1.5f64..1.5),
        ) {
            prop_assume!((te - t0).abs() > 1e-3);
            let cfg = IntegratorConfig::default();
            let s0 = state(t0, a);
            if let Ok(tr) = integrate_asd(&s0, te, &cfg) {
                let q0 = conserved_quantity(&s0);
                let s = if te > t0 { 1.0 } else { -1.0 };
                for w in tr.samples().windows(2) {
                    prop_assert!(s * (w[1].t() - w[0].t()) > 0.0);
                }
                for p in tr.samples() {
                    prop_assert!((conserved_quantity(p) - q0).abs() <= 100.0 * cfg.tol * (1.0 + q0.abs()));
                }
            }
        }

        #[test]
        fn invariant_subspaces(t0 in 0.2f64..0.8, te in 0.05f64..0.95, v in -2.0f64..2.0, which in 0usize..3) {
            prop_assume!((te - t0).abs() > 1e-3);
            let mut a = [0.0; 3];
            a[which] = v;
            let tr = integrate_asd(&state(t0, a), te, &IntegratorConfig::default()).unwrap();
            for p in tr.samples() {
                for k in 0..3 {
                    if k != which {
                        prop_assert_eq!(p.a()[k], 0.0);
                    }
                }
            }
        }
    }
}
