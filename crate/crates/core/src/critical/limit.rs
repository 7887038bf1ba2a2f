use alloc::vec::Vec;

use crate::asd::Trajectory;
use crate::painleve::{pvi_sample_at, PviSample, SignChoice, ThetaData};
use crate::{Error, Result};

/// `n` offsets `lo·r^i` spaced geometrically from `lo` to `hi`.
pub fn geometric_offsets(lo: f64, hi: f64, n: usize) -> Result<Vec<f64>> {
    if !(lo > 0.0 && hi > lo && hi.is_finite() && n >= 2) {
        return Err(Error::Domain {
            what: "geometric offsets",
            value: lo,
            domain: "0 < lo < hi, n >= 2",
        });
    }
    let r = libm::pow(hi / lo, 1.0 / (n - 1) as f64);
    Ok((0..n)
        .map(|i| {
            if i + 1 == n {
                hi
            } else {
                lo * libm::pow(r, i as f64)
            }
        })
        .collect())
}

/// Map the interpolated trajectory at each `t` to a Painlevé VI sample.
pub fn samples_at(
    traj: &Trajectory,
    ts: &[f64],
    theta: &ThetaData,
    sign: SignChoice,
) -> Result<Vec<PviSample>> {
    ts.iter()
        .map(|&t| {
            let s = traj.interpolate(t)?;
            pvi_sample_at(t, s.a(), theta, sign)
        })
        .collect()
}

/// How `y(t)` behaves as `t → 1⁻`.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "kebab-case", tag = "kind"))]
pub enum LimitOutcome {
    Finite {
        value: f64,
    },
    /// `|y| ~ (1−t)^{exponent}` with `exponent < 0`.
    Divergent {
        exponent: f64,
    },
}

#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(default))]
pub struct LimitConfig {
    /// Agreement required between the two extrapolation levels, relative
    /// to `max(1, |limit|)`.
    pub tol: f64,
    /// Local log-log slopes below this are read as divergence.
    pub divergence_slope: f64,
    /// Distance `1 − t` has to reach for the check to run.
    pub max_start: f64,
}

impl Default for LimitConfig {
    fn default() -> Self {
        Self {
            tol: 1e-6,
            divergence_slope: -0.5,
            max_start: 1e-4,
        }
    }
}

/// Limit of `y` at `t → 1`, where `x → ∞` on the branch `t ∈ (0,1)`.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct LimitCheck {
    pub theta: f64,
    pub sign: SignChoice,
    pub outcome: LimitOutcome,
    /// `0` for `θ > 1`, `−c²` for `θ = 1`; `None` when no boundary
    /// amplitude is given or `θ < 1`.
    pub expected: Option<f64>,
    /// Whether a finite limit matches `expected` within `1e-3`.
    pub matches_expected: Option<bool>,
    /// Algebraic behaviour at `x = ∞` needs `y → ∞`; a finite limit
    /// contradicts it.
    pub contradicts_divergence: bool,
    /// `(1 − t, y)` pairs the extrapolation used.
    pub samples: Vec<(f64, f64)>,
}

/// Extrapolate `lim_{t→1} y(t)` from a trajectory reaching `t ≥ 1 − 1e-4`.
///
/// `y` is sampled at `u = u₀, 2u₀, …, 32u₀` with `u = 1 − t` and `u₀` the
/// closest approach. A local log-log slope below `divergence_slope` means
/// divergence. Otherwise two levels of Richardson extrapolation in `u` are
/// compared, starting at `u₀` and at `2u₀`.
pub fn limit_check(
    traj: &Trajectory,
    theta: &ThetaData,
    sign: SignChoice,
    c: Option<f64>,
    config: &LimitConfig,
) -> Result<LimitCheck> {
    if !theta.is_real() {
        return Err(Error::Domain {
            what: "theta^2",
            value: theta.theta_squared(),
            domain: "[0, inf)",
        });
    }
    let th = theta.theta().re;
    let u0 = 1.0 - traj.t_range().1;
    if !(u0 > 0.0 && u0 <= config.max_start) {
        return Err(Error::Domain {
            what: "1 - t_max",
            value: u0,
            domain: "(0, 1e-4]",
        });
    }
    let us: Vec<f64> = (0..6).map(|k| u0 * f64::from(1u32 << k)).collect();
    let mut ys = Vec::with_capacity(us.len());
    for &u in &us {
        let t = 1.0 - u;
        let s = traj.interpolate(t.max(traj.t_range().0))?;
        ys.push(pvi_sample_at(t, s.a(), theta, sign)?.y.re);
    }
    let slope =
        |i: usize| (libm::log(ys[i + 1].abs()) - libm::log(ys[i].abs())) / core::f64::consts::LN_2;
    let outcome = if ys[0] != 0.0 && ys[1] != 0.0 && slope(0) < config.divergence_slope {
        LimitOutcome::Divergent { exponent: slope(0) }
    } else {
        let r1: Vec<f64> = (0..5).map(|k| 2.0 * ys[k] - ys[k + 1]).collect();
        let r2: Vec<f64> = (0..4).map(|k| (4.0 * r1[k] - r1[k + 1]) / 3.0).collect();
        let (first, second) = (r2[1], r2[0]);
        if !((first - second).abs() <= config.tol * second.abs().max(1.0)) {
            return Err(Error::ExtrapolationUnstable { first, second });
        }
        LimitOutcome::Finite { value: second }
    };
    let expected = match c {
        Some(c) if (th - 1.0).abs() <= 1e-6 => Some(-c * c),
        Some(_) if th > 1.0 => Some(0.0),
        _ => None,
    };
    let matches_expected = expected.map(|e| match outcome {
        LimitOutcome::Finite { value } => (value - e).abs() <= 1e-3,
        LimitOutcome::Divergent { .. } => false,
    });
    Ok(LimitCheck {
        theta: th,
        sign,
        outcome,
        expected,
        matches_expected,
        contradicts_divergence: matches!(outcome, LimitOutcome::Finite { .. }),
        samples: us.into_iter().zip(ys).collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::asd::ClosedForm;
    use approx::assert_relative_eq;

    fn octahedral_near_one() -> Trajectory {
        let ts: Vec<f64> = geometric_offsets(1e-5, 0.5, 400)
            .unwrap()
            .into_iter()
            .rev()
            .map(|u| 1.0 - u)
            .collect();
        Trajectory::from_closed_form(ClosedForm::Octahedral, &ts).unwrap()
    }

    #[test]
    fn offsets() {
        let o = geometric_offsets(1e-3, 1.0, 4).unwrap();
        assert_eq!(o.len(), 4);
        assert_relative_eq!(o[1], 1e-2, max_relative = 1e-12);
        assert_eq!(o[3], 1.0);
        assert!(geometric_offsets(1.0, 1.0, 4).is_err());
    }

    #[test]
    fn octahedral_limits() {
        // "+": y = (t−3)²(t+1)/((t+3)(t²+3)) → ½; "−": y = −(t−3)²/(3(t−1)(t+3)) ~ 1/(3u).
        let traj = octahedral_near_one();
        let th = ThetaData::from_real(1.0).unwrap();
        let l = limit_check(&traj, &th, SignChoice::Plus, None, &LimitConfig::default()).unwrap();
        match l.outcome {
            LimitOutcome::Finite { value } => assert_relative_eq!(value, 0.5, epsilon = 1e-9),
            o => panic!("{o:?}"),
        }
        assert!(l.contradicts_divergence);
        assert_eq!((l.expected, l.matches_expected), (None, None));
        let l = limit_check(
            &traj,
            &th,
            SignChoice::Minus,
            Some(1.0),
            &LimitConfig::default(),
        )
        .unwrap();
        match l.outcome {
            LimitOutcome::Divergent { exponent } => assert!((exponent + 1.0).abs() < 1e-3),
            o => panic!("{o:?}"),
        }
        assert_eq!((l.expected, l.matches_expected), (Some(-1.0), Some(false)));
        assert!(!l.contradicts_divergence);
    }

    #[test]
    fn short_trajectory_is_rejected() {
        let traj = Trajectory::from_closed_form(ClosedForm::Octahedral, &[0.2, 0.5, 0.9]).unwrap();
        let th = ThetaData::from_real(1.0).unwrap();
        assert!(matches!(
            limit_check(&traj, &th, SignChoice::Plus, None, &LimitConfig::default()),
            Err(Error::Domain { .. })
        ));
    }

    #[test]
    fn unstable_extrapolation() {
        let traj = octahedral_near_one();
        let th = ThetaData::from_real(1.0).unwrap();
        let cfg = LimitConfig {
            tol: 1e-18,
            ..Default::default()
        };
        assert!(matches!(
            limit_check(&traj, &th, SignChoice::Plus, None, &cfg),
            Err(Error::ExtrapolationUnstable { .. })
        ));
    }
}
