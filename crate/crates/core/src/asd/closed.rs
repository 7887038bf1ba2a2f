use super::system::{check_open_unit, InstantonState};
use crate::{Error, Result};

/// Reference solutions of the reduced system.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "kebab-case"))]
pub enum ClosedForm {
    /// The constant solution `a = (1,1,1)`, `θ = 1`.
    Octahedral,
    /// The Hopf bundle: `a = (3(1−t²), 6(t+1), 6(1−t)) / (t²+3)`, `θ = 3`.
    Hopf,
    /// `a₂ = a₃ = 0`, `a₁ = θ√((9−t²)/(1−t²))`.
    DegenerateA1(f64),
    /// `a₁ = a₃ = 0`, `a₂ = θ√(t(3−t)/(1+t))`.
    DegenerateA2(f64),
}

impl ClosedForm {
    /// `θ` carried by the solution (the positive root for the fixed ones).
    pub fn theta(&self) -> f64 {
        match *self {
            ClosedForm::Octahedral => 1.0,
            ClosedForm::Hopf => 3.0,
            ClosedForm::DegenerateA1(th) | ClosedForm::DegenerateA2(th) => th,
        }
    }

    /// The coefficients at any real `t` where the formula is real.
    ///
    /// The octahedral and Hopf solutions are rational in `t` and keep solving
    /// the system off `(0,1)`; this is how their Painlevé transcendents are
    /// followed onto the other preimages of `x`.
    pub fn coefficients_at(&self, t: f64) -> Result<[f64; 3]> {
        let radicand = |r: f64| {
            if r >= 0.0 && r.is_finite() {
                Ok(libm::sqrt(r))
            } else {
                Err(Error::Domain {
                    what: "t",
                    value: t,
                    domain: "real branch of the closed form",
                })
            }
        };
        match *self {
            ClosedForm::Octahedral => Ok([1.0; 3]),
            ClosedForm::Hopf => {
                let d = t * t + 3.0;
                Ok([
                    3.0 * (1.0 - t * t) / d,
                    6.0 * (t + 1.0) / d,
                    6.0 * (1.0 - t) / d,
                ])
            }
            ClosedForm::DegenerateA1(th) => {
                check_theta(th)?;
                Ok([th * radicand((9.0 - t * t) / (1.0 - t * t))?, 0.0, 0.0])
            }
            ClosedForm::DegenerateA2(th) => {
                check_theta(th)?;
                Ok([0.0, th * radicand(t * (3.0 - t) / (1.0 + t))?, 0.0])
            }
        }
    }
}

/// Evaluate a reference solution at `t ∈ (0,1)`.
pub fn closed_form_solution(kind: ClosedForm, t: f64) -> Result<InstantonState> {
    check_open_unit(t, "t")?;
    InstantonState::new(t, kind.coefficients_at(t)?)
}

fn check_theta(th: f64) -> Result<()> {
    if th.is_finite() {
        Ok(())
    } else {
        Err(Error::Domain {
            what: "theta",
            value: th,
            domain: "finite reals",
        })
    }
}
