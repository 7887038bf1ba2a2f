use alloc::vec::Vec;

use super::fit::{CriticalFit, CriticalPoint};
use super::limit::{LimitCheck, LimitOutcome};
use super::rational::rationality_test;

/// A necessary condition for algebraicity that the data violates.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "kebab-case", tag = "kind"))]
pub enum Refutation {
    IrrationalExponent { point: CriticalPoint, exponent: f64 },
    ExponentOutOfRange { point: CriticalPoint, exponent: f64 },
    FiniteLimitAtInfinity { limit: f64 },
}

/// Numerical evidence can refute algebraicity but never establish it.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "kebab-case", tag = "verdict"))]
pub enum Verdict {
    ConsistentWithAlgebraic,
    NonAlgebraic { reasons: Vec<Refutation> },
    Inconclusive,
}

#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(default))]
pub struct VerdictConfig {
    pub max_denominator: u32,
    /// Rationality tolerance; a fit's own residual is used when larger.
    pub exponent_tol: f64,
}

impl Default for VerdictConfig {
    fn default() -> Self {
        Self {
            max_denominator: 12,
            exponent_tol: 1e-3,
        }
    }
}

/// `θ ∈ ℤ`.
pub fn is_resonant(theta: f64) -> bool {
    (theta - libm::round(theta)).abs() <= 1e-9 * theta.abs().max(1.0)
}

/// Combine critical fits and limit checks into a verdict.
///
/// An exponent that is irrational at the fit's resolution refutes
/// algebraicity for every `θ`. Exponents outside `(0, 1]` and finite limits
/// at `x = ∞` refute it only for nonresonant `θ`.
pub fn algebraicity_verdict(
    theta: f64,
    fits: &[CriticalFit],
    limits: &[LimitCheck],
    config: &VerdictConfig,
) -> Verdict {
    if !theta.is_finite() || (fits.is_empty() && limits.is_empty()) {
        return Verdict::Inconclusive;
    }
    let nonresonant = !is_resonant(theta);
    let mut reasons = Vec::new();
    for f in fits {
        let tol = config.exponent_tol.max(f.fit_residual);
        let (point, exponent) = (f.point, f.exponent);
        match rationality_test(exponent, config.max_denominator, tol) {
            None => reasons.push(Refutation::IrrationalExponent { point, exponent }),
            Some(r) if nonresonant && !r.in_unit_interval => {
                reasons.push(Refutation::ExponentOutOfRange { point, exponent })
            }
            Some(_) => {}
        }
    }
    if nonresonant {
        for l in limits {
            if let LimitOutcome::Finite { value } = l.outcome {
                reasons.push(Refutation::FiniteLimitAtInfinity { limit: value });
            }
        }
    }
    if reasons.is_empty() {
        Verdict::ConsistentWithAlgebraic
    } else {
        Verdict::NonAlgebraic { reasons }
    }
}
