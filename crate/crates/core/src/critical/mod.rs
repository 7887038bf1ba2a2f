//! Critical behaviour of Painlevé VI solutions and algebraicity tests.

mod fit;
mod limit;
mod rational;
mod verdict;

pub use fit::{fit_exponent, CriticalFit, CriticalPoint, FitConfig};
pub use limit::{
    geometric_offsets, limit_check, samples_at, LimitCheck, LimitConfig, LimitOutcome,
};
pub use rational::{best_rational, rationality_test, RationalApprox};
pub use verdict::{algebraicity_verdict, is_resonant, Refutation, Verdict, VerdictConfig};
