use thiserror::Error;

pub type Result<T> = core::result::Result<T, Error>;

/// Everything that can go wrong in the library.
///
/// Variants carry the offending parameter value where one exists, so a
/// caller can report *where* a map or an integration failed.
#[derive(Debug, Clone, PartialEq, Error)]
#[non_exhaustive]
pub enum Error {
    #[error("{what} = {value} is outside {domain}")]
    Domain {
        what: &'static str,
        value: f64,
        domain: &'static str,
    },

    #[error("non-finite value in {0}")]
    NonFinite(&'static str),

    #[error("solution blew up at t = {t}: |a| = {magnitude} exceeds {bound}")]
    BlowUp { t: f64, magnitude: f64, bound: f64 },

    #[error("step size underflow at t = {t} (h = {h})")]
    StepUnderflow { t: f64, h: f64 },

    #[error("step budget of {steps} exhausted at t = {t}")]
    StepBudget { t: f64, steps: usize },

    #[error("two of a1, a2, a3 vanish identically; y is not defined on this branch")]
    DegenerateBranch,

    #[error("pole of {what} at t = {t}")]
    Pole { what: &'static str, t: f64 },

    #[error("Okamoto transformation undefined: q vanishes")]
    OkamotoSingular,

    #[error("no sign of w1 reproduces y (relative mismatch {mismatch:e})")]
    Inconsistent { mismatch: f64 },

    #[error("r+ did not stabilise under refinement (change {change:e}, allowed {allowed:e})")]
    NonConvergence { change: f64, allowed: f64 },

    #[error("no bracket for target r+ = {target} with c up to {cap}")]
    BracketFailure { target: f64, cap: f64 },

    #[error("c -> r+ is not strictly increasing between c = {c_lo} and c = {c_hi}")]
    NonMonotone { c_lo: f64, c_hi: f64 },

    #[error("window holds {found} usable samples, need at least {needed}")]
    InsufficientWindow { found: usize, needed: usize },

    #[error("not a power law on the window (max log deviation {residual:e})")]
    NonPowerLaw { residual: f64 },

    #[error("limit extrapolation unstable: {first} vs {second}")]
    ExtrapolationUnstable { first: f64, second: f64 },
}
