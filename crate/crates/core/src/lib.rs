//! Reduced anti-self-dual SU(2) instantons on S⁴ and the Painlevé VI
//! solutions they determine.
//!
//! The crate is `no_std` (it needs `alloc`). It is organised bottom-up:
//!
//! * [`asd`]: the reduced ASD system in the parameter `t ∈ (0,1)`, its
//!   first integral, an adaptive Dormand–Prince integrator with dense
//!   output, and the closed-form reference solutions.
//! * [`painleve`]: the cross ratio `x(t)`, the explicit map from
//!   `(a₁,a₂,a₃)` to a solution `y(x)` of Painlevé VI, the inverse
//!   relations, the Painlevé VI residual and the Okamoto transformation.
//! * [`shooting`]: the singular boundary-value problem for instantons with
//!   holonomic singularities, solved by shooting from a Frobenius series
//!   at `t = 1`, plus holonomy data.
//! * [`critical`]: power-law fits at the critical points `x ∈ {0, 1, ∞}`,
//!   continued-fraction rationality tests, limit extrapolation and the
//!   algebraicity verdict.
//!
//! Everything is a pure function over immutable values, so sweeps can be
//! fanned out across threads by the caller.

#![no_std]
#![forbid(unsafe_code)]
// `!(x > 0.0)` is used on purpose so that NaN fails the check.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

extern crate alloc;

pub mod asd;
pub mod critical;
mod error;
pub mod painleve;
pub mod scalar;
pub mod shooting;

pub use error::{Error, Result};

pub use num_complex::Complex64;

pub use asd::{
    closed_form_solution, conserved_quantity, integrate_asd, metric_coefficients, residue_weights,
    ClosedForm, Direction, InstantonState, IntegratorConfig, Trajectory,
};
pub use critical::{
    algebraicity_verdict, fit_exponent, limit_check, rationality_test, CriticalFit, CriticalPoint,
    LimitCheck, Verdict,
};
pub use painleve::{
    cross_ratio, cross_ratio_derivative, map_to_pvi, okamoto_transform, pvi_parameters,
    pvi_residual, theta_from_state, AlphaSign, CoefficientConvention, PviParameters, PviSample,
    RootSign, SignChoice, ThetaBranch, ThetaData,
};
pub use shooting::{
    boundary_series, holonomy_data, shoot, solve_for_target, HolonomyData, SeriesOrder,
    ShootingConfig, ShootingResult,
};
