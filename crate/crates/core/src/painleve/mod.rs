//! From reduced instantons to Painlevé VI and back.

mod cross;
mod map;
mod okamoto;
mod residual;
mod theta;

pub use cross::{cross_ratio, cross_ratio_derivative, paired_preimage};
pub use map::{
    derivative_from_squares, map_to_pvi, pvi_sample_at, squares_from_solution, w_functions,
    PviSample, SignChoice,
};
pub use okamoto::okamoto_transform;
pub use residual::{
    pvi_residual, residual_report, CoefficientConvention, ResidualReport, POLE_MASK,
};
pub use theta::{
    exact_pvi_parameters, pvi_parameters, theta_from_state, AlphaSign, ExactPviParameters,
    PviParameters, RootSign, ThetaBranch, ThetaData,
};
