//! Instantons with holonomic singularities: shooting from the boundary
//! series at `t = 1` to read off `r₊ = lim_{t→0} a₁`.

mod holonomy;
mod series;
mod shoot;

pub use holonomy::{holonomy_data, holonomy_data_exact, ExactHolonomyData, HolonomyData};
pub use series::{boundary_series, series_corrections, SeriesOrder};
pub use shoot::{
    bracket_target, sample_c_map, shoot, solve_for_target, ShootingConfig, ShootingResult,
    SolveConfig,
};
