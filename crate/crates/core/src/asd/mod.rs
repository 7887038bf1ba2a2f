//! The reduced ASD system `ȧᵢ = 2(aᵢ − aⱼaₖ)/Kᵢ` on `t ∈ (0,1)`.

mod closed;
mod integrate;
mod system;

pub use closed::{closed_form_solution, ClosedForm};
pub use integrate::{integrate_asd, Direction, IntegratorConfig, Trajectory};
pub use system::{
    asd_vector_field, conserved_quantity, metric_coefficients, residue_weights, InstantonState,
};

pub(crate) use system::{check_open_unit, vector_field};
