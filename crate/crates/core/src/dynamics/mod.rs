//! Right-hand side, Galerkin truncation and time integration.

mod initial;
mod nonlinear;
mod split;
mod stepper;
mod trajectory;

pub use initial::{random_bandlimited, rescale_to_norm, InitialData};
pub use nonlinear::{nonlinear_term, nonlinear_term_divergence_form};
pub use split::{split_initial_data, InitialSplit};
pub use stepper::{
    galerkin_rhs, step, Dealias, GalerkinLevel, Scheme, Stepper, StepperConfig, TrajectoryState,
};
pub use trajectory::{
    integrate, step_count, two_trajectory_gap, BlowupGuard, GapSample, DEFAULT_CEILING,
};
