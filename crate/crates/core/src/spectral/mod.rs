//! Grids, transforms, Fourier multipliers and Sobolev norms.
//!
//! Every operator here is a diagonal multiplier on [`SpectralField`]
//! coefficients or a round trip through the grid; all are pure functions.

mod field;
mod grid;
mod norms;
mod operators;
mod transform;

pub use field::SpectralField;
pub use grid::GridSpec;
pub use norms::{
    inner_product, l2_norm_physical, lp_norm, sobolev_norm, sobolev_norm_sq, table_norm_sq,
    weighted_norm_sq, SobolevIndex,
};
pub use operators::{
    anisotropic_symbol, dissipation_symbol, divergence, frac_power, fractional_laplacian,
    fractional_partial, friedrichs_project, gradient, riesz_velocity, Axis, DissipationParams,
    VelocityField,
};
pub use transform::{
    forward_transform, inverse_pair, inverse_transform, pointwise_product, resample, sample,
    HERMITIAN_TOLERANCE,
};

pub(crate) use transform::with_fft;
