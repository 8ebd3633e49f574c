//! Numerical checks of the functional inequalities behind the energy and
//! uniqueness estimates.
//!
//! Inequalities with explicit constants are checked sample by sample; those
//! with implicit constants report ratio statistics whose boundedness is left
//! to the caller. Products are formed on zero-padded grids so that every
//! left-hand side is exact for band-limited inputs.

mod explicit;
mod implicit;
mod report;
mod sampling;

pub use explicit::{
    check_anisotropic_bound, check_high_frequency_bound, check_interpolation, check_symbol_bound,
    symbol_constant, EQUALITY_TOLERANCE, EXPLICIT_SLACK,
};
pub use implicit::{check_commutator, check_embedding, check_product_estimate, check_riesz_bound};
pub use report::{LabParameters, LemmaId, Quantiles, RatioReport, Verdict};
pub use sampling::{lattice_sweep, shells_field, single_shell_field, FieldFamily};
