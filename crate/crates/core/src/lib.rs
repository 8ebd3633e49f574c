//! Pseudo-spectral solver and numerical laboratory for the two-dimensional
//! surface quasi-geostrophic equation with anisotropic fractional dissipation
//!
//! ```text
//! ∂ₜθ + u·∇θ + μ|∂₁|^{2α}θ + ν|∂₂|^{2β}θ = 0,   u = R^⊥θ
//! ```
//!
//! on a doubly periodic box. The crate is split into four layers:
//!
//! * [`spectral`]: grids, FFTs, Fourier multipliers and Sobolev norms;
//! * [`dynamics`]: the nonlinear term, Galerkin truncation and the
//!   integrating-factor RK4 stepper;
//! * [`diagnostics`]: energy ledger, decay summaries, frequency splitting and
//!   the regularity-region classifier;
//! * [`lab`]: numerical checks of the functional inequalities the energy
//!   method relies on.

pub mod diagnostics;
pub mod dynamics;
mod error;
pub mod lab;
pub mod spectral;

pub use error::{Error, Result};
pub use num_complex::Complex64;
