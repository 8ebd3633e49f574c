//! Fourier multipliers: fractional derivatives, the Riesz velocity, the
//! Friedrichs cutoff and the anisotropic dissipation symbol.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::SpectralField;
use crate::{Error, Result};

/// Coordinate axis of the periodic box.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Axis {
    X1,
    X2,
}

/// Dissipation exponents and coefficients `(α, β, μ, ν)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DissipationParams {
    pub alpha: f64,
    pub beta: f64,
    pub mu: f64,
    pub nu: f64,
}

impl DissipationParams {
    pub fn new(alpha: f64, beta: f64, mu: f64, nu: f64) -> Result<Self> {
        let p = Self {
            alpha,
            beta,
            mu,
            nu,
        };
        p.validate()?;
        Ok(p)
    }

    /// `μ = ν = 1`.
    pub fn unit(alpha: f64, beta: f64) -> Result<Self> {
        Self::new(alpha, beta, 1.0, 1.0)
    }

    pub fn validate(&self) -> Result<()> {
        for (name, v) in [("alpha", self.alpha), ("beta", self.beta)] {
            if !(v > 0.0 && v < 1.0) {
                return Err(Error::Domain(format!("{name} = {v} must lie in (0, 1)")));
            }
        }
        for (name, v) in [("mu", self.mu), ("nu", self.nu)] {
            if !(v.is_finite() && v > 0.0) {
                return Err(Error::Domain(format!("{name} = {v} must be positive")));
            }
        }
        Ok(())
    }

    /// `μ|ξ₁|^{2α} + ν|ξ₂|^{2β}`.
    #[inline]
    pub fn symbol(&self, xi1: f64, xi2: f64) -> f64 {
        self.mu * frac_power(xi1.abs(), 2.0 * self.alpha)
            + self.nu * frac_power(xi2.abs(), 2.0 * self.beta)
    }

    /// Unweighted `A(ξ) = |ξ₁|^{2α} + |ξ₂|^{2β}`.
    #[inline]
    pub fn anisotropic_symbol(&self, xi1: f64, xi2: f64) -> f64 {
        anisotropic_symbol(xi1, xi2, self.alpha, self.beta)
    }
}

/// `μ|ξ₁|^{2α} + ν|ξ₂|^{2β}`; zero exactly at `ξ = 0`.
pub fn dissipation_symbol(xi: (f64, f64), p: &DissipationParams) -> f64 {
    p.symbol(xi.0, xi.1)
}

/// `|ξ₁|^{2α} + |ξ₂|^{2β}`.
#[inline]
pub fn anisotropic_symbol(xi1: f64, xi2: f64, alpha: f64, beta: f64) -> f64 {
    frac_power(xi1.abs(), 2.0 * alpha) + frac_power(xi2.abs(), 2.0 * beta)
}

/// `x^σ` for `x ≥ 0` with `0^σ = 0` for `σ > 0` and `x^0 = 1`.
#[inline]
pub fn frac_power(x: f64, sigma: f64) -> f64 {
    if sigma == 0.0 {
        1.0
    } else if x == 0.0 {
        0.0
    } else if sigma == 1.0 {
        x
    } else if sigma == 2.0 {
        x * x
    } else {
        x.powf(sigma)
    }
}

fn check_order(sigma: f64) -> Result<()> {
    if sigma.is_finite() && sigma >= 0.0 {
        Ok(())
    } else {
        Err(Error::Domain(format!(
            "order {sigma} must be finite and non-negative"
        )))
    }
}

/// `|∂_axis|^σ f`, the multiplier `|ξ_axis|^σ`.
pub fn fractional_partial(f: &SpectralField, axis: Axis, sigma: f64) -> Result<SpectralField> {
    check_order(sigma)?;
    Ok(match axis {
        Axis::X1 => f.map_multiplier(|a, _| frac_power(a.abs(), sigma)),
        Axis::X2 => f.map_multiplier(|_, b| frac_power(b.abs(), sigma)),
    })
}

/// `|∇|^σ f`, the multiplier `|ξ|^σ`.
pub fn fractional_laplacian(f: &SpectralField, sigma: f64) -> Result<SpectralField> {
    check_order(sigma)?;
    Ok(f.map_multiplier(|a, b| frac_power(a.hypot(b), sigma)))
}

/// Velocity `u = (u₁, u₂)` in spectral form.
#[derive(Debug, Clone, PartialEq)]
pub struct VelocityField {
    pub u1: SpectralField,
    pub u2: SpectralField,
}

impl VelocityField {
    /// `max_ξ |ξ·û(ξ)|`.
    pub fn divergence_defect(&self) -> f64 {
        let grid = *self.u1.grid();
        self.u1
            .coeffs()
            .iter()
            .zip(self.u2.coeffs())
            .enumerate()
            .map(|(idx, (a, b))| {
                let (x1, x2) = grid.xi(idx);
                (a * x1 + b * x2).norm()
            })
            .fold(0.0, f64::max)
    }
}

/// `u = R^⊥θ = (−R₂θ, R₁θ)` with `R_j` the multiplier `iξ_j/|ξ|`.
///
/// The zero mode and the Nyquist row/column map to zero: the first has no
/// direction, the second has no Hermitian partner for an odd symbol.
pub fn riesz_velocity(theta: &SpectralField) -> VelocityField {
    let grid = *theta.grid();
    let mut u1 = SpectralField::zeros(grid);
    let mut u2 = SpectralField::zeros(grid);
    for (idx, &c) in theta.coeffs().iter().enumerate() {
        if idx == 0 || grid.is_nyquist(idx) {
            continue;
        }
        let (x1, x2) = grid.xi(idx);
        let norm = x1.hypot(x2);
        let ic = Complex64::new(-c.im, c.re);
        u1.coeffs_mut()[idx] = -ic * (x2 / norm);
        u2.coeffs_mut()[idx] = ic * (x1 / norm);
    }
    VelocityField { u1, u2 }
}

/// `(∂₁f, ∂₂f)`, multipliers `iξ₁` and `iξ₂`; Nyquist modes map to zero.
pub fn gradient(f: &SpectralField) -> (SpectralField, SpectralField) {
    let grid = *f.grid();
    let mut g1 = SpectralField::zeros(grid);
    let mut g2 = SpectralField::zeros(grid);
    for (idx, &c) in f.coeffs().iter().enumerate() {
        if grid.is_nyquist(idx) {
            continue;
        }
        let (x1, x2) = grid.xi(idx);
        let ic = Complex64::new(-c.im, c.re);
        g1.coeffs_mut()[idx] = ic * x1;
        g2.coeffs_mut()[idx] = ic * x2;
    }
    (g1, g2)
}

/// Spectral divergence `∂₁a + ∂₂b`.
pub fn divergence(a: &SpectralField, b: &SpectralField) -> Result<SpectralField> {
    let (da, _) = gradient(a);
    let (_, db) = gradient(b);
    da.try_add(&db)
}

/// Friedrichs mollifier `J_N`: keeps modes with `|ξ| < radius`.
pub fn friedrichs_project(f: &SpectralField, radius: f64) -> Result<SpectralField> {
    if !(radius > 0.0) {
        return Err(Error::Domain(format!(
            "cutoff radius {radius} must be positive"
        )));
    }
    Ok(f.map_multiplier(|a, b| if a.hypot(b) < radius { 1.0 } else { 0.0 }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectral::GridSpec;

    #[test]
    fn params_are_validated() {
        assert!(DissipationParams::new(0.0, 0.5, 1.0, 1.0).is_err());
        assert!(DissipationParams::new(0.5, 1.0, 1.0, 1.0).is_err());
        assert!(DissipationParams::new(0.5, 0.5, 0.0, 1.0).is_err());
        assert!(DissipationParams::new(0.5, 0.5, 1.0, 1.0).is_ok());
    }

    #[test]
    fn symbol_examples() {
        let half = DissipationParams::unit(0.5, 0.5).unwrap();
        assert_eq!(dissipation_symbol((1.0, 1.0), &half), 2.0);
        assert_eq!(dissipation_symbol((0.0, 0.0), &half), 0.0);
        let p = DissipationParams::new(0.5, 0.5, 3.0, 1.0).unwrap();
        assert_eq!(dissipation_symbol((2.0, 0.0), &p), 6.0);
    }

    #[test]
    fn frac_power_at_zero() {
        assert_eq!(frac_power(0.0, 0.0), 1.0);
        assert_eq!(frac_power(0.0, 0.3), 0.0);
        assert_eq!(frac_power(4.0, 0.5), 2.0);
    }

    #[test]
    fn negative_orders_are_rejected() {
        let f = SpectralField::zeros(GridSpec::square(8).unwrap());
        assert!(fractional_partial(&f, Axis::X1, -0.1).is_err());
        assert!(fractional_laplacian(&f, f64::NAN).is_err());
        assert!(friedrichs_project(&f, 0.0).is_err());
    }
}
