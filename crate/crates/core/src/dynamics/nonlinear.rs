use num_complex::Complex64;

use super::Dealias;
use crate::spectral::with_fft;
use crate::spectral::{GridSpec, SpectralField};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// Precomputed multipliers and work buffers for the pseudo-spectral
/// advection term `u_θ·∇θ`.
///
/// Velocity and gradient are each brought to the grid with one packed complex
/// FFT (`u₁ + i·u₂`, `∂₁θ + i·∂₂θ`), multiplied pointwise and transformed back.
pub(crate) struct AdvectionPlan {
    grid: GridSpec,
    /// `i·(−ξ₂ + iξ₁)/|ξ|` on kept input modes, else 0.
    velocity: Vec<Complex64>,
    /// `i·(ξ₁ + iξ₂)` on kept input modes, else 0.
    slope: Vec<Complex64>,
    keep_out: Vec<bool>,
    work_u: Vec<Complex64>,
    work_g: Vec<Complex64>,
}

impl AdvectionPlan {
    /// `cutoff` is an optional Friedrichs radius applied to the output.
    pub(crate) fn new(grid: GridSpec, dealias: Dealias, cutoff: Option<f64>) -> Self {
        let n = grid.len();
        let mut velocity = vec![ZERO; n];
        let mut slope = vec![ZERO; n];
        let mut keep_out = vec![false; n];
        let i = Complex64::i();
        for idx in 0..n {
            let band = match dealias {
                Dealias::TwoThirds => grid.in_two_thirds_band(idx),
                Dealias::None => true,
            };
            if !band || grid.is_nyquist(idx) {
                continue;
            }
            let (x1, x2) = grid.xi(idx);
            let norm = x1.hypot(x2);
            if norm > 0.0 {
                velocity[idx] = i * Complex64::new(-x2 / norm, x1 / norm);
                slope[idx] = i * Complex64::new(x1, x2);
            }
            keep_out[idx] = idx != 0 && cutoff.is_none_or(|r| norm < r);
        }
        Self {
            grid,
            velocity,
            slope,
            keep_out,
            work_u: vec![ZERO; n],
            work_g: vec![ZERO; n],
        }
    }

    /// Writes the spectral coefficients of `u_θ·∇θ` into `out`.
    ///
    /// The zero mode of the output is set to exactly zero: the term is a
    /// divergence because `u_θ` is divergence-free.
    pub(crate) fn advection(&mut self, theta: &[Complex64], out: &mut [Complex64]) {
        for (((wu, wg), (&c, &v)), &s) in self
            .work_u
            .iter_mut()
            .zip(self.work_g.iter_mut())
            .zip(theta.iter().zip(&self.velocity))
            .zip(&self.slope)
        {
            *wu = c * v;
            *wg = c * s;
        }
        let (work_u, work_g) = (&mut self.work_u, &mut self.work_g);
        with_fft(&self.grid, |fft| {
            fft.inverse(work_u);
            fft.inverse(work_g);
            for (u, g) in work_u.iter_mut().zip(work_g.iter()) {
                *u = Complex64::new(u.re * g.re + u.im * g.im, 0.0);
            }
            fft.forward(work_u);
        });
        for ((o, &w), &keep) in out.iter_mut().zip(self.work_u.iter()).zip(&self.keep_out) {
            *o = if keep { w } else { ZERO };
        }
    }
}

/// Spectral coefficients of `u_θ·∇θ` with `u_θ = R^⊥θ`, computed
/// pseudo-spectrally. With `dealias` the two-thirds mask is applied to the
/// inputs and to the product.
pub fn nonlinear_term(theta: &SpectralField, dealias: bool) -> SpectralField {
    let mode = if dealias {
        Dealias::TwoThirds
    } else {
        Dealias::None
    };
    let mut plan = AdvectionPlan::new(*theta.grid(), mode, None);
    let mut out = SpectralField::zeros(*theta.grid());
    plan.advection(theta.coeffs(), out.coeffs_mut());
    out
}

/// The same term in conservative form `div(u_θ θ)`, computed from the grid
/// products `u₁θ` and `u₂θ`. Agrees with [`nonlinear_term`] on dealiased
/// fields because `div u_θ = 0`.
pub fn nonlinear_term_divergence_form(theta: &SpectralField, dealias: bool) -> SpectralField {
    use crate::spectral::{divergence, pointwise_product, riesz_velocity};

    let grid = *theta.grid();
    let mask = |f: &SpectralField| {
        let mut f = f.clone();
        for (idx, c) in f.coeffs_mut().iter_mut().enumerate() {
            if grid.is_nyquist(idx) || (dealias && !grid.in_two_thirds_band(idx)) {
                *c = ZERO;
            }
        }
        f
    };
    let theta = mask(theta);
    let u = riesz_velocity(&theta);
    let f1 = pointwise_product(&u.u1, &theta).expect("same grid");
    let f2 = pointwise_product(&u.u2, &theta).expect("same grid");
    let mut out = mask(&divergence(&f1, &f2).expect("same grid"));
    out.remove_mean();
    out
}
