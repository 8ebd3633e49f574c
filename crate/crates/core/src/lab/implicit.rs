//! Inequalities with unspecified constants. These checks report ratio
//! statistics; boundedness and refinement stability are asserted by callers.

use std::borrow::Borrow;

use super::report::{ratio, LabParameters, LemmaId, RatioReport, RatioStats};
use crate::spectral::{
    frac_power, inverse_pair, inverse_transform, lp_norm, pointwise_product, resample,
    riesz_velocity, weighted_norm_sq, GridSpec, SpectralField,
};
use crate::{Error, Result};

/// Relative size of a mean treated as zero.
const MEAN_TOLERANCE: f64 = 1e-12;
/// Relative size of a coefficient treated as zero by the band check.
const BAND_TOLERANCE: f64 = 1e-13;

fn homogeneous_norm(f: &SpectralField, sigma: f64) -> f64 {
    weighted_norm_sq(f, |a, b| {
        let r2 = a * a + b * b;
        if r2 == 0.0 {
            0.0
        } else {
            r2.powf(sigma)
        }
    })
    .sqrt()
}

fn require_mean_zero(f: &SpectralField, what: &str) -> Result<()> {
    let scale = f.max_abs();
    if f.mean().abs() > MEAN_TOLERANCE * scale {
        return Err(Error::Precondition(format!(
            "{what} must have zero mean, got mean {}",
            f.mean()
        )));
    }
    Ok(())
}

/// Rejects fields with content outside `|k_i| < n_i/3`.
fn require_third_band(f: &SpectralField) -> Result<()> {
    let grid = f.grid();
    // Transform roundoff outside the band is not content.
    let floor = BAND_TOLERANCE * f.max_abs();
    let outside = f
        .coeffs()
        .iter()
        .enumerate()
        .any(|(idx, c)| c.norm() > floor && !grid.in_two_thirds_band(idx));
    if outside {
        let (k1, k2) = f.band_limit();
        return Err(Error::Aliasing(format!(
            "band ({k1}, {k2}) exceeds one third of the {}×{} grid",
            grid.n1, grid.n2
        )));
    }
    Ok(())
}

fn refined(grid: &GridSpec, factor: usize) -> Result<GridSpec> {
    grid.with_resolution(grid.n1 * factor, grid.n2 * factor)
}

fn without_nyquist(f: &SpectralField) -> SpectralField {
    let mut g = f.clone();
    g.zero_nyquist();
    g
}

fn grid_params(grid: Option<GridSpec>) -> LabParameters {
    LabParameters {
        n1: grid.map(|g| g.n1),
        n2: grid.map(|g| g.n2),
        ..Default::default()
    }
}

/// `‖f‖_{L^p} ≤ C‖|∇|^σ f‖_{L²}` with `p = 2/(1−σ)`. The `L^p` norm is a
/// grid quadrature on a twice-refined grid; Nyquist modes are cleared first.
pub fn check_embedding<F: Borrow<SpectralField>>(
    fields: impl IntoIterator<Item = F>,
    sigma: f64,
) -> Result<RatioReport> {
    if !(0.0..1.0).contains(&sigma) {
        return Err(Error::Precondition(format!(
            "σ = {sigma} must lie in [0, 1)"
        )));
    }
    let p = 2.0 / (1.0 - sigma);
    let mut stats = RatioStats::default();
    let mut grid = None;
    for f in fields {
        let f = without_nyquist(f.borrow());
        require_mean_zero(&f, "embedding input")?;
        grid = Some(*f.grid());
        let fine = resample(&f, &refined(f.grid(), 2)?)?;
        let values = inverse_transform(&fine)?;
        let lhs = lp_norm(fine.grid(), &values, p);
        stats.push(ratio(lhs, homogeneous_norm(&f, sigma), 0.0));
    }
    let params = LabParameters {
        sigma: Some(sigma),
        p: Some(p),
        ..grid_params(grid)
    };
    Ok(stats.finish(LemmaId::Embedding, params, None))
}

/// `‖R^⊥θ‖_{L^p} ≤ C(p)‖θ‖_{L^p}` for even `p`. The quadrature grid is
/// refined until `|u|^p` and `θ^p` are resolved exactly, so `p = 2` gives
/// ratio 1 to rounding. Nyquist modes of `θ` are cleared first.
pub fn check_riesz_bound<F: Borrow<SpectralField>>(
    fields: impl IntoIterator<Item = F>,
    p: u32,
) -> Result<RatioReport> {
    if p < 2 || p % 2 != 0 {
        return Err(Error::Precondition(format!(
            "p = {p} must be an even integer ≥ 2"
        )));
    }
    let mut stats = RatioStats::default();
    let mut grid = None;
    for theta in fields {
        let theta = without_nyquist(theta.borrow());
        require_mean_zero(&theta, "Riesz input")?;
        let g = *theta.grid();
        grid = Some(g);
        let (k1, k2) = theta.band_limit();
        let mut factor = 1;
        while (g.n1 * factor) as u64 <= p as u64 * k1 || (g.n2 * factor) as u64 <= p as u64 * k2 {
            factor *= 2;
        }
        let fine_grid = refined(&g, factor)?;
        let fine = resample(&theta, &fine_grid)?;
        let u = riesz_velocity(&fine);
        let (u1, u2) = inverse_pair(&u.u1, &u.u2)?;
        let speed: Vec<f64> = u1.iter().zip(&u2).map(|(a, b)| a.hypot(*b)).collect();
        let lhs = lp_norm(&fine_grid, &speed, p as f64);
        let rhs = lp_norm(&fine_grid, &inverse_transform(&fine)?, p as f64);
        stats.push(ratio(lhs, rhs, 0.0));
    }
    let params = LabParameters {
        p: Some(p as f64),
        ..grid_params(grid)
    };
    Ok(stats.finish(LemmaId::Riesz, params, None))
}

fn checked_pair(f: &SpectralField, g: &SpectralField) -> Result<GridSpec> {
    if f.grid() != g.grid() {
        return Err(Error::GridMismatch);
    }
    require_third_band(f)?;
    require_third_band(g)?;
    refined(f.grid(), 2)
}

/// `‖fg‖_{Ḣ^{s₁+s₂−1}} ≤ C‖f‖_{Ḣ^{s₁}}‖g‖_{Ḣ^{s₂}}` for `s₁, s₂ < 1`,
/// `s₁ + s₂ > 0`. Inputs must be mean-zero and band-limited to one third of
/// the grid; the product is formed exactly on a twice-refined grid.
pub fn check_product_estimate<F, G>(
    pairs: impl IntoIterator<Item = (F, G)>,
    s1: f64,
    s2: f64,
) -> Result<RatioReport>
where
    F: Borrow<SpectralField>,
    G: Borrow<SpectralField>,
{
    if !(s1 < 1.0 && s2 < 1.0 && s1 + s2 > 0.0) {
        return Err(Error::Precondition(format!(
            "product estimate needs s₁, s₂ < 1 and s₁ + s₂ > 0, got ({s1}, {s2})"
        )));
    }
    let sigma = s1 + s2 - 1.0;
    let mut stats = RatioStats::default();
    let mut grid = None;
    for (f, g) in pairs {
        let (f, g) = (f.borrow(), g.borrow());
        let fine = checked_pair(f, g)?;
        require_mean_zero(f, "product input f")?;
        require_mean_zero(g, "product input g")?;
        grid = Some(*f.grid());
        let fg = pointwise_product(&resample(f, &fine)?, &resample(g, &fine)?)?;
        let lhs = homogeneous_norm(&fg, sigma);
        let rhs = homogeneous_norm(f, s1) * homogeneous_norm(g, s2);
        stats.push(ratio(lhs, rhs, 0.0));
    }
    let params = LabParameters {
        s1: Some(s1),
        s2: Some(s2),
        ..grid_params(grid)
    };
    Ok(stats.finish(LemmaId::Product, params, None))
}

/// `‖|∇|^s(fg) − f|∇|^s g‖_{L²} ≤ s2^s C(α)·bracket` with bracket
/// `‖|∇|^{s+α}f‖‖|∇|^{1−α}g‖ + ‖|∇|^{s−1+α}g‖‖|∇|^{2−α}f‖`. The reported
/// ratio is `LHS/(s2^s·bracket)`. `g` must be mean-zero (a constant `g` makes
/// the left side `c|∇|^s f` with a vanishing bracket); both inputs must be
/// band-limited to one third of the grid.
pub fn check_commutator<F, G>(
    pairs: impl IntoIterator<Item = (F, G)>,
    s: f64,
    alpha: f64,
) -> Result<RatioReport>
where
    F: Borrow<SpectralField>,
    G: Borrow<SpectralField>,
{
    if !(s > 1.0) {
        return Err(Error::Precondition(format!(
            "commutator needs s > 1, got {s}"
        )));
    }
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(Error::Precondition(format!(
            "α = {alpha} must lie in (0, 1)"
        )));
    }
    let lap_s = |a: f64, b: f64| frac_power(a.hypot(b), s);
    let mut stats = RatioStats::default();
    let mut grid = None;
    for (f, g) in pairs {
        let (f, g) = (f.borrow(), g.borrow());
        let fine = checked_pair(f, g)?;
        require_mean_zero(g, "commutator input g")?;
        grid = Some(*f.grid());
        let (ff, gf) = (resample(f, &fine)?, resample(g, &fine)?);
        let whole = pointwise_product(&ff, &gf)?.map_multiplier(lap_s);
        let split = pointwise_product(&ff, &gf.map_multiplier(lap_s))?;
        let diff = whole.try_sub(&split)?;
        let lhs = weighted_norm_sq(&diff, |_, _| 1.0).sqrt();
        let bracket = homogeneous_norm(f, s + alpha) * homogeneous_norm(g, 1.0 - alpha)
            + homogeneous_norm(g, s - 1.0 + alpha) * homogeneous_norm(f, 2.0 - alpha);
        // Rounding floor for the exact zeros (constant f, zero g).
        let floor = 1e-13
            * weighted_norm_sq(&whole, |_, _| 1.0)
                .sqrt()
                .max(weighted_norm_sq(&split, |_, _| 1.0).sqrt());
        stats.push(ratio(lhs, s * 2f64.powf(s) * bracket, floor));
    }
    let params = LabParameters {
        s: Some(s),
        alpha: Some(alpha),
        ..grid_params(grid)
    };
    Ok(stats.finish(LemmaId::Commutator, params, None))
}
