//! Inequalities with stated constants: a single sample above the threshold
//! is a violation.

use std::borrow::Borrow;

use super::report::{ratio, LabParameters, LemmaId, RatioReport, RatioStats};
use crate::diagnostics::high_frequency_bound;
use crate::spectral::{frac_power, weighted_norm_sq, DissipationParams, SpectralField};
use crate::{Error, Result};

/// Relative slack allowed above an explicit constant.
pub const EXPLICIT_SLACK: f64 = 1e-12;
/// Distance from 1 below which an interpolation ratio counts as equality.
pub const EQUALITY_TOLERANCE: f64 = 1e-13;

/// The constant `max(2^{1/2α}, 2^{1/2β})`.
pub fn symbol_constant(alpha: f64, beta: f64) -> f64 {
    2f64.powf(0.5 / alpha).max(2f64.powf(0.5 / beta))
}

/// `|ξ| ≤ C·(A(ξ)^{1/2α} + A(ξ)^{1/2β})` over the given frequencies. The
/// reported ratios are `|ξ| / (A^{1/2α} + A^{1/2β})`, so `max_ratio` is the
/// empirical sharp constant. `ξ = 0` is skipped.
pub fn check_symbol_bound(
    p: &DissipationParams,
    xi_samples: impl IntoIterator<Item = (f64, f64)>,
) -> Result<RatioReport> {
    p.validate()?;
    let (alpha, beta) = (p.alpha, p.beta);
    let mut stats = RatioStats::default();
    for (a, b) in xi_samples {
        if a == 0.0 && b == 0.0 {
            continue;
        }
        let sym = p.anisotropic_symbol(a, b);
        let rhs = sym.powf(0.5 / alpha) + sym.powf(0.5 / beta);
        stats.push(ratio(a.hypot(b), rhs, 0.0));
    }
    let params = LabParameters {
        alpha: Some(alpha),
        beta: Some(beta),
        ..Default::default()
    };
    Ok(stats.finish(
        LemmaId::SymbolBound,
        params,
        Some((symbol_constant(alpha, beta), EXPLICIT_SLACK)),
    ))
}

/// `‖|∇|^α f‖_{Ḣ^s} ≤ ‖f‖_{Ḣ^{s'}} + ‖|∂₁|^α f‖_{Ḣ^s} + ‖|∂₂|^β f‖_{Ḣ^s}`
/// with constant 1. Requires `α ≤ β` and `s' < s + α`.
pub fn check_anisotropic_bound<F: Borrow<SpectralField>>(
    fields: impl IntoIterator<Item = F>,
    p: &DissipationParams,
    s: f64,
    s_prime: f64,
) -> Result<RatioReport> {
    p.validate()?;
    let (alpha, beta) = (p.alpha, p.beta);
    if alpha > beta {
        return Err(Error::Precondition(format!(
            "anisotropic bound needs α ≤ β, got α = {alpha}, β = {beta}"
        )));
    }
    if !(s_prime < s + alpha) {
        return Err(Error::Precondition(format!(
            "anisotropic bound needs s' < s + α, got s' = {s_prime}, s + α = {}",
            s + alpha
        )));
    }
    let hom = |a: f64, b: f64, sigma: f64| {
        let r2 = a * a + b * b;
        if r2 == 0.0 {
            0.0
        } else {
            r2.powf(sigma)
        }
    };
    let mut stats = RatioStats::default();
    let mut grid = None;
    for f in fields {
        let f = f.borrow();
        grid = Some(*f.grid());
        let lhs = weighted_norm_sq(f, |a, b| hom(a, b, s + alpha)).sqrt();
        let low = weighted_norm_sq(f, |a, b| hom(a, b, s_prime)).sqrt();
        let d1 = weighted_norm_sq(f, |a, b| hom(a, b, s) * frac_power(a.abs(), 2.0 * alpha)).sqrt();
        let d2 = weighted_norm_sq(f, |a, b| hom(a, b, s) * frac_power(b.abs(), 2.0 * beta)).sqrt();
        stats.push(ratio(lhs, low + d1 + d2, 0.0));
    }
    let params = LabParameters {
        s: Some(s),
        s_prime: Some(s_prime),
        alpha: Some(alpha),
        beta: Some(beta),
        n1: grid.map(|g| g.n1),
        n2: grid.map(|g| g.n2),
        ..Default::default()
    };
    Ok(stats.finish(LemmaId::Anisotropic, params, Some((1.0, EXPLICIT_SLACK))))
}

/// `‖f‖_{Ḣ^{ts₁+(1−t)s₂}} ≤ ‖f‖^t_{Ḣ^{s₁}} ‖f‖^{1−t}_{Ḣ^{s₂}}`. The report's
/// `equality` flag is set when every ratio equals 1 to
/// [`EQUALITY_TOLERANCE`], which happens exactly for single-shell spectra.
pub fn check_interpolation<F: Borrow<SpectralField>>(
    fields: impl IntoIterator<Item = F>,
    s1: f64,
    s2: f64,
    t: f64,
) -> Result<RatioReport> {
    if !(0.0..=1.0).contains(&t) {
        return Err(Error::Precondition(format!("t = {t} must lie in [0, 1]")));
    }
    let sigma = t * s1 + (1.0 - t) * s2;
    let norm = |f: &SpectralField, s: f64| {
        weighted_norm_sq(f, |a, b| {
            let r2 = a * a + b * b;
            if r2 == 0.0 {
                0.0
            } else {
                r2.powf(s)
            }
        })
        .sqrt()
    };
    let mut stats = RatioStats::default();
    let mut grid = None;
    let mut all_equal = true;
    for f in fields {
        let f = f.borrow();
        grid = Some(*f.grid());
        let lhs = norm(f, sigma);
        // x^0 = 1 keeps the endpoints t ∈ {0, 1} exact identities.
        let rhs = pow_or_one(norm(f, s1), t) * pow_or_one(norm(f, s2), 1.0 - t);
        let r = ratio(lhs, rhs, 0.0);
        all_equal &= lhs > 0.0 && (r - 1.0).abs() <= EQUALITY_TOLERANCE;
        stats.push(r);
    }
    let params = LabParameters {
        s1: Some(s1),
        s2: Some(s2),
        t: Some(t),
        n1: grid.map(|g| g.n1),
        n2: grid.map(|g| g.n2),
        ..Default::default()
    };
    let samples = stats.ratios().len();
    let mut report = stats.finish(LemmaId::Interpolation, params, Some((1.0, EXPLICIT_SLACK)));
    report.equality = Some(samples > 0 && all_equal);
    Ok(report)
}

fn pow_or_one(x: f64, e: f64) -> f64 {
    if e == 0.0 {
        1.0
    } else {
        x.powf(e)
    }
}

/// `‖B_δθ‖²_{L²} ≤ (‖|∂₁|^αθ‖²_{L²} + ‖|∂₂|^βθ‖²_{L²}) / δ` for every field
/// and every `δ`.
pub fn check_high_frequency_bound<F: Borrow<SpectralField>>(
    fields: impl IntoIterator<Item = F>,
    p: &DissipationParams,
    deltas: &[f64],
) -> Result<RatioReport> {
    p.validate()?;
    let mut stats = RatioStats::default();
    let mut grid = None;
    for f in fields {
        let f = f.borrow();
        grid = Some(*f.grid());
        for &delta in deltas {
            let b = high_frequency_bound(f, p, delta)?;
            stats.push(ratio(b.high_energy, b.bound, 0.0));
        }
    }
    let params = LabParameters {
        alpha: Some(p.alpha),
        beta: Some(p.beta),
        delta: (deltas.len() == 1).then(|| deltas[0]),
        n1: grid.map(|g| g.n1),
        n2: grid.map(|g| g.n2),
        ..Default::default()
    };
    Ok(stats.finish(LemmaId::HighFrequency, params, Some((1.0, EXPLICIT_SLACK))))
}
