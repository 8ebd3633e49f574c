use crate::spectral::{
    frac_power, sobolev_norm_sq, weighted_norm_sq, DissipationParams, SobolevIndex, SpectralField,
};
use crate::{Error, Result};

/// Partition of `θ` by the unweighted symbol `A(ξ) = |ξ₁|^{2α} + |ξ₂|^{2β}`:
/// `low` keeps `A(ξ) ≤ δ`, `high` the rest.
#[derive(Debug, Clone, PartialEq)]
pub struct FrequencySplit {
    pub delta: f64,
    pub low: SpectralField,
    pub high: SpectralField,
}

pub fn frequency_split(
    theta: &SpectralField,
    p: &DissipationParams,
    delta: f64,
) -> Result<FrequencySplit> {
    if !(delta > 0.0) {
        return Err(Error::Domain(format!("delta = {delta} must be positive")));
    }
    let low = theta.map_multiplier(|a, b| {
        if p.anisotropic_symbol(a, b) <= delta {
            1.0
        } else {
            0.0
        }
    });
    let high = theta.try_sub(&low)?;
    Ok(FrequencySplit { delta, low, high })
}

/// Both sides of `‖B_δθ‖²_{L²} ≤ (‖|∂₁|^αθ‖²_{L²} + ‖|∂₂|^βθ‖²_{L²}) / δ`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HighFrequencyBound {
    pub high_energy: f64,
    pub bound: f64,
}

pub fn high_frequency_bound(
    theta: &SpectralField,
    p: &DissipationParams,
    delta: f64,
) -> Result<HighFrequencyBound> {
    let split = frequency_split(theta, p, delta)?;
    let high_energy = sobolev_norm_sq(&split.high, SobolevIndex::L2);
    let dissipation = weighted_norm_sq(theta, |a, b| {
        frac_power(a.abs(), 2.0 * p.alpha) + frac_power(b.abs(), 2.0 * p.beta)
    });
    Ok(HighFrequencyBound {
        high_energy,
        bound: dissipation / delta,
    })
}
