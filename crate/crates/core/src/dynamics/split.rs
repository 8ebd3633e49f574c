use crate::spectral::{friedrichs_project, sobolev_norm, SobolevIndex, SpectralField};
use crate::{Error, Result};

/// Relative gap above a shell used when the cutoff must keep that shell.
const SHELL_MARGIN: f64 = 1e-9;

/// `θ⁰ = low + high` with `low = J_N θ⁰`.
#[derive(Debug, Clone, PartialEq)]
pub struct InitialSplit {
    pub radius: f64,
    pub low: SpectralField,
    pub high: SpectralField,
    /// `‖high‖_{Ḣ^s}`.
    pub high_norm: f64,
}

/// Splits `θ⁰` into a smooth low-frequency part and a high-frequency
/// remainder of `Ḣ^s` norm below `eps`, choosing the smallest cutoff that
/// achieves it.
///
/// Candidate cutoffs are the smallest nonzero shell (only the mean survives)
/// and, for each shell radius `r`, the value `r·(1 + 1e−9)` which keeps every
/// mode with `|ξ| ≤ r`.
pub fn split_initial_data(theta0: &SpectralField, eps: f64, s: f64) -> Result<InitialSplit> {
    if !(eps > 0.0) {
        return Err(Error::Domain(format!("eps = {eps} must be positive")));
    }
    let grid = *theta0.grid();
    let index = SobolevIndex::homogeneous(s);

    let mut shells: Vec<(f64, f64)> = theta0
        .coeffs()
        .iter()
        .enumerate()
        .filter(|(idx, _)| *idx != 0)
        .map(|(idx, c)| {
            let (a, b) = grid.xi(idx);
            let r2 = a * a + b * b;
            (r2.sqrt(), index.weight(r2) * c.norm_sqr() * grid.area())
        })
        .collect();
    shells.sort_by(|x, y| x.0.total_cmp(&y.0));

    // Group modes of (numerically) equal |ξ| into shells.
    let mut grouped: Vec<(f64, f64)> = Vec::new();
    for (r, e) in shells {
        match grouped.last_mut() {
            Some(last) if (r - last.0).abs() <= 1e-12 * r => last.1 += e,
            _ => grouped.push((r, e)),
        }
    }
    if grouped.is_empty() {
        return Err(Error::Unsplittable("grid has no nonzero modes".into()));
    }

    // Ḣ^s energy strictly outside shell j, summed from the top.
    let mut tail = vec![0.0; grouped.len() + 1];
    for j in (0..grouped.len()).rev() {
        tail[j] = tail[j + 1] + grouped[j].1;
    }

    let radius = if tail[0].sqrt() < eps {
        grouped[0].0
    } else {
        let j = (0..grouped.len())
            .find(|&j| tail[j + 1].sqrt() < eps)
            .ok_or_else(|| Error::Unsplittable(format!("eps = {eps} not reached")))?;
        grouped[j].0 * (1.0 + SHELL_MARGIN)
    };

    let low = friedrichs_project(theta0, radius)?;
    let high = theta0.try_sub(&low)?;
    let high_norm = sobolev_norm(&high, index);
    Ok(InitialSplit {
        radius,
        low,
        high,
        high_norm,
    })
}
