use serde::{Deserialize, Serialize};

use crate::spectral::{Axis, SpectralField};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SpectrumBin {
    /// Bin centre in wavenumber units.
    pub k: f64,
    /// `L²` energy `area · Σ|θ̂|²` of the modes in the bin.
    pub energy: f64,
}

/// Energy per shell `|ξ| ≈ m·Δk`, `Δk = min(2π/l₁, 2π/l₂)`.
pub fn shell_spectrum(f: &SpectralField) -> Vec<SpectrumBin> {
    let grid = f.grid();
    let dk = grid.dk1().min(grid.dk2());
    binned(f, |a, b| (a.hypot(b) / dk).round() as usize, dk)
}

/// Energy per `|k_axis|`, summed over the other direction.
pub fn axis_spectrum(f: &SpectralField, axis: Axis) -> Vec<SpectrumBin> {
    let grid = f.grid();
    match axis {
        Axis::X1 => binned(
            f,
            |a, _| (a.abs() / grid.dk1()).round() as usize,
            grid.dk1(),
        ),
        Axis::X2 => binned(
            f,
            |_, b| (b.abs() / grid.dk2()).round() as usize,
            grid.dk2(),
        ),
    }
}

fn binned(f: &SpectralField, bin: impl Fn(f64, f64) -> usize, dk: f64) -> Vec<SpectrumBin> {
    let grid = f.grid();
    let mut energy: Vec<f64> = Vec::new();
    for (idx, c) in f.coeffs().iter().enumerate() {
        let (a, b) = grid.xi(idx);
        let m = bin(a, b);
        if energy.len() <= m {
            energy.resize(m + 1, 0.0);
        }
        energy[m] += c.norm_sqr() * grid.area();
    }
    energy
        .into_iter()
        .enumerate()
        .map(|(m, e)| SpectrumBin {
            k: m as f64 * dk,
            energy: e,
        })
        .collect()
}
