use std::f64::consts::PI;

use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use serde::{Deserialize, Serialize};

use crate::spectral::{sobolev_norm, GridSpec, SobolevIndex, SpectralField};
use crate::{Error, Result};

/// Initial temperature, described in spectral space. Every variant yields a
/// real, mean-zero field with empty Nyquist row and column.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum InitialData {
    /// `amplitude · cos(ξ·x)` for the mode `k = (k1, k2)`.
    PlaneWave { k1: i64, k2: i64, amplitude: f64 },
    /// Gaussian coefficients on the shells `shell_min ≤ |ξ| ≤ shell_max`,
    /// rescaled to root-mean-square value `amplitude`.
    RandomBandlimited {
        shell_min: f64,
        shell_max: f64,
        amplitude: f64,
    },
    /// Periodised Gaussian of standard deviation `width` centred in the box,
    /// peak `amplitude` before the mean is removed.
    GaussianBump { width: f64, amplitude: f64 },
}

impl InitialData {
    /// Builds the field; `seed` drives the random variant only.
    pub fn build(&self, grid: &GridSpec, seed: u64) -> Result<SpectralField> {
        grid.validate()?;
        match *self {
            InitialData::PlaneWave { k1, k2, amplitude } => plane_wave(grid, k1, k2, amplitude),
            InitialData::RandomBandlimited {
                shell_min,
                shell_max,
                amplitude,
            } => random_bandlimited(grid, seed, shell_min, shell_max, amplitude),
            InitialData::GaussianBump { width, amplitude } => gaussian_bump(grid, width, amplitude),
        }
    }
}

fn plane_wave(grid: &GridSpec, k1: i64, k2: i64, amplitude: f64) -> Result<SpectralField> {
    if k1 == 0 && k2 == 0 {
        return Err(Error::Domain(
            "plane wave needs a nonzero wavevector".into(),
        ));
    }
    let resolved = grid.index_of(k1, k2).is_some_and(|i| !grid.is_nyquist(i));
    if !resolved {
        return Err(Error::Domain(format!(
            "mode ({k1}, {k2}) is not resolved on the grid"
        )));
    }
    let mut f = SpectralField::zeros(*grid);
    f.set_pair(k1, k2, Complex64::new(0.5 * amplitude, 0.0))?;
    Ok(f)
}

/// Random real field with Gaussian coefficients on `shell_min ≤ |ξ| ≤ shell_max`
/// and root-mean-square value `amplitude`. Deterministic in `seed`.
pub fn random_bandlimited(
    grid: &GridSpec,
    seed: u64,
    shell_min: f64,
    shell_max: f64,
    amplitude: f64,
) -> Result<SpectralField> {
    if !(shell_min >= 0.0 && shell_max >= shell_min) {
        return Err(Error::Domain(format!(
            "invalid shell range [{shell_min}, {shell_max}]"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut f = SpectralField::zeros(*grid);
    let mut count = 0usize;
    for idx in 1..grid.len() {
        let cidx = grid.conj_index(idx);
        if cidx < idx || grid.is_nyquist(idx) {
            continue;
        }
        let (a, b) = grid.xi(idx);
        let r = a.hypot(b);
        if r < shell_min || r > shell_max {
            continue;
        }
        let re: f64 = StandardNormal.sample(&mut rng);
        let im: f64 = StandardNormal.sample(&mut rng);
        f.coeffs_mut()[idx] = Complex64::new(re, im);
        f.coeffs_mut()[cidx] = Complex64::new(re, -im);
        count += 1;
    }
    if count == 0 {
        return Err(Error::Domain(format!(
            "no resolved modes with {shell_min} ≤ |ξ| ≤ {shell_max}"
        )));
    }
    let rms = (sobolev_norm(&f, SobolevIndex::L2).powi(2) / grid.area()).sqrt();
    Ok(f.scaled(amplitude / rms))
}

fn gaussian_bump(grid: &GridSpec, width: f64, amplitude: f64) -> Result<SpectralField> {
    if !(width.is_finite() && width > 0.0) {
        return Err(Error::Domain(format!(
            "bump width {width} must be positive"
        )));
    }
    let scale = amplitude * 2.0 * PI * width * width / grid.area();
    let mut f = SpectralField::from_fn(*grid, |k1, k2| {
        let idx = grid.index_of(k1, k2).expect("mode on grid");
        let (a, b) = grid.xi(idx);
        let sign = if (k1 + k2).rem_euclid(2) == 0 {
            1.0
        } else {
            -1.0
        };
        Complex64::new(
            sign * scale * (-0.5 * width * width * (a * a + b * b)).exp(),
            0.0,
        )
    });
    f.remove_mean();
    f.zero_nyquist();
    Ok(f)
}

/// Rescales `f` so that its norm `idx` equals `target`.
pub fn rescale_to_norm(f: &SpectralField, idx: SobolevIndex, target: f64) -> Result<SpectralField> {
    let norm = sobolev_norm(f, idx);
    if norm == 0.0 {
        if target == 0.0 {
            return Ok(f.clone());
        }
        return Err(Error::Domain("cannot rescale a field of zero norm".into()));
    }
    Ok(f.scaled(target / norm))
}
