use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::spectral::{GridSpec, SpectralField};
use crate::{Error, Result};

/// Family of random test fields: Gaussian coefficients on `1 ≤ |k_i| ≤ kmax_i`,
/// damped by `(1 + |k|²)^{−decay/2}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FieldFamily {
    pub kmax1: u64,
    pub kmax2: u64,
    pub decay: f64,
    pub mean_zero: bool,
}

impl FieldFamily {
    /// The largest band whose quadratic products stay alias-free after
    /// zero-padding: `|k_i| < n_i/3`.
    pub fn third_band(grid: &GridSpec, decay: f64) -> Self {
        Self {
            kmax1: (grid.n1 as u64 - 1) / 3,
            kmax2: (grid.n2 as u64 - 1) / 3,
            decay,
            mean_zero: true,
        }
    }

    /// Same family with an explicit per-axis cap.
    pub fn with_band(kmax: u64, decay: f64) -> Self {
        Self {
            kmax1: kmax,
            kmax2: kmax,
            decay,
            mean_zero: true,
        }
    }

    pub fn sample(&self, grid: &GridSpec, seed: u64) -> Result<SpectralField> {
        let cap1 = (grid.n1 / 2) as u64;
        let cap2 = (grid.n2 / 2) as u64;
        if self.kmax1 >= cap1 || self.kmax2 >= cap2 {
            return Err(Error::Domain(format!(
                "band ({}, {}) not resolved on a {}×{} grid",
                self.kmax1, self.kmax2, grid.n1, grid.n2
            )));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut f = SpectralField::zeros(*grid);
        let (k1max, k2max) = (self.kmax1 as i64, self.kmax2 as i64);
        for k1 in 0..=k1max {
            for k2 in -k2max..=k2max {
                if k1 == 0 && k2 < 0 {
                    continue;
                }
                let weight = if k1 == 0 && k2 == 0 {
                    if self.mean_zero {
                        continue;
                    }
                    1.0
                } else {
                    (1.0 + (k1 * k1 + k2 * k2) as f64).powf(-0.5 * self.decay)
                };
                let re: f64 = StandardNormal.sample(&mut rng);
                let im: f64 = StandardNormal.sample(&mut rng);
                f.set_pair(k1, k2, Complex64::new(re, im) * weight)?;
            }
        }
        Ok(f)
    }
}

/// Random field supported on the lattice shell `k₁² + k₂² = radius_sq`.
pub fn single_shell_field(grid: &GridSpec, seed: u64, radius_sq: i64) -> Result<SpectralField> {
    shells_field(grid, seed, &[radius_sq])
}

/// Random field supported on the union of the given lattice shells.
pub fn shells_field(grid: &GridSpec, seed: u64, radii_sq: &[i64]) -> Result<SpectralField> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut f = SpectralField::zeros(*grid);
    let mut count = 0;
    for &r2 in radii_sq {
        let r = (r2 as f64).sqrt().ceil() as i64;
        for k1 in 0..=r {
            for k2 in -r..=r {
                if k1 * k1 + k2 * k2 != r2 || (k1 == 0 && k2 <= 0) {
                    continue;
                }
                let Some(idx) = grid.index_of(k1, k2) else {
                    continue;
                };
                if grid.is_nyquist(idx) {
                    continue;
                }
                let re: f64 = StandardNormal.sample(&mut rng);
                let im: f64 = StandardNormal.sample(&mut rng);
                f.set_pair(k1, k2, Complex64::new(re, im))?;
                count += 1;
            }
        }
    }
    if count == 0 {
        return Err(Error::Domain(format!(
            "no resolved lattice points on shells {radii_sq:?}"
        )));
    }
    Ok(f)
}

/// Lattice points `(k₁, k₂)` with `|k_i| ≤ kmax`, converted to `ξ` on the
/// given box.
pub fn lattice_sweep(grid: &GridSpec, kmax: i64) -> Vec<(f64, f64)> {
    let mut out = Vec::with_capacity(((2 * kmax + 1) * (2 * kmax + 1)) as usize);
    for k1 in -kmax..=kmax {
        for k2 in -kmax..=kmax {
            out.push((k1 as f64 * grid.dk1(), k2 as f64 * grid.dk2()));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn family_respects_band_and_mean() {
        let g = GridSpec::square(32).unwrap();
        let fam = FieldFamily::third_band(&g, 1.0);
        assert_eq!(fam.kmax1, 10);
        let f = fam.sample(&g, 7).unwrap();
        assert_eq!(f.band_limit(), (10, 10));
        assert_eq!(f.mean(), 0.0);
        assert!(f.hermitian_defect() == 0.0);
        assert_eq!(f, fam.sample(&g, 7).unwrap());
        assert_ne!(f, fam.sample(&g, 8).unwrap());
        assert!(FieldFamily::with_band(16, 0.0).sample(&g, 0).is_err());
    }

    #[test]
    fn shell_field_lives_on_one_shell() {
        let g = GridSpec::square(32).unwrap();
        let f = single_shell_field(&g, 3, 25).unwrap();
        for (idx, c) in f.coeffs().iter().enumerate() {
            if c.norm() > 0.0 {
                let (k1, k2) = g.mode(idx);
                assert_eq!(k1 * k1 + k2 * k2, 25);
            }
        }
        assert!(single_shell_field(&g, 3, 3).is_err());
        assert_eq!(lattice_sweep(&g, 2).len(), 25);
    }
}
