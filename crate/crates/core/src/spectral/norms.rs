use serde::{Deserialize, Serialize};

use super::{GridSpec, SpectralField};
use crate::{Error, Result};

/// Selects `‖·‖_{H^s}` (weight `(1+|ξ|²)^s`) or `‖·‖_{Ḣ^s}` (weight `|ξ|^{2s}`,
/// zero mode excluded).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SobolevIndex {
    pub s: f64,
    pub homogeneous: bool,
}

impl SobolevIndex {
    pub const L2: SobolevIndex = SobolevIndex {
        s: 0.0,
        homogeneous: false,
    };

    pub fn inhomogeneous(s: f64) -> Self {
        Self {
            s,
            homogeneous: false,
        }
    }

    pub fn homogeneous(s: f64) -> Self {
        Self {
            s,
            homogeneous: true,
        }
    }

    /// Weight applied to `|f̂(ξ)|²` given `|ξ|²`.
    #[inline]
    pub fn weight(&self, xi_sq: f64) -> f64 {
        if self.homogeneous {
            if xi_sq == 0.0 {
                0.0
            } else if self.s == 0.0 {
                1.0
            } else if self.s == 1.0 {
                xi_sq
            } else {
                xi_sq.powf(self.s)
            }
        } else if self.s == 0.0 {
            1.0
        } else {
            (1.0 + xi_sq).powf(self.s)
        }
    }

    /// Per-mode weights in storage order, for repeated evaluation.
    pub fn weight_table(&self, grid: &GridSpec) -> Vec<f64> {
        (0..grid.len())
            .map(|idx| {
                let (a, b) = grid.xi(idx);
                self.weight(a * a + b * b)
            })
            .collect()
    }
}

/// `area · Σ_ξ w(ξ)|f̂(ξ)|²`, summed in storage order.
pub fn weighted_norm_sq(f: &SpectralField, mut weight: impl FnMut(f64, f64) -> f64) -> f64 {
    let grid = f.grid();
    let sum: f64 = f
        .coeffs()
        .iter()
        .enumerate()
        .map(|(idx, c)| {
            let (a, b) = grid.xi(idx);
            weight(a, b) * c.norm_sqr()
        })
        .sum();
    sum * grid.area()
}

/// `area · Σ_ξ table[ξ]|f̂(ξ)|²` with a precomputed weight table.
pub fn table_norm_sq(f: &SpectralField, table: &[f64]) -> f64 {
    debug_assert_eq!(table.len(), f.coeffs().len());
    let sum: f64 = f
        .coeffs()
        .iter()
        .zip(table)
        .map(|(c, w)| w * c.norm_sqr())
        .sum();
    sum * f.grid().area()
}

/// Sobolev norm including the box area, so `‖cos x₁‖²_{L²} = 2π²` on the
/// `2π × 2π` box.
pub fn sobolev_norm(f: &SpectralField, idx: SobolevIndex) -> f64 {
    sobolev_norm_sq(f, idx).sqrt()
}

pub fn sobolev_norm_sq(f: &SpectralField, idx: SobolevIndex) -> f64 {
    weighted_norm_sq(f, |a, b| idx.weight(a * a + b * b))
}

/// `(f, g)_{L²} = area · Σ Re(f̂ conj ĝ)`.
pub fn inner_product(f: &SpectralField, g: &SpectralField) -> Result<f64> {
    if f.grid() != g.grid() {
        return Err(Error::GridMismatch);
    }
    let sum: f64 = f
        .coeffs()
        .iter()
        .zip(g.coeffs())
        .map(|(a, b)| a.re * b.re + a.im * b.im)
        .sum();
    Ok(sum * f.grid().area())
}

/// Grid-point quadrature of `(∫|v|^p dx)^{1/p}` over the box.
pub fn lp_norm(grid: &GridSpec, values: &[f64], p: f64) -> f64 {
    let cell = grid.area() / grid.len() as f64;
    let sum: f64 = values.iter().map(|v| v.abs().powf(p)).sum();
    (sum * cell).powf(1.0 / p)
}

/// Physical-space `L²` norm by grid quadrature.
pub fn l2_norm_physical(grid: &GridSpec, values: &[f64]) -> f64 {
    let cell = grid.area() / grid.len() as f64;
    (values.iter().map(|v| v * v).sum::<f64>() * cell).sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;

    #[test]
    fn homogeneous_weight_skips_zero_mode() {
        assert_eq!(SobolevIndex::homogeneous(0.0).weight(0.0), 0.0);
        assert_eq!(SobolevIndex::inhomogeneous(1.5).weight(0.0), 1.0);
        assert_eq!(SobolevIndex::homogeneous(1.0).weight(4.0), 4.0);
        assert!((SobolevIndex::inhomogeneous(0.5).weight(3.0) - 2.0).abs() < 1e-15);
    }

    #[test]
    fn mean_counts_only_in_inhomogeneous_norm() {
        let g = GridSpec::square(8).unwrap();
        let mut f = SpectralField::zeros(g);
        f.coeffs_mut()[0] = Complex64::new(2.0, 0.0);
        assert_eq!(sobolev_norm(&f, SobolevIndex::homogeneous(1.0)), 0.0);
        let area = g.area();
        assert!((sobolev_norm_sq(&f, SobolevIndex::L2) - 4.0 * area).abs() < 1e-12);
    }

    #[test]
    fn lp_norm_of_constant() {
        let g = GridSpec::new(8, 8, 2.0, 3.0).unwrap();
        let v = vec![2.0; 64];
        assert!((lp_norm(&g, &v, 4.0) - 2.0 * 6f64.powf(0.25)).abs() < 1e-14);
    }
}
