use std::ops::{Add, Mul, Sub};

use num_complex::Complex64;

use super::GridSpec;
use crate::{Error, Result};

/// Fourier-series coefficients of a real scalar field on a periodic grid.
///
/// `coeffs[grid.flat(i1, i2)]` is the amplitude of `exp(i(ξ₁x₁ + ξ₂x₂))`, so a
/// constant field `c` has `coeff(0, 0) = c` and `cos(x₁)` has `1/2` at
/// `k = (±1, 0)`.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectralField {
    grid: GridSpec,
    coeffs: Vec<Complex64>,
}

impl SpectralField {
    pub fn zeros(grid: GridSpec) -> Self {
        Self {
            grid,
            coeffs: vec![Complex64::new(0.0, 0.0); grid.len()],
        }
    }

    pub fn from_coeffs(grid: GridSpec, coeffs: Vec<Complex64>) -> Result<Self> {
        if coeffs.len() != grid.len() {
            return Err(Error::Shape {
                expected: grid.len(),
                actual: coeffs.len(),
            });
        }
        Ok(Self { grid, coeffs })
    }

    /// Builds a field mode by mode from `(k1, k2) -> coefficient`.
    ///
    /// The closure is evaluated on every stored mode; callers are responsible
    /// for returning Hermitian-symmetric values.
    pub fn from_fn(grid: GridSpec, mut f: impl FnMut(i64, i64) -> Complex64) -> Self {
        let coeffs = (0..grid.len())
            .map(|idx| {
                let (k1, k2) = grid.mode(idx);
                f(k1, k2)
            })
            .collect();
        Self { grid, coeffs }
    }

    #[inline]
    pub fn grid(&self) -> &GridSpec {
        &self.grid
    }

    #[inline]
    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    #[inline]
    pub fn coeffs_mut(&mut self) -> &mut [Complex64] {
        &mut self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Complex64> {
        self.coeffs
    }

    /// Coefficient of mode `(k1, k2)`; zero for modes not stored on the grid.
    pub fn coeff(&self, k1: i64, k2: i64) -> Complex64 {
        self.grid
            .index_of(k1, k2)
            .map_or(Complex64::new(0.0, 0.0), |idx| self.coeffs[idx])
    }

    /// Sets `coeff(k) = value` and `coeff(−k) = conj(value)`.
    pub fn set_pair(&mut self, k1: i64, k2: i64, value: Complex64) -> Result<()> {
        let idx = self
            .grid
            .index_of(k1, k2)
            .ok_or_else(|| Error::Domain(format!("mode ({k1}, {k2}) is not on the grid")))?;
        let cidx = self.grid.conj_index(idx);
        if cidx == idx {
            self.coeffs[idx] = Complex64::new(value.re, 0.0);
        } else {
            self.coeffs[idx] = value;
            self.coeffs[cidx] = value.conj();
        }
        Ok(())
    }

    pub fn mean(&self) -> f64 {
        self.coeffs[0].re
    }

    pub fn max_abs(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.re == 0.0 && c.im == 0.0)
    }

    pub fn is_finite(&self) -> bool {
        self.coeffs
            .iter()
            .all(|c| c.re.is_finite() && c.im.is_finite())
    }

    /// `max |c(k) − conj c(−k)|` over all stored modes.
    pub fn hermitian_defect(&self) -> f64 {
        (0..self.coeffs.len())
            .map(|idx| (self.coeffs[idx] - self.coeffs[self.grid.conj_index(idx)].conj()).norm())
            .fold(0.0, f64::max)
    }

    /// Projects onto the Hermitian-symmetric subspace.
    pub fn enforce_hermitian(&mut self) {
        enforce_hermitian(&self.grid, &mut self.coeffs);
    }

    /// Zeroes the Nyquist row and column.
    pub fn zero_nyquist(&mut self) {
        let grid = self.grid;
        for (idx, c) in self.coeffs.iter_mut().enumerate() {
            if grid.is_nyquist(idx) {
                *c = Complex64::new(0.0, 0.0);
            }
        }
    }

    pub fn has_nyquist_content(&self) -> bool {
        self.coeffs
            .iter()
            .enumerate()
            .any(|(idx, c)| self.grid.is_nyquist(idx) && c.norm() != 0.0)
    }

    /// Sets the mean (zero mode) to zero.
    pub fn remove_mean(&mut self) {
        self.coeffs[0] = Complex64::new(0.0, 0.0);
    }

    pub fn scaled(&self, factor: f64) -> Self {
        Self {
            grid: self.grid,
            coeffs: self.coeffs.iter().map(|c| c * factor).collect(),
        }
    }

    /// Applies a real Fourier multiplier `m(ξ₁, ξ₂)`.
    pub fn map_multiplier(&self, mut m: impl FnMut(f64, f64) -> f64) -> Self {
        let grid = self.grid;
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(idx, c)| {
                let (a, b) = grid.xi(idx);
                c * m(a, b)
            })
            .collect();
        Self { grid, coeffs }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a - b)
    }

    fn zip_with(
        &self,
        other: &Self,
        f: impl Fn(Complex64, Complex64) -> Complex64,
    ) -> Result<Self> {
        if self.grid != other.grid {
            return Err(Error::GridMismatch);
        }
        Ok(Self {
            grid: self.grid,
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(&a, &b)| f(a, b))
                .collect(),
        })
    }

    /// Largest `|k1|` and `|k2|` carrying a nonzero coefficient.
    pub fn band_limit(&self) -> (u64, u64) {
        let mut band = (0, 0);
        for (idx, c) in self.coeffs.iter().enumerate() {
            if c.norm() != 0.0 {
                let (k1, k2) = self.grid.mode(idx);
                band.0 = band.0.max(k1.unsigned_abs());
                band.1 = band.1.max(k2.unsigned_abs());
            }
        }
        band
    }
}

pub(crate) fn enforce_hermitian(grid: &GridSpec, coeffs: &mut [Complex64]) {
    for idx in 0..coeffs.len() {
        let cidx = grid.conj_index(idx);
        if cidx == idx {
            coeffs[idx].im = 0.0;
        } else if cidx > idx {
            let avg = (coeffs[idx] + coeffs[cidx].conj()) * 0.5;
            coeffs[idx] = avg;
            coeffs[cidx] = avg.conj();
        }
    }
}

/// Panics on grid mismatch; use [`SpectralField::try_add`] for a fallible sum.
impl Add for &SpectralField {
    type Output = SpectralField;

    fn add(self, rhs: Self) -> SpectralField {
        self.try_add(rhs).expect("grid mismatch in field addition")
    }
}

impl Sub for &SpectralField {
    type Output = SpectralField;

    fn sub(self, rhs: Self) -> SpectralField {
        self.try_sub(rhs)
            .expect("grid mismatch in field subtraction")
    }
}

impl Mul<f64> for &SpectralField {
    type Output = SpectralField;

    fn mul(self, rhs: f64) -> SpectralField {
        self.scaled(rhs)
    }
}
