//! Physical ↔ spectral transforms.
//!
//! Forward transforms are normalised by `1/(n1·n2)` so coefficients are
//! Fourier-series amplitudes; inverse transforms are plain sums. Two real
//! fields are inverted with one complex FFT by packing them as `a + i·b`.

use std::cell::RefCell;
use std::collections::HashMap;
use std::sync::Arc;

use num_complex::Complex64;
use rustfft::{Fft, FftPlanner};

use super::field::enforce_hermitian;
use super::{GridSpec, SpectralField};
use crate::{Error, Result};

/// Relative Hermitian defect above which a field is rejected as not real.
pub const HERMITIAN_TOLERANCE: f64 = 1e-12;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// A 2-D complex FFT of fixed size with its own work buffers.
pub(crate) struct Fft2 {
    n1: usize,
    n2: usize,
    row_fwd: Arc<dyn Fft<f64>>,
    row_inv: Arc<dyn Fft<f64>>,
    col_fwd: Arc<dyn Fft<f64>>,
    col_inv: Arc<dyn Fft<f64>>,
    transposed: Vec<Complex64>,
    scratch: Vec<Complex64>,
}

impl Fft2 {
    pub(crate) fn new(n1: usize, n2: usize) -> Self {
        PLANNER.with(|p| {
            let mut planner = p.borrow_mut();
            let row_fwd = planner.plan_fft_forward(n2);
            let row_inv = planner.plan_fft_inverse(n2);
            let col_fwd = planner.plan_fft_forward(n1);
            let col_inv = planner.plan_fft_inverse(n1);
            let scratch_len = [&row_fwd, &row_inv, &col_fwd, &col_inv]
                .iter()
                .map(|f| f.get_inplace_scratch_len())
                .max()
                .unwrap_or(0);
            Self {
                n1,
                n2,
                row_fwd,
                row_inv,
                col_fwd,
                col_inv,
                transposed: vec![ZERO; n1 * n2],
                scratch: vec![ZERO; scratch_len],
            }
        })
    }

    /// Physical values → normalised Fourier coefficients, in place.
    pub(crate) fn forward(&mut self, data: &mut [Complex64]) {
        let (row, col) = (self.row_fwd.clone(), self.col_fwd.clone());
        self.run(data, &*row, &*col);
        let scale = 1.0 / (self.n1 * self.n2) as f64;
        for v in data.iter_mut() {
            *v *= scale;
        }
    }

    /// Fourier coefficients → physical values, in place.
    pub(crate) fn inverse(&mut self, data: &mut [Complex64]) {
        let (row, col) = (self.row_inv.clone(), self.col_inv.clone());
        self.run(data, &*row, &*col);
    }

    fn run(&mut self, data: &mut [Complex64], row: &dyn Fft<f64>, col: &dyn Fft<f64>) {
        debug_assert_eq!(data.len(), self.n1 * self.n2);
        row.process_with_scratch(data, &mut self.scratch);
        transpose(data, &mut self.transposed, self.n1, self.n2);
        col.process_with_scratch(&mut self.transposed, &mut self.scratch);
        transpose(&self.transposed, data, self.n2, self.n1);
    }
}

/// `src` is `rows × cols`; writes its transpose into `dst`.
fn transpose(src: &[Complex64], dst: &mut [Complex64], rows: usize, cols: usize) {
    const BLOCK: usize = 16;
    for rb in (0..rows).step_by(BLOCK) {
        for cb in (0..cols).step_by(BLOCK) {
            for r in rb..(rb + BLOCK).min(rows) {
                for c in cb..(cb + BLOCK).min(cols) {
                    dst[c * rows + r] = src[r * cols + c];
                }
            }
        }
    }
}

thread_local! {
    static PLANNER: RefCell<FftPlanner<f64>> = RefCell::new(FftPlanner::new());
    static CACHE: RefCell<HashMap<(usize, usize), Fft2>> = RefCell::new(HashMap::new());
}

/// Runs `f` with a cached FFT for the given grid size.
pub(crate) fn with_fft<R>(grid: &GridSpec, f: impl FnOnce(&mut Fft2) -> R) -> R {
    let key = (grid.n1, grid.n2);
    let mut fft = CACHE
        .with(|c| c.borrow_mut().remove(&key))
        .unwrap_or_else(|| Fft2::new(grid.n1, grid.n2));
    let out = f(&mut fft);
    CACHE.with(|c| c.borrow_mut().insert(key, fft));
    out
}

/// Samples `f(x₁, x₂)` on the grid points, row-major with `x₂` fastest.
pub fn sample(grid: &GridSpec, f: impl Fn(f64, f64) -> f64) -> Vec<f64> {
    let mut out = Vec::with_capacity(grid.len());
    for i1 in 0..grid.n1 {
        for i2 in 0..grid.n2 {
            let (x1, x2) = grid.point(i1, i2);
            out.push(f(x1, x2));
        }
    }
    out
}

/// Fourier coefficients of a real grid field.
///
/// The Nyquist row and column are kept, so the transform round-trips every
/// real grid field; operators with odd symbols discard them.
pub fn forward_transform(grid: &GridSpec, values: &[f64]) -> Result<SpectralField> {
    grid.validate()?;
    if values.len() != grid.len() {
        return Err(Error::Shape {
            expected: grid.len(),
            actual: values.len(),
        });
    }
    let mut data: Vec<Complex64> = values.iter().map(|&v| Complex64::new(v, 0.0)).collect();
    with_fft(grid, |fft| fft.forward(&mut data));
    enforce_hermitian(grid, &mut data);
    SpectralField::from_coeffs(*grid, data)
}

/// Grid values of a real field. Rejects coefficient arrays whose Hermitian
/// defect exceeds [`HERMITIAN_TOLERANCE`] relative to the largest coefficient.
pub fn inverse_transform(f: &SpectralField) -> Result<Vec<f64>> {
    check_real(f)?;
    let mut data = f.coeffs().to_vec();
    with_fft(f.grid(), |fft| fft.inverse(&mut data));
    Ok(data.into_iter().map(|c| c.re).collect())
}

/// Inverts two real fields on the same grid with a single complex FFT.
pub fn inverse_pair(a: &SpectralField, b: &SpectralField) -> Result<(Vec<f64>, Vec<f64>)> {
    if a.grid() != b.grid() {
        return Err(Error::GridMismatch);
    }
    check_real(a)?;
    check_real(b)?;
    let mut data: Vec<Complex64> = a
        .coeffs()
        .iter()
        .zip(b.coeffs())
        .map(|(&x, &y)| x + Complex64::i() * y)
        .collect();
    with_fft(a.grid(), |fft| fft.inverse(&mut data));
    Ok(data.into_iter().map(|c| (c.re, c.im)).unzip())
}

fn check_real(f: &SpectralField) -> Result<()> {
    let scale = f.max_abs();
    if scale == 0.0 {
        return Ok(());
    }
    let defect = f.hermitian_defect();
    if defect > HERMITIAN_TOLERANCE * scale || !defect.is_finite() {
        return Err(Error::InvalidField { defect });
    }
    Ok(())
}

/// Grid-point product of two fields on the same grid.
///
/// The result is exact only when the combined band fits on the grid; see
/// [`resample`] for zero-padding.
pub fn pointwise_product(f: &SpectralField, g: &SpectralField) -> Result<SpectralField> {
    let (a, b) = inverse_pair(f, g)?;
    let prod: Vec<f64> = a.iter().zip(&b).map(|(x, y)| x * y).collect();
    forward_transform(f.grid(), &prod)
}

/// Moves a field to another resolution of the same box by zero-padding or
/// truncating in spectral space. Modes on the Nyquist row or column of
/// either grid are dropped.
pub fn resample(f: &SpectralField, target: &GridSpec) -> Result<SpectralField> {
    target.validate()?;
    let src = f.grid();
    if !src.same_box(target) {
        return Err(Error::GridMismatch);
    }
    let mut out = SpectralField::zeros(*target);
    let coeffs = f.coeffs();
    for (idx, c) in coeffs.iter().enumerate() {
        if src.is_nyquist(idx) || (c.re == 0.0 && c.im == 0.0) {
            continue;
        }
        let (k1, k2) = src.mode(idx);
        if let Some(t) = target.index_of(k1, k2) {
            if !target.is_nyquist(t) {
                out.coeffs_mut()[t] = *c;
            }
        }
    }
    Ok(out)
}
