use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// A doubly periodic grid of `n1 × n2` points on the box `[0, l1) × [0, l2)`.
///
/// Arrays on the grid, physical or spectral, are stored row-major with the
/// second index (`x₂`) varying fastest. Spectral index `j` along an axis with
/// `n` points carries the signed wavenumber `k = j` for `j ≤ n/2` and
/// `k = j − n` otherwise, so `k ∈ {−n/2+1, …, n/2}`; the physical wavenumber is
/// `ξ = 2πk/l`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GridSpec {
    pub n1: usize,
    pub n2: usize,
    pub l1: f64,
    pub l2: f64,
}

impl GridSpec {
    pub fn new(n1: usize, n2: usize, l1: f64, l2: f64) -> Result<Self> {
        let grid = Self { n1, n2, l1, l2 };
        grid.validate()?;
        Ok(grid)
    }

    /// `n × n` grid on the `2π × 2π` box.
    pub fn square(n: usize) -> Result<Self> {
        Self::new(n, n, 2.0 * PI, 2.0 * PI)
    }

    pub fn validate(&self) -> Result<()> {
        for (name, n) in [("n1", self.n1), ("n2", self.n2)] {
            if n < 8 || n % 2 != 0 {
                return Err(Error::InvalidGrid(format!(
                    "{name} = {n} must be even and at least 8"
                )));
            }
        }
        for (name, l) in [("l1", self.l1), ("l2", self.l2)] {
            if !(l.is_finite() && l > 0.0) {
                return Err(Error::InvalidGrid(format!("{name} = {l} must be positive")));
            }
        }
        Ok(())
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.n1 * self.n2
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn area(&self) -> f64 {
        self.l1 * self.l2
    }

    /// Same box, different resolution.
    pub fn with_resolution(&self, n1: usize, n2: usize) -> Result<Self> {
        Self::new(n1, n2, self.l1, self.l2)
    }

    pub fn same_box(&self, other: &GridSpec) -> bool {
        self.l1 == other.l1 && self.l2 == other.l2
    }

    #[inline]
    pub fn flat(&self, i1: usize, i2: usize) -> usize {
        i1 * self.n2 + i2
    }

    #[inline]
    pub fn unflat(&self, idx: usize) -> (usize, usize) {
        (idx / self.n2, idx % self.n2)
    }

    /// Signed wavenumbers `(k1, k2)` of a flat spectral index.
    #[inline]
    pub fn mode(&self, idx: usize) -> (i64, i64) {
        let (i1, i2) = self.unflat(idx);
        (signed(i1, self.n1), signed(i2, self.n2))
    }

    /// Flat index of the mode `(k1, k2)`, if it is stored on this grid.
    pub fn index_of(&self, k1: i64, k2: i64) -> Option<usize> {
        let i1 = unsigned(k1, self.n1)?;
        let i2 = unsigned(k2, self.n2)?;
        Some(self.flat(i1, i2))
    }

    /// Flat index of the mode `−k` (taken modulo the grid).
    #[inline]
    pub fn conj_index(&self, idx: usize) -> usize {
        let (i1, i2) = self.unflat(idx);
        self.flat((self.n1 - i1) % self.n1, (self.n2 - i2) % self.n2)
    }

    /// True on the Nyquist row or column, whose `+n/2` wavenumber has no
    /// negative partner in the signed layout.
    #[inline]
    pub fn is_nyquist(&self, idx: usize) -> bool {
        let (i1, i2) = self.unflat(idx);
        i1 == self.n1 / 2 || i2 == self.n2 / 2
    }

    #[inline]
    pub fn dk1(&self) -> f64 {
        2.0 * PI / self.l1
    }

    #[inline]
    pub fn dk2(&self) -> f64 {
        2.0 * PI / self.l2
    }

    /// Physical wavenumber `ξ` of a flat spectral index.
    #[inline]
    pub fn xi(&self, idx: usize) -> (f64, f64) {
        let (k1, k2) = self.mode(idx);
        (self.dk1() * k1 as f64, self.dk2() * k2 as f64)
    }

    /// `ξ₁` for every flat index, in storage order.
    pub fn xi1_table(&self) -> Vec<f64> {
        (0..self.len()).map(|idx| self.xi(idx).0).collect()
    }

    pub fn xi2_table(&self) -> Vec<f64> {
        (0..self.len()).map(|idx| self.xi(idx).1).collect()
    }

    /// Largest `|ξ|` stored on the grid (Nyquist corner included).
    pub fn max_wavenumber(&self) -> f64 {
        let a = self.dk1() * (self.n1 / 2) as f64;
        let b = self.dk2() * (self.n2 / 2) as f64;
        a.hypot(b)
    }

    /// Physical coordinates of grid point `(i1, i2)`.
    pub fn point(&self, i1: usize, i2: usize) -> (f64, f64) {
        (
            self.l1 * i1 as f64 / self.n1 as f64,
            self.l2 * i2 as f64 / self.n2 as f64,
        )
    }

    /// True when `|k1| < n1/3` and `|k2| < n2/3`: the modes kept by the
    /// two-thirds rule, for which quadratic products do not alias back.
    #[inline]
    pub fn in_two_thirds_band(&self, idx: usize) -> bool {
        let (k1, k2) = self.mode(idx);
        3 * k1.unsigned_abs() < self.n1 as u64 && 3 * k2.unsigned_abs() < self.n2 as u64
    }
}

#[inline]
fn signed(j: usize, n: usize) -> i64 {
    if j <= n / 2 {
        j as i64
    } else {
        j as i64 - n as i64
    }
}

#[inline]
fn unsigned(k: i64, n: usize) -> Option<usize> {
    let half = (n / 2) as i64;
    if k > half || k <= -half {
        None
    } else if k >= 0 {
        Some(k as usize)
    } else {
        Some((k + n as i64) as usize)
    }
}
