//! Binary snapshots of the physical-space temperature.
//!
//! Layout, all little-endian: the magic `AQG1`, version `u32`, `n1 u32`,
//! `n2 u32`, `l1 f64`, `l2 f64`, `t f64`, then `n1·n2` values `f64` in
//! row-major order with `x₂` fastest.

use std::io::{self, ErrorKind};
use std::path::Path;

use aqg_core::spectral::{forward_transform, inverse_transform, GridSpec, SpectralField};

pub const MAGIC: [u8; 4] = *b"AQG1";
pub const VERSION: u32 = 1;
pub const HEADER_LEN: usize = 40;

#[derive(Debug, Clone, PartialEq)]
pub struct Snapshot {
    pub grid: GridSpec,
    pub t: f64,
    pub values: Vec<f64>,
}

fn invalid(msg: impl Into<String>) -> io::Error {
    io::Error::new(ErrorKind::InvalidData, msg.into())
}

impl Snapshot {
    pub fn from_field(theta: &SpectralField, t: f64) -> aqg_core::Result<Self> {
        Ok(Self {
            grid: *theta.grid(),
            t,
            values: inverse_transform(theta)?,
        })
    }

    pub fn to_field(&self) -> aqg_core::Result<SpectralField> {
        forward_transform(&self.grid, &self.values)
    }

    pub fn to_bytes(&self) -> Vec<u8> {
        let mut out = Vec::with_capacity(HEADER_LEN + 8 * self.values.len());
        out.extend_from_slice(&MAGIC);
        out.extend_from_slice(&VERSION.to_le_bytes());
        out.extend_from_slice(&(self.grid.n1 as u32).to_le_bytes());
        out.extend_from_slice(&(self.grid.n2 as u32).to_le_bytes());
        for x in [self.grid.l1, self.grid.l2, self.t] {
            out.extend_from_slice(&x.to_le_bytes());
        }
        for v in &self.values {
            out.extend_from_slice(&v.to_le_bytes());
        }
        out
    }

    pub fn from_bytes(bytes: &[u8]) -> io::Result<Self> {
        if bytes.len() < HEADER_LEN {
            return Err(invalid(format!(
                "snapshot shorter than its {HEADER_LEN}-byte header"
            )));
        }
        if bytes[..4] != MAGIC {
            return Err(invalid("bad snapshot magic"));
        }
        let u32_at = |o: usize| u32::from_le_bytes(bytes[o..o + 4].try_into().unwrap());
        let f64_at = |o: usize| f64::from_le_bytes(bytes[o..o + 8].try_into().unwrap());
        let version = u32_at(4);
        if version != VERSION {
            return Err(invalid(format!("unsupported snapshot version {version}")));
        }
        let (n1, n2) = (u32_at(8) as usize, u32_at(12) as usize);
        let grid =
            GridSpec::new(n1, n2, f64_at(16), f64_at(24)).map_err(|e| invalid(e.to_string()))?;
        let payload = &bytes[HEADER_LEN..];
        let expected = n1 * n2 * 8;
        if payload.len() != expected {
            return Err(invalid(format!(
                "payload holds {} bytes, expected {expected}",
                payload.len()
            )));
        }
        let values = payload
            .chunks_exact(8)
            .map(|c| f64::from_le_bytes(c.try_into().unwrap()))
            .collect();
        Ok(Self {
            grid,
            t: f64_at(32),
            values,
        })
    }

    pub fn write(&self, path: &Path) -> io::Result<()> {
        std::fs::write(path, self.to_bytes())
    }

    pub fn read(path: &Path) -> io::Result<Self> {
        Self::from_bytes(&std::fs::read(path)?)
    }
}
