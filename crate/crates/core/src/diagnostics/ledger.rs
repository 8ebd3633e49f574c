use serde::{Deserialize, Serialize};

use crate::dynamics::TrajectoryState;
use crate::spectral::{
    frac_power, table_norm_sq, DissipationParams, GridSpec, SobolevIndex, SpectralField,
};
use crate::{Error, Result};

/// Default relative slack before the ledger counts as exceeding its initial
/// value.
pub const DEFAULT_LEDGER_TOLERANCE: f64 = 1e-6;

/// One time sample of the tracked norms.
///
/// `ledger = ‖θ‖²_{H^s} + cum_d1 + cum_d2` is the left side of the energy
/// inequality; `balance = ‖θ‖²_{H^s} + 2μ·cum_d1 + 2ν·cum_d2` is the exact
/// linear energy identity, constant (up to quadrature) when the nonlinearity
/// is absent.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DiagnosticsRecord {
    pub t: f64,
    pub l2: f64,
    pub hs_inhom: f64,
    pub hs_hom: f64,
    pub d1: f64,
    pub d2: f64,
    pub cum_d1: f64,
    pub cum_d2: f64,
    pub ledger: f64,
    pub balance: f64,
}

/// Instantaneous norms of one field.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FieldNorms {
    pub l2: f64,
    pub hs_inhom: f64,
    pub hs_hom: f64,
    /// `‖|∂₁|^α θ‖_{H^s}`
    pub d1: f64,
    /// `‖|∂₂|^β θ‖_{H^s}`
    pub d2: f64,
}

/// Precomputed weight tables for the norms in a [`DiagnosticsRecord`].
#[derive(Debug, Clone)]
pub struct NormProbe {
    grid: GridSpec,
    params: DissipationParams,
    s: f64,
    l2: Vec<f64>,
    inhom: Vec<f64>,
    hom: Vec<f64>,
    d1: Vec<f64>,
    d2: Vec<f64>,
}

impl NormProbe {
    pub fn new(grid: &GridSpec, params: &DissipationParams, s: f64) -> Self {
        let inhom = SobolevIndex::inhomogeneous(s).weight_table(grid);
        let (d1, d2) = (0..grid.len())
            .map(|idx| {
                let (a, b) = grid.xi(idx);
                (
                    frac_power(a.abs(), 2.0 * params.alpha) * inhom[idx],
                    frac_power(b.abs(), 2.0 * params.beta) * inhom[idx],
                )
            })
            .unzip();
        Self {
            grid: *grid,
            params: *params,
            s,
            l2: SobolevIndex::L2.weight_table(grid),
            hom: SobolevIndex::homogeneous(s).weight_table(grid),
            inhom,
            d1,
            d2,
        }
    }

    pub fn s(&self) -> f64 {
        self.s
    }

    pub fn norms(&self, theta: &SpectralField) -> Result<FieldNorms> {
        if theta.grid() != &self.grid {
            return Err(Error::GridMismatch);
        }
        Ok(FieldNorms {
            l2: table_norm_sq(theta, &self.l2).sqrt(),
            hs_inhom: table_norm_sq(theta, &self.inhom).sqrt(),
            hs_hom: table_norm_sq(theta, &self.hom).sqrt(),
            d1: table_norm_sq(theta, &self.d1).sqrt(),
            d2: table_norm_sq(theta, &self.d2).sqrt(),
        })
    }
}

/// Streams samples into [`DiagnosticsRecord`]s, integrating the dissipation
/// terms with the trapezoid rule on the sampling cadence.
#[derive(Debug, Clone)]
pub struct LedgerAccumulator {
    probe: NormProbe,
    tolerance: f64,
    initial_energy: Option<f64>,
    last: Option<(f64, f64, f64)>,
    spacing: Option<f64>,
    cum_d1: f64,
    cum_d2: f64,
    max_excess: f64,
    violated: bool,
}

impl LedgerAccumulator {
    pub fn new(grid: &GridSpec, params: &DissipationParams, s: f64, tolerance: f64) -> Self {
        Self {
            probe: NormProbe::new(grid, params, s),
            tolerance,
            initial_energy: None,
            last: None,
            spacing: None,
            cum_d1: 0.0,
            cum_d2: 0.0,
            max_excess: 0.0,
            violated: false,
        }
    }

    pub fn push(&mut self, state: &TrajectoryState) -> Result<DiagnosticsRecord> {
        let n = self.probe.norms(&state.theta)?;
        let (d1_sq, d2_sq) = (n.d1 * n.d1, n.d2 * n.d2);
        if let Some((t_prev, p1, p2)) = self.last {
            let h = state.t - t_prev;
            match self.spacing {
                None if h > 0.0 => self.spacing = Some(h),
                None => {
                    return Err(Error::UnsupportedSampling(format!(
                        "sample times must increase (t = {} after {t_prev})",
                        state.t
                    )))
                }
                Some(h0) if (h - h0).abs() > 1e-9 * h0 => {
                    return Err(Error::UnsupportedSampling(format!(
                        "interval {h} at t = {} differs from {h0}",
                        state.t
                    )))
                }
                Some(_) => {}
            }
            self.cum_d1 += 0.5 * h * (p1 + d1_sq);
            self.cum_d2 += 0.5 * h * (p2 + d2_sq);
        }
        self.last = Some((state.t, d1_sq, d2_sq));

        let energy = n.hs_inhom * n.hs_inhom;
        let e0 = *self.initial_energy.get_or_insert(energy);
        let ledger = energy + self.cum_d1 + self.cum_d2;
        let p = &self.probe.params;
        let balance = energy + 2.0 * p.mu * self.cum_d1 + 2.0 * p.nu * self.cum_d2;

        if e0 > 0.0 {
            self.max_excess = self.max_excess.max(ledger / e0 - 1.0);
            if ledger > e0 * (1.0 + self.tolerance) {
                self.violated = true;
            }
        } else if ledger > 0.0 {
            self.max_excess = f64::INFINITY;
            self.violated = true;
        }

        Ok(DiagnosticsRecord {
            t: state.t,
            l2: n.l2,
            hs_inhom: n.hs_inhom,
            hs_hom: n.hs_hom,
            d1: n.d1,
            d2: n.d2,
            cum_d1: self.cum_d1,
            cum_d2: self.cum_d2,
            ledger,
            balance,
        })
    }

    /// `‖θ⁰‖²_{H^s}`, once the first sample is in.
    pub fn initial_energy(&self) -> Option<f64> {
        self.initial_energy
    }

    /// `max_t ledger(t)/‖θ⁰‖²_{H^s} − 1`.
    pub fn max_relative_excess(&self) -> f64 {
        self.max_excess
    }

    pub fn violated(&self) -> bool {
        self.violated
    }

    pub fn tolerance(&self) -> f64 {
        self.tolerance
    }
}

/// Ledger over a whole trajectory.
#[derive(Debug, Clone, PartialEq)]
pub struct LedgerSeries {
    pub records: Vec<DiagnosticsRecord>,
    pub initial_energy: f64,
    pub max_relative_excess: f64,
    pub violated: bool,
}

/// Computes one [`DiagnosticsRecord`] per equally spaced sample and flags
/// the run if the ledger exceeds `‖θ⁰‖²_{H^s}·(1 + 1e−6)`.
pub fn energy_ledger(
    samples: &[TrajectoryState],
    p: &DissipationParams,
    s: f64,
) -> Result<LedgerSeries> {
    let first = samples
        .first()
        .ok_or_else(|| Error::UnsupportedSampling("no samples".into()))?;
    let mut acc = LedgerAccumulator::new(first.theta.grid(), p, s, DEFAULT_LEDGER_TOLERANCE);
    let records = samples
        .iter()
        .map(|state| acc.push(state))
        .collect::<Result<Vec<_>>>()?;
    Ok(LedgerSeries {
        records,
        initial_energy: acc.initial_energy().unwrap_or(0.0),
        max_relative_excess: acc.max_relative_excess(),
        violated: acc.violated(),
    })
}
