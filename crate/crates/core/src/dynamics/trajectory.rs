use serde::{Deserialize, Serialize};

use super::{GalerkinLevel, Stepper, StepperConfig, TrajectoryState};
use crate::spectral::{table_norm_sq, DissipationParams, SobolevIndex, SpectralField};
use crate::{Error, Result};

/// Default ratio of `‖θ‖_{H^s}` to its initial value that counts as blow-up.
pub const DEFAULT_CEILING: f64 = 1e6;

/// Halts a run once `‖θ‖_{H^s}` exceeds `ceiling × ‖θ⁰‖_{H^s}`.
#[derive(Debug, Clone)]
pub struct BlowupGuard {
    weights: Vec<f64>,
    limit_sq: f64,
}

impl BlowupGuard {
    pub fn new(initial: &SpectralField, index: SobolevIndex, ceiling: f64) -> Self {
        let weights = index.weight_table(initial.grid());
        let init_sq = table_norm_sq(initial, &weights);
        let limit_sq = if init_sq > 0.0 {
            init_sq * ceiling * ceiling
        } else {
            f64::INFINITY
        };
        Self { weights, limit_sq }
    }

    pub fn check(&self, state: &TrajectoryState) -> Result<()> {
        let norm_sq = table_norm_sq(&state.theta, &self.weights);
        if !norm_sq.is_finite() {
            return Err(Error::BlowUp {
                t: state.t,
                reason: "non-finite Sobolev norm".into(),
            });
        }
        if norm_sq > self.limit_sq {
            return Err(Error::BlowUp {
                t: state.t,
                reason: format!(
                    "Sobolev norm {:.6e} exceeds ceiling {:.6e}",
                    norm_sq.sqrt(),
                    self.limit_sq.sqrt()
                ),
            });
        }
        Ok(())
    }
}

/// Number of steps of size `dt` covering `[0, t_end]`.
pub fn step_count(t_end: f64, dt: f64) -> Result<usize> {
    let n = (t_end / dt).round();
    if !(n >= 1.0 && n.is_finite()) {
        return Err(Error::Domain(format!(
            "t_end = {t_end} must cover at least one step of dt = {dt}"
        )));
    }
    Ok(n as usize)
}

/// Advances `state` by `n_steps`, calling `observe` at step 0 and after every
/// `sample_every` steps. Sample times are `t₀ + i·dt` exactly.
pub fn integrate(
    stepper: &mut Stepper,
    state: &mut TrajectoryState,
    n_steps: usize,
    sample_every: usize,
    guard: Option<&BlowupGuard>,
    mut observe: impl FnMut(&TrajectoryState) -> Result<()>,
) -> Result<()> {
    if sample_every == 0 {
        return Err(Error::Domain("sample_every must be at least 1".into()));
    }
    let t0 = state.t;
    let dt = stepper.config().dt;
    observe(state)?;
    for i in 1..=n_steps {
        stepper.step_in_place(state)?;
        state.t = t0 + i as f64 * dt;
        if let Some(g) = guard {
            g.check(state)?;
        }
        if i % sample_every == 0 {
            observe(state)?;
        }
    }
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GapSample {
    pub t: f64,
    pub gap: f64,
}

/// Co-evolves two trajectories and records `‖θ¹(t) − θ²(t)‖_{L²}` after
/// every step.
pub fn two_trajectory_gap(
    theta1: &SpectralField,
    theta2: &SpectralField,
    p: &DissipationParams,
    cfg: &StepperConfig,
    t_end: f64,
) -> Result<Vec<GapSample>> {
    if theta1.grid() != theta2.grid() {
        return Err(Error::GridMismatch);
    }
    let n_steps = step_count(t_end, cfg.dt)?;
    let mut stepper = Stepper::new(*theta1.grid(), *p, *cfg, GalerkinLevel::Full)?;
    let mut a = TrajectoryState::new(theta1.clone());
    let mut b = TrajectoryState::new(theta2.clone());
    let mut out = Vec::with_capacity(n_steps + 1);
    out.push(GapSample {
        t: 0.0,
        gap: l2_distance(&a.theta, &b.theta),
    });
    for i in 1..=n_steps {
        stepper.step_in_place(&mut a)?;
        stepper.step_in_place(&mut b)?;
        let t = i as f64 * cfg.dt;
        a.t = t;
        b.t = t;
        out.push(GapSample {
            t,
            gap: l2_distance(&a.theta, &b.theta),
        });
    }
    Ok(out)
}

fn l2_distance(a: &SpectralField, b: &SpectralField) -> f64 {
    let sum: f64 = a
        .coeffs()
        .iter()
        .zip(b.coeffs())
        .map(|(x, y)| (x - y).norm_sqr())
        .sum();
    (sum * a.grid().area()).sqrt()
}
