use num_complex::Complex64;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::nonlinear::AdvectionPlan;
use crate::spectral::{friedrichs_project, DissipationParams, GridSpec, SpectralField};
use crate::{Error, Result};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Scheme {
    #[default]
    IntegratingFactorRk4,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Dealias {
    #[default]
    TwoThirds,
    None,
}

/// Time-stepping configuration.
///
/// `nonlinear = false` masks the advection term, leaving the exact linear
/// semigroup.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StepperConfig {
    pub dt: f64,
    #[serde(default)]
    pub scheme: Scheme,
    #[serde(default)]
    pub dealias: Dealias,
    #[serde(default = "default_true")]
    pub nonlinear: bool,
}

fn default_true() -> bool {
    true
}

impl StepperConfig {
    pub fn new(dt: f64) -> Self {
        Self {
            dt,
            scheme: Scheme::IntegratingFactorRk4,
            dealias: Dealias::TwoThirds,
            nonlinear: true,
        }
    }

    pub fn linear(dt: f64) -> Self {
        Self {
            nonlinear: false,
            ..Self::new(dt)
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.dt.is_finite() && self.dt > 0.0) {
            return Err(Error::Domain(format!("dt = {} must be positive", self.dt)));
        }
        Ok(())
    }
}

/// Galerkin truncation level: the radius `n` of `J_n`, or no truncation
/// beyond the grid.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub enum GalerkinLevel {
    #[default]
    Full,
    Radius(f64),
}

impl GalerkinLevel {
    pub fn validate(&self, grid: &GridSpec) -> Result<()> {
        if let GalerkinLevel::Radius(r) = *self {
            if !(r > 0.0 && r <= grid.max_wavenumber()) {
                return Err(Error::Domain(format!(
                    "Galerkin radius {r} must lie in (0, {}]",
                    grid.max_wavenumber()
                )));
            }
        }
        Ok(())
    }

    pub fn radius(&self) -> Option<f64> {
        match *self {
            GalerkinLevel::Full => None,
            GalerkinLevel::Radius(r) => Some(r),
        }
    }

    pub fn project(&self, f: &SpectralField) -> Result<SpectralField> {
        match *self {
            GalerkinLevel::Full => Ok(f.clone()),
            GalerkinLevel::Radius(r) => friedrichs_project(f, r),
        }
    }
}

/// Serialised as the string `"full"` or a positive number.
impl Serialize for GalerkinLevel {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match *self {
            GalerkinLevel::Full => s.serialize_str("full"),
            GalerkinLevel::Radius(r) => s.serialize_f64(r),
        }
    }
}

impl<'de> Deserialize<'de> for GalerkinLevel {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Repr {
            Number(f64),
            Int(i64),
            Name(String),
        }
        match Repr::deserialize(d)? {
            Repr::Number(r) => Ok(GalerkinLevel::Radius(r)),
            Repr::Int(r) => Ok(GalerkinLevel::Radius(r as f64)),
            Repr::Name(s) if s == "full" => Ok(GalerkinLevel::Full),
            Repr::Name(s) => Err(serde::de::Error::custom(format!(
                "expected \"full\" or a radius, got \"{s}\""
            ))),
        }
    }
}

/// Time and spectral state of one trajectory.
#[derive(Debug, Clone, PartialEq)]
pub struct TrajectoryState {
    pub t: f64,
    pub theta: SpectralField,
}

impl TrajectoryState {
    pub fn new(theta: SpectralField) -> Self {
        Self { t: 0.0, theta }
    }
}

/// Integrating-factor RK4 stepper for `∂ₜθ̂ = −A_μν(ξ)θ̂ − J_n(u_θ·∇θ)^`.
///
/// With `θ̂ = e^{−tA_μν}φ̂` the dissipation is applied exactly through the
/// factors `e^{−A_μν dt/2}` and `e^{−A_μν dt}`; the classical four-stage
/// Runge–Kutta scheme integrates the transformed nonlinear term (Lawson's
/// scheme). Hermitian symmetry is re-imposed and the Nyquist modes cleared
/// after every step.
pub struct Stepper {
    grid: GridSpec,
    params: DissipationParams,
    config: StepperConfig,
    level: GalerkinLevel,
    plan: AdvectionPlan,
    half: Vec<f64>,
    full: Vec<f64>,
    k: [Vec<Complex64>; 4],
    stage: Vec<Complex64>,
}

impl Stepper {
    pub fn new(
        grid: GridSpec,
        params: DissipationParams,
        config: StepperConfig,
        level: GalerkinLevel,
    ) -> Result<Self> {
        grid.validate()?;
        params.validate()?;
        config.validate()?;
        level.validate(&grid)?;
        let n = grid.len();
        let symbol: Vec<f64> = (0..n)
            .map(|idx| {
                let (a, b) = grid.xi(idx);
                params.symbol(a, b)
            })
            .collect();
        let half = symbol
            .iter()
            .map(|s| (-0.5 * config.dt * s).exp())
            .collect();
        let full = symbol.iter().map(|s| (-config.dt * s).exp()).collect();
        Ok(Self {
            grid,
            params,
            config,
            level,
            plan: AdvectionPlan::new(grid, config.dealias, level.radius()),
            half,
            full,
            k: std::array::from_fn(|_| vec![ZERO; n]),
            stage: vec![ZERO; n],
        })
    }

    pub fn grid(&self) -> &GridSpec {
        &self.grid
    }

    pub fn params(&self) -> &DissipationParams {
        &self.params
    }

    pub fn config(&self) -> &StepperConfig {
        &self.config
    }

    pub fn level(&self) -> GalerkinLevel {
        self.level
    }

    /// `−J_n(u_θ·∇θ)`, or zero when the nonlinearity is masked.
    fn forcing(
        plan: &mut AdvectionPlan,
        nonlinear: bool,
        theta: &[Complex64],
        out: &mut [Complex64],
    ) {
        if !nonlinear {
            out.fill(ZERO);
            return;
        }
        plan.advection(theta, out);
        for v in out.iter_mut() {
            *v = -*v;
        }
    }

    /// Advances `state` by one step of size `dt`.
    pub fn step_in_place(&mut self, state: &mut TrajectoryState) -> Result<()> {
        if state.theta.grid() != &self.grid {
            return Err(Error::GridMismatch);
        }
        let dt = self.config.dt;
        let theta = state.theta.coeffs_mut();
        if self.config.nonlinear {
            let nl = self.config.nonlinear;
            let [k1, k2, k3, k4] = &mut self.k;
            let (half, full, stage) = (&self.half, &self.full, &mut self.stage);

            Self::forcing(&mut self.plan, nl, theta, k1);
            for i in 0..theta.len() {
                stage[i] = (theta[i] + k1[i] * (0.5 * dt)) * half[i];
            }
            Self::forcing(&mut self.plan, nl, stage, k2);
            for i in 0..theta.len() {
                stage[i] = theta[i] * half[i] + k2[i] * (0.5 * dt);
            }
            Self::forcing(&mut self.plan, nl, stage, k3);
            for i in 0..theta.len() {
                stage[i] = theta[i] * full[i] + k3[i] * (dt * half[i]);
            }
            Self::forcing(&mut self.plan, nl, stage, k4);
            let sixth = dt / 6.0;
            for i in 0..theta.len() {
                let incr = k1[i] * full[i] + (k2[i] + k3[i]) * (2.0 * half[i]) + k4[i];
                theta[i] = theta[i] * full[i] + incr * sixth;
            }
        } else {
            for (c, e) in theta.iter_mut().zip(&self.full) {
                *c *= *e;
            }
        }
        state.theta.enforce_hermitian();
        state.theta.zero_nyquist();
        state.t += dt;
        if !state.theta.is_finite() {
            return Err(Error::BlowUp {
                t: state.t,
                reason: "non-finite spectral coefficients".into(),
            });
        }
        Ok(())
    }

    pub fn step(&mut self, state: &TrajectoryState) -> Result<TrajectoryState> {
        let mut next = state.clone();
        self.step_in_place(&mut next)?;
        Ok(next)
    }

    /// `−J_n(u_θ·∇θ) − μ|∂₁|^{2α}θ − ν|∂₂|^{2β}θ`, projected by `J_n`.
    pub fn rhs(&mut self, theta: &SpectralField) -> Result<SpectralField> {
        if theta.grid() != &self.grid {
            return Err(Error::GridMismatch);
        }
        let mut out = SpectralField::zeros(self.grid);
        Self::forcing(&mut self.plan, true, theta.coeffs(), out.coeffs_mut());
        let grid = self.grid;
        let radius = self.level.radius();
        for (idx, (o, c)) in out.coeffs_mut().iter_mut().zip(theta.coeffs()).enumerate() {
            let (a, b) = grid.xi(idx);
            if radius.is_some_and(|r| a.hypot(b) >= r) {
                *o = ZERO;
            } else {
                *o -= c * self.params.symbol(a, b);
            }
        }
        Ok(out)
    }
}

/// Right-hand side of the Galerkin system at truncation `level`.
pub fn galerkin_rhs(
    state: &TrajectoryState,
    p: &DissipationParams,
    level: GalerkinLevel,
    dealias: bool,
) -> Result<SpectralField> {
    let config = StepperConfig {
        dealias: if dealias {
            Dealias::TwoThirds
        } else {
            Dealias::None
        },
        ..StepperConfig::new(1.0)
    };
    Stepper::new(*state.theta.grid(), *p, config, level)?.rhs(&state.theta)
}

/// One integrating-factor RK4 step.
pub fn step(
    state: &TrajectoryState,
    p: &DissipationParams,
    cfg: &StepperConfig,
    level: GalerkinLevel,
) -> Result<TrajectoryState> {
    Stepper::new(*state.theta.grid(), *p, *cfg, level)?.step(state)
}
