//! TOML run configuration.
//!
//! A run file has one section per module (`[grid]`, `[params]`, `[stepper]`,
//! `[init]`, `[run]`). Every error carries the line it refers to when one
//! can be located.

use std::fmt;
use std::path::{Path, PathBuf};

use aqg_core::diagnostics::{critical_exponent, DecayCriteria, DEFAULT_LEDGER_TOLERANCE};
use aqg_core::dynamics::{
    rescale_to_norm, GalerkinLevel, InitialData, StepperConfig, DEFAULT_CEILING,
};
use aqg_core::spectral::{DissipationParams, GridSpec, SobolevIndex, SpectralField};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub grid: GridSpec,
    pub params: DissipationParams,
    pub stepper: StepperConfig,
    pub init: InitSection,
    pub run: RunSection,
}

/// Initial datum plus an optional rescale to a prescribed `Ḣ^s` norm.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InitSection {
    #[serde(flatten)]
    pub data: InitialData,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub hdot_norm: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunSection {
    pub t_end: f64,
    pub sample_every: usize,
    #[serde(default)]
    pub galerkin: GalerkinLevel,
    #[serde(default, with = "seed_repr")]
    pub seed: u64,
    /// Steps between snapshots; only the first and last state when absent.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub snapshot_every: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub output_dir: Option<PathBuf>,
    /// Sobolev index of the ledger and decay checks; the critical exponent
    /// when absent.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sobolev_index: Option<f64>,
    #[serde(default = "default_ledger_tolerance")]
    pub ledger_tolerance: f64,
    #[serde(default = "default_ceiling")]
    pub blowup_ceiling: f64,
    #[serde(default = "default_terminal_fraction")]
    pub terminal_fraction: f64,
}

fn default_ledger_tolerance() -> f64 {
    DEFAULT_LEDGER_TOLERANCE
}

fn default_ceiling() -> f64 {
    DEFAULT_CEILING
}

fn default_terminal_fraction() -> f64 {
    DecayCriteria::default().terminal_fraction
}

/// TOML integers are signed 64-bit, so seeds above `i64::MAX` are written as
/// decimal strings.
mod seed_repr {
    use serde::{de, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(seed: &u64, s: S) -> Result<S::Ok, S::Error> {
        match i64::try_from(*seed) {
            Ok(v) => s.serialize_i64(v),
            Err(_) => s.serialize_str(&seed.to_string()),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<u64, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Repr {
            Int(i64),
            Text(String),
        }
        match Repr::deserialize(d)? {
            Repr::Int(v) => {
                u64::try_from(v).map_err(|_| de::Error::custom(format!("seed {v} is negative")))
            }
            Repr::Text(t) => t.parse().map_err(|_| {
                de::Error::custom(format!("seed \"{t}\" is not a 64-bit unsigned integer"))
            }),
        }
    }
}

/// Configuration error with an optional 1-based line number.
#[derive(Debug, Clone, PartialEq)]
pub struct ConfigError {
    pub line: Option<usize>,
    pub message: String,
}

impl ConfigError {
    fn new(message: impl Into<String>) -> Self {
        Self {
            line: None,
            message: message.into(),
        }
    }

    fn at(mut self, line: Option<usize>) -> Self {
        self.line = line;
        self
    }
}

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.line {
            Some(l) => write!(f, "line {l}: {}", self.message),
            None => f.write_str(&self.message),
        }
    }
}

impl std::error::Error for ConfigError {}

/// Line of `key` inside `[section]`, or of the section header when `key` is
/// empty or absent.
pub fn locate(text: &str, section: &str, key: &str) -> Option<usize> {
    let mut current = String::new();
    let mut header = None;
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if let Some(name) = line.strip_prefix('[').and_then(|l| l.strip_suffix(']')) {
            current = name.trim().to_string();
            if current == section {
                header = Some(i + 1);
            }
            continue;
        }
        if current != section || key.is_empty() {
            continue;
        }
        if let Some(rest) = line.strip_prefix(key) {
            if rest.trim_start().starts_with('=') {
                return Some(i + 1);
            }
        }
    }
    header
}

fn line_of_offset(text: &str, offset: usize) -> usize {
    text[..offset.min(text.len())].matches('\n').count() + 1
}

impl RunConfig {
    /// Parses and validates a configuration file.
    pub fn load(path: &Path) -> Result<Self, ConfigError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| ConfigError::new(format!("cannot read {}: {e}", path.display())))?;
        Self::parse(&text)
    }

    pub fn parse(text: &str) -> Result<Self, ConfigError> {
        let cfg: RunConfig = toml::from_str(text).map_err(|e| {
            let line = e.span().map(|s| line_of_offset(text, s.start));
            ConfigError::new(e.message().trim().to_string()).at(line)
        })?;
        cfg.validate_with(Some(text))?;
        Ok(cfg)
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("run configuration serialises to TOML")
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        self.validate_with(None)
    }

    fn validate_with(&self, text: Option<&str>) -> Result<(), ConfigError> {
        let at = |section: &str, key: &str| text.and_then(|t| locate(t, section, key));
        let core = |e: aqg_core::Error| e.to_string();

        self.grid
            .validate()
            .map_err(|e| ConfigError::new(core(e)).at(at("grid", "")))?;
        self.params
            .validate()
            .map_err(|e| ConfigError::new(core(e)).at(at("params", "")))?;
        self.stepper
            .validate()
            .map_err(|e| ConfigError::new(core(e)).at(at("stepper", "dt")))?;

        let run = &self.run;
        let steps = run.t_end / self.stepper.dt;
        if !(run.t_end.is_finite() && run.t_end > 0.0 && steps >= 1.0 - 1e-9) {
            return Err(ConfigError::new(format!(
                "t_end = {} must be positive and cover at least one step of dt = {}",
                run.t_end, self.stepper.dt
            ))
            .at(at("run", "t_end")));
        }
        if (steps - steps.round()).abs() > 1e-9 * steps.round() {
            return Err(ConfigError::new(format!(
                "t_end = {} is not a whole number of steps of dt = {}",
                run.t_end, self.stepper.dt
            ))
            .at(at("run", "t_end")));
        }
        if run.sample_every < 1 {
            return Err(
                ConfigError::new("sample_every must be at least 1").at(at("run", "sample_every"))
            );
        }
        if run.snapshot_every == Some(0) {
            return Err(ConfigError::new("snapshot_every must be at least 1")
                .at(at("run", "snapshot_every")));
        }
        run.galerkin
            .validate(&self.grid)
            .map_err(|e| ConfigError::new(core(e)).at(at("run", "galerkin")))?;
        if let Some(s) = run.sobolev_index {
            if !s.is_finite() {
                return Err(
                    ConfigError::new("sobolev_index must be finite").at(at("run", "sobolev_index"))
                );
            }
        }
        if !(run.ledger_tolerance >= 0.0 && run.ledger_tolerance.is_finite()) {
            return Err(
                ConfigError::new("ledger_tolerance must be a nonnegative number")
                    .at(at("run", "ledger_tolerance")),
            );
        }
        if !(run.blowup_ceiling > 1.0) {
            return Err(
                ConfigError::new("blowup_ceiling must exceed 1").at(at("run", "blowup_ceiling"))
            );
        }
        if !(run.terminal_fraction > 0.0 && run.terminal_fraction.is_finite()) {
            return Err(ConfigError::new("terminal_fraction must be positive")
                .at(at("run", "terminal_fraction")));
        }
        if let Some(h) = self.init.hdot_norm {
            if !(h >= 0.0 && h.is_finite()) {
                return Err(ConfigError::new("hdot_norm must be a nonnegative number")
                    .at(at("init", "hdot_norm")));
            }
        }
        self.initial_field()
            .map_err(|e| ConfigError::new(e.message).at(at("init", "kind")))?;
        Ok(())
    }

    pub fn steps(&self) -> usize {
        (self.run.t_end / self.stepper.dt).round() as usize
    }

    pub fn sobolev_index(&self) -> f64 {
        self.run
            .sobolev_index
            .unwrap_or_else(|| critical_exponent(&self.params))
    }

    pub fn decay_criteria(&self) -> DecayCriteria {
        DecayCriteria {
            terminal_fraction: self.run.terminal_fraction,
            ..DecayCriteria::default()
        }
    }

    /// Builds the initial datum, applies the optional rescale, and projects
    /// it onto the Galerkin space.
    pub fn initial_field(&self) -> Result<SpectralField, ConfigError> {
        let err = |e: aqg_core::Error| ConfigError::new(format!("invalid initial data: {e}"));
        let mut theta = self
            .init
            .data
            .build(&self.grid, self.run.seed)
            .map_err(err)?;
        if let Some(target) = self.init.hdot_norm {
            let idx = SobolevIndex::homogeneous(self.sobolev_index());
            theta = rescale_to_norm(&theta, idx, target).map_err(err)?;
        }
        self.run.galerkin.project(&theta).map_err(err)
    }
}
