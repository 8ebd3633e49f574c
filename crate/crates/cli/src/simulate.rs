//! `aqg simulate`: run orchestration and run-directory layout.
//!
//! ```text
//! <run-dir>/config.toml          resolved configuration
//! <run-dir>/diagnostics.ndjson   one DiagnosticsRecord per sample
//! <run-dir>/snapshots/step_*.bin physical-space snapshots
//! <run-dir>/summary.json
//! ```

use std::path::{Path, PathBuf};

use aqg_core::diagnostics::{
    classify_region, critical_exponent, decay_report, local_theory_applies, sojourn_times,
    DecayReport, DiagnosticsRecord, LedgerAccumulator, Region, Sojourn,
};
use aqg_core::dynamics::{integrate, BlowupGuard, Stepper, TrajectoryState};
use aqg_core::spectral::{sobolev_norm, SobolevIndex};
use aqg_core::Error;
use serde::{Deserialize, Serialize};

use crate::config::RunConfig;
use crate::error::{CliError, EXIT_BLOWUP, EXIT_OK};
use crate::ndjson::NdjsonWriter;
use crate::snapshot::Snapshot;

pub const DIAGNOSTICS_FILE: &str = "diagnostics.ndjson";
pub const SUMMARY_FILE: &str = "summary.json";
pub const CONFIG_FILE: &str = "config.toml";
pub const SNAPSHOT_DIR: &str = "snapshots";

/// Thresholds reported in `summary.json` as sojourn times.
pub const SOJOURN_FRACTIONS: [f64; 3] = [0.5, 0.1, 0.01];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum RunStatus {
    Completed,
    BlowUp,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DomainInfo {
    pub kind: String,
    pub n1: usize,
    pub n2: usize,
    pub l1: f64,
    pub l2: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LedgerSummary {
    pub passed: bool,
    pub tolerance: f64,
    pub initial_energy: f64,
    pub max_relative_excess: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BlowUpInfo {
    pub t: f64,
    pub reason: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Summary {
    pub status: RunStatus,
    pub region: Region,
    pub critical_exponent: f64,
    /// Whether `min{α, β} < 1/2`, the hypothesis of the local theory.
    pub local_theory_applies: bool,
    pub sobolev_index: f64,
    pub domain: DomainInfo,
    pub steps: usize,
    pub samples: usize,
    pub t_final: f64,
    pub initial_hs_norm: f64,
    pub initial_hdot_norm: f64,
    pub ledger: LedgerSummary,
    pub decay: Option<DecayReport>,
    /// Time spent above fixed fractions of the initial `H^s` norm.
    pub sojourn: Vec<Sojourn>,
    pub blow_up: Option<BlowUpInfo>,
}

#[derive(Debug)]
pub struct SimulateOutcome {
    pub exit_code: u8,
    pub run_dir: PathBuf,
    pub summary: Summary,
}

/// Output root: `$AQG_OUTPUT_DIR`, else the working directory.
pub fn output_root() -> PathBuf {
    std::env::var_os("AQG_OUTPUT_DIR")
        .map(PathBuf::from)
        .unwrap_or_else(|| PathBuf::from("."))
}

/// Run directory: the explicit override, else the configured `output_dir`
/// or `runs/<config stem>` under [`output_root`].
pub fn resolve_run_dir(cfg: &RunConfig, config_path: &Path, explicit: Option<&Path>) -> PathBuf {
    if let Some(dir) = explicit {
        return dir.to_path_buf();
    }
    let rel = cfg.run.output_dir.clone().unwrap_or_else(|| {
        let stem = config_path
            .file_stem()
            .map(|s| s.to_string_lossy().into_owned())
            .unwrap_or_else(|| "run".into());
        Path::new("runs").join(stem)
    });
    output_root().join(rel)
}

pub fn simulate(
    config_path: &Path,
    explicit_dir: Option<&Path>,
) -> Result<SimulateOutcome, CliError> {
    let cfg = RunConfig::load(config_path)
        .map_err(|e| CliError::usage(format!("{}: {e}", config_path.display())))?;
    let dir = resolve_run_dir(&cfg, config_path, explicit_dir);
    run(&cfg, &dir)
}

fn snapshot_path(dir: &Path, step: usize) -> PathBuf {
    dir.join(SNAPSHOT_DIR).join(format!("step_{step:08}.bin"))
}

/// Executes a validated configuration into `dir`.
pub fn run(cfg: &RunConfig, dir: &Path) -> Result<SimulateOutcome, CliError> {
    cfg.validate().map_err(|e| CliError::usage(e.to_string()))?;
    std::fs::create_dir_all(dir.join(SNAPSHOT_DIR))?;
    std::fs::write(dir.join(CONFIG_FILE), cfg.to_toml())?;

    let s = cfg.sobolev_index();
    let theta0 = cfg
        .initial_field()
        .map_err(|e| CliError::usage(e.to_string()))?;
    let mut stepper = Stepper::new(cfg.grid, cfg.params, cfg.stepper, cfg.run.galerkin)?;
    let guard = BlowupGuard::new(
        &theta0,
        SobolevIndex::inhomogeneous(s),
        cfg.run.blowup_ceiling,
    );
    let mut ledger = LedgerAccumulator::new(&cfg.grid, &cfg.params, s, cfg.run.ledger_tolerance);
    let mut out = NdjsonWriter::create(&dir.join(DIAGNOSTICS_FILE))?;
    let n_steps = cfg.steps();
    let (every, snap_every) = (cfg.run.sample_every, cfg.run.snapshot_every);

    let mut records: Vec<DiagnosticsRecord> = Vec::new();
    let mut io_error: Option<std::io::Error> = None;
    let mut step = 0usize;
    let mut state = TrajectoryState::new(theta0.clone());
    let result = integrate(&mut stepper, &mut state, n_steps, 1, Some(&guard), |st| {
        let i = step;
        step += 1;
        let snap_due = match snap_every {
            Some(k) => i % k == 0 || i == n_steps,
            None => i == 0 || i == n_steps,
        };
        if snap_due {
            let snap = Snapshot::from_field(&st.theta, st.t)?;
            if let Err(e) = snap.write(&snapshot_path(dir, i)) {
                io_error = Some(e);
                return Err(Error::Domain("snapshot write failed".into()));
            }
        }
        if i % every == 0 {
            let rec = ledger.push(st)?;
            if let Err(e) = out.write(&rec) {
                io_error = Some(e);
                return Err(Error::Domain("diagnostics write failed".into()));
            }
            records.push(rec);
        }
        Ok(())
    });
    if let Some(e) = io_error {
        return Err(e.into());
    }

    let (status, blow_up, exit_code) = match result {
        Ok(()) => (RunStatus::Completed, None, EXIT_OK),
        Err(Error::BlowUp { t, reason }) => (
            RunStatus::BlowUp,
            Some(BlowUpInfo { t, reason }),
            EXIT_BLOWUP,
        ),
        Err(e) => return Err(e.into()),
    };
    let decay = if status == RunStatus::Completed && records.len() >= 2 {
        Some(decay_report(&records, &cfg.decay_criteria())?)
    } else {
        None
    };
    let p = &cfg.params;
    let summary = Summary {
        status,
        region: classify_region(p.alpha, p.beta)?,
        critical_exponent: critical_exponent(p),
        local_theory_applies: local_theory_applies(p.alpha, p.beta),
        sobolev_index: s,
        domain: DomainInfo {
            kind: "periodic-box".into(),
            n1: cfg.grid.n1,
            n2: cfg.grid.n2,
            l1: cfg.grid.l1,
            l2: cfg.grid.l2,
        },
        steps: step.saturating_sub(1),
        samples: records.len(),
        t_final: records.last().map_or(0.0, |r| r.t),
        initial_hs_norm: sobolev_norm(&theta0, SobolevIndex::inhomogeneous(s)),
        initial_hdot_norm: sobolev_norm(&theta0, SobolevIndex::homogeneous(s)),
        ledger: LedgerSummary {
            passed: !ledger.violated(),
            tolerance: ledger.tolerance(),
            initial_energy: ledger.initial_energy().unwrap_or(0.0),
            max_relative_excess: ledger.max_relative_excess(),
        },
        decay,
        sojourn: sojourn_times(&records, &SOJOURN_FRACTIONS),
        blow_up,
    };
    let json =
        serde_json::to_string_pretty(&summary).map_err(|e| CliError::failure(e.to_string()))?;
    std::fs::write(dir.join(SUMMARY_FILE), json + "\n")?;
    Ok(SimulateOutcome {
        exit_code,
        run_dir: dir.to_path_buf(),
        summary,
    })
}
