//! `aqg verify`: drives the inequality lab and writes `reports.ndjson`.
//!
//! Each parameter point yields one record. A precondition failure of the
//! parameter point itself is one `skipped` record; a failure of an individual
//! sample is a `skipped` record naming the sample, after which the remaining
//! samples are still checked.

use std::path::{Path, PathBuf};

use aqg_core::diagnostics::critical_exponent_of;
use aqg_core::lab::{
    check_anisotropic_bound, check_commutator, check_embedding, check_interpolation,
    check_product_estimate, check_riesz_bound, check_symbol_bound, lattice_sweep,
    single_shell_field, FieldFamily, RatioReport,
};
use aqg_core::spectral::{DissipationParams, GridSpec, SpectralField};
use clap::{Args, ValueEnum};
use serde::{Deserialize, Serialize};

use crate::error::{CliError, EXIT_FAILURE, EXIT_OK};
use crate::ndjson::NdjsonWriter;
use crate::simulate::output_root;

pub const REPORTS_FILE: &str = "reports.ndjson";

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    Symbols,
    Interpolation,
    Commutator,
    Product,
    Embedding,
    Riesz,
    Anisotropic,
}

impl Suite {
    pub fn name(self) -> &'static str {
        match self {
            Suite::Symbols => "symbols",
            Suite::Interpolation => "interpolation",
            Suite::Commutator => "commutator",
            Suite::Product => "product",
            Suite::Embedding => "embedding",
            Suite::Riesz => "riesz",
            Suite::Anisotropic => "anisotropic",
        }
    }
}

#[derive(Debug, Clone, Args)]
pub struct VerifyOptions {
    /// Dissipation exponents α (comma-separated list allowed).
    #[arg(long, value_delimiter = ',', default_values_t = [0.3], allow_negative_numbers = true)]
    pub alpha: Vec<f64>,
    /// Dissipation exponents β (comma-separated list allowed).
    #[arg(long, value_delimiter = ',', default_values_t = [0.7], allow_negative_numbers = true)]
    pub beta: Vec<f64>,
    /// Sobolev index of the commutator and anisotropic checks; the critical
    /// exponent of (α, β) when omitted.
    #[arg(long, allow_negative_numbers = true)]
    pub s: Option<f64>,
    #[arg(long = "s-prime", default_value_t = 0.0, allow_negative_numbers = true)]
    pub s_prime: f64,
    #[arg(long, default_value_t = 0.3, allow_negative_numbers = true)]
    pub s1: f64,
    #[arg(long, default_value_t = 0.7, allow_negative_numbers = true)]
    pub s2: f64,
    /// Embedding order: `‖f‖_{L^p} ≲ ‖|∇|^σ f‖` with `1/p = 1/2 − σ/2`.
    #[arg(long, default_value_t = 0.5)]
    pub sigma: f64,
    /// Riesz transform exponent.
    #[arg(long, default_value_t = 4)]
    pub p: u32,
    /// Interpolation weight.
    #[arg(long, default_value_t = 0.5, allow_negative_numbers = true)]
    pub t: f64,
    #[arg(long, default_value_t = 100)]
    pub samples: u64,
    /// Grid size of the sampled fields.
    #[arg(long, default_value_t = 64)]
    pub n: usize,
    /// Spectral band of random fields; one third of the grid when omitted.
    #[arg(long)]
    pub kmax: Option<u64>,
    /// Coefficient decay exponent of random fields.
    #[arg(long, default_value_t = 1.0)]
    pub decay: f64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Lattice half-width of the symbols sweep.
    #[arg(long, default_value_t = 64)]
    pub sweep: i64,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        Self {
            alpha: vec![0.3],
            beta: vec![0.7],
            s: None,
            s_prime: 0.0,
            s1: 0.3,
            s2: 0.7,
            sigma: 0.5,
            p: 4,
            t: 0.5,
            samples: 100,
            n: 64,
            kmax: None,
            decay: 1.0,
            seed: 0,
            sweep: 64,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum RecordStatus {
    Ok,
    Skipped,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerifyRecord {
    pub suite: Suite,
    pub family: String,
    pub status: RecordStatus,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sample: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub report: Option<RatioReport>,
}

#[derive(Debug)]
pub struct VerifyOutcome {
    pub exit_code: u8,
    pub path: PathBuf,
    pub records: Vec<VerifyRecord>,
}

struct Emitter {
    suite: Suite,
    records: Vec<VerifyRecord>,
}

impl Emitter {
    fn ok(&mut self, family: &str, report: RatioReport) {
        self.records.push(VerifyRecord {
            suite: self.suite,
            family: family.into(),
            status: RecordStatus::Ok,
            sample: None,
            reason: None,
            report: Some(report),
        });
    }

    fn skip(&mut self, family: &str, sample: Option<u64>, reason: String) {
        self.records.push(VerifyRecord {
            suite: self.suite,
            family: family.into(),
            status: RecordStatus::Skipped,
            sample,
            reason: Some(reason),
            report: None,
        });
    }

    /// Runs `check` over the generated samples, isolating the ones that fail
    /// their preconditions.
    fn run<T>(
        &mut self,
        family: &str,
        items: Vec<(u64, aqg_core::Result<T>)>,
        check: impl Fn(&[&T]) -> aqg_core::Result<RatioReport>,
    ) {
        if let Err(e) = check(&[]) {
            self.skip(family, None, e.to_string());
            return;
        }
        let mut good = Vec::new();
        for (seed, item) in &items {
            match item {
                Ok(x) => good.push((*seed, x)),
                Err(e) => self.skip(family, Some(*seed), e.to_string()),
            }
        }
        let all: Vec<&T> = good.iter().map(|(_, x)| *x).collect();
        if check(&all).is_err() {
            good.retain(|(seed, x)| match check(&[*x]) {
                Ok(_) => true,
                Err(e) => {
                    self.skip(family, Some(*seed), e.to_string());
                    false
                }
            });
        }
        if good.is_empty() {
            return;
        }
        let kept: Vec<&T> = good.iter().map(|(_, x)| *x).collect();
        match check(&kept) {
            Ok(r) => self.ok(family, r),
            Err(e) => self.skip(family, None, e.to_string()),
        }
    }
}

fn points(opts: &VerifyOptions) -> Vec<(f64, f64)> {
    opts.alpha
        .iter()
        .flat_map(|&a| opts.beta.iter().map(move |&b| (a, b)))
        .collect()
}

/// Lattice shells `k₁² + k₂² = r²` with `0 < r² ≤ kmax²` that contain points.
fn shell_radii(kmax: i64) -> Vec<i64> {
    (1..=kmax * kmax)
        .filter(|&r2| {
            (0..=kmax).any(|a| {
                let b2 = r2 - a * a;
                b2 >= 0 && {
                    let b = (b2 as f64).sqrt().round() as i64;
                    b * b == b2
                }
            })
        })
        .collect()
}

/// Computes every record of `suite` without touching the filesystem.
pub fn collect(suite: Suite, opts: &VerifyOptions) -> Result<Vec<VerifyRecord>, CliError> {
    let grid = GridSpec::square(opts.n).map_err(|e| CliError::usage(e.to_string()))?;
    let fam = match opts.kmax {
        Some(k) => FieldFamily::with_band(k, opts.decay),
        None => FieldFamily::third_band(&grid, opts.decay),
    };
    let seeds = opts.seed..opts.seed.saturating_add(opts.samples);
    let fields = || -> Vec<(u64, aqg_core::Result<SpectralField>)> {
        seeds
            .clone()
            .map(|sd| (sd, fam.sample(&grid, sd)))
            .collect()
    };
    let pairs = || -> Vec<(u64, aqg_core::Result<(SpectralField, SpectralField)>)> {
        seeds
            .clone()
            .map(|sd| {
                let pair = fam
                    .sample(&grid, 2 * sd)
                    .and_then(|f| Ok((f, fam.sample(&grid, 2 * sd + 1)?)));
                (sd, pair)
            })
            .collect()
    };
    let mut em = Emitter {
        suite,
        records: Vec::new(),
    };
    match suite {
        Suite::Symbols => {
            let xi = lattice_sweep(&grid, opts.sweep);
            for (a, b) in points(opts) {
                match DissipationParams::unit(a, b)
                    .and_then(|p| check_symbol_bound(&p, xi.iter().copied()))
                {
                    Ok(r) => em.ok("lattice-sweep", r),
                    Err(e) => em.skip("lattice-sweep", None, e.to_string()),
                }
            }
        }
        Suite::Interpolation => {
            let kmax = fam.kmax1.min(fam.kmax2) as i64;
            let radii = shell_radii(kmax);
            let shells: Vec<_> = seeds
                .clone()
                .enumerate()
                .map(|(i, sd)| {
                    let r2 = radii.get(i % radii.len().max(1)).copied().unwrap_or(1);
                    (sd, single_shell_field(&grid, sd, r2))
                })
                .collect();
            let check = |fs: &[&SpectralField]| {
                check_interpolation(fs.iter().copied(), opts.s1, opts.s2, opts.t)
            };
            em.run("single-shell", shells, check);
            em.run("random", fields(), check);
        }
        Suite::Commutator => {
            let items = pairs();
            for &alpha in &opts.alpha {
                let s = opts
                    .s
                    .unwrap_or_else(|| critical_exponent_of(alpha, opts.beta[0]));
                em.run(
                    "random-pairs",
                    items.clone(),
                    |ps: &[&(SpectralField, SpectralField)]| {
                        check_commutator(ps.iter().map(|(f, g)| (f, g)), s, alpha)
                    },
                );
            }
        }
        Suite::Product => {
            em.run(
                "random-pairs",
                pairs(),
                |ps: &[&(SpectralField, SpectralField)]| {
                    check_product_estimate(ps.iter().map(|(f, g)| (f, g)), opts.s1, opts.s2)
                },
            );
        }
        Suite::Embedding => {
            em.run("random", fields(), |fs: &[&SpectralField]| {
                check_embedding(fs.iter().copied(), opts.sigma)
            });
        }
        Suite::Riesz => {
            em.run("random", fields(), |fs: &[&SpectralField]| {
                check_riesz_bound(fs.iter().copied(), opts.p)
            });
        }
        Suite::Anisotropic => {
            let items = fields();
            for (a, b) in points(opts) {
                let s = opts.s.unwrap_or_else(|| critical_exponent_of(a, b));
                em.run("random", items.clone(), |fs: &[&SpectralField]| {
                    let p = DissipationParams::unit(a, b)?;
                    check_anisotropic_bound(fs.iter().copied(), &p, s, opts.s_prime)
                });
            }
        }
    }
    Ok(em.records)
}

/// Runs `suite`, writes `reports.ndjson` into `dir` (default
/// `<output root>/verify/<suite>`) and prints one line per record.
pub fn verify(
    suite: Suite,
    opts: &VerifyOptions,
    dir: Option<&Path>,
) -> Result<VerifyOutcome, CliError> {
    let records = collect(suite, opts)?;
    let dir = dir
        .map(Path::to_path_buf)
        .unwrap_or_else(|| output_root().join("verify").join(suite.name()));
    std::fs::create_dir_all(&dir)?;
    let path = dir.join(REPORTS_FILE);
    let mut out = NdjsonWriter::create(&path)?;
    let mut violated = false;
    for rec in &records {
        out.write(rec)?;
        println!("{}", describe(rec));
        violated |= rec.report.as_ref().is_some_and(RatioReport::is_violation);
    }
    Ok(VerifyOutcome {
        exit_code: if violated { EXIT_FAILURE } else { EXIT_OK },
        path,
        records,
    })
}

fn describe(rec: &VerifyRecord) -> String {
    let head = format!("{} [{}]", rec.suite.name(), rec.family);
    match (&rec.report, &rec.reason) {
        (Some(r), _) => {
            let p = &r.parameters;
            let mut params = String::new();
            for (name, v) in [
                ("alpha", p.alpha),
                ("beta", p.beta),
                ("s", p.s),
                ("t", p.t),
                ("p", p.p),
            ] {
                if let Some(v) = v {
                    params.push_str(&format!(" {name}={v}"));
                }
            }
            let verdict = if r.is_violation() {
                "VIOLATED"
            } else {
                "bounded"
            };
            let eq = match r.equality {
                Some(true) => " equality",
                _ => "",
            };
            format!(
                "{head}{params}: samples={} max={:.6e} min={:.6e} {verdict}{eq}",
                r.samples, r.max_ratio, r.min_ratio
            )
        }
        (None, reason) => {
            let which = rec
                .sample
                .map(|s| format!(" sample {s}"))
                .unwrap_or_default();
            format!(
                "{head}{which}: skipped ({})",
                reason.as_deref().unwrap_or("")
            )
        }
    }
}
