use serde::{Deserialize, Serialize};

use super::DiagnosticsRecord;
use crate::{Error, Result};

/// Thresholds for a finite-horizon decay verdict.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DecayCriteria {
    /// Pass when `‖θ(T)‖_{H^s} < terminal_fraction · ‖θ⁰‖_{H^s}`.
    pub terminal_fraction: f64,
    /// Allowed increase between samples, relative to `‖θ⁰‖_{H^s}`.
    pub monotone_slack: f64,
}

impl Default for DecayCriteria {
    fn default() -> Self {
        Self {
            terminal_fraction: 0.1,
            monotone_slack: 1e-8,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NormSample {
    pub t: f64,
    pub l2: f64,
    pub hs_inhom: f64,
    pub hs_hom: f64,
}

impl From<&DiagnosticsRecord> for NormSample {
    fn from(r: &DiagnosticsRecord) -> Self {
        Self {
            t: r.t,
            l2: r.l2,
            hs_inhom: r.hs_inhom,
            hs_hom: r.hs_hom,
        }
    }
}

/// Decay summary of a completed run. Rates are `−d ln‖θ‖/dt` fitted by least
/// squares over the second half of the samples; `None` when a norm vanishes.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DecayReport {
    pub start: NormSample,
    pub middle: NormSample,
    pub end: NormSample,
    pub l2_rate: Option<f64>,
    pub hs_rate: Option<f64>,
    pub hs_hom_rate: Option<f64>,
    /// `‖θ(T)‖_{H^s} / ‖θ⁰‖_{H^s}` (zero for a zero field).
    pub terminal_fraction: f64,
    pub threshold: f64,
    pub monotone: bool,
    pub passed: bool,
}

pub fn decay_report(
    records: &[DiagnosticsRecord],
    criteria: &DecayCriteria,
) -> Result<DecayReport> {
    if records.len() < 2 {
        return Err(Error::UnsupportedSampling(
            "decay report needs at least two samples".into(),
        ));
    }
    let start = &records[0];
    let end = &records[records.len() - 1];
    let h0 = start.hs_inhom;
    let terminal_fraction = if h0 > 0.0 { end.hs_inhom / h0 } else { 0.0 };
    let slack = criteria.monotone_slack * h0;
    let monotone = records
        .windows(2)
        .all(|w| w[1].hs_inhom <= w[0].hs_inhom + slack);
    let tail = &records[records.len() / 2..];
    Ok(DecayReport {
        start: start.into(),
        middle: (&records[records.len() / 2]).into(),
        end: end.into(),
        l2_rate: fit_rate(tail, |r| r.l2),
        hs_rate: fit_rate(tail, |r| r.hs_inhom),
        hs_hom_rate: fit_rate(tail, |r| r.hs_hom),
        terminal_fraction,
        threshold: criteria.terminal_fraction,
        monotone,
        passed: h0 == 0.0 || terminal_fraction < criteria.terminal_fraction,
    })
}

/// Time spent with `‖θ‖_{H^s}` above `fraction · ‖θ⁰‖_{H^s}`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Sojourn {
    pub fraction: f64,
    pub time: f64,
}

/// Sojourn times above each fraction of the initial norm, counting a
/// sampling interval when its left endpoint lies above the threshold.
pub fn sojourn_times(records: &[DiagnosticsRecord], fractions: &[f64]) -> Vec<Sojourn> {
    let h0 = records.first().map_or(0.0, |r| r.hs_inhom);
    fractions
        .iter()
        .map(|&fraction| Sojourn {
            fraction,
            time: records
                .windows(2)
                .filter(|w| w[0].hs_inhom > fraction * h0)
                .map(|w| w[1].t - w[0].t)
                .sum(),
        })
        .collect()
}

/// Least-squares slope of `−ln y` against `t`.
fn fit_rate(records: &[DiagnosticsRecord], y: impl Fn(&DiagnosticsRecord) -> f64) -> Option<f64> {
    if records.len() < 2 || records.iter().any(|r| !(y(r) > 0.0)) {
        return None;
    }
    let n = records.len() as f64;
    let tm = records.iter().map(|r| r.t).sum::<f64>() / n;
    let lm = records.iter().map(|r| y(r).ln()).sum::<f64>() / n;
    let (mut sxy, mut sxx) = (0.0, 0.0);
    for r in records {
        let dt = r.t - tm;
        sxy += dt * (y(r).ln() - lm);
        sxx += dt * dt;
    }
    (sxx > 0.0).then(|| -sxy / sxx)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn record(t: f64, v: f64) -> DiagnosticsRecord {
        DiagnosticsRecord {
            t,
            l2: v,
            hs_inhom: v,
            hs_hom: v,
            d1: 0.0,
            d2: 0.0,
            cum_d1: 0.0,
            cum_d2: 0.0,
            ledger: v * v,
            balance: v * v,
        }
    }

    #[test]
    fn exponential_rate_is_recovered() {
        let recs: Vec<_> = (0..=20)
            .map(|i| {
                let t = 0.1 * i as f64;
                record(t, 3.0 * (-1.5 * t).exp())
            })
            .collect();
        let rep = decay_report(&recs, &DecayCriteria::default()).unwrap();
        assert!((rep.l2_rate.unwrap() - 1.5).abs() < 1e-12);
        assert!(rep.monotone);
        assert!((rep.terminal_fraction - (-3.0f64).exp()).abs() < 1e-12);
        assert!(rep.passed);
    }

    #[test]
    fn zero_field_passes_trivially() {
        let recs: Vec<_> = (0..5).map(|i| record(i as f64, 0.0)).collect();
        let rep = decay_report(&recs, &DecayCriteria::default()).unwrap();
        assert!(rep.passed);
        assert_eq!(rep.l2_rate, None);
    }

    #[test]
    fn sojourn_counts_left_endpoints() {
        let recs: Vec<_> = (0..=10)
            .map(|i| record(i as f64 * 0.5, 0.5f64.powi(i)))
            .collect();
        let so = sojourn_times(&recs, &[0.3, 0.01, 1.0]);
        // Above 0.3 at i = 0, 1; above 0.01 for i ≤ 6; never strictly above 1.
        assert_eq!(so[0].time, 1.0);
        assert_eq!(so[1].time, 3.5);
        assert_eq!(so[2].time, 0.0);
        assert!(sojourn_times(&recs[..1], &[0.5])[0].time == 0.0);
    }

    #[test]
    fn growth_fails_and_breaks_monotonicity() {
        let recs: Vec<_> = (0..5).map(|i| record(i as f64, 1.0 + i as f64)).collect();
        let rep = decay_report(&recs, &DecayCriteria::default()).unwrap();
        assert!(!rep.passed);
        assert!(!rep.monotone);
        assert!(decay_report(&recs[..1], &DecayCriteria::default()).is_err());
    }
}
