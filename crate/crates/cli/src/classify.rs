use aqg_core::diagnostics::{classify_region, critical_exponent_of, local_theory_applies, Region};
use serde::Serialize;

use crate::error::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Classification {
    pub alpha: f64,
    pub beta: f64,
    pub region: Region,
    pub critical_exponent: f64,
    pub local_theory_applies: bool,
}

pub fn classify(alpha: f64, beta: f64) -> Result<Classification, CliError> {
    let region = classify_region(alpha, beta).map_err(|e| CliError::usage(e.to_string()))?;
    Ok(Classification {
        alpha,
        beta,
        region,
        critical_exponent: critical_exponent_of(alpha, beta),
        local_theory_applies: local_theory_applies(alpha, beta),
    })
}

impl Classification {
    pub fn region_name(&self) -> &'static str {
        match self.region {
            Region::GlobalRegularity => "global-regularity",
            Region::OutsideRegion => "outside-region",
        }
    }

    /// Three `key: value` lines.
    pub fn render(&self) -> String {
        format!(
            "region: {}\ncritical exponent s: {}\nmin(alpha, beta) < 1/2: {}\n",
            self.region_name(),
            self.critical_exponent,
            if self.local_theory_applies {
                "holds"
            } else {
                "fails"
            }
        )
    }
}
