use serde::{Deserialize, Serialize};

use crate::spectral::DissipationParams;
use crate::{Error, Result};

/// Position of `(α, β)` relative to the known global-regularity region.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Region {
    GlobalRegularity,
    OutsideRegion,
}

/// Lower bound on `β` for global regularity at a given `α`:
/// `1/(2α+1)` for `α ≤ 1/2`, `(1−α)/(2α)` above.
pub fn regularity_threshold(alpha: f64) -> f64 {
    if alpha <= 0.5 {
        1.0 / (2.0 * alpha + 1.0)
    } else {
        (1.0 - alpha) / (2.0 * alpha)
    }
}

pub fn classify_region(alpha: f64, beta: f64) -> Result<Region> {
    for (name, v) in [("alpha", alpha), ("beta", beta)] {
        if !(v > 0.0 && v < 1.0) {
            return Err(Error::Domain(format!("{name} = {v} must lie in (0, 1)")));
        }
    }
    Ok(if beta > regularity_threshold(alpha) {
        Region::GlobalRegularity
    } else {
        Region::OutsideRegion
    })
}

/// `s = max(2 − 2α, 2 − 2β)`.
pub fn critical_exponent(p: &DissipationParams) -> f64 {
    critical_exponent_of(p.alpha, p.beta)
}

pub fn critical_exponent_of(alpha: f64, beta: f64) -> f64 {
    (2.0 - 2.0 * alpha).max(2.0 - 2.0 * beta)
}

/// Whether `min(α, β) < 1/2`, the hypothesis of the local theory in the
/// critical space.
pub fn local_theory_applies(alpha: f64, beta: f64) -> bool {
    alpha.min(beta) < 0.5
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn critical_exponent_examples() {
        assert!((critical_exponent_of(0.3, 0.7) - 1.4).abs() < 1e-15);
        assert_eq!(critical_exponent_of(0.5, 0.5), 1.0);
        assert_eq!(critical_exponent_of(0.2, 0.2), 2.0 - 0.4);
    }

    #[test]
    fn classification_examples() {
        assert_eq!(classify_region(0.3, 0.7), Ok(Region::GlobalRegularity));
        assert_eq!(classify_region(0.75, 0.2), Ok(Region::GlobalRegularity));
        assert_eq!(classify_region(0.25, 0.25), Ok(Region::OutsideRegion));
        assert_eq!(classify_region(0.6, 0.6), Ok(Region::GlobalRegularity));
        assert!(classify_region(0.0, 0.5).is_err());
        assert!(classify_region(0.5, 1.0).is_err());
    }

    #[test]
    fn threshold_is_continuous_at_one_half() {
        assert_eq!(regularity_threshold(0.5), 0.5);
        assert!((regularity_threshold(0.5 + 1e-12) - 0.5).abs() < 1e-11);
    }
}
