use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum LemmaId {
    /// `‖f‖_{L^p} ≤ C‖|∇|^σ f‖_{L²}`, `1/p + σ/2 = 1/2`.
    Embedding,
    /// `‖fg‖_{Ḣ^{s₁+s₂−1}} ≤ C‖f‖_{Ḣ^{s₁}}‖g‖_{Ḣ^{s₂}}`.
    Product,
    /// `‖R^⊥θ‖_{L^p} ≤ C(p)‖θ‖_{L^p}`.
    Riesz,
    /// Kato–Ponce type commutator bound for `|∇|^s`.
    Commutator,
    /// Sobolev interpolation, constant 1.
    Interpolation,
    /// Anisotropic control of `|∇|^α`, constant 1.
    Anisotropic,
    /// `|ξ| ≤ max(2^{1/2α}, 2^{1/2β})·(A^{1/2α} + A^{1/2β})`.
    SymbolBound,
    /// `‖B_δθ‖²_{L²} ≤ (‖|∂₁|^αθ‖² + ‖|∂₂|^βθ‖²)/δ`.
    HighFrequency,
}

impl LemmaId {
    /// Whether the inequality carries an explicit constant that a single
    /// sample can falsify.
    pub fn has_explicit_constant(self) -> bool {
        matches!(
            self,
            LemmaId::Interpolation
                | LemmaId::Anisotropic
                | LemmaId::SymbolBound
                | LemmaId::HighFrequency
        )
    }
}

/// Parameter point a report was computed at. Unused entries are omitted when
/// serialised.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct LabParameters {
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub s: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub s_prime: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub s1: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub s2: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub alpha: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub beta: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub sigma: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub p: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub t: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub delta: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub n1: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub n2: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Verdict {
    Bounded,
    Violated { threshold: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Quantiles {
    pub p50: f64,
    pub p95: f64,
    pub max: f64,
}

/// Ratio statistics `LHS/RHS` of one inequality over a family of samples.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RatioReport {
    pub lemma: LemmaId,
    pub samples: usize,
    pub max_ratio: f64,
    pub min_ratio: f64,
    pub quantiles: Quantiles,
    pub parameters: LabParameters,
    /// The stated constant, for inequalities that have one.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub constant: Option<f64>,
    /// Samples whose ratio was not finite (nonzero left side over a zero
    /// right side).
    pub non_finite: usize,
    /// Set by the interpolation check: every ratio equals 1 to `1e−13`.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub equality: Option<bool>,
    pub verdict: Verdict,
}

impl RatioReport {
    pub fn is_violation(&self) -> bool {
        matches!(self.verdict, Verdict::Violated { .. })
    }
}

/// Accumulates ratios into a [`RatioReport`].
#[derive(Debug, Clone, Default)]
pub(crate) struct RatioStats {
    ratios: Vec<f64>,
    non_finite: usize,
}

impl RatioStats {
    pub(crate) fn push(&mut self, ratio: f64) {
        if ratio.is_finite() {
            self.ratios.push(ratio);
        } else {
            self.non_finite += 1;
        }
    }

    pub(crate) fn ratios(&self) -> &[f64] {
        &self.ratios
    }

    /// `constant` and `slack` define the explicit threshold
    /// `constant·(1 + slack)`; `None` for implicit-constant inequalities.
    pub(crate) fn finish(
        self,
        lemma: LemmaId,
        parameters: LabParameters,
        explicit: Option<(f64, f64)>,
    ) -> RatioReport {
        let mut sorted = self.ratios;
        sorted.sort_by(f64::total_cmp);
        let samples = sorted.len() + self.non_finite;
        let max_ratio = if self.non_finite > 0 {
            f64::INFINITY
        } else {
            sorted.last().copied().unwrap_or(0.0)
        };
        let quantiles = Quantiles {
            p50: nearest_rank(&sorted, 0.50),
            p95: nearest_rank(&sorted, 0.95),
            max: sorted.last().copied().unwrap_or(0.0),
        };
        let verdict = match explicit {
            Some((c, slack)) if max_ratio > c * (1.0 + slack) => Verdict::Violated { threshold: c },
            _ => Verdict::Bounded,
        };
        RatioReport {
            lemma,
            samples,
            max_ratio: quantiles.max,
            min_ratio: sorted.first().copied().unwrap_or(0.0),
            quantiles,
            parameters,
            constant: explicit.map(|(c, _)| c),
            non_finite: self.non_finite,
            equality: None,
            verdict,
        }
    }
}

fn nearest_rank(sorted: &[f64], q: f64) -> f64 {
    if sorted.is_empty() {
        return 0.0;
    }
    let rank = (q * sorted.len() as f64).ceil() as usize;
    sorted[rank.clamp(1, sorted.len()) - 1]
}

/// `lhs/rhs`, treating `lhs ≤ floor` as an exact zero and a positive left
/// side over a vanishing right side as unbounded.
pub(crate) fn ratio(lhs: f64, rhs: f64, floor: f64) -> f64 {
    if lhs <= floor {
        0.0
    } else if rhs > 0.0 {
        lhs / rhs
    } else {
        f64::INFINITY
    }
}
