//! Energy ledger, decay summaries, frequency splitting and the regularity
//! classifier.

mod decay;
mod frequency;
mod ledger;
mod regime;
mod spectrum;

pub use decay::{decay_report, sojourn_times, DecayCriteria, DecayReport, NormSample, Sojourn};
pub use frequency::{frequency_split, high_frequency_bound, FrequencySplit, HighFrequencyBound};
pub use ledger::{
    energy_ledger, DiagnosticsRecord, FieldNorms, LedgerAccumulator, LedgerSeries, NormProbe,
    DEFAULT_LEDGER_TOLERANCE,
};
pub use regime::{
    classify_region, critical_exponent, critical_exponent_of, local_theory_applies,
    regularity_threshold, Region,
};
pub use spectrum::{axis_spectrum, shell_spectrum, SpectrumBin};
