//! Correlation measures of a two-qubit state: entropies and mutual
//! information, concurrence, quantum discord, and the Hilbert-Schmidt and
//! trace-norm geometric discords.
//!
//! Discord is always taken from the measured minimum over projective
//! measurements on the first qubit; the binary-entropy shortcut is exposed
//! next to it for comparison.

mod concurrence;
mod discord;
mod entropy;
mod geometric;
mod report;

pub use concurrence::{concurrence_closed_form, concurrence_wootters};
pub use discord::{
    classical_correlation, discord_parts, min_conditional_entropy_closed, quantum_discord_definitional,
    DiscordParts, FastConditionalEntropy,
};
pub use entropy::{mutual_information, von_neumann_entropy, Spectrum};
pub use geometric::{gmqd, gqd_1norm_bell};
pub use report::{
    build_state, evaluate_measure, full_report, report_with, CorrelationReport, Flag, Measure, MeasureSet,
    ReportOptions, StateSource, FAST_PATH_DEVIATION_TOL,
};
