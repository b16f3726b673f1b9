use serde::Serialize;

use super::entropy::{mutual_information, von_neumann_entropy};
use crate::error::Result;
use crate::exec::Execution;
use crate::linalg::binary_entropy;
use crate::model::{ClusterElements, Density4, Subsystem};
use crate::oracles::{minimize_conditional_entropy_on, GridSpec, MeasurementBasis};

/// Fast-path conditional entropy h((1 + θ)/2) with θ = max(|u - w|, |y|)/Z.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FastConditionalEntropy {
    pub value: f64,
    pub theta: f64,
}

/// Binary-entropy shortcut for the minimized conditional entropy. Kept for
/// comparison only; the measured minimum is authoritative.
pub fn min_conditional_entropy_closed(el: &ClusterElements) -> FastConditionalEntropy {
    let theta = ((el.u - el.w).abs().max(el.y.abs()) / el.z).min(1.0);
    FastConditionalEntropy { value: binary_entropy((1.0 + theta) / 2.0), theta }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DiscordParts {
    pub measured: Subsystem,
    pub mutual_information: f64,
    pub classical_correlation: f64,
    pub quantum_discord: f64,
    pub min_conditional_entropy: f64,
    pub basis: MeasurementBasis,
}

/// Discord with projective measurements on `measured`.
pub fn discord_parts(
    rho: &Density4,
    measured: Subsystem,
    grid: &GridSpec,
    exec: Execution,
) -> Result<DiscordParts> {
    let mutual = mutual_information(rho)?;
    let unmeasured = von_neumann_entropy(&rho.reduced_state(measured.other()))?;
    let min = minimize_conditional_entropy_on(rho, measured, grid, exec);
    let classical = unmeasured - min.value;
    Ok(DiscordParts {
        measured,
        mutual_information: mutual,
        classical_correlation: classical,
        quantum_discord: mutual - classical,
        min_conditional_entropy: min.value,
        basis: min.basis,
    })
}

pub fn quantum_discord_definitional(rho: &Density4) -> Result<f64> {
    Ok(discord_parts(rho, Subsystem::First, &GridSpec::default(), Execution::Sequential)?.quantum_discord)
}

pub fn classical_correlation(rho: &Density4) -> Result<f64> {
    Ok(discord_parts(rho, Subsystem::First, &GridSpec::default(), Execution::Sequential)?.classical_correlation)
}
