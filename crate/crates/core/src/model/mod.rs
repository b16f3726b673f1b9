//! Thermal two-spin state of one diamond-chain cluster.
//!
//! Two independent constructions are provided: [`thermal_state_exact`]
//! diagonalizes the cluster Hamiltonian for each nodal Ising configuration,
//! while [`thermal_state_closed_form`] assembles the X-state from the
//! closed-form Boltzmann combinations u, v, w, y. The first one is the
//! reference for every downstream measure.

mod bloch;
mod elements;
mod hamiltonian;
mod state;

pub use bloch::{bell_diagonal_coeffs, bloch_decompose, BellCoeffs, BlochDecomposition, BELL_TOL};
pub use elements::{
    boltzmann_elements, boltzmann_elements_with, thermal_state_closed_form,
    thermal_state_closed_form_with, validate_constructions, x_state_matrix, ClusterElements,
    ConstructionReport, ElementDiscrepancy, VElement,
};
pub use hamiltonian::{cluster_hamiltonian, thermal_state_exact};
pub use state::{reduced_state, Density4, SpectralDecomposition, Subsystem, PSD_TOL, STRUCTURE_TOL};

pub(crate) use state::clip_spectrum;
