//! Brute-force reference computations: measurement-manifold minimization of
//! the conditional entropy and variational searches for the two geometric
//! discords. None of them calls the closed forms they are compared against.

mod measurement;
mod variational;

pub use measurement::{
    conditional_entropy, minimize_conditional_entropy, minimize_conditional_entropy_on,
    ConditionalMinimum, GridSpec, MeasurementBasis,
};
pub use variational::{
    gmqd_variational, gmqd_variational_with, gqd_1norm_variational, gqd_1norm_variational_with,
    ClassicalQuantumAnsatz, VariationalBudget, VariationalResult,
};
