//! Thermal quantum correlations of the spin-1/2 Ising-Heisenberg diamond
//! chain.
//!
//! A single cluster (two Heisenberg spins between two nodal Ising spins) is
//! traced over its Ising spins to give a two-qubit X-state. On that state the
//! crate computes concurrence, quantum discord, and the Hilbert-Schmidt and
//! trace-norm geometric discords, together with brute-force oracles for each
//! closed form, parameter sweeps, threshold finders and a validation harness.
//!
//! ```
//! use diamond_core::{full_report, ChainParams};
//!
//! let report = full_report(&ChainParams::new(1.0, 1.0, 0.0, 0.0, 0.5)).unwrap();
//! assert!(report.quantum_discord.unwrap() > 0.0);
//! ```

pub mod correlations;
pub mod error;
pub mod exec;
pub mod linalg;
pub mod model;
pub mod oracles;
pub mod output;
pub mod params;
pub mod sweep;
pub mod threshold;
pub mod validate;

pub use correlations::{full_report, CorrelationReport, Measure, MeasureSet, ReportOptions, StateSource};
pub use error::{Error, Result};
pub use exec::Execution;
pub use model::{Density4, VElement};
pub use params::{ChainParams, IsingConfig};
