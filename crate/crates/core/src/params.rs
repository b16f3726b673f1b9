use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest admissible ratio between the cluster energy scale and the
/// temperature. Beyond it the Boltzmann exponents lose all relative
/// precision in double arithmetic.
pub const MAX_REDUCED_ENERGY: f64 = 1e8;

/// One thermodynamic point of the diamond-chain cluster (k_B = 1).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ChainParams {
    /// Ising-Heisenberg coupling.
    pub j: f64,
    /// Heisenberg dimer coupling.
    pub j2: f64,
    /// Nodal Ising-Ising coupling.
    pub jm: f64,
    /// External magnetic field.
    pub h: f64,
    /// Temperature.
    pub t: f64,
}

impl ChainParams {
    pub fn new(j: f64, j2: f64, jm: f64, h: f64, t: f64) -> Self {
        Self { j, j2, jm, h, t }
    }

    pub fn with_j(self, j: f64) -> Self {
        Self { j, ..self }
    }

    pub fn with_field(self, h: f64) -> Self {
        Self { h, ..self }
    }

    pub fn with_temperature(self, t: f64) -> Self {
        Self { t, ..self }
    }

    /// Checks finiteness and T > 0.
    pub fn validate(&self) -> Result<()> {
        for (name, value) in [
            ("J", self.j),
            ("J2", self.j2),
            ("Jm", self.jm),
            ("H", self.h),
            ("T", self.t),
        ] {
            if !value.is_finite() {
                return Err(Error::NonFiniteParam { name, value });
            }
        }
        if self.t <= 0.0 {
            return Err(Error::TemperatureTooLow(self.t));
        }
        let scale = self.j.abs() + self.j2.abs() + self.jm.abs() + self.h.abs();
        if scale / self.t > MAX_REDUCED_ENERGY {
            return Err(Error::TemperatureTooLow(self.t));
        }
        Ok(())
    }
}

/// Nodal Ising spins flanking one cluster.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IsingConfig {
    mu_k: f64,
    mu_k1: f64,
}

impl IsingConfig {
    pub const ALL: [IsingConfig; 4] = [
        IsingConfig { mu_k: 0.5, mu_k1: 0.5 },
        IsingConfig { mu_k: 0.5, mu_k1: -0.5 },
        IsingConfig { mu_k: -0.5, mu_k1: 0.5 },
        IsingConfig { mu_k: -0.5, mu_k1: -0.5 },
    ];

    pub fn new(mu_k: f64, mu_k1: f64) -> Result<Self> {
        for mu in [mu_k, mu_k1] {
            if mu != 0.5 && mu != -0.5 {
                return Err(Error::InvalidIsingSpin(mu));
            }
        }
        Ok(Self { mu_k, mu_k1 })
    }

    pub fn mu_k(&self) -> f64 {
        self.mu_k
    }

    pub fn mu_k1(&self) -> f64 {
        self.mu_k1
    }

    pub fn sum(&self) -> f64 {
        self.mu_k + self.mu_k1
    }

    pub fn product(&self) -> f64 {
        self.mu_k * self.mu_k1
    }
}
