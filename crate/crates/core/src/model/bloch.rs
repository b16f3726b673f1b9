use nalgebra::{Matrix3, Vector3};
use serde::Serialize;

use super::state::Density4;
use crate::error::{Error, Result};
use crate::linalg::{identity2, kron, pauli, Op4, C64};

/// Default structural tolerance for [`bell_diagonal_coeffs`].
pub const BELL_TOL: f64 = 1e-10;

/// ρ = (1/4)[I⊗I + Σ x_i σ_i⊗I + Σ y_i I⊗σ_i + Σ r_ij σ_i⊗σ_j].
#[derive(Debug, Clone, PartialEq)]
pub struct BlochDecomposition {
    pub x: Vector3<f64>,
    pub yvec: Vector3<f64>,
    pub r: Matrix3<f64>,
}

impl BlochDecomposition {
    pub fn reconstruct(&self) -> Op4 {
        let id = identity2();
        let s = pauli();
        let mut m = Op4::identity();
        for i in 0..3 {
            m += kron(&s[i], &id) * C64::from(self.x[i]);
            m += kron(&id, &s[i]) * C64::from(self.yvec[i]);
            for j in 0..3 {
                m += kron(&s[i], &s[j]) * C64::from(self.r[(i, j)]);
            }
        }
        m * C64::from(0.25)
    }

    /// The same decomposition with the roles of the two qubits exchanged.
    pub fn swapped(&self) -> Self {
        Self { x: self.yvec, yvec: self.x, r: self.r.transpose() }
    }
}

fn expectation(rho: &Op4, op: &Op4) -> f64 {
    (rho * op).trace().re
}

pub fn bloch_decompose(rho: &Density4) -> BlochDecomposition {
    let id = identity2();
    let s = pauli();
    let m = rho.matrix();
    let x = Vector3::from_fn(|i, _| expectation(m, &kron(&s[i], &id)));
    let yvec = Vector3::from_fn(|i, _| expectation(m, &kron(&id, &s[i])));
    let r = Matrix3::from_fn(|i, j| expectation(m, &kron(&s[i], &s[j])));
    BlochDecomposition { x, yvec, r }
}

/// Correlation functions of a Bell-diagonal state,
/// ρ = (1/4)[I⊗I + Σ c_i σ_i⊗σ_i].
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BellCoeffs {
    pub c1: f64,
    pub c2: f64,
    pub c3: f64,
}

impl BellCoeffs {
    pub fn as_array(&self) -> [f64; 3] {
        [self.c1, self.c2, self.c3]
    }
}

/// Reads (r_11, r_22, r_33) when both local Bloch vectors and every
/// off-diagonal correlation are below `tol`.
pub fn bell_diagonal_coeffs(rho: &Density4, tol: f64) -> Result<BellCoeffs> {
    let b = bloch_decompose(rho);
    let mut residual = b.x.norm().max(b.yvec.norm());
    for i in 0..3 {
        for j in 0..3 {
            if i != j {
                residual = residual.max(b.r[(i, j)].abs());
            }
        }
    }
    if residual > tol {
        return Err(Error::NotBellDiagonal(residual));
    }
    Ok(BellCoeffs { c1: b.r[(0, 0)], c2: b.r[(1, 1)], c3: b.r[(2, 2)] })
}
