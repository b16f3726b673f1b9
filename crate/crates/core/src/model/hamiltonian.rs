//! First-principles construction: the cluster Hamiltonian for each nodal
//! Ising configuration, exponentiated through its spectral decomposition and
//! summed over configurations.

use nalgebra::{Matrix4, SymmetricEigen};

use super::state::Density4;
use crate::error::Result;
use crate::linalg::{identity2, kron, pauli, Op4, C64};
use crate::params::{ChainParams, IsingConfig};

/// Real-symmetric Hamiltonian of one cluster for fixed nodal spins.
pub fn cluster_hamiltonian(params: &ChainParams, config: IsingConfig) -> Matrix4<f64> {
    let id = identity2();
    let half = C64::new(0.5, 0.0);
    let s1 = pauli().map(|s| kron(&(s * half), &id));
    let s2 = pauli().map(|s| kron(&id, &(s * half)));

    let exchange: Op4 = (0..3).map(|a| s1[a] * s2[a]).sum();
    let sz_total = s1[2] + s2[2];
    let mu_sum = config.sum();
    let id4 = Op4::identity();

    let h = exchange * C64::from(params.j2)
        + sz_total * C64::from(params.j * mu_sum)
        + id4 * C64::from(params.jm * config.product())
        - (sz_total + id4 * C64::from(mu_sum / 2.0)) * C64::from(params.h);
    h.map(|z| z.re)
}

/// Unnormalized Boltzmann weight matrix Σ_config exp(-H_k/T) scaled by
/// exp(-log_scale), together with that scale.
pub(crate) fn boltzmann_weights(params: &ChainParams) -> Result<(Matrix4<f64>, f64)> {
    params.validate()?;
    let spectra: Vec<SymmetricEigen<f64, nalgebra::U4>> = IsingConfig::ALL
        .iter()
        .map(|&c| SymmetricEigen::new(cluster_hamiltonian(params, c)))
        .collect();
    let e_min = spectra
        .iter()
        .flat_map(|s| s.eigenvalues.iter().copied())
        .fold(f64::INFINITY, f64::min);

    let mut acc = Matrix4::<f64>::zeros();
    for s in &spectra {
        for k in 0..4 {
            let weight = (-(s.eigenvalues[k] - e_min) / params.t).exp();
            if weight == 0.0 {
                continue;
            }
            let v = s.eigenvectors.column(k);
            acc += v * v.transpose() * weight;
        }
    }
    // Eigenvectors of degenerate levels may mix; symmetrize the roundoff.
    let acc = (acc + acc.transpose()) * 0.5;
    Ok((acc, -e_min / params.t))
}

/// Thermal reduced state of the two Heisenberg spins, traced over the
/// nodal Ising spins.
pub fn thermal_state_exact(params: &ChainParams) -> Result<Density4> {
    let (w, _) = boltzmann_weights(params)?;
    Density4::from_unnormalized(w.map(C64::from))
}
