use crate::error::Result;
use crate::linalg::{kron, pauli, Op4, C64};
use crate::model::{ClusterElements, Density4};

/// (2/Z) max(|y| - sqrt(uv), 0) for the diamond X-state.
pub fn concurrence_closed_form(el: &ClusterElements) -> f64 {
    (2.0 / el.z * (el.y.abs() - (el.u * el.v).sqrt())).max(0.0)
}

/// Wootters concurrence of an arbitrary two-qubit state.
///
/// The square roots of the eigenvalues of ρ(σy⊗σy)ρ*(σy⊗σy) are taken as the
/// singular values of √ρ·√ρ̃, which keeps near-zero eigenvalues from losing
/// half their digits to a square root.
pub fn concurrence_wootters(rho: &Density4) -> Result<f64> {
    let spec = rho.spectral()?;
    let v = &spec.eigenvectors;
    let sqrt_diag = Op4::from_diagonal(&nalgebra::Vector4::from_fn(|i, _| C64::from(spec.eigenvalues[i].sqrt())));
    let sqrt_rho = v * sqrt_diag * v.adjoint();

    let sy = pauli()[1];
    let flip = kron(&sy, &sy);
    let sqrt_tilde = flip * sqrt_rho.conjugate() * flip;

    let mut s: Vec<f64> = (sqrt_rho * sqrt_tilde).singular_values().iter().copied().collect();
    s.sort_by(|a, b| b.total_cmp(a));
    Ok((s[0] - s[1] - s[2] - s[3]).max(0.0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{boltzmann_elements, thermal_state_exact};
    use crate::params::ChainParams;
    use approx::assert_abs_diff_eq;

    #[test]
    fn reference_states() {
        assert_abs_diff_eq!(concurrence_wootters(&Density4::bell_phi_plus()).unwrap(), 1.0, epsilon = 1e-12);
        assert_abs_diff_eq!(concurrence_wootters(&Density4::singlet()).unwrap(), 1.0, epsilon = 1e-12);
        assert_eq!(concurrence_wootters(&Density4::maximally_mixed()).unwrap(), 0.0);
    }

    #[test]
    fn no_exchange_no_entanglement() {
        let el = boltzmann_elements(&ChainParams::new(1.0, 0.0, 0.0, 0.0, 0.3)).unwrap();
        assert_eq!(concurrence_closed_form(&el), 0.0);
    }

    #[test]
    fn dip_at_zero_field_when_couplings_match() {
        let el = boltzmann_elements(&ChainParams::new(1.0, 1.0, 0.0, 0.0, 1e-3)).unwrap();
        assert_abs_diff_eq!(concurrence_closed_form(&el), 1.0 / 3.0, epsilon = 1e-3);
    }

    #[test]
    fn maximal_when_heisenberg_dominates() {
        let el = boltzmann_elements(&ChainParams::new(0.5, 1.0, 0.0, 0.0, 1e-3)).unwrap();
        assert_abs_diff_eq!(concurrence_closed_form(&el), 1.0, epsilon = 1e-3);
    }

    #[test]
    fn wootters_matches_closed_form() {
        for p in [
            ChainParams::new(1.0, 1.0, 0.0, 0.0, 0.5),
            ChainParams::new(-1.5, 2.0, 0.7, 1.2, 0.2),
            ChainParams::new(0.2, -1.0, 2.0, -3.0, 0.05),
        ] {
            let el = boltzmann_elements(&p).unwrap();
            let rho = thermal_state_exact(&p).unwrap();
            assert_abs_diff_eq!(concurrence_wootters(&rho).unwrap(), concurrence_closed_form(&el), epsilon = 1e-10);
        }
    }
}
