use crate::error::Result;
use crate::linalg::{hermitian_eigenvalues2, shannon_bits, Op2};
use crate::model::{clip_spectrum, Density4, Subsystem};

/// Operators whose von Neumann entropy can be taken.
pub trait Spectrum {
    /// Eigenvalues clipped at zero; errors on a genuinely negative one.
    fn clipped_spectrum(&self) -> Result<Vec<f64>>;
}

impl Spectrum for Density4 {
    fn clipped_spectrum(&self) -> Result<Vec<f64>> {
        Ok(self.eigenvalues()?.to_vec())
    }
}

impl Spectrum for Op2 {
    fn clipped_spectrum(&self) -> Result<Vec<f64>> {
        Ok(clip_spectrum(hermitian_eigenvalues2(self))?.to_vec())
    }
}

/// -Σ λ log₂ λ.
pub fn von_neumann_entropy<S: Spectrum + ?Sized>(rho: &S) -> Result<f64> {
    Ok(shannon_bits(&rho.clipped_spectrum()?))
}

/// S(ρ_A) + S(ρ_B) - S(ρ).
pub fn mutual_information(rho: &Density4) -> Result<f64> {
    let sa = von_neumann_entropy(&rho.reduced_state(Subsystem::First))?;
    let sb = von_neumann_entropy(&rho.reduced_state(Subsystem::Second))?;
    Ok(sa + sb - von_neumann_entropy(rho)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn entropy_examples() {
        assert_abs_diff_eq!(von_neumann_entropy(&Density4::basis_state(0)).unwrap(), 0.0);
        assert_abs_diff_eq!(von_neumann_entropy(&Density4::maximally_mixed()).unwrap(), 2.0, epsilon = 1e-14);
        let half = Density4::diagonal([0.5, 0.5, 0.0, 0.0]).unwrap();
        assert_abs_diff_eq!(von_neumann_entropy(&half).unwrap(), 1.0, epsilon = 1e-14);
        let qubit = Op2::identity() * crate::linalg::C64::from(0.5);
        assert_abs_diff_eq!(von_neumann_entropy(&qubit).unwrap(), 1.0, epsilon = 1e-14);
    }

    #[test]
    fn mutual_information_examples() {
        assert_abs_diff_eq!(mutual_information(&Density4::maximally_mixed()).unwrap(), 0.0, epsilon = 1e-14);
        assert_abs_diff_eq!(mutual_information(&Density4::bell_phi_plus()).unwrap(), 2.0, epsilon = 1e-12);
    }
}
