use std::f64::consts::{FRAC_PI_2, PI};

use nalgebra::Vector3;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exec::{argmin_indexed, Execution};
use crate::linalg::{identity2, pauli, shannon_bits, Op2, C64};
use crate::model::{bloch_decompose, BlochDecomposition, Density4, Subsystem};

/// Discretization of the measurement-axis search.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GridSpec {
    /// Cells over [0, π/2]; the opposite hemisphere is mirrored.
    pub theta_steps: usize,
    /// Cells over [0, π).
    pub phi_steps: usize,
    pub refine_iters: usize,
    pub refine_shrink: f64,
}

impl Default for GridSpec {
    fn default() -> Self {
        Self { theta_steps: 64, phi_steps: 128, refine_iters: 40, refine_shrink: 0.5 }
    }
}

impl GridSpec {
    pub fn validate(&self) -> Result<()> {
        if self.theta_steps < 8 || self.phi_steps < 8 {
            return Err(Error::InvalidGrid(format!(
                "steps must be at least 8 (theta {}, phi {})",
                self.theta_steps, self.phi_steps
            )));
        }
        if !(self.refine_shrink > 0.0 && self.refine_shrink < 1.0) {
            return Err(Error::InvalidGrid(format!(
                "refine_shrink must lie in (0, 1), got {}",
                self.refine_shrink
            )));
        }
        Ok(())
    }

    /// Same grid at twice the angular resolution.
    pub fn doubled(&self) -> Self {
        Self { theta_steps: 2 * self.theta_steps, phi_steps: 2 * self.phi_steps, ..*self }
    }

    pub(crate) fn theta_step(&self) -> f64 {
        FRAC_PI_2 / self.theta_steps as f64
    }

    pub(crate) fn phi_step(&self) -> f64 {
        PI / self.phi_steps as f64
    }

    /// Number of coarse axes: θ over [0, π] and φ over [0, π).
    pub(crate) fn len(&self) -> usize {
        (2 * self.theta_steps + 1) * self.phi_steps
    }

    /// Angles of coarse cell `k`, ordered by θ then φ.
    pub(crate) fn angles(&self, k: usize) -> (f64, f64) {
        let (i, j) = (k / self.phi_steps, k % self.phi_steps);
        (i as f64 * self.theta_step(), j as f64 * self.phi_step())
    }
}

/// Rank-one projective measurement {Π₊, Π₋} with Π± = (I ± n·σ)/2.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MeasurementBasis {
    pub axis: Vector3<f64>,
}

impl MeasurementBasis {
    pub fn from_angles(theta: f64, phi: f64) -> Self {
        Self {
            axis: Vector3::new(theta.sin() * phi.cos(), theta.sin() * phi.sin(), theta.cos()),
        }
    }

    pub fn projectors(&self) -> [Op2; 2] {
        let s = pauli();
        let n_sigma: Op2 = (0..3).map(|i| s[i] * C64::from(self.axis[i])).sum();
        let half = C64::from(0.5);
        [(identity2() + n_sigma) * half, (identity2() - n_sigma) * half]
    }
}

/// Σ_k p_k S(ρ_{other|k}) for the measurement along `axis` on `side`.
///
/// The unnormalized post-measurement operators have spectra
/// ((1 ± n·a) ± |b ± Rᵀn|)/4, so the average conditional entropy is the
/// Shannon entropy of those four weights minus that of the outcome
/// probabilities.
pub fn conditional_entropy(bloch: &BlochDecomposition, side: Subsystem, axis: &Vector3<f64>) -> f64 {
    let local = match side {
        Subsystem::First => bloch.clone(),
        Subsystem::Second => bloch.swapped(),
    };
    let rn = local.r.transpose() * axis;
    let na = axis.dot(&local.x);
    let mut weights = [0.0; 4];
    let mut probs = [0.0; 2];
    for (k, sign) in [1.0, -1.0].into_iter().enumerate() {
        let q = 1.0 + sign * na;
        let len = (local.yvec + rn * sign).norm();
        weights[2 * k] = ((q + len) / 4.0).max(0.0);
        weights[2 * k + 1] = ((q - len) / 4.0).max(0.0);
        probs[k] = (q / 2.0).max(0.0);
    }
    shannon_bits(&weights) - shannon_bits(&probs)
}

/// Minimum over projective measurements on `side` of the average entropy
/// of the other qubit, with the minimizing axis.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ConditionalMinimum {
    pub value: f64,
    pub basis: MeasurementBasis,
    pub theta: f64,
    pub phi: f64,
}

pub fn minimize_conditional_entropy(rho: &Density4, grid: &GridSpec) -> (f64, MeasurementBasis) {
    let m = minimize_conditional_entropy_on(rho, Subsystem::First, grid, Execution::Sequential);
    (m.value, m.basis)
}

/// Coarse grid over the sphere followed by a shrinking 3x3 pattern search
/// around the best cell. Ties go to the lowest θ, then the lowest φ.
pub fn minimize_conditional_entropy_on(
    rho: &Density4,
    side: Subsystem,
    grid: &GridSpec,
    exec: Execution,
) -> ConditionalMinimum {
    let bloch = bloch_decompose(rho);
    let f = |theta: f64, phi: f64| {
        conditional_entropy(&bloch, side, &MeasurementBasis::from_angles(theta, phi).axis)
    };

    let (best_k, mut best) = argmin_indexed(exec, grid.len(), |k| {
        let (t, p) = grid.angles(k);
        f(t, p)
    })
    .expect("grid is never empty");
    let (mut theta, mut phi) = grid.angles(best_k);

    let mut dt = grid.theta_step();
    let mut dp = grid.phi_step();
    for _ in 0..grid.refine_iters {
        let (mut next_t, mut next_p) = (theta, phi);
        for a in [-1.0, 0.0, 1.0] {
            for b in [-1.0, 0.0, 1.0] {
                if a == 0.0 && b == 0.0 {
                    continue;
                }
                let (t, p) = (theta + a * dt, phi + b * dp);
                let v = f(t, p);
                if v < best {
                    best = v;
                    next_t = t;
                    next_p = p;
                }
            }
        }
        theta = next_t;
        phi = next_p;
        dt *= grid.refine_shrink;
        dp *= grid.refine_shrink;
    }

    ConditionalMinimum { value: best, basis: MeasurementBasis::from_angles(theta, phi), theta, phi }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{hermitian_eigenvalues2, kron, shannon_bits};
    use crate::model::thermal_state_exact;
    use crate::params::ChainParams;
    use approx::assert_abs_diff_eq;

    /// Post-measurement states built from explicit projectors and partial traces.
    fn conditional_entropy_by_matrices(rho: &Density4, axis: Vector3<f64>) -> f64 {
        let basis = MeasurementBasis { axis };
        let mut total = 0.0;
        for proj in basis.projectors() {
            let lifted = kron(&proj, &identity2());
            let post = crate::linalg::trace_out_first(&(lifted * rho.matrix() * lifted));
            let p = post.trace().re;
            if p <= 0.0 {
                continue;
            }
            let ev = hermitian_eigenvalues2(&(post / C64::from(p)));
            total += p * shannon_bits(&[ev[0].max(0.0), ev[1].max(0.0)]);
        }
        total
    }

    #[test]
    fn grid_validation() {
        assert!(GridSpec::default().validate().is_ok());
        assert!(GridSpec { theta_steps: 4, ..GridSpec::default() }.validate().is_err());
        assert!(GridSpec { refine_shrink: 1.0, ..GridSpec::default() }.validate().is_err());
    }

    #[test]
    fn projectors_are_complete_and_idempotent() {
        let b = MeasurementBasis::from_angles(0.7, 2.1);
        let [p, m] = b.projectors();
        assert_abs_diff_eq!((p + m - identity2()).norm(), 0.0, epsilon = 1e-15);
        assert_abs_diff_eq!((p * p - p).norm(), 0.0, epsilon = 1e-15);
        assert_abs_diff_eq!(b.axis.norm(), 1.0, epsilon = 1e-15);
    }

    #[test]
    fn bloch_shortcut_matches_explicit_partial_trace() {
        let rho = thermal_state_exact(&ChainParams::new(0.8, 1.3, 0.4, 0.6, 0.45)).unwrap();
        let bloch = bloch_decompose(&rho);
        for (t, p) in [(0.0, 0.0), (0.3, 1.0), (1.2, 2.5), (FRAC_PI_2, 0.0), (2.8, 0.4)] {
            let axis = MeasurementBasis::from_angles(t, p).axis;
            assert_abs_diff_eq!(
                conditional_entropy(&bloch, Subsystem::First, &axis),
                conditional_entropy_by_matrices(&rho, axis),
                epsilon = 1e-12
            );
        }
    }

    #[test]
    fn maximally_mixed_gives_one_bit() {
        let (v, _) = minimize_conditional_entropy(&Density4::maximally_mixed(), &GridSpec::default());
        assert_abs_diff_eq!(v, 1.0, epsilon = 1e-12);
    }

    #[test]
    fn bell_state_gives_zero() {
        let (v, _) = minimize_conditional_entropy(&Density4::bell_phi_plus(), &GridSpec::default());
        assert_abs_diff_eq!(v, 0.0, epsilon = 1e-12);
    }

    #[test]
    fn converged_under_grid_doubling() {
        let rho = thermal_state_exact(&ChainParams::new(1.0, 1.0, 0.0, 0.0, 0.5)).unwrap();
        let g = GridSpec::default();
        let (a, _) = minimize_conditional_entropy(&rho, &g);
        let (b, _) = minimize_conditional_entropy(&rho, &g.doubled());
        assert_abs_diff_eq!(a, b, epsilon = 1e-8);
    }

    #[test]
    fn parallel_and_sequential_agree_bitwise() {
        let rho = thermal_state_exact(&ChainParams::new(0.3, 1.0, 1.0, 0.7, 0.3)).unwrap();
        let g = GridSpec::default();
        let s = minimize_conditional_entropy_on(&rho, Subsystem::First, &g, Execution::Sequential);
        let p = minimize_conditional_entropy_on(&rho, Subsystem::First, &g, Execution::Parallel);
        assert_eq!(s.value.to_bits(), p.value.to_bits());
        assert_eq!(s.basis, p.basis);
    }
}
