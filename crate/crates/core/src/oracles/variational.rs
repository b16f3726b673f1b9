//! Direct searches for the closest classical-quantum state.
//!
//! The ansatz ρ_c = p Π₊⊗ρ₁ + (1 - p) Π₋⊗ρ₂ is optimized by a compass
//! search over (θ, φ, p, b₁, b₂), started from the best few dephased states
//! of a coarse axis grid. Results are upper bounds on the true minimum.

use nalgebra::Vector3;
use serde::Serialize;

use super::measurement::{GridSpec, MeasurementBasis};
use crate::exec::{map_indexed, Execution};
use crate::linalg::{hs_norm_sqr, identity2, kron, pauli, trace_norm_hermitian, Op2, Op4, C64};
use crate::model::{bloch_decompose, BlochDecomposition, Density4};

/// p Π₊⊗(I + b₁·σ)/2 + (1 - p) Π₋⊗(I + b₂·σ)/2, measured on the first qubit.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ClassicalQuantumAnsatz {
    pub axis: Vector3<f64>,
    pub p: f64,
    pub bloch1: Vector3<f64>,
    pub bloch2: Vector3<f64>,
}

fn qubit_state(b: &Vector3<f64>) -> Op2 {
    let s = pauli();
    let mut m = identity2();
    for i in 0..3 {
        m += s[i] * C64::from(b[i]);
    }
    m * C64::from(0.5)
}

fn into_ball(b: Vector3<f64>) -> Vector3<f64> {
    let n = b.norm();
    if n > 1.0 {
        b / n
    } else {
        b
    }
}

impl ClassicalQuantumAnsatz {
    /// The state obtained by measuring the first qubit of `bloch` along `axis`
    /// and keeping the conditional states of the second.
    pub fn dephased(bloch: &BlochDecomposition, axis: Vector3<f64>) -> Self {
        let rn = bloch.r.transpose() * axis;
        let na = axis.dot(&bloch.x);
        let conditional = |sign: f64| {
            let q = 1.0 + sign * na;
            if q > 1e-12 {
                into_ball((bloch.yvec + rn * sign) / q)
            } else {
                Vector3::zeros()
            }
        };
        Self {
            axis,
            p: ((1.0 + na) / 2.0).clamp(0.0, 1.0),
            bloch1: conditional(1.0),
            bloch2: conditional(-1.0),
        }
    }

    pub fn to_matrix(&self) -> Op4 {
        let [plus, minus] = MeasurementBasis { axis: self.axis }.projectors();
        kron(&plus, &qubit_state(&self.bloch1)) * C64::from(self.p)
            + kron(&minus, &qubit_state(&self.bloch2)) * C64::from(1.0 - self.p)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct VariationalBudget {
    /// Coarse axis grid; only the angular steps are used.
    pub axis_grid: GridSpec,
    /// Number of best coarse axes refined by the compass search.
    pub candidates: usize,
    pub max_evals: usize,
    pub initial_step: f64,
    pub min_step: f64,
}

impl Default for VariationalBudget {
    fn default() -> Self {
        Self {
            axis_grid: GridSpec { theta_steps: 16, phi_steps: 32, ..GridSpec::default() },
            candidates: 4,
            max_evals: 20_000,
            initial_step: 0.05,
            min_step: 1e-9,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct VariationalResult {
    pub value: f64,
    pub ansatz: ClassicalQuantumAnsatz,
    /// Set when the evaluation budget ran out before the step size converged.
    pub upper_bound: bool,
    pub evals: usize,
}

#[derive(Clone, Copy)]
enum Distance {
    TraceNorm,
    HilbertSchmidtSqr,
}

impl Distance {
    fn eval(self, rho: &Op4, chi: &Op4) -> f64 {
        let d = rho - chi;
        match self {
            Distance::TraceNorm => trace_norm_hermitian(&d),
            Distance::HilbertSchmidtSqr => hs_norm_sqr(&d),
        }
    }
}

// Search coordinates: θ, φ, p, b₁ (3), b₂ (3).
type Coords = [f64; 9];

fn decode(c: &Coords) -> ClassicalQuantumAnsatz {
    ClassicalQuantumAnsatz {
        axis: MeasurementBasis::from_angles(c[0], c[1]).axis,
        p: c[2].clamp(0.0, 1.0),
        bloch1: into_ball(Vector3::new(c[3], c[4], c[5])),
        bloch2: into_ball(Vector3::new(c[6], c[7], c[8])),
    }
}

fn encode(theta: f64, phi: f64, a: &ClassicalQuantumAnsatz) -> Coords {
    [theta, phi, a.p, a.bloch1[0], a.bloch1[1], a.bloch1[2], a.bloch2[0], a.bloch2[1], a.bloch2[2]]
}

fn compass_search(
    rho: &Op4,
    dist: Distance,
    start: Coords,
    angle_steps: (f64, f64),
    budget: &VariationalBudget,
) -> (f64, Coords, usize, bool) {
    let f = |c: &Coords| dist.eval(rho, &decode(c).to_matrix());
    let mut x = start;
    let mut fx = f(&x);
    let mut evals = 1;
    let mut steps = [budget.initial_step; 9];
    steps[0] = angle_steps.0;
    steps[1] = angle_steps.1;

    loop {
        if steps.iter().all(|&s| s < budget.min_step) {
            return (fx, x, evals, false);
        }
        if evals >= budget.max_evals {
            return (fx, x, evals, true);
        }
        let mut improved = false;
        for k in 0..9 {
            for sign in [1.0, -1.0] {
                let mut trial = x;
                trial[k] += sign * steps[k];
                if k == 2 {
                    trial[2] = trial[2].clamp(0.0, 1.0);
                }
                let ft = f(&trial);
                evals += 1;
                if ft < fx {
                    x = trial;
                    fx = ft;
                    improved = true;
                    break;
                }
            }
        }
        if !improved {
            for s in steps.iter_mut() {
                *s *= 0.5;
            }
        }
    }
}

fn variational(rho: &Density4, dist: Distance, budget: &VariationalBudget, exec: Execution) -> VariationalResult {
    let bloch = bloch_decompose(rho);
    let m = rho.matrix();
    let grid = &budget.axis_grid;

    let coarse: Vec<(f64, usize)> = map_indexed(exec, grid.len(), |k| {
        let (t, p) = grid.angles(k);
        let a = ClassicalQuantumAnsatz::dephased(&bloch, MeasurementBasis::from_angles(t, p).axis);
        (dist.eval(m, &a.to_matrix()), k)
    });
    let mut order = coarse;
    order.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)));
    order.truncate(budget.candidates.max(1));

    let runs = map_indexed(exec, order.len(), |i| {
        let (t, p) = grid.angles(order[i].1);
        let start = ClassicalQuantumAnsatz::dephased(&bloch, MeasurementBasis::from_angles(t, p).axis);
        compass_search(m, dist, encode(t, p, &start), (grid.theta_step(), grid.phi_step()), budget)
    });

    let mut best: Option<VariationalResult> = None;
    for (value, coords, evals, exhausted) in runs {
        let candidate = VariationalResult { value, ansatz: decode(&coords), upper_bound: exhausted, evals };
        if best.is_none_or(|b| value < b.value) {
            best = Some(candidate);
        }
    }
    best.expect("at least one candidate")
}

/// Trace-norm distance to the closest classical-quantum state.
pub fn gqd_1norm_variational(rho: &Density4, budget: &VariationalBudget) -> VariationalResult {
    variational(rho, Distance::TraceNorm, budget, Execution::default())
}

/// Squared Hilbert-Schmidt distance to the closest classical-quantum state.
pub fn gmqd_variational(rho: &Density4, budget: &VariationalBudget) -> VariationalResult {
    variational(rho, Distance::HilbertSchmidtSqr, budget, Execution::default())
}

pub fn gqd_1norm_variational_with(rho: &Density4, budget: &VariationalBudget, exec: Execution) -> VariationalResult {
    variational(rho, Distance::TraceNorm, budget, exec)
}

pub fn gmqd_variational_with(rho: &Density4, budget: &VariationalBudget, exec: Execution) -> VariationalResult {
    variational(rho, Distance::HilbertSchmidtSqr, budget, exec)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn ansatz_is_a_density_matrix() {
        let a = ClassicalQuantumAnsatz {
            axis: MeasurementBasis::from_angles(0.4, 1.1).axis,
            p: 0.3,
            bloch1: Vector3::new(0.2, -0.5, 0.1),
            bloch2: Vector3::new(0.0, 0.0, 1.0),
        };
        assert!(Density4::new(a.to_matrix()).is_ok());
    }

    #[test]
    fn dephasing_a_classical_state_is_identity() {
        let rho = Density4::diagonal([0.5, 0.0, 0.0, 0.5]).unwrap();
        let a = ClassicalQuantumAnsatz::dephased(&bloch_decompose(&rho), Vector3::z());
        assert!((a.to_matrix() - rho.matrix()).norm() < 1e-15);
    }

    #[test]
    fn classical_state_has_zero_distance() {
        let rho = Density4::diagonal([0.5, 0.0, 0.0, 0.5]).unwrap();
        let b = VariationalBudget::default();
        assert!(gqd_1norm_variational(&rho, &b).value < 1e-12);
        assert!(gmqd_variational(&rho, &b).value < 1e-12);
    }

    #[test]
    fn bell_state_distances() {
        let rho = Density4::bell_phi_plus();
        let b = VariationalBudget::default();
        assert_abs_diff_eq!(gqd_1norm_variational(&rho, &b).value, 1.0, epsilon = 1e-3);
        assert_abs_diff_eq!(gmqd_variational(&rho, &b).value, 0.5, epsilon = 1e-4);
    }

    #[test]
    fn maximally_mixed_is_classical() {
        let rho = Density4::maximally_mixed();
        assert!(gmqd_variational(&rho, &VariationalBudget::default()).value < 1e-12);
    }

    #[test]
    fn deterministic_across_execution_modes() {
        let rho = Density4::singlet();
        let b = VariationalBudget::default();
        let s = gqd_1norm_variational_with(&rho, &b, Execution::Sequential);
        let p = gqd_1norm_variational_with(&rho, &b, Execution::Parallel);
        assert_eq!(s.value.to_bits(), p.value.to_bits());
    }
}
