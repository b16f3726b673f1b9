use nalgebra::SymmetricEigen;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{self, Op2, Op4, C64};

/// Tolerance on Hermiticity and unit trace.
pub const STRUCTURE_TOL: f64 = 1e-12;
/// Eigenvalues in [-PSD_TOL, 0) are treated as roundoff and clipped to zero.
pub const PSD_TOL: f64 = 1e-10;

/// Which qubit of the pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Subsystem {
    First,
    Second,
}

impl Subsystem {
    pub fn other(self) -> Self {
        match self {
            Subsystem::First => Subsystem::Second,
            Subsystem::Second => Subsystem::First,
        }
    }
}

/// Two-qubit density operator in the product basis |00>, |01>, |10>, |11>
/// where |0> is spin up.
#[derive(Debug, Clone, PartialEq)]
pub struct Density4 {
    m: Op4,
}

/// Eigen-decomposition of a [`Density4`] with clipped eigenvalues.
#[derive(Debug, Clone)]
pub struct SpectralDecomposition {
    /// Descending, clipped at zero, summing to one.
    pub eigenvalues: [f64; 4],
    /// Columns are orthonormal eigenvectors matching `eigenvalues`.
    pub eigenvectors: Op4,
}

pub(crate) fn clip_spectrum<const N: usize>(raw: [f64; N]) -> Result<[f64; N]> {
    let mut out = raw;
    for v in out.iter_mut() {
        if *v < -PSD_TOL {
            return Err(Error::PositivityViolation(*v));
        }
        if *v < 0.0 {
            *v = 0.0;
        }
    }
    Ok(out)
}

impl Density4 {
    /// Validates Hermiticity, unit trace and positivity.
    pub fn new(m: Op4) -> Result<Self> {
        let defect = linalg::hermitian_defect(&m);
        if defect > STRUCTURE_TOL {
            return Err(Error::NotHermitian(defect));
        }
        let tr = linalg::real_trace(&m);
        if (tr - 1.0).abs() > STRUCTURE_TOL {
            return Err(Error::InvalidTrace(tr));
        }
        let min = linalg::hermitian_eigenvalues4(&m)[3];
        if min < -PSD_TOL {
            return Err(Error::PositivityViolation(min));
        }
        Ok(Self { m })
    }

    /// Builds a state from a real-symmetric non-negative weight matrix by
    /// dividing by its trace.
    pub fn from_unnormalized(m: Op4) -> Result<Self> {
        let tr = linalg::real_trace(&m);
        Self::new(m / C64::new(tr, 0.0))
    }

    pub fn matrix(&self) -> &Op4 {
        &self.m
    }

    pub fn entry(&self, r: usize, c: usize) -> C64 {
        self.m[(r, c)]
    }

    pub fn maximally_mixed() -> Self {
        Self { m: Op4::identity() * C64::new(0.25, 0.0) }
    }

    /// Product-basis projector |k><k|.
    pub fn basis_state(k: usize) -> Self {
        let mut m = Op4::zeros();
        m[(k, k)] = C64::new(1.0, 0.0);
        Self { m }
    }

    /// (|00> + |11>)/sqrt(2).
    pub fn bell_phi_plus() -> Self {
        let mut m = Op4::zeros();
        for (r, c) in [(0, 0), (0, 3), (3, 0), (3, 3)] {
            m[(r, c)] = C64::new(0.5, 0.0);
        }
        Self { m }
    }

    /// (|01> - |10>)/sqrt(2).
    pub fn singlet() -> Self {
        let mut m = Op4::zeros();
        m[(1, 1)] = C64::new(0.5, 0.0);
        m[(2, 2)] = C64::new(0.5, 0.0);
        m[(1, 2)] = C64::new(-0.5, 0.0);
        m[(2, 1)] = C64::new(-0.5, 0.0);
        Self { m }
    }

    pub fn diagonal(p: [f64; 4]) -> Result<Self> {
        let mut m = Op4::zeros();
        for (k, pk) in p.iter().enumerate() {
            m[(k, k)] = C64::new(*pk, 0.0);
        }
        Self::new(m)
    }

    pub fn spectral(&self) -> Result<SpectralDecomposition> {
        let eig = SymmetricEigen::new(self.m);
        let mut order = [0usize, 1, 2, 3];
        order.sort_by(|&a, &b| eig.eigenvalues[b].total_cmp(&eig.eigenvalues[a]));
        let raw = order.map(|k| eig.eigenvalues[k]);
        let eigenvalues = clip_spectrum(raw)?;
        let eigenvectors = Op4::from_fn(|r, c| eig.eigenvectors[(r, order[c])]);
        Ok(SpectralDecomposition { eigenvalues, eigenvectors })
    }

    /// Descending eigenvalues clipped at zero.
    pub fn eigenvalues(&self) -> Result<[f64; 4]> {
        clip_spectrum(linalg::hermitian_eigenvalues4(&self.m))
    }

    /// Partial trace keeping `which`.
    pub fn reduced_state(&self, which: Subsystem) -> Op2 {
        match which {
            Subsystem::First => linalg::trace_out_second(&self.m),
            Subsystem::Second => linalg::trace_out_first(&self.m),
        }
    }

    /// The same state with the two qubits exchanged.
    pub fn swapped(&self) -> Self {
        Self { m: linalg::swap_qubits(&self.m) }
    }

    /// Largest element-wise modulus difference.
    pub fn max_abs_diff(&self, other: &Density4) -> f64 {
        (self.m - other.m).iter().map(|z| z.norm()).fold(0.0, f64::max)
    }
}

/// Free-standing form of [`Density4::reduced_state`].
pub fn reduced_state(rho: &Density4, which: Subsystem) -> Op2 {
    rho.reduced_state(which)
}
