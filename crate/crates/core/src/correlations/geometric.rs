use nalgebra::SymmetricEigen;

use crate::model::{bloch_decompose, BellCoeffs, Density4};

/// Hilbert-Schmidt geometric discord (1/4)(‖x‖² + ‖R‖² - k_max), where
/// k_max is the largest eigenvalue of K = x xᵀ + R Rᵀ.
pub fn gmqd(rho: &Density4) -> f64 {
    let b = bloch_decompose(rho);
    let k = b.x * b.x.transpose() + b.r * b.r.transpose();
    let k_max = SymmetricEigen::new(k).eigenvalues.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    (0.25 * (b.x.norm_squared() + b.r.norm_squared() - k_max)).max(0.0)
}

/// Trace-norm geometric discord of a Bell-diagonal state: the middle value
/// of |c₁|, |c₂|, |c₃|.
pub fn gqd_1norm_bell(c: &BellCoeffs) -> f64 {
    let mut a = c.as_array().map(f64::abs);
    a.sort_by(f64::total_cmp);
    a[1]
}
