//! Small fixed-size complex matrix helpers for one- and two-qubit operators.

use nalgebra::{Matrix2, Matrix4, SymmetricEigen};
use num_complex::Complex64;

pub type C64 = Complex64;
pub type Op2 = Matrix2<C64>;
pub type Op4 = Matrix4<C64>;

const ZERO: C64 = C64::new(0.0, 0.0);
const ONE: C64 = C64::new(1.0, 0.0);
const I: C64 = C64::new(0.0, 1.0);

pub fn identity2() -> Op2 {
    Op2::identity()
}

/// Pauli matrices in the order x, y, z.
pub fn pauli() -> [Op2; 3] {
    [
        Op2::new(ZERO, ONE, ONE, ZERO),
        Op2::new(ZERO, -I, I, ZERO),
        Op2::new(ONE, ZERO, ZERO, -ONE),
    ]
}

pub fn kron(a: &Op2, b: &Op2) -> Op4 {
    Op4::from_fn(|r, c| a[(r / 2, c / 2)] * b[(r % 2, c % 2)])
}

/// Trace over the second qubit.
pub fn trace_out_second(m: &Op4) -> Op2 {
    Op2::from_fn(|r, c| m[(2 * r, 2 * c)] + m[(2 * r + 1, 2 * c + 1)])
}

/// Trace over the first qubit.
pub fn trace_out_first(m: &Op4) -> Op2 {
    Op2::from_fn(|r, c| m[(r, c)] + m[(r + 2, c + 2)])
}

/// Swaps the two qubits: (A ⊗ B) -> (B ⊗ A).
pub fn swap_qubits(m: &Op4) -> Op4 {
    let perm = |i: usize| ((i & 1) << 1) | (i >> 1);
    Op4::from_fn(|r, c| m[(perm(r), perm(c))])
}

pub fn real_trace(m: &Op4) -> f64 {
    m.trace().re
}

/// Largest |m_ij - conj(m_ji)|.
pub fn hermitian_defect<const N: usize>(
    m: &nalgebra::SMatrix<C64, N, N>,
) -> f64 {
    let mut worst = 0.0_f64;
    for r in 0..N {
        for c in r..N {
            worst = worst.max((m[(r, c)] - m[(c, r)].conj()).norm());
        }
    }
    worst
}

/// Eigenvalues of a Hermitian 4x4 operator, sorted descending.
pub fn hermitian_eigenvalues4(m: &Op4) -> [f64; 4] {
    let eig = SymmetricEigen::new(*m);
    let mut vals = [0.0; 4];
    for (v, e) in vals.iter_mut().zip(eig.eigenvalues.iter()) {
        *v = *e;
    }
    vals.sort_by(|a, b| b.total_cmp(a));
    vals
}

/// Eigenvalues of a Hermitian 2x2 operator in closed form, descending.
pub fn hermitian_eigenvalues2(m: &Op2) -> [f64; 2] {
    let a = m[(0, 0)].re;
    let d = m[(1, 1)].re;
    let b = m[(0, 1)];
    let mean = 0.5 * (a + d);
    let half_gap = (0.25 * (a - d) * (a - d) + b.norm_sqr()).sqrt();
    [mean + half_gap, mean - half_gap]
}

/// Trace norm of a Hermitian operator (sum of absolute eigenvalues).
pub fn trace_norm_hermitian(m: &Op4) -> f64 {
    SymmetricEigen::new(*m).eigenvalues.iter().map(|e| e.abs()).sum()
}

/// Squared Hilbert-Schmidt norm Tr(M†M).
pub fn hs_norm_sqr(m: &Op4) -> f64 {
    m.iter().map(|z| z.norm_sqr()).sum()
}

/// Shannon entropy in bits of a set of non-negative weights; 0·log 0 = 0.
pub fn shannon_bits(weights: &[f64]) -> f64 {
    weights
        .iter()
        .filter(|&&p| p > 0.0)
        .map(|&p| -p * p.log2())
        .sum()
}

/// Binary entropy h(p) in bits.
pub fn binary_entropy(p: f64) -> f64 {
    shannon_bits(&[p, 1.0 - p])
}

/// Numerically stable ln(Σ e^{a_i}).
pub fn log_sum_exp(terms: &[f64]) -> f64 {
    let max = terms.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if max == f64::NEG_INFINITY {
        return max;
    }
    max + terms.iter().map(|a| (a - max).exp()).sum::<f64>().ln()
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn pauli_algebra() {
        let [x, y, z] = pauli();
        let id = identity2();
        for s in [x, y, z] {
            assert_abs_diff_eq!((s * s - id).norm(), 0.0);
        }
        assert_abs_diff_eq!((x * y - z * I).norm(), 0.0);
    }

    #[test]
    fn partial_traces_of_product() {
        let [x, _, z] = pauli();
        let a = (identity2() + z) * C64::new(0.5, 0.0);
        let b = (identity2() + x) * C64::new(0.5, 0.0);
        let ab = kron(&a, &b);
        assert_abs_diff_eq!((trace_out_second(&ab) - a).norm(), 0.0, epsilon = 1e-15);
        assert_abs_diff_eq!((trace_out_first(&ab) - b).norm(), 0.0, epsilon = 1e-15);
        assert_abs_diff_eq!((swap_qubits(&ab) - kron(&b, &a)).norm(), 0.0, epsilon = 1e-15);
    }

    #[test]
    fn closed_form_2x2_spectrum() {
        let [x, y, _] = pauli();
        let m = x * C64::new(0.3, 0.0) + y * C64::new(0.4, 0.0);
        let e = hermitian_eigenvalues2(&m);
        assert_abs_diff_eq!(e[0], 0.5, epsilon = 1e-15);
        assert_abs_diff_eq!(e[1], -0.5, epsilon = 1e-15);
    }

    #[test]
    fn log_sum_exp_handles_large_exponents() {
        let v = log_sum_exp(&[1000.0, 1000.0]);
        assert_abs_diff_eq!(v, 1000.0 + 2f64.ln(), epsilon = 1e-12);
        assert_eq!(log_sum_exp(&[f64::NEG_INFINITY]), f64::NEG_INFINITY);
    }

    #[test]
    fn entropies() {
        assert_abs_diff_eq!(binary_entropy(0.5), 1.0);
        assert_eq!(binary_entropy(1.0), 0.0);
        assert_abs_diff_eq!(shannon_bits(&[0.25; 4]), 2.0);
    }
}
