//! Small dense complex linear algebra used by the oracles.

use nalgebra::DMatrix;
use num_complex::Complex64;

pub type CMatrix = DMatrix<Complex64>;

pub const ONE: Complex64 = Complex64::new(1.0, 0.0);
pub const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// `|<A, B>| / (|A| |B|)` in the Frobenius inner product; 1 iff `A ∝ B`.
///
/// Two zero matrices count as identical; a zero against a nonzero matrix scores 0.
pub fn fidelity(a: &CMatrix, b: &CMatrix) -> f64 {
    assert_eq!(a.shape(), b.shape(), "fidelity of differently shaped matrices");
    let na = a.norm();
    let nb = b.norm();
    if na == 0.0 || nb == 0.0 {
        return if na == nb { 1.0 } else { 0.0 };
    }
    let inner: Complex64 = a.iter().zip(b.iter()).map(|(x, y)| x.conj() * y).sum();
    inner.norm() / (na * nb)
}

/// The scalar `c` minimizing `|c A - B|`, or `None` when `A = 0`.
pub fn best_scalar(a: &CMatrix, b: &CMatrix) -> Option<Complex64> {
    let na2 = a.norm_squared();
    if na2 == 0.0 {
        return None;
    }
    let inner: Complex64 = a.iter().zip(b.iter()).map(|(x, y)| x.conj() * y).sum();
    Some(inner / na2)
}

pub fn max_abs(m: &CMatrix) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

/// `max |U†U - I|`.
pub fn unitarity_defect(u: &CMatrix) -> f64 {
    let g = u.adjoint() * u;
    max_abs(&(g - CMatrix::identity(u.ncols(), u.ncols())))
}

/// Hadamard on every one of `n` wires.
pub fn hadamard_all(n: usize) -> CMatrix {
    let dim = 1usize << n;
    let s = (dim as f64).sqrt().recip();
    CMatrix::from_fn(dim, dim, |r, c| {
        let sign = if (r & c).count_ones() % 2 == 0 { 1.0 } else { -1.0 };
        Complex64::new(sign * s, 0.0)
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fidelity_ignores_scalars() {
        let a = hadamard_all(2);
        let b = a.map(|z| z * Complex64::new(0.0, -3.0));
        assert!((fidelity(&a, &b) - 1.0).abs() < 1e-14);
        let c = CMatrix::identity(4, 4);
        assert!(fidelity(&a, &c) < 0.9);
        assert_eq!(fidelity(&CMatrix::zeros(2, 2), &CMatrix::zeros(2, 2)), 1.0);
    }

    #[test]
    fn hadamards_are_unitary() {
        for n in 0..4 {
            assert!(unitarity_defect(&hadamard_all(n)) < 1e-14);
        }
        let s = best_scalar(&hadamard_all(1), &hadamard_all(1).map(|z| z * 2.0)).unwrap();
        assert!((s - Complex64::new(2.0, 0.0)).norm() < 1e-14);
    }
}
