use nalgebra::DMatrix;
use num_complex::Complex64;

pub(crate) type CMatrix = DMatrix<Complex64>;

/// `(A + A^*) / 2`.
pub(crate) fn hermitian_part(a: &CMatrix) -> CMatrix {
    (a + a.adjoint()) * Complex64::from(0.5)
}

/// Ascending eigenvalues of the Hermitian part of `a`.
pub(crate) fn hermitian_eigenvalues(a: &CMatrix) -> Vec<f64> {
    if a.nrows() == 0 {
        return Vec::new();
    }
    let mut eig: Vec<f64> = hermitian_part(a)
        .symmetric_eigenvalues()
        .iter()
        .copied()
        .collect();
    eig.sort_by(f64::total_cmp);
    eig
}

pub(crate) fn frobenius(a: &CMatrix) -> f64 {
    a.iter().map(Complex64::norm_sqr).sum::<f64>().sqrt()
}

pub(crate) fn max_abs(a: &CMatrix) -> f64 {
    a.iter().map(|c| c.norm()).fold(0.0, f64::max)
}

pub(crate) fn max_abs_diff(a: &CMatrix, b: &CMatrix) -> f64 {
    assert_eq!(a.shape(), b.shape());
    a.iter()
        .zip(b.iter())
        .map(|(x, y)| (x - y).norm())
        .fold(0.0, f64::max)
}
