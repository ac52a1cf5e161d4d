//! Dense complex matrix helpers shared by the solvers.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::error::{Error, Result};

pub type C64 = Complex64;
pub type Mat = DMatrix<C64>;

pub const I: C64 = C64 { re: 0.0, im: 1.0 };

#[inline]
pub fn c(re: f64) -> C64 {
    C64::new(re, 0.0)
}

pub fn commutator(a: &Mat, b: &Mat) -> Mat {
    a * b - b * a
}

pub fn max_abs(m: &Mat) -> f64 {
    m.iter().fold(0.0, |acc, z| acc.max(z.norm()))
}

/// `max |M - M^dagger|`.
pub fn hermitian_defect(m: &Mat) -> f64 {
    let n = m.nrows();
    let mut worst: f64 = 0.0;
    for r in 0..n {
        for col in r..n {
            worst = worst.max((m[(r, col)] - m[(col, r)].conj()).norm());
        }
    }
    worst
}

pub fn symmetrize(m: &Mat) -> Mat {
    (m + m.adjoint()).scale(0.5)
}

pub fn is_finite(m: &Mat) -> bool {
    m.iter().all(|z| z.re.is_finite() && z.im.is_finite())
}

pub fn is_diagonal(m: &Mat) -> bool {
    let n = m.nrows();
    (0..n).all(|r| (0..n).all(|col| r == col || m[(r, col)] == C64::new(0.0, 0.0)))
}

pub fn frobenius(m: &Mat) -> f64 {
    m.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

/// Eigen-decomposition of a Hermitian matrix, eigenvalues ascending with
/// matching eigenvector columns.
pub fn eigh(m: &Mat) -> Result<(Vec<f64>, Mat)> {
    if !is_finite(m) {
        return Err(Error::NonFinite("eigendecomposition input"));
    }
    let eig = nalgebra::SymmetricEigen::new(symmetrize(m));
    let n = m.nrows();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
    let values = order.iter().map(|&k| eig.eigenvalues[k]).collect();
    let vectors = Mat::from_fn(n, n, |r, col| eig.eigenvectors[(r, order[col])]);
    Ok((values, vectors))
}

/// Principal inverse square root of a Hermitian positive-definite matrix.
pub fn inv_sqrt_hpd(m: &Mat, floor: f64) -> Result<Mat> {
    let (values, vectors) = eigh(m)?;
    let min = values.iter().copied().fold(f64::INFINITY, f64::min);
    if min < floor {
        return Err(Error::IllConditionedPartition { min_eigenvalue: min });
    }
    let scale = DVector::from_iterator(values.len(), values.iter().map(|v| c(1.0 / v.sqrt())));
    let scaled = Mat::from_fn(m.nrows(), m.ncols(), |r, col| vectors[(r, col)] * scale[col]);
    Ok(symmetrize(&(scaled * vectors.adjoint())))
}

/// Matrix exponential `exp(i * t * h)` for Hermitian `h`.
pub fn expi_hermitian(h: &Mat, t: f64) -> Result<Mat> {
    let (values, vectors) = eigh(h)?;
    let n = h.nrows();
    let phased = Mat::from_fn(n, n, |r, col| vectors[(r, col)] * (I * t * values[col]).exp());
    Ok(phased * vectors.adjoint())
}

pub fn submatrix(m: &Mat, rows: &[usize], cols: &[usize]) -> Mat {
    Mat::from_fn(rows.len(), cols.len(), |r, col| m[(rows[r], cols[col])])
}

pub fn diag_real(m: &Mat) -> Vec<f64> {
    (0..m.nrows()).map(|k| m[(k, k)].re).collect()
}

pub fn from_real_diagonal(values: &[f64]) -> Mat {
    let n = values.len();
    Mat::from_fn(n, n, |r, col| if r == col { c(values[r]) } else { C64::new(0.0, 0.0) })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn eigh_sorts_ascending_and_reconstructs() {
        let m = Mat::from_row_slice(
            3,
            3,
            &[c(2.0), C64::new(0.5, 0.1), c(0.0), C64::new(0.5, -0.1), c(-1.0), c(0.3), c(0.0), c(0.3), c(0.5)],
        );
        let (values, vectors) = eigh(&m).unwrap();
        assert!(values.windows(2).all(|w| w[0] <= w[1]));
        let rebuilt = &vectors * from_real_diagonal(&values) * vectors.adjoint();
        assert!(max_abs(&(rebuilt - m)) < 1e-13);
    }

    #[test]
    fn inverse_sqrt_squares_to_inverse() {
        let m = Mat::from_row_slice(2, 2, &[c(2.0), C64::new(0.3, 0.4), C64::new(0.3, -0.4), c(1.0)]);
        let r = inv_sqrt_hpd(&m, 1e-12).unwrap();
        let should_be_identity = &r * &m * &r;
        assert!(max_abs(&(should_be_identity - Mat::identity(2, 2))) < 1e-13);
    }

    #[test]
    fn inverse_sqrt_rejects_singular() {
        let m = from_real_diagonal(&[1.0, 0.0]);
        assert!(matches!(inv_sqrt_hpd(&m, 1e-12), Err(Error::IllConditionedPartition { .. })));
    }
}
