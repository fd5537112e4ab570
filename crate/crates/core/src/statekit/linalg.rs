//! Internal dense linear algebra on complex matrices.

use nalgebra::ComplexField;
use nalgebra::{Complex, DMatrix, DVector};

use crate::error::{Error, Result};
use crate::scalar::Scalar;

pub(crate) type CMatrix<T> = DMatrix<Complex<T>>;

/// Hermitian eigendecomposition. Eigenvalues are real and returned in the
/// solver's order together with the unitary of column eigenvectors.
pub(crate) fn eigh<T: Scalar>(m: &CMatrix<T>) -> Result<(DVector<T>, CMatrix<T>)> {
    let dim = m.nrows();
    let eig = nalgebra::SymmetricEigen::try_new(m.clone(), T::default_epsilon(), 0)
        .ok_or(Error::EigensolverFailure { dim })?;
    Ok((eig.eigenvalues, eig.eigenvectors))
}

/// Hermitian eigenvalues only.
pub(crate) fn eigvalsh<T: Scalar>(m: &CMatrix<T>) -> Result<DVector<T>> {
    let dim = m.nrows();
    nalgebra::SymmetricEigen::try_new(m.clone(), T::default_epsilon(), 0)
        .map(|e| e.eigenvalues)
        .ok_or(Error::EigensolverFailure { dim })
}

/// Schatten 1-norm of a Hermitian matrix: the sum of absolute eigenvalues.
pub(crate) fn one_norm_hermitian<T: Scalar>(m: &CMatrix<T>) -> Result<T> {
    Ok(eigvalsh(m)?.iter().fold(T::zero(), |s, &v| s + v.abs()))
}

/// (M + M†)/2, removing roundoff asymmetry.
pub(crate) fn symmetrize<T: Scalar>(m: &CMatrix<T>) -> CMatrix<T> {
    let half = Complex::new(crate::scalar::real::<T>(0.5), T::zero());
    (m + m.adjoint()) * half
}

/// Largest entrywise modulus of M - M†.
pub(crate) fn asymmetry<T: Scalar>(m: &CMatrix<T>) -> T {
    let d = m - m.adjoint();
    d.iter()
        .fold(T::zero(), |acc, z| acc.max(z.modulus()))
}

/// Real part of the trace.
pub(crate) fn trace_re<T: Scalar>(m: &CMatrix<T>) -> T {
    m.trace().re
}

/// tr(A B), exact under the Hermitian convention tr(AB) real for A, B Hermitian.
pub(crate) fn trace_product<T: Scalar>(a: &CMatrix<T>, b: &CMatrix<T>) -> Complex<T> {
    // tr(AB) = sum_ij A_ij B_ji
    let mut acc = Complex::new(T::zero(), T::zero());
    for i in 0..a.nrows() {
        for j in 0..a.ncols() {
            acc += a[(i, j)] * b[(j, i)];
        }
    }
    acc
}

/// Partial trace over the factors not listed in `keep`.
///
/// `dims` are the tensor factor dimensions in row-major (big-endian) order;
/// `keep` lists factor indices to retain, in increasing order.
pub(crate) fn partial_trace_matrix<T: Scalar>(
    m: &CMatrix<T>,
    dims: &[usize],
    keep: &[usize],
) -> Result<CMatrix<T>> {
    let total: usize = dims.iter().product();
    if total != m.nrows() {
        return Err(Error::DimMismatch {
            expected: m.nrows(),
            got: total,
        });
    }
    if keep.windows(2).any(|w| w[0] >= w[1]) || keep.iter().any(|&k| k >= dims.len()) {
        return Err(Error::DimMismatch {
            expected: dims.len(),
            got: keep.len(),
        });
    }

    let kept_dims: Vec<usize> = keep.iter().map(|&k| dims[k]).collect();
    let out_dim: usize = kept_dims.iter().product::<usize>().max(1);
    let traced: Vec<usize> = (0..dims.len()).filter(|i| !keep.contains(i)).collect();
    let traced_dims: Vec<usize> = traced.iter().map(|&k| dims[k]).collect();
    let traced_total: usize = traced_dims.iter().product::<usize>().max(1);

    // Row-major strides of the full index space.
    let mut strides = vec![1usize; dims.len()];
    for i in (0..dims.len().saturating_sub(1)).rev() {
        strides[i] = strides[i + 1] * dims[i + 1];
    }

    let compose = |kept_idx: usize, traced_idx: usize| -> usize {
        let mut full = 0usize;
        let mut kq = kept_idx;
        for (pos, &f) in keep.iter().enumerate().rev() {
            let d = dims[f];
            full += (kq % d) * strides[f];
            kq /= d;
            let _ = pos;
        }
        let mut tq = traced_idx;
        for &f in traced.iter().rev() {
            let d = dims[f];
            full += (tq % d) * strides[f];
            tq /= d;
        }
        full
    };

    let mut out = CMatrix::<T>::zeros(out_dim, out_dim);
    for i in 0..out_dim {
        for j in 0..out_dim {
            let mut acc = Complex::new(T::zero(), T::zero());
            for t in 0..traced_total {
                acc += m[(compose(i, t), compose(j, t))];
            }
            out[(i, j)] = acc;
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::real;

    fn c(re: f64, im: f64) -> Complex<f64> {
        Complex::new(re, im)
    }

    #[test]
    fn eigh_reconstructs_hermitian_input() {
        let m = DMatrix::from_row_slice(
            2,
            2,
            &[c(1.0, 0.0), c(0.25, 0.5), c(0.25, -0.5), c(-0.5, 0.0)],
        );
        let (vals, vecs) = eigh(&m).unwrap();
        let d = DMatrix::from_diagonal(&vals.map(|x| c(x, 0.0)));
        let err: f64 = (&vecs * d * vecs.adjoint() - &m).iter().map(|z| z.modulus()).sum();
        assert!(err < 1e-12, "reconstruction error {err}");
    }

    #[test]
    fn partial_trace_of_product_state_recovers_factor() {
        let a = DMatrix::from_row_slice(2, 2, &[c(0.7, 0.0), c(0.1, 0.2), c(0.1, -0.2), c(0.3, 0.0)]);
        let b = DMatrix::from_row_slice(2, 2, &[c(0.4, 0.0), c(0.0, 0.1), c(0.0, -0.1), c(0.6, 0.0)]);
        let prod = a.kronecker(&b);
        let got_a = partial_trace_matrix(&prod, &[2, 2], &[0]).unwrap();
        let got_b = partial_trace_matrix(&prod, &[2, 2], &[1]).unwrap();
        assert!((got_a - &a).iter().map(|z| z.modulus()).sum::<f64>() < 1e-14);
        assert!((got_b - &b).iter().map(|z| z.modulus()).sum::<f64>() < 1e-14);
    }

    #[test]
    fn asymmetry_detects_non_hermitian_part() {
        let m = DMatrix::from_row_slice(2, 2, &[c(1.0, 0.0), c(0.5, 0.0), c(0.2, 0.0), c(0.0, 0.0)]);
        let a: f64 = asymmetry(&m);
        assert!((a - 0.3).abs() < 1e-15);
        let s = symmetrize(&m);
        assert!(asymmetry(&s) < 1e-16);
        let _: f64 = real::<f64>(1.0);
    }
}
