//! Seeded random ensembles for tests, conformance sampling, and path
//! refinement. All draws go through a caller-supplied ChaCha RNG so that
//! every report is reproducible from its seed.

use nalgebra::Complex;
use rand::Rng;

use super::{ChannelMode, CMatrix, DensityOperator, HermitianOperator, KrausChannel};
use crate::error::Result;
use crate::scalar::{real, Scalar};
use crate::tolerances::Tolerances;

/// Standard normal via Box-Muller on the RNG's uniform output.
fn normal<T: Scalar, R: Rng>(rng: &mut R) -> T {
    let u1: f64 = rng.random::<f64>().max(1e-300);
    let u2: f64 = rng.random();
    real((-2.0 * u1.ln()).sqrt() * (std::f64::consts::TAU * u2).cos())
}

fn complex_normal<T: Scalar, R: Rng>(rng: &mut R) -> Complex<T> {
    Complex::new(normal(rng), normal(rng))
}

/// Complex Ginibre matrix with iid standard-normal entries.
pub fn ginibre_matrix<T: Scalar, R: Rng>(rows: usize, cols: usize, rng: &mut R) -> CMatrix<T> {
    CMatrix::<T>::from_fn(rows, cols, |_, _| complex_normal(rng))
}

/// Full-support random density operator: G G† / tr(G G†).
pub fn ginibre_density<T: Scalar, R: Rng>(dim: usize, rng: &mut R) -> DensityOperator<T> {
    let g = ginibre_matrix::<T, R>(dim, dim, rng);
    let m = &g * g.adjoint();
    let tr = m.trace().re;
    DensityOperator::from_matrix_unchecked(m * Complex::new(T::one() / tr, T::zero()))
}

/// Random Hermitian operator (G + G†)/2 with Gaussian entries.
pub fn random_hermitian<T: Scalar, R: Rng>(dim: usize, rng: &mut R) -> HermitianOperator<T> {
    HermitianOperator::from_matrix_unchecked(ginibre_matrix::<T, R>(dim, dim, rng))
}

/// Haar-ish random CPTP channel with `kraus_count` Kraus operators,
/// obtained from the thin QR of a tall Ginibre matrix.
pub fn random_channel<T: Scalar, R: Rng>(
    dim_in: usize,
    dim_out: usize,
    kraus_count: usize,
    rng: &mut R,
    tol: &Tolerances<T>,
) -> Result<KrausChannel<T>> {
    let rows = dim_out * kraus_count;
    assert!(rows >= dim_in, "need dim_out * kraus_count >= dim_in");
    let g = ginibre_matrix::<T, R>(rows, dim_in, rng);
    let q = g.qr().q();
    let kraus: Vec<CMatrix<T>> = (0..kraus_count)
        .map(|i| q.rows(i * dim_out, dim_out).into_owned())
        .collect();
    KrausChannel::new(kraus, ChannelMode::TracePreserving, tol)
}

/// Random effect operator with eigenvalues uniform in [0, 1].
pub fn random_effect<T: Scalar, R: Rng>(dim: usize, rng: &mut R) -> HermitianOperator<T> {
    let g = ginibre_matrix::<T, R>(dim, dim, rng);
    let q = g.qr().q();
    let mut m = CMatrix::<T>::zeros(dim, dim);
    for k in 0..dim {
        let col = q.column(k);
        let lam: T = real(rng.random::<f64>());
        m += (col * col.adjoint()) * Complex::new(lam, T::zero());
    }
    HermitianOperator::from_matrix_unchecked(m)
}

/// Random probability vector with every entry at least `floor / dim`.
///
/// Sampled uniformly from the simplex, then mixed with the uniform
/// distribution by weight `floor` to bound entries away from zero.
pub fn random_probability_vector<T: Scalar, R: Rng>(
    dim: usize,
    floor: f64,
    rng: &mut R,
) -> Vec<T> {
    let raw: Vec<f64> = (0..dim)
        .map(|_| -(rng.random::<f64>().max(1e-300)).ln())
        .collect();
    let total: f64 = raw.iter().sum();
    raw.iter()
        .map(|&x| real((1.0 - floor) * x / total + floor / dim as f64))
        .collect()
}
