//! Validated construction and algebra of Hermitian operators, density
//! operators, channels, and measurements.
//!
//! Every type symmetrizes its matrix to (M + M†)/2 at construction and runs
//! its eigendecompositions on the symmetrized form. Negative eigenvalues
//! inside the PSD tolerance band are clipped to zero and, for density
//! operators, the matrix is renormalized to unit trace, so downstream code
//! sees deterministic roundoff handling.

mod linalg;
pub mod random;

use nalgebra::ComplexField;
use nalgebra::{Complex, DMatrix, DVector};

use crate::error::{Error, Result};
use crate::scalar::{as_f64, real, Scalar};
use crate::tolerances::Tolerances;

pub(crate) use linalg::CMatrix;

/// Hermitian operator on a `dim`-dimensional Hilbert space.
#[derive(Debug, Clone, PartialEq)]
pub struct HermitianOperator<T: Scalar> {
    dim: usize,
    entries: CMatrix<T>,
}

impl<T: Scalar> HermitianOperator<T> {
    /// Validate a square complex matrix as Hermitian (within `tol.herm`)
    /// and store its symmetrization.
    pub fn new(matrix: CMatrix<T>, tol: &Tolerances<T>) -> Result<Self> {
        if matrix.nrows() != matrix.ncols() {
            return Err(Error::NotSquare {
                rows: matrix.nrows(),
                cols: matrix.ncols(),
            });
        }
        if matrix.nrows() == 0 {
            return Err(Error::DimMismatch { expected: 1, got: 0 });
        }
        if matrix.nrows() > tol.max_dim {
            return Err(Error::DimensionOverflow {
                dim: matrix.nrows(),
                max: tol.max_dim,
            });
        }
        let asym = linalg::asymmetry(&matrix);
        if asym > tol.herm {
            return Err(Error::NotHermitian {
                asymmetry: as_f64(asym),
                tol: as_f64(tol.herm),
            });
        }
        Ok(Self::from_matrix_unchecked(matrix))
    }

    /// Symmetrize and wrap without validation. For internal use on matrices
    /// that are Hermitian by construction.
    pub(crate) fn from_matrix_unchecked(matrix: CMatrix<T>) -> Self {
        let entries = linalg::symmetrize(&matrix);
        Self {
            dim: entries.nrows(),
            entries,
        }
    }

    pub fn zeros(dim: usize) -> Self {
        Self {
            dim,
            entries: CMatrix::<T>::zeros(dim, dim),
        }
    }

    pub fn identity(dim: usize) -> Self {
        Self {
            dim,
            entries: CMatrix::<T>::identity(dim, dim),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn matrix(&self) -> &CMatrix<T> {
        &self.entries
    }

    pub fn trace(&self) -> T {
        linalg::trace_re(&self.entries)
    }

    /// Eigenvalues and eigenvectors of the stored (symmetrized) matrix.
    pub fn eigh(&self) -> Result<(DVector<T>, CMatrix<T>)> {
        linalg::eigh(&self.entries)
    }

    pub fn eigenvalues(&self) -> Result<DVector<T>> {
        linalg::eigvalsh(&self.entries)
    }

    pub fn min_eigenvalue(&self) -> Result<T> {
        Ok(self
            .eigenvalues()?
            .iter()
            .fold(T::max_value().unwrap(), |m, &v| m.min(v)))
    }

    /// A + s·B as a Hermitian operator (s real).
    pub fn add_scaled(&self, other: &Self, s: T) -> Result<Self> {
        if self.dim != other.dim {
            return Err(Error::DimMismatch {
                expected: self.dim,
                got: other.dim,
            });
        }
        let sc = Complex::new(s, T::zero());
        Ok(Self {
            dim: self.dim,
            entries: &self.entries + &other.entries * sc,
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add_scaled(other, -T::one())
    }

    pub fn scale(&self, s: T) -> Self {
        let sc = Complex::new(s, T::zero());
        Self {
            dim: self.dim,
            entries: &self.entries * sc,
        }
    }
}

/// Normalized density operator: Hermitian, PSD, unit trace.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityOperator<T: Scalar> {
    op: HermitianOperator<T>,
}

impl<T: Scalar> DensityOperator<T> {
    /// Validate a matrix as a density operator. See [`validate_density`].
    pub fn new(matrix: CMatrix<T>, tol: &Tolerances<T>) -> Result<Self> {
        let herm = HermitianOperator::new(matrix, tol)?;
        let (vals, vecs) = herm.eigh()?;
        let norm1 = vals.iter().fold(T::zero(), |s, &v| s + v.abs());
        let slack = tol.psd_slack(norm1);
        let min = vals.iter().fold(T::zero(), |m, &v| m.min(v));
        if min < -slack {
            return Err(Error::NotPsd {
                min_eigenvalue: as_f64(min),
                tol: as_f64(slack),
            });
        }
        let trace = herm.trace();
        if (trace - T::one()).abs() > tol.trace {
            return Err(Error::BadTrace {
                trace: as_f64(trace),
                expected: 1.0,
                tol: as_f64(tol.trace),
            });
        }
        // Clip roundoff negatives and renormalize to exact unit trace.
        let clipped: Vec<T> = vals.iter().map(|&v| v.max(T::zero())).collect();
        let total: T = clipped.iter().fold(T::zero(), |s, &v| s + v);
        let rebuilt = rebuild_from_eigs(&clipped, &vecs, T::one() / total);
        Ok(Self {
            op: HermitianOperator::from_matrix_unchecked(rebuilt),
        })
    }

    pub(crate) fn from_matrix_unchecked(matrix: CMatrix<T>) -> Self {
        Self {
            op: HermitianOperator::from_matrix_unchecked(matrix),
        }
    }

    /// Maximally mixed state 1/dim.
    pub fn maximally_mixed(dim: usize) -> Self {
        let m = CMatrix::<T>::identity(dim, dim) * Complex::new(T::one() / real::<T>(dim as f64), T::zero());
        Self::from_matrix_unchecked(m)
    }

    /// Pure state |k><k| in the computational basis.
    pub fn basis_state(dim: usize, k: usize) -> Self {
        let mut m = CMatrix::<T>::zeros(dim, dim);
        m[(k, k)] = Complex::new(T::one(), T::zero());
        Self::from_matrix_unchecked(m)
    }

    /// Pure state |psi><psi| from an unnormalized state vector.
    pub fn pure(psi: &[Complex<T>]) -> Self {
        let v = DVector::from_row_slice(psi);
        let n2 = v.iter().fold(T::zero(), |s, z| s + z.norm_sqr());
        let scale = Complex::new(T::one() / n2, T::zero());
        let m = (&v * v.adjoint()) * scale;
        Self::from_matrix_unchecked(m)
    }

    /// Diagonal state from a probability vector (renormalized).
    pub fn from_diagonal(probs: &[T]) -> Self {
        let total: T = probs.iter().fold(T::zero(), |s, &p| s + p);
        let mut m = CMatrix::<T>::zeros(probs.len(), probs.len());
        for (k, &p) in probs.iter().enumerate() {
            m[(k, k)] = Complex::new(p / total, T::zero());
        }
        Self::from_matrix_unchecked(m)
    }

    pub fn dim(&self) -> usize {
        self.op.dim()
    }

    pub fn matrix(&self) -> &CMatrix<T> {
        self.op.matrix()
    }

    pub fn as_hermitian(&self) -> &HermitianOperator<T> {
        &self.op
    }

    /// Difference with another state, as a Hermitian operator.
    pub fn sub(&self, other: &Self) -> Result<HermitianOperator<T>> {
        self.op.sub(&other.op)
    }

    /// Convex combination (1-w)·self + w·other.
    pub fn mix(&self, other: &Self, w: T) -> Result<Self> {
        if self.dim() != other.dim() {
            return Err(Error::DimMismatch {
                expected: self.dim(),
                got: other.dim(),
            });
        }
        let a = Complex::new(T::one() - w, T::zero());
        let b = Complex::new(w, T::zero());
        Ok(Self::from_matrix_unchecked(
            self.matrix() * a + other.matrix() * b,
        ))
    }
}

fn rebuild_from_eigs<T: Scalar>(vals: &[T], vecs: &CMatrix<T>, scale: T) -> CMatrix<T> {
    let d = DMatrix::from_diagonal(&DVector::from_iterator(
        vals.len(),
        vals.iter().map(|&v| Complex::new(v * scale, T::zero())),
    ));
    vecs * d * vecs.adjoint()
}

/// Hermitian PSD operator with trace in [0, 1].
#[derive(Debug, Clone, PartialEq)]
pub struct SubnormalizedOperator<T: Scalar> {
    op: HermitianOperator<T>,
    weight: T,
}

impl<T: Scalar> SubnormalizedOperator<T> {
    pub fn new(matrix: CMatrix<T>, tol: &Tolerances<T>) -> Result<Self> {
        let herm = HermitianOperator::new(matrix, tol)?;
        let (vals, vecs) = herm.eigh()?;
        let norm1 = vals.iter().fold(T::zero(), |s, &v| s + v.abs());
        let slack = tol.psd_slack(norm1);
        let min = vals.iter().fold(T::zero(), |m, &v| m.min(v));
        if min < -slack {
            return Err(Error::NotPsd {
                min_eigenvalue: as_f64(min),
                tol: as_f64(slack),
            });
        }
        let trace = herm.trace();
        if trace < -tol.trace || trace > T::one() + tol.trace {
            return Err(Error::BadTrace {
                trace: as_f64(trace),
                expected: 1.0,
                tol: as_f64(tol.trace),
            });
        }
        let clipped: Vec<T> = vals.iter().map(|&v| v.max(T::zero())).collect();
        let weight: T = clipped
            .iter()
            .fold(T::zero(), |s, &v| s + v)
            .min(T::one());
        let rebuilt = rebuild_from_eigs(&clipped, &vecs, T::one());
        Ok(Self {
            op: HermitianOperator::from_matrix_unchecked(rebuilt),
            weight,
        })
    }

    pub(crate) fn from_matrix_unchecked(matrix: CMatrix<T>) -> Self {
        let op = HermitianOperator::from_matrix_unchecked(matrix);
        let weight = op.trace();
        Self { op, weight }
    }

    pub fn zero(dim: usize) -> Self {
        Self {
            op: HermitianOperator::zeros(dim),
            weight: T::zero(),
        }
    }

    pub fn dim(&self) -> usize {
        self.op.dim()
    }

    /// Trace of the operator.
    pub fn weight(&self) -> T {
        self.weight
    }

    pub fn matrix(&self) -> &CMatrix<T> {
        self.op.matrix()
    }

    pub fn as_hermitian(&self) -> &HermitianOperator<T> {
        &self.op
    }

    pub fn scale(&self, s: T) -> Self {
        Self {
            op: self.op.scale(s),
            weight: self.weight * s,
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        Ok(Self {
            op: self.op.add_scaled(&other.op, T::one())?,
            weight: self.weight + other.weight,
        })
    }

    /// Normalize to a density operator; `None` when the weight is zero.
    pub fn normalize(&self) -> Option<DensityOperator<T>> {
        if self.weight <= T::zero() {
            return None;
        }
        Some(DensityOperator::from_matrix_unchecked(
            self.matrix() * Complex::new(T::one() / self.weight, T::zero()),
        ))
    }
}

/// Whether a channel must preserve the trace exactly or may only shrink it.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ChannelMode {
    TracePreserving,
    TraceNonIncreasing,
}

/// Quantum channel in Kraus form: rho -> sum_i K_i rho K_i†.
#[derive(Debug, Clone)]
pub struct KrausChannel<T: Scalar> {
    kraus: Vec<CMatrix<T>>,
    dim_in: usize,
    dim_out: usize,
    mode: ChannelMode,
}

impl<T: Scalar> KrausChannel<T> {
    pub fn new(kraus: Vec<CMatrix<T>>, mode: ChannelMode, tol: &Tolerances<T>) -> Result<Self> {
        if kraus.is_empty() {
            return Err(Error::BadChannel("no Kraus operators".into()));
        }
        let dim_out = kraus[0].nrows();
        let dim_in = kraus[0].ncols();
        if dim_in == 0 || dim_out == 0 {
            return Err(Error::BadChannel("zero-dimensional Kraus operator".into()));
        }
        if dim_in.max(dim_out) > tol.max_dim {
            return Err(Error::DimensionOverflow {
                dim: dim_in.max(dim_out),
                max: tol.max_dim,
            });
        }
        if kraus
            .iter()
            .any(|k| k.nrows() != dim_out || k.ncols() != dim_in)
        {
            return Err(Error::BadChannel("inconsistent Kraus shapes".into()));
        }
        let mut sum = CMatrix::<T>::zeros(dim_in, dim_in);
        for k in &kraus {
            sum += k.adjoint() * k;
        }
        match mode {
            ChannelMode::TracePreserving => {
                let dev = (&sum - CMatrix::<T>::identity(dim_in, dim_in))
                    .iter()
                    .fold(T::zero(), |m, z| m.max(z.modulus()));
                if dev > tol.cptp {
                    return Err(Error::BadChannel(format!(
                        "sum K†K deviates from identity by {:.3e}",
                        as_f64(dev)
                    )));
                }
            }
            ChannelMode::TraceNonIncreasing => {
                let gap = CMatrix::<T>::identity(dim_in, dim_in) - &sum;
                let min = linalg::eigvalsh(&linalg::symmetrize(&gap))?
                    .iter()
                    .fold(T::zero(), |m, &v| m.min(v));
                if min < -tol.cptp {
                    return Err(Error::BadChannel(format!(
                        "sum K†K exceeds identity by {:.3e}",
                        as_f64(-min)
                    )));
                }
            }
        }
        Ok(Self {
            kraus,
            dim_in,
            dim_out,
            mode,
        })
    }

    /// Identity channel.
    pub fn identity(dim: usize) -> Self {
        Self {
            kraus: vec![CMatrix::<T>::identity(dim, dim)],
            dim_in: dim,
            dim_out: dim,
            mode: ChannelMode::TracePreserving,
        }
    }

    /// Fully dephasing qubit-basis channel {|k><k|}.
    pub fn dephasing(dim: usize) -> Self {
        let kraus = (0..dim)
            .map(|k| {
                let mut m = CMatrix::<T>::zeros(dim, dim);
                m[(k, k)] = Complex::new(T::one(), T::zero());
                m
            })
            .collect();
        Self {
            kraus,
            dim_in: dim,
            dim_out: dim,
            mode: ChannelMode::TracePreserving,
        }
    }

    pub fn kraus_operators(&self) -> &[CMatrix<T>] {
        &self.kraus
    }

    pub fn dim_in(&self) -> usize {
        self.dim_in
    }

    pub fn dim_out(&self) -> usize {
        self.dim_out
    }

    pub fn mode(&self) -> ChannelMode {
        self.mode
    }

    fn apply_matrix(&self, m: &CMatrix<T>) -> Result<CMatrix<T>> {
        if m.nrows() != self.dim_in {
            return Err(Error::DimMismatch {
                expected: self.dim_in,
                got: m.nrows(),
            });
        }
        let mut out = CMatrix::<T>::zeros(self.dim_out, self.dim_out);
        for k in &self.kraus {
            out += k * m * k.adjoint();
        }
        Ok(out)
    }
}

/// Positive operator-valued measure: PSD elements summing to identity.
#[derive(Debug, Clone)]
pub struct Povm<T: Scalar> {
    elements: Vec<HermitianOperator<T>>,
}

impl<T: Scalar> Povm<T> {
    pub fn new(elements: Vec<HermitianOperator<T>>, tol: &Tolerances<T>) -> Result<Self> {
        if elements.is_empty() {
            return Err(Error::BadChannel("empty POVM".into()));
        }
        let dim = elements[0].dim();
        let mut sum = CMatrix::<T>::zeros(dim, dim);
        for e in &elements {
            if e.dim() != dim {
                return Err(Error::DimMismatch {
                    expected: dim,
                    got: e.dim(),
                });
            }
            let vals = e.eigenvalues()?;
            let norm1 = vals.iter().fold(T::zero(), |s, &v| s + v.abs());
            let min = vals.iter().fold(T::zero(), |m, &v| m.min(v));
            if min < -tol.psd_slack(norm1) {
                return Err(Error::NotPsd {
                    min_eigenvalue: as_f64(min),
                    tol: as_f64(tol.psd_slack(norm1)),
                });
            }
            sum += e.matrix();
        }
        let dev = (&sum - CMatrix::<T>::identity(dim, dim))
            .iter()
            .fold(T::zero(), |m, z| m.max(z.modulus()));
        if dev > tol.cptp {
            return Err(Error::BadChannel(format!(
                "POVM elements sum deviates from identity by {:.3e}",
                as_f64(dev)
            )));
        }
        Ok(Self { elements })
    }

    pub fn elements(&self) -> &[HermitianOperator<T>] {
        &self.elements
    }

    /// Outcome probabilities on a state.
    pub fn probabilities(&self, rho: &DensityOperator<T>) -> Result<Vec<T>> {
        self.elements
            .iter()
            .map(|e| {
                if e.dim() != rho.dim() {
                    return Err(Error::DimMismatch {
                        expected: rho.dim(),
                        got: e.dim(),
                    });
                }
                Ok(linalg::trace_product(e.matrix(), rho.matrix()).re)
            })
            .collect()
    }
}

/// Validate a complex square matrix as a density operator.
pub fn validate_density<T: Scalar>(
    matrix: CMatrix<T>,
    tol: &Tolerances<T>,
) -> Result<DensityOperator<T>> {
    DensityOperator::new(matrix, tol)
}

/// Schatten 1-norm of a Hermitian operator: the sum of absolute eigenvalues.
pub fn schatten_1_norm<T: Scalar>(h: &HermitianOperator<T>) -> Result<T> {
    linalg::one_norm_hermitian(h.matrix())
}

/// Split a Hermitian operator into its positive and negative parts.
///
/// Returns (P, N) with P ⪰ 0, N ⪯ 0, P + N = Δ, and P·N = 0.
pub fn jordan_decompose<T: Scalar>(
    delta: &HermitianOperator<T>,
) -> Result<(HermitianOperator<T>, HermitianOperator<T>)> {
    let (vals, vecs) = delta.eigh()?;
    let pos: Vec<T> = vals.iter().map(|&v| v.max(T::zero())).collect();
    let neg: Vec<T> = vals.iter().map(|&v| v.min(T::zero())).collect();
    let p = rebuild_from_eigs(&pos, &vecs, T::one());
    let n = rebuild_from_eigs(&neg, &vecs, T::one());
    Ok((
        HermitianOperator::from_matrix_unchecked(p),
        HermitianOperator::from_matrix_unchecked(n),
    ))
}

/// Kronecker product of two density operators.
pub fn tensor<T: Scalar>(
    a: &DensityOperator<T>,
    b: &DensityOperator<T>,
    tol: &Tolerances<T>,
) -> Result<DensityOperator<T>> {
    let dim = a.dim() * b.dim();
    if dim > tol.max_dim {
        return Err(Error::DimensionOverflow {
            dim,
            max: tol.max_dim,
        });
    }
    Ok(DensityOperator::from_matrix_unchecked(
        a.matrix().kronecker(b.matrix()),
    ))
}

/// Reduce a state to the tensor factors listed in `keep`.
pub fn partial_trace<T: Scalar>(
    rho: &DensityOperator<T>,
    dims: &[usize],
    keep: &[usize],
) -> Result<DensityOperator<T>> {
    let m = linalg::partial_trace_matrix(rho.matrix(), dims, keep)?;
    Ok(DensityOperator::from_matrix_unchecked(m))
}

/// Apply a channel to a density operator.
pub fn apply_channel<T: Scalar>(
    ch: &KrausChannel<T>,
    rho: &DensityOperator<T>,
) -> Result<DensityOperator<T>> {
    Ok(DensityOperator::from_matrix_unchecked(
        ch.apply_matrix(rho.matrix())?,
    ))
}

/// Apply a channel to a subnormalized operator.
pub fn apply_channel_sub<T: Scalar>(
    ch: &KrausChannel<T>,
    rho: &SubnormalizedOperator<T>,
) -> Result<SubnormalizedOperator<T>> {
    Ok(SubnormalizedOperator::from_matrix_unchecked(
        ch.apply_matrix(rho.matrix())?,
    ))
}

/// Optimal two-state discrimination effect and its advantage.
///
/// Returns the projector onto the support of (rho - sigma)_+ together with
/// tr[Λ(rho - sigma)] = ||rho - sigma||_1 / 2.
pub fn helstrom<T: Scalar>(
    rho: &DensityOperator<T>,
    sigma: &DensityOperator<T>,
) -> Result<(HermitianOperator<T>, T)> {
    if rho.dim() != sigma.dim() {
        return Err(Error::DimMismatch {
            expected: rho.dim(),
            got: sigma.dim(),
        });
    }
    let delta = rho.sub(sigma)?;
    let (vals, vecs) = delta.eigh()?;
    let proj: Vec<T> = vals
        .iter()
        .map(|&v| if v > T::zero() { T::one() } else { T::zero() })
        .collect();
    let advantage = vals
        .iter()
        .fold(T::zero(), |s, &v| if v > T::zero() { s + v } else { s });
    let lambda = rebuild_from_eigs(&proj, &vecs, T::one());
    Ok((HermitianOperator::from_matrix_unchecked(lambda), advantage))
}

#[cfg(test)]
mod tests;
