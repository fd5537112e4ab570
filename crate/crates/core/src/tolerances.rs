use serde::{Deserialize, Serialize};

use crate::scalar::{real, Scalar};

/// Numerical tolerances and size ceilings shared by all validators.
///
/// The PSD tolerance is relative: an operator `M` passes the PSD check when
/// its minimum eigenvalue is at least `-psd_base * (1 + ||M||_1)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Tolerances<T> {
    /// Maximum entrywise asymmetry |M - M†| accepted before symmetrization.
    pub herm: T,
    /// Allowed deviation of a trace from its target.
    pub trace: T,
    /// Base of the relative PSD tolerance.
    pub psd_base: T,
    /// Allowed deviation of Kraus/POVM completeness sums from identity.
    pub cptp: T,
    /// Dense operator dimension ceiling.
    pub max_dim: usize,
}

impl<T: Scalar> Default for Tolerances<T> {
    fn default() -> Self {
        Self {
            herm: real(1e-9),
            trace: real(1e-9),
            psd_base: real(1e-9),
            cptp: real(1e-9),
            max_dim: 4096,
        }
    }
}

impl<T: Scalar> Tolerances<T> {
    /// Relative PSD slack for an operator with Schatten 1-norm `norm1`.
    pub fn psd_slack(&self, norm1: T) -> T {
        self.psd_base * (T::one() + norm1)
    }

    /// Replace the dimension ceiling.
    pub fn with_max_dim(mut self, max_dim: usize) -> Self {
        self.max_dim = max_dim;
        self
    }
}
