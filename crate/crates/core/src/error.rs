use thiserror::Error;

/// Errors produced by operator validation, state evaluation, and the
/// protocol simulator.
#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },

    #[error("matrix is not Hermitian: asymmetry {asymmetry:.3e} exceeds tolerance {tol:.3e}")]
    NotHermitian { asymmetry: f64, tol: f64 },

    #[error("operator is not positive semidefinite: minimum eigenvalue {min_eigenvalue:.6e} below -{tol:.3e}")]
    NotPsd { min_eigenvalue: f64, tol: f64 },

    #[error("trace {trace:.12} deviates from {expected} beyond tolerance {tol:.3e}")]
    BadTrace { trace: f64, expected: f64, tol: f64 },

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimMismatch { expected: usize, got: usize },

    #[error("dimension {dim} exceeds the configured ceiling {max}")]
    DimensionOverflow { dim: usize, max: usize },

    #[error("eigensolver failed to converge (dim {dim})")]
    EigensolverFailure { dim: usize },

    #[error("path must contain at least two states")]
    EmptyPath,

    #[error("invalid key state: {0}")]
    InvalidState(String),

    #[error("key lengths other than 0 and {expected} present")]
    UnsupportedLengths { expected: usize },

    #[error("invalid probability distribution: {0}")]
    BadDistribution(String),

    #[error("effect operator outside [0, 1]: offending eigenvalue {eigenvalue:.6e}")]
    BadEffect { eigenvalue: f64 },

    #[error("invalid channel: {0}")]
    BadChannel(String),

    #[error("invalid protocol configuration: {0}")]
    BadConfig(String),

    #[error("{what}: value {value:.6e} exceeds proven bound {bound:.6e}")]
    BoundViolated {
        what: &'static str,
        value: f64,
        bound: f64,
    },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    /// Coarse error family, used by the CLI to pick exit codes.
    pub fn family(&self) -> ErrorFamily {
        use Error::*;
        match self {
            NotHermitian { .. } | NotPsd { .. } | BadTrace { .. } | InvalidState(_)
            | UnsupportedLengths { .. } | BadDistribution(_) | BadEffect { .. }
            | BadChannel(_) | BadConfig(_) | EmptyPath => ErrorFamily::Validation,
            NotSquare { .. } | DimMismatch { .. } | DimensionOverflow { .. } => {
                ErrorFamily::Dimension
            }
            EigensolverFailure { .. } | BoundViolated { .. } => ErrorFamily::Numerical,
        }
    }
}

/// Error families with stable process exit codes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorFamily {
    /// Exit code 1: unreadable or unparsable input.
    Parse,
    /// Exit code 2: well-formed input that violates a contract.
    Validation,
    /// Exit code 3: dimension mismatch or ceiling overflow.
    Dimension,
    /// Exit code 4: numerical failure.
    Numerical,
}

impl ErrorFamily {
    pub fn exit_code(self) -> i32 {
        match self {
            ErrorFamily::Parse => 1,
            ErrorFamily::Validation => 2,
            ErrorFamily::Dimension => 3,
            ErrorFamily::Numerical => 4,
        }
    }
}
