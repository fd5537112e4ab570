//! Executable ε-security toolkit for quantum key distribution.
//!
//! The crate is organized around five subsystems:
//!
//! - [`statekit`]: validated Hermitian/density operators, Kraus channels,
//!   POVMs, and the dense linear algebra they share.
//! - [`distinctness`]: the pre-distances δ̃ and δ̂, certified two-sided
//!   bounds on the maximum distinctness probability of two states, and an
//!   axiom-conformance harness for candidate distinctness measures.
//! - [`keystates`]: classical–quantum key states with variable-length keys
//!   and asymmetric aborts, the key-replacer map, and the
//!   security/correctness/secrecy evaluators.
//! - [`protocol`]: an exact (branch-enumerating) toy prepare-and-measure
//!   QKD simulator with configurable adversaries, producing key states the
//!   evaluators can score.
//! - [`compose`]: sequential/parallel composition with ε-budget
//!   verification and the event-probability gap bound.
//!
//! Operator math is generic over the real scalar type; the aliases below
//! fix `f64`, which is what the simulator, the JSON wire formats, and the
//! CLI use.

pub mod compose;
pub mod distinctness;
pub mod error;
pub mod json;
pub mod keystates;
pub mod protocol;
pub mod scalar;
pub mod statekit;
pub mod tolerances;

pub use error::{Error, ErrorFamily, Result};
pub use scalar::Scalar;
pub use tolerances::Tolerances;

/// Working real scalar of the concrete API surface.
pub type Real = f64;
/// Complex scalar over [`Real`].
pub type Cplx = num_complex::Complex<f64>;

pub type Hermitian = statekit::HermitianOperator<Real>;
pub type Density = statekit::DensityOperator<Real>;
pub type Subnormalized = statekit::SubnormalizedOperator<Real>;
pub type Channel = statekit::KrausChannel<Real>;
pub type Measurement = statekit::Povm<Real>;
pub type Bounds = distinctness::DistinctnessBounds<Real>;
// KeyState alias lands with the keystates module.
