//! Matrix and truncated-operator realisations of `A_θ`.
//!
//! Conventions: `VU = λ UV` with `λ = e^{2πiθ}`; shifts act as `e_k ↦ e_{k+1}`;
//! truncated shifts send the last basis vector to zero.

mod angle;
mod clock;
mod dump;
mod lattice;
mod poly;
mod rieffel;
mod truncated;

pub use angle::Angle;
pub use clock::{clock_shift, ClockShiftRep, ZeroRep};
pub use dump::{dense_json, sparse_json};
pub use lattice::{dirac_data, lattice_rieffel, LatticeProjection, TruncatedZ2Rep};
pub use poly::{canonical_trace, NcPoly, TraceElement};
pub use rieffel::{assemble as assemble_rieffel, rieffel_projection, CircleFn, ProfilePart, RieffelProfile, RieffelProjection};
pub use truncated::{truncated_rep, truncated_rep_with_fiber, BoundaryInfo, ShiftVariant, TruncatedZRep};

use thiserror::Error;

use crate::linalg::CMatrix;

/// Tolerance for the exact-relation tier (`‖VU − λUV‖`, unitarity).
pub const RELATION_TOL: f64 = 1e-12;
/// Idempotent defect accepted for a projection.
pub const PROJECTION_TOL: f64 = 1e-8;
/// Self-adjointness defect accepted for a projection.
pub const SELF_ADJOINT_TOL: f64 = 1e-10;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum RepError {
    #[error("gcd({m}, {q}) ≠ 1")]
    NotCoprime { m: i64, q: u64 },
    #[error("θ = {0} is outside (0, 1)")]
    ThetaOutOfRange(f64),
    #[error("representation too small: idempotent defect {defect:.3e}")]
    RepresentationTooSmall { defect: f64 },
    #[error("unsupported form: {0}")]
    UnsupportedForm(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
}

/// A finite-dimensional (possibly truncated) matrix representation of `A_θ`.
pub trait DenseRep {
    fn dim(&self) -> usize;
    fn angle(&self) -> &Angle;
    fn u(&self) -> &CMatrix;
    fn v(&self) -> &CMatrix;
    /// Whether `π(1)` is the identity (false for the zero representation).
    fn unital(&self) -> bool {
        true
    }
    /// `π(h(U))` for a real function `h` on the circle `R/Z`.
    fn function_of_u(&self, h: &dyn CircleFn) -> CMatrix;
}

/// `‖VU − λUV‖` in the operator norm, over all columns.
pub fn relation_defect(rep: &dyn DenseRep) -> f64 {
    let lambda = rep.angle().lambda();
    let d = rep.v() * rep.u() - rep.u() * rep.v() * lambda;
    crate::linalg::op_norm(&d)
}
