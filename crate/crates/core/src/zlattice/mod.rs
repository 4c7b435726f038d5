//! Free abelian groups, integer-matrix homomorphisms and exactness of cyclic
//! sequences, decided with exact Smith/Hermite normal forms.

mod exactness;
mod hnf;
mod matrix;
mod sequence;
mod snf;

pub use exactness::{check_exact_at, ExactnessVerdict};
pub use hnf::{hermite_rows, lattice_contains, LatticeBasis};
pub use matrix::IntMatrix;
pub use sequence::{
    builtin_khomology_sequence, builtin_ktheory_sequence, khomology_ktheory_duality,
    CyclicSequence, DualityCheck, FreeAbelianGroup, IntegerMatrixMap, NodeReport,
};
pub use snf::{smith_normal_form, SmithForm};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LatticeError {
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("integer overflow in exact lattice arithmetic")]
    Overflow,
    #[error("invalid matrix: {0}")]
    InvalidMatrix(String),
    #[error("unknown map {0:?}")]
    UnknownMap(String),
}

pub(crate) fn ck(v: Option<i64>) -> Result<i64, LatticeError> {
    v.ok_or(LatticeError::Overflow)
}
