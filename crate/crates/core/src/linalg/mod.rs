//! Complex linear algebra shared by the representation and pairing code.

mod dense;
mod lanczos;
mod sparse;

pub use dense::{
    adjoint, block_diagonal, commutator, diagonal, frobenius_distance, identity, interior_dimension,
    kernel_basis, kron, op_norm, singular_values, CMatrix, CVector,
};
pub use lanczos::{lowest_eigenpairs, EigenPair, LanczosOptions};
pub use sparse::SparseCMatrix;

pub use num_complex::Complex64 as C64;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum LinalgError {
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("eigen-solver did not converge: residual {residual:.3e} after a {basis}-dimensional basis")]
    NotConverged { residual: f64, basis: usize },
}
