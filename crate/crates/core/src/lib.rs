//! Numerics for the K-homology of the rotation algebras `A_θ`.
//!
//! The crate is organised bottom-up:
//!
//! - [`exact_arith`]: continued fractions and convergent tables over big integers.
//! - [`zlattice`]: integer-matrix maps between free abelian groups, Smith/Hermite
//!   normal forms and exactness checks for six-term cyclic sequences.
//! - [`linalg`]: dense/sparse complex matrix helpers and a block Lanczos solver.
//! - [`torus_rep`]: clock-shift matrices, truncated ℓ²(Z) and ℓ²(Z²)
//!   representations, the Powers–Rieffel projection and the canonical trace.
//! - [`fredholm`]: Fredholm module constructors and the index-pairing engines,
//!   selected by name through a [`fredholm::registry::ModuleRegistry`].
//! - [`af_tower`]: the Bratteli tower `C_n = M_{q_n} ⊕ M_{q_{n-1}}` with its K₀
//!   transport, trace weights and inverse-limit K-homology coefficients.

pub mod af_tower;
pub mod exact_arith;
pub mod fredholm;
pub mod linalg;
pub mod torus_rep;
pub mod zlattice;

/// Convention for the sign of zero used by every `F = sign(k)` operator.
pub const SIGN_OF_ZERO: i64 = 1;

/// `sign(k)` with `sign(0) = +1`.
#[inline]
pub fn sign(k: i64) -> i64 {
    if k >= 0 {
        SIGN_OF_ZERO
    } else {
        -1
    }
}
