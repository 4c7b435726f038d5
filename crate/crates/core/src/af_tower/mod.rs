//! The Bratteli tower `C_1 → C_2 → …`, `C_n = M_{q_n} ⊕ M_{q_{n−1}}`, driven by
//! the continued fraction of `θ`.
//!
//! Step `n → n+1` has multiplicity matrix `[[a_{n+1}, 1], [1, 0]]`: the
//! multiplicity is the one forced by `q_{n+1} = a_{n+1} q_n + q_{n−1}`.

mod coefficients;
mod export;
mod tower;
mod trace;

pub use coefficients::{
    closed_form_comparison, inverse_limit_coefficients, pairing_along_tower, ClosedFormRow, KHomCoefficients,
};
pub use export::{tower_dot, tower_json};
pub use tower::{
    apply2, build_tower, det2, khom_pullback_matrix, push_k0_class, BratteliLevel, DimensionVector, EmbeddingStep, Mat2, Tower,
};
pub use trace::{trace_of, trace_weights, trace_weights_auto, TraceWeightVector, DEFAULT_HORIZON_OFFSET};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AfError {
    #[error("tower of depth {needed} needs {needed} digits after a0, expansion has {available}")]
    InsufficientDigits { needed: usize, available: usize },
    #[error("dimension vector ({d}, {d_prime}) does not fit level {level}")]
    RankOverflow { level: usize, d: String, d_prime: String },
    #[error("coefficients at level {coefficients} paired with a vector at level {vector}")]
    LevelMismatch { coefficients: usize, vector: usize },
    #[error("horizon {horizon} must be at least target level {level} + 2")]
    HorizonTooSmall { level: usize, horizon: usize },
    #[error("level {level} outside the tower (depth {depth})")]
    LevelOutOfRange { level: usize, depth: usize },
}
