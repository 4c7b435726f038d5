//! Fredholm modules over `A_θ` and their index pairings with K-theory classes.
//!
//! Even modules pair with projections through the trace formula
//! `Σ_k Tr(φ(e_kk))` (finite-dimensional `φ`) or through a compressed Fredholm
//! index (the Dirac module). Odd modules pair with unitaries through
//! `dim ker(EuE) − dim ker(Eu*E)`, `E = (1+F)/2`.

mod compactness;
mod conjugation;
mod dirac;
mod element;
mod even;
mod odd;
pub mod registry;

pub use compactness::{compactness_report, CommutatorEntry, CommutatorReport, CompactnessTarget};
pub use conjugation::DiagonalConjugation;
pub use dirac::{dirac_even_pairing, dirac_module, DiracModule};
pub use element::{AlgebraElement, ClassSpec};
pub use even::{canonical_even, even_pairing, CanonicalEven, EvenFredholmModule, FiniteRep, ModuleInvariants};
pub use odd::{canonical_odd, odd_pairing, OddFredholmModule};
pub use registry::{ModuleKind, ModuleRegistry, PairingContext};

use serde::Serialize;
use thiserror::Error;

use crate::linalg::LinalgError;
use crate::torus_rep::RepError;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum FredholmError {
    #[error("not a projection: defect {defect:.3e}")]
    NotAProjection { defect: f64 },
    #[error("pairing value {value} is not within the rounding tolerance of an integer")]
    NonIntegerPairing { value: f64 },
    #[error("not unitary on the interior: defect {defect:.3e}")]
    NotUnitary { defect: f64 },
    #[error("index unstable: {value} at N = {n} but {value_next} at N = {n_next}")]
    UnstableIndex { n: usize, value: i64, n_next: usize, value_next: i64 },
    #[error("no spectral gap around the rank tolerance: {0}")]
    NoSpectralGap(String),
    #[error("unsupported class: {0}")]
    UnsupportedClass(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error(transparent)]
    Rep(#[from] RepError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

/// Numerical thresholds used by the pairing engines.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Tolerances {
    /// Singular values below this count as kernel in exact-arithmetic-like
    /// compressions (finite modules, truncated shifts).
    pub rank: f64,
    /// Maximum distance of a pairing quantity from the integer it rounds to.
    pub round: f64,
    /// Kernel threshold for the compressed Dirac index.
    pub compressed_rank: f64,
    /// Singular values in `[compressed_rank, compressed_gap · compressed_rank)`
    /// make the compressed index ill-defined.
    pub compressed_gap: f64,
    /// Fourier bandwidth of the functions of `U` in the box representation.
    pub bandwidth: usize,
    /// Truncation increase used to certify stability.
    pub stability_step: usize,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            rank: 1e-8,
            round: 0.1,
            compressed_rank: 0.03,
            compressed_gap: 2.0,
            bandwidth: 24,
            stability_step: 4,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum PairingMethod {
    TraceFormula,
    KernelIndex,
    CompressedIndex,
}

/// An integer pairing value with everything needed to reproduce it.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PairingResult {
    pub value: i64,
    pub method: PairingMethod,
    /// Truncation half-width, when the module is truncated.
    pub truncation: Option<usize>,
    pub rank_tolerance: Option<f64>,
    pub round_tolerance: f64,
    /// Value recomputed at `N + stability_step` agrees (always true for
    /// untruncated modules).
    pub stable: bool,
    /// `+1`, `−1`, or `0` for a zero value.
    pub realized_sign: i64,
    /// The unrounded quantity (trace) or the interior kernel dimensions.
    pub raw: f64,
    /// Interior `(dim ker, dim coker)` for index methods.
    pub kernel_dims: Option<(usize, usize)>,
    /// Smallest singular values seen by an index method, ascending.
    pub smallest_singular_values: Vec<f64>,
}

impl PairingResult {
    pub(crate) fn index(
        method: PairingMethod,
        n: usize,
        tol: f64,
        kernel_dims: (usize, usize),
        smallest: Vec<f64>,
        round: f64,
    ) -> Self {
        let value = kernel_dims.0 as i64 - kernel_dims.1 as i64;
        PairingResult {
            value,
            method,
            truncation: Some(n),
            rank_tolerance: Some(tol),
            round_tolerance: round,
            stable: false,
            realized_sign: value.signum(),
            raw: value as f64,
            kernel_dims: Some(kernel_dims),
            smallest_singular_values: smallest,
        }
    }
}

/// Round to the nearest integer, refusing values further than `tol` from it.
pub fn round_pairing(value: f64, tol: f64) -> Result<i64, FredholmError> {
    let r = value.round();
    if (value - r).abs() > tol || !value.is_finite() {
        return Err(FredholmError::NonIntegerPairing { value });
    }
    Ok(r as i64)
}

/// Odd or even.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Even,
    Odd,
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rounding_threshold() {
        assert_eq!(round_pairing(2.05, 0.1), Ok(2));
        assert_eq!(round_pairing(-0.96, 0.1), Ok(-1));
        assert!(matches!(round_pairing(0.4, 0.1), Err(FredholmError::NonIntegerPairing { .. })));
        assert!(round_pairing(f64::NAN, 0.1).is_err());
    }
}
