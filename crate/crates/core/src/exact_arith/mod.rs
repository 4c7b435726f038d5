//! Exact rational arithmetic, continued-fraction expansion and convergent tables.

mod cf;
mod convergents;
mod theta;

pub use cf::{cf_expand, CfExpansion};
pub use convergents::{convergents, ConvergentRow, ConvergentTable};
pub use theta::{quadratic_enclosure, Theta, DEFAULT_DECIMAL_DIGITS};

pub use num_bigint::BigInt;
pub use num_rational::BigRational;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ArithError {
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("precision exhausted after {produced} digits: the enclosure straddles an integer boundary")]
    PrecisionExhausted { produced: usize },
    #[error("non-canonical continued fraction: {0}")]
    NonCanonical(String),
}

/// Convert an exact rational to the nearest `f64` (via scaled integer division).
pub fn rational_to_f64(r: &BigRational) -> f64 {
    use num_traits::{Signed, ToPrimitive, Zero};
    if r.numer().is_zero() {
        return 0.0;
    }
    // Scale so the integer quotient carries ~80 significant bits.
    let num_bits = r.numer().bits() as i64;
    let den_bits = r.denom().bits() as i64;
    let shift = 80 - (num_bits - den_bits);
    let (n, d) = if shift >= 0 {
        (r.numer().abs() << (shift as usize), r.denom().clone())
    } else {
        (r.numer().abs(), r.denom() << ((-shift) as usize))
    };
    let q = (n / d).to_f64().unwrap_or(f64::INFINITY);
    let v = q * 2f64.powi(-(shift as i32));
    if r.is_negative() {
        -v
    } else {
        v
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;

    #[test]
    fn rational_to_f64_matches_simple_values() {
        let r = BigRational::new(BigInt::from(15), BigInt::from(11));
        assert_eq!(rational_to_f64(&r), 15.0 / 11.0);
        let r = BigRational::new(BigInt::from(-1), BigInt::from(3));
        assert_eq!(rational_to_f64(&r), -1.0 / 3.0);
        assert_eq!(rational_to_f64(&BigRational::one()), 1.0);
    }

    #[test]
    fn rational_to_f64_handles_huge_terms() {
        let big = BigInt::from(10).pow(80);
        let r = BigRational::new(big.clone() * 2, big * 3);
        assert!((rational_to_f64(&r) - 2.0 / 3.0).abs() < 1e-16);
    }
}
