use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::linalg::C64;

/// A random diagonal unitary, defined site by site from a seed so that the
/// same unitary can be applied at every truncation size.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct DiagonalConjugation {
    pub seed: u64,
}

impl DiagonalConjugation {
    pub fn new(seed: u64) -> Self {
        DiagonalConjugation { seed }
    }

    /// The unit-modulus entry at the basis vector labelled `(a, b, c)`.
    pub fn phase(&self, a: i64, b: i64, c: usize) -> C64 {
        let mut key = self.seed;
        for part in [a as u64, b as u64, c as u64] {
            key = splitmix(key ^ part);
        }
        let t: f64 = ChaCha8Rng::seed_from_u64(key).random();
        C64::from_polar(1.0, std::f64::consts::TAU * t)
    }
}

fn splitmix(x: u64) -> u64 {
    let mut z = x.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deterministic_and_unimodular() {
        let w = DiagonalConjugation::new(7);
        assert_eq!(w.phase(1, -2, 0), w.phase(1, -2, 0));
        assert_ne!(w.phase(1, -2, 0), w.phase(-2, 1, 0));
        assert!((w.phase(3, 3, 3).norm() - 1.0).abs() < 1e-15);
    }
}
