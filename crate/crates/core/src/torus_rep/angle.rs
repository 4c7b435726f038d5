use std::f64::consts::TAU;

use num_traits::ToPrimitive;

use crate::exact_arith::Theta;
use crate::linalg::C64;

/// A rotation angle `θ mod 1`, kept exact when it is a small rational so that
/// `λ^k` does not drift for large `k`.
#[derive(Debug, Clone, PartialEq)]
pub struct Angle {
    exact: Option<(i64, i64)>,
    value: f64,
    label: String,
}

impl Angle {
    pub fn rational(m: i64, q: i64) -> Self {
        assert!(q > 0, "denominator must be positive");
        let r = m.rem_euclid(q);
        Angle { exact: Some((r, q)), value: r as f64 / q as f64, label: format!("{m}/{q}") }
    }

    /// Approximate angle, reduced to `[0, 1)`.
    pub fn from_f64(theta: f64) -> Self {
        Angle { exact: None, value: theta.rem_euclid(1.0), label: format!("{theta}") }
    }

    pub fn from_theta(theta: &Theta) -> Self {
        if let Some((num, den)) = theta.as_fraction() {
            if let (Some(m), Some(q)) = (num.to_i64(), den.to_i64()) {
                let mut a = Angle::rational(m, q);
                a.label = theta.to_string();
                return a;
            }
        }
        let mut a = Angle::from_f64(theta.to_f64());
        a.label = theta.to_string();
        a
    }

    /// `θ mod 1` in `[0, 1)`.
    pub fn value(&self) -> f64 {
        self.value
    }

    pub fn exact(&self) -> Option<(i64, i64)> {
        self.exact
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    /// Fractional part of `k θ`.
    pub fn multiple(&self, k: i64) -> f64 {
        match self.exact {
            Some((m, q)) => {
                let r = (i128::from(m) * i128::from(k)).rem_euclid(i128::from(q));
                r as f64 / q as f64
            }
            None => (self.value * k as f64).rem_euclid(1.0),
        }
    }

    /// `λ^k = e^{2πi kθ}`.
    pub fn phase(&self, k: i64) -> C64 {
        C64::from_polar(1.0, TAU * self.multiple(k))
    }

    pub fn lambda(&self) -> C64 {
        self.phase(1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_phases_do_not_drift() {
        let a = Angle::rational(1, 3);
        assert!((a.phase(3_000_000_000) - C64::new(1.0, 0.0)).norm() < 1e-15);
        assert_eq!(Angle::rational(-1, 3).exact(), Some((2, 3)));
        assert!((Angle::rational(1, 2).lambda() - C64::new(-1.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn from_theta_keeps_exactness() {
        let t = Theta::parse("2/7", 60).unwrap();
        assert_eq!(Angle::from_theta(&t).exact(), Some((2, 7)));
        let g = Theta::golden(60);
        let a = Angle::from_theta(&g);
        assert!(a.exact().is_none());
        assert!((a.value() - 0.618_033_988_749_894_8).abs() < 1e-15);
    }
}
