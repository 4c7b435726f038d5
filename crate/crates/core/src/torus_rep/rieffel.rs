use std::f64::consts::{PI, TAU};

use serde::Serialize;

use super::{DenseRep, RepError, PROJECTION_TOL, SELF_ADJOINT_TOL};
use crate::linalg::{op_norm, CMatrix, C64};

/// A real function on `R/Z`, available pointwise and through its Fourier
/// coefficients `ĥ_k = ∫ h(t) e^{−2πikt} dt`.
pub trait CircleFn {
    fn eval(&self, t: f64) -> f64;
    fn fourier(&self, k: i64) -> C64;
}

/// Bump profiles for the projection `p = V g(U) + f(U) + g(U) V*`.
///
/// `f` ramps up linearly on `[0, δ]`, equals 1 on `[δ, θ]`, ramps down on
/// `[θ, θ+δ]` and vanishes elsewhere, with `δ = min(θ, 1−θ)/4`. On the
/// down-ramp `f(t) + f(t−θ) = 1`, which together with `g = sqrt(f − f²)`
/// (supported on the down-ramp) gives `p² = p` in `A_θ` and `τ(p) = ∫f = θ`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RieffelProfile {
    pub theta: f64,
    pub delta: f64,
}

impl RieffelProfile {
    pub fn new(theta: f64) -> Result<Self, RepError> {
        if !(theta > 0.0 && theta < 1.0) {
            return Err(RepError::ThetaOutOfRange(theta));
        }
        Ok(RieffelProfile { theta, delta: theta.min(1.0 - theta) / 4.0 })
    }

    pub fn f(&self, t: f64) -> f64 {
        let (th, d) = (self.theta, self.delta);
        let t = t.rem_euclid(1.0);
        if t < d {
            t / d
        } else if t < th {
            1.0
        } else if t < th + d {
            1.0 - (t - th) / d
        } else {
            0.0
        }
    }

    pub fn g(&self, t: f64) -> f64 {
        let t = t.rem_euclid(1.0);
        if t >= self.theta && t < self.theta + self.delta {
            let f = self.f(t);
            (f - f * f).max(0.0).sqrt()
        } else {
            0.0
        }
    }

    /// `f̂_k` in closed form: `f` is piecewise linear, so `f''` is a sum of
    /// point masses at the four knots.
    pub fn f_hat(&self, k: i64) -> C64 {
        if k == 0 {
            return C64::new(self.theta, 0.0);
        }
        let (th, d) = (self.theta, self.delta);
        let knots = [(0.0, 1.0 / d), (d, -1.0 / d), (th, -1.0 / d), (th + d, 1.0 / d)];
        let w = TAU * k as f64;
        let sum: C64 = knots.iter().map(|&(t, jump)| C64::from_polar(jump, -w * t)).sum();
        -sum / (w * w)
    }

    /// `ĝ_k` by Gauss–Chebyshev (second kind) quadrature of
    /// `∫_θ^{θ+δ} sqrt(s(1−s)) e^{−2πikt} dt`, `s = (t−θ)/δ`.
    pub fn g_hat(&self, k: i64) -> C64 {
        const NODES: usize = 96;
        let (th, d) = (self.theta, self.delta);
        let w = TAU * k as f64;
        let mut acc = C64::new(0.0, 0.0);
        for i in 1..=NODES {
            let a = i as f64 * PI / (NODES + 1) as f64;
            let x = a.cos();
            let weight = PI / (NODES + 1) as f64 * a.sin().powi(2);
            // s = (1+x)/2, sqrt(s(1−s)) = sqrt(1−x²)/2, ds = dx/2.
            let t = th + d * (1.0 + x) / 2.0;
            acc += C64::from_polar(weight / 4.0, -w * t);
        }
        acc * d
    }

    pub fn part_f(&self) -> ProfilePart {
        ProfilePart { profile: *self, g: false }
    }

    pub fn part_g(&self) -> ProfilePart {
        ProfilePart { profile: *self, g: true }
    }
}

/// `f` or `g` of a [`RieffelProfile`] as a [`CircleFn`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProfilePart {
    profile: RieffelProfile,
    g: bool,
}

impl CircleFn for ProfilePart {
    fn eval(&self, t: f64) -> f64 {
        if self.g {
            self.profile.g(t)
        } else {
            self.profile.f(t)
        }
    }

    fn fourier(&self, k: i64) -> C64 {
        if self.g {
            self.profile.g_hat(k)
        } else {
            self.profile.f_hat(k)
        }
    }
}

/// The projection matrix together with its measured defects.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RieffelProjection {
    pub profile: RieffelProfile,
    #[serde(skip)]
    pub matrix: CMatrix,
    pub idempotent_defect: f64,
    pub self_adjoint_defect: f64,
    /// Normalized matrix trace.
    pub trace: f64,
}

/// Assemble `p` from the functional calculus of `rep` without checking it.
pub fn assemble(rep: &dyn DenseRep, profile: &RieffelProfile) -> CMatrix {
    let f = rep.function_of_u(&profile.part_f());
    let g = rep.function_of_u(&profile.part_g());
    let v = rep.v();
    v * &g + f + &g * v.adjoint()
}

/// The projection of trace `θ` in a finite representation.
///
/// Fails with `RepresentationTooSmall` when `‖p² − p‖ > 1e−8` or
/// `‖p − p*‖ > 1e−10`, which happens when `rep` does not resolve the ramps.
pub fn rieffel_projection(rep: &dyn DenseRep) -> Result<RieffelProjection, RepError> {
    let profile = RieffelProfile::new(rep.angle().value())?;
    let p = assemble(rep, &profile);
    let idempotent_defect = op_norm(&(&p * &p - &p));
    let self_adjoint_defect = op_norm(&(&p - p.adjoint()));
    if idempotent_defect > PROJECTION_TOL || self_adjoint_defect > SELF_ADJOINT_TOL {
        return Err(RepError::RepresentationTooSmall { defect: idempotent_defect.max(self_adjoint_defect) });
    }
    let trace = p.trace().re / rep.dim() as f64;
    Ok(RieffelProjection { profile, matrix: p, idempotent_defect, self_adjoint_defect, trace })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::torus_rep::clock_shift;

    fn riemann(h: impl Fn(f64) -> f64, k: i64) -> C64 {
        let m = 1 << 16;
        (0..m)
            .map(|j| {
                let t = (j as f64 + 0.5) / m as f64;
                C64::from_polar(h(t), -TAU * k as f64 * t)
            })
            .sum::<C64>()
            / m as f64
    }

    #[test]
    fn closed_form_coefficients_match_quadrature() {
        let p = RieffelProfile::new(0.618_033_988_749_894_8).unwrap();
        for k in [-7, -1, 0, 1, 2, 5, 24] {
            assert!((p.f_hat(k) - riemann(|t| p.f(t), k)).norm() < 1e-8, "f̂_{k}");
            assert!((p.g_hat(k) - riemann(|t| p.g(t), k)).norm() < 1e-6, "ĝ_{k}");
        }
    }

    #[test]
    fn shift_identity_on_down_ramp() {
        let p = RieffelProfile::new(0.3).unwrap();
        for i in 0..100 {
            let t = p.theta + p.delta * i as f64 / 100.0;
            assert!((p.f(t) + p.f(t - p.theta) - 1.0).abs() < 1e-14);
        }
    }

    #[test]
    fn two_fifths_in_clock_shift() {
        let pr = rieffel_projection(&clock_shift(2, 5).unwrap()).unwrap();
        assert!((pr.trace - 0.4).abs() < 1e-12);
        assert!(pr.idempotent_defect < 1e-12);
    }

    #[test]
    fn theta_range_checked() {
        assert_eq!(RieffelProfile::new(0.0), Err(RepError::ThetaOutOfRange(0.0)));
        assert!(rieffel_projection(&clock_shift(0, 1).unwrap()).is_err());
    }
}
