use serde::Serialize;

use super::{Angle, CircleFn, DenseRep};
use crate::exact_arith::Theta;
use crate::linalg::{kron, CMatrix, C64};

/// Which generator acts by the (truncated) shift on `ℓ²(Z)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ShiftVariant {
    /// `π(U) e_k = e_{k+1}`, `π(V) e_k = λ^k e_k`.
    Z1,
    /// `π(V) e_k = e_{k+1}`, `π(U) e_k = λ^{−k} e_k`.
    #[serde(rename = "z1prime")]
    Z1Prime,
}

impl ShiftVariant {
    pub fn shift_generator(self) -> &'static str {
        match self {
            ShiftVariant::Z1 => "U",
            ShiftVariant::Z1Prime => "V",
        }
    }
}

/// Where the truncation breaks unitarity.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BoundaryInfo {
    /// The generator whose matrix is only a partial isometry.
    pub shift_generator: &'static str,
    /// Site `k = N` whose basis vectors the truncated shift sends to zero.
    pub defective_site: i64,
}

/// `ℓ²(Z) ⊗ C^d` cut down to sites `−N..=N`.
///
/// The fiber carries a diagonal unitary `φ = diag(e^{2πi t_j})` for the
/// generator that acts diagonally on sites; basis index is `(k+N)·d + j`.
#[derive(Debug, Clone, PartialEq)]
pub struct TruncatedZRep {
    pub n: usize,
    pub variant: ShiftVariant,
    pub fiber_phases: Vec<f64>,
    pub boundary: BoundaryInfo,
    angle: Angle,
    u: CMatrix,
    v: CMatrix,
}

pub fn truncated_rep(theta: &Theta, n: usize, variant: ShiftVariant) -> TruncatedZRep {
    truncated_rep_with_fiber(Angle::from_theta(theta), n, variant, &[0.0])
}

pub fn truncated_rep_with_fiber(
    angle: Angle,
    n: usize,
    variant: ShiftVariant,
    fiber_phases: &[f64],
) -> TruncatedZRep {
    assert!(n >= 1, "half-width must be positive");
    assert!(!fiber_phases.is_empty(), "fiber must be nonzero");
    let size = 2 * n + 1;
    let d = fiber_phases.len();
    let mut shift = CMatrix::zeros(size, size);
    for i in 0..size - 1 {
        shift[(i + 1, i)] = C64::new(1.0, 0.0);
    }
    let shift = kron(&shift, &CMatrix::identity(d, d));
    let sign = match variant {
        ShiftVariant::Z1 => 1,
        ShiftVariant::Z1Prime => -1,
    };
    let diag = CMatrix::from_fn(size * d, size * d, |r, c| {
        if r != c {
            return C64::new(0.0, 0.0);
        }
        let k = (r / d) as i64 - n as i64;
        angle.phase(sign * k) * C64::from_polar(1.0, std::f64::consts::TAU * fiber_phases[r % d])
    });
    let (u, v) = match variant {
        ShiftVariant::Z1 => (shift, diag),
        ShiftVariant::Z1Prime => (diag, shift),
    };
    TruncatedZRep {
        n,
        variant,
        fiber_phases: fiber_phases.to_vec(),
        boundary: BoundaryInfo { shift_generator: variant.shift_generator(), defective_site: n as i64 },
        angle,
        u,
        v,
    }
}

impl TruncatedZRep {
    pub fn fiber_dim(&self) -> usize {
        self.fiber_phases.len()
    }

    /// Site `k ∈ −N..=N` of a basis index.
    pub fn site(&self, index: usize) -> i64 {
        (index / self.fiber_dim()) as i64 - self.n as i64
    }

    /// `‖(VU − λUV) restricted to sites |k| ≤ N − 1‖`.
    pub fn interior_relation_defect(&self) -> f64 {
        let d = &self.v * &self.u - &self.u * &self.v * self.angle.lambda();
        let cols: Vec<usize> =
            (0..self.dim()).filter(|&i| self.site(i).unsigned_abs() < self.n as u64).collect();
        crate::linalg::op_norm(&d.select_columns(cols.iter()))
    }
}

impl DenseRep for TruncatedZRep {
    fn dim(&self) -> usize {
        self.u.nrows()
    }

    fn angle(&self) -> &Angle {
        &self.angle
    }

    fn u(&self) -> &CMatrix {
        &self.u
    }

    fn v(&self) -> &CMatrix {
        &self.v
    }

    fn function_of_u(&self, h: &dyn CircleFn) -> CMatrix {
        match self.variant {
            ShiftVariant::Z1Prime => {
                let d = self.fiber_dim();
                CMatrix::from_fn(self.dim(), self.dim(), |r, c| {
                    if r != c {
                        return C64::new(0.0, 0.0);
                    }
                    let t = self.fiber_phases[r % d] - self.angle.multiple(self.site(r));
                    C64::new(h.eval(t), 0.0)
                })
            }
            ShiftVariant::Z1 => {
                // Fourier series of the truncated shift; exact away from the edges
                // up to the neglected tail.
                const BANDWIDTH: i64 = 24;
                let mut out = CMatrix::identity(self.dim(), self.dim()) * h.fourier(0);
                let mut up = CMatrix::identity(self.dim(), self.dim());
                let mut down = up.clone();
                let u_star = self.u.adjoint();
                for k in 1..=BANDWIDTH {
                    up = &self.u * up;
                    down = &u_star * down;
                    out += &up * h.fourier(k) + &down * h.fourier(-k);
                }
                out
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn z1_third_has_clock_diagonal() {
        let t = Theta::parse("1/3", 60).unwrap();
        let r = truncated_rep(&t, 2, ShiftVariant::Z1);
        let a = Angle::rational(1, 3);
        for (i, k) in (-2..=2).enumerate() {
            assert!((r.v()[(i, i)] - a.phase(k)).norm() < 1e-15);
        }
        assert!(r.interior_relation_defect() < 1e-12);
        assert_eq!(r.boundary.shift_generator, "U");
    }

    #[test]
    fn theta_zero_gives_identity_clock() {
        let t = Theta::parse("0", 60).unwrap();
        let r = truncated_rep(&t, 1, ShiftVariant::Z1);
        assert_eq!(r.v(), &CMatrix::identity(3, 3));
    }

    #[test]
    fn z1prime_relation_and_fiber() {
        let r = truncated_rep_with_fiber(Angle::from_f64(0.3), 5, ShiftVariant::Z1Prime, &[0.0, 0.25, 0.5]);
        assert_eq!(r.dim(), 33);
        assert!(r.interior_relation_defect() < 1e-12);
        // The shift is an isometry except on the edge site.
        let defect = r.v().adjoint() * r.v() - CMatrix::identity(33, 33);
        assert!((crate::linalg::op_norm(&defect) - 1.0).abs() < 1e-12);
        assert_eq!(defect.column(32).norm(), 1.0);
    }
}
