use num_integer::Integer;

use super::{Angle, CircleFn, DenseRep, RepError};
use crate::linalg::{kron, CMatrix, C64};

/// The `q × q` clock and shift matrices for `θ = m/q`, optionally amplified
/// by `⊗ I_k`.
#[derive(Debug, Clone, PartialEq)]
pub struct ClockShiftRep {
    pub m: i64,
    pub q: u64,
    pub multiplicity: usize,
    angle: Angle,
    u: CMatrix,
    v: CMatrix,
}

/// `U` = cyclic shift `e_k ↦ e_{k+1 mod q}`, `V = diag(1, λ, …, λ^{q−1})`.
pub fn clock_shift(m: i64, q: u64) -> Result<ClockShiftRep, RepError> {
    if q == 0 {
        return Err(RepError::InvalidInput("q must be positive".into()));
    }
    let qi = i64::try_from(q).map_err(|_| RepError::InvalidInput("q too large".into()))?;
    if m.gcd(&qi) != 1 {
        return Err(RepError::NotCoprime { m, q });
    }
    let n = q as usize;
    let angle = Angle::rational(m, qi);
    let mut u = CMatrix::zeros(n, n);
    for k in 0..n {
        u[((k + 1) % n, k)] = C64::new(1.0, 0.0);
    }
    let v = CMatrix::from_diagonal(&nalgebra::DVector::from_fn(n, |k, _| angle.phase(k as i64)));
    Ok(ClockShiftRep { m, q, multiplicity: 1, angle, u, v })
}

impl ClockShiftRep {
    /// `π ⊗ I_k`.
    pub fn amplify(&self, k: usize) -> ClockShiftRep {
        assert!(k >= 1, "amplification must be at least 1");
        let id = CMatrix::identity(k, k);
        ClockShiftRep {
            m: self.m,
            q: self.q,
            multiplicity: self.multiplicity * k,
            angle: self.angle.clone(),
            u: kron(&self.u, &id),
            v: kron(&self.v, &id),
        }
    }

    pub fn lambda(&self) -> C64 {
        self.angle.lambda()
    }

    /// Matrix of `h(U)` on the unamplified `q`-dimensional space.
    fn base_function_of_u(&self, h: &dyn CircleFn) -> CMatrix {
        // U has eigenvalues ω^j with eigenvectors (ω^{−ja})_a / √q, so
        // h(U)_{ab} = (1/q) Σ_j h(j/q) ω^{j(b−a)}.
        let q = self.q as usize;
        let samples: Vec<f64> = (0..q).map(|j| h.eval(j as f64 / q as f64)).collect();
        let root = Angle::rational(1, self.q as i64);
        let by_offset: Vec<C64> = (0..q)
            .map(|d| {
                samples.iter().enumerate().map(|(j, s)| root.phase((j * d) as i64) * *s).sum::<C64>()
                    / q as f64
            })
            .collect();
        CMatrix::from_fn(q, q, |a, b| by_offset[(b + q - a) % q])
    }
}

impl DenseRep for ClockShiftRep {
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
        kron(&self.base_function_of_u(h), &CMatrix::identity(self.multiplicity, self.multiplicity))
    }
}

/// The zero homomorphism on `C^dim`.
#[derive(Debug, Clone, PartialEq)]
pub struct ZeroRep {
    angle: Angle,
    zero: CMatrix,
}

impl ZeroRep {
    pub fn new(angle: Angle, dim: usize) -> Self {
        ZeroRep { angle, zero: CMatrix::zeros(dim, dim) }
    }
}

impl DenseRep for ZeroRep {
    fn dim(&self) -> usize {
        self.zero.nrows()
    }

    fn angle(&self) -> &Angle {
        &self.angle
    }

    fn u(&self) -> &CMatrix {
        &self.zero
    }

    fn v(&self) -> &CMatrix {
        &self.zero
    }

    fn unital(&self) -> bool {
        false
    }

    fn function_of_u(&self, _h: &dyn CircleFn) -> CMatrix {
        self.zero.clone()
    }
}
