use serde::Serialize;

use super::{Angle, RepError, RieffelProfile};
use crate::linalg::{CVector, SparseCMatrix, C64};

/// The regular representation on `ℓ²(Z²)` cut down to the box `|m|, |n| ≤ N`:
/// `U e_{m,n} = e_{m+1,n}`, `V e_{m,n} = λ^m e_{m,n+1}`, and the phase operator
/// `F₀ e_{m,n} = (m+in)/|m+in| e_{m,n}` with `F₀ e_{0,0} = e_{0,0}`.
#[derive(Debug, Clone, PartialEq)]
pub struct TruncatedZ2Rep {
    pub n: usize,
    pub angle: Angle,
    pub u: SparseCMatrix,
    pub v: SparseCMatrix,
    pub f0: Vec<C64>,
}

pub fn dirac_data(angle: Angle, n: usize) -> TruncatedZ2Rep {
    assert!(n >= 1, "box half-width must be positive");
    let dim = (2 * n + 1).pow(2);
    let mut ut = Vec::with_capacity(dim);
    let mut vt = Vec::with_capacity(dim);
    let mut f0 = Vec::with_capacity(dim);
    let nn = n as i64;
    for i in 0..dim {
        let (m, k) = site_of(n, i);
        if m < nn {
            ut.push((index_of(n, m + 1, k), i, C64::new(1.0, 0.0)));
        }
        if k < nn {
            vt.push((index_of(n, m, k + 1), i, angle.phase(m)));
        }
        f0.push(if (m, k) == (0, 0) {
            C64::new(1.0, 0.0)
        } else {
            C64::new(m as f64, k as f64).unscale((m as f64).hypot(k as f64))
        });
    }
    TruncatedZ2Rep {
        n,
        angle,
        u: SparseCMatrix::from_triplets(dim, dim, ut).expect("box indices"),
        v: SparseCMatrix::from_triplets(dim, dim, vt).expect("box indices"),
        f0,
    }
}

fn site_of(n: usize, i: usize) -> (i64, i64) {
    let l = 2 * n + 1;
    ((i / l) as i64 - n as i64, (i % l) as i64 - n as i64)
}

fn index_of(n: usize, m: i64, k: i64) -> usize {
    let l = 2 * n + 1;
    (m + n as i64) as usize * l + (k + n as i64) as usize
}

impl TruncatedZ2Rep {
    pub fn dim(&self) -> usize {
        self.f0.len()
    }

    /// Lattice site `(m, n)` of a basis index.
    pub fn site(&self, i: usize) -> (i64, i64) {
        site_of(self.n, i)
    }

    pub fn index(&self, m: i64, k: i64) -> Option<usize> {
        let nn = self.n as i64;
        (m.abs() <= nn && k.abs() <= nn).then(|| index_of(self.n, m, k))
    }

    /// Sites with `max(|m|, |n|) ≤ radius`.
    pub fn inner_sites(&self, radius: usize) -> Vec<bool> {
        (0..self.dim())
            .map(|i| {
                let (m, k) = self.site(i);
                m.unsigned_abs().max(k.unsigned_abs()) as usize <= radius
            })
            .collect()
    }

    /// Largest `‖(VU − λUV) e_{m,n}‖` over sites strictly inside the box.
    pub fn interior_relation_defect(&self) -> f64 {
        let lambda = self.angle.lambda();
        let inner = self.inner_sites(self.n - 1);
        (0..self.dim())
            .filter(|&i| inner[i])
            .map(|i| {
                let mut e = CVector::zeros(self.dim());
                e[i] = C64::new(1.0, 0.0);
                let vu = self.v.mul_vec(&self.u.mul_vec(&e));
                let uv = self.u.mul_vec(&self.v.mul_vec(&e));
                (vu - uv * lambda).norm()
            })
            .fold(0.0, f64::max)
    }

    /// `Σ_{|k|≤K} ĥ_k U^k` for `ĥ` given by `coeff`.
    fn fourier_of_u(&self, bandwidth: i64, coeff: impl Fn(i64) -> C64) -> Vec<(usize, usize, C64)> {
        let mut t = Vec::new();
        for i in 0..self.dim() {
            let (m, k) = self.site(i);
            for j in -bandwidth..=bandwidth {
                if let Some(r) = self.index(m + j, k) {
                    t.push((r, i, coeff(j)));
                }
            }
        }
        t
    }
}

/// The projection `V g(U) + f(U) + g(U) V*` compressed to the box, with the
/// functions of `U` replaced by Fourier partial sums of bandwidth `K`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LatticeProjection {
    pub n: usize,
    pub bandwidth: usize,
    pub profile: RieffelProfile,
    #[serde(skip)]
    pub matrix: SparseCMatrix,
    /// `⟨e_{0,0}, p e_{0,0}⟩`, the canonical trace in the regular representation.
    pub trace: f64,
    pub hermitian_defect: f64,
    /// Largest `‖(p² − p) e_{m,n}‖` over sites with `max(|m|,|n|) ≤ N/2`.
    pub interior_idempotent_defect: f64,
}

/// Build the projection in the box representation.
///
/// The compression is never an exact projection; the measured interior defect is
/// reported rather than checked against the finite-matrix tolerance.
pub fn lattice_rieffel(rep: &TruncatedZ2Rep, bandwidth: usize) -> Result<LatticeProjection, RepError> {
    let theta = rep.angle.value();
    let profile = RieffelProfile::new(theta)?;
    if (rep.n as f64) < 4.0 / theta {
        return Err(RepError::InvalidInput(format!(
            "box half-width {} is below 4/θ = {:.2}; the projection would not fit",
            rep.n,
            4.0 / theta
        )));
    }
    let k = bandwidth as i64;
    let g_hat: Vec<C64> = (-k..=k).map(|j| profile.g_hat(j)).collect();
    let mut t = rep.fourier_of_u(k, |j| profile.f_hat(j));
    // V g(U) and g(U) V*; `V* e_{m,n} = λ^{−m} e_{m,n−1}`.
    for i in 0..rep.dim() {
        let (m, n) = rep.site(i);
        for j in -k..=k {
            let c = g_hat[(j + k) as usize];
            if let Some(r) = rep.index(m + j, n + 1) {
                t.push((r, i, c * rep.angle.phase(m + j)));
            }
            if let Some(r) = rep.index(m + j, n - 1) {
                t.push((r, i, c * rep.angle.phase(-m)));
            }
        }
    }
    let matrix = SparseCMatrix::from_triplets(rep.dim(), rep.dim(), t).expect("box indices");
    let origin = rep.index(0, 0).expect("origin is in the box");
    let trace = matrix.get(origin, origin).re;
    let inner = rep.inner_sites(rep.n / 2);
    let mut worst: f64 = 0.0;
    for i in (0..rep.dim()).filter(|&i| inner[i]) {
        let mut e = CVector::zeros(rep.dim());
        e[i] = C64::new(1.0, 0.0);
        let pe = matrix.mul_vec(&e);
        worst = worst.max((matrix.mul_vec(&pe) - pe).norm());
    }
    Ok(LatticeProjection {
        n: rep.n,
        bandwidth,
        profile,
        hermitian_defect: matrix.hermitian_defect(),
        matrix,
        trace,
        interior_idempotent_defect: worst,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn phase_operator_entries() {
        let r = dirac_data(Angle::from_f64(0.3), 3);
        let o = r.index(0, 0).unwrap();
        assert_eq!(r.f0[o], C64::new(1.0, 0.0));
        assert_eq!(r.f0[r.index(1, 0).unwrap()], C64::new(1.0, 0.0));
        assert!(r.f0.iter().all(|z| (z.norm() - 1.0).abs() < 1e-15));
    }

    #[test]
    fn twisted_shift_rule() {
        let a = Angle::from_f64(0.3);
        let r = dirac_data(a.clone(), 3);
        let from = r.index(1, 0).unwrap();
        let to = r.index(1, 1).unwrap();
        assert!((r.v.get(to, from) - a.lambda()).norm() < 1e-15);
        assert!(r.interior_relation_defect() < 1e-12);
    }

    #[test]
    fn lattice_projection_trace_and_defect() {
        let theta = 0.618_033_988_749_894_8;
        let rep = dirac_data(Angle::from_f64(theta), 16);
        let p = lattice_rieffel(&rep, 24).unwrap();
        assert!((p.trace - theta).abs() < 1e-12);
        assert!(p.hermitian_defect < 1e-12);
        assert!(p.interior_idempotent_defect < 0.05, "{}", p.interior_idempotent_defect);
        assert!(lattice_rieffel(&dirac_data(Angle::from_f64(0.1), 8), 24).is_err());
    }
}
