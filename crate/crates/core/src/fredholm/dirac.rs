use super::{
    AlgebraElement, DiagonalConjugation, FredholmError, ModuleInvariants, PairingMethod, PairingResult,
    Tolerances,
};
use crate::linalg::{interior_dimension, lowest_eigenpairs, CMatrix, CVector, LanczosOptions, SparseCMatrix, C64};
use crate::torus_rep::{dirac_data, lattice_rieffel, Angle, NcPoly, TruncatedZ2Rep};

/// `(ℓ²(Z²) ⊗ C², a ↦ diag(a, a), F = [[0, F₀*], [F₀, 0]])`, `γ = diag(1, −1)`,
/// cut down to the box `|m|, |n| ≤ N`.
#[derive(Debug, Clone, PartialEq)]
pub struct DiracModule {
    pub angle: Angle,
    pub n: usize,
    pub conjugation: Option<DiagonalConjugation>,
}

pub fn dirac_module(angle: Angle, n: usize) -> Result<DiracModule, FredholmError> {
    if n < 4 {
        return Err(FredholmError::InvalidInput(format!("Dirac module needs N ≥ 4, got {n}")));
    }
    Ok(DiracModule { angle, n, conjugation: None })
}

impl DiracModule {
    pub fn data(&self) -> TruncatedZ2Rep {
        dirac_data(self.angle.clone(), self.n)
    }

    pub fn at_truncation(&self, n: usize) -> Self {
        DiracModule { n, ..self.clone() }
    }

    /// Defects of `F² = 1`, `F = F*`, `γ² = 1`, `γF = −Fγ`, `[γ, π(a)] = 0`,
    /// measured on the assembled sparse operators.
    pub fn invariants(&self) -> ModuleInvariants {
        let data = self.data();
        let d = data.dim();
        let one = C64::new(1.0, 0.0);
        let mut ft = Vec::with_capacity(2 * d);
        for (i, z) in data.f0.iter().enumerate() {
            ft.push((i, d + i, z.conj()));
            ft.push((d + i, i, *z));
        }
        let f = SparseCMatrix::from_triplets(2 * d, 2 * d, ft).expect("block indices");
        let g = SparseCMatrix::from_triplets(
            2 * d,
            2 * d,
            (0..2 * d).map(|i| (i, i, if i < d { one } else { -one })).collect(),
        )
        .expect("diagonal indices");
        let id = SparseCMatrix::identity(2 * d);
        let minus = C64::new(-1.0, 0.0);
        let defect = |x: SparseCMatrix| x.max_abs();
        let doubled = |a: &SparseCMatrix| {
            let t = a.entries().flat_map(|(r, c, v)| [(r, c, v), (d + r, d + c, v)]).collect();
            SparseCMatrix::from_triplets(2 * d, 2 * d, t).expect("block indices")
        };
        let commutes = [&data.u, &data.v]
            .into_iter()
            .map(|a| {
                let p = doubled(a);
                defect(g.mul(&p).unwrap().add_scaled(minus, &p.mul(&g).unwrap()).unwrap())
            })
            .fold(0.0, f64::max);
        ModuleInvariants {
            f_squared: defect(f.mul(&f).unwrap().add_scaled(minus, &id).unwrap()),
            f_self_adjoint: f.hermitian_defect(),
            grading_squared: defect(g.mul(&g).unwrap().add_scaled(minus, &id).unwrap()),
            grading_anticommutes_f: defect(g.mul(&f).unwrap().add_scaled(one, &f.mul(&g).unwrap()).unwrap()),
            grading_commutes_pi: commutes,
        }
    }

    /// The projection as a sparse operator on the box, conjugated if required.
    fn projection(&self, data: &TruncatedZ2Rep, e: &AlgebraElement, tol: &Tolerances) -> Result<SparseCMatrix, FredholmError> {
        let dim = data.dim();
        let p = match e {
            AlgebraElement::Poly(poly) if *poly == NcPoly::one() => SparseCMatrix::identity(dim),
            AlgebraElement::Poly(poly) if *poly == NcPoly::zero() => SparseCMatrix::zeros(dim, dim),
            AlgebraElement::RieffelProjection => lattice_rieffel(data, tol.bandwidth)?.matrix,
            AlgebraElement::Poly(_) => {
                return Err(FredholmError::UnsupportedClass(
                    "the Dirac module pairs with 1, 0 and the projection p".into(),
                ))
            }
            AlgebraElement::Diag(_) => {
                return Err(FredholmError::UnsupportedClass("matrix classes are not supported by the Dirac module".into()))
            }
        };
        Ok(match self.conjugation {
            None => p,
            Some(w) => {
                let ph: Vec<C64> = (0..dim).map(|i| {
                    let (m, n) = data.site(i);
                    w.phase(m, n, 0)
                }).collect();
                let t = p.entries().map(|(r, c, v)| (r, c, ph[r] * v * ph[c].conj())).collect();
                SparseCMatrix::from_triplets(dim, dim, t)?
            }
        })
    }
}

/// Index of `P F₀ P` on the range of `P`, i.e. of `A = P F₀ P + (1 − P)`,
/// counted from the singular values below `compressed_rank` whose singular
/// vectors live in the inner half of the box; recomputed at `N + stability_step`.
pub fn dirac_even_pairing(
    module: &DiracModule,
    e: &AlgebraElement,
    tol: &Tolerances,
) -> Result<PairingResult, FredholmError> {
    let mut first = compressed_index(module, e, tol)?;
    let bigger = module.at_truncation(module.n + tol.stability_step);
    let second = compressed_index(&bigger, e, tol)?;
    if first.value != second.value {
        return Err(FredholmError::UnstableIndex {
            n: module.n,
            value: first.value,
            n_next: bigger.n,
            value_next: second.value,
        });
    }
    first.stable = true;
    Ok(first)
}

fn compressed_index(module: &DiracModule, e: &AlgebraElement, tol: &Tolerances) -> Result<PairingResult, FredholmError> {
    let data = module.data();
    let p = module.projection(&data, e, tol)?;
    let f0 = &data.f0;
    let apply = |x: &CVector, adjoint: bool| -> CVector {
        let px = p.mul_vec(x);
        let mut fpx = px.clone();
        for (i, z) in fpx.iter_mut().enumerate() {
            *z *= if adjoint { f0[i].conj() } else { f0[i] };
        }
        p.mul_vec(&fpx) + x - px
    };
    let inner = data.inner_sites(module.n / 2);
    let (ker, sv_ker) = near_kernel(data.dim(), |x| apply(&apply(x, false), true), &inner, tol)?;
    let (coker, sv_coker) = near_kernel(data.dim(), |x| apply(&apply(x, true), false), &inner, tol)?;
    let mut smallest: Vec<f64> = sv_ker.into_iter().chain(sv_coker).collect();
    smallest.sort_by(f64::total_cmp);
    smallest.truncate(6);
    Ok(PairingResult::index(PairingMethod::CompressedIndex, module.n, tol.compressed_rank, (ker, coker), smallest, tol.round))
}

/// Interior dimension of the span of singular vectors below tolerance for the
/// positive operator `h = A*A` (or `AA*`), plus the singular values seen.
fn near_kernel<F>(dim: usize, h: F, inner: &[bool], tol: &Tolerances) -> Result<(usize, Vec<f64>), FredholmError>
where
    F: Fn(&CVector) -> CVector,
{
    let mut want = 6;
    loop {
        let opts = LanczosOptions { want, tol: 1e-6, ..Default::default() };
        let pairs = lowest_eigenpairs(dim, &h, &opts)?;
        let sv: Vec<f64> = pairs.iter().map(|p| p.value.max(0.0).sqrt()).collect();
        let (lo, hi) = (tol.compressed_rank, tol.compressed_rank * tol.compressed_gap);
        if let Some(bad) = sv.iter().find(|&&s| s >= lo && s < hi) {
            return Err(FredholmError::NoSpectralGap(format!(
                "singular value {bad:.3e} lies between {lo:.1e} and {hi:.1e}"
            )));
        }
        let below = sv.iter().filter(|&&s| s < lo).count();
        if below == sv.len() && want < dim {
            // Every computed value is small: ask for more until one clears the gap.
            want = (want * 2).min(dim);
            continue;
        }
        let mut basis = CMatrix::zeros(dim, below);
        for (j, pair) in pairs.iter().take(below).enumerate() {
            basis.set_column(j, &pair.vector);
        }
        return Ok((interior_dimension(&basis, inner), sv));
    }
}
