use super::{AlgebraElement, DiagonalConjugation, FredholmError, PairingMethod, PairingResult, Tolerances};
use crate::linalg::{interior_dimension, kernel_basis, op_norm, singular_values, CMatrix};
use crate::sign;
use crate::torus_rep::{truncated_rep_with_fiber, Angle, DenseRep, ShiftVariant, TruncatedZRep};

/// `(ℓ²(Z) ⊗ C^d, π, F = sign(k))` truncated to sites `−N..=N`.
///
/// The representation is stored by its parameters so the same module can be
/// rebuilt at a larger truncation to certify stability.
#[derive(Debug, Clone, PartialEq)]
pub struct OddFredholmModule {
    pub angle: Angle,
    pub n: usize,
    pub variant: ShiftVariant,
    pub fiber_phases: Vec<f64>,
    pub conjugation: Option<DiagonalConjugation>,
}

/// The canonical odd module built on a truncated `ℓ²(Z)` representation.
pub fn canonical_odd(rep: &TruncatedZRep) -> OddFredholmModule {
    OddFredholmModule {
        angle: rep.angle().clone(),
        n: rep.n,
        variant: rep.variant,
        fiber_phases: rep.fiber_phases.clone(),
        conjugation: None,
    }
}

impl OddFredholmModule {
    /// Module with a `d`-dimensional fiber carrying the identity representation.
    pub fn with_fiber_dim(angle: Angle, n: usize, variant: ShiftVariant, d: usize) -> Self {
        OddFredholmModule { angle, n, variant, fiber_phases: vec![0.0; d.max(1)], conjugation: None }
    }

    pub fn fiber_dim(&self) -> usize {
        self.fiber_phases.len()
    }

    pub fn rep(&self) -> TruncatedZRep {
        self.rep_at(self.n)
    }

    pub fn rep_at(&self, n: usize) -> TruncatedZRep {
        truncated_rep_with_fiber(self.angle.clone(), n, self.variant, &self.fiber_phases)
    }

    pub fn at_truncation(&self, n: usize) -> Self {
        OddFredholmModule { n, ..self.clone() }
    }

    pub fn with_conjugation(&self, w: DiagonalConjugation) -> Self {
        OddFredholmModule { conjugation: Some(w), ..self.clone() }
    }

    /// Diagonal of `F` (`sign(k)` with `sign(0) = +1`).
    pub fn f_diagonal(&self) -> Vec<i64> {
        let rep = self.rep();
        (0..rep.dim()).map(|i| sign(rep.site(i))).collect()
    }

    /// `π(x)`, conjugated by the module's diagonal unitary if any.
    pub fn pi(&self, rep: &TruncatedZRep, x: &AlgebraElement) -> Result<CMatrix, FredholmError> {
        let m = x.evaluate(rep)?;
        Ok(match self.conjugation {
            None => m,
            Some(w) => {
                let d = rep.dim();
                let ph: Vec<_> =
                    (0..m.nrows()).map(|i| w.phase(rep.site(i % d), (i % rep.fiber_dim()) as i64, i / d)).collect();
                CMatrix::from_fn(m.nrows(), m.ncols(), |r, c| ph[r] * m[(r, c)] * ph[c].conj())
            }
        })
    }

    /// `‖[F, π(x)]‖` where `x` is the generator acting diagonally on sites.
    pub fn diagonal_generator_commutator(&self) -> f64 {
        let rep = self.rep();
        let g = match self.variant {
            ShiftVariant::Z1 => rep.v(),
            ShiftVariant::Z1Prime => rep.u(),
        };
        let f = self.f_diagonal();
        let c = CMatrix::from_fn(g.nrows(), g.ncols(), |r, k| g[(r, k)] * (f[r] - f[k]) as f64);
        op_norm(&c)
    }
}

/// `Index(E π(u) E)` on the range of `E = (1+F)/2`, recomputed at
/// `N + stability_step`.
pub fn odd_pairing(
    module: &OddFredholmModule,
    u: &AlgebraElement,
    tol: &Tolerances,
) -> Result<PairingResult, FredholmError> {
    let mut first = index_at(module, u, tol)?;
    let bigger = module.at_truncation(module.n + tol.stability_step);
    let second = index_at(&bigger, u, tol)?;
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

fn index_at(module: &OddFredholmModule, u: &AlgebraElement, tol: &Tolerances) -> Result<PairingResult, FredholmError> {
    if let AlgebraElement::RieffelProjection = u {
        return Err(FredholmError::UnsupportedClass("odd modules pair with unitaries".into()));
    }
    let rep = module.rep();
    let d = rep.dim();
    let n = module.n as i64;
    let reach = u.shift_degree(rep.boundary.shift_generator).max(1) as i64;
    if 2 * reach > n {
        return Err(FredholmError::InvalidInput(format!(
            "truncation N = {n} too small for a shift of degree {reach}"
        )));
    }
    let pu = module.pi(&rep, u)?;
    let size = pu.nrows();
    let site = |i: usize| rep.site(i % d);

    // Unitarity where the truncation cannot be seen: |k| ≤ N − reach.
    let inner_cols: Vec<usize> = (0..size).filter(|&i| site(i).abs() <= n - reach).collect();
    let gram = pu.adjoint() * &pu - CMatrix::identity(size, size);
    let defect = op_norm(&gram.select_columns(inner_cols.iter()));
    if defect > 1e-8 {
        return Err(FredholmError::NotUnitary { defect });
    }

    // Compress to the range of E (sites k ≥ 0).
    let plus: Vec<usize> = (0..size).filter(|&i| site(i) >= 0).collect();
    let block = pu.select_rows(plus.iter()).select_columns(plus.iter());
    let interior: Vec<bool> = plus.iter().map(|&i| site(i) <= n - reach).collect();
    let ker = kernel_basis(&block, tol.rank);
    let coker = kernel_basis(&block.adjoint(), tol.rank);
    let dims = (interior_dimension(&ker, &interior), interior_dimension(&coker, &interior));
    let mut smallest = singular_values(&block);
    smallest.reverse();
    smallest.truncate(6);
    Ok(PairingResult::index(PairingMethod::KernelIndex, module.n, tol.rank, dims, smallest, tol.round))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fredholm::ClassSpec;

    fn pair(m: &OddFredholmModule, c: ClassSpec) -> i64 {
        odd_pairing(m, &c.element(), &Tolerances::default()).unwrap().value
    }

    #[test]
    fn generator_table() {
        let a = Angle::from_f64(0.3819660112501051);
        let z1 = OddFredholmModule::with_fiber_dim(a.clone(), 10, ShiftVariant::Z1, 1);
        let z1p = OddFredholmModule::with_fiber_dim(a, 10, ShiftVariant::Z1Prime, 1);
        assert_eq!(pair(&z1, ClassSpec::U(1)).abs(), 1);
        assert_eq!(pair(&z1, ClassSpec::V(1)), 0);
        assert_eq!(pair(&z1p, ClassSpec::U(1)), 0);
        assert_eq!(pair(&z1p, ClassSpec::V(1)).abs(), 1);
        assert_eq!(pair(&z1, ClassSpec::U(1)), pair(&z1p, ClassSpec::V(1)));
        assert_eq!(pair(&z1, ClassSpec::One), 0);
    }

    #[test]
    fn diagonal_generator_commutes_with_f() {
        let m = OddFredholmModule::with_fiber_dim(Angle::from_f64(0.2), 6, ShiftVariant::Z1, 2);
        assert_eq!(m.diagonal_generator_commutator(), 0.0);
        assert_eq!(m.f_diagonal()[6 * 2], 1);
    }

    #[test]
    fn projections_are_not_unitaries() {
        let m = OddFredholmModule::with_fiber_dim(Angle::from_f64(0.2), 6, ShiftVariant::Z1, 1);
        assert!(odd_pairing(&m, &AlgebraElement::RieffelProjection, &Tolerances::default()).is_err());
        let mut poly = crate::torus_rep::NcPoly::u_pow(1);
        poly.add_term(0, 0, crate::linalg::C64::new(1.0, 0.0));
        assert!(matches!(
            odd_pairing(&m, &AlgebraElement::Poly(poly), &Tolerances::default()),
            Err(FredholmError::NotUnitary { .. })
        ));
    }
}
