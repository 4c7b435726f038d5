use serde::Serialize;

use super::{
    dirac_even_pairing, round_pairing, AlgebraElement, DiagonalConjugation, DiracModule, FredholmError,
    PairingMethod, PairingResult, Tolerances,
};
use crate::linalg::{block_diagonal, diagonal, op_norm, CMatrix, C64};
use crate::torus_rep::{Angle, CircleFn, ClockShiftRep, DenseRep, ZeroRep};

/// A finite-dimensional representation `φ` usable in the canonical even module.
#[derive(Debug, Clone, PartialEq)]
pub enum FiniteRep {
    ClockShift(ClockShiftRep),
    Zero(ZeroRep),
}

impl DenseRep for FiniteRep {
    fn dim(&self) -> usize {
        self.inner().dim()
    }

    fn angle(&self) -> &Angle {
        self.inner().angle()
    }

    fn u(&self) -> &CMatrix {
        self.inner().u()
    }

    fn v(&self) -> &CMatrix {
        self.inner().v()
    }

    fn unital(&self) -> bool {
        self.inner().unital()
    }

    fn function_of_u(&self, h: &dyn CircleFn) -> CMatrix {
        self.inner().function_of_u(h)
    }
}

impl FiniteRep {
    fn inner(&self) -> &dyn DenseRep {
        match self {
            FiniteRep::ClockShift(r) => r,
            FiniteRep::Zero(r) => r,
        }
    }
}

/// `(C^q ⊕ C^q, φ ⊕ 0, F = [[0,1],[1,0]], γ = diag(1, −1))`.
#[derive(Debug, Clone, PartialEq)]
pub struct CanonicalEven {
    pub phi: FiniteRep,
    pub conjugation: Option<DiagonalConjugation>,
}

impl CanonicalEven {
    fn conjugator(&self) -> CMatrix {
        let d = 2 * self.phi.dim();
        match self.conjugation {
            None => CMatrix::identity(d, d),
            Some(w) => diagonal(&(0..d).map(|i| w.phase(i as i64, 0, 0)).collect::<Vec<_>>()),
        }
    }

    /// `π(x)` on `C^q ⊕ C^q` for an element already evaluated under `φ`.
    fn pi(&self, phi_x: &CMatrix) -> CMatrix {
        let d = phi_x.nrows();
        let w = self.conjugator();
        let raw = block_diagonal(&[phi_x.clone(), CMatrix::zeros(d, d)]);
        &w * raw * w.adjoint()
    }

    /// `(F, γ)`, conjugated along with `π`.
    pub fn symmetry_and_grading(&self) -> (CMatrix, CMatrix) {
        let q = self.phi.dim();
        let one = C64::new(1.0, 0.0);
        let f = CMatrix::from_fn(2 * q, 2 * q, |r, c| if r.abs_diff(c) == q { one } else { C64::new(0.0, 0.0) });
        let g = diagonal(&(0..2 * q).map(|i| if i < q { one } else { -one }).collect::<Vec<_>>());
        let w = self.conjugator();
        (&w * f * w.adjoint(), &w * g * w.adjoint())
    }
}

/// Defects of the defining identities of an even Fredholm module.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ModuleInvariants {
    pub f_squared: f64,
    pub f_self_adjoint: f64,
    pub grading_squared: f64,
    pub grading_anticommutes_f: f64,
    /// Largest `‖[γ, π(a)]‖` over the generators `U`, `V`.
    pub grading_commutes_pi: f64,
}

impl ModuleInvariants {
    pub fn max_defect(&self) -> f64 {
        [self.f_squared, self.f_self_adjoint, self.grading_squared, self.grading_anticommutes_f, self.grading_commutes_pi]
            .into_iter()
            .fold(0.0, f64::max)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum EvenFredholmModule {
    Canonical(CanonicalEven),
    Dirac(DiracModule),
}

impl EvenFredholmModule {
    pub fn invariants(&self) -> ModuleInvariants {
        match self {
            EvenFredholmModule::Canonical(m) => {
                let (f, g) = m.symmetry_and_grading();
                let d = f.nrows();
                let id = CMatrix::identity(d, d);
                let gc = [m.phi.u(), m.phi.v()]
                    .into_iter()
                    .map(|x| {
                        let p = m.pi(x);
                        op_norm(&(&g * &p - &p * &g))
                    })
                    .fold(0.0, f64::max);
                ModuleInvariants {
                    f_squared: op_norm(&(&f * &f - &id)),
                    f_self_adjoint: op_norm(&(&f - f.adjoint())),
                    grading_squared: op_norm(&(&g * &g - &id)),
                    grading_anticommutes_f: op_norm(&(&g * &f + &f * &g)),
                    grading_commutes_pi: gc,
                }
            }
            EvenFredholmModule::Dirac(m) => m.invariants(),
        }
    }

    pub fn with_conjugation(&self, w: DiagonalConjugation) -> Self {
        match self {
            EvenFredholmModule::Canonical(m) => {
                EvenFredholmModule::Canonical(CanonicalEven { conjugation: Some(w), ..m.clone() })
            }
            EvenFredholmModule::Dirac(m) => EvenFredholmModule::Dirac(DiracModule { conjugation: Some(w), ..m.clone() }),
        }
    }
}

/// The canonical even module of a finite-dimensional representation.
pub fn canonical_even(phi: FiniteRep) -> EvenFredholmModule {
    EvenFredholmModule::Canonical(CanonicalEven { phi, conjugation: None })
}

/// Pair an even module with a projection over the algebra.
///
/// Canonical modules use `Σ_k Tr(φ(e_kk))`, read off as `Tr(P_+ π(e))` with
/// `P_+` the positive grading block; the Dirac module uses the compressed index.
pub fn even_pairing(
    module: &EvenFredholmModule,
    e: &AlgebraElement,
    tol: &Tolerances,
) -> Result<PairingResult, FredholmError> {
    let m = match module {
        EvenFredholmModule::Canonical(m) => m,
        EvenFredholmModule::Dirac(d) => return dirac_even_pairing(d, e, tol),
    };
    let mut blocks = Vec::new();
    let mut diag = vec![e];
    while let Some(x) = diag.pop() {
        match x {
            AlgebraElement::Diag(bs) => diag.extend(bs.iter().rev()),
            other => blocks.push(m.phi_eval(other)?),
        }
    }
    let phi_e = block_diagonal(&blocks);
    let defect = op_norm(&(&phi_e * &phi_e - &phi_e)).max(op_norm(&(&phi_e - phi_e.adjoint())));
    if defect > crate::torus_rep::PROJECTION_TOL {
        return Err(FredholmError::NotAProjection { defect });
    }
    // π(e) = φ(e) ⊕ 0 conjugated by W: the trace of its positive-grading part.
    let (_, g) = m.symmetry_and_grading();
    let mut raw = 0.0;
    for b in &blocks {
        let pi = m.pi(b);
        raw += (&g * pi).trace().re;
    }
    let value = round_pairing(raw, tol.round)?;
    Ok(PairingResult {
        value,
        method: PairingMethod::TraceFormula,
        truncation: None,
        rank_tolerance: None,
        round_tolerance: tol.round,
        stable: true,
        realized_sign: value.signum(),
        raw,
        kernel_dims: None,
        smallest_singular_values: Vec::new(),
    })
}

impl CanonicalEven {
    fn phi_eval(&self, x: &AlgebraElement) -> Result<CMatrix, FredholmError> {
        Ok(x.evaluate(&self.phi)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::torus_rep::clock_shift;

    fn tol() -> Tolerances {
        Tolerances::default()
    }

    #[test]
    fn clock_shift_module_counts_dimension() {
        let m = canonical_even(FiniteRep::ClockShift(clock_shift(2, 7).unwrap()));
        assert!(m.invariants().max_defect() < 1e-12);
        assert_eq!(even_pairing(&m, &AlgebraElement::one(), &tol()).unwrap().value, 7);
        assert_eq!(even_pairing(&m, &AlgebraElement::zero(), &tol()).unwrap().value, 0);
        assert_eq!(even_pairing(&m, &AlgebraElement::RieffelProjection, &tol()).unwrap().value, 2);
    }

    #[test]
    fn trivial_and_zero_representations() {
        let one_dim = canonical_even(FiniteRep::ClockShift(clock_shift(0, 1).unwrap()));
        assert_eq!(even_pairing(&one_dim, &AlgebraElement::one(), &tol()).unwrap().value, 1);
        let zero = canonical_even(FiniteRep::Zero(ZeroRep::new(Angle::rational(0, 1), 3)));
        assert_eq!(even_pairing(&zero, &AlgebraElement::one(), &tol()).unwrap().value, 0);
    }

    #[test]
    fn non_projection_rejected() {
        let m = canonical_even(FiniteRep::ClockShift(clock_shift(1, 3).unwrap()));
        let u = super::super::ClassSpec::U(1).element();
        assert!(matches!(even_pairing(&m, &u, &tol()), Err(FredholmError::NotAProjection { .. })));
    }

    #[test]
    fn conjugation_changes_nothing() {
        let m = canonical_even(FiniteRep::ClockShift(clock_shift(3, 8).unwrap()));
        let w = m.with_conjugation(DiagonalConjugation::new(11));
        assert!(w.invariants().max_defect() < 1e-12);
        let e = AlgebraElement::Diag(vec![AlgebraElement::one(), AlgebraElement::RieffelProjection]);
        assert_eq!(even_pairing(&w, &e, &tol()).unwrap().value, 11);
    }
}
