use std::collections::BTreeMap;

use super::{Angle, DenseRep, RepError};
use crate::linalg::{CMatrix, SparseCMatrix, C64};

/// A finite sum `Σ a_{m,n} U^m V^n` (normal-ordered, `U` to the left).
#[derive(Debug, Clone, PartialEq, Default)]
pub struct NcPoly {
    terms: BTreeMap<(i64, i64), C64>,
}

impl NcPoly {
    pub fn zero() -> Self {
        NcPoly::default()
    }

    pub fn constant(c: C64) -> Self {
        NcPoly::monomial(0, 0, c)
    }

    pub fn one() -> Self {
        NcPoly::constant(C64::new(1.0, 0.0))
    }

    pub fn monomial(m: i64, n: i64, c: C64) -> Self {
        let mut p = NcPoly::zero();
        p.add_term(m, n, c);
        p
    }

    /// `U^k`.
    pub fn u_pow(k: i64) -> Self {
        NcPoly::monomial(k, 0, C64::new(1.0, 0.0))
    }

    /// `V^k`.
    pub fn v_pow(k: i64) -> Self {
        NcPoly::monomial(0, k, C64::new(1.0, 0.0))
    }

    pub fn add_term(&mut self, m: i64, n: i64, c: C64) {
        let e = self.terms.entry((m, n)).or_insert(C64::new(0.0, 0.0));
        *e += c;
        if *e == C64::new(0.0, 0.0) {
            self.terms.remove(&(m, n));
        }
    }

    pub fn coefficient(&self, m: i64, n: i64) -> C64 {
        self.terms.get(&(m, n)).copied().unwrap_or(C64::new(0.0, 0.0))
    }

    pub fn terms(&self) -> impl Iterator<Item = ((i64, i64), C64)> + '_ {
        self.terms.iter().map(|(k, v)| (*k, *v))
    }

    /// Largest `|m|` (the `U`-degree) among the terms.
    pub fn u_degree(&self) -> u64 {
        self.terms.keys().map(|(m, _)| m.unsigned_abs()).max().unwrap_or(0)
    }

    /// Largest `|n|` (the `V`-degree) among the terms.
    pub fn v_degree(&self) -> u64 {
        self.terms.keys().map(|(_, n)| n.unsigned_abs()).max().unwrap_or(0)
    }

    pub fn add(&self, other: &NcPoly) -> NcPoly {
        let mut out = self.clone();
        for ((m, n), c) in other.terms() {
            out.add_term(m, n, c);
        }
        out
    }

    /// Product in `A_θ`, using `V^b U^c = λ^{bc} U^c V^b`.
    pub fn mul(&self, other: &NcPoly, angle: &Angle) -> NcPoly {
        let mut out = NcPoly::zero();
        for ((a, b), x) in self.terms() {
            for ((c, d), y) in other.terms() {
                out.add_term(a + c, b + d, x * y * angle.phase(b * c));
            }
        }
        out
    }

    /// `(U^m V^n)* = V^{−n} U^{−m} = λ^{mn} U^{−m} V^{−n}`.
    pub fn adjoint(&self, angle: &Angle) -> NcPoly {
        let mut out = NcPoly::zero();
        for ((m, n), c) in self.terms() {
            out.add_term(-m, -n, c.conj() * angle.phase(m * n));
        }
        out
    }

    /// The image in a matrix representation; negative powers use adjoints.
    pub fn evaluate(&self, rep: &dyn DenseRep) -> CMatrix {
        let d = rep.dim();
        let mut out = CMatrix::zeros(d, d);
        for ((m, n), c) in self.terms() {
            let term = power(rep, rep.u(), m) * power(rep, rep.v(), n);
            out += term * c;
        }
        out
    }
}

fn power(rep: &dyn DenseRep, g: &CMatrix, k: i64) -> CMatrix {
    let d = rep.dim();
    if k == 0 {
        return if rep.unital() { CMatrix::identity(d, d) } else { CMatrix::zeros(d, d) };
    }
    let base = if k > 0 { g.clone() } else { g.adjoint() };
    let mut out = base.clone();
    for _ in 1..k.unsigned_abs() {
        out = &out * &base;
    }
    out
}

/// Inputs accepted by [`canonical_trace`].
#[derive(Debug, Clone)]
pub enum TraceElement<'a> {
    /// `Σ a_{m,n} U^m V^n`: the trace is `a_{0,0}`.
    Polynomial(&'a NcPoly),
    /// A matrix in a clock-shift representation: normalized trace.
    ClockShiftMatrix(&'a CMatrix),
    /// An operator in the box regular representation: `⟨e_{0,0}, x e_{0,0}⟩`
    /// at the given origin index.
    RegularRep { matrix: &'a SparseCMatrix, origin: usize },
    /// A matrix in a truncated `ℓ²(Z)` representation, which carries no trace.
    TruncatedMatrix(&'a CMatrix),
}

/// The canonical tracial state `τ`.
pub fn canonical_trace(element: &TraceElement<'_>) -> Result<C64, RepError> {
    match element {
        TraceElement::Polynomial(p) => Ok(p.coefficient(0, 0)),
        TraceElement::ClockShiftMatrix(m) => {
            if !m.is_square() || m.nrows() == 0 {
                return Err(RepError::UnsupportedForm(format!("{}x{} matrix", m.nrows(), m.ncols())));
            }
            Ok(m.trace() / m.nrows() as f64)
        }
        TraceElement::RegularRep { matrix, origin } => {
            if *origin >= matrix.nrows() || matrix.nrows() != matrix.ncols() {
                return Err(RepError::UnsupportedForm("origin outside the operator".into()));
            }
            Ok(matrix.get(*origin, *origin))
        }
        TraceElement::TruncatedMatrix(_) => Err(RepError::UnsupportedForm(
            "the truncated ℓ²(Z) representation has no finite trace".into(),
        )),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::torus_rep::clock_shift;

    #[test]
    fn trace_of_polynomial_is_constant_term() {
        let mut p = NcPoly::u_pow(2);
        p.add_term(0, 0, C64::new(3.0, 0.0));
        p.add_term(1, -1, C64::new(0.5, 0.0));
        assert_eq!(canonical_trace(&TraceElement::Polynomial(&p)).unwrap(), C64::new(3.0, 0.0));
    }

    #[test]
    fn group_commutator_in_clock_shift() {
        let r = clock_shift(1, 3).unwrap();
        let a = r.angle().clone();
        let x = NcPoly::u_pow(1).mul(&NcPoly::v_pow(1), &a).mul(&NcPoly::u_pow(-1), &a).mul(&NcPoly::v_pow(-1), &a);
        let m = x.evaluate(&r);
        let t = canonical_trace(&TraceElement::ClockShiftMatrix(&m)).unwrap();
        assert!((t - a.phase(-1)).norm() < 1e-12);
        // The polynomial side agrees: U V U⁻¹ V⁻¹ = λ⁻¹.
        assert!((x.coefficient(0, 0) - a.phase(-1)).norm() < 1e-12);
    }

    #[test]
    fn multiplication_matches_matrices() {
        let r = clock_shift(3, 7).unwrap();
        let a = r.angle().clone();
        let mut p = NcPoly::monomial(1, 2, C64::new(0.3, -1.0));
        p.add_term(-2, 1, C64::new(1.5, 0.0));
        let mut q = NcPoly::monomial(2, -1, C64::new(0.0, 2.0));
        q.add_term(0, 3, C64::new(-1.0, 0.5));
        let lhs = p.mul(&q, &a).evaluate(&r);
        let rhs = p.evaluate(&r) * q.evaluate(&r);
        assert!((lhs - rhs).norm() < 1e-12);
        assert!((p.adjoint(&a).evaluate(&r) - p.evaluate(&r).adjoint()).norm() < 1e-12);
    }

    #[test]
    fn truncated_matrices_rejected() {
        let m = CMatrix::identity(3, 3);
        assert!(matches!(
            canonical_trace(&TraceElement::TruncatedMatrix(&m)),
            Err(RepError::UnsupportedForm(_))
        ));
        assert_eq!(canonical_trace(&TraceElement::ClockShiftMatrix(&m)).unwrap(), C64::new(1.0, 0.0));
    }
}
