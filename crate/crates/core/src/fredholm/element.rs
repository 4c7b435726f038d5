use std::str::FromStr;

use crate::linalg::{block_diagonal, CMatrix};
use crate::torus_rep::{assemble_rieffel, DenseRep, NcPoly, RepError, RieffelProfile};

/// An element of `M_k(A_θ)` that the pairing engines know how to represent.
#[derive(Debug, Clone, PartialEq)]
pub enum AlgebraElement {
    Poly(NcPoly),
    /// The projection `V g(U) + f(U) + g(U) V*` of trace `θ`.
    RieffelProjection,
    /// Block-diagonal matrix over the algebra.
    Diag(Vec<AlgebraElement>),
}

impl AlgebraElement {
    pub fn one() -> Self {
        AlgebraElement::Poly(NcPoly::one())
    }

    pub fn zero() -> Self {
        AlgebraElement::Poly(NcPoly::zero())
    }

    /// Matrix size `k` of the element in `M_k(A_θ)`.
    pub fn size(&self) -> usize {
        match self {
            AlgebraElement::Diag(blocks) => blocks.iter().map(AlgebraElement::size).sum(),
            _ => 1,
        }
    }

    /// How far (in sites) the shift generator moves a basis vector.
    pub fn shift_degree(&self, shift_generator: &str) -> u64 {
        match self {
            AlgebraElement::Poly(p) => {
                if shift_generator == "U" {
                    p.u_degree()
                } else {
                    p.v_degree()
                }
            }
            AlgebraElement::RieffelProjection => u64::MAX,
            AlgebraElement::Diag(blocks) => {
                blocks.iter().map(|b| b.shift_degree(shift_generator)).max().unwrap_or(0)
            }
        }
    }

    /// Image under `rep` (block-diagonal for [`AlgebraElement::Diag`]).
    pub fn evaluate(&self, rep: &dyn DenseRep) -> Result<CMatrix, RepError> {
        match self {
            AlgebraElement::Poly(p) => Ok(p.evaluate(rep)),
            AlgebraElement::RieffelProjection => {
                let profile = RieffelProfile::new(rep.angle().value())?;
                Ok(assemble_rieffel(rep, &profile))
            }
            AlgebraElement::Diag(blocks) => {
                let mats = blocks.iter().map(|b| b.evaluate(rep)).collect::<Result<Vec<_>, _>>()?;
                Ok(block_diagonal(&mats))
            }
        }
    }
}

/// Class names accepted on the command line: `1`, `0`, `p`, `U`, `V`, `U^k`, `V^k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ClassSpec {
    One,
    Zero,
    P,
    U(i64),
    V(i64),
}

impl ClassSpec {
    pub fn element(self) -> AlgebraElement {
        match self {
            ClassSpec::One => AlgebraElement::one(),
            ClassSpec::Zero => AlgebraElement::zero(),
            ClassSpec::P => AlgebraElement::RieffelProjection,
            ClassSpec::U(k) => AlgebraElement::Poly(NcPoly::u_pow(k)),
            ClassSpec::V(k) => AlgebraElement::Poly(NcPoly::v_pow(k)),
        }
    }

    /// Projections pair with even modules, unitaries with odd ones; `1` is both.
    pub fn is_projection(self) -> bool {
        matches!(self, ClassSpec::One | ClassSpec::Zero | ClassSpec::P)
    }

    pub fn is_unitary(self) -> bool {
        matches!(self, ClassSpec::One | ClassSpec::U(_) | ClassSpec::V(_))
    }
}

impl std::fmt::Display for ClassSpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ClassSpec::One => write!(f, "1"),
            ClassSpec::Zero => write!(f, "0"),
            ClassSpec::P => write!(f, "p"),
            ClassSpec::U(1) => write!(f, "U"),
            ClassSpec::V(1) => write!(f, "V"),
            ClassSpec::U(k) => write!(f, "U^{k}"),
            ClassSpec::V(k) => write!(f, "V^{k}"),
        }
    }
}

impl FromStr for ClassSpec {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        match s {
            "1" => return Ok(ClassSpec::One),
            "0" => return Ok(ClassSpec::Zero),
            "p" => return Ok(ClassSpec::P),
            _ => {}
        }
        let (base, power) = match s.split_once('^') {
            Some((b, e)) => (b, e.parse::<i64>().map_err(|_| format!("bad exponent in {s:?}"))?),
            None => (s, 1),
        };
        match base {
            "U" => Ok(ClassSpec::U(power)),
            "V" => Ok(ClassSpec::V(power)),
            _ => Err(format!("unknown class {s:?}; expected 1, 0, p, U, V, U^k or V^k")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn class_names_round_trip() {
        for s in ["1", "0", "p", "U", "V", "U^-3", "V^2"] {
            assert_eq!(s.parse::<ClassSpec>().unwrap().to_string(), s);
        }
        assert!("W".parse::<ClassSpec>().is_err());
        assert!("U^x".parse::<ClassSpec>().is_err());
    }

    #[test]
    fn sizes_and_degrees() {
        let e = AlgebraElement::Diag(vec![ClassSpec::U(2).element(), ClassSpec::U(-3).element()]);
        assert_eq!(e.size(), 2);
        assert_eq!(e.shift_degree("U"), 3);
        assert_eq!(e.shift_degree("V"), 0);
    }
}
