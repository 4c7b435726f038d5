use serde::Serialize;

use super::{EvenFredholmModule, FredholmError, OddFredholmModule};
use crate::linalg::{singular_values, CMatrix};
use crate::torus_rep::DenseRep;

/// Singular-value data of `[F, π(a)]` for one generator.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CommutatorEntry {
    pub generator: String,
    pub norm: f64,
    pub rank: usize,
    pub rank_tolerance: f64,
    /// Leading singular values, descending.
    pub singular_values: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CommutatorReport {
    pub module: String,
    pub entries: Vec<CommutatorEntry>,
}

/// Module whose commutators can be examined densely.
pub enum CompactnessTarget<'a> {
    Odd(&'a OddFredholmModule),
    Even(&'a EvenFredholmModule),
}

/// Largest box (in lattice sites) examined densely for the Dirac module.
const DIRAC_DENSE_LIMIT: usize = 10;

/// `[F, π(a)]` for each named generator (`"U"` or `"V"`).
pub fn compactness_report(target: CompactnessTarget<'_>, generators: &[&str]) -> Result<CommutatorReport, FredholmError> {
    let tol = 1e-10;
    let mut entries = Vec::new();
    let name;
    match target {
        CompactnessTarget::Odd(m) => {
            name = format!("odd {:?} N={} d={}", m.variant, m.n, m.fiber_dim());
            let rep = m.rep();
            let f = m.f_diagonal();
            for g in generators {
                let a = pick(&rep, g)?;
                let c = CMatrix::from_fn(a.nrows(), a.ncols(), |r, k| a[(r, k)] * (f[r] - f[k]) as f64);
                entries.push(entry(g, &c, tol));
            }
        }
        CompactnessTarget::Even(EvenFredholmModule::Canonical(m)) => {
            name = format!("canonical even dim={}", m.phi.dim());
            let (f, _) = m.symmetry_and_grading();
            for g in generators {
                let a = pick(&m.phi, g)?;
                let q = a.nrows();
                let mut pi = CMatrix::zeros(2 * q, 2 * q);
                pi.view_mut((0, 0), (q, q)).copy_from(&a);
                entries.push(entry(g, &(&f * &pi - &pi * &f), tol));
            }
        }
        CompactnessTarget::Even(EvenFredholmModule::Dirac(m)) => {
            if m.n > DIRAC_DENSE_LIMIT {
                return Err(FredholmError::InvalidInput(format!(
                    "dense commutator report limited to N ≤ {DIRAC_DENSE_LIMIT}"
                )));
            }
            name = format!("dirac N={}", m.n);
            let data = m.data();
            for g in generators {
                let a = match *g {
                    "U" => data.u.to_dense(),
                    "V" => data.v.to_dense(),
                    other => return Err(FredholmError::InvalidInput(format!("unknown generator {other}"))),
                };
                // [F, a ⊕ a] is off-diagonal with blocks F₀* a − a F₀* and F₀ a − a F₀.
                let lower = CMatrix::from_fn(a.nrows(), a.ncols(), |r, k| a[(r, k)] * (data.f0[r] - data.f0[k]));
                let upper =
                    CMatrix::from_fn(a.nrows(), a.ncols(), |r, k| a[(r, k)] * (data.f0[r].conj() - data.f0[k].conj()));
                let mut s = singular_values(&lower);
                s.extend(singular_values(&upper));
                s.sort_by(|x, y| y.total_cmp(x));
                entries.push(from_values(g, s, tol));
            }
        }
    }
    Ok(CommutatorReport { module: name, entries })
}

fn pick(rep: &dyn DenseRep, g: &str) -> Result<CMatrix, FredholmError> {
    match g {
        "U" => Ok(rep.u().clone()),
        "V" => Ok(rep.v().clone()),
        other => Err(FredholmError::InvalidInput(format!("unknown generator {other}"))),
    }
}

fn entry(g: &str, c: &CMatrix, tol: f64) -> CommutatorEntry {
    from_values(g, singular_values(c), tol)
}

fn from_values(g: &str, s: Vec<f64>, tol: f64) -> CommutatorEntry {
    CommutatorEntry {
        generator: g.to_string(),
        norm: s.first().copied().unwrap_or(0.0),
        rank: s.iter().filter(|&&x| x > tol).count(),
        rank_tolerance: tol,
        singular_values: s.into_iter().take(12).collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fredholm::{canonical_even, dirac_module, FiniteRep};
    use crate::torus_rep::{Angle, ShiftVariant, ZeroRep};

    #[test]
    fn z1_commutators() {
        let m = OddFredholmModule::with_fiber_dim(Angle::from_f64(0.4), 6, ShiftVariant::Z1, 1);
        let r = compactness_report(CompactnessTarget::Odd(&m), &["U", "V"]).unwrap();
        assert_eq!(r.entries[0].rank, 1);
        assert!((r.entries[0].norm - 2.0).abs() < 1e-12);
        assert_eq!(r.entries[1].rank, 0);
    }

    #[test]
    fn degenerate_module_has_no_commutators() {
        let m = canonical_even(FiniteRep::Zero(ZeroRep::new(Angle::rational(0, 1), 2)));
        let r = compactness_report(CompactnessTarget::Even(&m), &["U", "V"]).unwrap();
        assert!(r.entries.iter().all(|e| e.rank == 0));
    }

    #[test]
    fn dirac_commutators_decay() {
        let m = crate::fredholm::EvenFredholmModule::Dirac(dirac_module(Angle::from_f64(0.3), 6).unwrap());
        let r = compactness_report(CompactnessTarget::Even(&m), &["U"]).unwrap();
        let s = &r.entries[0].singular_values;
        assert!(s[0] >= s[s.len() - 1]);
        assert!(r.entries[0].norm <= 2.0 + 1e-12);
    }
}
