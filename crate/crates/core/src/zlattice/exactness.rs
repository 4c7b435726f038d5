use serde::Serialize;

use super::{hermite_rows, lattice_contains, smith_normal_form, IntegerMatrixMap, LatticeError};

/// Outcome of an exactness check at one node `A --f--> B --g--> C`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExactnessVerdict {
    pub exact: bool,
    /// Hermite basis of `im f` in `B`.
    pub image_basis: Vec<Vec<i64>>,
    /// Hermite basis of `ker g` in `B`.
    pub kernel_basis: Vec<Vec<i64>>,
    /// Human-readable witness of the failure, naming generators.
    pub witness: Option<String>,
}

fn describe(vector: &[i64], names: &[String]) -> String {
    let terms: Vec<String> = vector
        .iter()
        .zip(names)
        .filter(|(&c, _)| c != 0)
        .map(|(&c, n)| match c {
            1 => n.clone(),
            -1 => format!("-{n}"),
            _ => format!("{c}·{n}"),
        })
        .collect();
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join(" + ")
    }
}

/// Kernel lattice of an integer matrix, from the Smith form: with `U g V = D`,
/// the columns of `V` past the rank span `ker g`.
pub(crate) fn kernel_generators(g: &super::IntMatrix) -> Result<Vec<Vec<i64>>, LatticeError> {
    let n = g.ncols();
    if g.nrows() == 0 {
        return Ok((0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect());
    }
    let snf = smith_normal_form(g)?;
    let rank = snf.rank();
    Ok((rank..n).map(|j| snf.v.col(j)).collect())
}

/// Decide `im(incoming) = ker(outgoing)` as sublattices of the middle group.
pub fn check_exact_at(
    incoming: &IntegerMatrixMap,
    outgoing: &IntegerMatrixMap,
) -> Result<ExactnessVerdict, LatticeError> {
    if incoming.codomain != outgoing.domain {
        return Err(LatticeError::ShapeMismatch(format!(
            "{} lands in {} but {} starts from {}",
            incoming.name, incoming.codomain.label, outgoing.name, outgoing.domain.label
        )));
    }
    let middle = &incoming.codomain;
    let n = middle.rank();
    let image_gens: Vec<Vec<i64>> = (0..incoming.matrix.ncols()).map(|j| incoming.matrix.col(j)).collect();
    let kernel_gens = kernel_generators(&outgoing.matrix)?;
    let image = hermite_rows(&image_gens, n)?;
    let kernel = hermite_rows(&kernel_gens, n)?;

    let mut witness = None;
    // im ⊆ ker: every domain generator must be killed by the composite.
    for (j, col) in image_gens.iter().enumerate() {
        let out = outgoing.matrix.mul_vec(col)?;
        if out.iter().any(|&x| x != 0) {
            witness = Some(format!(
                "{}({}) = {} is not killed by {}",
                incoming.name,
                incoming.domain.generators[j],
                describe(col, &middle.generators),
                outgoing.name
            ));
            break;
        }
    }
    if witness.is_none() {
        for k in &kernel.rows {
            if lattice_contains(&image, k)?.is_none() {
                witness = Some(format!(
                    "{} lies in ker {} but not in im {}",
                    describe(k, &middle.generators),
                    outgoing.name,
                    incoming.name
                ));
                break;
            }
        }
    }
    let exact = image == kernel;
    debug_assert_eq!(exact, witness.is_none());
    Ok(ExactnessVerdict { exact, image_basis: image.rows, kernel_basis: kernel.rows, witness })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::zlattice::{FreeAbelianGroup, IntMatrix};

    fn z(label: &str, gens: &[&str]) -> FreeAbelianGroup {
        FreeAbelianGroup::new(label, gens).unwrap()
    }

    fn map(name: &str, from: &FreeAbelianGroup, to: &FreeAbelianGroup, m: IntMatrix) -> IntegerMatrixMap {
        IntegerMatrixMap::new(name, from.clone(), to.clone(), m).unwrap()
    }

    #[test]
    fn doubling_then_zero_is_not_exact() {
        let g = z("Z", &["e"]);
        let f = map("x2", &g, &g, IntMatrix::from_rows(&[&[2]]));
        let h = map("0", &g, &g, IntMatrix::from_rows(&[&[0]]));
        let v = check_exact_at(&f, &h).unwrap();
        assert!(!v.exact);
        assert!(v.witness.unwrap().contains("e lies in ker 0"));
    }

    #[test]
    fn identity_then_zero_map_to_trivial_group_is_exact() {
        let g = z("Z", &["e"]);
        let trivial = z("0", &[]);
        let f = map("id", &g, &g, IntMatrix::identity(1));
        let h = map("0", &g, &trivial, IntMatrix::zeros(0, 1));
        assert!(check_exact_at(&f, &h).unwrap().exact);
    }

    #[test]
    fn boundary_then_restriction_is_exact() {
        let kk0a = z("KK^0(A)", &["w0"]);
        let kk1 = z("KK^1(A_θ)", &["z1", "z1'"]);
        let kk1a = z("KK^1(A)", &["w1"]);
        let d0 = map("∂0", &kk0a, &kk1, IntMatrix::column(&[0, 1]));
        let i1 = map("i*", &kk1, &kk1a, IntMatrix::from_rows(&[&[1, 0]]));
        let v = check_exact_at(&d0, &i1).unwrap();
        assert!(v.exact);
        assert_eq!(v.image_basis, vec![vec![0, 1]]);

        let bad = map("∂0", &kk0a, &kk1, IntMatrix::column(&[1, 1]));
        let v = check_exact_at(&bad, &i1).unwrap();
        assert!(!v.exact);
        assert!(v.witness.unwrap().starts_with("∂0(w0) = z1 + z1'"));
    }

    #[test]
    fn shape_mismatch_detected() {
        let a = z("A", &["a"]);
        let b = z("B", &["b1", "b2"]);
        let f = map("f", &a, &a, IntMatrix::identity(1));
        let g = map("g", &b, &a, IntMatrix::from_rows(&[&[1, 0]]));
        assert!(matches!(check_exact_at(&f, &g), Err(LatticeError::ShapeMismatch(_))));
    }
}
