use serde::Serialize;

use super::{IntMatrix, LatticeError};

/// `U · M · V = D` with `U`, `V` unimodular and `D` diagonal, `d_i | d_{i+1}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SmithForm {
    pub u: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
}

impl SmithForm {
    /// Nonzero diagonal entries of `D`, in order.
    pub fn invariant_factors(&self) -> Vec<i64> {
        (0..self.d.nrows().min(self.d.ncols()))
            .map(|i| self.d.get(i, i))
            .filter(|&x| x != 0)
            .collect()
    }

    pub fn rank(&self) -> usize {
        self.invariant_factors().len()
    }
}

/// Smith normal form by alternating row and column Euclidean reduction.
///
/// Empty matrices (zero rows or columns) return identity transforms and the
/// input as `D`.
pub fn smith_normal_form(m: &IntMatrix) -> Result<SmithForm, LatticeError> {
    let (rows, cols) = m.shape();
    let mut d = m.clone();
    let mut u = IntMatrix::identity(rows);
    let mut v = IntMatrix::identity(cols);

    for t in 0..rows.min(cols) {
        loop {
            // Smallest nonzero entry of the trailing block becomes the pivot.
            let mut pivot: Option<(usize, usize)> = None;
            for i in t..rows {
                for j in t..cols {
                    let x = d.get(i, j);
                    if x != 0 && pivot.is_none_or(|(pi, pj)| x.unsigned_abs() < d.get(pi, pj).unsigned_abs()) {
                        pivot = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = pivot else {
                return finish(u, d, v);
            };
            d.swap_rows(t, pi);
            u.swap_rows(t, pi);
            d.swap_cols(t, pj);
            v.swap_cols(t, pj);

            let p = d.get(t, t);
            let mut clean = true;
            for i in t + 1..rows {
                let q = d.get(i, t) / p;
                if q != 0 {
                    d.add_row(i, t, -q)?;
                    u.add_row(i, t, -q)?;
                }
                clean &= d.get(i, t) == 0;
            }
            for j in t + 1..cols {
                let q = d.get(t, j) / p;
                if q != 0 {
                    d.add_col(j, t, -q)?;
                    v.add_col(j, t, -q)?;
                }
                clean &= d.get(t, j) == 0;
            }
            if !clean {
                continue;
            }
            // Divisibility: fold any offending row into the pivot row and retry.
            let offending = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| d.get(i, j) % p != 0));
            match offending {
                Some(i) => {
                    d.add_row(t, i, 1)?;
                    u.add_row(t, i, 1)?;
                }
                None => break,
            }
        }
        if d.get(t, t) < 0 {
            d.negate_row(t)?;
            u.negate_row(t)?;
        }
    }
    finish(u, d, v)
}

fn finish(u: IntMatrix, d: IntMatrix, v: IntMatrix) -> Result<SmithForm, LatticeError> {
    Ok(SmithForm { u, d, v })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn diag(f: &SmithForm) -> Vec<i64> {
        (0..f.d.nrows().min(f.d.ncols())).map(|i| f.d.get(i, i)).collect()
    }

    fn check(m: &IntMatrix) -> SmithForm {
        let f = smith_normal_form(m).unwrap();
        assert_eq!(f.u.mul(m).unwrap().mul(&f.v).unwrap(), f.d, "U M V = D for {m:?}");
        assert!(f.u.is_unimodular() && f.v.is_unimodular());
        for i in 0..f.d.nrows() {
            for j in 0..f.d.ncols() {
                if i != j {
                    assert_eq!(f.d.get(i, j), 0);
                }
            }
        }
        let ds = diag(&f);
        for w in ds.windows(2) {
            assert!(w[0] >= 0);
            if w[0] == 0 {
                assert_eq!(w[1], 0);
            } else {
                assert_eq!(w[1] % w[0], 0, "divisibility chain {ds:?}");
            }
        }
        f
    }

    #[test]
    fn diag_2_3_becomes_1_6() {
        let f = check(&IntMatrix::from_rows(&[&[2, 0], &[0, 3]]));
        assert_eq!(diag(&f), vec![1, 6]);
    }

    #[test]
    fn identity_and_swap_are_unimodular() {
        assert_eq!(diag(&check(&IntMatrix::identity(2))), vec![1, 1]);
        assert_eq!(diag(&check(&IntMatrix::from_rows(&[&[0, 1], &[1, 0]]))), vec![1, 1]);
    }

    #[test]
    fn rectangular_and_degenerate() {
        assert_eq!(diag(&check(&IntMatrix::from_rows(&[&[1, 0]]))), vec![1]);
        assert_eq!(diag(&check(&IntMatrix::column(&[0, 1]))), vec![1]);
        assert_eq!(diag(&check(&IntMatrix::zeros(2, 3))), vec![0, 0]);
        assert_eq!(diag(&check(&IntMatrix::from_rows(&[&[4, 6], &[6, 9]]))), vec![1, 0]);
        check(&IntMatrix::zeros(0, 2));
    }

    proptest! {
        #[test]
        fn smith_invariants_hold(rows in 1usize..5, cols in 1usize..5, seed in prop::collection::vec(-9i64..10, 16)) {
            let data: Vec<i64> = seed.into_iter().take(rows * cols).collect();
            prop_assume!(data.len() == rows * cols);
            let m = IntMatrix::new(rows, cols, data).unwrap();
            check(&m);
        }
    }
}
