use super::{ck, IntMatrix, LatticeError};

/// Canonical basis of a sublattice of `Z^n`: the nonzero rows of its row Hermite
/// normal form (positive pivots, entries above each pivot reduced into `[0, pivot)`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LatticeBasis {
    pub ambient_rank: usize,
    pub rows: Vec<Vec<i64>>,
}

impl LatticeBasis {
    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn is_zero(&self) -> bool {
        self.rows.is_empty()
    }
}

/// Hermite normal form of the lattice spanned by `generators` in `Z^n`.
pub fn hermite_rows(generators: &[Vec<i64>], n: usize) -> Result<LatticeBasis, LatticeError> {
    if generators.iter().any(|g| g.len() != n) {
        return Err(LatticeError::ShapeMismatch("generator length differs from ambient rank".into()));
    }
    let mut m = if generators.is_empty() {
        IntMatrix::zeros(0, n)
    } else {
        IntMatrix::new(generators.len(), n, generators.concat())?
    };
    let rows = m.nrows();
    let mut r = 0;
    let mut pivots = Vec::new();
    for c in 0..n {
        if r == rows {
            break;
        }
        // Euclid down the column until a single nonzero entry remains at row r.
        while let Some(best) = (r..rows)
            .filter(|&i| m.get(i, c) != 0)
            .min_by_key(|&i| m.get(i, c).unsigned_abs())
        {
            m.swap_rows(r, best);
            let p = m.get(r, c);
            let mut done = true;
            for i in r + 1..rows {
                let q = m.get(i, c) / p;
                if q != 0 {
                    m.add_row(i, r, -q)?;
                }
                done &= m.get(i, c) == 0;
            }
            if done {
                break;
            }
        }
        if m.get(r, c) == 0 {
            continue;
        }
        if m.get(r, c) < 0 {
            m.negate_row(r)?;
        }
        pivots.push((r, c));
        r += 1;
    }
    // Reduce entries above pivots.
    for &(pr, pc) in &pivots {
        let p = m.get(pr, pc);
        for i in 0..pr {
            let q = m.get(i, pc).div_euclid(p);
            if q != 0 {
                m.add_row(i, pr, -q)?;
            }
        }
    }
    Ok(LatticeBasis { ambient_rank: n, rows: (0..r).map(|i| m.row(i).to_vec()).collect() })
}

/// Whether `v` lies in the lattice with the given Hermite basis; on success the
/// integer coefficients are returned.
pub fn lattice_contains(basis: &LatticeBasis, v: &[i64]) -> Result<Option<Vec<i64>>, LatticeError> {
    if v.len() != basis.ambient_rank {
        return Err(LatticeError::ShapeMismatch("vector length differs from ambient rank".into()));
    }
    let mut rest = v.to_vec();
    let mut coeffs = Vec::with_capacity(basis.rows.len());
    for row in &basis.rows {
        let pc = row.iter().position(|&x| x != 0).expect("HNF rows are nonzero");
        let p = row[pc];
        // Entries left of the pivot must already be cleared.
        if rest[..pc].iter().any(|&x| x != 0) {
            return Ok(None);
        }
        if rest[pc] % p != 0 {
            return Ok(None);
        }
        let q = rest[pc] / p;
        for (x, &b) in rest.iter_mut().zip(row) {
            *x = ck(x.checked_sub(ck(b.checked_mul(q))?))?;
        }
        coeffs.push(q);
    }
    Ok(if rest.iter().all(|&x| x == 0) { Some(coeffs) } else { None })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hermite_is_canonical() {
        let a = hermite_rows(&[vec![2, 4], vec![1, 3]], 2).unwrap();
        let b = hermite_rows(&[vec![1, 1], vec![0, 2], vec![3, 5]], 2).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.rows, vec![vec![1, 1], vec![0, 2]]);
    }

    #[test]
    fn index_two_sublattice_differs_from_z() {
        let two = hermite_rows(&[vec![2]], 1).unwrap();
        let one = hermite_rows(&[vec![1]], 1).unwrap();
        assert_ne!(two, one);
        assert_eq!(lattice_contains(&two, &[1]).unwrap(), None);
        assert_eq!(lattice_contains(&two, &[6]).unwrap(), Some(vec![3]));
    }

    #[test]
    fn zero_generators_give_zero_lattice() {
        let z = hermite_rows(&[vec![0, 0]], 2).unwrap();
        assert!(z.is_zero());
        assert_eq!(lattice_contains(&z, &[0, 0]).unwrap(), Some(vec![]));
        assert_eq!(lattice_contains(&z, &[0, 1]).unwrap(), None);
    }
}
