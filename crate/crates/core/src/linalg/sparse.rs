use super::{CMatrix, CVector, LinalgError, C64};

/// Compressed-sparse-row complex matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct SparseCMatrix {
    nrows: usize,
    ncols: usize,
    indptr: Vec<usize>,
    indices: Vec<usize>,
    values: Vec<C64>,
}

impl SparseCMatrix {
    /// Build from `(row, col, value)` triplets; duplicates are summed and exact
    /// zeros dropped.
    pub fn from_triplets(
        nrows: usize,
        ncols: usize,
        mut triplets: Vec<(usize, usize, C64)>,
    ) -> Result<Self, LinalgError> {
        if let Some(&(r, c, _)) = triplets.iter().find(|(r, c, _)| *r >= nrows || *c >= ncols) {
            return Err(LinalgError::ShapeMismatch(format!(
                "entry ({r}, {c}) outside {nrows}x{ncols}"
            )));
        }
        triplets.sort_by_key(|&(r, c, _)| (r, c));
        let mut indptr = vec![0usize; nrows + 1];
        let mut indices = Vec::with_capacity(triplets.len());
        let mut values: Vec<C64> = Vec::with_capacity(triplets.len());
        let mut last: Option<(usize, usize)> = None;
        for (r, c, v) in triplets {
            if last == Some((r, c)) {
                *values.last_mut().expect("duplicate follows an entry") += v;
            } else {
                indices.push(c);
                values.push(v);
                indptr[r + 1] += 1;
                last = Some((r, c));
            }
        }
        for r in 0..nrows {
            indptr[r + 1] += indptr[r];
        }
        let mut m = SparseCMatrix { nrows, ncols, indptr, indices, values };
        m.prune();
        Ok(m)
    }

    pub fn identity(n: usize) -> Self {
        SparseCMatrix {
            nrows: n,
            ncols: n,
            indptr: (0..=n).collect(),
            indices: (0..n).collect(),
            values: vec![C64::new(1.0, 0.0); n],
        }
    }

    pub fn zeros(nrows: usize, ncols: usize) -> Self {
        SparseCMatrix { nrows, ncols, indptr: vec![0; nrows + 1], indices: vec![], values: vec![] }
    }

    fn prune(&mut self) {
        let mut indptr = vec![0usize; self.nrows + 1];
        let mut indices = Vec::with_capacity(self.indices.len());
        let mut values = Vec::with_capacity(self.values.len());
        for r in 0..self.nrows {
            for k in self.indptr[r]..self.indptr[r + 1] {
                if self.values[k] != C64::new(0.0, 0.0) {
                    indices.push(self.indices[k]);
                    values.push(self.values[k]);
                }
            }
            indptr[r + 1] = indices.len();
        }
        self.indptr = indptr;
        self.indices = indices;
        self.values = values;
    }

    pub fn nrows(&self) -> usize {
        self.nrows
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn nnz(&self) -> usize {
        self.values.len()
    }

    /// Entry lookup (binary search inside the row).
    pub fn get(&self, r: usize, c: usize) -> C64 {
        let row = &self.indices[self.indptr[r]..self.indptr[r + 1]];
        match row.binary_search(&c) {
            Ok(k) => self.values[self.indptr[r] + k],
            Err(_) => C64::new(0.0, 0.0),
        }
    }

    /// Iterate over stored `(row, col, value)` entries.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, C64)> + '_ {
        (0..self.nrows).flat_map(move |r| {
            (self.indptr[r]..self.indptr[r + 1]).map(move |k| (r, self.indices[k], self.values[k]))
        })
    }

    pub fn mul_vec(&self, x: &CVector) -> CVector {
        assert_eq!(x.len(), self.ncols, "sparse mul_vec dimension");
        let mut y = CVector::zeros(self.nrows);
        for r in 0..self.nrows {
            let mut acc = C64::new(0.0, 0.0);
            for k in self.indptr[r]..self.indptr[r + 1] {
                acc += self.values[k] * x[self.indices[k]];
            }
            y[r] = acc;
        }
        y
    }

    /// `A* x`.
    pub fn adjoint_mul_vec(&self, x: &CVector) -> CVector {
        assert_eq!(x.len(), self.nrows, "sparse adjoint_mul_vec dimension");
        let mut y = CVector::zeros(self.ncols);
        for r in 0..self.nrows {
            let xr = x[r];
            for k in self.indptr[r]..self.indptr[r + 1] {
                y[self.indices[k]] += self.values[k].conj() * xr;
            }
        }
        y
    }

    pub fn adjoint(&self) -> Self {
        let t = self.entries().map(|(r, c, v)| (c, r, v.conj())).collect();
        SparseCMatrix::from_triplets(self.ncols, self.nrows, t).expect("transposed indices are in range")
    }

    pub fn mul(&self, other: &SparseCMatrix) -> Result<Self, LinalgError> {
        if self.ncols != other.nrows {
            return Err(LinalgError::ShapeMismatch(format!(
                "{}x{} times {}x{}",
                self.nrows, self.ncols, other.nrows, other.ncols
            )));
        }
        let mut t = Vec::new();
        for (r, k, a) in self.entries() {
            for j in other.indptr[k]..other.indptr[k + 1] {
                t.push((r, other.indices[j], a * other.values[j]));
            }
        }
        SparseCMatrix::from_triplets(self.nrows, other.ncols, t)
    }

    /// `self + s · other`.
    pub fn add_scaled(&self, s: C64, other: &SparseCMatrix) -> Result<Self, LinalgError> {
        if (self.nrows, self.ncols) != (other.nrows, other.ncols) {
            return Err(LinalgError::ShapeMismatch("sparse add".into()));
        }
        let t = self.entries().chain(other.entries().map(|(r, c, v)| (r, c, s * v))).collect();
        SparseCMatrix::from_triplets(self.nrows, self.ncols, t)
    }

    /// Largest `|a_ij − conj(a_ji)|`.
    pub fn hermitian_defect(&self) -> f64 {
        self.entries()
            .map(|(r, c, v)| (v - self.get(c, r).conj()).norm())
            .fold(0.0, f64::max)
    }

    /// Largest entry modulus.
    pub fn max_abs(&self) -> f64 {
        self.values.iter().map(|v| v.norm()).fold(0.0, f64::max)
    }

    pub fn to_dense(&self) -> CMatrix {
        let mut d = CMatrix::zeros(self.nrows, self.ncols);
        for (r, c, v) in self.entries() {
            d[(r, c)] = v;
        }
        d
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    #[test]
    fn triplets_sum_duplicates_and_drop_zeros() {
        let m = SparseCMatrix::from_triplets(
            2,
            2,
            vec![(0, 1, c(1.0, 0.0)), (0, 1, c(2.0, 1.0)), (1, 0, c(1.0, 0.0)), (1, 0, c(-1.0, 0.0))],
        )
        .unwrap();
        assert_eq!(m.nnz(), 1);
        assert_eq!(m.get(0, 1), c(3.0, 1.0));
        assert!(SparseCMatrix::from_triplets(1, 1, vec![(1, 0, c(1.0, 0.0))]).is_err());
    }

    #[test]
    fn products_match_dense() {
        let a = SparseCMatrix::from_triplets(
            3,
            2,
            vec![(0, 0, c(1.0, 2.0)), (2, 1, c(0.5, -1.0)), (1, 1, c(3.0, 0.0))],
        )
        .unwrap();
        let x = CVector::from_vec(vec![c(1.0, 1.0), c(-2.0, 0.5)]);
        assert!((a.mul_vec(&x) - a.to_dense() * &x).norm() < 1e-14);
        let y = CVector::from_vec(vec![c(1.0, 0.0), c(0.0, 1.0), c(2.0, -1.0)]);
        assert!((a.adjoint_mul_vec(&y) - a.to_dense().adjoint() * &y).norm() < 1e-14);
        let aa = a.adjoint().mul(&a).unwrap();
        assert!((aa.to_dense() - a.to_dense().adjoint() * a.to_dense()).norm() < 1e-14);
        assert!(aa.hermitian_defect() < 1e-14);
    }
}
