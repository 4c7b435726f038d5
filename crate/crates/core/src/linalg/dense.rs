use nalgebra::{DMatrix, DVector};

use super::C64;

pub type CMatrix = DMatrix<C64>;
pub type CVector = DVector<C64>;

pub fn identity(n: usize) -> CMatrix {
    CMatrix::identity(n, n)
}

pub fn diagonal(entries: &[C64]) -> CMatrix {
    CMatrix::from_diagonal(&CVector::from_column_slice(entries))
}

pub fn adjoint(a: &CMatrix) -> CMatrix {
    a.adjoint()
}

pub fn commutator(a: &CMatrix, b: &CMatrix) -> CMatrix {
    a * b - b * a
}

/// Kronecker product `a ⊗ b`.
pub fn kron(a: &CMatrix, b: &CMatrix) -> CMatrix {
    a.kronecker(b)
}

pub fn block_diagonal(blocks: &[CMatrix]) -> CMatrix {
    let n: usize = blocks.iter().map(|b| b.nrows()).sum();
    let m: usize = blocks.iter().map(|b| b.ncols()).sum();
    let mut out = CMatrix::zeros(n, m);
    let (mut r, mut c) = (0, 0);
    for b in blocks {
        out.view_mut((r, c), b.shape()).copy_from(b);
        r += b.nrows();
        c += b.ncols();
    }
    out
}

fn max_abs(a: &CMatrix) -> f64 {
    a.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

/// `(singular values, V^*)` of `a`. The SVD runs on `a / max|a_ij|`, since the
/// iteration can stall on matrices whose entries are all near round-off, and
/// falls back to the eigen-decomposition of `a^* a` if it does not converge.
fn svd_parts(a: &CMatrix, want_v: bool) -> (Vec<f64>, Option<CMatrix>) {
    let cols = a.ncols();
    let scale = max_abs(a);
    if scale == 0.0 {
        return (vec![0.0; a.nrows().min(cols)], want_v.then(|| CMatrix::identity(cols, cols)));
    }
    let scaled = a.unscale(scale);
    let max_iter = 200 * a.nrows().max(cols).max(10);
    if let Some(svd) = scaled.clone().try_svd(false, want_v, f64::EPSILON, max_iter) {
        let s = svd.singular_values.iter().map(|x| x * scale).collect();
        return (s, svd.v_t);
    }
    let gram = scaled.adjoint() * &scaled;
    let eig = nalgebra::SymmetricEigen::new(gram);
    let s = eig.eigenvalues.iter().map(|l| l.max(0.0).sqrt() * scale).collect();
    (s, want_v.then(|| eig.eigenvectors.adjoint()))
}

/// Singular values in descending order. Empty matrices have none.
pub fn singular_values(a: &CMatrix) -> Vec<f64> {
    if a.is_empty() {
        return Vec::new();
    }
    let mut s = svd_parts(a, false).0;
    s.sort_by(|x, y| y.total_cmp(x));
    s
}

/// Spectral norm.
pub fn op_norm(a: &CMatrix) -> f64 {
    singular_values(a).first().copied().unwrap_or(0.0)
}

pub fn frobenius_distance(a: &CMatrix, b: &CMatrix) -> f64 {
    (a - b).norm()
}

/// Orthonormal basis (as columns) of the numerical kernel `{x : ‖a x‖ small}`:
/// right singular vectors whose singular value is below `tol`, plus the
/// directions a wide matrix cannot reach.
pub fn kernel_basis(a: &CMatrix, tol: f64) -> CMatrix {
    let (rows, cols) = a.shape();
    if cols == 0 {
        return CMatrix::zeros(0, 0);
    }
    // Pad to square so the SVD returns a full set of right singular vectors.
    let padded = if rows < cols {
        let mut p = CMatrix::zeros(cols, cols);
        p.view_mut((0, 0), (rows, cols)).copy_from(a);
        p
    } else {
        a.clone()
    };
    let (sigma, v_t) = svd_parts(&padded, true);
    let v_t = v_t.expect("requested right singular vectors");
    let picked: Vec<usize> = (0..sigma.len()).filter(|&i| sigma[i] < tol).collect();
    let mut out = CMatrix::zeros(cols, picked.len());
    for (j, &i) in picked.iter().enumerate() {
        let row = v_t.row(i);
        for k in 0..cols {
            out[(k, j)] = row[k].conj();
        }
    }
    out
}

/// Number of directions of the span of `basis` (orthonormal columns) that live
/// mostly on the coordinates flagged by `interior`: singular values of the
/// restricted basis at least `1/√2`.
pub fn interior_dimension(basis: &CMatrix, interior: &[bool]) -> usize {
    if basis.ncols() == 0 {
        return 0;
    }
    let rows: Vec<usize> = (0..basis.nrows()).filter(|&i| interior[i]).collect();
    let restricted = basis.select_rows(rows.iter());
    singular_values(&restricted).iter().filter(|&&s| s * s >= 0.5).count()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64) -> C64 {
        C64::new(re, 0.0)
    }

    #[test]
    fn round_off_sized_matrix_converges() {
        // Entries near 1e−16 once made the unscaled SVD iterate forever.
        let r = crate::torus_rep::clock_shift(5, 29).unwrap();
        use crate::torus_rep::DenseRep;
        let d = r.v() * r.u() - r.u() * r.v() * r.lambda();
        assert!(op_norm(&d) < 1e-14);
        assert_eq!(singular_values(&CMatrix::zeros(3, 2)), vec![0.0, 0.0]);
    }

    #[test]
    fn kernel_of_truncated_shift() {
        let mut s = CMatrix::zeros(4, 4);
        for k in 0..3 {
            s[(k + 1, k)] = c(1.0);
        }
        let ker = kernel_basis(&s, 1e-8);
        assert_eq!(ker.ncols(), 1);
        assert!((ker[(3, 0)].norm() - 1.0).abs() < 1e-12);
        let coker = kernel_basis(&s.adjoint(), 1e-8);
        assert!((coker[(0, 0)].norm() - 1.0).abs() < 1e-12);
        assert_eq!(interior_dimension(&ker, &[true, true, false, false]), 0);
        assert_eq!(interior_dimension(&coker, &[true, true, false, false]), 1);
    }

    #[test]
    fn wide_matrix_kernel_counts_missing_rows() {
        let a = CMatrix::from_row_slice(1, 3, &[c(1.0), c(0.0), c(0.0)]);
        assert_eq!(kernel_basis(&a, 1e-8).ncols(), 2);
    }

    #[test]
    fn block_diagonal_and_norm() {
        let a = diagonal(&[c(2.0)]);
        let b = diagonal(&[c(-3.0), c(1.0)]);
        let d = block_diagonal(&[a, b]);
        assert_eq!(d.shape(), (3, 3));
        assert!((op_norm(&d) - 3.0).abs() < 1e-12);
        assert_eq!(singular_values(&CMatrix::zeros(0, 0)), Vec::<f64>::new());
    }
}
