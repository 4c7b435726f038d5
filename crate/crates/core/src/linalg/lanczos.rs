use nalgebra::SymmetricEigen;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{CMatrix, CVector, LinalgError, C64};

/// Settings for [`lowest_eigenpairs`].
#[derive(Debug, Clone, PartialEq)]
pub struct LanczosOptions {
    /// Number of eigenpairs wanted from the bottom of the spectrum.
    pub want: usize,
    /// Vectors added to the Krylov basis per step.
    pub block: usize,
    /// Absolute residual `‖H x − μ x‖` at which a Ritz pair counts as converged.
    pub tol: f64,
    /// Hard cap on the basis size.
    pub max_basis: usize,
    pub seed: u64,
}

impl Default for LanczosOptions {
    fn default() -> Self {
        LanczosOptions { want: 6, block: 4, tol: 1e-7, max_basis: 900, seed: 0x5eed }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct EigenPair {
    pub value: f64,
    pub vector: CVector,
    pub residual: f64,
}

/// Lowest eigenpairs of a Hermitian operator given by its action.
///
/// Block Krylov basis with full (twice-applied) Gram–Schmidt and Rayleigh–Ritz
/// extraction. Exact invariant subspaces are handled by restarting the block
/// with fresh random directions, so degenerate eigenvalues up to the block
/// size are resolved.
pub fn lowest_eigenpairs<F>(dim: usize, op: F, opts: &LanczosOptions) -> Result<Vec<EigenPair>, LinalgError>
where
    F: Fn(&CVector) -> CVector,
{
    let want = opts.want.min(dim);
    if want == 0 {
        return Ok(Vec::new());
    }
    let block = opts.block.max(1);
    let cap = opts.max_basis.max(want + block).min(dim);
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut q: Vec<CVector> = Vec::new();
    let mut hq: Vec<CVector> = Vec::new();
    let mut t = CMatrix::zeros(0, 0);
    let mut pending: Vec<CVector> = (0..block).map(|_| random_vector(dim, &mut rng)).collect();
    let mut since_check = 0usize;
    let mut best = f64::INFINITY;

    loop {
        let first_new = q.len();
        for cand in pending.drain(..) {
            if q.len() == cap {
                break;
            }
            let mut v = cand;
            let mut accepted = orthonormalize(&mut v, &q);
            // Krylov space exhausted in this direction: try random ones instead.
            let mut tries = 0;
            while !accepted && tries < 4 {
                v = random_vector(dim, &mut rng);
                accepted = orthonormalize(&mut v, &q);
                tries += 1;
            }
            if accepted {
                hq.push(op(&v));
                q.push(v);
            }
        }
        grow_projection(&mut t, &q, &hq, first_new);
        since_check += 1;

        let full = q.len() >= cap || q.len() == first_new;
        if since_check >= 8 || full {
            since_check = 0;
            let pairs = ritz_pairs(&t, &q, &hq, want);
            let worst = pairs.iter().map(|p| p.residual).fold(0.0, f64::max);
            best = best.min(worst);
            if worst <= opts.tol || q.len() == dim {
                return Ok(pairs);
            }
            if full {
                return Err(LinalgError::NotConverged { residual: best, basis: q.len() });
            }
        }
        pending = hq[first_new..].to_vec();
    }
}

fn random_vector(dim: usize, rng: &mut ChaCha8Rng) -> CVector {
    CVector::from_fn(dim, |_, _| C64::new(rng.random::<f64>() - 0.5, rng.random::<f64>() - 0.5))
}

/// Orthogonalize against `basis` twice and normalize. Returns false if the
/// vector was (numerically) inside the span.
fn orthonormalize(v: &mut CVector, basis: &[CVector]) -> bool {
    let start = v.norm();
    if start == 0.0 {
        return false;
    }
    for _ in 0..2 {
        for b in basis {
            let c = b.dotc(v);
            v.axpy(-c, b, C64::new(1.0, 0.0));
        }
    }
    let n = v.norm();
    if n <= 1e-10 * start {
        return false;
    }
    v.unscale_mut(n);
    true
}

fn grow_projection(t: &mut CMatrix, q: &[CVector], hq: &[CVector], first_new: usize) {
    let m = q.len();
    let mut grown = CMatrix::zeros(m, m);
    grown.view_mut((0, 0), (first_new, first_new)).copy_from(&t.view((0, 0), (first_new, first_new)));
    for j in first_new..m {
        for i in 0..=j {
            let v = q[i].dotc(&hq[j]);
            grown[(i, j)] = v;
            grown[(j, i)] = v.conj();
        }
    }
    for i in 0..m {
        grown[(i, i)] = C64::new(grown[(i, i)].re, 0.0);
    }
    *t = grown;
}

fn ritz_pairs(t: &CMatrix, q: &[CVector], hq: &[CVector], want: usize) -> Vec<EigenPair> {
    let eig = SymmetricEigen::new(t.clone());
    let mut order: Vec<usize> = (0..eig.eigenvalues.len()).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
    let dim = q[0].len();
    order
        .into_iter()
        .take(want)
        .map(|k| {
            let y = eig.eigenvectors.column(k);
            let mut x = CVector::zeros(dim);
            let mut hx = CVector::zeros(dim);
            for (i, yi) in y.iter().enumerate() {
                x.axpy(*yi, &q[i], C64::new(1.0, 0.0));
                hx.axpy(*yi, &hq[i], C64::new(1.0, 0.0));
            }
            let value = eig.eigenvalues[k];
            let residual = (hx - x.scale(value)).norm();
            EigenPair { value, vector: x, residual }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::SparseCMatrix;

    #[test]
    fn recovers_bottom_of_a_diagonal_spectrum_with_multiplicity() {
        let n = 300;
        let diag: Vec<(usize, usize, C64)> = (0..n)
            .map(|i| {
                let v = if i < 2 { 0.0 } else { 0.01 + i as f64 / n as f64 };
                (i, i, C64::new(v, 0.0))
            })
            .collect();
        let h = SparseCMatrix::from_triplets(n, n, diag).unwrap();
        let pairs = lowest_eigenpairs(n, |x| h.mul_vec(x), &LanczosOptions::default()).unwrap();
        assert!(pairs[0].value.abs() < 1e-9 && pairs[1].value.abs() < 1e-9);
        assert!((pairs[2].value - (0.01 + 2.0 / n as f64)).abs() < 1e-9);
    }

    #[test]
    fn identity_operator_is_handled() {
        let n = 50;
        let pairs = lowest_eigenpairs(n, |x| x.clone(), &LanczosOptions::default()).unwrap();
        assert_eq!(pairs.len(), 6);
        assert!(pairs.iter().all(|p| (p.value - 1.0).abs() < 1e-12));
    }

    #[test]
    fn matches_dense_eigen_on_a_laplacian() {
        let n = 120;
        let mut t = Vec::new();
        for i in 0..n {
            t.push((i, i, C64::new(2.0, 0.0)));
            if i + 1 < n {
                t.push((i, i + 1, C64::new(0.0, -1.0)));
                t.push((i + 1, i, C64::new(0.0, 1.0)));
            }
        }
        let h = SparseCMatrix::from_triplets(n, n, t).unwrap();
        let opts = LanczosOptions { want: 3, tol: 1e-9, ..Default::default() };
        let pairs = lowest_eigenpairs(n, |x| h.mul_vec(x), &opts).unwrap();
        for (k, p) in pairs.iter().enumerate() {
            let exact = 2.0 - 2.0 * (std::f64::consts::PI * (k + 1) as f64 / (n + 1) as f64).cos();
            assert!((p.value - exact).abs() < 1e-9, "{k}: {} vs {exact}", p.value);
        }
    }
}
