//! Small dense helpers over nalgebra: sorted symmetric eigensystems, Hermitian
//! minimum eigenpairs and the spectral pseudo-inverse solve used by the
//! least-squares certificates.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

/// Relative cutoff for the spectral pseudo-inverse.
pub const PINV_CUTOFF: f64 = 1e-12;

/// Eigenvalues ascending, with matching eigenvector columns.
pub fn sym_eigen(m: &DMatrix<f64>) -> (Vec<f64>, DMatrix<f64>) {
    let dim = m.nrows();
    if dim == 0 {
        return (Vec::new(), DMatrix::zeros(0, 0));
    }
    let eig = m.clone().symmetric_eigen();
    let mut order: Vec<usize> = (0..dim).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
    let values = order.iter().map(|&k| eig.eigenvalues[k]).collect();
    let mut vectors = DMatrix::zeros(dim, dim);
    for (col, &k) in order.iter().enumerate() {
        vectors.set_column(col, &eig.eigenvectors.column(k));
    }
    (values, vectors)
}

/// Smallest eigenvalue of a Hermitian matrix and a unit eigenvector.
///
/// Complex input goes through the real embedding `[[A, -B], [B, A]]`, whose
/// spectrum is that of `A + iB` with doubled multiplicity.
pub fn hermitian_min_eigen(m: &DMatrix<Complex64>) -> (f64, DVector<Complex64>) {
    let dim = m.nrows();
    if dim == 0 {
        return (f64::INFINITY, DVector::zeros(0));
    }
    if m.iter().all(|z| z.im == 0.0) {
        let re = m.map(|z| z.re);
        let (vals, vecs) = sym_eigen(&re);
        let v = vecs.column(0).map(|x| Complex64::new(x, 0.0));
        return (vals[0], v);
    }
    let mut big = DMatrix::zeros(2 * dim, 2 * dim);
    for r in 0..dim {
        for c in 0..dim {
            let z = m[(r, c)];
            big[(r, c)] = z.re;
            big[(r + dim, c + dim)] = z.re;
            big[(r, c + dim)] = -z.im;
            big[(r + dim, c)] = z.im;
        }
    }
    let (vals, vecs) = sym_eigen(&big);
    let col = vecs.column(0);
    let mut v = DVector::from_fn(dim, |k, _| Complex64::new(col[k], col[k + dim]));
    let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    if norm > 0.0 {
        v /= Complex64::new(norm, 0.0);
    }
    (vals[0], v)
}

/// Result of minimizing `c0 - 2 Re(b^H x) + x^H G x` over complex `x`.
#[derive(Clone, Debug)]
pub struct PinvSolution {
    pub x: Vec<Complex64>,
    /// `Re(b^H G^+ b)`
    pub explained: f64,
    pub rank: usize,
    /// Ratio of the largest to the smallest retained eigenvalue after scaling.
    pub condition: f64,
}

/// Spectral pseudo-inverse solve of `G x = b` for real symmetric PSD `G`.
///
/// `G` is first scaled to unit diagonal; eigenvalues below
/// `PINV_CUTOFF * lambda_max` of the scaled matrix are discarded.
pub fn pinv_solve(g: &DMatrix<f64>, b: &[Complex64]) -> PinvSolution {
    let dim = g.nrows();
    let scale: Vec<f64> = (0..dim)
        .map(|k| {
            let d = g[(k, k)];
            if d > 0.0 {
                1.0 / d.sqrt()
            } else {
                1.0
            }
        })
        .collect();
    let scaled = DMatrix::from_fn(dim, dim, |r, c| g[(r, c)] * scale[r] * scale[c]);
    let (vals, vecs) = sym_eigen(&scaled);
    let lmax = vals.last().copied().unwrap_or(0.0);
    let bs: Vec<Complex64> = b.iter().zip(&scale).map(|(z, s)| z * *s).collect();
    let mut y = vec![Complex64::new(0.0, 0.0); dim];
    let mut explained = 0.0;
    let mut rank = 0;
    let mut lmin_kept = f64::INFINITY;
    if lmax > 0.0 {
        for (k, &lam) in vals.iter().enumerate() {
            if lam <= PINV_CUTOFF * lmax {
                continue;
            }
            rank += 1;
            lmin_kept = lmin_kept.min(lam);
            let v = vecs.column(k);
            let proj: Complex64 = v.iter().zip(&bs).map(|(vi, bi)| bi * *vi).sum();
            explained += proj.norm_sqr() / lam;
            for (yi, vi) in y.iter_mut().zip(v.iter()) {
                *yi += proj * (*vi / lam);
            }
        }
    }
    let x = y.iter().zip(&scale).map(|(yi, s)| yi * *s).collect();
    PinvSolution {
        x,
        explained,
        rank,
        condition: if rank > 0 { lmax / lmin_kept } else { f64::INFINITY },
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn eigen_sorted() {
        let m = DMatrix::from_row_slice(2, 2, &[0.0, 1.0, 1.0, 0.0]);
        let (vals, _) = sym_eigen(&m);
        assert!((vals[0] + 1.0).abs() < 1e-15 && (vals[1] - 1.0).abs() < 1e-15);
    }

    #[test]
    fn hermitian_embedding_matches_known_spectrum() {
        // [[2, i], [-i, 2]] has eigenvalues 1 and 3.
        let m = DMatrix::from_row_slice(
            2,
            2,
            &[
                Complex64::new(2.0, 0.0),
                Complex64::new(0.0, 1.0),
                Complex64::new(0.0, -1.0),
                Complex64::new(2.0, 0.0),
            ],
        );
        let (lmin, v) = hermitian_min_eigen(&m);
        assert!((lmin - 1.0).abs() < 1e-12);
        let mv = &m * &v;
        for k in 0..2 {
            assert!((mv[k] - v[k] * lmin).norm() < 1e-12);
        }
    }

    #[test]
    fn pinv_drops_null_directions() {
        let g = DMatrix::from_row_slice(2, 2, &[1.0, 0.0, 0.0, 0.0]);
        let sol = pinv_solve(&g, &[Complex64::new(0.0, 1.0), Complex64::new(0.0, 0.0)]);
        assert_eq!(sol.rank, 1);
        assert!((sol.x[0] - Complex64::new(0.0, 1.0)).norm() < 1e-15);
        assert!((sol.explained - 1.0).abs() < 1e-15);
    }
}
