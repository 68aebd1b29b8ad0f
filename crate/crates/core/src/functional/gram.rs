use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::Serialize;

use super::MomentSequence;
use crate::error::{Error, Result};
use crate::linalg::hermitian_min_eigen;
use crate::poly::{CPoly, MultiIndex};

/// Hermitian matrix indexed by a monomial basis.
#[derive(Clone, Debug)]
pub struct HermitianGram {
    pub basis: Vec<MultiIndex>,
    pub entries: DMatrix<Complex64>,
}

impl HermitianGram {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn trace(&self) -> f64 {
        (0..self.dim()).map(|k| self.entries[(k, k)].re).sum()
    }

    /// Scale-aware PSD tolerance `1e-8 * (1 + |trace| / dim)`.
    pub fn tol_psd(&self) -> f64 {
        if self.dim() == 0 {
            return 1e-8;
        }
        1e-8 * (1.0 + self.trace().abs() / self.dim() as f64)
    }

    pub fn real_entries(&self) -> DMatrix<f64> {
        self.entries.map(|z| z.re)
    }

    /// Smallest eigenvalue with a unit eigenvector.
    pub fn min_eigenpair(&self) -> (f64, Vec<Complex64>) {
        let (l, v) = hermitian_min_eigen(&self.entries);
        (l, v.iter().copied().collect())
    }

    pub fn is_psd(&self) -> bool {
        min_eigenvalue(self) >= -self.tol_psd()
    }

    /// The polynomial `sum_k v_k x^{basis_k}`.
    pub fn combination(&self, coeffs: &[Complex64]) -> CPoly {
        let n = self.basis.first().map_or(0, |b| b.dim());
        let mut p = CPoly::zero(n);
        for (b, c) in self.basis.iter().zip(coeffs) {
            p.add_term(b.clone(), *c);
        }
        p
    }
}

/// Matrix `[L(g x^{alpha + beta})]` over monomials of degree `<= d`.
///
/// With `g = 1` this is the moment matrix `M_d(L)`.
pub fn localizing_matrix(l: &MomentSequence, g: &CPoly, d: u32) -> Result<HermitianGram> {
    if g.dim() != l.dim() {
        return Err(Error::DimensionMismatch {
            expected: l.dim(),
            found: g.dim(),
        });
    }
    if !g.is_real() {
        return Err(Error::NonRealWeight);
    }
    l.require_degree(2 * d + g.degree())?;
    let basis = MultiIndex::up_to_degree(l.dim(), d);
    let dim = basis.len();
    let mut entries = DMatrix::from_element(dim, dim, Complex64::new(0.0, 0.0));
    for r in 0..dim {
        for c in r..dim {
            let v = l.apply(&g.shift(&basis[r].add(&basis[c])))?;
            let v = Complex64::new(v.re, 0.0);
            entries[(r, c)] = v;
            entries[(c, r)] = v;
        }
    }
    Ok(HermitianGram { basis, entries })
}

pub fn moment_matrix(l: &MomentSequence, d: u32) -> Result<HermitianGram> {
    localizing_matrix(l, &CPoly::one(l.dim()), d)
}

pub fn min_eigenvalue(g: &HermitianGram) -> f64 {
    hermitian_min_eigen(&g.entries).0
}

/// Outcome of checking whether `g` lies in the kernel of the form `(f, h) -> L(f h)`.
#[derive(Clone, Debug, Serialize)]
pub struct KernelCheck {
    pub contains: bool,
    /// `L(g^2)`
    pub l_g_squared: f64,
    /// `max_{|h| <= d} |L(g x^h)|`
    pub max_abs_l_gh: f64,
    /// Monomial attaining `max_abs_l_gh`.
    pub worst_monomial: Vec<u32>,
    /// The two sub-conditions agree at `tol`.
    pub consistent: bool,
    pub tol: f64,
}

/// Checks `L(g^2) <= tol` and `|L(g x^h)| <= tol` for all `|h| <= d`; these
/// are equivalent for PSD `L` and both are reported.
pub fn kernel_contains(l: &MomentSequence, g: &CPoly, d: u32, tol: f64) -> Result<KernelCheck> {
    if g.dim() != l.dim() {
        return Err(Error::DimensionMismatch {
            expected: l.dim(),
            found: g.dim(),
        });
    }
    if !g.is_real() {
        return Err(Error::NonRealWeight);
    }
    l.require_degree(2 * g.degree())?;
    l.require_degree(g.degree() + d)?;
    let l_g2 = l.apply(&(g * g))?.re;
    let mut max_abs = 0.0;
    let mut worst = MultiIndex::zero(l.dim());
    for h in MultiIndex::up_to_degree(l.dim(), d) {
        let v = l.apply(&g.shift(&h))?.norm();
        if v > max_abs {
            max_abs = v;
            worst = h;
        }
    }
    let square_ok = l_g2 <= tol;
    let products_ok = max_abs <= tol;
    Ok(KernelCheck {
        contains: square_ok && products_ok,
        l_g_squared: l_g2,
        max_abs_l_gh: max_abs,
        worst_monomial: worst.exponents().to_vec(),
        consistent: square_ok == products_ok,
        tol,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn atoms_1d(points: &[f64], weights: &[f64], d: u32) -> MomentSequence {
        MomentSequence::from_fn(1, d, |a| {
            Ok(points
                .iter()
                .zip(weights)
                .map(|(x, w)| w * x.powi(a.degree() as i32))
                .sum())
        })
        .unwrap()
    }

    #[test]
    fn dirac_at_two_moment_matrix() {
        let l = atoms_1d(&[2.0], &[1.0], 2);
        let g = moment_matrix(&l, 1).unwrap();
        assert_eq!(g.real_entries(), DMatrix::from_row_slice(2, 2, &[1.0, 2.0, 2.0, 4.0]));
        assert!(min_eigenvalue(&g).abs() < 1e-14);
        assert!(g.is_psd());
    }

    #[test]
    fn two_atoms_localized_by_x() {
        let l = atoms_1d(&[1.0, -1.0], &[0.5, 0.5], 4);
        let g = localizing_matrix(&l, &CPoly::var(1, 0), 1).unwrap();
        assert_eq!(g.real_entries(), DMatrix::from_row_slice(2, 2, &[0.0, 1.0, 1.0, 0.0]));
        assert!((min_eigenvalue(&g) + 1.0).abs() < 1e-15);
        assert!(!g.is_psd());
    }

    #[test]
    fn degree_zero_is_mass() {
        let l = atoms_1d(&[0.3], &[2.5], 0);
        let g = moment_matrix(&l, 0).unwrap();
        assert_eq!(g.entries[(0, 0)].re, 2.5);
    }

    #[test]
    fn localizing_errors() {
        let l = atoms_1d(&[0.3], &[1.0], 2);
        assert!(matches!(
            localizing_matrix(&l, &CPoly::var(1, 0), 1),
            Err(Error::DegreeExceeded { .. })
        ));
        let ig = CPoly::constant(1, Complex64::new(0.0, 1.0));
        assert!(matches!(localizing_matrix(&l, &ig, 0), Err(Error::NonRealWeight)));
    }

    #[test]
    fn identity_min_eigenvalue() {
        let g = HermitianGram {
            basis: MultiIndex::up_to_degree(1, 2),
            entries: DMatrix::identity(3, 3),
        };
        assert_eq!(min_eigenvalue(&g), 1.0);
    }

    fn atoms_2d(points: &[[f64; 2]], d: u32) -> MomentSequence {
        let w = 1.0 / points.len() as f64;
        MomentSequence::from_fn(2, d, |a| {
            Ok(points.iter().map(|p| w * a.eval(p)).sum())
        })
        .unwrap()
    }

    #[test]
    fn kernel_on_axis_line() {
        let l = atoms_2d(&[[1.0, 0.0], [-1.0, 0.0]], 4);
        let x2 = CPoly::var(2, 1);
        let k = kernel_contains(&l, &x2, 2, 1e-10).unwrap();
        assert!(k.contains && k.consistent);
        assert_eq!(k.l_g_squared, 0.0);
        let x1 = CPoly::var(2, 0);
        let k = kernel_contains(&l, &x1, 2, 1e-10).unwrap();
        assert!(!k.contains && k.consistent);
        assert_eq!(k.l_g_squared, 1.0);
        assert!(kernel_contains(&l, &CPoly::zero(2), 2, 1e-10).unwrap().contains);
    }
}
