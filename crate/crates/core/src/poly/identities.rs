//! Structural identities relating the density residual `1 - (1 + x_j^2) q conj(q)`
//! to the linear residual `1 - (x_j - i) q`.
//!
//! Axes are 1-based throughout this module, matching reports and the CLI.

use num_complex::Complex64;

use super::CPoly;
use crate::error::{Error, Result};

pub(crate) fn axis_index(axis: usize, n: usize) -> Result<usize> {
    if axis == 0 || axis > n {
        return Err(Error::AxisOutOfRange { axis, n });
    }
    Ok(axis - 1)
}

const I: Complex64 = Complex64 { re: 0.0, im: 1.0 };

/// `x_j - i`.
pub fn x_minus_i(n: usize, axis: usize) -> Result<CPoly> {
    Ok(CPoly::var_shifted(n, axis_index(axis, n)?, -I))
}

/// `x_j + i`.
pub fn x_plus_i(n: usize, axis: usize) -> Result<CPoly> {
    Ok(CPoly::var_shifted(n, axis_index(axis, n)?, I))
}

/// `R = 1 - (1 + x_j^2) q conj(q)`.
pub fn density_inner(axis: usize, q: &CPoly) -> Result<CPoly> {
    let n = q.dim();
    let p = CPoly::one_plus_square(n, axis_index(axis, n)?);
    Ok(&CPoly::one(n) - &(&p * &(q * &q.conj())))
}

/// `|1 - (1 + x_j^2) q conj(q)|^2`, a real polynomial nonnegative on real points.
/// Imaginary rounding residue from non-integer `q` is dropped.
pub fn condition_residual_expand(axis: usize, q: &CPoly) -> Result<CPoly> {
    let r = density_inner(axis, q)?;
    Ok((&r * &r.conj()).real_part())
}

/// `Q = 1 - (x_j - i) q`, the linear residual.
pub fn linear_inner(axis: usize, q: &CPoly) -> Result<CPoly> {
    let n = q.dim();
    Ok(&CPoly::one(n) - &(&x_minus_i(n, axis)? * q))
}

/// The two expansions of the density residual.
#[derive(Clone, Debug, PartialEq)]
pub struct QIdentity {
    /// `1 - (x_j - i) q`
    pub q_residual: CPoly,
    /// `1 - (1 + x_j^2) q conj(q)`
    pub lhs: CPoly,
    /// `Q + conj(Q) - Q conj(Q)`
    pub rhs: CPoly,
}

impl QIdentity {
    pub fn holds(&self) -> bool {
        self.lhs == self.rhs
    }
}

pub fn q_identity(axis: usize, q: &CPoly) -> Result<QIdentity> {
    let big_q = linear_inner(axis, q)?;
    let lhs = density_inner(axis, q)?;
    let qc = big_q.conj();
    let rhs = &(&big_q + &qc) - &(&big_q * &qc);
    Ok(QIdentity {
        q_residual: big_q,
        lhs,
        rhs,
    })
}

/// `p = (x_j + i) q conj(q)`, turning a density witness into a linear one:
/// `1 - (x_j - i) p == 1 - (1 + x_j^2) q conj(q)`.
pub fn q_to_p(axis: usize, q: &CPoly) -> Result<CPoly> {
    let n = q.dim();
    Ok(&x_plus_i(n, axis)? * &(q * &q.conj()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::MultiIndex;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn residual_expand_small_cases() {
        assert_eq!(condition_residual_expand(1, &CPoly::zero(1)).unwrap(), CPoly::one(1));
        let x4 = CPoly::from_real_terms(1, [(vec![4], 1.0)]).unwrap();
        assert_eq!(condition_residual_expand(1, &CPoly::constant(1, I)).unwrap(), x4);
        assert_eq!(condition_residual_expand(1, &CPoly::one(1)).unwrap(), x4);
    }

    #[test]
    fn identity_at_q_one() {
        let id = q_identity(1, &CPoly::one(1)).unwrap();
        // Q = 1 - x + i
        let want_q = CPoly::from_terms(1, [(MultiIndex::new(vec![0]), c(1.0, 1.0)), (MultiIndex::new(vec![1]), c(-1.0, 0.0))]).unwrap();
        assert_eq!(id.q_residual, want_q);
        let minus_x2 = CPoly::from_real_terms(1, [(vec![2], -1.0)]).unwrap();
        assert_eq!(id.lhs, minus_x2);
        assert_eq!(id.rhs, minus_x2);
    }

    #[test]
    fn identity_at_q_zero() {
        let id = q_identity(2, &CPoly::zero(2)).unwrap();
        assert_eq!(id.lhs, CPoly::one(2));
        assert!(id.holds());
    }

    #[test]
    fn q_to_p_cases() {
        assert_eq!(q_to_p(1, &CPoly::one(1)).unwrap(), x_plus_i(1, 1).unwrap());
        assert!(q_to_p(1, &CPoly::zero(1)).unwrap().is_zero());
        let q = CPoly::from_terms(2, [(MultiIndex::new(vec![1, 1]), c(2.0, -1.0)), (MultiIndex::new(vec![0, 0]), c(0.0, 3.0))]).unwrap();
        let p = q_to_p(2, &q).unwrap();
        let via_p = &CPoly::one(2) - &(&x_minus_i(2, 2).unwrap() * &p);
        assert_eq!(via_p, density_inner(2, &q).unwrap());
    }

    #[test]
    fn axis_bounds() {
        assert!(matches!(q_identity(0, &CPoly::one(2)), Err(Error::AxisOutOfRange { .. })));
        assert!(matches!(q_identity(3, &CPoly::one(2)), Err(Error::AxisOutOfRange { .. })));
    }
}
