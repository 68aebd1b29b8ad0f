use std::collections::HashMap;

use nalgebra::DMatrix;
use num_complex::Complex64;

use super::Space;
use crate::error::Result;
use crate::functional::MomentSequence;
use crate::linalg::pinv_solve;
use crate::poly::identities::{axis_index, x_plus_i};
use crate::poly::{CPoly, MultiIndex};

/// Minimizer of `L(|1 - (x_j - i) p|^2)` over a monomial span.
#[derive(Clone, Debug)]
pub struct LinearResidual {
    pub value: f64,
    pub minimizer: CPoly,
    pub rank: usize,
    pub condition: f64,
}

/// Minimizes `L(w |1 - (x_j - i) p|^2)` over `p` in the span of `basis`.
///
/// Normal equations: `G_{ab} = L(w (1 + x_j^2) x^{a+b})`, `b_a = L(w (x_j + i) x^a)`;
/// the value is `L(w) - Re(b^H G^+ b)`, clamped at zero.
pub(crate) fn weighted_solve(
    l: &MomentSequence,
    axis: usize,
    basis: &[MultiIndex],
    weight: &CPoly,
) -> Result<LinearResidual> {
    let n = l.dim();
    let j = axis_index(axis, n)?;
    let max_basis = basis.iter().map(|a| a.degree()).max().unwrap_or(0);
    l.require_degree(weight.degree() + 2 + 2 * max_basis)?;

    let wp = weight * &CPoly::one_plus_square(n, j);
    let mut cache: HashMap<MultiIndex, f64> = HashMap::new();
    let dim = basis.len();
    let mut g = DMatrix::zeros(dim, dim);
    for r in 0..dim {
        for c in r..dim {
            let gamma = basis[r].add(&basis[c]);
            let v = match cache.get(&gamma) {
                Some(v) => *v,
                None => {
                    let v = l.apply(&wp.shift(&gamma))?.re;
                    cache.insert(gamma, v);
                    v
                }
            };
            g[(r, c)] = v;
            g[(c, r)] = v;
        }
    }
    let wx = weight * &x_plus_i(n, axis)?;
    let b: Vec<Complex64> = basis
        .iter()
        .map(|a| l.apply(&wx.shift(a)))
        .collect::<Result<_>>()?;
    let c0 = l.apply(weight)?.re;
    let sol = pinv_solve(&g, &b);
    let mut minimizer = CPoly::zero(n);
    for (a, c) in basis.iter().zip(&sol.x) {
        minimizer.add_term(a.clone(), *c);
    }
    Ok(LinearResidual {
        value: (c0 - sol.explained).max(0.0),
        minimizer,
        rank: sol.rank,
        condition: sol.condition,
    })
}

/// `min_p L(|1 - (x_j - i) p|^2)` over `p` of degree `<= d` in the given space.
pub fn linear_residual(l: &MomentSequence, axis: usize, d: u32, space: Space) -> Result<LinearResidual> {
    axis_index(axis, l.dim())?;
    l.require_degree(2 * d + 2)?;
    let basis = space.basis(l.dim(), axis, d);
    weighted_solve(l, axis, &basis, &CPoly::one(l.dim()))
}

/// Residuals for `d = 0..=d_max`, each warm-started from the previous degree's
/// minimizer so the reported values never increase.
pub fn linear_residual_sweep(
    l: &MomentSequence,
    axis: usize,
    d_max: u32,
    space: Space,
) -> Result<Vec<LinearResidual>> {
    let mut out: Vec<LinearResidual> = Vec::new();
    for d in 0..=d_max {
        let cur = linear_residual(l, axis, d, space)?;
        match out.last() {
            Some(prev) if prev.value < cur.value => {
                let mut kept = prev.clone();
                kept.rank = cur.rank;
                kept.condition = cur.condition;
                out.push(kept);
            }
            _ => out.push(cur),
        }
    }
    Ok(out)
}
