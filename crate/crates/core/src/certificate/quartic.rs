use serde::Serialize;

use super::linear::weighted_solve;
use super::Space;
use crate::error::Result;
use crate::functional::MomentSequence;
use crate::poly::identities::{axis_index, condition_residual_expand, linear_inner, x_minus_i};
use crate::poly::{CPoly, MultiIndex};

/// Iteration cap for the reweighted scheme.
pub const IRLS_MAX_ITERATIONS: usize = 50;
/// Stop once the relative decrease of one step falls below this.
pub const IRLS_REL_DECREASE: f64 = 1e-10;

/// `L(|1 - (x_j - i) q|^4)`, clamped at zero.
pub fn quartic_eval(l: &MomentSequence, axis: usize, q: &CPoly) -> Result<f64> {
    let r = linear_inner(axis, q)?;
    let s = &r * &r.conj();
    Ok(l.apply(&(&s * &s))?.re.max(0.0))
}

/// `L(|1 - (1 + x_j^2) q conj(q)|^2)`; not clamped, so rounding below zero
/// stays visible.
pub fn condition1_eval(l: &MomentSequence, axis: usize, q: &CPoly) -> Result<f64> {
    Ok(l.apply(&condition_residual_expand(axis, q)?)?.re)
}

/// Norms entering the quartic-to-density bound for `Q = 1 - (x_j - i) q`.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct BoundNorms {
    /// `||Q||^2 = L(Q conj(Q))`
    pub q_norm_sq: f64,
    /// `||Q conj(Q)||`, the square root of the quartic value
    pub qq_norm: f64,
    /// `||1|| = sqrt(L(1))`
    pub one_norm: f64,
    /// `2 sqrt(||Q conj(Q)|| ||1||) + ||Q conj(Q)||`
    pub bound: f64,
}

pub fn bound_norms(l: &MomentSequence, axis: usize, q: &CPoly) -> Result<BoundNorms> {
    let big_q = linear_inner(axis, q)?;
    let s = &big_q * &big_q.conj();
    l.require_degree(2 * s.degree())?;
    let q_norm_sq = l.apply(&s)?.re.max(0.0);
    let qq_norm = l.apply(&(&s * &s))?.re.max(0.0).sqrt();
    let one_norm = l.mass().max(0.0).sqrt();
    Ok(BoundNorms {
        q_norm_sq,
        qq_norm,
        one_norm,
        bound: 2.0 * (qq_norm * one_norm).sqrt() + qq_norm,
    })
}

/// Upper bound on `sqrt(condition1_eval)` from the quartic value alone.
pub fn condition1_bound(l: &MomentSequence, axis: usize, q: &CPoly) -> Result<f64> {
    Ok(bound_norms(l, axis, q)?.bound)
}

/// Result of the reweighted quartic minimization.
#[derive(Clone, Debug)]
pub struct QuarticMinimum {
    pub value: f64,
    pub q: CPoly,
    /// Quartic value at the initializer.
    pub initial_value: f64,
    pub iterations: usize,
    /// A step failed to decrease the objective before convergence; `q` is
    /// the best iterate seen.
    pub stalled: bool,
}

/// Local minimization of `quartic_eval` over `q` of degree `<= d`, started at
/// the quadratic (linear-residual) minimizer.
pub fn quartic_minimize(l: &MomentSequence, axis: usize, d: u32, space: Space) -> Result<QuarticMinimum> {
    axis_index(axis, l.dim())?;
    l.require_degree(4 * (d + 1))?;
    let basis = space.basis(l.dim(), axis, d);
    let init = weighted_solve(l, axis, &basis, &CPoly::one(l.dim()))?.minimizer;
    quartic_minimize_from(l, axis, &basis, init)
}

/// Reweighted least squares for `L(|R|^4)`, `R = 1 - (x_j - i) q`: each step
/// solves `min L(w |1 - (x_j - i) q|^2)` with `w = |R_prev|^2`, then takes an
/// exact line search along the step.
pub(crate) fn quartic_minimize_from(
    l: &MomentSequence,
    axis: usize,
    basis: &[MultiIndex],
    init: CPoly,
) -> Result<QuarticMinimum> {
    let n = l.dim();
    let xmi = x_minus_i(n, axis)?;
    let mut q = init;
    let mut value = quartic_eval(l, axis, &q)?;
    let initial_value = value;
    let mut iterations = 0;
    let mut stalled = false;
    while iterations < IRLS_MAX_ITERATIONS && value > 0.0 {
        iterations += 1;
        let r = linear_inner(axis, &q)?;
        let w = &r * &r.conj();
        let target = weighted_solve(l, axis, basis, &w)?.minimizer;
        let delta = &target - &q;
        if delta.max_abs_coefficient() <= 1e-14 * (1.0 + q.max_abs_coefficient()) {
            break;
        }
        // Along q + t * delta the residual is R - t U with U = (x_j - i) delta.
        let u = &xmi * &delta;
        let theta = line_search(l, &r, &u)?;
        let candidate = &q + &delta.scale(theta.into());
        let cand_value = quartic_eval(l, axis, &candidate)?;
        if cand_value >= value {
            stalled = true;
            break;
        }
        let rel = (value - cand_value) / value;
        q = candidate;
        value = cand_value;
        if rel < IRLS_REL_DECREASE {
            break;
        }
    }
    Ok(QuarticMinimum {
        value,
        q,
        initial_value,
        iterations,
        stalled,
    })
}

/// Minimizes the quartic `t -> L(|R - t U|^4)` over `t in [0, 2]`.
fn line_search(l: &MomentSequence, r: &CPoly, u: &CPoly) -> Result<f64> {
    // |R - tU|^2 = a - 2 t b + t^2 c with real a, b, c.
    let a = r * &r.conj();
    let b = (&(r * &u.conj()) + &(&r.conj() * u)).scale(0.5.into());
    let c = u * &u.conj();
    let ev = |p: &CPoly| -> Result<f64> { Ok(l.apply(p)?.re) };
    let laa = ev(&(&a * &a))?;
    let lab = ev(&(&a * &b))?;
    let lbb = ev(&(&b * &b))?;
    let lac = ev(&(&a * &c))?;
    let lbc = ev(&(&b * &c))?;
    let lcc = ev(&(&c * &c))?;
    let coeffs = [laa, -4.0 * lab, 4.0 * lbb + 2.0 * lac, -4.0 * lbc, lcc];
    Ok(minimize_quartic_on(&coeffs, 0.0, 2.0))
}

/// Minimizer over `[lo, hi]` of `sum_k coeffs[k] t^k` by a grid scan refined
/// with golden-section search.
pub(crate) fn minimize_quartic_on(coeffs: &[f64; 5], lo: f64, hi: f64) -> f64 {
    let f = |t: f64| coeffs.iter().rev().fold(0.0, |acc, c| acc * t + c);
    minimize_scalar_on(f, lo, hi)
}

pub(crate) fn minimize_scalar_on<F: Fn(f64) -> f64>(f: F, lo: f64, hi: f64) -> f64 {
    const GRID: usize = 200;
    let step = (hi - lo) / GRID as f64;
    let mut best = lo;
    let mut best_v = f(lo);
    for k in 1..=GRID {
        let t = lo + step * k as f64;
        let v = f(t);
        if v < best_v {
            best = t;
            best_v = v;
        }
    }
    let (mut a, mut b) = ((best - step).max(lo), (best + step).min(hi));
    let phi = (5f64.sqrt() - 1.0) / 2.0;
    for _ in 0..80 {
        let c = b - phi * (b - a);
        let d = a + phi * (b - a);
        if f(c) < f(d) {
            b = d;
        } else {
            a = c;
        }
    }
    let mid = (a + b) / 2.0;
    if f(mid) <= best_v {
        mid
    } else {
        best
    }
}
