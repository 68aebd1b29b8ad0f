//! `L^4(mu_j)` distance from `1/(x - i)` to polynomials, and the Hölder
//! estimate that links it to the quartic residual.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use serde::Serialize;

use super::quartic::{minimize_scalar_on, IRLS_MAX_ITERATIONS, IRLS_REL_DECREASE};
use crate::error::{Error, Result};
use crate::oracle::{MeasureOracle, Oracle1d};
use crate::poly::{CPoly, LocalizedElement, MultiIndex};

const I: Complex64 = Complex64 { re: 0.0, im: 1.0 };

/// `q - 1/(x - i) = (q (1 + x^2) - (x + i)) / (1 + x^2)` in one variable.
pub fn distance_to_resolvent(q: &CPoly) -> LocalizedElement {
    let num = &(q * &CPoly::one_plus_square(1, 0)) - &CPoly::var_shifted(1, 0, I);
    LocalizedElement::new(num, vec![1]).expect("one-dimensional")
}

#[derive(Clone, Debug)]
pub struct L4Density {
    /// `|| q - 1/(x - i) ||_{4, mu}` at the returned `q`.
    pub value: f64,
    pub q: CPoly,
    /// Same norm at the weighted `L^2` initializer.
    pub initial_value: f64,
    pub iterations: usize,
}

/// Nodes used to discretize continuous factors during the minimization.
fn discretization(m: &Oracle1d, d: u32) -> (Vec<f64>, Vec<f64>) {
    let nodes = (8 * (d as usize + 1)).max(128).next_power_of_two();
    let rule = m.rule(nodes, 4.0 * (d as f64 + 1.0));
    // Drop nodes whose weight underflowed; they cannot affect the fit.
    rule.nodes
        .iter()
        .zip(&rule.weights)
        .filter(|(_, w)| **w > 0.0)
        .map(|(x, w)| (*x, *w))
        .unzip()
}

/// Weighted least squares `min sum v_k |q(x_k) - f_k|^2` over `deg q <= d`.
fn weighted_fit(xs: &[f64], v: &[f64], f: &[Complex64], d: u32) -> Vec<Complex64> {
    let m = xs.len();
    let cols = d as usize + 1;
    let mut a = DMatrix::from_fn(m, cols, |k, p| v[k].sqrt() * xs[k].powi(p as i32));
    let norms: Vec<f64> = (0..cols)
        .map(|p| {
            let nrm = a.column(p).norm();
            if nrm > 0.0 {
                nrm
            } else {
                1.0
            }
        })
        .collect();
    for (p, nrm) in norms.iter().enumerate() {
        a.column_mut(p).scale_mut(1.0 / nrm);
    }
    let svd = a.svd(true, true);
    let smax = svd.singular_values.max();
    let eps = 1e-12 * smax;
    let solve = |rhs: DVector<f64>| -> DVector<f64> {
        svd.solve(&rhs, eps)
            .unwrap_or_else(|_| DVector::zeros(cols))
    };
    let re = solve(DVector::from_fn(m, |k, _| v[k].sqrt() * f[k].re));
    let im = solve(DVector::from_fn(m, |k, _| v[k].sqrt() * f[k].im));
    (0..cols)
        .map(|p| Complex64::new(re[p], im[p]) / norms[p])
        .collect()
}

fn eval_coeffs(c: &[Complex64], x: f64) -> Complex64 {
    c.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, ck| acc * x + ck)
}

fn coeffs_to_poly(c: &[Complex64]) -> CPoly {
    let mut p = CPoly::zero(1);
    for (k, ck) in c.iter().enumerate() {
        p.add_term(MultiIndex::new(vec![k as u32]), *ck);
    }
    p
}

/// Minimizes `|| q - 1/(x - i) ||_{4, mu}` over `q` of degree `<= d` by
/// reweighted least squares with exact line search, started at the `L^2`
/// minimizer. Continuous measures are discretized by their Gauss rule for
/// the fit; the reported norms come from [`MeasureOracle::lp_norm`].
pub fn l4_density_residual(m: &Oracle1d, d: u32) -> Result<L4Density> {
    m.validate()?;
    let (xs, ws) = discretization(m, d);
    let f: Vec<Complex64> = xs.iter().map(|&x| 1.0 / Complex64::new(x, -1.0)).collect();
    let err_at = |c: &[Complex64]| -> Vec<Complex64> {
        xs.iter().zip(&f).map(|(&x, fk)| eval_coeffs(c, x) - fk).collect()
    };
    let objective = |e: &[Complex64]| -> f64 {
        e.iter().zip(&ws).map(|(ek, w)| w * ek.norm_sqr().powi(2)).sum()
    };

    let mut c = weighted_fit(&xs, &ws, &f, d);
    let initial = c.clone();
    let mut e = err_at(&c);
    let mut value = objective(&e);
    let mut iterations = 0;
    while iterations < IRLS_MAX_ITERATIONS && value > 0.0 {
        iterations += 1;
        let v: Vec<f64> = e.iter().zip(&ws).map(|(ek, w)| w * ek.norm_sqr()).collect();
        let target = weighted_fit(&xs, &v, &f, d);
        let step: Vec<Complex64> = target.iter().zip(&c).map(|(t, ck)| t - ck).collect();
        let de: Vec<Complex64> = xs.iter().map(|&x| eval_coeffs(&step, x)).collect();
        let phi = |t: f64| -> f64 {
            e.iter()
                .zip(&de)
                .zip(&ws)
                .map(|((ek, dk), w)| w * (ek + dk * t).norm_sqr().powi(2))
                .sum()
        };
        let theta = minimize_scalar_on(phi, 0.0, 2.0);
        let cand: Vec<Complex64> = c.iter().zip(&step).map(|(ck, sk)| ck + sk * theta).collect();
        let cand_e = err_at(&cand);
        let cand_v = objective(&cand_e);
        if cand_v >= value {
            break;
        }
        let rel = (value - cand_v) / value;
        c = cand;
        e = cand_e;
        value = cand_v;
        if rel < IRLS_REL_DECREASE {
            break;
        }
    }

    let oracle = m.to_measure();
    let q = coeffs_to_poly(&c);
    let q0 = coeffs_to_poly(&initial);
    let norm = oracle.lp_norm(&distance_to_resolvent(&q), 4.0)?;
    let init_norm = oracle.lp_norm(&distance_to_resolvent(&q0), 4.0)?;
    Ok(L4Density {
        value: norm,
        q,
        initial_value: init_norm,
        iterations,
    })
}

/// Both sides of the Hölder estimate
/// `∫|1 - (x - i) q|^4 dmu <= (||q - 1/(x - i)||_s ||x - i||_{4s/(s-4)})^4`.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct HolderCheck {
    pub lhs: f64,
    pub rhs: f64,
    pub s: f64,
}

impl HolderCheck {
    pub fn holds(&self, tol: f64) -> bool {
        self.lhs <= self.rhs + tol
    }
}

pub fn holder_check(m: &Oracle1d, q: &CPoly, s: f64) -> Result<HolderCheck> {
    if !(s > 4.0 && s.is_finite()) {
        return Err(Error::Invalid(format!("Hölder exponent s = {s} must exceed 4")));
    }
    if q.dim() != 1 {
        return Err(Error::DimensionMismatch {
            expected: 1,
            found: q.dim(),
        });
    }
    let oracle: MeasureOracle = m.to_measure();
    let r = &CPoly::one(1) - &(&CPoly::var_shifted(1, 0, -I) * q);
    let r2 = &r * &r.conj();
    let lhs = oracle
        .integrate_localized(&LocalizedElement::from_poly(&r2 * &r2))?
        .re;
    let dist = oracle.lp_norm(&distance_to_resolvent(q), s)?;
    let lin = oracle.lp_norm(
        &LocalizedElement::from_poly(CPoly::var_shifted(1, 0, -I)),
        4.0 * s / (s - 4.0),
    )?;
    Ok(HolderCheck {
        lhs,
        rhs: (dist * lin).powi(4),
        s,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dirac_matches_at_degree_zero() {
        let m = Oracle1d::Atomic1d {
            points: vec![0.0],
            weights: vec![1.0],
        };
        let r = l4_density_residual(&m, 0).unwrap();
        assert!(r.value < 1e-15);
        assert!((r.q.coefficient(&MultiIndex::zero(1)) - I).norm() < 1e-15);
    }

    #[test]
    fn atoms_interpolated_exactly() {
        let m = Oracle1d::Atomic1d {
            points: vec![-1.7, -0.4, 0.9, 1.3],
            weights: vec![0.1, 0.4, 0.3, 0.2],
        };
        let r = l4_density_residual(&m, 3).unwrap();
        assert!(r.value < 1e-9, "{}", r.value);
    }

    #[test]
    fn holder_equality_on_symmetric_atoms() {
        let m = Oracle1d::Atomic1d {
            points: vec![1.0, -1.0],
            weights: vec![0.5, 0.5],
        };
        for s in [4.5, 6.0, 10.0] {
            let h = holder_check(&m, &CPoly::zero(1), s).unwrap();
            assert!((h.lhs - 1.0).abs() < 1e-12);
            assert!((h.rhs - 1.0).abs() < 1e-12, "{}", h.rhs);
        }
    }

    #[test]
    fn holder_zero_residual_at_dirac() {
        let m = Oracle1d::Atomic1d {
            points: vec![0.0],
            weights: vec![1.0],
        };
        let h = holder_check(&m, &CPoly::constant(1, I), 6.0).unwrap();
        assert_eq!(h.lhs, 0.0);
        assert!(h.holds(0.0));
        assert!(holder_check(&m, &CPoly::zero(1), 4.0).is_err());
    }
}
