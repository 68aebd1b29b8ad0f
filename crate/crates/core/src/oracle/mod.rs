//! Measures with known moments: finite atomic measures and products of
//! one-dimensional Gaussian, log-normal, uniform and atomic factors.
//!
//! Atomic measures integrate exactly. Continuous factors integrate by Gauss
//! rules whose node count doubles (from 16, capped at 4096 per axis) until two
//! successive estimates agree to `1e-10` relative to `max(|I|, ∫|f|)`.

pub mod quadrature;
pub mod random;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::functional::MomentSequence;
use crate::poly::{LocalizedElement, MultiIndex};
use quadrature::{gauss_hermite, gauss_legendre, Rule};

/// Relative agreement required between successive quadrature estimates.
pub const QUAD_REL_TOL: f64 = 1e-10;
/// Largest per-axis node count tried.
pub const QUAD_MAX_NODES: usize = 4096;
const QUAD_MIN_NODES: usize = 16;
/// Cap on tensor-product grid size for multi-axis continuous products.
const QUAD_MAX_POINTS: usize = 1 << 22;

/// One-dimensional factor measure.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Oracle1d {
    /// Centered normal distribution with standard deviation `sigma`.
    Gaussian { sigma: f64 },
    /// `exp(sigma * Z)` for standard normal `Z`.
    Lognormal { sigma: f64 },
    /// Uniform probability measure on `[a, b]`.
    Uniform { a: f64, b: f64 },
    #[serde(rename = "atomic1d")]
    Atomic1d { points: Vec<f64>, weights: Vec<f64> },
}

/// A positive measure on `R^n` with finite moments of all orders.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum MeasureOracle {
    Atomic {
        points: Vec<Vec<f64>>,
        weights: Vec<f64>,
    },
    Product {
        factors: Vec<Oracle1d>,
    },
}

fn check_weights(weights: &[f64], npoints: usize) -> Result<()> {
    if weights.len() != npoints {
        return Err(Error::InvalidOracle(format!(
            "{} points but {} weights",
            npoints,
            weights.len()
        )));
    }
    if npoints == 0 {
        return Err(Error::InvalidOracle("no atoms".into()));
    }
    if let Some(w) = weights.iter().find(|w| !(w.is_finite() && **w > 0.0)) {
        return Err(Error::InvalidOracle(format!("weight {w} is not positive")));
    }
    Ok(())
}

/// `log |x|` and sign of `x`.
fn log_abs(x: f64) -> (f64, f64) {
    (x.abs().ln(), if x < 0.0 { -1.0 } else { 1.0 })
}

impl Oracle1d {
    pub fn validate(&self) -> Result<()> {
        match self {
            Oracle1d::Gaussian { sigma } | Oracle1d::Lognormal { sigma } => {
                if !(sigma.is_finite() && *sigma > 0.0) {
                    return Err(Error::InvalidOracle(format!("sigma {sigma} must be positive")));
                }
            }
            Oracle1d::Uniform { a, b } => {
                if !(a.is_finite() && b.is_finite() && a < b) {
                    return Err(Error::InvalidOracle(format!("uniform needs a < b, got [{a}, {b}]")));
                }
            }
            Oracle1d::Atomic1d { points, weights } => {
                check_weights(weights, points.len())?;
                if points.iter().any(|p| !p.is_finite()) {
                    return Err(Error::InvalidOracle("non-finite atom".into()));
                }
            }
        }
        Ok(())
    }

    pub fn is_atomic(&self) -> bool {
        matches!(self, Oracle1d::Atomic1d { .. })
    }

    pub fn mass(&self) -> f64 {
        match self {
            Oracle1d::Atomic1d { weights, .. } => weights.iter().sum(),
            _ => 1.0,
        }
    }

    /// `(log |m_k|, sign m_k)`; `log |m_k| = -inf` when `m_k = 0`.
    pub fn log_abs_moment(&self, k: u32) -> (f64, f64) {
        match *self {
            Oracle1d::Gaussian { sigma } => {
                if k % 2 == 1 {
                    return (f64::NEG_INFINITY, 1.0);
                }
                let half = k / 2;
                let log_df: f64 = (1..=half).map(|i| ((2 * i - 1) as f64).ln()).sum();
                (log_df + k as f64 * sigma.ln(), 1.0)
            }
            Oracle1d::Lognormal { sigma } => {
                let kf = k as f64;
                (kf * kf * sigma * sigma / 2.0, 1.0)
            }
            Oracle1d::Uniform { .. } | Oracle1d::Atomic1d { .. } => log_abs(self.linear_moment(k)),
        }
    }

    fn linear_moment(&self, k: u32) -> f64 {
        match self {
            Oracle1d::Gaussian { sigma } => {
                if k % 2 == 1 {
                    return 0.0;
                }
                let df: f64 = (1..=k / 2).map(|i| (2 * i - 1) as f64).product();
                df * sigma.powi(k as i32)
            }
            Oracle1d::Lognormal { sigma } => {
                let kf = k as f64;
                (kf * kf * sigma * sigma / 2.0).exp()
            }
            Oracle1d::Uniform { a, b } => {
                let k1 = k as i32 + 1;
                (b.powi(k1) - a.powi(k1)) / ((k1 as f64) * (b - a))
            }
            Oracle1d::Atomic1d { points, weights } => points
                .iter()
                .zip(weights)
                .map(|(x, w)| w * x.powi(k as i32))
                .sum(),
        }
    }

    /// Closed-form moment `m_k`; errors if it overflows `f64`.
    pub fn moment(&self, k: u32) -> Result<f64> {
        let v = self.linear_moment(k);
        if !v.is_finite() {
            return Err(Error::MomentOverflow {
                alpha: vec![k],
                log_abs: self.log_abs_moment(k).0,
            });
        }
        Ok(v)
    }

    /// `log m_{2k}` for `k = 1..=count`.
    pub fn log_even_moments(&self, count: usize) -> Vec<f64> {
        (1..=count as u32).map(|k| self.log_abs_moment(2 * k).0).collect()
    }

    /// Quadrature rule with `nodes` points, sized for integrands growing like
    /// `|x|^growth` (only the log-normal truncation depends on it). Atomic
    /// factors return their atoms regardless of `nodes`.
    pub fn rule(&self, nodes: usize, growth: f64) -> Rule {
        match self {
            Oracle1d::Atomic1d { points, weights } => Rule {
                nodes: points.clone(),
                weights: weights.clone(),
            },
            Oracle1d::Uniform { a, b } => {
                let gl = gauss_legendre(nodes);
                let (mid, half) = ((a + b) / 2.0, (b - a) / 2.0);
                Rule {
                    nodes: gl.nodes.iter().map(|t| mid + half * t).collect(),
                    weights: gl.weights.iter().map(|w| w / 2.0).collect(),
                }
            }
            Oracle1d::Gaussian { sigma } => {
                let gh = gauss_hermite(nodes);
                let s = std::f64::consts::SQRT_2 * sigma;
                let norm = std::f64::consts::PI.sqrt();
                Rule {
                    nodes: gh.nodes.iter().map(|t| s * t).collect(),
                    weights: gh.weights.iter().map(|w| w / norm).collect(),
                }
            }
            Oracle1d::Lognormal { sigma } => {
                // x = exp(sigma z), z standard normal, truncated to
                // [-12, growth * sigma + 12] where the tail mass is negligible.
                let gl = gauss_legendre(nodes);
                let (lo, hi) = (-12.0, growth * sigma + 12.0);
                let (mid, half) = ((lo + hi) / 2.0, (hi - lo) / 2.0);
                let inv_sqrt_2pi = 1.0 / (2.0 * std::f64::consts::PI).sqrt();
                let mut xs = Vec::with_capacity(nodes);
                let mut ws = Vec::with_capacity(nodes);
                for (t, w) in gl.nodes.iter().zip(&gl.weights) {
                    let z = mid + half * t;
                    xs.push((sigma * z).exp());
                    ws.push(w * half * inv_sqrt_2pi * (-z * z / 2.0).exp());
                }
                Rule { nodes: xs, weights: ws }
            }
        }
    }

    /// Wraps as a one-dimensional [`MeasureOracle`].
    pub fn to_measure(&self) -> MeasureOracle {
        MeasureOracle::Product {
            factors: vec![self.clone()],
        }
    }

    /// Moment sequence of the factor up to `max_degree`.
    pub fn moments(&self, max_degree: u32) -> Result<MomentSequence> {
        self.to_measure().moments(max_degree)
    }
}

impl MeasureOracle {
    pub fn atomic(points: Vec<Vec<f64>>, weights: Vec<f64>) -> Result<Self> {
        let m = MeasureOracle::Atomic { points, weights };
        m.validate()?;
        Ok(m)
    }

    pub fn product(factors: Vec<Oracle1d>) -> Result<Self> {
        let m = MeasureOracle::Product { factors };
        m.validate()?;
        Ok(m)
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            MeasureOracle::Atomic { points, weights } => {
                check_weights(weights, points.len())?;
                let n = points[0].len();
                if n == 0 {
                    return Err(Error::InvalidOracle("atoms must have dimension >= 1".into()));
                }
                for p in points {
                    if p.len() != n {
                        return Err(Error::InvalidOracle("atoms of differing dimension".into()));
                    }
                    if p.iter().any(|x| !x.is_finite()) {
                        return Err(Error::InvalidOracle("non-finite atom".into()));
                    }
                }
            }
            MeasureOracle::Product { factors } => {
                if factors.is_empty() {
                    return Err(Error::InvalidOracle("product needs at least one factor".into()));
                }
                for f in factors {
                    f.validate()?;
                }
            }
        }
        Ok(())
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let m: MeasureOracle =
            serde_json::from_str(text).map_err(|e| Error::InvalidOracle(e.to_string()))?;
        m.validate()?;
        Ok(m)
    }

    pub fn dim(&self) -> usize {
        match self {
            MeasureOracle::Atomic { points, .. } => points[0].len(),
            MeasureOracle::Product { factors } => factors.len(),
        }
    }

    pub fn is_atomic(&self) -> bool {
        match self {
            MeasureOracle::Atomic { .. } => true,
            MeasureOracle::Product { factors } => factors.iter().all(Oracle1d::is_atomic),
        }
    }

    /// Atoms and weights, expanding atomic products; `None` for continuous kinds.
    pub fn atoms(&self) -> Option<(Vec<Vec<f64>>, Vec<f64>)> {
        match self {
            MeasureOracle::Atomic { points, weights } => Some((points.clone(), weights.clone())),
            MeasureOracle::Product { factors } => {
                if !self.is_atomic() {
                    return None;
                }
                let rules: Vec<Rule> = factors.iter().map(|f| f.rule(0, 0.0)).collect();
                let mut pts = Vec::new();
                let mut ws = Vec::new();
                for_each_grid_point(&rules, |p, w| {
                    pts.push(p.to_vec());
                    ws.push(w);
                });
                Some((pts, ws))
            }
        }
    }

    /// Whether any factor is heavy-tailed (unbounded support).
    pub fn is_heavy_tailed(&self) -> bool {
        match self {
            MeasureOracle::Atomic { .. } => false,
            MeasureOracle::Product { factors } => factors
                .iter()
                .any(|f| matches!(f, Oracle1d::Gaussian { .. } | Oracle1d::Lognormal { .. })),
        }
    }

    /// Closed-form moment `L(x^alpha)`.
    pub fn moment(&self, alpha: &MultiIndex) -> Result<f64> {
        if alpha.dim() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: alpha.dim(),
            });
        }
        match self {
            MeasureOracle::Atomic { points, weights } => Ok(points
                .iter()
                .zip(weights)
                .map(|(p, w)| w * alpha.eval(p))
                .sum()),
            MeasureOracle::Product { factors } => {
                let mut v = 1.0;
                for (f, &k) in factors.iter().zip(alpha.exponents()) {
                    v *= f.moment(k)?;
                }
                if !v.is_finite() {
                    return Err(Error::MomentOverflow {
                        alpha: alpha.exponents().to_vec(),
                        log_abs: self.log_abs_moment(alpha)?.0,
                    });
                }
                Ok(v)
            }
        }
    }

    /// `(log |L(x^alpha)|, sign)`, computed without forming the linear value
    /// for product kinds.
    pub fn log_abs_moment(&self, alpha: &MultiIndex) -> Result<(f64, f64)> {
        match self {
            MeasureOracle::Atomic { .. } => Ok(log_abs(self.moment(alpha)?)),
            MeasureOracle::Product { factors } => {
                let mut log = 0.0;
                let mut sign = 1.0;
                for (f, &k) in factors.iter().zip(alpha.exponents()) {
                    let (l, s) = f.log_abs_moment(k);
                    log += l;
                    sign *= s;
                }
                Ok((log, sign))
            }
        }
    }

    /// All moments up to total degree `max_degree`.
    pub fn moments(&self, max_degree: u32) -> Result<MomentSequence> {
        MomentSequence::from_fn(self.dim(), max_degree, |a| self.moment(a))
    }

    pub fn mass(&self) -> f64 {
        match self {
            MeasureOracle::Atomic { weights, .. } => weights.iter().sum(),
            MeasureOracle::Product { factors } => factors.iter().map(Oracle1d::mass).product(),
        }
    }

    /// The `axis`-th (1-based) marginal.
    pub fn marginal(&self, axis: usize) -> Result<Oracle1d> {
        let j = crate::poly::identities::axis_index(axis, self.dim())?;
        match self {
            MeasureOracle::Atomic { points, weights } => Ok(Oracle1d::Atomic1d {
                points: points.iter().map(|p| p[j]).collect(),
                weights: weights.clone(),
            }),
            MeasureOracle::Product { factors } => {
                let others: f64 = factors
                    .iter()
                    .enumerate()
                    .filter(|(k, _)| *k != j)
                    .map(|(_, f)| f.mass())
                    .product();
                match &factors[j] {
                    Oracle1d::Atomic1d { points, weights } if others != 1.0 => Ok(Oracle1d::Atomic1d {
                        points: points.clone(),
                        weights: weights.iter().map(|w| w * others).collect(),
                    }),
                    f if others == 1.0 => Ok(f.clone()),
                    _ => Err(Error::UnsupportedKind(
                        "marginal of a continuous factor times a non-probability measure",
                    )),
                }
            }
        }
    }

    /// `∫ f dμ` for an element of the localized ring.
    pub fn integrate_localized(&self, f: &LocalizedElement) -> Result<Complex64> {
        self.check_dim(f.dim())?;
        let growth: Vec<f64> = (0..self.dim())
            .map(|j| f.numerator().degree_in(j) as f64)
            .collect();
        let min_nodes = ((f.numerator().degree() as usize + 2) / 2).max(QUAD_MIN_NODES);
        self.integrate_with(&growth, min_nodes, |p| f.eval_unchecked(p))
    }

    /// `(∫ |f|^s dμ)^{1/s}`.
    pub fn lp_norm(&self, f: &LocalizedElement, s: f64) -> Result<f64> {
        if !(s >= 1.0 && s.is_finite()) {
            return Err(Error::Invalid(format!("Lebesgue exponent {s} must be >= 1")));
        }
        self.check_dim(f.dim())?;
        let growth: Vec<f64> = (0..self.dim())
            .map(|j| s * f.numerator().degree_in(j) as f64)
            .collect();
        let min_nodes = ((s * f.numerator().degree() as f64) as usize / 2 + 1).max(QUAD_MIN_NODES);
        let v = self.integrate_with(&growth, min_nodes, |p| {
            Complex64::new(f.eval_unchecked(p).norm().powf(s), 0.0)
        })?;
        Ok(v.re.max(0.0).powf(1.0 / s))
    }

    fn check_dim(&self, n: usize) -> Result<()> {
        if n != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: n,
            });
        }
        Ok(())
    }

    /// Integrates a pointwise function with the doubling contract.
    pub fn integrate_with<F>(&self, growth: &[f64], min_nodes: usize, f: F) -> Result<Complex64>
    where
        F: Fn(&[f64]) -> Complex64,
    {
        match self {
            MeasureOracle::Atomic { points, weights } => Ok(points
                .iter()
                .zip(weights)
                .map(|(p, w)| f(p) * *w)
                .sum()),
            MeasureOracle::Product { factors } => {
                if self.is_atomic() {
                    let rules: Vec<Rule> = factors.iter().map(|o| o.rule(0, 0.0)).collect();
                    return Ok(tensor_sum(&rules, &f).0);
                }
                let continuous = factors.iter().filter(|o| !o.is_atomic()).count();
                let fixed_points: usize = factors
                    .iter()
                    .filter_map(|o| match o {
                        Oracle1d::Atomic1d { points, .. } => Some(points.len()),
                        _ => None,
                    })
                    .product();
                let mut nodes = min_nodes.next_power_of_two();
                let rules_at = |nodes: usize| -> Vec<Rule> {
                    factors
                        .iter()
                        .zip(growth)
                        .map(|(o, &g)| o.rule(nodes, g))
                        .collect()
                };
                let (mut prev, _) = tensor_sum(&rules_at(nodes), &f);
                let mut change = f64::INFINITY;
                loop {
                    let next_nodes = nodes * 2;
                    let grid = next_nodes
                        .checked_pow(continuous as u32)
                        .and_then(|g| g.checked_mul(fixed_points));
                    if next_nodes > QUAD_MAX_NODES || grid.is_none_or(|g| g > QUAD_MAX_POINTS) {
                        return Err(Error::QuadratureNotConverged {
                            estimate: prev.re,
                            change,
                        });
                    }
                    let (cur, abs_int) = tensor_sum(&rules_at(next_nodes), &f);
                    change = (cur - prev).norm();
                    if change <= QUAD_REL_TOL * cur.norm().max(abs_int) {
                        return Ok(cur);
                    }
                    prev = cur;
                    nodes = next_nodes;
                }
            }
        }
    }
}

fn for_each_grid_point<G: FnMut(&[f64], f64)>(rules: &[Rule], mut g: G) {
    let n = rules.len();
    if rules.iter().any(|r| r.nodes.is_empty()) {
        return;
    }
    let mut idx = vec![0usize; n];
    let mut point = vec![0.0; n];
    loop {
        let mut w = 1.0;
        for k in 0..n {
            point[k] = rules[k].nodes[idx[k]];
            w *= rules[k].weights[idx[k]];
        }
        g(&point, w);
        let mut k = 0;
        loop {
            if k == n {
                return;
            }
            idx[k] += 1;
            if idx[k] < rules[k].nodes.len() {
                break;
            }
            idx[k] = 0;
            k += 1;
        }
    }
}

/// `(Σ w f, Σ w |f|)` over the tensor grid.
fn tensor_sum<F: Fn(&[f64]) -> Complex64>(rules: &[Rule], f: &F) -> (Complex64, f64) {
    let mut acc = Complex64::new(0.0, 0.0);
    let mut abs_acc = 0.0;
    for_each_grid_point(rules, |p, w| {
        if w == 0.0 {
            return;
        }
        let v = f(p);
        acc += v * w;
        abs_acc += v.norm() * w;
    });
    (acc, abs_acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::CPoly;
    use std::f64::consts::PI;

    fn two_atoms() -> MeasureOracle {
        MeasureOracle::atomic(vec![vec![1.0], vec![-1.0]], vec![0.5, 0.5]).unwrap()
    }

    fn dirac0() -> MeasureOracle {
        MeasureOracle::atomic(vec![vec![0.0]], vec![1.0]).unwrap()
    }

    fn uniform() -> MeasureOracle {
        MeasureOracle::product(vec![Oracle1d::Uniform { a: -1.0, b: 1.0 }]).unwrap()
    }

    fn over_p(num: CPoly, m: u32) -> LocalizedElement {
        LocalizedElement::new(num, vec![m]).unwrap()
    }

    #[test]
    fn gaussian_moments() {
        let g = Oracle1d::Gaussian { sigma: 1.0 };
        assert_eq!(g.moment(2).unwrap(), 1.0);
        assert_eq!(g.moment(4).unwrap(), 3.0);
        assert_eq!(g.moment(6).unwrap(), 15.0);
        assert_eq!(g.moment(5).unwrap(), 0.0);
    }

    #[test]
    fn uniform_moments() {
        let u = Oracle1d::Uniform { a: -1.0, b: 1.0 };
        for k in 0..12u32 {
            let want = if k % 2 == 1 { 0.0 } else { 1.0 / (k as f64 + 1.0) };
            assert!((u.moment(k).unwrap() - want).abs() < 1e-16, "k={k}");
        }
    }

    #[test]
    fn lognormal_log_moments_are_exact() {
        let l = Oracle1d::Lognormal { sigma: 1.0 };
        for k in 1..=60u32 {
            assert_eq!(l.log_abs_moment(2 * k).0, 2.0 * (k * k) as f64);
        }
        assert!(matches!(l.moment(60), Err(Error::MomentOverflow { .. })));
    }

    #[test]
    fn product_moments_factor() {
        let m = MeasureOracle::product(vec![
            Oracle1d::Gaussian { sigma: 2.0 },
            Oracle1d::Uniform { a: 0.0, b: 1.0 },
        ])
        .unwrap();
        let v = m.moment(&MultiIndex::new(vec![2, 3])).unwrap();
        assert!((v - 4.0 * 0.25).abs() < 1e-15);
    }

    #[test]
    fn integrate_examples() {
        let inv_p = over_p(CPoly::one(1), 1);
        assert_eq!(dirac0().integrate_localized(&inv_p).unwrap().re, 1.0);
        let x2 = CPoly::from_real_terms(1, [(vec![2], 1.0)]).unwrap();
        assert_eq!(two_atoms().integrate_localized(&over_p(x2, 1)).unwrap().re, 0.5);
        let v = uniform().integrate_localized(&inv_p).unwrap();
        assert!((v.re - PI / 4.0).abs() < 1e-12, "{v}");
    }

    #[test]
    fn lp_norm_examples() {
        let x = LocalizedElement::from_poly(CPoly::var(1, 0));
        assert!((two_atoms().lp_norm(&x, 4.0).unwrap() - 1.0).abs() < 1e-15);
        // 1/(x - i) = (x + i)/(1 + x^2)
        let inv = over_p(CPoly::var_shifted(1, 0, Complex64::new(0.0, 1.0)), 1);
        for s in [1.0, 2.5, 7.0] {
            assert!((two_atoms().lp_norm(&inv, s).unwrap() - 0.5f64.sqrt()).abs() < 1e-15);
        }
        let xmi = LocalizedElement::from_poly(CPoly::var_shifted(1, 0, Complex64::new(0.0, -1.0)));
        assert!((dirac0().lp_norm(&xmi, 3.0).unwrap() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn marginals() {
        let m = MeasureOracle::product(vec![
            Oracle1d::Gaussian { sigma: 1.0 },
            Oracle1d::Uniform { a: -1.0, b: 1.0 },
        ])
        .unwrap();
        assert_eq!(m.marginal(1).unwrap(), Oracle1d::Gaussian { sigma: 1.0 });
        let a = MeasureOracle::atomic(vec![vec![1.0, 2.0]], vec![1.0]).unwrap();
        assert_eq!(
            a.marginal(2).unwrap(),
            Oracle1d::Atomic1d {
                points: vec![2.0],
                weights: vec![1.0]
            }
        );
        assert!(a.marginal(3).is_err());
    }

    #[test]
    fn validation() {
        assert!(MeasureOracle::atomic(vec![vec![0.0]], vec![0.0]).is_err());
        assert!(MeasureOracle::atomic(vec![vec![0.0], vec![1.0, 2.0]], vec![1.0, 1.0]).is_err());
        assert!(MeasureOracle::product(vec![Oracle1d::Uniform { a: 1.0, b: 1.0 }]).is_err());
        assert!(MeasureOracle::from_json(r#"{"kind":"product","factors":[{"kind":"gaussian","sigma":-1}]}"#).is_err());
    }

    #[test]
    fn json_shapes() {
        let m = MeasureOracle::from_json(
            r#"{"kind":"product","factors":[{"kind":"gaussian","sigma":1.0},{"kind":"atomic1d","points":[1,-1],"weights":[0.5,0.5]}]}"#,
        )
        .unwrap();
        assert_eq!(m.dim(), 2);
        let a = MeasureOracle::from_json(r#"{"kind":"atomic","points":[[0.5,0]],"weights":[1]}"#).unwrap();
        assert!(a.is_atomic());
    }
}
