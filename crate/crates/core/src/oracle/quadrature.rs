//! Gauss–Legendre rules by Newton iteration on the Legendre recurrence and
//! Gauss–Hermite rules from the Jacobi matrix spectrum, cached per node count.

use std::collections::HashMap;
use std::f64::consts::PI;
use std::sync::{Arc, Mutex, OnceLock};

/// Nodes and weights of a one-dimensional rule.
#[derive(Clone, Debug)]
pub struct Rule {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

#[derive(Clone, Copy, Hash, PartialEq, Eq)]
enum Family {
    Legendre,
    Hermite,
}

fn cache() -> &'static Mutex<HashMap<(Family, usize), Arc<Rule>>> {
    static CACHE: OnceLock<Mutex<HashMap<(Family, usize), Arc<Rule>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

fn cached(family: Family, n: usize, build: fn(usize) -> Rule) -> Arc<Rule> {
    if let Some(r) = cache().lock().expect("rule cache").get(&(family, n)) {
        return r.clone();
    }
    let rule = Arc::new(build(n));
    cache()
        .lock()
        .expect("rule cache")
        .entry((family, n))
        .or_insert(rule)
        .clone()
}

/// `n`-point Gauss–Legendre rule on `[-1, 1]` (weights sum to 2).
pub fn gauss_legendre(n: usize) -> Arc<Rule> {
    cached(Family::Legendre, n, build_legendre)
}

/// `n`-point Gauss–Hermite rule for the weight `exp(-x^2)` (weights sum to `sqrt(pi)`).
pub fn gauss_hermite(n: usize) -> Arc<Rule> {
    cached(Family::Hermite, n, build_hermite)
}

fn build_legendre(n: usize) -> Rule {
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    let m = n.div_ceil(2);
    for i in 0..m {
        let mut z = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut pp = 0.0;
        for _ in 0..100 {
            let mut p1 = 1.0;
            let mut p2 = 0.0;
            for j in 0..n {
                let p3 = p2;
                p2 = p1;
                p1 = ((2 * j + 1) as f64 * z * p2 - j as f64 * p3) / (j + 1) as f64;
            }
            pp = n as f64 * (z * p1 - p2) / (z * z - 1.0);
            let z1 = z;
            z = z1 - p1 / pp;
            if (z - z1).abs() <= 1e-15 {
                break;
            }
        }
        nodes[i] = -z;
        nodes[n - 1 - i] = z;
        let w = 2.0 / ((1.0 - z * z) * pp * pp);
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    Rule { nodes, weights }
}

fn build_hermite(n: usize) -> Rule {
    // Nodes are eigenvalues of the Jacobi matrix (zero diagonal, off-diagonal
    // sqrt(k/2)); weights come from the Christoffel function of the
    // orthonormal recurrence, rescaled to stay finite at the outer nodes.
    let mut diag = vec![0.0; n];
    let mut off: Vec<f64> = (0..n).map(|k| (k as f64 / 2.0).sqrt()).collect();
    tridiagonal_eigenvalues(&mut diag, &mut off);
    diag.sort_by(f64::total_cmp);
    // Symmetrize exactly.
    for i in 0..n / 2 {
        let z = (diag[n - 1 - i] - diag[i]) / 2.0;
        diag[i] = -z;
        diag[n - 1 - i] = z;
    }
    if n % 2 == 1 {
        diag[n / 2] = 0.0;
    }
    let sqrt_pi = std::f64::consts::PI.sqrt();
    let weights = diag
        .iter()
        .map(|&x| {
            // h_0 = 1, h_{k+1} = (x sqrt(2) h_k - sqrt(k) h_{k-1}) / sqrt(k + 1)
            let mut prev = 0.0;
            let mut cur = 1.0;
            let mut sum = 1.0;
            let mut log_scale = 0.0;
            for k in 0..n.saturating_sub(1) {
                let kf = k as f64;
                let next = (x * std::f64::consts::SQRT_2 * cur - kf.sqrt() * prev) / (kf + 1.0).sqrt();
                prev = cur;
                cur = next;
                sum += cur * cur;
                if sum > 1e200 {
                    prev *= 1e-100;
                    cur *= 1e-100;
                    sum *= 1e-200;
                    log_scale += 200.0 * std::f64::consts::LN_10;
                }
            }
            sqrt_pi * (-(sum.ln() + log_scale)).exp()
        })
        .collect();
    Rule {
        nodes: diag,
        weights,
    }
}

/// Eigenvalues of a symmetric tridiagonal matrix by implicit QL with Wilkinson
/// shifts. `diag` is overwritten with the eigenvalues; `off[k]` couples rows
/// `k - 1` and `k` (`off[0]` unused).
fn tridiagonal_eigenvalues(diag: &mut [f64], off: &mut [f64]) {
    let n = diag.len();
    if n < 2 {
        return;
    }
    for i in 1..n {
        off[i - 1] = off[i];
    }
    off[n - 1] = 0.0;
    for l in 0..n {
        let mut iter = 0;
        loop {
            let mut m = l;
            while m < n - 1 {
                let dd = diag[m].abs() + diag[m + 1].abs();
                if off[m].abs() <= f64::EPSILON * dd {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            iter += 1;
            if iter > 60 {
                break;
            }
            let mut g = (diag[l + 1] - diag[l]) / (2.0 * off[l]);
            let mut r = g.hypot(1.0);
            g = diag[m] - diag[l] + off[l] / (g + r.copysign(g));
            let (mut s, mut c, mut p) = (1.0, 1.0, 0.0);
            let mut i = m;
            let mut underflow = false;
            while i > l {
                i -= 1;
                let f = s * off[i];
                let b = c * off[i];
                r = f.hypot(g);
                off[i + 1] = r;
                if r == 0.0 {
                    diag[i + 1] -= p;
                    off[m] = 0.0;
                    underflow = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = diag[i + 1] - p;
                r = (diag[i] - g) * s + 2.0 * c * b;
                p = s * r;
                diag[i + 1] = g + p;
                g = c * r - b;
            }
            if underflow {
                continue;
            }
            diag[l] -= p;
            off[l] = g;
            off[m] = 0.0;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn legendre_integrates_polynomials_exactly() {
        let r = gauss_legendre(10);
        let s: f64 = r.weights.iter().sum();
        assert!((s - 2.0).abs() < 1e-14);
        // integral of x^18 over [-1, 1] is 2/19
        let v: f64 = r.nodes.iter().zip(&r.weights).map(|(x, w)| w * x.powi(18)).sum();
        assert!((v - 2.0 / 19.0).abs() < 1e-14);
    }

    #[test]
    fn hermite_moments() {
        for n in [1usize, 2, 5, 20, 64, 257] {
            let r = gauss_hermite(n);
            let s: f64 = r.weights.iter().sum();
            assert!((s - PI.sqrt()).abs() < 1e-12, "n={n}: {s}");
        }
        // integral of x^4 exp(-x^2) = 3 sqrt(pi) / 4
        let r = gauss_hermite(8);
        let v: f64 = r.nodes.iter().zip(&r.weights).map(|(x, w)| w * x.powi(4)).sum();
        assert!((v - 0.75 * PI.sqrt()).abs() < 1e-13);
    }

    #[test]
    fn large_hermite_rule_is_finite_and_normalized() {
        let r = gauss_hermite(2048);
        assert!(r.nodes.iter().all(|x| x.is_finite()));
        let s: f64 = r.weights.iter().sum();
        assert!((s - PI.sqrt()).abs() < 1e-10, "{s}");
        let sorted = r.nodes.windows(2).all(|w| w[0] < w[1]);
        assert!(sorted);
    }
}
