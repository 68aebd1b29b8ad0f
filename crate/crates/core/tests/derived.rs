//! Quantities checked against oracles built here, independently of the
//! library's solvers and quadrature, plus frozen run-generated values.

use nalgebra::{DMatrix, DVector, SymmetricEigen};
use num_complex::Complex64;

use momentcert::certificate::{
    certify, condition1_bound, condition1_eval, l4_density_residual, linear_residual, quartic_eval,
    quartic_minimize, CertifyOptions, Space, Verdict,
};
use momentcert::{MeasureOracle, MultiIndex, Oracle1d};

/// Gauss–Legendre on [-1, 1] by Golub–Welsch.
fn legendre_rule(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut j = DMatrix::zeros(n, n);
    for k in 1..n {
        let b = k as f64 / ((4 * k * k - 1) as f64).sqrt();
        j[(k, k - 1)] = b;
        j[(k - 1, k)] = b;
    }
    let e = SymmetricEigen::new(j);
    let mut pairs: Vec<(f64, f64)> = (0..n)
        .map(|i| (e.eigenvalues[i], 2.0 * e.eigenvectors[(0, i)].powi(2)))
        .collect();
    pairs.sort_by(|a, b| a.0.total_cmp(&b.0));
    pairs.into_iter().unzip()
}

/// Legendre polynomials `P_0..P_d` at `x`.
fn legendre_values(d: usize, x: f64) -> Vec<f64> {
    let mut p = vec![1.0, x];
    for k in 1..d {
        let kf = k as f64;
        p.push(((2.0 * kf + 1.0) * x * p[k] - kf * p[k - 1]) / (kf + 1.0));
    }
    p.truncate(d + 1);
    p
}

/// `min_c sum_k w_k |t_k - sum_p c_p a_p(x_k)|^2` in a real embedding.
fn complex_lstsq(a: &[Vec<Complex64>], t: &[Complex64], w: &[f64]) -> (f64, Vec<Complex64>) {
    let (m, cols) = (a.len(), a[0].len());
    let mut big = DMatrix::zeros(2 * m, 2 * cols);
    let mut rhs = DVector::zeros(2 * m);
    for k in 0..m {
        let s = w[k].sqrt();
        for p in 0..cols {
            let z = a[k][p] * s;
            big[(k, p)] = z.re;
            big[(k, p + cols)] = -z.im;
            big[(k + m, p)] = z.im;
            big[(k + m, p + cols)] = z.re;
        }
        rhs[k] = s * t[k].re;
        rhs[k + m] = s * t[k].im;
    }
    let sol = big.clone().svd(true, true).solve(&rhs, 1e-14).unwrap();
    let resid = (&big * &sol - &rhs).norm_squared();
    let c = (0..cols).map(|p| Complex64::new(sol[p], sol[p + cols])).collect();
    (resid, c)
}

/// `min_p (1/2) ∫_{-1}^{1} |1 - (x - i) p(x)|^2 dx` over `deg p <= d`.
fn uniform_linear_oracle(d: usize) -> f64 {
    let (xs, ws) = legendre_rule(200);
    let a: Vec<Vec<Complex64>> = xs
        .iter()
        .map(|&x| {
            legendre_values(d, x)
                .into_iter()
                .map(|p| Complex64::new(x, -1.0) * p)
                .collect()
        })
        .collect();
    let t = vec![Complex64::new(1.0, 0.0); xs.len()];
    let w: Vec<f64> = ws.iter().map(|w| w / 2.0).collect();
    complex_lstsq(&a, &t, &w).0
}

/// `min_q ||q - 1/(x - i)||_2` under the uniform probability measure.
fn uniform_l2_distance(d: usize) -> f64 {
    let (xs, ws) = legendre_rule(200);
    let a: Vec<Vec<Complex64>> = xs
        .iter()
        .map(|&x| legendre_values(d, x).into_iter().map(|p| p.into()).collect())
        .collect();
    let t: Vec<Complex64> = xs.iter().map(|&x| 1.0 / Complex64::new(x, -1.0)).collect();
    let w: Vec<f64> = ws.iter().map(|w| w / 2.0).collect();
    complex_lstsq(&a, &t, &w).0.sqrt()
}

fn uniform() -> Oracle1d {
    Oracle1d::Uniform { a: -1.0, b: 1.0 }
}

#[test]
fn oracle_rule_is_sound() {
    let (xs, ws) = legendre_rule(30);
    let v: f64 = xs.iter().zip(&ws).map(|(x, w)| w / (1.0 + x * x)).sum();
    assert!((v - std::f64::consts::FRAC_PI_2).abs() < 1e-13);
}

#[test]
fn uniform_linear_residual_matches_least_squares_oracle() {
    let l = uniform().moments(40).unwrap();
    assert!((uniform_linear_oracle(0) - 0.25).abs() < 1e-14);
    assert!((uniform_linear_oracle(1) - 1.0 / 24.0).abs() < 1e-14);
    for d in 0..=12u32 {
        let got = linear_residual(&l, 1, d, Space::AxisOnly).unwrap().value;
        let want = uniform_linear_oracle(d as usize);
        assert!(
            (got - want).abs() <= 1e-6 * want + 1e-14,
            "d={d}: library {got:e}, oracle {want:e}"
        );
    }
}

#[test]
fn gaussian_moments_match_quadrature() {
    let (xs, ws) = legendre_rule(400);
    let g = Oracle1d::Gaussian { sigma: 1.0 };
    for k in 0..=12u32 {
        let q: f64 = xs
            .iter()
            .zip(&ws)
            .map(|(t, w)| {
                let x = 14.0 * t;
                14.0 * w * x.powi(k as i32) * (-x * x / 2.0).exp()
            })
            .sum::<f64>()
            / (2.0 * std::f64::consts::PI).sqrt();
        let m = g.moment(k).unwrap();
        assert!((q - m).abs() <= 1e-11 * m.max(1.0), "k={k}: {q} vs {m}");
    }
    assert_eq!(g.moment(6).unwrap(), 15.0);
}

#[test]
fn l4_residual_sits_between_l2_distance_and_l2_start() {
    for d in 2..=10u32 {
        let r = l4_density_residual(&uniform(), d).unwrap();
        let l2 = uniform_l2_distance(d as usize);
        assert!(l2 <= r.value * (1.0 + 1e-9), "d={d}: L2 {l2:e} > L4 {:e}", r.value);
        assert!(r.value <= r.initial_value, "d={d}");
    }
}

#[test]
fn frozen_uniform_l4_values() {
    let frozen = [
        0.0800689695301734,
        0.03341981744244065,
        0.013905042606654261,
        0.005776859480805842,
        0.0023979412619966724,
        0.0009948406495268562,
        0.0004125857660201545,
        0.0001710673636269112,
        7.091560169279006e-5,
    ];
    let mut prev = f64::INFINITY;
    for (d, want) in (2..=10u32).zip(frozen) {
        let v = l4_density_residual(&uniform(), d).unwrap().value;
        assert!((v - want).abs() <= 1e-6 * want, "d={d}: {v:e} vs {want:e}");
        assert!(v < prev, "not strictly decreasing at d={d}");
        prev = v;
    }
}

#[test]
fn frozen_uniform_quartic_degree_eight() {
    let l = uniform().moments(40).unwrap();
    let m = quartic_minimize(&l, 1, 8, Space::AxisOnly).unwrap();
    assert!(m.value <= m.initial_value);
    // Values near 1e-13 carry cancellation noise; the snapshot is loose.
    assert!((m.value - 5.466e-14).abs() <= 0.05 * 5.466e-14, "{:e}", m.value);
    assert!((m.initial_value - 7.413e-14).abs() <= 0.05 * 7.413e-14, "{:e}", m.initial_value);
    assert_eq!(quartic_eval(&l, 1, &m.q).unwrap(), m.value);
}

#[test]
fn frozen_uniform_square_certificate() {
    let u = uniform();
    let l = MeasureOracle::product(vec![u.clone(), u]).unwrap().moments(40).unwrap();
    let r = certify(&l, &CertifyOptions::all_axes(2, 8)).unwrap();
    let frozen_linear = [
        0.25,
        0.041666666666666664,
        0.007352941176470588,
        0.0012718600953895,
        0.00021973192704861,
        3.78730495383e-5,
        6.5204350425e-6,
        1.12169695e-6,
        1.928583e-7,
    ];
    for axis in &r.axes {
        let mut prev = f64::INFINITY;
        for (row, want) in axis.rows.iter().zip(frozen_linear) {
            assert!((row.linear_residual - want).abs() <= 1e-6 * want, "d={}", row.d);
            assert!(row.linear_residual <= prev);
            assert!(row.quartic_value <= row.quartic_initial);
            prev = row.linear_residual;
        }
        let last = axis.rows.last().unwrap();
        assert!((last.condition1_value - 1.8834e-7).abs() < 1e-3 * 1.8834e-7);
        assert_eq!(axis.verdict, Verdict::CertifiedToTolerance);
        assert_eq!(axis.best_degree, 8);
    }
}

#[test]
fn lognormal_log_moments_exact() {
    let l = Oracle1d::Lognormal { sigma: 1.0 };
    for k in 1..=100u32 {
        assert_eq!(l.log_abs_moment(2 * k).0, 2.0 * (k * k) as f64);
    }
    assert!(l.moment(60).is_err());
    let m = l.to_measure();
    assert!(m.log_abs_moment(&MultiIndex::new(vec![200])).unwrap().0.is_finite());
}

#[test]
fn condition1_at_degree_twelve_within_bound() {
    let l = uniform().moments(52).unwrap();
    let m = quartic_minimize(&l, 1, 12, Space::AxisOnly).unwrap();
    let c1 = condition1_eval(&l, 1, &m.q).unwrap();
    let b = condition1_bound(&l, 1, &m.q).unwrap();
    assert!(c1.max(0.0).sqrt() <= b + 1e-9);
    assert!(c1 < 1e-9, "{c1:e}");
}
