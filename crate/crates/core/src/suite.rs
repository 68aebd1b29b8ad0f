//! Seeded randomized suites for the structural identities and inequalities.

use rand::Rng;
use serde::Serialize;

use crate::certificate::{bound_norms, condition1_eval, holder_check};
use crate::error::Result;
use crate::oracle::random::{random_atomic, random_atomic_1d, random_int_poly, random_localized, random_poly, seeded};
use crate::oracle::MeasureOracle;
use crate::poly::{q_identity, CPoly};
use crate::support::localized_nonneg_check;

pub const DEFAULT_SEED: u64 = 20240611;
/// Absolute slack allowed on every inequality.
pub const SUITE_TOL: f64 = 1e-9;

#[derive(Clone, Debug, Serialize)]
pub struct SuiteResult {
    pub name: &'static str,
    pub cases: usize,
    pub checks: usize,
    pub failures: usize,
    /// Largest `lhs - rhs` seen (for the identity, the largest coefficient gap).
    pub worst: f64,
    pub tol: f64,
    pub passed: bool,
}

impl SuiteResult {
    fn new(name: &'static str, tol: f64) -> Self {
        SuiteResult {
            name,
            cases: 0,
            checks: 0,
            failures: 0,
            worst: f64::NEG_INFINITY,
            tol,
            passed: true,
        }
    }

    fn record(&mut self, gap: f64) {
        self.checks += 1;
        self.worst = self.worst.max(gap);
        if !(gap <= self.tol) {
            self.failures += 1;
            self.passed = false;
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub seed: u64,
    pub suites: Vec<SuiteResult>,
    pub passed: bool,
}

/// Exact coefficient equality of both sides of the
/// identity `1 - (1 + x_j^2) q conj(q) = Q + conj(Q) - Q conj(Q)` over
/// integer-coefficient `q`.
pub fn identity_suite(seed: u64, cases: usize) -> Result<SuiteResult> {
    let mut rng = seeded(seed);
    let mut out = SuiteResult::new("identity", 0.0);
    for _ in 0..cases {
        out.cases += 1;
        let n = rng.random_range(1..=3);
        let deg = rng.random_range(0..=4);
        let q = random_int_poly(&mut rng, n, deg, 3);
        for axis in 1..=n {
            let id = q_identity(axis, &q)?;
            let diff = &id.lhs - &id.rhs;
            out.record(diff.max_abs_coefficient());
        }
    }
    Ok(out)
}

/// `sqrt(condition1) <= bound` and `||Q||^2 <= ||Q conj(Q)|| ||1||` on random
/// atomic functionals.
pub fn bound_suite(seed: u64, cases: usize) -> Result<SuiteResult> {
    let mut rng = seeded(seed);
    let mut out = SuiteResult::new("bound", SUITE_TOL);
    for _ in 0..cases {
        out.cases += 1;
        let n = rng.random_range(1..=3);
        let r = rng.random_range(1..=6);
        let l = random_atomic(&mut rng, n, r).moments(12)?;
        let deg = rng.random_range(0..=2);
        let q = random_poly(&mut rng, n, deg);
        let axis = rng.random_range(1..=n);
        let c1 = condition1_eval(&l, axis, &q)?;
        let b = bound_norms(&l, axis, &q)?;
        out.record(c1.max(0.0).sqrt() - b.bound);
        out.record(b.q_norm_sq - b.qq_norm * b.one_norm);
    }
    Ok(out)
}

/// `|<f, g>|^2 <= <f, f> <g, g>` on random atomic functionals.
pub fn cauchy_schwarz_suite(seed: u64, cases: usize) -> Result<SuiteResult> {
    let mut rng = seeded(seed);
    let mut out = SuiteResult::new("cauchy-schwarz", SUITE_TOL);
    for _ in 0..cases {
        out.cases += 1;
        let n = rng.random_range(1..=3);
        let r = rng.random_range(1..=6);
        let l = random_atomic(&mut rng, n, r).moments(4)?;
        let deg = rng.random_range(0..=2);
        let f = random_poly(&mut rng, n, deg);
        let deg = rng.random_range(0..=2);
        let g = random_poly(&mut rng, n, deg);
        let fg = l.inner(&f, &g)?.norm_sqr();
        let ff = l.inner(&f, &f)?.re;
        let gg = l.inner(&g, &g)?.re;
        out.record(fg - ff * gg);
    }
    Ok(out)
}

/// Hölder step with `s = 6` on random one-dimensional atomic measures.
pub fn holder_suite(seed: u64, cases: usize) -> Result<SuiteResult> {
    let mut rng = seeded(seed);
    let mut out = SuiteResult::new("holder", SUITE_TOL);
    for _ in 0..cases {
        out.cases += 1;
        let r = rng.random_range(1..=6);
        let m = random_atomic_1d(&mut rng, r);
        let deg = rng.random_range(0..=2);
        let q = random_poly(&mut rng, 1, deg);
        let h = holder_check(&m, &q, 6.0)?;
        out.record(h.lhs - h.rhs);
    }
    Ok(out)
}

/// Atoms drawn in the unit ball by rejection from `[-1, 1]^n`.
fn atoms_in_ball<R: Rng>(rng: &mut R, n: usize, r: usize) -> Result<MeasureOracle> {
    let mut points = Vec::with_capacity(r);
    while points.len() < r {
        let p: Vec<f64> = (0..n).map(|_| rng.random_range(-1.0..1.0)).collect();
        if p.iter().map(|x| x * x).sum::<f64>() <= 1.0 {
            points.push(p);
        }
    }
    let raw: Vec<f64> = (0..r).map(|_| rng.random_range(0.1..1.0)).collect();
    let total: f64 = raw.iter().sum();
    MeasureOracle::atomic(points, raw.into_iter().map(|w| w / total).collect())
}

/// `∫ g h conj(h) dmu >= 0` for `g = 1 - |x|^2`, atoms in `{g >= 0}`, and
/// localized `h` with denominator exponents `<= 2`.
pub fn localized_suite(seed: u64, cases: usize) -> Result<SuiteResult> {
    let mut rng = seeded(seed);
    let mut out = SuiteResult::new("localized-claim", SUITE_TOL);
    for _ in 0..cases {
        out.cases += 1;
        let n = rng.random_range(1..=3);
        let r = rng.random_range(1..=6);
        let m = atoms_in_ball(&mut rng, n, r)?;
        let mut g = CPoly::one(n);
        for j in 0..n {
            g = &g - &(&CPoly::var(n, j) * &CPoly::var(n, j));
        }
        let deg = rng.random_range(0..=2);
        let h = random_localized(&mut rng, n, deg, 2);
        out.record(-localized_nonneg_check(&m, &g, &h)?);
    }
    Ok(out)
}

/// Every suite at its standard size; suite `k` draws from seed `seed + k`.
pub fn run_all(seed: u64) -> Result<SuiteReport> {
    let suites = vec![
        identity_suite(seed, 100)?,
        bound_suite(seed.wrapping_add(1), 200)?,
        cauchy_schwarz_suite(seed.wrapping_add(2), 200)?,
        holder_suite(seed.wrapping_add(3), 100)?,
        localized_suite(seed.wrapping_add(4), 100)?,
    ];
    let passed = suites.iter().all(|s| s.passed);
    Ok(SuiteReport { seed, suites, passed })
}
