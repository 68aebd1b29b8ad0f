//! Seeded generators for property suites.

use num_complex::Complex64;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{MeasureOracle, Oracle1d};
use crate::poly::{CPoly, LocalizedElement, MultiIndex};

/// Platform-independent generator used by every randomized suite.
pub fn seeded(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn normalized_weights<R: Rng>(rng: &mut R, r: usize) -> Vec<f64> {
    let raw: Vec<f64> = (0..r).map(|_| rng.random_range(0.1..1.0)).collect();
    let total: f64 = raw.iter().sum();
    raw.into_iter().map(|w| w / total).collect()
}

/// `r` atoms drawn uniformly in `[-2, 2]^n`, weights normalized to mass 1.
pub fn random_atomic<R: Rng>(rng: &mut R, n: usize, r: usize) -> MeasureOracle {
    let points = (0..r)
        .map(|_| (0..n).map(|_| rng.random_range(-2.0..2.0)).collect())
        .collect();
    MeasureOracle::Atomic {
        points,
        weights: normalized_weights(rng, r),
    }
}

/// One-dimensional version of [`random_atomic`].
pub fn random_atomic_1d<R: Rng>(rng: &mut R, r: usize) -> Oracle1d {
    Oracle1d::Atomic1d {
        points: (0..r).map(|_| rng.random_range(-2.0..2.0)).collect(),
        weights: normalized_weights(rng, r),
    }
}

/// Polynomial with Gaussian-integer coefficients in `[-range, range]`, each
/// monomial of degree `<= degree` present with probability 1/2.
pub fn random_int_poly<R: Rng>(rng: &mut R, n: usize, degree: u32, range: i32) -> CPoly {
    let mut p = CPoly::zero(n);
    for alpha in MultiIndex::up_to_degree(n, degree) {
        if rng.random_bool(0.5) {
            let re = rng.random_range(-range..=range) as f64;
            let im = rng.random_range(-range..=range) as f64;
            p.add_term(alpha, Complex64::new(re, im));
        }
    }
    p
}

/// Dense polynomial with complex coefficients uniform in `[-1, 1]^2`.
pub fn random_poly<R: Rng>(rng: &mut R, n: usize, degree: u32) -> CPoly {
    let mut p = CPoly::zero(n);
    for alpha in MultiIndex::up_to_degree(n, degree) {
        let c = Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0));
        p.add_term(alpha, c);
    }
    p
}

/// Dense real polynomial with coefficients uniform in `[-1, 1]`.
pub fn random_real_poly<R: Rng>(rng: &mut R, n: usize, degree: u32) -> CPoly {
    let mut p = CPoly::zero(n);
    for alpha in MultiIndex::up_to_degree(n, degree) {
        p.add_term(alpha, Complex64::new(rng.random_range(-1.0..1.0), 0.0));
    }
    p
}

/// Random complex localized element with denominator exponents `<= max_den`.
pub fn random_localized<R: Rng>(rng: &mut R, n: usize, degree: u32, max_den: u32) -> LocalizedElement {
    let num = random_poly(rng, n, degree);
    let den = (0..n).map(|_| rng.random_range(0..=max_den)).collect();
    LocalizedElement::new(num, den).expect("dimensions agree")
}
