//! Fixed inputs shared by the benchmarks.

use momentcert::oracle::random::{random_atomic, random_poly, seeded};
use momentcert::{CPoly, MeasureOracle, MomentSequence, Oracle1d};

pub const SEED: u64 = 7;

pub fn uniform_moments(max_degree: u32) -> MomentSequence {
    Oracle1d::Uniform { a: -1.0, b: 1.0 }
        .moments(max_degree)
        .expect("uniform moments")
}

pub fn atomic_2d(atoms: usize, max_degree: u32) -> MomentSequence {
    random_atomic(&mut seeded(SEED), 2, atoms)
        .moments(max_degree)
        .expect("atomic moments")
}

pub fn gaussian_product(max_degree: u32) -> MomentSequence {
    let g = Oracle1d::Gaussian { sigma: 1.0 };
    MeasureOracle::product(vec![g.clone(), g])
        .and_then(|m| m.moments(max_degree))
        .expect("gaussian moments")
}

pub fn poly_pair(n: usize, degree: u32) -> (CPoly, CPoly) {
    let mut rng = seeded(SEED);
    (random_poly(&mut rng, n, degree), random_poly(&mut rng, n, degree))
}
