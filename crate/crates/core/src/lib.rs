//! Numerical certificates for the multivariate moment problem.
//!
//! Given a truncated moment functional `L` on `R[x1..xn]`, this crate
//! evaluates the density residuals `L(|1 - (1 + x_j^2) q conj(q)|^2)` that
//! witness existence and determinacy of a representing measure, the Carleman
//! series along each axis, the `L^4` distance of `1/(x_j - i)` to polynomials,
//! and localizing-matrix checks that locate the support of the measure inside
//! a semialgebraic set. Measures with closed-form moments serve as oracles.

pub mod certificate;
pub mod error;
pub mod functional;
pub mod linalg;
pub mod oracle;
pub mod poly;
pub mod suite;
pub mod support;

pub use error::{Error, Result};
pub use functional::{HermitianGram, MomentSequence};
pub use num_complex::Complex64;
pub use oracle::{MeasureOracle, Oracle1d};
pub use poly::{CPoly, LocalizedElement, MultiIndex};
