//! Existence and determinacy certificates built from a truncated functional.

mod carleman;
mod density;
mod linear;
mod quartic;
mod report;

use serde::{Deserialize, Serialize};

use crate::poly::MultiIndex;

pub use carleman::{
    carleman_report, carleman_terms, log_even_from_linear, CarlemanReport, CarlemanTrend, MIN_TERMS,
    TREND_MARGIN,
};
pub use density::{distance_to_resolvent, holder_check, l4_density_residual, HolderCheck, L4Density};
pub use linear::{linear_residual, linear_residual_sweep, LinearResidual};
pub use quartic::{
    bound_norms, condition1_bound, condition1_eval, quartic_eval, quartic_minimize, BoundNorms,
    QuarticMinimum, IRLS_MAX_ITERATIONS, IRLS_REL_DECREASE,
};
pub use report::{
    certify, AxisReport, CertificateReport, CertifyOptions, CsvRow, DegreeRow, EvidenceLevel,
    Verdict, DEFAULT_TOL_CERT, LIMIT_NOTE,
};

/// Polynomial space searched for `q` and `p`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Space {
    /// Polynomials in `x_j` alone.
    AxisOnly,
    /// All of `C[x1..xn]` up to the degree.
    #[default]
    Full,
}

impl Space {
    /// Monomial basis of degree `<= d` (1-based axis).
    pub fn basis(self, n: usize, axis: usize, d: u32) -> Vec<MultiIndex> {
        match self {
            Space::AxisOnly => MultiIndex::axis_only(n, axis - 1, d),
            Space::Full => MultiIndex::up_to_degree(n, d),
        }
    }
}
