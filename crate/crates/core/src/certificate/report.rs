use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::carleman::{carleman_report, carleman_terms, log_even_from_linear, CarlemanReport, MIN_TERMS};
use super::linear::linear_residual_sweep;
use super::quartic::{
    bound_norms, condition1_eval, quartic_eval, quartic_minimize_from, IRLS_MAX_ITERATIONS,
    IRLS_REL_DECREASE,
};
use super::Space;
use crate::error::{Error, Result};
use crate::functional::{moment_matrix, MomentSequence};
use crate::linalg::PINV_CUTOFF;
use crate::poly::identities::axis_index;

pub const DEFAULT_TOL_CERT: f64 = 1e-6;

/// Caveat carried by every report.
pub const LIMIT_NOTE: &str = "certified to tolerance only: the residual limit over all degrees \
is not decidable from finitely many moments; the Carleman classification is heuristic";

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CertifyOptions {
    /// 1-based axes to examine.
    pub axes: Vec<usize>,
    pub d_max: u32,
    pub tol_cert: f64,
    pub space: Space,
}

impl CertifyOptions {
    pub fn all_axes(n: usize, d_max: u32) -> Self {
        CertifyOptions {
            axes: (1..=n).collect(),
            d_max,
            tol_cert: DEFAULT_TOL_CERT,
            space: Space::default(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    CertifiedToTolerance,
    Inconclusive,
}

/// Which conclusion the certified axes support.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum EvidenceLevel {
    None,
    /// Axes `1..n-1` certified: a representing measure exists.
    Existence,
    /// Every axis certified: the measure is also determinate.
    Determinacy,
}

#[derive(Clone, Debug, Serialize)]
pub struct DegreeRow {
    pub d: u32,
    pub linear_residual: f64,
    /// Quartic value at the linear minimizer.
    pub quartic_initial: f64,
    pub quartic_value: f64,
    pub quartic_iterations: usize,
    pub quartic_stalled: bool,
    pub condition1_value: f64,
    pub condition1_bound: f64,
    /// `min(condition1_value, condition1_bound^2)`.
    pub evidence: f64,
    pub q: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct AxisReport {
    pub axis: usize,
    pub rows: Vec<DegreeRow>,
    pub min_evidence: f64,
    pub best_degree: u32,
    pub verdict: Verdict,
    pub carleman: Option<CarlemanReport>,
    pub carleman_note: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Tolerances {
    pub tol_cert: f64,
    pub tol_psd: f64,
    pub pinv_cutoff: f64,
    pub irls_max_iterations: usize,
    pub irls_rel_decrease: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct CertificateReport {
    pub n: usize,
    pub max_degree: u32,
    pub d_max: u32,
    pub space: Space,
    pub axes_requested: Vec<usize>,
    pub tolerances: Tolerances,
    pub moment_matrix_min_eigenvalue: f64,
    pub axes: Vec<AxisReport>,
    /// `None` when no axis was requested.
    pub evidence: Option<EvidenceLevel>,
    /// Requested axes exclude `n`, so determinacy was never in question.
    pub existence_evidence_only: bool,
    pub note: &'static str,
}

/// One line per (axis, degree) for tabular output.
#[derive(Clone, Debug, Serialize)]
pub struct CsvRow {
    pub axis: usize,
    pub d: u32,
    pub linear_residual: f64,
    pub quartic_initial: f64,
    pub quartic_value: f64,
    pub condition1_value: f64,
    pub condition1_bound: f64,
    pub evidence: f64,
    pub verdict: Verdict,
}

impl CertificateReport {
    pub fn csv_rows(&self) -> Vec<CsvRow> {
        self.axes
            .iter()
            .flat_map(|ax| {
                ax.rows.iter().map(move |r| CsvRow {
                    axis: ax.axis,
                    d: r.d,
                    linear_residual: r.linear_residual,
                    quartic_initial: r.quartic_initial,
                    quartic_value: r.quartic_value,
                    condition1_value: r.condition1_value,
                    condition1_bound: r.condition1_bound,
                    evidence: r.evidence,
                    verdict: ax.verdict,
                })
            })
            .collect()
    }

    /// True iff at least one axis was requested and all were certified.
    pub fn all_certified(&self) -> bool {
        !self.axes.is_empty() && self.axes.iter().all(|a| a.verdict == Verdict::CertifiedToTolerance)
    }
}

/// Degree sweep of the density certificates along each requested axis.
pub fn certify(l: &MomentSequence, opts: &CertifyOptions) -> Result<CertificateReport> {
    let n = l.dim();
    if !(opts.tol_cert > 0.0) {
        return Err(Error::Invalid(format!("tol_cert must be positive, got {}", opts.tol_cert)));
    }
    let mut axes = opts.axes.clone();
    axes.sort_unstable();
    axes.dedup();
    for &a in &axes {
        axis_index(a, n)?;
    }
    let mm = moment_matrix(l, l.max_degree() / 2)?;
    let (min_eig, _) = mm.min_eigenpair();
    let tol_psd = mm.tol_psd();
    if min_eig < -tol_psd {
        return Err(Error::NotPsd {
            min_eigenvalue: min_eig,
            tol: tol_psd,
        });
    }
    if !axes.is_empty() {
        l.require_degree(4 * (opts.d_max + 1))?;
    }

    let reports = axes
        .par_iter()
        .map(|&axis| certify_axis(l, axis, opts))
        .collect::<Result<Vec<_>>>()?;

    let certified = |j: usize| {
        reports
            .iter()
            .any(|r| r.axis == j && r.verdict == Verdict::CertifiedToTolerance)
    };
    let evidence = if axes.is_empty() {
        None
    } else if (1..=n).all(certified) {
        Some(EvidenceLevel::Determinacy)
    } else if (1..n).all(certified) {
        Some(EvidenceLevel::Existence)
    } else {
        Some(EvidenceLevel::None)
    };
    Ok(CertificateReport {
        n,
        max_degree: l.max_degree(),
        d_max: opts.d_max,
        space: opts.space,
        existence_evidence_only: !axes.is_empty() && !axes.contains(&n),
        axes_requested: axes,
        tolerances: Tolerances {
            tol_cert: opts.tol_cert,
            tol_psd,
            pinv_cutoff: PINV_CUTOFF,
            irls_max_iterations: IRLS_MAX_ITERATIONS,
            irls_rel_decrease: IRLS_REL_DECREASE,
        },
        moment_matrix_min_eigenvalue: min_eig,
        axes: reports,
        evidence,
        note: LIMIT_NOTE,
    })
}

fn certify_axis(l: &MomentSequence, axis: usize, opts: &CertifyOptions) -> Result<AxisReport> {
    let n = l.dim();
    let linear = linear_residual_sweep(l, axis, opts.d_max, opts.space)?;
    let mut rows = Vec::with_capacity(linear.len());
    let mut prev: Option<(crate::poly::CPoly, f64)> = None;
    for (d, lin) in (0..=opts.d_max).zip(&linear) {
        let basis = opts.space.basis(n, axis, d);
        let quartic_initial = quartic_eval(l, axis, &lin.minimizer)?;
        let start = match &prev {
            Some((q, v)) if *v < quartic_initial => q.clone(),
            _ => lin.minimizer.clone(),
        };
        let qm = quartic_minimize_from(l, axis, &basis, start)?;
        let c1 = condition1_eval(l, axis, &qm.q)?;
        let bound = bound_norms(l, axis, &qm.q)?.bound;
        rows.push(DegreeRow {
            d,
            linear_residual: lin.value,
            quartic_initial,
            quartic_value: qm.value,
            quartic_iterations: qm.iterations,
            quartic_stalled: qm.stalled,
            condition1_value: c1,
            condition1_bound: bound,
            evidence: c1.max(0.0).min(bound * bound),
            q: crate::poly::format_poly(&qm.q),
        });
        prev = Some((qm.q, qm.value));
    }
    let (best_degree, min_evidence) = rows
        .iter()
        .map(|r| (r.d, r.evidence))
        .fold((0, f64::INFINITY), |acc, x| if x.1 < acc.1 { x } else { acc });
    let verdict = if min_evidence <= opts.tol_cert {
        Verdict::CertifiedToTolerance
    } else {
        Verdict::Inconclusive
    };

    let (carleman, carleman_note) = match axis_carleman(l, axis) {
        Ok(r) => (Some(r), None),
        Err(e) => (None, Some(e.to_string())),
    };
    Ok(AxisReport {
        axis,
        rows,
        min_evidence,
        best_degree,
        verdict,
        carleman,
        carleman_note,
    })
}

fn axis_carleman(l: &MomentSequence, axis: usize) -> Result<CarlemanReport> {
    let m = l.axis_moments(axis)?;
    let even: Vec<f64> = m.iter().skip(2).step_by(2).copied().collect();
    if even.len() < MIN_TERMS {
        return Err(Error::TooFewTerms {
            needed: MIN_TERMS,
            got: even.len(),
        });
    }
    let logs = log_even_from_linear(&even)?;
    carleman_report(&carleman_terms(&logs, logs.len())?)
}
