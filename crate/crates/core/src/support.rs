//! Support localization: localizing-matrix checks against a finitely
//! generated quadratic module, membership in its nonnegativity set, and
//! experiments on atomic measures where the support is known.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::functional::{kernel_contains, localizing_matrix, moment_matrix, KernelCheck, MomentSequence};
use crate::oracle::MeasureOracle;
use crate::poly::{format_poly, parse_poly, CPoly, LocalizedElement};

/// Tolerance for pointwise generator evaluation.
pub const TOL_GEO: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    /// `g >= 0`
    Ineq,
    /// `g = 0`, i.e. both `g` and `-g` in the module.
    Eq,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Generator {
    pub poly: CPoly,
    pub mode: Mode,
}

#[derive(Serialize, Deserialize)]
struct GeneratorText {
    poly: String,
    mode: Mode,
}

/// Generators of a quadratic module in `R[x1..xn]`. The constant 1 and sums
/// of squares are implicit.
#[derive(Clone, Debug, PartialEq)]
pub struct GeneratorSet {
    n: usize,
    generators: Vec<Generator>,
}

impl GeneratorSet {
    pub fn new(n: usize) -> Self {
        GeneratorSet {
            n,
            generators: Vec::new(),
        }
    }

    pub fn push(&mut self, poly: CPoly, mode: Mode) -> Result<()> {
        if poly.dim() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                found: poly.dim(),
            });
        }
        if !poly.is_real() {
            return Err(Error::NonRealWeight);
        }
        self.generators.push(Generator { poly, mode });
        Ok(())
    }

    pub fn with(mut self, poly: CPoly, mode: Mode) -> Result<Self> {
        self.push(poly, mode)?;
        Ok(self)
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    /// Parses `[{"poly": "<text>", "mode": "ineq" | "eq"}, ...]`.
    pub fn from_json(text: &str, n: usize) -> Result<Self> {
        let raw: Vec<GeneratorText> = serde_json::from_str(text).map_err(|e| Error::Parse {
            pos: e.column(),
            msg: e.to_string(),
        })?;
        let mut set = GeneratorSet::new(n);
        for g in raw {
            set.push(parse_poly(&g.poly, n)?, g.mode)?;
        }
        Ok(set)
    }

    pub fn to_json(&self) -> String {
        let raw: Vec<GeneratorText> = self
            .generators
            .iter()
            .map(|g| GeneratorText {
                poly: format_poly(&g.poly),
                mode: g.mode,
            })
            .collect();
        serde_json::to_string(&raw).expect("serializable")
    }

    /// Largest degree budget any check at basis degree `d` needs.
    pub fn required_degree(&self, d: u32) -> u32 {
        self.generators
            .iter()
            .map(|g| match g.mode {
                Mode::Ineq => 2 * d + g.poly.degree(),
                Mode::Eq => (2 * g.poly.degree()).max(g.poly.degree() + 2 * d),
            })
            .fold(2 * d, u32::max)
    }
}

/// `true` iff the point lies in `{g >= 0 (ineq), g = 0 (eq)}` up to [`TOL_GEO`].
/// Boundary points are members.
pub fn membership(gens: &GeneratorSet, point: &[f64]) -> Result<bool> {
    for g in &gens.generators {
        let v = g.poly.eval(point)?.re;
        let ok = match g.mode {
            Mode::Ineq => v >= -TOL_GEO,
            Mode::Eq => v.abs() <= TOL_GEO,
        };
        if !ok {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Polynomial `h` built from an eigenvector with `L(g h^2) < 0`.
#[derive(Clone, Debug, Serialize)]
pub struct Witness {
    pub h: String,
    /// `L(g h^2)`
    pub value: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct GeneratorCheck {
    /// Poly text; `"1"` is the moment matrix.
    pub generator: String,
    pub mode: Mode,
    pub min_eigenvalue: Option<f64>,
    pub tol_psd: f64,
    pub kernel: Option<KernelCheck>,
    pub passed: bool,
    pub witness: Option<Witness>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ModuleCheck {
    pub d: u32,
    pub checks: Vec<GeneratorCheck>,
    /// Nonnegative on the truncation: every matrix PSD and every kernel check passed.
    pub nonnegative: bool,
}

impl ModuleCheck {
    /// Most negative eigenvalue over the inequality checks.
    pub fn min_eigenvalue(&self) -> f64 {
        self.checks
            .iter()
            .filter_map(|c| c.min_eigenvalue)
            .fold(f64::INFINITY, f64::min)
    }

    pub fn witnesses(&self) -> impl Iterator<Item = (&GeneratorCheck, &Witness)> {
        self.checks.iter().filter_map(|c| c.witness.as_ref().map(|w| (c, w)))
    }
}

fn psd_check(l: &MomentSequence, g: &CPoly, d: u32) -> Result<GeneratorCheck> {
    let gram = localizing_matrix(l, g, d)?;
    let (min_eig, vec) = gram.min_eigenpair();
    let tol = gram.tol_psd();
    let passed = min_eig >= -tol;
    let witness = if passed {
        None
    } else {
        let coeffs: Vec<_> = vec.iter().map(|z| z.re.into()).collect();
        let h = gram.combination(&coeffs);
        let value = l.apply(&(&(g * &h) * &h))?.re;
        Some(Witness {
            h: format_poly(&h),
            value,
        })
    };
    Ok(GeneratorCheck {
        generator: format_poly(g),
        mode: Mode::Ineq,
        min_eigenvalue: Some(min_eig),
        tol_psd: tol,
        kernel: None,
        passed,
        witness,
    })
}

/// Localizing matrices of `1` and every inequality generator at basis degree
/// `d`; kernel checks for equality generators with `h` up to degree `2d`.
pub fn module_check(l: &MomentSequence, gens: &GeneratorSet, d: u32) -> Result<ModuleCheck> {
    if gens.dim() != l.dim() {
        return Err(Error::DimensionMismatch {
            expected: l.dim(),
            found: gens.dim(),
        });
    }
    l.require_degree(gens.required_degree(d))?;
    let one = CPoly::one(l.dim());
    let mut checks = vec![psd_check(l, &one, d)?];
    let kernel_tol = moment_matrix(l, d)?.tol_psd();
    for g in &gens.generators {
        checks.push(match g.mode {
            Mode::Ineq => psd_check(l, &g.poly, d)?,
            Mode::Eq => {
                let k = kernel_contains(l, &g.poly, 2 * d, kernel_tol)?;
                GeneratorCheck {
                    generator: format_poly(&g.poly),
                    mode: Mode::Eq,
                    min_eigenvalue: None,
                    tol_psd: kernel_tol,
                    passed: k.contains,
                    kernel: Some(k),
                    witness: None,
                }
            }
        });
    }
    let nonnegative = checks.iter().all(|c| c.passed);
    Ok(ModuleCheck { d, checks, nonnegative })
}

#[derive(Clone, Debug, Serialize)]
pub struct AtomMembership {
    pub point: Vec<f64>,
    pub weight: f64,
    /// Generator values at the point, in generator order.
    pub values: Vec<f64>,
    pub member: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SupportOutcome {
    /// Every atom is a member and every degree passes.
    Consistent,
    /// An atom lies outside and some degree exposes it.
    ViolationDetected,
    /// An atom lies outside but no degree up to `d_max < r - 1` exposes it.
    UndetectedAtDmax,
    /// Every degree up to `d_max >= r - 1` passes yet an atom lies outside.
    ContractViolated,
    /// Every atom is a member yet some degree fails beyond tolerance.
    SpuriousFailure,
}

#[derive(Clone, Debug, Serialize)]
pub struct SupportExperiment {
    pub d_max: u32,
    pub max_degree: u32,
    pub degrees: Vec<ModuleCheck>,
    pub atoms: Vec<AtomMembership>,
    pub all_members: bool,
    pub module_passes: bool,
    /// Module passes at every degree up to `d_max` implies every atom is a member.
    pub contract_holds: bool,
    pub detecting_degree: Option<u32>,
    pub outcome: SupportOutcome,
    pub tol_geo: f64,
}

/// Checks the module on the moments of an atomic measure for `d = 0..=d_max`
/// and independently tests every atom for membership.
pub fn support_inclusion_experiment(
    m: &MeasureOracle,
    gens: &GeneratorSet,
    d_max: u32,
) -> Result<SupportExperiment> {
    let (points, weights) = m.atoms().ok_or(Error::NonAtomicOracle)?;
    let max_degree = gens.required_degree(d_max);
    let l = m.moments(max_degree)?;
    let degrees = (0..=d_max)
        .map(|d| module_check(&l, gens, d))
        .collect::<Result<Vec<_>>>()?;
    let atoms = points
        .into_iter()
        .zip(weights)
        .map(|(point, weight)| {
            let values = gens
                .generators
                .iter()
                .map(|g| g.poly.eval(&point).map(|z| z.re))
                .collect::<Result<Vec<_>>>()?;
            let member = membership(gens, &point)?;
            Ok(AtomMembership {
                point,
                weight,
                values,
                member,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let all_members = atoms.iter().all(|a| a.member);
    let module_passes = degrees.iter().all(|c| c.nonnegative);
    let detecting_degree = degrees.iter().find(|c| !c.nonnegative).map(|c| c.d);
    let outcome = match (all_members, module_passes) {
        (true, true) => SupportOutcome::Consistent,
        (true, false) => SupportOutcome::SpuriousFailure,
        // At d >= r - 1 a polynomial interpolates the indicator of any atom,
        // so an outside atom must show up; below that it may stay hidden.
        (false, true) if d_max as usize + 1 >= atoms.len() => SupportOutcome::ContractViolated,
        (false, true) => SupportOutcome::UndetectedAtDmax,
        (false, false) => SupportOutcome::ViolationDetected,
    };
    Ok(SupportExperiment {
        d_max,
        max_degree,
        degrees,
        atoms,
        all_members,
        module_passes,
        contract_holds: !module_passes || all_members,
        detecting_degree,
        outcome,
        tol_geo: TOL_GEO,
    })
}

/// `∫ g h conj(h) dmu` for a localized `h`.
pub fn localized_nonneg_check(m: &MeasureOracle, g: &CPoly, h: &LocalizedElement) -> Result<f64> {
    if !g.is_real() {
        return Err(Error::NonRealWeight);
    }
    let f = LocalizedElement::from_poly(g.clone()).mul(&h.mul(&h.conj())?)?;
    Ok(m.integrate_localized(&f)?.re)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::MultiIndex;

    fn disc(n: usize) -> CPoly {
        let mut g = CPoly::one(n);
        for j in 0..n {
            g = &g - &(&CPoly::var(n, j) * &CPoly::var(n, j));
        }
        g
    }

    #[test]
    fn membership_examples() {
        let g = GeneratorSet::new(2).with(disc(2), Mode::Ineq).unwrap();
        assert!(membership(&g, &[0.6, 0.6]).unwrap());
        let x1 = GeneratorSet::new(1).with(CPoly::var(1, 0), Mode::Ineq).unwrap();
        assert!(!membership(&x1, &[-1.0]).unwrap());
        let z = GeneratorSet::new(2).with(CPoly::var(2, 1), Mode::Eq).unwrap();
        assert!(membership(&z, &[1.0, 0.0]).unwrap());
        assert!(!membership(&z, &[1.0, 0.1]).unwrap());
    }

    #[test]
    fn disc_module_is_psd() {
        let m = MeasureOracle::atomic(vec![vec![0.5, 0.0], vec![-0.5, 0.0]], vec![0.5, 0.5]).unwrap();
        let g = GeneratorSet::new(2).with(disc(2), Mode::Ineq).unwrap();
        let l = m.moments(6).unwrap();
        let c = module_check(&l, &g, 2).unwrap();
        assert!(c.nonnegative);
        assert_eq!(c.checks.len(), 2);
    }

    #[test]
    fn half_line_module_fails_with_witness() {
        let m = MeasureOracle::atomic(vec![vec![1.0], vec![-1.0]], vec![0.5, 0.5]).unwrap();
        let g = GeneratorSet::new(1).with(CPoly::var(1, 0), Mode::Ineq).unwrap();
        let c = module_check(&m.moments(3).unwrap(), &g, 1).unwrap();
        assert!(!c.nonnegative);
        assert!((c.min_eigenvalue() + 1.0).abs() < 1e-15);
        let (_, w) = c.witnesses().next().unwrap();
        assert!((w.value + 1.0).abs() < 1e-12, "{}", w.value);
    }

    #[test]
    fn empty_set_is_moment_matrix_check() {
        let m = MeasureOracle::atomic(vec![vec![1.0], vec![-1.0]], vec![0.5, 0.5]).unwrap();
        let c = module_check(&m.moments(4).unwrap(), &GeneratorSet::new(1), 2).unwrap();
        assert!(c.nonnegative);
        assert_eq!(c.checks.len(), 1);
    }

    #[test]
    fn unequal_weights_detected_at_degree_one() {
        let m = MeasureOracle::atomic(vec![vec![1.0], vec![-1.0]], vec![0.9, 0.1]).unwrap();
        let g = GeneratorSet::new(1).with(CPoly::var(1, 0), Mode::Ineq).unwrap();
        let e = support_inclusion_experiment(&m, &g, 2).unwrap();
        assert_eq!(e.outcome, SupportOutcome::ViolationDetected);
        assert_eq!(e.detecting_degree, Some(1));
        assert!((e.degrees[1].min_eigenvalue() + 0.2).abs() < 1e-12);
        assert!(!e.atoms[1].member);
    }

    #[test]
    fn circle_with_equality_pair() {
        let pts: Vec<Vec<f64>> = (0..5)
            .map(|k| {
                let t = 2.0 * std::f64::consts::PI * k as f64 / 5.0 + 0.3;
                vec![t.cos(), t.sin()]
            })
            .collect();
        let m = MeasureOracle::atomic(pts, vec![0.2; 5]).unwrap();
        let g = GeneratorSet::new(2)
            .with(disc(2), Mode::Ineq)
            .unwrap()
            .with(-&disc(2), Mode::Ineq)
            .unwrap();
        let e = support_inclusion_experiment(&m, &g, 3).unwrap();
        assert_eq!(e.outcome, SupportOutcome::Consistent);
        let g = GeneratorSet::new(2).with(disc(2), Mode::Eq).unwrap();
        let e = support_inclusion_experiment(&m, &g, 3).unwrap();
        assert_eq!(e.outcome, SupportOutcome::Consistent);
    }

    #[test]
    fn boundary_atom_is_member() {
        let m = MeasureOracle::atomic(vec![vec![1.0, 0.0]], vec![1.0]).unwrap();
        let g = GeneratorSet::new(2).with(disc(2), Mode::Ineq).unwrap();
        let e = support_inclusion_experiment(&m, &g, 2).unwrap();
        assert_eq!(e.outcome, SupportOutcome::Consistent);
    }

    #[test]
    fn non_atomic_rejected() {
        let m = crate::oracle::Oracle1d::Gaussian { sigma: 1.0 }.to_measure();
        let g = GeneratorSet::new(1);
        assert!(matches!(
            support_inclusion_experiment(&m, &g, 1),
            Err(Error::NonAtomicOracle)
        ));
    }

    #[test]
    fn localized_claim_examples() {
        let dirac = MeasureOracle::atomic(vec![vec![0.0]], vec![1.0]).unwrap();
        let g = &CPoly::one(1) - &CPoly::monomial(MultiIndex::new(vec![2]), 1.0.into());
        let h = LocalizedElement::new(CPoly::one(1), vec![1]).unwrap();
        assert_eq!(localized_nonneg_check(&dirac, &g, &h).unwrap(), 1.0);
        let two = MeasureOracle::atomic(vec![vec![1.0], vec![-1.0]], vec![0.5, 0.5]).unwrap();
        let g = CPoly::monomial(MultiIndex::new(vec![2]), 1.0.into());
        let h = LocalizedElement::new(CPoly::var(1, 0), vec![1]).unwrap();
        assert!((localized_nonneg_check(&two, &g, &h).unwrap() - 0.25).abs() < 1e-15);
    }

    #[test]
    fn generator_json_round_trip() {
        let text = r#"[{"poly": "1 - x1^2 - x2^2", "mode": "ineq"}, {"poly": "x2", "mode": "eq"}]"#;
        let g = GeneratorSet::from_json(text, 2).unwrap();
        assert_eq!(g.len(), 2);
        assert_eq!(GeneratorSet::from_json(&g.to_json(), 2).unwrap(), g);
        assert!(GeneratorSet::from_json(r#"[{"poly": "1 - x3", "mode": "ineq"}]"#, 2).is_err());
    }
}
