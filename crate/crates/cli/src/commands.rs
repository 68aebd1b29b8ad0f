use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use momentcert::certificate::{
    carleman_report, carleman_terms, certify, log_even_from_linear, CertifyOptions, Space,
};
use momentcert::suite::{run_all, DEFAULT_SEED};
use momentcert::support::{module_check, support_inclusion_experiment, GeneratorSet, SupportOutcome};
use momentcert::{MeasureOracle, MomentSequence, MultiIndex, Oracle1d};

use crate::output::{emit, to_csv, to_json, write_atomic, Format};

#[derive(Parser, Debug)]
#[command(name = "momentcert", version, about = "Numerical certificates for the multivariate moment problem")]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Write the moment file of an oracle measure.
    Moments(MomentsArgs),
    /// Density certificates along each axis.
    Certify(CertifyArgs),
    /// Carleman terms and partial sums along one axis.
    Carleman(CarlemanArgs),
    /// Localizing-matrix checks against a generator set.
    Support(SupportArgs),
    /// Seeded randomized identity and inequality suites.
    IdentitySuite(SuiteArgs),
}

#[derive(Args, Debug)]
struct OutputArgs {
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
}

#[derive(Args, Debug)]
#[group(required = true, multiple = false)]
struct Source {
    /// Oracle spec: a JSON file or inline JSON.
    #[arg(long)]
    oracle: Option<String>,
    /// Moment file.
    #[arg(long)]
    moments: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct MomentsArgs {
    #[arg(long)]
    oracle: String,
    /// Maximum total degree D.
    #[arg(long, visible_alias = "degree")]
    dmax: u32,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args, Debug)]
struct CertifyArgs {
    #[command(flatten)]
    source: Source,
    /// Moment degree generated from an oracle (default 4 (dmax + 1)).
    #[arg(long)]
    degree: Option<u32>,
    /// 1-based axes, comma separated (default: all).
    #[arg(long, value_delimiter = ',')]
    axes: Option<Vec<usize>>,
    #[arg(long)]
    dmax: u32,
    #[arg(long, default_value_t = momentcert::certificate::DEFAULT_TOL_CERT)]
    tol: f64,
    #[arg(long, value_enum, default_value = "full")]
    space: SpaceArg,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Clone, Copy, Debug, clap::ValueEnum)]
enum SpaceArg {
    AxisOnly,
    Full,
}

impl From<SpaceArg> for Space {
    fn from(s: SpaceArg) -> Space {
        match s {
            SpaceArg::AxisOnly => Space::AxisOnly,
            SpaceArg::Full => Space::Full,
        }
    }
}

#[derive(Args, Debug)]
struct CarlemanArgs {
    #[command(flatten)]
    source: Source,
    #[arg(long, default_value_t = 1)]
    axis: usize,
    /// Number of terms (default 100 for oracles, all available for moment files).
    #[arg(long)]
    terms: Option<usize>,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args, Debug)]
struct SupportArgs {
    #[command(flatten)]
    source: Source,
    /// Generator set: a JSON file or inline JSON.
    #[arg(long)]
    generators: String,
    #[arg(long, default_value_t = 3)]
    dmax: u32,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args, Debug)]
struct SuiteArgs {
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,
    #[command(flatten)]
    output: OutputArgs,
}

/// Configuration echoed into every report.
#[derive(Serialize, Default)]
struct RunConfig {
    command: &'static str,
    version: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    oracle: Option<MeasureOracle>,
    #[serde(skip_serializing_if = "Option::is_none")]
    moments: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    generators: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    degree: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    axes: Option<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    axis: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    dmax: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    terms: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    tol: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    space: Option<Space>,
    #[serde(skip_serializing_if = "Option::is_none")]
    seed: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    format: Option<Format>,
}

impl RunConfig {
    fn new(command: &'static str) -> Self {
        RunConfig {
            command,
            version: env!("CARGO_PKG_VERSION"),
            ..Default::default()
        }
    }
}

#[derive(Serialize)]
struct Envelope<'a, T: Serialize> {
    config: &'a RunConfig,
    report: &'a T,
}

pub fn run(cli: Cli) -> Result<u8> {
    match cli.command {
        Command::Moments(a) => cmd_moments(a),
        Command::Certify(a) => cmd_certify(a),
        Command::Carleman(a) => cmd_carleman(a),
        Command::Support(a) => cmd_support(a),
        Command::IdentitySuite(a) => cmd_suite(a),
    }
}

/// Inline JSON if the argument starts with `{` or `[`, otherwise a file path.
fn read_spec(arg: &str) -> Result<String> {
    let t = arg.trim_start();
    if t.starts_with('{') || t.starts_with('[') {
        return Ok(arg.to_string());
    }
    fs::read_to_string(arg).with_context(|| format!("cannot read {arg}"))
}

/// Accepts an n-dimensional oracle or a bare one-dimensional factor.
fn load_oracle(arg: &str) -> Result<MeasureOracle> {
    let text = read_spec(arg)?;
    match MeasureOracle::from_json(&text) {
        Ok(m) => Ok(m),
        Err(first) => match serde_json::from_str::<Oracle1d>(&text) {
            Ok(f) => {
                f.validate()?;
                Ok(f.to_measure())
            }
            Err(_) => Err(first.into()),
        },
    }
}

fn load_moments(path: &Path) -> Result<MomentSequence> {
    let text = fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
    MomentSequence::from_json(&text).with_context(|| format!("invalid moment file {}", path.display()))
}

#[derive(Serialize)]
struct LogMoment {
    alpha: Vec<u32>,
    /// `None` when the moment is zero.
    log_abs: Option<f64>,
    sign: f64,
}

#[derive(Serialize)]
struct LogMomentFile {
    n: usize,
    max_degree: u32,
    log_moments: Vec<LogMoment>,
}

#[derive(Serialize)]
struct MomentCsvRow {
    alpha: String,
    value: f64,
}

fn cmd_moments(a: MomentsArgs) -> Result<u8> {
    let oracle = load_oracle(&a.oracle)?;
    if oracle.is_heavy_tailed() {
        if let Some(out) = &a.output.out {
            let log_moments = MultiIndex::up_to_degree(oracle.dim(), a.dmax)
                .into_iter()
                .map(|alpha| {
                    let (log, sign) = oracle.log_abs_moment(&alpha)?;
                    Ok(LogMoment {
                        alpha: alpha.exponents().to_vec(),
                        log_abs: log.is_finite().then_some(log),
                        sign: if log.is_finite() { sign } else { 0.0 },
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            let side = LogMomentFile {
                n: oracle.dim(),
                max_degree: a.dmax,
                log_moments,
            };
            write_atomic(&out.with_extension("log.json"), to_json(&side)?.as_bytes())?;
        }
    }
    let l = oracle
        .moments(a.dmax)
        .context("linear moments unavailable; the log-moment sidecar holds the log-domain values")?;
    let json = l.to_json() + "\n";
    let rows: Vec<MomentCsvRow> = l
        .entries()
        .into_iter()
        .map(|(alpha, value)| MomentCsvRow {
            alpha: alpha
                .exponents()
                .iter()
                .map(|e| e.to_string())
                .collect::<Vec<_>>()
                .join(" "),
            value,
        })
        .collect();
    emit(a.output.out.as_deref(), a.output.format, &json, &to_csv(&rows)?)?;
    Ok(0)
}

fn check_tol(tol: f64) -> Result<()> {
    if !(tol > 0.0 && tol.is_finite()) {
        bail!("tolerance must be positive, got {tol}");
    }
    Ok(())
}

fn cmd_certify(a: CertifyArgs) -> Result<u8> {
    check_tol(a.tol)?;
    let mut config = RunConfig::new("certify");
    let l = match (&a.source.oracle, &a.source.moments) {
        (Some(spec), _) => {
            let oracle = load_oracle(spec)?;
            let degree = a.degree.unwrap_or(4 * (a.dmax + 1));
            config.degree = Some(degree);
            let l = oracle.moments(degree)?;
            config.oracle = Some(oracle);
            l
        }
        (None, Some(path)) => {
            config.moments = Some(path.display().to_string());
            load_moments(path)?
        }
        (None, None) => unreachable!("clap enforces one source"),
    };
    let axes = a.axes.clone().unwrap_or_else(|| (1..=l.dim()).collect());
    let opts = CertifyOptions {
        axes: axes.clone(),
        d_max: a.dmax,
        tol_cert: a.tol,
        space: a.space.into(),
    };
    config.axes = Some(axes);
    config.dmax = Some(a.dmax);
    config.tol = Some(a.tol);
    config.space = Some(opts.space);
    config.format = Some(a.output.format);
    let report = certify(&l, &opts)?;
    let json = to_json(&Envelope {
        config: &config,
        report: &report,
    })?;
    emit(a.output.out.as_deref(), a.output.format, &json, &to_csv(&report.csv_rows())?)?;
    Ok(if report.all_certified() { 0 } else { 2 })
}

#[derive(Serialize)]
struct CarlemanCsvRow {
    k: usize,
    term: f64,
    partial_sum: f64,
}

fn cmd_carleman(a: CarlemanArgs) -> Result<u8> {
    let mut config = RunConfig::new("carleman");
    config.axis = Some(a.axis);
    config.format = Some(a.output.format);
    let terms = match (&a.source.oracle, &a.source.moments) {
        (Some(spec), _) => {
            let oracle = load_oracle(spec)?;
            let count = a.terms.unwrap_or(100);
            let marginal = oracle.marginal(a.axis)?;
            config.oracle = Some(oracle);
            config.terms = Some(count);
            carleman_terms(&marginal.log_even_moments(count), count)?
        }
        (None, Some(path)) => {
            config.moments = Some(path.display().to_string());
            let l = load_moments(path)?;
            let even: Vec<f64> = l.axis_moments(a.axis)?.into_iter().skip(2).step_by(2).collect();
            let count = a.terms.unwrap_or(even.len());
            config.terms = Some(count);
            let logs = log_even_from_linear(&even)?;
            carleman_terms(&logs, count)?
        }
        (None, None) => unreachable!("clap enforces one source"),
    };
    let report = carleman_report(&terms)?;
    let rows: Vec<CarlemanCsvRow> = report
        .terms
        .iter()
        .zip(&report.partial_sums)
        .enumerate()
        .map(|(i, (t, s))| CarlemanCsvRow {
            k: i + 1,
            term: *t,
            partial_sum: *s,
        })
        .collect();
    let json = to_json(&Envelope {
        config: &config,
        report: &report,
    })?;
    emit(a.output.out.as_deref(), a.output.format, &json, &to_csv(&rows)?)?;
    Ok(0)
}

#[derive(Serialize)]
struct SupportCsvRow {
    d: u32,
    generator: String,
    mode: momentcert::support::Mode,
    min_eigenvalue: Option<f64>,
    tol_psd: f64,
    passed: bool,
    witness_h: Option<String>,
    witness_value: Option<f64>,
}

fn support_rows(checks: &[momentcert::support::ModuleCheck]) -> Vec<SupportCsvRow> {
    checks
        .iter()
        .flat_map(|c| {
            c.checks.iter().map(move |g| SupportCsvRow {
                d: c.d,
                generator: g.generator.clone(),
                mode: g.mode,
                min_eigenvalue: g.min_eigenvalue,
                tol_psd: g.tol_psd,
                passed: g.passed,
                witness_h: g.witness.as_ref().map(|w| w.h.clone()),
                witness_value: g.witness.as_ref().map(|w| w.value),
            })
        })
        .collect()
}

#[derive(Serialize)]
struct ModuleSweep {
    max_degree: u32,
    degrees: Vec<momentcert::support::ModuleCheck>,
    nonnegative: bool,
    detecting_degree: Option<u32>,
}

fn cmd_support(a: SupportArgs) -> Result<u8> {
    let mut config = RunConfig::new("support");
    config.dmax = Some(a.dmax);
    config.format = Some(a.output.format);
    let gen_text = read_spec(&a.generators)?;
    match (&a.source.oracle, &a.source.moments) {
        (Some(spec), _) => {
            let oracle = load_oracle(spec)?;
            let gens = GeneratorSet::from_json(&gen_text, oracle.dim())?;
            config.generators = Some(gens.to_json());
            if oracle.is_atomic() {
                let e = support_inclusion_experiment(&oracle, &gens, a.dmax)?;
                config.oracle = Some(oracle);
                let json = to_json(&Envelope {
                    config: &config,
                    report: &e,
                })?;
                emit(a.output.out.as_deref(), a.output.format, &json, &to_csv(&support_rows(&e.degrees))?)?;
                return match e.outcome {
                    SupportOutcome::Consistent | SupportOutcome::UndetectedAtDmax => Ok(0),
                    SupportOutcome::ViolationDetected | SupportOutcome::SpuriousFailure => Ok(2),
                    SupportOutcome::ContractViolated => {
                        bail!("module passes at every degree but an atom lies outside the set")
                    }
                };
            }
            let l = oracle.moments(gens.required_degree(a.dmax))?;
            config.oracle = Some(oracle);
            sweep(&l, &gens, a, &config)
        }
        (None, Some(path)) => {
            config.moments = Some(path.display().to_string());
            let l = load_moments(path)?;
            let gens = GeneratorSet::from_json(&gen_text, l.dim())?;
            config.generators = Some(gens.to_json());
            sweep(&l, &gens, a, &config)
        }
        (None, None) => unreachable!("clap enforces one source"),
    }
}

fn sweep(l: &MomentSequence, gens: &GeneratorSet, a: SupportArgs, config: &RunConfig) -> Result<u8> {
    let degrees = (0..=a.dmax)
        .map(|d| module_check(l, gens, d))
        .collect::<momentcert::Result<Vec<_>>>()?;
    let detecting_degree = degrees.iter().find(|c| !c.nonnegative).map(|c| c.d);
    let report = ModuleSweep {
        max_degree: l.max_degree(),
        nonnegative: detecting_degree.is_none(),
        detecting_degree,
        degrees,
    };
    let json = to_json(&Envelope {
        config,
        report: &report,
    })?;
    emit(a.output.out.as_deref(), a.output.format, &json, &to_csv(&support_rows(&report.degrees))?)?;
    Ok(if report.nonnegative { 0 } else { 2 })
}

fn cmd_suite(a: SuiteArgs) -> Result<u8> {
    let mut config = RunConfig::new("identity-suite");
    config.seed = Some(a.seed);
    config.format = Some(a.output.format);
    let report = run_all(a.seed)?;
    let json = to_json(&Envelope {
        config: &config,
        report: &report,
    })?;
    emit(a.output.out.as_deref(), a.output.format, &json, &to_csv(&report.suites)?)?;
    Ok(if report.passed { 0 } else { 2 })
}
