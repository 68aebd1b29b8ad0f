//! Carleman series `sum_k m_{2k}^{-1/(2k)}` along one axis, computed in the log
//! domain, with a heuristic trend classification of the tail.

use serde::Serialize;

use crate::error::{Error, Result};

/// Fewest terms the trend classifier accepts.
pub const MIN_TERMS: usize = 10;
/// Margin around exponent 1 separating the two trends.
pub const TREND_MARGIN: f64 = 0.05;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CarlemanTrend {
    DivergentTrend,
    ConvergentTrend,
    Inconclusive,
}

#[derive(Clone, Debug, Serialize)]
pub struct CarlemanReport {
    pub terms: Vec<f64>,
    pub partial_sums: Vec<f64>,
    /// Fitted `p` in `t_k ~ C k^{-p}` over the last half of the terms.
    pub power_exponent: f64,
    /// Slope of `log t_k` against `k` over the same window.
    pub exponential_slope: f64,
    pub exponential_decay: bool,
    pub classification: CarlemanTrend,
    /// Always true: finitely many terms cannot decide divergence.
    pub heuristic: bool,
}

/// Converts linear even moments `m_{2k}`, `k = 1..`, to logs.
pub fn log_even_from_linear(even_moments: &[f64]) -> Result<Vec<f64>> {
    even_moments
        .iter()
        .enumerate()
        .map(|(k, &m)| {
            if m > 0.0 {
                Ok(m.ln())
            } else {
                Err(Error::NonPositiveEvenMoment { k: k + 1 })
            }
        })
        .collect()
}

/// `t_k = exp(-log m_{2k} / (2k))` for `k = 1..=count`, where
/// `log_even[k - 1] = log m_{2k}`.
pub fn carleman_terms(log_even: &[f64], count: usize) -> Result<Vec<f64>> {
    if log_even.len() < count {
        return Err(Error::MissingMoment {
            k: log_even.len() + 1,
        });
    }
    log_even[..count]
        .iter()
        .enumerate()
        .map(|(idx, &lm)| {
            let k = idx + 1;
            if lm.is_nan() || lm == f64::NEG_INFINITY {
                return Err(Error::NonPositiveEvenMoment { k });
            }
            Ok((-lm / (2.0 * k as f64)).exp())
        })
        .collect()
}

/// Least-squares slope and residual sum of squares of `y` against `x`.
fn fit_line(x: &[f64], y: &[f64]) -> (f64, f64) {
    let n = x.len() as f64;
    let mx = x.iter().sum::<f64>() / n;
    let my = y.iter().sum::<f64>() / n;
    let sxx: f64 = x.iter().map(|v| (v - mx).powi(2)).sum();
    let sxy: f64 = x.iter().zip(y).map(|(a, b)| (a - mx) * (b - my)).sum();
    let slope = if sxx > 0.0 { sxy / sxx } else { 0.0 };
    let rss = x
        .iter()
        .zip(y)
        .map(|(a, b)| (b - my - slope * (a - mx)).powi(2))
        .sum();
    (slope, rss)
}

pub fn carleman_report(terms: &[f64]) -> Result<CarlemanReport> {
    if terms.len() < MIN_TERMS {
        return Err(Error::TooFewTerms {
            needed: MIN_TERMS,
            got: terms.len(),
        });
    }
    let partial_sums: Vec<f64> = terms
        .iter()
        .scan(0.0, |acc, t| {
            *acc += t;
            Some(*acc)
        })
        .collect();

    let start = terms.len() / 2;
    let ks: Vec<f64> = (start + 1..=terms.len()).map(|k| k as f64).collect();
    let log_ks: Vec<f64> = ks.iter().map(|k| k.ln()).collect();
    let log_ts: Vec<f64> = terms[start..].iter().map(|t| t.ln()).collect();
    let (power_slope, power_rss) = fit_line(&log_ks, &log_ts);
    let (exp_slope, exp_rss) = fit_line(&ks, &log_ts);
    let power_exponent = -power_slope;
    let exponential_decay = exp_slope < -1e-3 && exp_rss <= power_rss;

    let classification = if exponential_decay || power_exponent >= 1.0 + TREND_MARGIN {
        CarlemanTrend::ConvergentTrend
    } else if power_exponent <= 1.0 - TREND_MARGIN {
        CarlemanTrend::DivergentTrend
    } else {
        CarlemanTrend::Inconclusive
    };
    Ok(CarlemanReport {
        terms: terms.to_vec(),
        partial_sums,
        power_exponent,
        exponential_slope: exp_slope,
        exponential_decay,
        classification,
        heuristic: true,
    })
}
