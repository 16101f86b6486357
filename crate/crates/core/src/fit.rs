//! Synthetic power-law data and least-squares recovery of exponents.

use rand::Rng;
use rand_distr::{Distribution, Normal};
use serde::Serialize;

use crate::dims::Problem;
use crate::error::{Error, Result};
use crate::pi::{Monomial, PiSolution};
use crate::rational::to_f64;
use crate::rng::seeded;

/// Half-width of the log-uniform range for generated explanatory values.
pub const DATA_LOG_SPREAD: f64 = 2.0;

/// Residual RMS below which a fit is treated as exact.
const EXACT_FIT_RMS: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq)]
pub struct Observation {
    pub values: Vec<f64>,
    pub target: f64,
}

/// Positive observations of a problem's explanatory quantities and target.
#[derive(Debug, Clone, PartialEq)]
pub struct Dataset {
    quantities: Vec<String>,
    target: String,
    rows: Vec<Observation>,
}

impl Dataset {
    pub fn new(problem: &Problem, rows: Vec<Observation>) -> Result<Self> {
        let quantities: Vec<String> = problem.quantity_names().iter().map(|s| s.to_string()).collect();
        let target = problem.target().name.clone();
        for (r, obs) in rows.iter().enumerate() {
            if obs.values.len() != quantities.len() {
                return Err(Error::LengthMismatch {
                    expected: quantities.len(),
                    found: obs.values.len(),
                });
            }
            let cells = obs.values.iter().zip(&quantities).chain(std::iter::once((&obs.target, &target)));
            for (&v, column) in cells {
                if !(v.is_finite() && v > 0.0) {
                    return Err(Error::NonPositiveValue {
                        row: r + 1,
                        column: column.clone(),
                        value: v,
                    });
                }
            }
        }
        Ok(Self {
            quantities,
            target,
            rows,
        })
    }

    pub fn rows(&self) -> &[Observation] {
        &self.rows
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    /// Header is the explanatory names in problem order, then the target.
    pub fn to_csv(&self) -> Result<String> {
        let mut writer = csv::Writer::from_writer(Vec::new());
        let csv_err = |e: csv::Error| Error::Csv(e.to_string());
        writer
            .write_record(self.quantities.iter().chain(std::iter::once(&self.target)))
            .map_err(csv_err)?;
        for obs in &self.rows {
            let record = obs.values.iter().chain(std::iter::once(&obs.target)).map(|v| format!("{v:e}"));
            writer.write_record(record).map_err(csv_err)?;
        }
        let bytes = writer.into_inner().map_err(|e| Error::Csv(e.to_string()))?;
        String::from_utf8(bytes).map_err(|e| Error::Csv(e.to_string()))
    }

    /// Reads CSV produced by [`Dataset::to_csv`]. Rows are numbered from 1
    /// (the first data row) in error messages.
    pub fn from_csv(problem: &Problem, text: &str) -> Result<Self> {
        let mut reader = csv::ReaderBuilder::new().trim(csv::Trim::All).from_reader(text.as_bytes());
        let header: Vec<String> = reader
            .headers()
            .map_err(|e| Error::Csv(e.to_string()))?
            .iter()
            .map(str::to_string)
            .collect();
        let mut expected: Vec<String> = problem.quantity_names().iter().map(|s| s.to_string()).collect();
        expected.push(problem.target().name.clone());
        if header != expected {
            return Err(Error::Csv(format!(
                "header must be `{}`, found `{}`",
                expected.join(","),
                header.join(",")
            )));
        }
        let mut rows = Vec::new();
        for (r, record) in reader.records().enumerate() {
            let record = record.map_err(|e| Error::Csv(format!("row {}: {e}", r + 1)))?;
            let mut cells = Vec::with_capacity(expected.len());
            for (c, cell) in record.iter().enumerate() {
                let v: f64 = cell.parse().map_err(|_| {
                    Error::Csv(format!("row {}, column `{}`: `{cell}` is not a number", r + 1, expected[c]))
                })?;
                cells.push(v);
            }
            let target = cells.pop().expect("header has at least two columns");
            rows.push(Observation { values: cells, target });
        }
        Dataset::new(problem, rows)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FitResult {
    /// Fitted Pi-group exponent; `None` for constant-only fits.
    pub p_hat: Option<f64>,
    pub log_const_hat: f64,
    pub r_squared: f64,
    pub rows: usize,
}

fn exponents_f64(values: &[crate::rational::Rational]) -> Vec<f64> {
    values.iter().map(to_f64).collect()
}

fn log_dot(exponents: &[f64], values: &[f64]) -> f64 {
    exponents.iter().zip(values).filter(|(e, _)| **e != 0.0).map(|(e, v)| e * v.ln()).sum()
}

/// Synthesizes `target = const · ∏ W_i^{y_i} · π^p · exp(ε)` with
/// explanatory values log-uniform on `[e^-2, e^2]` and
/// `ε ~ Normal(0, noise_sigma²)`. For `k = 0` the exponent is ignored.
pub fn generate_power_law_data(
    sol: &PiSolution,
    p_true: f64,
    const_true: f64,
    n: usize,
    noise_sigma: f64,
    seed: u64,
) -> Result<Dataset> {
    if sol.k() > 1 {
        return Err(Error::BadDegreesOfFreedom(sol.k()));
    }
    if !(const_true.is_finite() && const_true > 0.0) {
        return Err(Error::InvalidArgument(format!("constant must be positive, got {const_true}")));
    }
    if !(noise_sigma.is_finite() && noise_sigma >= 0.0) {
        return Err(Error::InvalidArgument(format!("noise sigma must be non-negative, got {noise_sigma}")));
    }
    let problem = sol.problem();
    let y = exponents_f64(sol.y());
    let x = sol.kernel().first().map(|x| exponents_f64(x));
    let noise = Normal::new(0.0, noise_sigma).map_err(|e| Error::InvalidArgument(e.to_string()))?;
    let mut rng = seeded(seed);

    let mut rows = Vec::with_capacity(n);
    for _ in 0..n {
        let values: Vec<f64> = (0..problem.n())
            .map(|_| rng.gen_range(-DATA_LOG_SPREAD..=DATA_LOG_SPREAD).exp())
            .collect();
        let eps = if noise_sigma > 0.0 { noise.sample(&mut rng) } else { 0.0 };
        let group = x.as_ref().map_or(0.0, |x| p_true * log_dot(x, &values));
        let log_target = const_true.ln() + log_dot(&y, &values) + group + eps;
        rows.push(Observation {
            values,
            target: log_target.exp(),
        });
    }
    Dataset::new(problem, rows)
}

fn r_squared(ssr: f64, sst: f64, rows: usize) -> f64 {
    if ssr <= rows as f64 * EXACT_FIT_RMS * EXACT_FIT_RMS {
        1.0
    } else if sst <= 0.0 {
        0.0
    } else {
        (1.0 - ssr / sst).clamp(0.0, 1.0)
    }
}

fn check_columns(data: &Dataset, n: usize) -> Result<()> {
    if data.quantities.len() != n {
        return Err(Error::LengthMismatch {
            expected: n,
            found: data.quantities.len(),
        });
    }
    Ok(())
}

/// Ordinary least squares of `ln U - Σ y_i ln W_i` on `ln π`.
pub fn fit_power_law(data: &Dataset, sol: &PiSolution) -> Result<FitResult> {
    if sol.k() != 1 {
        return Err(Error::BadDegreesOfFreedom(sol.k()));
    }
    check_columns(data, sol.problem().n())?;
    if data.len() < 3 {
        return Err(Error::InvalidArgument(format!(
            "power-law fit needs at least 3 rows, got {}",
            data.len()
        )));
    }
    let y = exponents_f64(sol.y());
    let x = exponents_f64(&sol.kernel()[0]);
    let (zs, ts): (Vec<f64>, Vec<f64>) = data
        .rows
        .iter()
        .map(|o| (log_dot(&x, &o.values), o.target.ln() - log_dot(&y, &o.values)))
        .unzip();

    let count = zs.len() as f64;
    let z_mean = zs.iter().sum::<f64>() / count;
    let t_mean = ts.iter().sum::<f64>() / count;
    let sxx: f64 = zs.iter().map(|z| (z - z_mean).powi(2)).sum();
    let sxy: f64 = zs.iter().zip(&ts).map(|(z, t)| (z - z_mean) * (t - t_mean)).sum();
    let (lo, hi) = zs.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &z| (lo.min(z), hi.max(z)));
    if hi - lo <= 1e-12 * hi.abs().max(1.0) || sxx <= 0.0 {
        return Err(Error::DegenerateDesign);
    }

    let slope = sxy / sxx;
    let intercept = t_mean - slope * z_mean;
    let ssr: f64 = zs.iter().zip(&ts).map(|(z, t)| (t - intercept - slope * z).powi(2)).sum();
    let sst: f64 = ts.iter().map(|t| (t - t_mean).powi(2)).sum();
    Ok(FitResult {
        p_hat: Some(slope),
        log_const_hat: intercept,
        r_squared: r_squared(ssr, sst, zs.len()),
        rows: zs.len(),
    })
}

/// Estimates the constant of `U = const · ∏ W_i^{e_i}` as the mean log
/// residual. `r_squared` compares the residual variance with the variance
/// of `ln U`.
pub fn fit_constant(data: &Dataset, mono: &Monomial) -> Result<FitResult> {
    check_columns(data, mono.exponents.len())?;
    if data.is_empty() {
        return Err(Error::InvalidArgument("constant fit needs at least one row".into()));
    }
    let e = exponents_f64(&mono.exponents);
    let residuals: Vec<f64> = data.rows.iter().map(|o| o.target.ln() - log_dot(&e, &o.values)).collect();
    let logs: Vec<f64> = data.rows.iter().map(|o| o.target.ln()).collect();
    let count = residuals.len() as f64;
    let mean = residuals.iter().sum::<f64>() / count;
    let log_mean = logs.iter().sum::<f64>() / count;
    let ssr: f64 = residuals.iter().map(|r| (r - mean).powi(2)).sum();
    let sst: f64 = logs.iter().map(|l| (l - log_mean).powi(2)).sum();
    Ok(FitResult {
        p_hat: None,
        log_const_hat: mean,
        r_squared: r_squared(ssr, sst, residuals.len()),
        rows: residuals.len(),
    })
}
