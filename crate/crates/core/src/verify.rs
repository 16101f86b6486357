//! Numerical checks of unit-rescaling invariance.
//!
//! All evaluation is in log space: a quantity with dimension exponents `b`
//! gains `Σ_j b_j · ln(s_j)` in log value when dimension `j` is rescaled by
//! `s_j`.

use rand::Rng;
use serde::Serialize;

use crate::dims::Problem;
use crate::error::{Error, Result};
use crate::pi::PiSolution;
use crate::rational::to_f64;
use crate::rng::seeded;

/// Half-width of the log-uniform sampling range used by invariance checks.
pub const LOG_SPREAD: f64 = 3.0;

fn check_scales(problem: &Problem, scales: &[f64]) -> Result<()> {
    if scales.len() != problem.m() {
        return Err(Error::LengthMismatch {
            expected: problem.m(),
            found: scales.len(),
        });
    }
    for (name, &s) in problem.system().names().iter().zip(scales) {
        if !(s.is_finite() && s > 0.0) {
            return Err(Error::NonPositiveScale {
                dimension: name.clone(),
                value: s,
            });
        }
    }
    Ok(())
}

fn factor(column: impl Iterator<Item = f64>, scales: &[f64]) -> f64 {
    column.zip(scales).map(|(b, s)| s.powf(b)).product()
}

/// Values of the explanatory quantities after rescaling each fundamental
/// dimension `j` by `scales[j]`.
pub fn rescale_values(problem: &Problem, values: &[f64], scales: &[f64]) -> Result<Vec<f64>> {
    if values.len() != problem.n() {
        return Err(Error::LengthMismatch {
            expected: problem.n(),
            found: values.len(),
        });
    }
    check_scales(problem, scales)?;
    problem
        .explanatory()
        .iter()
        .zip(values)
        .map(|(q, &v)| {
            if !(v.is_finite() && v > 0.0) {
                return Err(Error::NonPositiveValue {
                    row: 0,
                    column: q.name.clone(),
                    value: v,
                });
            }
            Ok(v * factor(q.dim.exponents().iter().map(to_f64), scales))
        })
        .collect()
}

/// Factor by which the target changes under the same rescaling, `∏ s_j^{a_j}`.
pub fn target_rescale_factor(problem: &Problem, scales: &[f64]) -> Result<f64> {
    check_scales(problem, scales)?;
    Ok(factor(problem.target_vector().iter().map(to_f64), scales))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct InvarianceReport {
    pub trials: usize,
    pub seed: u64,
    pub tolerance: f64,
    pub max_abs_log_error: f64,
    /// Worst discrepancy of the deflated target `U · ∏ W^{-y}`.
    pub max_target_log_error: f64,
    /// Worst discrepancy per Pi group, in kernel order.
    pub max_group_log_errors: Vec<f64>,
    pub passed: bool,
}

/// Draws `trials` random positive quantity values and random per-dimension
/// scales, both log-uniform on `[e^-3, e^3]`, and measures how much each Pi
/// group and the deflated target move under the rescaling.
pub fn check_invariance(sol: &PiSolution, trials: usize, seed: u64, tol: f64) -> Result<InvarianceReport> {
    if trials == 0 {
        return Err(Error::InvalidArgument("trials must be at least 1".into()));
    }
    if !(tol.is_finite() && tol > 0.0) {
        return Err(Error::InvalidArgument(format!("tolerance must be positive, got {tol}")));
    }
    let problem = sol.problem();
    let (m, n) = (problem.m(), problem.n());
    let b = problem.matrix();
    let b: Vec<Vec<f64>> = (0..m).map(|r| b.row(r).iter().map(to_f64).collect()).collect();
    let a: Vec<f64> = problem.target_vector().iter().map(to_f64).collect();
    let y: Vec<f64> = sol.y().iter().map(to_f64).collect();
    let kernel: Vec<Vec<f64>> = sol.kernel().iter().map(|x| x.iter().map(to_f64).collect()).collect();

    let dot = |u: &[f64], v: &[f64]| -> f64 { u.iter().zip(v).map(|(p, q)| p * q).sum() };

    let mut rng = seeded(seed);
    let mut max_target: f64 = 0.0;
    let mut max_groups = vec![0.0f64; kernel.len()];
    let mut log_w = vec![0.0; n];
    let mut log_w_scaled = vec![0.0; n];
    let mut log_s = vec![0.0; m];

    for _ in 0..trials {
        for w in log_w.iter_mut() {
            *w = rng.gen_range(-LOG_SPREAD..=LOG_SPREAD);
        }
        let log_u: f64 = rng.gen_range(-LOG_SPREAD..=LOG_SPREAD);
        for s in log_s.iter_mut() {
            *s = rng.gen_range(-LOG_SPREAD..=LOG_SPREAD);
        }

        for (i, w) in log_w_scaled.iter_mut().enumerate() {
            *w = log_w[i] + (0..m).map(|j| b[j][i] * log_s[j]).sum::<f64>();
        }
        let log_u_scaled = log_u + dot(&a, &log_s);

        let before = log_u - dot(&y, &log_w);
        let after = log_u_scaled - dot(&y, &log_w_scaled);
        max_target = max_target.max((after - before).abs());

        for (g, x) in kernel.iter().enumerate() {
            let drift = (dot(x, &log_w_scaled) - dot(x, &log_w)).abs();
            max_groups[g] = max_groups[g].max(drift);
        }
    }

    let max_abs = max_groups.iter().copied().fold(max_target, f64::max);
    Ok(InvarianceReport {
        trials,
        seed,
        tolerance: tol,
        max_abs_log_error: max_abs,
        max_target_log_error: max_target,
        max_group_log_errors: max_groups,
        passed: max_abs <= tol,
    })
}
