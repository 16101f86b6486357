//! Bundled case studies with their known solutions.
//!
//! Each study embeds a problem file together with the expected particular
//! solution and kernel. Expectations are never trusted as stored data:
//! [`verify_case`] recomputes `B·y = a` and `B·x = 0` before comparing
//! them with the solver output up to choice of representative.

use num_traits::Zero;
use serde::Serialize;

use crate::dims::Problem;
use crate::dsl::parse_problem;
use crate::error::Result;
use crate::linalg::same_span;
use crate::pi::{forms_equivalent, solve_pi, specialize_power, PiSolution};
use crate::rational::{ratio, Rational};
use crate::render::{Render, Style};
use crate::verify::check_invariance;

/// `(numerator, denominator)`.
pub type Frac = (i64, i64);

const HALF: Frac = (1, 2);
const NEG_HALF: Frac = (-1, 2);
const ZERO: Frac = (0, 1);
const ONE: Frac = (1, 1);
const NEG_ONE: Frac = (-1, 1);

pub fn fracs(values: &[Frac]) -> Vec<Rational> {
    values.iter().map(|&(p, q)| ratio(p, q)).collect()
}

/// An alternative `(y, x)` representative of the same general solution.
#[derive(Debug, Clone, Copy)]
pub struct Representation {
    pub label: &'static str,
    pub y: &'static [Frac],
    pub kernel: &'static [&'static [Frac]],
}

/// A named choice `F(π) = const · π^p` against the canonical kernel.
#[derive(Debug, Clone, Copy)]
pub struct Preset {
    pub name: &'static str,
    pub power: Frac,
    pub exponents: &'static [Frac],
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DerivedRole {
    /// Dimensionless; spans the kernel on its own.
    PiGroup,
    /// Its reciprocal is a valid particular solution, i.e. `U = (1/X)·F(π)`.
    ReciprocalPrefactor,
}

#[derive(Debug, Clone, Copy)]
pub struct DerivedMonomial {
    pub name: &'static str,
    pub exponents: &'static [Frac],
    pub role: DerivedRole,
}

#[derive(Debug, Clone, Copy)]
pub struct CaseStudy {
    pub name: &'static str,
    pub summary: &'static str,
    pub problem_text: &'static str,
    pub expected_y: &'static [Frac],
    pub expected_kernel: &'static [&'static [Frac]],
    pub expected_plain: Option<&'static str>,
    pub alternatives: &'static [Representation],
    pub presets: &'static [Preset],
    pub derived: &'static [DerivedMonomial],
    /// Quantities whose exponent must vanish in the particular solution.
    pub absent: &'static [&'static str],
    /// Another study this one must match after renaming quantities.
    pub renamed_from: Option<(&'static str, &'static [(&'static str, &'static str)])>,
}

impl CaseStudy {
    pub fn problem(&self) -> Result<Problem> {
        parse_problem(self.problem_text)
    }

    pub fn file_name(&self) -> String {
        format!("{}.dim", self.name)
    }
}

const KO_PRESETS: &[Preset] = &[
    Preset {
        name: "proportional",
        power: (-1, 6),
        exponents: &[ZERO, (-1, 3), (-1, 3), (1, 3), (1, 3)],
    },
    Preset {
        name: "square_root",
        power: ZERO,
        exponents: &[HALF, ZERO, NEG_HALF, HALF, ZERO],
    },
    Preset {
        name: "linear",
        power: (1, 6),
        exponents: &[ONE, (1, 3), (-2, 3), (2, 3), (-1, 3)],
    },
];

const KO_DERIVED: &[DerivedMonomial] = &[
    DerivedMonomial {
        name: "L",
        exponents: &[ZERO, (1, 3), (1, 3), (-1, 3), (-1, 3)],
        role: DerivedRole::ReciprocalPrefactor,
    },
    DerivedMonomial {
        name: "Z",
        exponents: &[ONE, (2, 3), (-1, 3), (1, 3), (-2, 3)],
        role: DerivedRole::PiGroup,
    },
];

const KO_ALTERNATIVES: &[Representation] = &[
    Representation {
        label: "L-Z form",
        y: &[ZERO, (-1, 3), (-1, 3), (1, 3), (1, 3)],
        kernel: &[&[ONE, (2, 3), (-1, 3), (1, 3), (-2, 3)]],
    },
    Representation {
        label: "integer representative",
        y: &[NEG_ONE, NEG_ONE, ZERO, ZERO, ONE],
        kernel: &[&[(3, 1), (2, 1), NEG_ONE, ONE, (-2, 1)]],
    },
];

pub const CASE_STUDIES: &[CaseStudy] = &[
    CaseStudy {
        name: "market4",
        summary: "impact from order size, price, volume and variance: the square-root law",
        problem_text: include_str!("../problems/market4.dim"),
        expected_y: &[HALF, ZERO, NEG_HALF, HALF],
        expected_kernel: &[],
        expected_plain: Some("G = const * sigma2^(1/2) * (Q/V)^(1/2)"),
        alternatives: &[],
        presets: &[],
        derived: &[],
        absent: &["P"],
        renamed_from: None,
    },
    CaseStudy {
        name: "market5c",
        summary: "adds the bet cost C: one free function of a single Pi group",
        problem_text: include_str!("../problems/market5c.dim"),
        expected_y: &[HALF, ZERO, NEG_HALF, HALF, ZERO],
        expected_kernel: &[&[(3, 1), (2, 1), NEG_ONE, ONE, (-2, 1)]],
        expected_plain: Some("G = sigma2^(1/2) * (Q/V)^(1/2) * f(Q^3 * P^2 * sigma2 / (V * C^2))"),
        alternatives: KO_ALTERNATIVES,
        presets: KO_PRESETS,
        derived: KO_DERIVED,
        absent: &["P", "C"],
        renamed_from: None,
    },
    CaseStudy {
        name: "spread",
        summary: "the spread cost Cs in place of the bet cost; identical analysis",
        problem_text: include_str!("../problems/spread.dim"),
        expected_y: &[HALF, ZERO, NEG_HALF, HALF, ZERO],
        expected_kernel: &[&[(3, 1), (2, 1), NEG_ONE, ONE, (-2, 1)]],
        expected_plain: None,
        alternatives: KO_ALTERNATIVES,
        presets: KO_PRESETS,
        derived: KO_DERIVED,
        absent: &["P", "Cs"],
        renamed_from: Some(("market5c", &[("C", "Cs")])),
    },
    CaseStudy {
        name: "market5t",
        summary: "adds the execution horizon T: deviation from the square-root law through Q/(VT)",
        problem_text: include_str!("../problems/market5t.dim"),
        expected_y: &[HALF, ZERO, NEG_HALF, HALF, ZERO],
        // Stored with the opposite sign to the canonical kernel; both
        // orientations describe the same family.
        expected_kernel: &[&[NEG_ONE, ZERO, ONE, ZERO, ONE]],
        expected_plain: Some("G = sigma2^(1/2) * (Q/V)^(1/2) * f(Q / (V * T))"),
        alternatives: &[Representation {
            label: "positive orientation",
            y: &[HALF, ZERO, NEG_HALF, HALF, ZERO],
            kernel: &[&[ONE, ZERO, NEG_ONE, ZERO, NEG_ONE]],
        }],
        presets: &[Preset {
            name: "square_root",
            power: ZERO,
            exponents: &[HALF, ZERO, NEG_HALF, HALF, ZERO],
        }],
        derived: &[],
        absent: &["P", "T"],
        renamed_from: None,
    },
    CaseStudy {
        name: "pendulum3",
        summary: "pendulum period from length, mass and gravity",
        problem_text: include_str!("../problems/pendulum3.dim"),
        expected_y: &[HALF, ZERO, NEG_HALF],
        expected_kernel: &[],
        expected_plain: Some("period = const * (l/g)^(1/2)"),
        alternatives: &[],
        presets: &[],
        derived: &[],
        absent: &["m"],
        renamed_from: None,
    },
    CaseStudy {
        name: "pendulum4",
        summary: "pendulum period with the amplitude: one free function of l/a",
        problem_text: include_str!("../problems/pendulum4.dim"),
        // Homogeneous (1, 0, 0, -1) and inhomogeneous (1/2, 0, -1/2, 0).
        // The reverse assignment fails B·x = 0 since the g column is nonzero
        // in the time row.
        expected_y: &[HALF, ZERO, NEG_HALF, ZERO],
        expected_kernel: &[&[ONE, ZERO, ZERO, NEG_ONE]],
        expected_plain: Some("period = (l/g)^(1/2) * f(l / a)"),
        alternatives: &[],
        presets: &[Preset {
            name: "amplitude_independent",
            power: ZERO,
            exponents: &[HALF, ZERO, NEG_HALF, ZERO],
        }],
        derived: &[],
        absent: &["m"],
        renamed_from: None,
    },
    CaseStudy {
        name: "pendulum_silly",
        summary: "pendulum period from a badly chosen variable set (mass, gravity, amplitude)",
        problem_text: include_str!("../problems/pendulum_silly.dim"),
        expected_y: &[ZERO, NEG_HALF, HALF],
        expected_kernel: &[],
        expected_plain: Some("period = const * (a/g)^(1/2)"),
        alternatives: &[],
        presets: &[],
        derived: &[],
        absent: &["m"],
        renamed_from: None,
    },
];

pub fn find(name: &str) -> Option<&'static CaseStudy> {
    CASE_STUDIES.iter().find(|c| c.name == name)
}

/// Trials and seed used by the invariance step of [`verify_case`].
pub const CASE_INVARIANCE_TRIALS: usize = 1000;
pub const CASE_INVARIANCE_SEED: u64 = 20_180_101;
pub const CASE_INVARIANCE_TOL: f64 = 1e-10;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CaseReport {
    pub study: String,
    pub passed: bool,
    pub checks: Vec<Check>,
}

struct Checks(Vec<Check>);

impl Checks {
    fn push(&mut self, name: impl Into<String>, passed: bool, detail: impl Into<String>) {
        self.0.push(Check {
            name: name.into(),
            passed,
            detail: detail.into(),
        });
    }
}

fn is_zero_vec(v: &[Rational]) -> bool {
    v.iter().all(Zero::is_zero)
}

/// Runs every invariant of a bundled study.
pub fn verify_case(study: &CaseStudy) -> CaseReport {
    let mut checks = Checks(Vec::new());
    let report = |checks: Checks| CaseReport {
        study: study.name.to_string(),
        passed: checks.0.iter().all(|c| c.passed),
        checks: checks.0,
    };

    let problem = match study.problem() {
        Ok(p) => p,
        Err(e) => {
            checks.push("parse", false, e.to_string());
            return report(checks);
        }
    };
    checks.push("parse", true, format!("{} quantities", problem.n()));

    let sol = match solve_pi(&problem) {
        Ok(s) => s,
        Err(e) => {
            checks.push("solve", false, e.to_string());
            return report(checks);
        }
    };
    checks.push("solve", true, format!("k = {}", sol.k()));

    let y = fracs(study.expected_y);
    let kernel: Vec<Vec<Rational>> = study.expected_kernel.iter().map(|x| fracs(x)).collect();
    expectation_coherence(&mut checks, &problem, &y, &kernel);

    checks.push(
        "degrees of freedom",
        sol.k() == kernel.len(),
        format!("solver k = {}, expected {}", sol.k(), kernel.len()),
    );
    equivalence(&mut checks, &sol, "expected solution", &y, &kernel);
    for alt in study.alternatives {
        let alt_kernel: Vec<Vec<Rational>> = alt.kernel.iter().map(|x| fracs(x)).collect();
        equivalence(&mut checks, &sol, alt.label, &fracs(alt.y), &alt_kernel);
    }

    for name in study.absent {
        let idx = problem.quantity_names().iter().position(|q| q == name);
        let ok = idx.is_some_and(|i| sol.y()[i].is_zero());
        checks.push(format!("{name} absent from the law"), ok, format!("index {idx:?}"));
    }

    for preset in study.presets {
        let (p, q) = preset.power;
        let expected = fracs(preset.exponents);
        let outcome = specialize_power(&sol, &ratio(p, q));
        let ok = match &outcome {
            Ok(mono) => {
                mono.exponents == expected
                    && problem
                        .dim_of_monomial(&expected)
                        .is_ok_and(|d| d.exponents() == problem.target_vector())
            }
            Err(_) => false,
        };
        let detail = match outcome {
            Ok(mono) => mono.render(Style::Plain),
            Err(e) => e.to_string(),
        };
        checks.push(format!("preset {}", preset.name), ok, detail);
    }

    for derived in study.derived {
        derived_check(&mut checks, &sol, &problem, derived);
    }

    if let Some(expected) = study.expected_plain {
        let got = sol.render(Style::Plain);
        let ok = got == expected;
        checks.push("plain rendering", ok, got);
    }

    if let Some((other, renames)) = study.renamed_from {
        let ok = find(other)
            .and_then(|o| o.problem().ok())
            .and_then(|p| solve_pi(&p).ok())
            .is_some_and(|base| same_up_to_renaming(&base, &sol, renames));
        checks.push(format!("matches {other} after renaming"), ok, format!("{renames:?}"));
    }

    match check_invariance(&sol, CASE_INVARIANCE_TRIALS, CASE_INVARIANCE_SEED, CASE_INVARIANCE_TOL) {
        Ok(r) => checks.push(
            "rescaling invariance",
            r.passed,
            format!("max |log error| = {:.3e} over {} trials", r.max_abs_log_error, r.trials),
        ),
        Err(e) => checks.push("rescaling invariance", false, e.to_string()),
    }

    report(checks)
}

fn expectation_coherence(checks: &mut Checks, problem: &Problem, y: &[Rational], kernel: &[Vec<Rational>]) {
    let by = problem.dim_of_monomial(y);
    checks.push(
        "expected y solves B·y = a",
        by.as_ref().is_ok_and(|d| d.exponents() == problem.target_vector()),
        format!("{by:?}"),
    );
    let all_null = kernel
        .iter()
        .all(|x| problem.dim_of_monomial(x).is_ok_and(|d| is_zero_vec(d.exponents())));
    checks.push("expected kernel solves B·x = 0", all_null, format!("{} vectors", kernel.len()));
}

fn equivalence(checks: &mut Checks, sol: &PiSolution, label: &str, y: &[Rational], kernel: &[Vec<Rational>]) {
    let outcome = forms_equivalent(sol, y, kernel);
    checks.push(
        format!("equivalent to {label}"),
        matches!(outcome, Ok(true)),
        format!("{outcome:?}"),
    );
}

fn derived_check(checks: &mut Checks, sol: &PiSolution, problem: &Problem, derived: &DerivedMonomial) {
    let exps = fracs(derived.exponents);
    let ok = match derived.role {
        DerivedRole::PiGroup => {
            problem.dim_of_monomial(&exps).is_ok_and(|d| d.is_dimensionless())
                && same_span(sol.kernel(), &[exps.clone()], problem.n()).unwrap_or(false)
        }
        DerivedRole::ReciprocalPrefactor => {
            let reciprocal: Vec<Rational> = exps.iter().map(|e| -e.clone()).collect();
            let dim = problem.dim_of_monomial(&exps);
            let opposite = dim.is_ok_and(|d| {
                d.exponents()
                    .iter()
                    .zip(problem.target_vector())
                    .all(|(l, a)| (l + a).is_zero())
            });
            opposite && forms_equivalent(sol, &reciprocal, sol.kernel()).unwrap_or(false)
        }
    };
    checks.push(format!("derived {} ({:?})", derived.name, derived.role), ok, "");
}

fn same_up_to_renaming(base: &PiSolution, other: &PiSolution, renames: &[(&str, &str)]) -> bool {
    let mapped: Vec<String> = base
        .problem()
        .quantity_names()
        .iter()
        .map(|q| {
            renames
                .iter()
                .find(|(from, _)| from == q)
                .map_or(q.to_string(), |(_, to)| to.to_string())
        })
        .collect();
    let names_match = mapped.iter().map(String::as_str).eq(other.problem().quantity_names());
    names_match
        && base.problem().matrix() == other.problem().matrix()
        && base.problem().target_vector() == other.problem().target_vector()
        && base.y() == other.y()
        && base.kernel() == other.kernel()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seven_unique_studies() {
        assert_eq!(CASE_STUDIES.len(), 7);
        let mut names: Vec<_> = CASE_STUDIES.iter().map(|c| c.name).collect();
        names.sort();
        names.dedup();
        assert_eq!(names.len(), 7);
    }

    #[test]
    fn every_study_verifies() {
        for study in CASE_STUDIES {
            let report = verify_case(study);
            for c in &report.checks {
                assert!(c.passed, "{}: {} ({})", study.name, c.name, c.detail);
            }
            assert!(report.passed);
        }
    }

    #[test]
    fn pendulum4_transposed_vectors_are_rejected() {
        // The transposed assignment x = (1/2,0,-1/2,0),
        // y = (1,0,0,-1). Neither satisfies its system.
        let p = find("pendulum4").unwrap().problem().unwrap();
        let x = fracs(&[HALF, ZERO, NEG_HALF, ZERO]);
        let y = fracs(&[ONE, ZERO, ZERO, NEG_ONE]);
        assert!(!p.dim_of_monomial(&x).unwrap().is_dimensionless());
        assert_ne!(p.dim_of_monomial(&y).unwrap().exponents(), p.target_vector());
        let sol = solve_pi(&p).unwrap();
        assert!(!forms_equivalent(&sol, &y, &[x]).unwrap());
    }

    #[test]
    fn broken_expectation_is_reported() {
        let mut study = *find("market4").unwrap();
        study.expected_y = &[HALF, ZERO, HALF, HALF];
        let report = verify_case(&study);
        assert!(!report.passed);
        let failed: Vec<_> = report.checks.iter().filter(|c| !c.passed).map(|c| c.name.as_str()).collect();
        assert!(failed.contains(&"expected y solves B·y = a"));
        assert!(failed.contains(&"equivalent to expected solution"));
    }
}
