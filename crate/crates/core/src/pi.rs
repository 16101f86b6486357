//! Pi-Theorem solver.
//!
//! For a problem `U = H(W_1, ..., W_n)` with dimension matrix `B` and target
//! dimension `a`, any unit-invariant relation has the form
//! `U · ∏ W_i^{-y_i} = F(π_1, ..., π_k)` where `B·y = a`, the `π_j` are the
//! monomials of a kernel basis of `B`, and `k = n - rank(B)`.

use num_traits::Zero;
use serde::Serialize;

use crate::dims::Problem;
use crate::error::{Error, Result};
use crate::linalg::{in_affine_span, kernel_basis, primitive_integer, same_span, solve_particular};
use crate::rational::{self, Rational};

/// General functional form implied by a problem.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PiSolution {
    problem: Problem,
    y: Vec<Rational>,
    kernel: Vec<Vec<Rational>>,
}

impl PiSolution {
    pub fn problem(&self) -> &Problem {
        &self.problem
    }

    /// Particular exponents with `B·y = a`.
    pub fn y(&self) -> &[Rational] {
        &self.y
    }

    /// Kernel basis, one vector per Pi group. Primitive-integer for
    /// solutions returned by [`solve_pi`].
    pub fn kernel(&self) -> &[Vec<Rational>] {
        &self.kernel
    }

    /// Degrees of freedom, `n - rank(B)`.
    pub fn k(&self) -> usize {
        self.kernel.len()
    }

    /// Same family expressed through another representative `(y, kernel)`.
    /// Fails unless `B·y = a`, every kernel vector is in the null space of
    /// `B`, and the vectors span all of it.
    pub fn with_representative(&self, y: Vec<Rational>, kernel: Vec<Vec<Rational>>) -> Result<PiSolution> {
        let n = self.problem.n();
        let dim = self.problem.dim_of_monomial(&y)?;
        if dim.exponents() != self.problem.target_vector() {
            return Err(Error::InvalidArgument("y does not reproduce the target dimension".into()));
        }
        for x in &kernel {
            if !self.problem.dim_of_monomial(x)?.is_dimensionless() {
                return Err(Error::InvalidArgument("kernel vector is not dimensionless".into()));
            }
        }
        if kernel.len() != self.k() || !same_span(&self.kernel, &kernel, n)? {
            return Err(Error::InvalidArgument("kernel vectors do not form a basis of the null space".into()));
        }
        Ok(PiSolution {
            problem: self.problem.clone(),
            y,
            kernel,
        })
    }

    /// Copy with `delta` added to `y[index]`. The result generally violates
    /// `B·y = a`; used to exercise invariance checks.
    pub fn perturb_particular(&self, index: usize, delta: &Rational) -> Result<PiSolution> {
        if index >= self.y.len() {
            return Err(Error::InvalidArgument(format!(
                "coordinate {index} out of range for {} quantities",
                self.y.len()
            )));
        }
        let mut out = self.clone();
        out.y[index] += delta;
        Ok(out)
    }

    pub fn to_json(&self) -> SolutionJson {
        SolutionJson {
            k: self.k(),
            y: rational::to_strings(&self.y),
            kernel: self.kernel.iter().map(|x| rational::to_strings(x)).collect(),
            quantities: self.problem.quantity_names().iter().map(|s| s.to_string()).collect(),
            target: self.problem.target().name.clone(),
            dimensions: self.problem.system().names().to_vec(),
        }
    }
}

/// Wire form of a [`PiSolution`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, serde::Deserialize)]
pub struct SolutionJson {
    pub k: usize,
    pub y: Vec<String>,
    pub kernel: Vec<Vec<String>>,
    pub quantities: Vec<String>,
    pub target: String,
    pub dimensions: Vec<String>,
}

/// How a monomial's leading coefficient is shown.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Coefficient {
    /// Unknown positive constant, rendered `const`.
    Symbolic,
    /// Known value; 1 renders as nothing.
    Value(f64),
}

/// `label = coefficient · ∏ W_i^{e_i}` over a problem's quantities.
#[derive(Debug, Clone, PartialEq)]
pub struct Monomial {
    pub label: String,
    pub quantities: Vec<String>,
    pub exponents: Vec<Rational>,
    pub coefficient: Coefficient,
}

impl Monomial {
    pub fn new(problem: &Problem, label: impl Into<String>, exponents: Vec<Rational>, coefficient: Coefficient) -> Result<Self> {
        if exponents.len() != problem.n() {
            return Err(Error::LengthMismatch {
                expected: problem.n(),
                found: exponents.len(),
            });
        }
        Ok(Self {
            label: label.into(),
            quantities: problem.quantity_names().iter().map(|s| s.to_string()).collect(),
            exponents,
            coefficient,
        })
    }

    /// `ln(coefficient) + Σ e_i · ln(W_i)`; a symbolic constant counts as 1.
    pub fn log_eval(&self, values: &[f64]) -> Result<f64> {
        if values.len() != self.exponents.len() {
            return Err(Error::LengthMismatch {
                expected: self.exponents.len(),
                found: values.len(),
            });
        }
        let log_c = match self.coefficient {
            Coefficient::Symbolic => 0.0,
            Coefficient::Value(c) => c.ln(),
        };
        Ok(log_c
            + self
                .exponents
                .iter()
                .zip(values)
                .filter(|(e, _)| !e.is_zero())
                .map(|(e, v)| rational::to_f64(e) * v.ln())
                .sum::<f64>())
    }
}

/// Solves the Pi-Theorem for `problem`.
///
/// The kernel basis is the RREF basis (one free variable set to 1) made
/// primitive-integer; `y` is the particular solution with all free
/// variables zero.
pub fn solve_pi(problem: &Problem) -> Result<PiSolution> {
    let b = problem.matrix();
    let y = match solve_particular(&b, problem.target_vector()) {
        Ok(y) => y,
        Err(Error::Inconsistent { witness }) => return Err(Error::DimensionallyUnattainable { witness }),
        Err(e) => return Err(e),
    };
    let kernel = kernel_basis(&b)
        .iter()
        .map(|x| primitive_integer(x))
        .collect::<Result<Vec<_>>>()?;
    Ok(PiSolution {
        problem: problem.clone(),
        y,
        kernel,
    })
}

/// Applies `F(π) = const · π^p` to a one-group solution: the exponents
/// become `y + p·x` for the stored kernel vector `x`.
pub fn specialize_power(sol: &PiSolution, p: &Rational) -> Result<Monomial> {
    if sol.k() != 1 {
        return Err(Error::NotOneDegreeOfFreedom(sol.k()));
    }
    let exponents = sol
        .y
        .iter()
        .zip(&sol.kernel[0])
        .map(|(y, x)| y + p * x)
        .collect();
    Monomial::new(&sol.problem, sol.problem.target().name.clone(), exponents, Coefficient::Symbolic)
}

/// The `k = 0` law `U = const · ∏ W_i^{y_i}`, or the `F ≡ const` member
/// of the family for larger `k`.
pub fn base_monomial(sol: &PiSolution) -> Monomial {
    Monomial {
        label: sol.problem.target().name.clone(),
        quantities: sol.problem.quantity_names().iter().map(|s| s.to_string()).collect(),
        exponents: sol.y.clone(),
        coefficient: Coefficient::Symbolic,
    }
}

/// Whether `(y_alt, x_alt)` describes the same general solution as `sol`:
/// the kernels span the same space and `y_alt - y` lies in it.
pub fn forms_equivalent(sol: &PiSolution, y_alt: &[Rational], x_alt: &[Vec<Rational>]) -> Result<bool> {
    let n = sol.problem.n();
    if y_alt.len() != n {
        return Err(Error::LengthMismatch {
            expected: n,
            found: y_alt.len(),
        });
    }
    if !same_span(&sol.kernel, x_alt, n)? {
        return Ok(false);
    }
    in_affine_span(y_alt, &sol.y, &sol.kernel)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dsl::parse_problem;
    use crate::rational::{int, ints, ratio};

    const MARKET5C: &str = "dimensions: S U T M
quantity Q : S
quantity P : S^-1 * U * M^-1
quantity V : S * T^-1
quantity sigma2 : T^-1 * M^2
quantity C : U
target G : M";

    fn half_law() -> Vec<Rational> {
        vec![ratio(1, 2), int(0), ratio(-1, 2), ratio(1, 2), int(0)]
    }

    #[test]
    fn market5c_solution() {
        let sol = solve_pi(&parse_problem(MARKET5C).unwrap()).unwrap();
        assert_eq!(sol.k(), 1);
        assert_eq!(sol.kernel(), &[ints(&[3, 2, -1, 1, -2])]);
        assert_eq!(sol.y(), half_law().as_slice());
    }

    #[test]
    fn unattainable_target() {
        let p = parse_problem("dimensions: S U T\nquantity Q : S\nquantity V : S * T^-1\ntarget X : U").unwrap();
        match solve_pi(&p) {
            Err(Error::DimensionallyUnattainable { witness }) => {
                assert_eq!(witness, ints(&[0, 1, 0]));
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn specialize_requires_one_group() {
        let p = parse_problem("dimensions: S\nquantity x : S\ntarget u : S").unwrap();
        let sol = solve_pi(&p).unwrap();
        assert_eq!(specialize_power(&sol, &int(1)), Err(Error::NotOneDegreeOfFreedom(0)));
    }

    #[test]
    fn specialize_zero_power_is_particular() {
        let sol = solve_pi(&parse_problem(MARKET5C).unwrap()).unwrap();
        let mono = specialize_power(&sol, &int(0)).unwrap();
        assert_eq!(mono.exponents, half_law());
        let prop = specialize_power(&sol, &ratio(-1, 6)).unwrap();
        assert_eq!(prop.exponents, vec![int(0), ratio(-1, 3), ratio(-1, 3), ratio(1, 3), ratio(1, 3)]);
    }

    #[test]
    fn equivalence_of_representatives() {
        let sol = solve_pi(&parse_problem(MARKET5C).unwrap()).unwrap();
        let x_lz = vec![int(1), ratio(2, 3), ratio(-1, 3), ratio(1, 3), ratio(-2, 3)];
        let y_lz = vec![int(0), ratio(-1, 3), ratio(-1, 3), ratio(1, 3), ratio(1, 3)];
        assert!(forms_equivalent(&sol, &y_lz, &[x_lz.clone()]).unwrap());
        assert!(forms_equivalent(&sol, &half_law(), &[ints(&[3, 2, -1, 1, -2])]).unwrap());
        assert!(!forms_equivalent(&sol, &ints(&[0, 0, 0, 0, 0]), &[x_lz.clone()]).unwrap());
        assert!(!forms_equivalent(&sol, &half_law(), &[ints(&[1, 0, 0, 0, 0])]).unwrap());
        assert!(!forms_equivalent(&sol, &half_law(), &[]).unwrap());
        assert!(forms_equivalent(&sol, &ints(&[0]), &[x_lz]).is_err());
    }

    #[test]
    fn perturbation_is_bounds_checked() {
        let sol = solve_pi(&parse_problem(MARKET5C).unwrap()).unwrap();
        let bad = sol.perturb_particular(2, &int(1)).unwrap();
        assert_eq!(bad.y()[2], ratio(1, 2));
        assert!(sol.perturb_particular(5, &int(1)).is_err());
    }

    #[test]
    fn solution_json_shape() {
        let sol = solve_pi(&parse_problem(MARKET5C).unwrap()).unwrap();
        let json = serde_json::to_value(sol.to_json()).unwrap();
        assert_eq!(json["k"], 1);
        assert_eq!(json["y"][0], "1/2");
        assert_eq!(json["kernel"][0][4], "-2");
        assert_eq!(json["quantities"][3], "sigma2");
    }

    #[test]
    fn monomial_log_eval() {
        let p = parse_problem(MARKET5C).unwrap();
        let m = Monomial::new(&p, "G", half_law(), Coefficient::Value(2.0)).unwrap();
        let v = [4.0, 7.0, 1.0, 9.0, 3.0];
        let expected = (2.0f64 * 3.0 * 2.0).ln();
        assert!((m.log_eval(&v).unwrap() - expected).abs() < 1e-12);
    }
}
