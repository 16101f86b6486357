//! Dimensional analysis engine.
//!
//! Given fundamental dimensions, explanatory quantities and a target, the
//! crate derives the general functional form allowed by unit invariance,
//! `U · ∏ W_i^{-y_i} = F(π_1, ..., π_k)`, using exact rational linear
//! algebra, and checks or fits the result numerically.
//!
//! ```
//! use dimlaw_core::{parse_problem, solve_pi, Render, Style};
//!
//! let problem = parse_problem(
//!     "dimensions: S U T M
//!      quantity Q : S
//!      quantity P : S^-1 * U * M^-1
//!      quantity V : S * T^-1
//!      quantity sigma2 : T^-1 * M^2
//!      target G : M",
//! )
//! .unwrap();
//! let sol = solve_pi(&problem).unwrap();
//! assert_eq!(sol.k(), 0);
//! assert_eq!(sol.render(Style::Plain), "G = const * sigma2^(1/2) * (Q/V)^(1/2)");
//! ```

pub mod cases;
pub mod dims;
pub mod dsl;
pub mod error;
pub mod fit;
pub mod linalg;
pub mod pi;
pub mod rational;
pub mod render;
pub mod rng;
pub mod verify;

pub use dims::{DimVector, DimensionSystem, Problem, Quantity};
pub use dsl::{parse_dim_expr, parse_problem};
pub use error::{Error, Result};
pub use fit::{fit_constant, fit_power_law, generate_power_law_data, Dataset, FitResult, Observation};
pub use linalg::{in_affine_span, kernel_basis, primitive_integer, rref, solve_particular, RatMatrix, RrefResult};
pub use pi::{base_monomial, forms_equivalent, solve_pi, specialize_power, Coefficient, Monomial, PiSolution, SolutionJson};
pub use rational::Rational;
pub use render::{Render, Style};
pub use verify::{check_invariance, rescale_values, target_rescale_factor, InvarianceReport};
