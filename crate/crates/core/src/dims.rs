//! Dimensional data model: fundamental dimensions, exponent vectors and
//! problems (explanatory quantities plus one target).

use std::collections::HashSet;
use std::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::linalg::RatMatrix;
use crate::rational::Rational;

/// Ordered list of fundamental dimension names. The order fixes the row
/// order of every dimension matrix built over the system.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DimensionSystem {
    names: Vec<String>,
}

impl DimensionSystem {
    pub fn new<S: Into<String>>(names: impl IntoIterator<Item = S>) -> Result<Self> {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        if names.is_empty() {
            return Err(Error::InvalidDimensionSystem("no dimensions declared".into()));
        }
        let mut seen = HashSet::new();
        for name in &names {
            if !is_identifier(name) {
                return Err(Error::InvalidDimensionSystem(format!(
                    "`{name}` is not a valid dimension name"
                )));
            }
            if !seen.insert(name.as_str()) {
                return Err(Error::InvalidDimensionSystem(format!(
                    "dimension `{name}` is declared twice"
                )));
            }
        }
        Ok(Self { names })
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }
}

/// Exponents of a quantity over the fundamental dimensions of a system.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DimVector(Vec<Rational>);

impl DimVector {
    pub fn new(exponents: Vec<Rational>) -> Self {
        Self(exponents)
    }

    pub fn zero(len: usize) -> Self {
        Self(vec![Rational::zero(); len])
    }

    pub fn exponents(&self) -> &[Rational] {
        &self.0
    }

    pub fn into_inner(self) -> Vec<Rational> {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_dimensionless(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    /// Renders in the problem-file syntax, e.g. `S^-1 * U * M^(1/2)`.
    pub fn to_expr(&self, system: &DimensionSystem) -> String {
        let terms: Vec<String> = system
            .names()
            .iter()
            .zip(&self.0)
            .filter(|(_, e)| !e.is_zero())
            .map(|(name, e)| {
                if e.is_one() {
                    name.clone()
                } else if e.is_integer() {
                    format!("{name}^{e}")
                } else {
                    format!("{name}^({e})")
                }
            })
            .collect();
        if terms.is_empty() {
            "1".to_string()
        } else {
            terms.join(" * ")
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Quantity {
    pub name: String,
    pub dim: DimVector,
}

impl Quantity {
    pub fn new(name: impl Into<String>, dim: DimVector) -> Self {
        Self {
            name: name.into(),
            dim,
        }
    }
}

/// A dimensional-analysis problem: `target = H(explanatory...)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Problem {
    system: DimensionSystem,
    explanatory: Vec<Quantity>,
    target: Quantity,
}

impl Problem {
    pub fn new(system: DimensionSystem, explanatory: Vec<Quantity>, target: Quantity) -> Result<Self> {
        if explanatory.is_empty() {
            return Err(Error::NoExplanatoryQuantities);
        }
        let mut seen = HashSet::new();
        for q in explanatory.iter().chain(std::iter::once(&target)) {
            if !seen.insert(q.name.as_str()) {
                return Err(Error::DuplicateQuantity(q.name.clone()));
            }
            if q.dim.len() != system.len() {
                return Err(Error::LengthMismatch {
                    expected: system.len(),
                    found: q.dim.len(),
                });
            }
        }
        Ok(Self {
            system,
            explanatory,
            target,
        })
    }

    pub fn system(&self) -> &DimensionSystem {
        &self.system
    }

    pub fn explanatory(&self) -> &[Quantity] {
        &self.explanatory
    }

    pub fn target(&self) -> &Quantity {
        &self.target
    }

    /// Number of explanatory quantities (columns of the dimension matrix).
    pub fn n(&self) -> usize {
        self.explanatory.len()
    }

    /// Number of fundamental dimensions (rows of the dimension matrix).
    pub fn m(&self) -> usize {
        self.system.len()
    }

    pub fn quantity_names(&self) -> Vec<&str> {
        self.explanatory.iter().map(|q| q.name.as_str()).collect()
    }

    /// The m×n dimension matrix whose i-th column is the i-th quantity's
    /// exponent vector.
    pub fn matrix(&self) -> RatMatrix {
        let m = self.m();
        let n = self.n();
        let mut entries = Vec::with_capacity(m * n);
        for row in 0..m {
            for q in &self.explanatory {
                entries.push(q.dim.exponents()[row].clone());
            }
        }
        RatMatrix::new(m, n, entries)
    }

    /// Dimension vector of the target, `a`.
    pub fn target_vector(&self) -> &[Rational] {
        self.target.dim.exponents()
    }

    /// Dimension of the monomial `W_1^{e_1} ... W_n^{e_n}`, i.e. `B·e`.
    pub fn dim_of_monomial(&self, exponents: &[Rational]) -> Result<DimVector> {
        if exponents.len() != self.n() {
            return Err(Error::LengthMismatch {
                expected: self.n(),
                found: exponents.len(),
            });
        }
        let mut out = vec![Rational::zero(); self.m()];
        for (q, e) in self.explanatory.iter().zip(exponents) {
            if e.is_zero() {
                continue;
            }
            for (acc, b) in out.iter_mut().zip(q.dim.exponents()) {
                *acc += b * e;
            }
        }
        Ok(DimVector(out))
    }

    /// Serializes back to the problem-file format.
    pub fn to_text(&self) -> String {
        let mut out = format!("dimensions: {}\n", self.system.names().join(" "));
        for q in &self.explanatory {
            out.push_str(&format!("quantity {} : {}\n", q.name, q.dim.to_expr(&self.system)));
        }
        out.push_str(&format!(
            "target {} : {}\n",
            self.target.name,
            self.target.dim.to_expr(&self.system)
        ));
        out
    }
}

impl fmt::Display for Problem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

pub(crate) fn is_identifier(name: &str) -> bool {
    let mut chars = name.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ints, ratio};

    fn system() -> DimensionSystem {
        DimensionSystem::new(["S", "U", "T", "M"]).unwrap()
    }

    #[test]
    fn system_rejects_duplicates_and_empty() {
        assert!(DimensionSystem::new(Vec::<String>::new()).is_err());
        assert!(DimensionSystem::new(["S", "S"]).is_err());
        assert!(DimensionSystem::new(["9x"]).is_err());
    }

    #[test]
    fn dim_vector_expr() {
        let sys = system();
        let v = DimVector::new(vec![int(-1), int(1), int(0), ratio(1, 2)]);
        assert_eq!(v.to_expr(&sys), "S^-1 * U * M^(1/2)");
        assert_eq!(DimVector::zero(4).to_expr(&sys), "1");
    }

    #[test]
    fn problem_rejects_duplicate_names_and_empty_list() {
        let sys = system();
        let q = Quantity::new("Q", DimVector::new(ints(&[1, 0, 0, 0])));
        let g = Quantity::new("Q", DimVector::zero(4));
        assert_eq!(
            Problem::new(sys.clone(), vec![q.clone()], g),
            Err(Error::DuplicateQuantity("Q".into()))
        );
        assert_eq!(
            Problem::new(sys, vec![], q),
            Err(Error::NoExplanatoryQuantities)
        );
    }

    #[test]
    fn monomial_dimension_length_checked() {
        let sys = system();
        let q = Quantity::new("Q", DimVector::new(ints(&[1, 0, 0, 0])));
        let g = Quantity::new("G", DimVector::zero(4));
        let p = Problem::new(sys, vec![q], g).unwrap();
        assert!(matches!(
            p.dim_of_monomial(&ints(&[1, 2])),
            Err(Error::LengthMismatch { expected: 1, found: 2 })
        ));
        assert!(p.dim_of_monomial(&ints(&[0])).unwrap().is_dimensionless());
    }
}
