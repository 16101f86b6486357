use thiserror::Error;

use crate::rational::Rational;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("unknown dimension `{name}` at column {position}")]
    UnknownDimension { name: String, position: usize },

    #[error("malformed dimension expression at column {position}: {reason}")]
    MalformedExpression { position: usize, reason: String },

    #[error("exponent has a zero denominator")]
    ZeroDenominatorExponent,

    #[error("invalid dimension system: {0}")]
    InvalidDimensionSystem(String),

    #[error("quantity `{0}` is declared more than once")]
    DuplicateQuantity(String),

    #[error("problem declares no target quantity")]
    MissingTarget,

    #[error("problem declares more than one target quantity")]
    MultipleTargets,

    #[error("problem declares no explanatory quantities")]
    NoExplanatoryQuantities,

    #[error("line {line}: {source}")]
    AtLine {
        line: usize,
        #[source]
        source: Box<Error>,
    },

    #[error("length mismatch: expected {expected}, found {found}")]
    LengthMismatch { expected: usize, found: usize },

    #[error("cannot normalize the zero vector")]
    ZeroVector,

    #[error("linear system is inconsistent")]
    Inconsistent { witness: Vec<Rational> },

    #[error("target dimension is not attainable from the explanatory quantities")]
    DimensionallyUnattainable { witness: Vec<Rational> },

    #[error("operation needs exactly one degree of freedom, solution has {0}")]
    NotOneDegreeOfFreedom(usize),

    #[error("unsupported number of degrees of freedom: {0}")]
    BadDegreesOfFreedom(usize),

    #[error("design is degenerate: every Pi group takes the same value")]
    DegenerateDesign,

    #[error("value must be positive and finite, found {value} (row {row}, column `{column}`)")]
    NonPositiveValue {
        row: usize,
        column: String,
        value: f64,
    },

    #[error("scale for dimension `{dimension}` must be positive and finite, found {value}")]
    NonPositiveScale { dimension: String, value: f64 },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("csv: {0}")]
    Csv(String),
}

impl Error {
    pub(crate) fn at_line(self, line: usize) -> Error {
        Error::AtLine {
            line,
            source: Box::new(self),
        }
    }
}
