//! Exact rational scalars.
//!
//! `Rational` is an arbitrary-precision fraction kept in lowest terms with a
//! positive denominator. All symbolic linear algebra in this crate runs on it.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

/// `p/q` as a reduced rational. Panics if `q == 0`.
pub fn ratio(p: i64, q: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(q))
}

pub fn int(p: i64) -> Rational {
    Rational::from_integer(BigInt::from(p))
}

pub fn ints(values: &[i64]) -> Vec<Rational> {
    values.iter().map(|&v| int(v)).collect()
}

/// Parses `p` or `p/q` (optional sign on `p`).
pub fn parse_rational(text: &str) -> Result<Rational> {
    let text = text.trim();
    let malformed = || Error::MalformedExpression {
        position: 0,
        reason: format!("`{text}` is not a rational number"),
    };
    match text.split_once('/') {
        None => text.parse::<BigInt>().map(Rational::from_integer).map_err(|_| malformed()),
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().map_err(|_| malformed())?;
            let q: BigInt = q.trim().parse().map_err(|_| malformed())?;
            if q.is_zero() {
                return Err(Error::ZeroDenominatorExponent);
            }
            Ok(Rational::new(p, q))
        }
    }
}

pub fn to_f64(value: &Rational) -> f64 {
    value.to_f64().unwrap_or(f64::NAN)
}

pub fn to_f64_vec(values: &[Rational]) -> Vec<f64> {
    values.iter().map(to_f64).collect()
}

pub fn to_strings(values: &[Rational]) -> Vec<String> {
    values.iter().map(ToString::to_string).collect()
}

pub fn parse_vector(values: &[impl AsRef<str>]) -> Result<Vec<Rational>> {
    values.iter().map(|v| parse_rational(v.as_ref())).collect()
}

/// Serde adapter: a rational vector as a JSON array of `"p/q"` strings.
pub mod serde_vec {
    use serde::{de::Error as _, Deserialize, Deserializer, Serializer};

    use super::Rational;

    pub fn serialize<S: Serializer>(values: &[Rational], serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_seq(values.iter().map(ToString::to_string))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(deserializer: D) -> Result<Vec<Rational>, D::Error> {
        let raw = Vec::<String>::deserialize(deserializer)?;
        super::parse_vector(&raw).map_err(D::Error::custom)
    }
}

/// Serde adapter for a list of rational vectors.
pub mod serde_vecs {
    use serde::{de::Error as _, Deserialize, Deserializer, Serializer};

    use super::Rational;

    pub fn serialize<S: Serializer>(values: &[Vec<Rational>], serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_seq(values.iter().map(|v| super::to_strings(v)))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(deserializer: D) -> Result<Vec<Vec<Rational>>, D::Error> {
        let raw = Vec::<Vec<String>>::deserialize(deserializer)?;
        raw.iter()
            .map(|v| super::parse_vector(v))
            .collect::<crate::error::Result<_>>()
            .map_err(D::Error::custom)
    }
}
