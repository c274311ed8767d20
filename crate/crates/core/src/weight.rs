//! Exact nonnegative rational weights.

use std::ops::Index;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use thiserror::Error;

use crate::subset::GroundSubset;

pub type Rational = BigRational;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum WeightError {
    #[error("malformed rational {0:?}")]
    Malformed(String),
    #[error("negative weight {value} on element {element}")]
    Negative { element: usize, value: String },
}

/// Parses `"p/q"` or an integer string into an exact rational.
pub fn parse_rational(text: &str) -> Result<Rational, WeightError> {
    let t = text.trim();
    let bad = || WeightError::Malformed(text.to_string());
    match t.split_once('/') {
        Some((p, q)) => {
            let p = BigInt::from_str(p.trim()).map_err(|_| bad())?;
            let q = BigInt::from_str(q.trim()).map_err(|_| bad())?;
            if q.is_zero() {
                return Err(bad());
            }
            Ok(Rational::new(p, q))
        }
        None => BigInt::from_str(t).map(Rational::from_integer).map_err(|_| bad()),
    }
}

/// Canonical string form: `"3/2"`, or `"3"` for integers.
pub fn format_rational(r: &Rational) -> String {
    r.to_string()
}

pub fn rational(p: i64, q: i64) -> Rational {
    Rational::new(p.into(), q.into())
}

pub fn integer(p: i64) -> Rational {
    Rational::from_integer(p.into())
}

/// Total map from element ids to nonnegative rationals.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct WeightFunction {
    values: Vec<Rational>,
}

impl WeightFunction {
    pub fn new(values: Vec<Rational>) -> Result<Self, WeightError> {
        if let Some((element, v)) = values.iter().enumerate().find(|(_, v)| v.is_negative()) {
            return Err(WeightError::Negative {
                element,
                value: format_rational(v),
            });
        }
        Ok(Self { values })
    }

    pub fn from_integers(values: &[i64]) -> Result<Self, WeightError> {
        Self::new(values.iter().map(|&v| integer(v)).collect())
    }

    pub fn zero(n: usize) -> Self {
        Self {
            values: vec![Rational::zero(); n],
        }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn values(&self) -> &[Rational] {
        &self.values
    }

    /// Sum of the weights of the members of `s`.
    pub fn total(&self, s: &GroundSubset) -> Rational {
        s.iter().fold(Rational::zero(), |acc, x| acc + &self.values[x])
    }
}

impl Index<usize> for WeightFunction {
    type Output = Rational;

    fn index(&self, id: usize) -> &Rational {
        &self.values[id]
    }
}
