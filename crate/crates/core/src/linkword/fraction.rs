use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CfError {
    #[error("continued fraction has no coefficients")]
    Empty,
    #[error("N must be odd (got {0} coefficients)")]
    EvenLength(usize),
    #[error("coefficient {index} is {value}; all coefficients must be positive")]
    NonPositive { index: usize, value: i64 },
    #[error("cannot parse continued fraction {0:?}")]
    Parse(String),
}

/// Positive continued fraction `[a1, ..., aN]` with `N` odd.
///
/// The link it names is the plat closure of
/// `σ2^a1 σ3^-a2 σ2^a3 ... σ2^aN`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<i64>", into = "Vec<i64>")]
pub struct ContinuedFraction {
    coefficients: Vec<u32>,
}

impl ContinuedFraction {
    pub fn new(coefficients: Vec<u32>) -> Result<Self, CfError> {
        if coefficients.is_empty() {
            return Err(CfError::Empty);
        }
        if let Some(index) = coefficients.iter().position(|&a| a == 0) {
            return Err(CfError::NonPositive { index, value: 0 });
        }
        if coefficients.len().is_multiple_of(2) {
            return Err(CfError::EvenLength(coefficients.len()));
        }
        Ok(Self { coefficients })
    }

    pub fn coefficients(&self) -> &[u32] {
        &self.coefficients
    }

    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> usize {
        self.coefficients.len()
    }

    /// Sum of the coefficients, i.e. the crossing number of the diagram.
    pub fn crossing_count(&self) -> u64 {
        self.coefficients.iter().map(|&a| u64::from(a)).sum()
    }
}

impl TryFrom<Vec<i64>> for ContinuedFraction {
    type Error = CfError;

    fn try_from(raw: Vec<i64>) -> Result<Self, Self::Error> {
        if raw.is_empty() {
            return Err(CfError::Empty);
        }
        let mut coefficients = Vec::with_capacity(raw.len());
        for (index, &value) in raw.iter().enumerate() {
            match u32::try_from(value) {
                Ok(a) if a > 0 => coefficients.push(a),
                _ => return Err(CfError::NonPositive { index, value }),
            }
        }
        Self::new(coefficients)
    }
}

impl From<ContinuedFraction> for Vec<i64> {
    fn from(cf: ContinuedFraction) -> Self {
        cf.coefficients.into_iter().map(i64::from).collect()
    }
}

/// Accepts `1,2,1`, `1;2;1`, `[1, 2, 1]` or whitespace-separated coefficients.
impl FromStr for ContinuedFraction {
    type Err = CfError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let trimmed = s.trim().trim_start_matches('[').trim_end_matches(']');
        let raw = trimmed
            .split(|c: char| c == ',' || c == ';' || c.is_whitespace())
            .filter(|t| !t.is_empty())
            .map(|t| t.parse::<i64>().map_err(|_| CfError::Parse(s.to_string())))
            .collect::<Result<Vec<_>, _>>()?;
        Self::try_from(raw)
    }
}

impl fmt::Display for ContinuedFraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, a) in self.coefficients.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{a}")?;
        }
        write!(f, "]")
    }
}

/// Exact rational in lowest terms with a positive denominator.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Rational {
    numerator: BigInt,
    denominator: BigUint,
}

impl Rational {
    /// Panics if `denominator` is zero.
    pub fn new(numerator: BigInt, denominator: BigUint) -> Self {
        assert!(!denominator.is_zero(), "zero denominator");
        let g = numerator.magnitude().gcd(&denominator);
        if g.is_one() {
            return Self {
                numerator,
                denominator,
            };
        }
        let sign = numerator.sign();
        let magnitude = numerator.magnitude() / &g;
        Self {
            numerator: BigInt::from_biguint(sign, magnitude),
            denominator: denominator / g,
        }
    }

    pub fn from_u64(numerator: u64, denominator: u64) -> Self {
        Self::new(BigInt::from(numerator), BigUint::from(denominator))
    }

    pub fn numerator(&self) -> &BigInt {
        &self.numerator
    }

    pub fn denominator(&self) -> &BigUint {
        &self.denominator
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.numerator, self.denominator)
    }
}

impl Serialize for Rational {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// Value of `1/(a1 + 1/(a2 + ... + 1/aN))`, computed exactly.
pub fn evaluate_cf(cf: &ContinuedFraction) -> Rational {
    let coefficients = cf.coefficients();
    let (last, rest) = coefficients.split_last().expect("validated non-empty");
    // p/q is the value of the tail a_i + 1/(a_{i+1} + ...), always in lowest terms.
    let mut p = BigUint::from(*last);
    let mut q = BigUint::one();
    for &a in rest.iter().rev() {
        let next = BigUint::from(a) * &p + &q;
        q = std::mem::replace(&mut p, next);
    }
    Rational::new(BigInt::from(q), p)
}

/// The two-bridge link of `q/p` has two components exactly when `p` is even.
pub fn is_two_component(cf: &ContinuedFraction) -> bool {
    evaluate_cf(cf).denominator().is_even()
}
