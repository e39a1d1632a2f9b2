use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("substitution t -> t^0 is not allowed")]
    ZeroPower,
    #[error("cannot parse polynomial {0:?}; expected min_exp:c0,c1,...")]
    Parse(String),
}

/// Integer Laurent polynomial `sum coeffs[i] * t^(min_exponent + i)`, stored
/// with nonzero leading and trailing coefficients. Zero has no coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(from = "RawLaurent", into = "RawLaurent")]
pub struct LaurentPolynomial {
    min_exponent: i64,
    coeffs: Vec<i64>,
}

#[derive(Serialize, Deserialize)]
struct RawLaurent {
    min_exp: i64,
    coeffs: Vec<i64>,
}

impl From<RawLaurent> for LaurentPolynomial {
    fn from(raw: RawLaurent) -> Self {
        Self::new(raw.min_exp, raw.coeffs)
    }
}

impl From<LaurentPolynomial> for RawLaurent {
    fn from(p: LaurentPolynomial) -> Self {
        RawLaurent {
            min_exp: p.min_exponent,
            coeffs: p.coeffs,
        }
    }
}

impl LaurentPolynomial {
    pub fn new(min_exponent: i64, mut coeffs: Vec<i64>) -> Self {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        let lead = coeffs.iter().take_while(|&&c| c == 0).count();
        coeffs.drain(..lead);
        if coeffs.is_empty() {
            return Self::zero();
        }
        Self {
            min_exponent: min_exponent + lead as i64,
            coeffs,
        }
    }

    pub fn zero() -> Self {
        Self {
            min_exponent: 0,
            coeffs: Vec::new(),
        }
    }

    pub fn constant(c: i64) -> Self {
        Self::new(0, vec![c])
    }

    pub fn min_exponent(&self) -> i64 {
        self.min_exponent
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn max_exponent(&self) -> i64 {
        self.min_exponent + self.coeffs.len().saturating_sub(1) as i64
    }

    pub fn eval_at_one(&self) -> i64 {
        self.coeffs.iter().sum()
    }

    /// Same coefficients shifted so the lowest exponent is 0.
    pub fn normalized(&self) -> Self {
        Self {
            min_exponent: 0,
            coeffs: self.coeffs.clone(),
        }
    }

    /// `t -> t^l` for `l >= 1`.
    pub fn substitute(&self, l: u32) -> Result<Self, PolyError> {
        if l == 0 {
            return Err(PolyError::ZeroPower);
        }
        if self.is_zero() {
            return Ok(Self::zero());
        }
        let step = l as usize;
        let mut coeffs = vec![0; (self.coeffs.len() - 1) * step + 1];
        for (i, &c) in self.coeffs.iter().enumerate() {
            coeffs[i * step] = c;
        }
        Ok(Self::new(self.min_exponent * i64::from(l), coeffs))
    }
}

pub fn substitute(poly: &LaurentPolynomial, l: u32) -> Result<LaurentPolynomial, PolyError> {
    poly.substitute(l)
}

/// Highest power first, e.g. `t^2 - 1 + t^-2`.
impl fmt::Display for LaurentPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            let e = self.min_exponent + i as i64;
            let magnitude = c.unsigned_abs();
            if first {
                if c < 0 {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if c < 0 { " - " } else { " + " })?;
            }
            first = false;
            match (magnitude, e) {
                (m, 0) => write!(f, "{m}")?,
                (1, 1) => write!(f, "t")?,
                (1, e) => write!(f, "t^{e}")?,
                (m, 1) => write!(f, "{m}t")?,
                (m, e) => write!(f, "{m}t^{e}")?,
            }
        }
        Ok(())
    }
}

/// Parses `min_exp:c0,c1,...`, e.g. `-1:1,-1,1` for `t - 1 + t^-1`.
impl FromStr for LaurentPolynomial {
    type Err = PolyError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || PolyError::Parse(s.to_string());
        let (min, rest) = s.split_once(':').ok_or_else(bad)?;
        let min: i64 = min.trim().parse().map_err(|_| bad())?;
        let coeffs = rest
            .split(',')
            .map(|c| c.trim().parse::<i64>().map_err(|_| bad()))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Self::new(min, coeffs))
    }
}
