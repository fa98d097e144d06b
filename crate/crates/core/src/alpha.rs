//! The Jack parameter and the two number representations it selects.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::logspace::{rational_to_f64, LogWeight};

/// The Jack parameter `α > 0`.
///
/// An exact rational keeps every downstream weight exact; a float sends all
/// weight arithmetic to the log domain.
#[derive(Clone, Debug, PartialEq)]
pub enum Alpha {
    Exact(BigRational),
    Float(f64),
}

impl Alpha {
    pub fn exact(p: i64, q: i64) -> Result<Self> {
        if q == 0 {
            return Err(Error::InvalidAlpha(format!("{p}/{q}")));
        }
        Self::from_rational(BigRational::new(BigInt::from(p), BigInt::from(q)))
    }

    pub fn from_rational(r: BigRational) -> Result<Self> {
        if !r.is_positive() {
            return Err(Error::InvalidAlpha(r.to_string()));
        }
        Ok(Alpha::Exact(r))
    }

    pub fn float(a: f64) -> Result<Self> {
        if !(a.is_finite() && a > 0.0) {
            return Err(Error::InvalidAlpha(a.to_string()));
        }
        Ok(Alpha::Float(a))
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, Alpha::Exact(_))
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            Alpha::Exact(r) => Some(r),
            Alpha::Float(_) => None,
        }
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            Alpha::Exact(r) => rational_to_f64(r),
            Alpha::Float(a) => *a,
        }
    }

    /// The same value in float mode.
    pub fn to_float(&self) -> Alpha {
        Alpha::Float(self.to_f64())
    }

    /// `1/α`, keeping the mode.
    pub fn recip(&self) -> Alpha {
        match self {
            Alpha::Exact(r) => Alpha::Exact(r.recip()),
            Alpha::Float(a) => Alpha::Float(1.0 / a),
        }
    }

    /// The matching ensemble parameter `β = 2/α`.
    pub fn beta(&self) -> f64 {
        2.0 / self.to_f64()
    }
}

impl fmt::Display for Alpha {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Alpha::Exact(r) if r.denom().is_one() => write!(f, "{}", r.numer()),
            Alpha::Exact(r) => write!(f, "{}/{}", r.numer(), r.denom()),
            Alpha::Float(a) => write!(f, "{a:?}"),
        }
    }
}

/// Parses `"p/q"` or an integer as an exact value, anything else as a float.
impl FromStr for Alpha {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if let Some((p, q)) = s.split_once('/') {
            let p: BigInt = p
                .trim()
                .parse()
                .map_err(|_| Error::InvalidAlpha(s.to_string()))?;
            let q: BigInt = q
                .trim()
                .parse()
                .map_err(|_| Error::InvalidAlpha(s.to_string()))?;
            if q.is_zero() {
                return Err(Error::InvalidAlpha(s.to_string()));
            }
            return Alpha::from_rational(BigRational::new(p, q));
        }
        if let Ok(p) = s.parse::<BigInt>() {
            return Alpha::from_rational(BigRational::from_integer(p));
        }
        let a: f64 = s.parse().map_err(|_| Error::InvalidAlpha(s.to_string()))?;
        Alpha::float(a)
    }
}

/// A nonnegative weight, exact or in log domain depending on the [`Alpha`] mode.
#[derive(Clone, Debug, PartialEq)]
pub enum Weight {
    Exact(BigRational),
    Log(LogWeight),
}

impl Weight {
    pub fn to_f64(&self) -> f64 {
        match self {
            Weight::Exact(r) => rational_to_f64(r),
            Weight::Log(w) => w.to_f64(),
        }
    }

    pub fn ln(&self) -> f64 {
        self.to_log().ln()
    }

    pub fn to_log(&self) -> LogWeight {
        match self {
            Weight::Exact(r) => LogWeight::from_rational(r),
            Weight::Log(w) => *w,
        }
    }

    pub fn as_exact(&self) -> Option<&BigRational> {
        match self {
            Weight::Exact(r) => Some(r),
            Weight::Log(_) => None,
        }
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, Weight::Exact(_))
    }

    /// Exact form as `"p/q"`, log form as the value with 17 significant digits.
    pub fn render(&self) -> String {
        match self {
            Weight::Exact(r) => format!("{}/{}", r.numer(), r.denom()),
            Weight::Log(w) => format!("{:.16e}", w.to_f64()),
        }
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}
