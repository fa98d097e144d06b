//! Log-domain arithmetic for nonnegative reals.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Div, Mul};
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

/// A nonnegative real `w` stored as `ln w`. Zero is `ln w = -∞`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LogWeight {
    ln: f64,
}

impl LogWeight {
    pub const ZERO: LogWeight = LogWeight {
        ln: f64::NEG_INFINITY,
    };
    pub const ONE: LogWeight = LogWeight { ln: 0.0 };

    pub fn from_ln(ln: f64) -> Self {
        debug_assert!(!ln.is_nan());
        Self { ln }
    }

    /// Panics on negative input.
    pub fn from_f64(w: f64) -> Self {
        assert!(w >= 0.0, "LogWeight needs w >= 0, got {w}");
        Self { ln: w.ln() }
    }

    pub fn from_rational(r: &BigRational) -> Self {
        assert!(!r.is_negative(), "LogWeight needs w >= 0");
        if r.is_zero() {
            return Self::ZERO;
        }
        Self {
            ln: ln_bigint(r.numer()) - ln_bigint(r.denom()),
        }
    }

    pub fn ln(self) -> f64 {
        self.ln
    }

    pub fn is_zero(self) -> bool {
        self.ln == f64::NEG_INFINITY
    }

    pub fn to_f64(self) -> f64 {
        self.ln.exp()
    }

    pub fn powf(self, e: f64) -> Self {
        if self.is_zero() {
            return if e == 0.0 { Self::ONE } else { Self::ZERO };
        }
        Self { ln: self.ln * e }
    }

    pub fn recip(self) -> Self {
        Self { ln: -self.ln }
    }

    /// `|ln a - ln b|`, the relative gap in log scale.
    pub fn log_distance(self, other: Self) -> f64 {
        (self.ln - other.ln).abs()
    }
}

impl Mul for LogWeight {
    type Output = LogWeight;
    fn mul(self, rhs: LogWeight) -> LogWeight {
        if self.is_zero() || rhs.is_zero() {
            return LogWeight::ZERO;
        }
        LogWeight {
            ln: self.ln + rhs.ln,
        }
    }
}

impl Div for LogWeight {
    type Output = LogWeight;
    fn div(self, rhs: LogWeight) -> LogWeight {
        assert!(!rhs.is_zero(), "division by a zero LogWeight");
        if self.is_zero() {
            return LogWeight::ZERO;
        }
        LogWeight {
            ln: self.ln - rhs.ln,
        }
    }
}

impl PartialOrd for LogWeight {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        self.ln.partial_cmp(&other.ln)
    }
}

impl fmt::Display for LogWeight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "exp({:.17e})", self.ln)
    }
}

/// Max-shifted accumulator for sums of [`LogWeight`]s.
///
/// Terms are folded in call order, so a fixed input order gives a
/// bit-reproducible result. With `compensated` set, the scaled partial sums
/// use Neumaier compensation.
#[derive(Clone, Copy, Debug)]
pub struct LogSum {
    shift: f64,
    sum: f64,
    comp: f64,
    compensated: bool,
}

impl Default for LogSum {
    fn default() -> Self {
        Self::new(false)
    }
}

impl LogSum {
    pub fn new(compensated: bool) -> Self {
        Self {
            shift: f64::NEG_INFINITY,
            sum: 0.0,
            comp: 0.0,
            compensated,
        }
    }

    pub fn add(&mut self, w: LogWeight) {
        if w.is_zero() {
            return;
        }
        if w.ln > self.shift {
            let scale = (self.shift - w.ln).exp();
            self.sum *= scale;
            self.comp *= scale;
            self.shift = w.ln;
        }
        let term = (w.ln - self.shift).exp();
        if self.compensated {
            let t = self.sum + term;
            if self.sum.abs() >= term.abs() {
                self.comp += (self.sum - t) + term;
            } else {
                self.comp += (term - t) + self.sum;
            }
            self.sum = t;
        } else {
            self.sum += term;
        }
    }

    /// Merges another accumulator into this one.
    pub fn merge(&mut self, other: &LogSum) {
        if other.shift == f64::NEG_INFINITY {
            return;
        }
        let total = other.sum + other.comp;
        self.add(LogWeight::from_ln(other.shift + total.ln()));
    }

    pub fn total(&self) -> LogWeight {
        if self.shift == f64::NEG_INFINITY {
            return LogWeight::ZERO;
        }
        LogWeight::from_ln(self.shift + (self.sum + self.comp).ln())
    }
}

impl FromIterator<LogWeight> for LogSum {
    fn from_iter<I: IntoIterator<Item = LogWeight>>(iter: I) -> Self {
        let mut acc = LogSum::default();
        for w in iter {
            acc.add(w);
        }
        acc
    }
}

/// Natural log of a positive big integer, exact to double precision.
pub fn ln_bigint(x: &BigInt) -> f64 {
    assert!(x.is_positive(), "ln of nonpositive integer");
    let bits = x.bits();
    if bits <= 1000 {
        return x.to_f64().expect("fits").ln();
    }
    let shift = bits - 64;
    let top = (x >> shift).to_f64().expect("fits");
    top.ln() + shift as f64 * std::f64::consts::LN_2
}

/// Converts an exact rational to the nearest double, also when the numerator
/// and denominator individually overflow.
pub fn rational_to_f64(r: &BigRational) -> f64 {
    if r.is_zero() {
        return 0.0;
    }
    if let (Some(a), Some(b)) = (r.numer().to_f64(), r.denom().to_f64()) {
        if a.is_finite() && b.is_finite() {
            return a / b;
        }
    }
    let sign = if r.is_negative() { -1.0 } else { 1.0 };
    sign * (ln_bigint(&r.numer().abs()) - ln_bigint(r.denom())).exp()
}

/// `ln Γ(x)` for `x > 0`.
pub fn ln_gamma(x: f64) -> f64 {
    debug_assert!(x > 0.0, "ln_gamma needs x > 0, got {x}");
    statrs::function::gamma::ln_gamma(x)
}

const FACTORIAL_TABLE: usize = 1 << 15;

/// `ln n!`, from a table built once for small `n`.
pub fn ln_factorial(n: usize) -> f64 {
    static TABLE: OnceLock<Vec<f64>> = OnceLock::new();
    if n < FACTORIAL_TABLE {
        let t = TABLE.get_or_init(|| {
            let mut t = Vec::with_capacity(FACTORIAL_TABLE);
            // Neumaier-compensated running sum of ln k
            let (mut acc, mut comp) = (0.0f64, 0.0f64);
            t.push(0.0);
            for k in 1..FACTORIAL_TABLE {
                let x = (k as f64).ln();
                let s = acc + x;
                comp += if acc.abs() >= x.abs() {
                    (acc - s) + x
                } else {
                    (x - s) + acc
                };
                acc = s;
                t.push(acc + comp);
            }
            t
        });
        t[n]
    } else {
        ln_gamma(n as f64 + 1.0)
    }
}

/// `ln (a)_k = ln Γ(a + k) - ln Γ(a)`.
pub fn ln_pochhammer(a: f64, k: usize) -> f64 {
    if k == 0 {
        return 0.0;
    }
    ln_gamma(a + k as f64) - ln_gamma(a)
}
