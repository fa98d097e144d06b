//! The α-deformed hook products `c_λ(α)`, `c'_λ(α)`, the Jack measure and its
//! restriction to partitions with at most `d` rows.
//!
//! Two independent evaluations of the pair are kept side by side:
//!
//! * [`c_pair_direct`] multiplies one factor per cell of the diagram. It is
//!   exact for rational α and costs `O(|λ|)`.
//! * [`c_pair_gamma`] uses the closed Γ-ratio form over row pairs. It costs
//!   `O(d²)` log-gamma calls regardless of `|λ|`, and is what the large-`n`
//!   sums use.
//!
//! Agreement of the two is part of the test suite.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::alpha::{Alpha, Weight};
use crate::error::{Error, Result};
use crate::logspace::{ln_factorial, ln_gamma, LogSum, LogWeight};
use crate::partition::{enumerate_partitions, Partition};

/// The pair `(c_λ(α), c'_λ(α))`.
#[derive(Clone, Debug, PartialEq)]
pub struct JackWeightPair {
    pub c: Weight,
    pub c_prime: Weight,
}

impl JackWeightPair {
    /// `c_λ(α) · c'_λ(α)`.
    pub fn product(&self) -> Weight {
        match (&self.c, &self.c_prime) {
            (Weight::Exact(a), Weight::Exact(b)) => Weight::Exact(a * b),
            (a, b) => Weight::Log(a.to_log() * b.to_log()),
        }
    }

    /// `1 / (c_λ(α) c'_λ(α))`.
    pub fn inverse_product(&self) -> Weight {
        match self.product() {
            Weight::Exact(r) => Weight::Exact(r.recip()),
            Weight::Log(w) => Weight::Log(w.recip()),
        }
    }
}

/// Cell-product evaluation of `(c_λ(α), c'_λ(α))`:
///
/// ```text
/// c  = ∏ (α·arm + leg + 1)
/// c' = ∏ (α·arm + leg + α)
/// ```
///
/// Exact for [`Alpha::Exact`], log-domain for [`Alpha::Float`].
pub fn c_pair_direct(lambda: &Partition, alpha: &Alpha) -> JackWeightPair {
    let conj = lambda.conjugate();
    match alpha {
        Alpha::Exact(a) => {
            // α = p/q: each factor is (integer)/q, so keep integer numerators
            // and divide by q^|λ| once at the end
            let p = a.numer();
            let q = a.denom();
            let mut num_c = BigInt::one();
            let mut num_cp = BigInt::one();
            for cell in lambda.cells() {
                let (arm, leg) = lambda.arm_leg(&conj, cell);
                let arm = BigInt::from(arm);
                let leg = BigInt::from(leg);
                num_c *= p * &arm + q * (&leg + 1u32);
                num_cp *= p * (&arm + 1u32) + q * &leg;
            }
            let den = num_traits::pow(q.clone(), lambda.weight());
            JackWeightPair {
                c: Weight::Exact(BigRational::new(num_c, den.clone())),
                c_prime: Weight::Exact(BigRational::new(num_cp, den)),
            }
        }
        Alpha::Float(a) => {
            let mut ln_c = 0.0;
            let mut ln_cp = 0.0;
            for cell in lambda.cells() {
                let (arm, leg) = lambda.arm_leg(&conj, cell);
                let (arm, leg) = (arm as f64, leg as f64);
                ln_c += (a * arm + leg + 1.0).ln();
                ln_cp += (a * arm + leg + a).ln();
            }
            JackWeightPair {
                c: Weight::Log(LogWeight::from_ln(ln_c)),
                c_prime: Weight::Log(LogWeight::from_ln(ln_cp)),
            }
        }
    }
}

/// `(ln c_λ(α), ln c'_λ(α))` from the Γ-ratio form with `d` rows.
pub fn ln_c_pair_gamma(parts: &[usize], alpha: f64, d: usize) -> (f64, f64) {
    debug_assert_eq!(parts.len(), d);
    let n: usize = parts.iter().sum();
    let inv = 1.0 / alpha;
    let base = n as f64 * alpha.ln();
    let mut ln_c = base;
    let mut ln_cp = base;
    for i in 0..d {
        for j in (i + 1)..d {
            let diff = (parts[i] - parts[j]) as f64;
            let gap = (j - i) as f64;
            ln_c += ln_gamma(diff + gap * inv) - ln_gamma(diff + (gap + 1.0) * inv);
            ln_cp += ln_gamma(diff + (gap - 1.0) * inv + 1.0) - ln_gamma(diff + gap * inv + 1.0);
        }
    }
    let ln_gamma_inv = ln_gamma(inv);
    for (i, &p) in parts.iter().enumerate() {
        let rows_below = (d - i) as f64;
        ln_c += ln_gamma(p as f64 + rows_below * inv) - ln_gamma_inv;
        ln_cp += ln_gamma(p as f64 + (rows_below - 1.0) * inv + 1.0);
    }
    (ln_c, ln_cp)
}

/// Γ-ratio evaluation of `(c_λ(α), c'_λ(α))`, always in log domain.
///
/// Fails if `λ` has more than `d` rows.
pub fn c_pair_gamma(lambda: &Partition, alpha: &Alpha, d: usize) -> Result<JackWeightPair> {
    let parts = lambda.padded(d)?;
    let (ln_c, ln_cp) = ln_c_pair_gamma(&parts, alpha.to_f64(), d);
    Ok(JackWeightPair {
        c: Weight::Log(LogWeight::from_ln(ln_c)),
        c_prime: Weight::Log(LogWeight::from_ln(ln_cp)),
    })
}

/// `ln (1 / (c_λ(α) c'_λ(α)))` through the Γ-ratio form.
pub fn ln_inverse_product_gamma(parts: &[usize], alpha: f64) -> f64 {
    let (a, b) = ln_c_pair_gamma(parts, alpha, parts.len());
    -(a + b)
}

/// `αⁿ n! / (c_λ(α) c'_λ(α))`, the Jack measure of `λ ⊢ n`.
pub fn jack_probability(lambda: &Partition, alpha: &Alpha) -> Weight {
    let n = lambda.weight();
    let pair = c_pair_direct(lambda, alpha);
    match (alpha, pair.inverse_product()) {
        (Alpha::Exact(a), Weight::Exact(inv)) => {
            let scale = num_traits::pow(a.clone(), n) * BigRational::from_integer(factorial(n));
            Weight::Exact(scale * inv)
        }
        (_, inv) => {
            let ln_scale = n as f64 * alpha.to_f64().ln() + ln_factorial(n);
            Weight::Log(LogWeight::from_ln(ln_scale) * inv.to_log())
        }
    }
}

pub(crate) fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * k)
}

/// Summation strategy for sums over `𝒫_n(d)`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum SumMode {
    /// Fold in enumeration order; bit-reproducible.
    #[default]
    Sequential,
    /// Rayon fold/reduce over the current pool; the last bits may depend on
    /// the thread count.
    Parallel,
}

/// Options shared by the sums over `𝒫_n(d)`.
#[derive(Clone, Copy, Debug, Default)]
pub struct SumOptions {
    pub mode: SumMode,
    /// Neumaier compensation inside the log-domain accumulator.
    pub compensated: bool,
}

/// `1/(c_μ c'_μ)` for one `μ`, in the representation of `alpha`.
///
/// Exact mode uses the cell product, float mode the Γ-ratio form.
fn restricted_term(mu: &Partition, d: usize, alpha: &Alpha) -> Weight {
    match alpha {
        Alpha::Exact(_) => c_pair_direct(mu, alpha).inverse_product(),
        Alpha::Float(a) => {
            let parts = mu.padded(d).expect("enumerated with at most d rows");
            Weight::Log(LogWeight::from_ln(ln_inverse_product_gamma(&parts, *a)))
        }
    }
}

fn sum_weights<I>(terms: I, opts: SumOptions) -> Weight
where
    I: Iterator<Item = Weight>,
{
    let mut exact = BigRational::zero();
    let mut is_exact = None;
    let mut acc = LogSum::new(opts.compensated);
    for w in terms {
        match w {
            Weight::Exact(r) => {
                is_exact = Some(true);
                exact += r;
            }
            Weight::Log(l) => {
                is_exact = Some(false);
                acc.add(l);
            }
        }
    }
    match is_exact {
        Some(true) => Weight::Exact(exact),
        _ => Weight::Log(acc.total()),
    }
}

/// `C_{n,d}(α) = Σ_{μ ∈ 𝒫_n(d)} 1/(c_μ(α) c'_μ(α))`.
pub fn restricted_constant(n: usize, d: usize, alpha: &Alpha) -> Weight {
    restricted_constant_with(n, d, alpha, SumOptions::default())
}

pub fn restricted_constant_with(n: usize, d: usize, alpha: &Alpha, opts: SumOptions) -> Weight {
    match opts.mode {
        SumMode::Sequential => sum_weights(
            enumerate_partitions(n, d).map(|mu| restricted_term(&mu, d, alpha)),
            opts,
        ),
        SumMode::Parallel => {
            let all: Vec<Partition> = enumerate_partitions(n, d).collect();
            match alpha {
                Alpha::Exact(_) => Weight::Exact(
                    all.par_iter()
                        .map(|mu| match restricted_term(mu, d, alpha) {
                            Weight::Exact(r) => r,
                            Weight::Log(_) => unreachable!("exact alpha gives exact terms"),
                        })
                        .reduce(BigRational::zero, |a, b| a + b),
                ),
                Alpha::Float(_) => {
                    let acc = all
                        .par_iter()
                        .fold(
                            || LogSum::new(opts.compensated),
                            |mut acc, mu| {
                                acc.add(restricted_term(mu, d, alpha).to_log());
                                acc
                            },
                        )
                        .reduce(
                            || LogSum::new(opts.compensated),
                            |mut a, b| {
                                a.merge(&b);
                                a
                            },
                        );
                    Weight::Log(acc.total())
                }
            }
        }
    }
}

/// `P^{Jack,α}_{n,d}(λ) = (1/C_{n,d}(α)) · 1/(c_λ c'_λ)`.
pub fn restricted_probability(lambda: &Partition, d: usize, alpha: &Alpha) -> Result<Weight> {
    if lambda.len() > d {
        return Err(Error::TooManyRows {
            length: lambda.len(),
            d,
        });
    }
    let n = lambda.weight();
    let constant = restricted_constant(n, d, alpha);
    Ok(normalize(restricted_term(lambda, d, alpha), &constant))
}

fn normalize(w: Weight, total: &Weight) -> Weight {
    match (w, total) {
        (Weight::Exact(a), Weight::Exact(t)) => Weight::Exact(a / t),
        (w, t) => Weight::Log(w.to_log() / t.to_log()),
    }
}

/// The full restricted law on `𝒫_n(d)`, in enumeration order.
#[derive(Clone, Debug)]
pub struct RestrictedLaw {
    pub n: usize,
    pub d: usize,
    pub alpha: Alpha,
    pub partitions: Vec<Partition>,
    pub probabilities: Vec<Weight>,
    pub constant: Weight,
}

impl RestrictedLaw {
    pub fn build(n: usize, d: usize, alpha: &Alpha, opts: SumOptions) -> Self {
        let partitions: Vec<Partition> = enumerate_partitions(n, d).collect();
        let terms: Vec<Weight> = match opts.mode {
            SumMode::Sequential => partitions
                .iter()
                .map(|mu| restricted_term(mu, d, alpha))
                .collect(),
            SumMode::Parallel => partitions
                .par_iter()
                .map(|mu| restricted_term(mu, d, alpha))
                .collect(),
        };
        let constant = sum_weights(terms.iter().cloned(), opts);
        let probabilities = terms.into_iter().map(|w| normalize(w, &constant)).collect();
        Self {
            n,
            d,
            alpha: alpha.clone(),
            partitions,
            probabilities,
            constant,
        }
    }

    pub fn len(&self) -> usize {
        self.partitions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.partitions.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Partition, &Weight)> {
        self.partitions.iter().zip(self.probabilities.iter())
    }
}
