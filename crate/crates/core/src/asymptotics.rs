//! Large-`n` machinery: the Poisson-type step densities `φ_{n;θ}`, the
//! continuous extension `ĉ^(α)` of `1/(c_λ c'_λ)`, the normalizers `Z_d` and
//! `Z'_d`, and finite-`n` ratio diagnostics for the limit formulas.

use std::f64::consts::PI;

use rand::Rng;
use rand_distr::StandardNormal;

use crate::alpha::Alpha;
use crate::ensemble;
use crate::error::{Error, Result};
use crate::logspace::{ln_factorial, ln_gamma, ln_pochhammer, LogSum, LogWeight};
use crate::partition::enumerate_partitions;
use crate::samplers::RngSeed;
use crate::weights::{restricted_constant_with, SumOptions};

const LN_2PI: f64 = 1.837_877_066_409_345_5;

/// Above this value of `c = n/d` the hypergeometric normalizer switches from
/// series summation to `e^c Γ(θ) c^{1-θ}`.
pub const HYPERGEOMETRIC_SWITCH: f64 = 1e4;

/// `ln ₁F₁(1; θ; c)` by summing `c^r/(θ)_r` in log domain.
///
/// Stops once the terms are decreasing and the geometric tail bound falls
/// below `1e-17` of the running total.
pub fn ln_hyp1f1_series(theta: f64, c: f64) -> f64 {
    let mut acc = LogSum::new(true);
    let ln_c = c.ln();
    let mut ln_term = 0.0;
    let mut r = 0usize;
    loop {
        acc.add(LogWeight::from_ln(ln_term));
        let q = c / (theta + r as f64);
        if q < 1.0 {
            let ln_tail = ln_term + q.ln() - (1.0 - q).ln();
            if ln_tail - acc.total().ln() < -17.0 * std::f64::consts::LN_10 {
                break;
            }
        }
        ln_term += ln_c - (theta + r as f64).ln();
        r += 1;
    }
    acc.total().ln()
}

/// `ln(e^c Γ(θ) c^{1-θ})`, the large-`c` form of `₁F₁(1; θ; c)`.
pub fn ln_hyp1f1_asymptotic(theta: f64, c: f64) -> f64 {
    c + ln_gamma(theta) + (1.0 - theta) * c.ln()
}

/// `ln ₁F₁(1; θ; c)`, switching at [`HYPERGEOMETRIC_SWITCH`].
pub fn ln_hyp1f1(theta: f64, c: f64) -> f64 {
    if c > HYPERGEOMETRIC_SWITCH {
        ln_hyp1f1_asymptotic(theta, c)
    } else {
        ln_hyp1f1_series(theta, c)
    }
}

/// Grid index `r = ⌊c + y√c⌋` of the interval containing `y`, with `c = n/d`.
pub fn grid_index(n: usize, d: usize, y: f64) -> i64 {
    let c = n as f64 / d as f64;
    (c + y * c.sqrt()).floor() as i64
}

/// Grid point `ξ_r = (r - c)/√c`.
pub fn grid_point(n: usize, d: usize, r: i64) -> f64 {
    let c = n as f64 / d as f64;
    (r as f64 - c) / c.sqrt()
}

/// Evaluates `φ_{n;θ}` at many points sharing one normalizer.
#[derive(Clone, Debug)]
pub struct Phi {
    c: f64,
    theta: f64,
    ln_norm: f64,
}

impl Phi {
    pub fn new(n: usize, d: usize, theta: f64) -> Result<Self> {
        if !(theta > 0.0) {
            return Err(Error::NonPositive {
                what: "theta",
                value: theta,
            });
        }
        if n == 0 || d == 0 {
            return Err(Error::InvalidArgument("n and d must be positive".into()));
        }
        let c = n as f64 / d as f64;
        Ok(Self {
            c,
            theta,
            ln_norm: ln_hyp1f1(theta, c),
        })
    }

    /// `ln φ` on the interval with index `r`; `-∞` for `r < 0`.
    pub fn ln_at_index(&self, r: i64) -> f64 {
        if r < 0 {
            return f64::NEG_INFINITY;
        }
        (r as f64 + 0.5) * self.c.ln() - ln_pochhammer(self.theta, r as usize) - self.ln_norm
    }

    pub fn eval(&self, y: f64) -> f64 {
        let r = (self.c + y * self.c.sqrt()).floor() as i64;
        self.ln_at_index(r).exp()
    }

    /// `Σ_r √(1/c) φ(ξ_r)`, the integral of the step function.
    pub fn total_mass(&self) -> f64 {
        let mut acc = LogSum::new(true);
        let shift = -0.5 * self.c.ln();
        let mut r = 0i64;
        let peak = (self.c - self.theta).max(0.0);
        loop {
            let ln = self.ln_at_index(r) + shift;
            acc.add(LogWeight::from_ln(ln));
            if r as f64 > peak && ln - acc.total().ln() < -45.0 {
                break;
            }
            r += 1;
        }
        acc.total().to_f64()
    }
}

/// `φ_{n;θ}(y)`.
pub fn phi(n: usize, d: usize, theta: f64, y: f64) -> Result<f64> {
    Ok(Phi::new(n, d, theta)?.eval(y))
}

/// `sup_y φ_{n;θ}(y) e^{|y|}` over the given points.
pub fn phi_envelope_sup(n: usize, d: usize, theta: f64, ys: &[f64]) -> Result<f64> {
    let p = Phi::new(n, d, theta)?;
    Ok(ys
        .iter()
        .map(|&y| p.eval(y) * y.abs().exp())
        .fold(0.0, f64::max))
}

/// `sup φ_{n;θ}(y) e^{|y|}` over `y ∈ [lo, hi]`, exact for the step function:
/// on each interval the supremum sits at one of the (clipped) endpoints.
pub fn phi_envelope_sup_exact(n: usize, d: usize, theta: f64, lo: f64, hi: f64) -> Result<f64> {
    let p = Phi::new(n, d, theta)?;
    let first = grid_index(n, d, lo).max(0);
    let last = grid_index(n, d, hi);
    let mut sup = 0.0f64;
    for r in first..=last {
        let a = grid_point(n, d, r).max(lo);
        let b = grid_point(n, d, r + 1).min(hi);
        let edge = a.abs().max(b.abs());
        sup = sup.max((p.ln_at_index(r) + edge).exp());
    }
    Ok(sup)
}

/// The four factors with `1/(c_λ c'_λ) = α^{-2n} Γ(1/α)^d F₁F₂F₃F₄`.
///
/// `f1` is a plain product; the rest are kept as logarithms.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FFactors {
    pub f1: f64,
    pub ln_f2: f64,
    pub ln_f3: f64,
    pub ln_f4: f64,
}

impl FFactors {
    pub fn ln_product(&self) -> f64 {
        self.f1.ln() + self.ln_f2 + self.ln_f3 + self.ln_f4
    }
}

/// Evaluates the factors at `r₁ >= … >= r_d >= 0`.
pub fn f_factors(r: &[f64], alpha: f64) -> FFactors {
    let d = r.len();
    let inv = 1.0 / alpha;
    let mut f1 = 1.0;
    let mut ln_f2 = 0.0;
    for i in 0..d {
        for j in (i + 1)..d {
            let gap = (j - i) as f64;
            let diff = r[i] - r[j];
            f1 *= diff + gap * inv;
            ln_f2 += ln_gamma(diff + (gap + 1.0) * inv) - ln_gamma(diff + (gap - 1.0) * inv + 1.0);
        }
    }
    let mut ln_f3 = 0.0;
    let mut ln_f4 = 0.0;
    for (i, &ri) in r.iter().enumerate() {
        let below = (d - i) as f64;
        ln_f3 -= ln_gamma(ri + below * inv);
        ln_f4 -= ln_gamma(ri + (below - 1.0) * inv + 1.0);
    }
    FFactors {
        f1,
        ln_f2,
        ln_f3,
        ln_f4,
    }
}

fn on_cone(r: &[f64]) -> bool {
    r.windows(2).all(|w| w[0] >= w[1]) && r.last().is_none_or(|&x| x >= 0.0)
}

/// `ĉ^(α)(r)`: the factor product times `α^{-2n} Γ(1/α)^d` on the ordered
/// nonnegative cone, zero elsewhere. `n` is taken to be `Σ r_i`.
pub fn c_hat(r: &[f64], alpha: f64) -> LogWeight {
    if !on_cone(r) {
        return LogWeight::ZERO;
    }
    let n: f64 = r.iter().sum();
    let d = r.len() as f64;
    let ln = -2.0 * n * alpha.ln() + d * ln_gamma(1.0 / alpha) + f_factors(r, alpha).ln_product();
    LogWeight::from_ln(ln)
}

/// `ln` of `α^{2n} (n/d)^{2n + (d+d²)/(2α)} / (Γ(1/α)^d e^{2n})`, the scaling
/// that turns `ĉ^(α)` into a density in the `y` coordinates (without `(2π)^d`).
fn ln_density_scale(n: usize, d: usize, alpha: f64) -> f64 {
    let nf = n as f64;
    let df = d as f64;
    let c = nf / df;
    2.0 * nf * alpha.ln() + (2.0 * nf + (df + df * df) / (2.0 * alpha)) * c.ln()
        - df * ln_gamma(1.0 / alpha)
        - 2.0 * nf
}

fn lattice_point(n: usize, y: &[f64]) -> Vec<f64> {
    let c = n as f64 / y.len() as f64;
    y.iter().map(|v| c + v * c.sqrt()).collect()
}

/// Finite-`n` normalized `ĉ^(α)` at `r_i = n/d + y_i √(n/d)` next to its limit
/// `e^{-Σy²} ∏(y_i - y_j)^{2/α}`.
///
/// `y` must be strictly decreasing; traceless up to rounding.
pub fn density_limit_check(n: usize, alpha: f64, y: &[f64]) -> Result<(f64, f64)> {
    if y.windows(2).any(|w| w[0] <= w[1]) {
        return Err(Error::NotStrictlyOrdered(y.to_vec()));
    }
    let d = y.len();
    let finite = normalized_c_hat(n, alpha, y) + d as f64 * LN_2PI;
    let mut limit = -y.iter().map(|v| v * v).sum::<f64>();
    for i in 0..d {
        for j in (i + 1)..d {
            limit += 2.0 / alpha * (y[i] - y[j]).ln();
        }
    }
    Ok((finite.exp(), limit.exp()))
}

/// `ln` of the scaled `ĉ^(α)` without the `(2π)^d` factor.
fn normalized_c_hat(n: usize, alpha: f64, y: &[f64]) -> f64 {
    let r = lattice_point(n, y);
    ln_density_scale(n, y.len(), alpha) + c_hat(&r, alpha).ln()
}

/// An empirical dominating function `K ∏_{i<j}(1 + |y_i - y_j|)^{2/α} e^{-2Σ|y_i|}`
/// for the scaled `ĉ^(α)`.
#[derive(Clone, Copy, Debug)]
pub struct DominationEnvelope {
    pub alpha: f64,
    pub scale: f64,
}

impl DominationEnvelope {
    fn ln_shape(&self, y: &[f64]) -> f64 {
        let mut ln = -2.0 * y.iter().map(|v| v.abs()).sum::<f64>();
        for i in 0..y.len() {
            for j in (i + 1)..y.len() {
                ln += 2.0 / self.alpha * (1.0 + (y[i] - y[j]).abs()).ln();
            }
        }
        ln
    }

    /// Fits `K` as twice the largest observed ratio over `ns × grid`.
    pub fn fit(alpha: f64, ns: &[usize], grid: &[Vec<f64>]) -> Self {
        let mut env = Self { alpha, scale: 1.0 };
        let mut worst = f64::NEG_INFINITY;
        for &n in ns {
            for y in grid {
                let v = normalized_c_hat(n, alpha, y);
                if v.is_finite() {
                    worst = worst.max(v - env.ln_shape(y));
                }
            }
        }
        env.scale = 2.0 * worst.exp();
        env
    }

    pub fn bound(&self, y: &[f64]) -> f64 {
        self.scale * self.ln_shape(y).exp()
    }

    /// Whether the scaled `ĉ^(α)` at `n` stays below the envelope at `y`.
    pub fn dominates(&self, n: usize, y: &[f64]) -> bool {
        let v = normalized_c_hat(n, self.alpha, y);
        v.is_infinite() || v < self.bound(y).ln()
    }
}

/// How a normalizing constant was obtained.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum ZMethod {
    Exact,
    ClosedForm,
    Quadrature,
    MonteCarlo { samples: usize },
}

/// A normalizing constant together with its uncertainty.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ZEstimate {
    pub value: f64,
    /// Zero for deterministic methods.
    pub std_error: f64,
    pub method: ZMethod,
}

/// Monte Carlo settings for `d >= 4`.
#[derive(Clone, Copy, Debug)]
pub struct ZOptions {
    pub samples: usize,
    pub seed: RngSeed,
}

impl Default for ZOptions {
    fn default() -> Self {
        Self {
            samples: 1_000_000,
            seed: RngSeed::new(0),
        }
    }
}

fn check_beta(beta: f64) -> Result<()> {
    if beta > 0.0 && beta.is_finite() {
        Ok(())
    } else {
        Err(Error::NonPositive {
            what: "beta",
            value: beta,
        })
    }
}

/// `ln d^{βd(d-1)/4 + (d-1)/2}`, the log of `Z_d / Z'_d`.
pub fn ln_z_relation(d: usize, beta: f64) -> f64 {
    let df = d as f64;
    (beta * df * (df - 1.0) / 4.0 + (df - 1.0) / 2.0) * df.ln()
}

/// `Z_d(β)`: closed form for `d <= 2`, quadrature for `d = 3`, Monte Carlo
/// with a Gaussian proposal for `d ∈ {4, 5}`.
pub fn z_constant(d: usize, beta: f64) -> Result<ZEstimate> {
    z_constant_with(d, beta, ZOptions::default())
}

pub fn z_constant_with(d: usize, beta: f64, opts: ZOptions) -> Result<ZEstimate> {
    check_beta(beta)?;
    match d {
        1 => Ok(ZEstimate {
            value: 1.0,
            std_error: 0.0,
            method: ZMethod::Exact,
        }),
        2 => Ok(ZEstimate {
            value: ensemble::ln_z2_closed(beta, beta).exp(),
            std_error: 0.0,
            method: ZMethod::ClosedForm,
        }),
        3 => Ok(ZEstimate {
            value: ensemble::ln_normalizer(3, beta, beta)
                .expect("d = 3 is covered")
                .exp(),
            std_error: 0.0,
            method: ZMethod::Quadrature,
        }),
        4 | 5 => Ok(z_monte_carlo(d, beta, opts)),
        _ => Err(Error::UnsupportedDimension {
            d,
            supported: "1..=5",
        }),
    }
}

/// Draws `x` iid `N(0, 1/β)`, centers it and averages `|V(x - x̄)|^β`.
///
/// The centered vector has density `√d (β/2π)^{(d-1)/2} e^{-(β/2)Σz²}` in
/// `(z_1, …, z_{d-1})`, and the `d!` orderings each contribute `Z_d`.
pub fn z_monte_carlo(d: usize, beta: f64, opts: ZOptions) -> ZEstimate {
    let mut rng = opts.seed.substream(d as u64);
    let sd = 1.0 / beta.sqrt();
    let mut x = vec![0.0; d];
    let (mut mean, mut m2) = (0.0f64, 0.0f64);
    for k in 0..opts.samples {
        for v in x.iter_mut() {
            let z: f64 = rng.sample(StandardNormal);
            *v = z * sd;
        }
        let m = x.iter().sum::<f64>() / d as f64;
        let mut ln_v = 0.0;
        for i in 0..d {
            for j in (i + 1)..d {
                ln_v += ((x[i] - m) - (x[j] - m)).abs().ln();
            }
        }
        let w = (beta * ln_v).exp();
        let delta = w - mean;
        mean += delta / (k + 1) as f64;
        m2 += delta * (w - mean);
    }
    let df = d as f64;
    let ln_scale = -ln_factorial(d) - 0.5 * df.ln() - 0.5 * (df - 1.0) * (beta / (2.0 * PI)).ln();
    let scale = ln_scale.exp();
    let n = opts.samples as f64;
    ZEstimate {
        value: mean * scale,
        std_error: (m2 / (n - 1.0) / n).sqrt() * scale,
        method: ZMethod::MonteCarlo {
            samples: opts.samples,
        },
    }
}

/// `Z'_d(β)` from [`z_constant`] through `Z_d = d^{βd(d-1)/4 + (d-1)/2} Z'_d`.
pub fn z_prime_constant(d: usize, beta: f64) -> Result<ZEstimate> {
    z_prime_constant_with(d, beta, ZOptions::default())
}

pub fn z_prime_constant_with(d: usize, beta: f64, opts: ZOptions) -> Result<ZEstimate> {
    let z = z_constant_with(d, beta, opts)?;
    let k = (-ln_z_relation(d, beta)).exp();
    Ok(ZEstimate {
        value: z.value * k,
        std_error: z.std_error * k,
        method: z.method,
    })
}

/// `Z'_d(β)` integrated directly with Gaussian coefficient `dβ`, for `d <= 3`.
pub fn z_prime_quadrature(d: usize, beta: f64) -> Result<f64> {
    check_beta(beta)?;
    let ln = match d {
        2 => ensemble::ln_z2_quadrature(beta, 2.0 * beta),
        _ => ensemble::ln_normalizer(d, beta, d as f64 * beta).ok_or(
            Error::UnsupportedDimension {
                d,
                supported: "1..=3",
            },
        )?,
    };
    Ok(ln.exp())
}

fn float_alpha(alpha: f64) -> Result<Alpha> {
    Alpha::float(alpha)
}

/// `ln C_{n,d}(α)` in deterministic log-domain summation.
pub fn ln_restricted_constant(n: usize, d: usize, alpha: f64, opts: SumOptions) -> Result<f64> {
    Ok(restricted_constant_with(n, d, &float_alpha(alpha)?, opts).ln())
}

/// `ln` of `C_{n,d}(α) α^{2n} (2π)^d (n/d)^{2n+(d²+d)/(2α)-(d-1)/2} / (Γ(1/α)^d e^{2n})`.
pub fn ln_sum_limit_lhs(n: usize, d: usize, alpha: f64, opts: SumOptions) -> Result<f64> {
    let df = d as f64;
    let c = n as f64 / df;
    Ok(ln_restricted_constant(n, d, alpha, opts)?
        + ln_density_scale(n, d, alpha)
        + df * LN_2PI
        - 0.5 * (df - 1.0) * c.ln())
}

/// `α^{-d(d-1)/(2α) - (d-1)/2} Z_d(2/α)`, the limit of [`ln_sum_limit_lhs`].
pub fn sum_limit_rhs(d: usize, alpha: f64) -> Result<ZEstimate> {
    let df = d as f64;
    let z = z_constant(d, 2.0 / alpha)?;
    let k = (-(df * (df - 1.0) / (2.0 * alpha) + (df - 1.0) / 2.0) * alpha.ln()).exp();
    Ok(ZEstimate {
        value: z.value * k,
        std_error: z.std_error * k,
        method: z.method,
    })
}

/// Finite-`n` left side over the limit; tends to 1.
pub fn sum_limit_ratio(n: usize, d: usize, alpha: f64) -> Result<f64> {
    sum_limit_ratio_with(n, d, alpha, SumOptions::default())
}

pub fn sum_limit_ratio_with(n: usize, d: usize, alpha: f64, opts: SumOptions) -> Result<f64> {
    let lhs = ln_sum_limit_lhs(n, d, alpha, opts)?;
    let rhs = sum_limit_rhs(d, alpha)?;
    Ok((lhs - rhs.value.ln()).exp())
}

/// `ln f^λ` from the Γ-ratio form at `α = 1`: `n! ∏_{i<j}(λ_i - λ_j + j - i) / ∏ Γ(λ_i + d - i + 1)`.
pub fn ln_syt_count(parts: &[usize]) -> f64 {
    let d = parts.len();
    let n: usize = parts.iter().sum();
    let mut ln = ln_factorial(n);
    for i in 0..d {
        for j in (i + 1)..d {
            ln += ((parts[i] - parts[j] + j - i) as f64).ln();
        }
        ln -= ln_factorial(parts[i] + d - i - 1);
    }
    ln
}

/// `Σ_{λ ∈ 𝒫_n(d)} (f^λ)^β` in log domain.
pub fn regev_sum(n: usize, d: usize, beta: f64) -> LogWeight {
    let mut acc = LogSum::new(true);
    for lambda in enumerate_partitions(n, d) {
        let parts = lambda.padded(d).expect("at most d rows");
        acc.add(LogWeight::from_ln(beta * ln_syt_count(&parts)));
    }
    acc.total()
}

/// `ln` of `((2π)^{-(d-1)/2} d^{n+d²/2} n^{-(d-1)(d+2)/4})^β n^{(d-1)/2} Z'_d(β)`.
pub fn ln_regev_asymptote(n: usize, d: usize, beta: f64) -> Result<f64> {
    let df = d as f64;
    let nf = n as f64;
    let z = z_prime_constant(d, beta)?;
    let inner = -0.5 * (df - 1.0) * LN_2PI + (nf + df * df / 2.0) * df.ln()
        - (df - 1.0) * (df + 2.0) / 4.0 * nf.ln();
    Ok(beta * inner + 0.5 * (df - 1.0) * nf.ln() + z.value.ln())
}

/// `Σ (f^λ)^β` over its asymptote.
pub fn regev_ratio(n: usize, d: usize, beta: f64) -> Result<f64> {
    check_beta(beta)?;
    let asym = ln_regev_asymptote(n, d, beta)?;
    Ok((regev_sum(n, d, beta).ln() - asym).exp())
}

/// `ln` of `Γ(1/α)^d d^{2n+d²/α} Z'_d(2/α) / ((2π)^{d-1} α^{2n+(d²-d)/(2α)+(d-1)/2} n^{(d²+d)/(2α)-(d+1)/2})`.
pub fn ln_jack_regev_asymptote(n: usize, d: usize, alpha: f64) -> Result<f64> {
    let df = d as f64;
    let nf = n as f64;
    let z = z_prime_constant(d, 2.0 / alpha)?;
    Ok(df * ln_gamma(1.0 / alpha) + (2.0 * nf + df * df / alpha) * df.ln() + z.value.ln()
        - (df - 1.0) * LN_2PI
        - (2.0 * nf + (df * df - df) / (2.0 * alpha) + (df - 1.0) / 2.0) * alpha.ln()
        - ((df * df + df) / (2.0 * alpha) - (df + 1.0) / 2.0) * nf.ln())
}

/// `Σ_{λ ∈ 𝒫_n(d)} (n!)²/(c_λ c'_λ)` over its asymptote.
pub fn jack_regev_ratio(n: usize, d: usize, alpha: f64) -> Result<f64> {
    let ln_sum = 2.0 * ln_factorial(n) + ln_restricted_constant(n, d, alpha, SumOptions::default())?;
    Ok((ln_sum - ln_jack_regev_asymptote(n, d, alpha)?).exp())
}
