//! Exact finite-`n` laws of the scaled rows `√(αd/n)(λ_i - n/d)`, the limiting
//! traceless-ensemble marginals, and Kolmogorov–Smirnov comparisons between
//! them.

use std::collections::BTreeMap;
use std::time::Instant;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::alpha::{Alpha, Weight};
use crate::ensemble::{self, d2_cdf_top};
use crate::error::{Error, Result};
use crate::logspace::{rational_to_f64, LogSum};
use crate::partition::{count_partitions, enumerate_partitions, Partition};
use crate::quadrature::Tolerance;
use crate::samplers::{sample_traceless_gbe, RngSeed, TABLE_SIZE_LIMIT};
use crate::weights::{restricted_constant, RestrictedLaw, SumOptions};

/// Samples drawn for Monte Carlo marginal CDFs.
pub const MC_SAMPLES: usize = 1_000_000;

const MC_CHUNK: usize = 50_000;

/// One atom of a scaled discrete law: the point is `offset · scale`.
#[derive(Clone, Debug, PartialEq)]
pub struct Atom {
    /// `λ_i - n/d`, exact.
    pub offset: BigRational,
    pub mass: Weight,
}

/// The exact law of one scaled row `√(αd/n)(λ_i - n/d)`.
#[derive(Clone, Debug)]
pub struct DiscreteLaw {
    pub marginal: usize,
    /// `√(αd/n)`.
    pub scale: f64,
    atoms: Vec<Atom>,
}

impl DiscreteLaw {
    pub fn atoms(&self) -> &[Atom] {
        &self.atoms
    }

    pub fn point(&self, k: usize) -> f64 {
        rational_to_f64(&self.atoms[k].offset) * self.scale
    }

    pub fn points(&self) -> Vec<f64> {
        (0..self.atoms.len()).map(|k| self.point(k)).collect()
    }

    pub fn masses(&self) -> Vec<f64> {
        self.atoms.iter().map(|a| a.mass.to_f64()).collect()
    }

    /// Sum of the masses, exact when every mass is.
    pub fn total_mass(&self) -> Weight {
        if self.atoms.iter().all(|a| a.mass.is_exact()) {
            let mut s = BigRational::zero();
            for a in &self.atoms {
                s += a.mass.as_exact().expect("exact");
            }
            Weight::Exact(s)
        } else {
            let acc: LogSum = self.atoms.iter().map(|a| a.mass.to_log()).collect();
            Weight::Log(acc.total())
        }
    }

    pub fn mean(&self) -> f64 {
        self.points()
            .iter()
            .zip(self.masses())
            .map(|(x, m)| x * m)
            .sum()
    }
}

fn size_guard(n: usize, d: usize) -> Result<()> {
    let size = count_partitions(n, d);
    if size > num_bigint::BigUint::from(TABLE_SIZE_LIMIT) {
        return Err(Error::SizeGuard {
            n,
            d,
            size: size.to_string(),
            limit: TABLE_SIZE_LIMIT,
        });
    }
    Ok(())
}

fn check_marginal(i: usize, d: usize) -> Result<()> {
    if i == 0 || i > d {
        return Err(Error::MarginalIndex { i, d });
    }
    Ok(())
}

fn offset(row: usize, n: usize, d: usize) -> BigRational {
    BigRational::new(
        BigInt::from(row) * BigInt::from(d) - BigInt::from(n),
        BigInt::from(d),
    )
}

enum Bucket {
    Exact(BigRational),
    Log(LogSum),
}

/// The law of `√(αd/n)(λ_i - n/d)` under the restricted Jack measure, by full
/// enumeration of `𝒫_n(d)`.
///
/// Exact α gives rational masses summing to exactly 1; float α gives
/// log-domain masses.
pub fn exact_scaled_marginal(n: usize, d: usize, alpha: &Alpha, i: usize) -> Result<DiscreteLaw> {
    check_marginal(i, d)?;
    size_guard(n, d)?;
    let law = RestrictedLaw::build(n, d, alpha, SumOptions::default());
    let mut buckets: BTreeMap<usize, Bucket> = BTreeMap::new();
    for (lambda, p) in law.iter() {
        let b = buckets.entry(lambda.part(i)).or_insert_with(|| match p {
            Weight::Exact(_) => Bucket::Exact(BigRational::zero()),
            Weight::Log(_) => Bucket::Log(LogSum::new(true)),
        });
        match (b, p) {
            (Bucket::Exact(s), Weight::Exact(r)) => *s += r,
            (Bucket::Log(s), w) => s.add(w.to_log()),
            (Bucket::Exact(_), Weight::Log(_)) => unreachable!("one weight kind per law"),
        }
    }
    let atoms = buckets
        .into_iter()
        .map(|(row, b)| Atom {
            offset: offset(row, n, d),
            mass: match b {
                Bucket::Exact(r) => Weight::Exact(r),
                Bucket::Log(s) => Weight::Log(s.total()),
            },
        })
        .collect();
    Ok(DiscreteLaw {
        marginal: i,
        scale: (alpha.to_f64() * d as f64 / n as f64).sqrt(),
        atoms,
    })
}

/// Joint law of the scaled pair `(i, j)` as `((x_i, x_j), mass)` with float masses.
pub fn exact_scaled_pair(
    n: usize,
    d: usize,
    alpha: &Alpha,
    i: usize,
    j: usize,
) -> Result<Vec<((f64, f64), f64)>> {
    check_marginal(i, d)?;
    check_marginal(j, d)?;
    size_guard(n, d)?;
    let scale = (alpha.to_f64() * d as f64 / n as f64).sqrt();
    let x = |row: usize| rational_to_f64(&offset(row, n, d)) * scale;
    let law = RestrictedLaw::build(n, d, alpha, SumOptions::default());
    let mut buckets: BTreeMap<(usize, usize), f64> = BTreeMap::new();
    for (lambda, p) in law.iter() {
        *buckets.entry((lambda.part(i), lambda.part(j))).or_default() += p.to_f64();
    }
    Ok(buckets
        .into_iter()
        .map(|((a, b), m)| ((x(a), x(b)), m))
        .collect())
}

/// Where a limiting CDF came from.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Provenance {
    PointMass,
    ClosedFormD2,
    Quadrature,
    MonteCarlo { samples: usize, ci_half_width: f64 },
}

#[derive(Clone, Debug)]
enum CdfKind {
    PointMass,
    D2 { beta: f64, top: bool },
    D3 { beta: f64, i: usize, total: f64 },
    Empirical(Vec<f64>),
}

/// A limiting marginal CDF of the traceless Gaussian β-ensemble.
#[derive(Clone, Debug)]
pub struct ContinuousCdf {
    kind: CdfKind,
    pub provenance: Provenance,
}

fn d3_tol() -> Tolerance {
    Tolerance {
        abs: 1e-300,
        rel: 1e-10,
        max_intervals: 2000,
    }
}

impl ContinuousCdf {
    /// `P(X <= x)`.
    pub fn eval(&self, x: f64) -> f64 {
        match &self.kind {
            CdfKind::PointMass => {
                if x >= 0.0 {
                    1.0
                } else {
                    0.0
                }
            }
            CdfKind::D2 { beta, top } => {
                if *top {
                    d2_cdf_top(*beta, *beta, x)
                } else {
                    // x_2 = -x_1
                    1.0 - d2_cdf_top(*beta, *beta, -x)
                }
            }
            CdfKind::D3 { beta, i, total } => {
                let mut h = [f64::INFINITY; 3];
                h[*i - 1] = x;
                (ensemble::d3_orthant_mass(*beta, *beta, h, d3_tol()) / total).clamp(0.0, 1.0)
            }
            CdfKind::Empirical(xs) => xs.partition_point(|&v| v <= x) as f64 / xs.len() as f64,
        }
    }

    /// `P(X < x)`; differs from [`eval`](Self::eval) only at atoms.
    pub fn eval_left(&self, x: f64) -> f64 {
        match &self.kind {
            CdfKind::PointMass => {
                if x > 0.0 {
                    1.0
                } else {
                    0.0
                }
            }
            CdfKind::Empirical(xs) => xs.partition_point(|&v| v < x) as f64 / xs.len() as f64,
            _ => self.eval(x),
        }
    }

    /// An empirical CDF from samples, with a 95% DKW band.
    pub fn empirical(mut samples: Vec<f64>) -> Self {
        samples.sort_by(f64::total_cmp);
        let n = samples.len();
        Self {
            provenance: Provenance::MonteCarlo {
                samples: n,
                ci_half_width: dkw_half_width(n, 0.05),
            },
            kind: CdfKind::Empirical(samples),
        }
    }
}

/// `sqrt(ln(2/a) / (2N))`, the Dvoretzky–Kiefer–Wolfowitz band at level `1 - a`.
pub fn dkw_half_width(samples: usize, a: f64) -> f64 {
    ((2.0 / a).ln() / (2.0 * samples as f64)).sqrt()
}

/// Empirical CDF of `x_i` from `samples` traceless draws; each chunk of
/// draws uses its own substream, so the result does not depend on threading.
pub fn monte_carlo_marginal_cdf(
    d: usize,
    beta: f64,
    i: usize,
    samples: usize,
    seed: RngSeed,
) -> Result<ContinuousCdf> {
    check_marginal(i, d)?;
    let chunks = samples.div_ceil(MC_CHUNK);
    let parts: Vec<Result<Vec<f64>>> = (0..chunks)
        .into_par_iter()
        .map(|k| {
            let mut rng = seed.substream(k as u64 + 1);
            let m = MC_CHUNK.min(samples - k * MC_CHUNK);
            (0..m)
                .map(|_| Ok(sample_traceless_gbe(d, beta, &mut rng)?.values()[i - 1]))
                .collect()
        })
        .collect();
    let mut xs = Vec::with_capacity(samples);
    for p in parts {
        xs.extend(p?);
    }
    Ok(ContinuousCdf::empirical(xs))
}

/// Marginal CDF of `x_i` for the traceless ensemble: closed form for
/// `d <= 2`, quadrature for `d = 3`, [`MC_SAMPLES`] draws for `d ∈ {4, 5}`.
pub fn gbe0_marginal_cdf(d: usize, beta: f64, i: usize) -> Result<ContinuousCdf> {
    gbe0_marginal_cdf_with(d, beta, i, RngSeed::new(0))
}

pub fn gbe0_marginal_cdf_with(d: usize, beta: f64, i: usize, seed: RngSeed) -> Result<ContinuousCdf> {
    if !(beta > 0.0 && beta.is_finite()) {
        return Err(Error::NonPositive {
            what: "beta",
            value: beta,
        });
    }
    check_marginal(i, d)?;
    match d {
        1 => Ok(ContinuousCdf {
            kind: CdfKind::PointMass,
            provenance: Provenance::PointMass,
        }),
        2 => Ok(ContinuousCdf {
            kind: CdfKind::D2 { beta, top: i == 1 },
            provenance: Provenance::ClosedFormD2,
        }),
        3 => Ok(ContinuousCdf {
            kind: CdfKind::D3 {
                beta,
                i,
                total: ensemble::d3_orthant_mass(beta, beta, [f64::INFINITY; 3], d3_tol()),
            },
            provenance: Provenance::Quadrature,
        }),
        4 | 5 => monte_carlo_marginal_cdf(d, beta, i, MC_SAMPLES, seed),
        _ => Err(Error::UnsupportedDimension {
            d,
            supported: "1..=5",
        }),
    }
}

/// `sup_x |F(x) - G(x)|` for a discrete `F`, checked on both sides of every atom.
pub fn ks_distance(law: &DiscreteLaw, cdf: &ContinuousCdf) -> f64 {
    let points = law.points();
    let masses = law.masses();
    ks_from_atoms(&points, &masses, cdf)
}

fn ks_from_atoms(points: &[f64], masses: &[f64], cdf: &ContinuousCdf) -> f64 {
    let mut below = 0.0f64;
    let mut worst = 0.0f64;
    for (&x, &m) in points.iter().zip(masses) {
        worst = worst.max((below - cdf.eval_left(x)).abs());
        below += m;
        worst = worst.max((below - cdf.eval(x)).abs());
    }
    worst
}

/// Quadrant probability `P(x_i <= h_i, x_j <= h_j)` of the traceless ensemble for `d ∈ {2, 3}`.
pub fn gbe0_quadrant(d: usize, beta: f64, i: usize, j: usize, hi: f64, hj: f64) -> Result<f64> {
    check_marginal(i, d)?;
    check_marginal(j, d)?;
    match d {
        2 => {
            let mut h = [f64::INFINITY; 2];
            h[i - 1] = h[i - 1].min(hi);
            h[j - 1] = h[j - 1].min(hj);
            // x_1 ∈ [-h_2, h_1]
            let lo = -h[1];
            if h[0] < lo {
                return Ok(0.0);
            }
            Ok(d2_cdf_top(beta, beta, h[0]) - d2_cdf_top(beta, beta, lo))
        }
        3 => {
            let mut h = [f64::INFINITY; 3];
            h[i - 1] = h[i - 1].min(hi);
            h[j - 1] = h[j - 1].min(hj);
            let total = ensemble::d3_orthant_mass(beta, beta, [f64::INFINITY; 3], d3_tol());
            Ok(ensemble::d3_orthant_mass(beta, beta, h, d3_tol()) / total)
        }
        _ => Err(Error::UnsupportedDimension {
            d,
            supported: "2..=3",
        }),
    }
}

/// Largest quadrant-probability gap between the exact pair law and the limit
/// over the grid `hs × hs`.
pub fn quadrant_grid_distance(
    n: usize,
    d: usize,
    alpha: &Alpha,
    (i, j): (usize, usize),
    hs: &[f64],
) -> Result<f64> {
    let pair = exact_scaled_pair(n, d, alpha, i, j)?;
    let beta = alpha.beta();
    let mut worst = 0.0f64;
    for &a in hs {
        for &b in hs {
            let exact: f64 = pair
                .iter()
                .filter(|((x, y), _)| *x <= a && *y <= b)
                .map(|(_, m)| m)
                .sum();
            worst = worst.max((exact - gbe0_quadrant(d, beta, i, j, a, b)?).abs());
        }
    }
    Ok(worst)
}

/// One line of a convergence table.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ConvergenceRow {
    pub n: usize,
    pub d: usize,
    pub alpha: String,
    pub marginal: usize,
    pub ks: f64,
    pub runtime_ms: u64,
}

/// Options for [`convergence_experiment`].
#[derive(Clone, Copy, Debug)]
pub struct ExperimentOptions {
    /// Record `runtime_ms = 0` so repeated runs are byte-identical.
    pub deterministic: bool,
    pub seed: RngSeed,
    /// Draws for the Monte Carlo target when the closed form is not used.
    pub mc_samples: usize,
    /// Force a Monte Carlo target even where quadrature is available.
    pub monte_carlo_target: bool,
}

impl Default for ExperimentOptions {
    fn default() -> Self {
        Self {
            deterministic: true,
            seed: RngSeed::new(0),
            mc_samples: MC_SAMPLES,
            monte_carlo_target: false,
        }
    }
}

/// The limiting CDF used by [`convergence_experiment`].
pub fn target_cdf(d: usize, beta: f64, i: usize, opts: &ExperimentOptions) -> Result<ContinuousCdf> {
    if (opts.monte_carlo_target && d >= 2) || d >= 4 {
        monte_carlo_marginal_cdf(d, beta, i, opts.mc_samples, opts.seed)
    } else {
        gbe0_marginal_cdf(d, beta, i)
    }
}

/// KS distance between the exact law of the scaled `i`-th row and the
/// `β = 2/α` limit, for each `n` in the ladder (kept in ladder order).
///
/// Weights are evaluated in log domain for speed; use
/// [`exact_scaled_marginal`] directly for rational masses.
pub fn convergence_experiment(
    d: usize,
    alpha: &Alpha,
    i: usize,
    ladder: &[usize],
    opts: &ExperimentOptions,
) -> Result<Vec<ConvergenceRow>> {
    let target = target_cdf(d, alpha.beta(), i, opts)?;
    let float = alpha.to_float();
    ladder
        .par_iter()
        .map(|&n| {
            let start = Instant::now();
            let law = exact_scaled_marginal(n, d, &float, i)?;
            let ks = ks_distance(&law, &target);
            Ok(ConvergenceRow {
                n,
                d,
                alpha: alpha.to_string(),
                marginal: i,
                ks,
                runtime_ms: if opts.deterministic {
                    0
                } else {
                    start.elapsed().as_millis() as u64
                },
            })
        })
        .collect()
}

/// Law of `λ_i` (unscaled) under the unrestricted Jack measure on `λ ⊢ n`, as
/// exact masses keyed by row length.
pub fn row_law(n: usize, alpha: &Alpha, i: usize, conjugate: bool) -> BTreeMap<usize, BigRational> {
    let mut out: BTreeMap<usize, BigRational> = BTreeMap::new();
    let c = restricted_constant(n, n, alpha);
    let c = c.as_exact().cloned().unwrap_or_else(BigRational::one);
    for lambda in enumerate_partitions(n, n) {
        let shape: Partition = if conjugate { lambda.conjugate() } else { lambda.clone() };
        let w = crate::weights::c_pair_direct(&lambda, alpha).inverse_product();
        let r = w.as_exact().expect("exact alpha").clone() / &c;
        *out.entry(shape.part(i)).or_insert_with(BigRational::zero) += r;
    }
    out
}
