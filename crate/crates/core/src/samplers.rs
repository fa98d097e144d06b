//! Seeded samplers: the restricted Jack measure, Gaussian β-ensembles through
//! their tridiagonal model, the traceless projection, and uniform
//! fixed-point-free involutions.
//!
//! All randomness flows from a [`RngSeed`]; independent tasks draw from
//! numbered ChaCha20 streams of the same key, so results do not depend on
//! how tasks are scheduled across threads.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use nalgebra::{DMatrix, SymmetricEigen};
use num_rational::BigRational;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;
use rand_distr::{ChiSquared, Distribution, StandardNormal};

use crate::alpha::{Alpha, Weight};
use crate::error::{Error, Result};
use crate::logspace::rational_to_f64;
use crate::partition::{count_partitions, Partition};
use crate::tableaux::PermutationWord;
use crate::weights::{RestrictedLaw, SumOptions};

/// Name of the generator behind every [`RngSeed`].
pub const GENERATOR: &str = "ChaCha20";

/// Largest `|𝒫_n(d)|` for which a sampling table is built.
pub const TABLE_SIZE_LIMIT: u64 = 10_000_000;

/// A master seed for the ChaCha20 generator.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct RngSeed {
    pub seed: u64,
}

impl RngSeed {
    pub fn new(seed: u64) -> Self {
        Self { seed }
    }

    pub fn algorithm(&self) -> &'static str {
        GENERATOR
    }

    /// Stream 0 of this seed.
    pub fn rng(&self) -> ChaCha20Rng {
        self.substream(0)
    }

    /// Independent stream `k` of this seed.
    pub fn substream(&self, k: u64) -> ChaCha20Rng {
        let mut rng = ChaCha20Rng::seed_from_u64(self.seed);
        rng.set_stream(k);
        rng
    }
}

/// Eigenvalues sorted in decreasing order.
#[derive(Clone, Debug, PartialEq)]
pub struct Spectrum {
    values: Vec<f64>,
}

impl Spectrum {
    pub fn new(mut values: Vec<f64>) -> Self {
        values.sort_by(|a, b| b.total_cmp(a));
        Self { values }
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn dim(&self) -> usize {
        self.values.len()
    }

    pub fn trace(&self) -> f64 {
        self.values.iter().sum()
    }

    /// `|Σ x_j| < 1e-12 · max(1, max |x_j|)`.
    pub fn is_traceless(&self) -> bool {
        let scale = self.values.iter().fold(1.0f64, |m, v| m.max(v.abs()));
        self.trace().abs() < 1e-12 * scale
    }
}

fn chi<R: Rng + ?Sized>(k: f64, rng: &mut R) -> f64 {
    ChiSquared::new(k).expect("positive dof").sample(rng).sqrt()
}

/// Eigenvalues of a `d × d` Gaussian β-ensemble with density proportional to
/// `exp(-(β/2)Σx²) ∏|x_i - x_j|^β`.
///
/// Uses the tridiagonal model `(1/√2)·tridiag(N(0,2); χ_{(d-1)β}, …, χ_β)`,
/// whose eigenvalues have weight `exp(-Σλ²/2)∏|λ_i-λ_j|^β`, then rescales by `1/√β`.
pub fn sample_gbe<R: Rng + ?Sized>(d: usize, beta: f64, rng: &mut R) -> Result<Spectrum> {
    if d == 0 {
        return Err(Error::InvalidArgument("d must be positive".into()));
    }
    if !(beta > 0.0 && beta.is_finite()) {
        return Err(Error::NonPositive {
            what: "beta",
            value: beta,
        });
    }
    let scale = 1.0 / (2.0 * beta).sqrt();
    let diag: Vec<f64> = (0..d)
        .map(|_| {
            let z: f64 = rng.sample(StandardNormal);
            z * std::f64::consts::SQRT_2 * scale
        })
        .collect();
    let off: Vec<f64> = (1..d)
        .map(|k| chi(beta * (d - k) as f64, rng) * scale)
        .collect();
    let values = match d {
        1 => diag,
        2 => {
            // closed form for the 2×2 case
            let mean = 0.5 * (diag[0] + diag[1]);
            let half = 0.5 * (diag[0] - diag[1]);
            let r = half.hypot(off[0]);
            vec![mean + r, mean - r]
        }
        _ => {
            let m = DMatrix::from_fn(d, d, |i, j| {
                if i == j {
                    diag[i]
                } else if i + 1 == j {
                    off[i]
                } else if j + 1 == i {
                    off[j]
                } else {
                    0.0
                }
            });
            SymmetricEigen::new(m).eigenvalues.iter().copied().collect()
        }
    };
    Ok(Spectrum::new(values))
}

/// A traceless Gaussian β-ensemble draw: a [`sample_gbe`] spectrum with its
/// mean subtracted.
///
/// Writing `x_i = m + z_i` with `Σz_i = 0` splits the density into a Gaussian
/// in `m` times the traceless density, so centering is exact.
pub fn sample_traceless_gbe<R: Rng + ?Sized>(d: usize, beta: f64, rng: &mut R) -> Result<Spectrum> {
    let s = sample_gbe(d, beta, rng)?;
    Ok(center(s))
}

fn center(s: Spectrum) -> Spectrum {
    let d = s.values.len();
    if d == 1 {
        return Spectrum::new(vec![0.0]);
    }
    if d == 2 {
        let h = 0.5 * (s.values[0] - s.values[1]);
        return Spectrum::new(vec![h, -h]);
    }
    let mean = s.trace() / d as f64;
    let mut z: Vec<f64> = s.values.iter().map(|v| v - mean).collect();
    // push the rounding residue into the entry of largest magnitude
    let residue: f64 = z.iter().sum();
    let k = (0..d)
        .max_by(|&a, &b| z[a].abs().total_cmp(&z[b].abs()))
        .expect("nonempty");
    z[k] -= residue;
    Spectrum::new(z)
}

/// Uniform fixed-point-free involution of `𝔖_N`: the smallest unpaired
/// index is matched with a uniformly chosen unpaired one.
pub fn sample_fpf_involution<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Result<PermutationWord> {
    if n % 2 == 1 {
        return Err(Error::OddSize(n));
    }
    let mut free: Vec<usize> = (1..=n).collect();
    let mut word = vec![0; n];
    while !free.is_empty() {
        let i = free.remove(0);
        let k = rng.random_range(0..free.len());
        let j = free.remove(k);
        word[i - 1] = j;
        word[j - 1] = i;
    }
    PermutationWord::new(word)
}

/// Cumulative-weight table over `𝒫_n(d)` for inversion sampling.
#[derive(Clone, Debug)]
pub struct JackTable {
    partitions: Vec<Partition>,
    cumulative: Vec<f64>,
}

impl JackTable {
    /// Builds the table, refusing when `|𝒫_n(d)|` exceeds [`TABLE_SIZE_LIMIT`].
    ///
    /// Exact α accumulates the CDF in rationals and converts each prefix to a
    /// float only at the end.
    pub fn build(n: usize, d: usize, alpha: &Alpha) -> Result<Self> {
        let size = count_partitions(n, d);
        if size > num_bigint::BigUint::from(TABLE_SIZE_LIMIT) {
            return Err(Error::SizeGuard {
                n,
                d,
                size: size.to_string(),
                limit: TABLE_SIZE_LIMIT,
            });
        }
        let law = RestrictedLaw::build(n, d, alpha, SumOptions::default());
        let mut cumulative = Vec::with_capacity(law.len());
        let mut exact = BigRational::zero();
        let mut float = 0.0f64;
        for w in &law.probabilities {
            match w {
                Weight::Exact(r) => {
                    exact += r;
                    cumulative.push(rational_to_f64(&exact));
                }
                Weight::Log(l) => {
                    float += l.to_f64();
                    cumulative.push(float);
                }
            }
        }
        Ok(Self {
            partitions: law.partitions,
            cumulative,
        })
    }

    pub fn len(&self) -> usize {
        self.partitions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.partitions.is_empty()
    }

    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> &Partition {
        let total = *self.cumulative.last().expect("nonempty table");
        let u: f64 = rng.random::<f64>() * total;
        let k = self.cumulative.partition_point(|&c| c <= u);
        &self.partitions[k.min(self.partitions.len() - 1)]
    }
}

type TableKey = (usize, usize, String);

fn table_cache() -> &'static Mutex<HashMap<TableKey, Arc<JackTable>>> {
    static CACHE: OnceLock<Mutex<HashMap<TableKey, Arc<JackTable>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// The shared table for `(n, d, α)`, built on first use.
pub fn jack_table(n: usize, d: usize, alpha: &Alpha) -> Result<Arc<JackTable>> {
    let key = (n, d, format!("{alpha:?}"));
    if let Some(t) = table_cache().lock().expect("cache lock").get(&key) {
        return Ok(Arc::clone(t));
    }
    let table = Arc::new(JackTable::build(n, d, alpha)?);
    let mut cache = table_cache().lock().expect("cache lock");
    Ok(Arc::clone(cache.entry(key).or_insert(table)))
}

/// One draw from the restricted Jack measure `P^{Jack,α}_{n,d}`.
pub fn sample_restricted_jack<R: Rng + ?Sized>(
    n: usize,
    d: usize,
    alpha: &Alpha,
    rng: &mut R,
) -> Result<Partition> {
    let table = jack_table(n, d, alpha)?;
    Ok(table.sample(rng).clone())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ensemble::d2_cdf_top;
    use crate::partition::enumerate_partitions;
    use crate::tableaux::{enumerate_fpf_involutions, f_hook, longest_increasing};
    use num_traits::ToPrimitive;

    fn ks_sample(mut xs: Vec<f64>, cdf: impl Fn(f64) -> f64) -> f64 {
        xs.sort_by(f64::total_cmp);
        let n = xs.len() as f64;
        xs.iter()
            .enumerate()
            .map(|(i, &x)| {
                let g = cdf(x);
                (g - i as f64 / n).abs().max(((i + 1) as f64 / n - g).abs())
            })
            .fold(0.0, f64::max)
    }

    #[test]
    fn streams_are_reproducible() {
        let s = RngSeed::new(7);
        let a: Vec<u64> = (0..5).map(|_| s.rng().random()).collect();
        let b: Vec<u64> = (0..5).map(|_| s.rng().random()).collect();
        assert_eq!(a, b);
        let x: u64 = s.substream(1).random();
        let y: u64 = s.substream(2).random();
        assert_ne!(x, y);
        assert_eq!(s.algorithm(), "ChaCha20");
    }

    #[test]
    fn jack_sampler_frequencies() {
        let mut rng = RngSeed::new(1).rng();
        let half = Alpha::exact(1, 2).unwrap();
        let two_rows = Partition::new(vec![2]).unwrap();
        let draws = 100_000;
        let hits = (0..draws)
            .filter(|_| sample_restricted_jack(2, 2, &half, &mut rng).unwrap() == two_rows)
            .count();
        assert!((hits as f64 / draws as f64 - 2.0 / 3.0).abs() < 0.01);

        let three = Partition::new(vec![3]).unwrap();
        for _ in 0..100 {
            assert_eq!(sample_restricted_jack(3, 1, &half, &mut rng).unwrap(), three);
        }
    }

    #[test]
    fn plancherel_frequencies_within_three_sigma() {
        let mut rng = RngSeed::new(2).rng();
        let one = Alpha::exact(1, 1).unwrap();
        let draws = 100_000usize;
        let mut counts: HashMap<Partition, usize> = HashMap::new();
        for _ in 0..draws {
            *counts
                .entry(sample_restricted_jack(4, 4, &one, &mut rng).unwrap())
                .or_default() += 1;
        }
        for l in enumerate_partitions(4, 4) {
            let p = f_hook(&l).pow(2).to_f64().unwrap() / 24.0;
            let sigma = (p * (1.0 - p) / draws as f64).sqrt();
            let got = counts.get(&l).copied().unwrap_or(0) as f64 / draws as f64;
            assert!((got - p).abs() < 3.0 * sigma, "{l}: {got} vs {p}");
        }
    }

    #[test]
    fn size_guard() {
        let err = JackTable::build(20_000, 4, &Alpha::Float(1.0)).unwrap_err();
        assert!(matches!(err, Error::SizeGuard { .. }));
    }

    #[test]
    fn gbe_one_dimensional_variance() {
        let mut rng = RngSeed::new(3).rng();
        for &beta in &[1.0, 2.0, 4.0] {
            let n = 100_000;
            let xs: Vec<f64> = (0..n)
                .map(|_| sample_gbe(1, beta, &mut rng).unwrap().values()[0])
                .collect();
            let var = xs.iter().map(|x| x * x).sum::<f64>() / n as f64;
            assert!((var * beta - 1.0).abs() < 0.02, "beta={beta} var={var}");
        }
    }

    #[test]
    fn gbe_second_moment_d2() {
        // E[x_1² + x_2²] = 1/β + E[(x_1-x_2)²]/2 with (x_1-x_2) the d = 2 gap;
        // the gap law ∝ g^β e^{-βg²/4} gives E[g²] = 2(β+1)/β
        let mut rng = RngSeed::new(4).rng();
        for &beta in &[1.0, 4.0] {
            let n = 100_000;
            let m: f64 = (0..n)
                .map(|_| {
                    let s = sample_gbe(2, beta, &mut rng).unwrap();
                    s.values().iter().map(|x| x * x).sum::<f64>()
                })
                .sum::<f64>()
                / n as f64;
            let expect = 1.0 / beta + (beta + 1.0) / beta;
            assert!((m / expect - 1.0).abs() < 0.02, "beta={beta}: {m} vs {expect}");
        }
    }

    #[test]
    fn traceless_d2_matches_closed_form() {
        let mut rng = RngSeed::new(5).rng();
        for &beta in &[1.0, 2.0, 4.0] {
            let xs: Vec<f64> = (0..100_000)
                .map(|_| {
                    let s = sample_traceless_gbe(2, beta, &mut rng).unwrap();
                    assert!(s.is_traceless());
                    assert_eq!(s.values()[0], -s.values()[1]);
                    s.values()[0]
                })
                .collect();
            let ks = ks_sample(xs, |x| d2_cdf_top(beta, beta, x));
            assert!(ks < 0.01, "beta={beta} ks={ks}");
        }
    }

    #[test]
    fn traceless_edge_cases() {
        let mut rng = RngSeed::new(6).rng();
        for _ in 0..10 {
            assert_eq!(sample_traceless_gbe(1, 2.0, &mut rng).unwrap().values(), &[0.0]);
            let s = sample_traceless_gbe(5, 0.7, &mut rng).unwrap();
            assert!(s.is_traceless());
            assert!(s.values().windows(2).all(|w| w[0] >= w[1]));
        }
        assert!(sample_gbe(2, 0.0, &mut rng).is_err());
        assert!(sample_gbe(0, 1.0, &mut rng).is_err());
    }

    #[test]
    fn fpf_involutions_uniform() {
        let mut rng = RngSeed::new(8).rng();
        let all = enumerate_fpf_involutions(4).unwrap();
        let mut counts: HashMap<PermutationWord, usize> = HashMap::new();
        let draws = 100_000;
        for _ in 0..draws {
            let s = sample_fpf_involution(4, &mut rng).unwrap();
            assert!(s.is_involution() && s.is_fixed_point_free());
            *counts.entry(s).or_default() += 1;
        }
        assert_eq!(counts.len(), 3);
        for s in &all {
            assert!((counts[s] as f64 / draws as f64 - 1.0 / 3.0).abs() < 0.01);
        }
        assert!(sample_fpf_involution(5, &mut rng).is_err());
    }

    #[test]
    fn fpf_lis_distribution_n6() {
        let mut rng = RngSeed::new(9).rng();
        let all = enumerate_fpf_involutions(6).unwrap();
        assert_eq!(all.len(), 15);
        let mut exact = [0usize; 7];
        for s in &all {
            exact[longest_increasing(s)] += 1;
        }
        let draws = 60_000;
        let mut got = [0usize; 7];
        for _ in 0..draws {
            got[longest_increasing(&sample_fpf_involution(6, &mut rng).unwrap())] += 1;
        }
        for k in 0..7 {
            let p = exact[k] as f64 / 15.0;
            let sigma = (p * (1.0 - p) / draws as f64).sqrt();
            assert!((got[k] as f64 / draws as f64 - p).abs() <= 3.0 * sigma + 1e-12);
        }
    }
}
