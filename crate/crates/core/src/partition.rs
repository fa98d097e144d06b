//! Integer partitions of bounded length.
//!
//! A [`Partition`] is stored dense and without trailing zeros; indexing past
//! its length reads as zero, so the same value can be viewed as a `d`-tuple
//! for any `d >= len()`.

use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// A weakly decreasing sequence of positive parts.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition {
    parts: Vec<usize>,
}

/// A cell `(row, col)` of a Young diagram, both 1-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Cell {
    pub row: usize,
    pub col: usize,
}

impl Partition {
    /// The empty partition of 0.
    pub fn empty() -> Self {
        Self { parts: Vec::new() }
    }

    /// Builds a partition from parts, dropping trailing zeros.
    ///
    /// Fails if the parts are not weakly decreasing.
    pub fn new(mut parts: Vec<usize>) -> Result<Self> {
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidPartition(parts));
        }
        while parts.last() == Some(&0) {
            parts.pop();
        }
        Ok(Self { parts })
    }

    /// Builds a partition from parts already known to be weakly decreasing.
    pub(crate) fn from_sorted(mut parts: Vec<usize>) -> Self {
        debug_assert!(parts.windows(2).all(|w| w[0] >= w[1]));
        while parts.last() == Some(&0) {
            parts.pop();
        }
        Self { parts }
    }

    /// Nonzero parts, largest first.
    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    /// `λ_i` with 1-based `i`; zero beyond the length.
    pub fn part(&self, i: usize) -> usize {
        if i == 0 {
            return 0;
        }
        self.parts.get(i - 1).copied().unwrap_or(0)
    }

    /// The parts padded with zeros to exactly `d` entries.
    ///
    /// Fails if the partition has more than `d` nonzero parts.
    pub fn padded(&self, d: usize) -> Result<Vec<usize>> {
        if self.len() > d {
            return Err(Error::TooManyRows {
                length: self.len(),
                d,
            });
        }
        let mut v = self.parts.clone();
        v.resize(d, 0);
        Ok(v)
    }

    /// Length `ℓ(λ)`: the number of nonzero parts.
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Weight `|λ|`.
    pub fn weight(&self) -> usize {
        self.parts.iter().sum()
    }

    /// Whether the 1-based cell `(i, j)` lies in the diagram.
    pub fn contains(&self, cell: Cell) -> bool {
        cell.row >= 1 && cell.col >= 1 && cell.col <= self.part(cell.row)
    }

    /// Cells in row-major order.
    pub fn cells(&self) -> impl Iterator<Item = Cell> + '_ {
        self.parts
            .iter()
            .enumerate()
            .flat_map(|(i, &len)| (1..=len).map(move |j| Cell { row: i + 1, col: j }))
    }

    /// The conjugate partition: `λ'_j = #{ i : λ_i >= j }`.
    pub fn conjugate(&self) -> Partition {
        let first = self.part(1);
        let mut conj = Vec::with_capacity(first);
        for j in 1..=first {
            conj.push(self.parts.iter().take_while(|&&p| p >= j).count());
        }
        Partition { parts: conj }
    }

    /// Arm length `λ_i - j` and leg length `λ'_j - i` of a cell, given the conjugate.
    pub fn arm_leg(&self, conj: &Partition, cell: Cell) -> (usize, usize) {
        (self.part(cell.row) - cell.col, conj.part(cell.col) - cell.row)
    }

    /// `2λ = (2λ_1, 2λ_2, ...)`.
    pub fn doubled_rows(&self) -> Partition {
        Partition {
            parts: self.parts.iter().map(|&p| 2 * p).collect(),
        }
    }

    /// `λ ∪ λ = (λ_1, λ_1, λ_2, λ_2, ...)`.
    pub fn doubled_columns(&self) -> Partition {
        Partition {
            parts: self.parts.iter().flat_map(|&p| [p, p]).collect(),
        }
    }

    /// Whether every part is even.
    pub fn is_even(&self) -> bool {
        self.parts.iter().all(|p| p % 2 == 0)
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (k, p) in self.parts.iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{p}")?;
        }
        f.write_str(")")
    }
}

impl TryFrom<Vec<usize>> for Partition {
    type Error = Error;

    fn try_from(parts: Vec<usize>) -> Result<Self> {
        Partition::new(parts)
    }
}

/// Streaming enumeration of `𝒫_n(d)` in decreasing lexicographic order.
///
/// Holds only the current partition, so memory stays `O(d)` however large
/// the set is.
#[derive(Clone, Debug)]
pub struct Partitions {
    d: usize,
    current: Option<Vec<usize>>,
}

impl Iterator for Partitions {
    type Item = Partition;

    fn next(&mut self) -> Option<Partition> {
        let cur = self.current.take()?;
        let out = Partition::from_sorted(cur.clone());
        self.current = successor(cur, self.d);
        Some(out)
    }
}

/// Next partition in decreasing lex order among those with at most `d` parts.
fn successor(mut parts: Vec<usize>, d: usize) -> Option<Vec<usize>> {
    // the rightmost part that can drop by one with the remainder refilled
    // using parts no larger than the new value and at most `d` slots
    let mut rem = 0usize;
    let mut i = parts.len();
    while i > 0 {
        i -= 1;
        let v = parts[i];
        rem += v;
        parts.truncate(i);
        let new_v = v - 1;
        let free = rem - new_v;
        let slots = d - (i + 1);
        if new_v > 0 && free <= new_v.saturating_mul(slots) {
            parts.push(new_v);
            let mut left = free;
            while left > 0 {
                let take = left.min(new_v);
                parts.push(take);
                left -= take;
            }
            return Some(parts);
        }
    }
    None
}

/// Every partition of `n` with at most `d` parts, largest first in lex order.
///
/// `n = 0` yields the empty partition once.
pub fn enumerate_partitions(n: usize, d: usize) -> Partitions {
    assert!(d >= 1, "d must be positive");
    let mut first = Vec::new();
    if n > 0 {
        first.push(n);
    }
    Partitions {
        d,
        current: Some(first),
    }
}

/// `|𝒫_n(d)|` in exact arithmetic.
///
/// Partitions of `n` into at most `d` parts are in bijection with partitions
/// of `n + d` into exactly `d` parts (add one to every slot), and the latter
/// satisfy `p(m, k) = p(m - 1, k - 1) + p(m - k, k)`.
pub fn count_partitions(n: usize, d: usize) -> BigUint {
    assert!(d >= 1, "d must be positive");
    let m = n + d;
    // exact[k][j] = partitions of j into exactly k parts
    let mut prev: Vec<BigUint> = vec![BigUint::zero(); m + 1];
    prev[0] = BigUint::one();
    for k in 1..=d {
        let mut cur = vec![BigUint::zero(); m + 1];
        for j in k..=m {
            let mut v = prev[j - 1].clone();
            if j >= k {
                v += &cur[j - k];
            }
            cur[j] = v;
        }
        prev = cur;
    }
    prev[m].clone()
}

/// Same as [`count_partitions`], saturated into a `u64`.
pub fn count_partitions_u64(n: usize, d: usize) -> u64 {
    let c = count_partitions(n, d);
    let digits = c.to_u64_digits();
    match digits.len() {
        0 => 0,
        1 => digits[0],
        _ => u64::MAX,
    }
}

/// Hook-length product `H_λ = ∏ (arm + leg + 1)`; `H_() = 1`.
pub fn hook_product(lambda: &Partition) -> BigUint {
    let conj = lambda.conjugate();
    lambda
        .cells()
        .map(|c| {
            let (arm, leg) = lambda.arm_leg(&conj, c);
            BigUint::from(arm + leg + 1)
        })
        .product()
}

/// `ln H_λ` in floating point.
pub fn log_hook_product(lambda: &Partition) -> f64 {
    let conj = lambda.conjugate();
    lambda
        .cells()
        .map(|c| {
            let (arm, leg) = lambda.arm_leg(&conj, c);
            ((arm + leg + 1) as f64).ln()
        })
        .sum()
}
