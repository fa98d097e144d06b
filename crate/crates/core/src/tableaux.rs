//! Standard Young tableaux, the RSK correspondence and fixed-point-free
//! involutions.

use std::cell::RefCell;
use std::collections::HashMap;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::alpha::{Alpha, Weight};
use crate::error::{Error, Result};
use crate::partition::{enumerate_partitions, hook_product, Partition};
use crate::weights::{RestrictedLaw, SumOptions};

/// A permutation of `1..=N` in one-line notation.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PermutationWord(Vec<usize>);

impl PermutationWord {
    pub fn new(word: Vec<usize>) -> Result<Self> {
        let n = word.len();
        let mut seen = vec![false; n + 1];
        for &x in &word {
            if x == 0 || x > n || seen[x] {
                return Err(Error::InvalidPermutation(word));
            }
            seen[x] = true;
        }
        Ok(Self(word))
    }

    pub fn identity(n: usize) -> Self {
        Self((1..=n).collect())
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `σ(i)` for 1-based `i`.
    pub fn apply(&self, i: usize) -> usize {
        self.0[i - 1]
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.0.len()];
        for (i, &x) in self.0.iter().enumerate() {
            inv[x - 1] = i + 1;
        }
        Self(inv)
    }

    pub fn is_involution(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &x)| self.0[x - 1] == i + 1)
    }

    pub fn fixed_points(&self) -> usize {
        self.0
            .iter()
            .enumerate()
            .filter(|&(i, &x)| x == i + 1)
            .count()
    }

    pub fn is_fixed_point_free(&self) -> bool {
        self.fixed_points() == 0
    }
}

impl fmt::Display for PermutationWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.0.iter().map(|x| x.to_string()).collect();
        write!(f, "({})", s.join(","))
    }
}

/// A standard Young tableau, stored row by row.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct StandardTableau {
    rows: Vec<Vec<usize>>,
}

impl StandardTableau {
    /// Validates rows and columns strictly increasing and entries `1..=N`.
    pub fn new(rows: Vec<Vec<usize>>) -> Result<Self> {
        let t = Self { rows };
        t.validate()?;
        Ok(t)
    }

    fn validate(&self) -> Result<()> {
        let shape = self.rows.iter().map(Vec::len).collect::<Vec<_>>();
        if shape.iter().any(|&l| l == 0) || shape.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidTableau(format!("bad shape {shape:?}")));
        }
        let n: usize = shape.iter().sum();
        let mut seen = vec![false; n + 1];
        for (i, row) in self.rows.iter().enumerate() {
            for (j, &x) in row.iter().enumerate() {
                if x == 0 || x > n || seen[x] {
                    return Err(Error::InvalidTableau(format!("entry {x} repeated or out of range")));
                }
                seen[x] = true;
                if j > 0 && row[j - 1] >= x {
                    return Err(Error::InvalidTableau(format!("row {} not increasing", i + 1)));
                }
                if i > 0 && self.rows[i - 1][j] >= x {
                    return Err(Error::InvalidTableau(format!("column {} not increasing", j + 1)));
                }
            }
        }
        Ok(())
    }

    pub fn rows(&self) -> &[Vec<usize>] {
        &self.rows
    }

    pub fn shape(&self) -> Partition {
        Partition::from_sorted(self.rows.iter().map(Vec::len).collect())
    }

    pub fn size(&self) -> usize {
        self.rows.iter().map(Vec::len).sum()
    }

    /// Entry at 1-based `(row, col)`.
    pub fn entry(&self, row: usize, col: usize) -> Option<usize> {
        self.rows.get(row.checked_sub(1)?)?.get(col.checked_sub(1)?).copied()
    }
}

impl fmt::Display for StandardTableau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, row) in self.rows.iter().enumerate() {
            if k > 0 {
                f.write_str("/")?;
            }
            let s: Vec<String> = row.iter().map(|x| x.to_string()).collect();
            f.write_str(&s.join(" "))?;
        }
        Ok(())
    }
}

/// `f^λ = n! / H_λ`.
pub fn f_hook(lambda: &Partition) -> BigUint {
    let n = lambda.weight();
    let fact: BigUint = (1..=n).map(BigUint::from).product();
    let (q, r) = fact.div_rem(&hook_product(lambda));
    assert!(r.is_zero(), "hook quotient must be integral");
    q
}

thread_local! {
    static SYT_CACHE: RefCell<HashMap<Partition, BigUint>> = RefCell::new(HashMap::new());
}

/// `f^λ` by removing one corner at a time, memoized per thread.
pub fn f_recursive(lambda: &Partition) -> BigUint {
    if lambda.weight() <= 1 {
        return BigUint::one();
    }
    if let Some(v) = SYT_CACHE.with(|c| c.borrow().get(lambda).cloned()) {
        return v;
    }
    let parts = lambda.parts();
    let mut total = BigUint::zero();
    for i in 0..parts.len() {
        // row i ends in a corner iff the next row is strictly shorter
        if i + 1 == parts.len() || parts[i + 1] < parts[i] {
            let mut smaller = parts.to_vec();
            smaller[i] -= 1;
            total += f_recursive(&Partition::from_sorted(smaller));
        }
    }
    SYT_CACHE.with(|c| c.borrow_mut().insert(lambda.clone(), total.clone()));
    total
}

/// Row insertion RSK: `σ ↦ (P, Q)` with `P` the insertion tableau and `Q`
/// the recording tableau.
pub fn rsk(sigma: &PermutationWord) -> (StandardTableau, StandardTableau) {
    let mut p: Vec<Vec<usize>> = Vec::new();
    let mut q: Vec<Vec<usize>> = Vec::new();
    for (k, &x) in sigma.as_slice().iter().enumerate() {
        let mut x = x;
        let mut row = 0;
        loop {
            if row == p.len() {
                p.push(vec![x]);
                q.push(vec![k + 1]);
                break;
            }
            let r = &mut p[row];
            let pos = r.partition_point(|&y| y < x);
            if pos == r.len() {
                r.push(x);
                q[row].push(k + 1);
                break;
            }
            std::mem::swap(&mut r[pos], &mut x);
            row += 1;
        }
    }
    (StandardTableau { rows: p }, StandardTableau { rows: q })
}

/// The unique `σ` with `rsk(σ) = (P, Q)`.
pub fn rsk_inverse(p: &StandardTableau, q: &StandardTableau) -> Result<PermutationWord> {
    if p.shape() != q.shape() {
        return Err(Error::ShapeMismatch(
            p.shape().to_string(),
            q.shape().to_string(),
        ));
    }
    let n = p.size();
    let mut p = p.rows.clone();
    let mut q = q.rows.clone();
    let mut word = vec![0; n];
    for k in (1..=n).rev() {
        // k sits at the end of its row in Q, since it is the largest entry
        let row = q
            .iter()
            .position(|r| r.last() == Some(&k))
            .ok_or_else(|| Error::InvalidTableau(format!("{k} is not at a corner of Q")))?;
        q[row].pop();
        let mut x = p[row].pop().expect("same shape");
        for r in (0..row).rev() {
            let pos = p[r].partition_point(|&y| y < x) - 1;
            std::mem::swap(&mut p[r][pos], &mut x);
        }
        word[k - 1] = x;
        if q[row].is_empty() {
            q.pop();
            p.pop();
        }
    }
    PermutationWord::new(word)
}

/// Length of the longest strictly increasing subsequence, by patience sorting.
pub fn longest_increasing(sigma: &PermutationWord) -> usize {
    let mut tails: Vec<usize> = Vec::new();
    for &x in sigma.as_slice() {
        let pos = tails.partition_point(|&t| t < x);
        if pos == tails.len() {
            tails.push(x);
        } else {
            tails[pos] = x;
        }
    }
    tails.len()
}

/// Length of the longest strictly decreasing subsequence.
pub fn longest_decreasing(sigma: &PermutationWord) -> usize {
    let mut tails: Vec<usize> = Vec::new();
    for &x in sigma.as_slice() {
        // decreasing in x is increasing in -x; keep tails of -x sorted
        let pos = tails.partition_point(|&t| t > x);
        if pos == tails.len() {
            tails.push(x);
        } else {
            tails[pos] = x;
        }
    }
    tails.len()
}

/// All of `𝔖_N` in lexicographic order.
pub fn permutations(n: usize) -> impl Iterator<Item = PermutationWord> {
    let mut next = Some((1..=n).collect::<Vec<_>>());
    std::iter::from_fn(move || {
        let cur = next.take()?;
        let mut succ = cur.clone();
        if let Some(i) = (1..succ.len()).rev().find(|&i| succ[i - 1] < succ[i]) {
            let j = (i..succ.len()).rev().find(|&j| succ[j] > succ[i - 1]).expect("exists");
            succ.swap(i - 1, j);
            succ[i..].reverse();
            next = Some(succ);
        }
        Some(PermutationWord(cur))
    })
}

/// All involutions of `𝔖_N`.
pub fn involutions(n: usize) -> Vec<PermutationWord> {
    fn rec(word: &mut Vec<usize>, out: &mut Vec<PermutationWord>, allow_fixed: bool) {
        let Some(i) = word.iter().position(|&x| x == 0) else {
            out.push(PermutationWord(word.clone()));
            return;
        };
        if allow_fixed {
            word[i] = i + 1;
            rec(word, out, allow_fixed);
            word[i] = 0;
        }
        for j in (i + 1)..word.len() {
            if word[j] == 0 {
                word[i] = j + 1;
                word[j] = i + 1;
                rec(word, out, allow_fixed);
                word[i] = 0;
                word[j] = 0;
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut vec![0; n], &mut out, true);
    out
}

/// All fixed-point-free involutions of `𝔖_N`; there are `(N-1)!!`.
pub fn enumerate_fpf_involutions(n: usize) -> Result<Vec<PermutationWord>> {
    if n % 2 == 1 {
        return Err(Error::OddSize(n));
    }
    let mut out = Vec::new();
    fn rec(word: &mut Vec<usize>, out: &mut Vec<PermutationWord>) {
        let Some(i) = word.iter().position(|&x| x == 0) else {
            out.push(PermutationWord(word.clone()));
            return;
        };
        for j in (i + 1)..word.len() {
            if word[j] == 0 {
                word[i] = j + 1;
                word[j] = i + 1;
                rec(word, out);
                word[i] = 0;
                word[j] = 0;
            }
        }
    }
    rec(&mut vec![0; n], &mut out);
    Ok(out)
}

/// `(2n-1)!!`.
pub fn double_factorial_odd(n: usize) -> BigUint {
    (1..=n).map(|k| BigUint::from(2 * k - 1)).product()
}

/// Number of odd-length columns of a shape.
pub fn odd_columns(shape: &Partition) -> usize {
    shape.conjugate().parts().iter().filter(|&&c| c % 2 == 1).count()
}

/// Counts `σ ∈ 𝔖⁰_{2n}` with `L^in(σ) <= a` and `L^de(σ) <= 2b` by enumeration.
/// Use `usize::MAX` for an absent bound.
pub fn fpf_count_with_bounds(n: usize, a: usize, b: usize) -> BigUint {
    let cap = b.saturating_mul(2);
    let count = enumerate_fpf_involutions(2 * n)
        .expect("even size")
        .iter()
        .filter(|s| longest_increasing(s) <= a && longest_decreasing(s) <= cap)
        .count();
    BigUint::from(count)
}

/// The three tableau-side sums that count the same involutions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TableauxCounts {
    /// `Σ f^μ` over `μ ⊢ 2n` with all columns even, `μ_1 <= a`, `μ'_1 <= 2b`.
    /// Only evaluated for `n <= EVEN_COLUMN_LIMIT`, since it walks all of `𝒫_{2n}`.
    pub even_columns: Option<BigUint>,
    /// `Σ f^{λ∪λ}` over `λ ⊢ n` with `λ_1 <= a`, `ℓ(λ) <= b`.
    pub doubled_columns: BigUint,
    /// `Σ f^{2λ}` over `λ ⊢ n` with `λ_1 <= b`, `ℓ(λ) <= a`.
    pub doubled_rows: BigUint,
}

impl TableauxCounts {
    pub fn agree(&self) -> bool {
        self.even_columns
            .as_ref()
            .is_none_or(|e| *e == self.doubled_columns)
            && self.doubled_columns == self.doubled_rows
    }
}

pub const EVEN_COLUMN_LIMIT: usize = 12;

/// Tableau-side counts of fixed-point-free involutions with
/// `L^in <= a` and `L^de <= 2b`.
pub fn tableaux_side(n: usize, a: usize, b: usize) -> TableauxCounts {
    let cap = b.saturating_mul(2);
    let even_columns = (n <= EVEN_COLUMN_LIMIT).then(|| {
        enumerate_partitions(2 * n, cap.min(2 * n).max(1))
            .filter(|mu| mu.len() <= cap && mu.conjugate().is_even() && mu.part(1) <= a)
            .map(|mu| f_hook(&mu))
            .sum()
    });
    let doubled_columns = enumerate_partitions(n, b.min(n).max(1))
        .filter(|l| l.len() <= b && l.part(1) <= a)
        .map(|l| f_hook(&l.doubled_columns()))
        .sum();
    let doubled_rows = enumerate_partitions(n, a.min(n).max(1))
        .filter(|l| l.len() <= a && l.part(1) <= b)
        .map(|l| f_hook(&l.doubled_rows()))
        .sum();
    TableauxCounts {
        even_columns,
        doubled_columns,
        doubled_rows,
    }
}

/// How the involution side of [`ratio_lemma_check`] is counted.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum InvolutionCounting {
    /// Enumerate `𝔖⁰_{2n}` and test `L^in`, `L^de`; needs `n <= 7`.
    BruteForce,
    /// Sum `f^{λ∪λ}` or `f^{2λ}` over the matching shapes.
    Tableaux,
}

/// Compares the restricted Jack distribution function of `λ_1` at `h` with
/// the involution-count ratio it equals for `α ∈ {1/2, 2}`.
///
/// Returns `(P^{Jack,α}_{n,d}(λ_1 <= h), ratio)`, both exact.
pub fn ratio_lemma_check(
    n: usize,
    d: usize,
    h: usize,
    alpha: &Alpha,
    counting: InvolutionCounting,
) -> Result<(BigRational, BigRational)> {
    let a = alpha
        .as_rational()
        .ok_or_else(|| Error::InvalidArgument("alpha must be exactly 1/2 or 2".into()))?;
    let half = BigRational::new(1.into(), 2.into());
    let two = BigRational::from_integer(2.into());
    let is_half = *a == half;
    if !is_half && *a != two {
        return Err(Error::InvalidArgument(format!(
            "alpha must be exactly 1/2 or 2, got {alpha}"
        )));
    }
    if counting == InvolutionCounting::BruteForce && n > 7 {
        return Err(Error::InvalidArgument(format!(
            "brute-force involution counting is limited to n <= 7, got {n}"
        )));
    }

    let law = RestrictedLaw::build(n, d, alpha, SumOptions::default());
    let mut cdf = BigRational::zero();
    for (lam, w) in law.iter() {
        if lam.part(1) <= h {
            match w {
                Weight::Exact(r) => cdf += r,
                Weight::Log(_) => unreachable!("exact alpha"),
            }
        }
    }

    // α = 1/2: L^in <= h among L^de <= 2d; α = 2: L^de <= 2h among L^in <= d
    let inf = usize::MAX;
    let ((num_a, num_b), (den_a, den_b)) = if is_half {
        ((h, d), (inf, d))
    } else {
        ((d, h), (d, inf))
    };
    let count = |a: usize, b: usize| -> BigUint {
        match counting {
            InvolutionCounting::BruteForce => fpf_count_with_bounds(n, a, b),
            InvolutionCounting::Tableaux => {
                let t = tableaux_side(n, a, b);
                if is_half {
                    t.doubled_columns
                } else {
                    t.doubled_rows
                }
            }
        }
    };
    let num = count(num_a, num_b);
    let den = count(den_a, den_b);
    let ratio = BigRational::new(BigInt::from(num), BigInt::from(den));
    Ok((cdf, ratio))
}

/// Outcome of one exhaustive RSK property check at a fixed size.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuiteLine {
    pub check: &'static str,
    pub size: usize,
    pub cases: u64,
    pub failures: u64,
}

impl SuiteLine {
    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

/// Exhaustive RSK checks: bijection roundtrip, Schensted's theorem and the
/// `(P, Q)` swap under inversion on `𝔖_N` for `N <= max_perm`, and the
/// odd-column rule for involutions with `N <= max_inv`.
pub fn rsk_suite(max_perm: usize, max_inv: usize) -> Vec<SuiteLine> {
    let mut out = Vec::new();
    for n in 1..=max_perm {
        let mut lines = [
            ("roundtrip", 0u64),
            ("schensted", 0),
            ("inverse-swap", 0),
        ];
        let mut cases = 0;
        for sigma in permutations(n) {
            cases += 1;
            let (p, q) = rsk(&sigma);
            if rsk_inverse(&p, &q).ok().as_ref() != Some(&sigma) {
                lines[0].1 += 1;
            }
            let shape = p.shape();
            if longest_increasing(&sigma) != shape.part(1) || longest_decreasing(&sigma) != shape.len() {
                lines[1].1 += 1;
            }
            if rsk(&sigma.inverse()) != (q, p) {
                lines[2].1 += 1;
            }
        }
        for (check, failures) in lines {
            out.push(SuiteLine {
                check,
                size: n,
                cases,
                failures,
            });
        }
    }
    for n in 1..=max_inv {
        let mut cases = 0;
        let mut failures = 0;
        for sigma in involutions(n) {
            cases += 1;
            let (p, q) = rsk(&sigma);
            if p != q || odd_columns(&p.shape()) != sigma.fixed_points() {
                failures += 1;
            }
        }
        out.push(SuiteLine {
            check: "odd-columns",
            size: n,
            cases,
            failures,
        });
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(v: &[usize]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    fn w(v: &[usize]) -> PermutationWord {
        PermutationWord::new(v.to_vec()).unwrap()
    }

    /// Number of SYT of a shape by trying every filling.
    fn brute_syt(shape: &Partition) -> usize {
        let n = shape.weight();
        permutations(n)
            .filter(|perm| {
                let mut rows = Vec::new();
                let mut k = 0;
                for &len in shape.parts() {
                    rows.push(perm.as_slice()[k..k + len].to_vec());
                    k += len;
                }
                StandardTableau::new(rows).is_ok()
            })
            .count()
    }

    #[test]
    fn syt_counts() {
        assert_eq!(f_hook(&p(&[2, 1])), BigUint::from(2u32));
        assert_eq!(f_hook(&p(&[2, 2])), BigUint::from(2u32));
        assert_eq!(f_hook(&p(&[7])), BigUint::one());
        assert_eq!(f_recursive(&p(&[1, 1, 1])), BigUint::one());
        assert_eq!(f_recursive(&p(&[2, 1])), BigUint::from(2u32));
        assert_eq!(f_recursive(&p(&[3, 2])), BigUint::from(5u32));
        assert_eq!(brute_syt(&p(&[3, 2])), 5);
        for n in 0..=12 {
            for l in enumerate_partitions(n, n.max(1)) {
                assert_eq!(f_hook(&l), f_recursive(&l));
            }
        }
    }

    #[test]
    fn rsk_examples() {
        let (pt, qt) = rsk(&PermutationWord::identity(5));
        assert_eq!(pt.rows(), &[vec![1, 2, 3, 4, 5]]);
        assert_eq!(pt, qt);
        let (pt, qt) = rsk(&w(&[2, 1]));
        assert_eq!(pt.rows(), &[vec![1], vec![2]]);
        assert_eq!(pt, qt);
        let id = rsk_inverse(&pt, &qt).unwrap();
        assert_eq!(id, w(&[2, 1]));
        let row = StandardTableau::new(vec![vec![1, 2, 3]]).unwrap();
        assert_eq!(rsk_inverse(&row, &row).unwrap(), PermutationWord::identity(3));
    }

    #[test]
    fn rsk_is_a_bijection_on_s4() {
        let pairs: std::collections::HashSet<_> = permutations(4).map(|s| rsk(&s)).collect();
        assert_eq!(pairs.len(), 24);
        let total: BigUint = enumerate_partitions(4, 4).map(|l| f_hook(&l).pow(2)).sum();
        assert_eq!(total, BigUint::from(24u32));
        for (pt, qt) in &pairs {
            assert!(StandardTableau::new(pt.rows().to_vec()).is_ok());
            assert!(StandardTableau::new(qt.rows().to_vec()).is_ok());
            assert_eq!(pt.shape(), qt.shape());
        }
    }

    #[test]
    fn inverse_shape_mismatch() {
        let a = StandardTableau::new(vec![vec![1, 2]]).unwrap();
        let b = StandardTableau::new(vec![vec![1], vec![2]]).unwrap();
        assert!(matches!(rsk_inverse(&a, &b), Err(Error::ShapeMismatch(..))));
    }

    #[test]
    fn tableau_validation() {
        assert!(StandardTableau::new(vec![vec![1, 3], vec![2]]).is_ok());
        assert!(StandardTableau::new(vec![vec![2, 1]]).is_err());
        assert!(StandardTableau::new(vec![vec![1, 2], vec![3, 4, 5]]).is_err());
        assert!(StandardTableau::new(vec![vec![1, 3], vec![4, 2]]).is_err());
        assert!(PermutationWord::new(vec![1, 1]).is_err());
        assert!(PermutationWord::new(vec![0, 1]).is_err());
    }

    #[test]
    fn monotone_subsequences() {
        let id = PermutationWord::identity(5);
        assert_eq!(longest_increasing(&id), 5);
        assert_eq!(longest_decreasing(&id), 1);
        let rev = w(&[4, 3, 2, 1]);
        assert_eq!(longest_increasing(&rev), 1);
        assert_eq!(longest_decreasing(&rev), 4);
        assert_eq!(longest_increasing(&w(&[3, 1, 4, 2, 5])), 3);
        assert_eq!(longest_decreasing(&w(&[3, 1, 4, 2, 5])), 2);
    }

    #[test]
    fn involution_enumeration() {
        assert_eq!(enumerate_fpf_involutions(2).unwrap(), vec![w(&[2, 1])]);
        assert_eq!(enumerate_fpf_involutions(4).unwrap().len(), 3);
        assert_eq!(enumerate_fpf_involutions(10).unwrap().len(), 945);
        assert_eq!(double_factorial_odd(5), BigUint::from(945u32));
        assert!(matches!(enumerate_fpf_involutions(5), Err(Error::OddSize(5))));
        for s in enumerate_fpf_involutions(8).unwrap() {
            assert!(s.is_involution() && s.is_fixed_point_free());
        }
        // 1, 1, 2, 4, 10, 26, 76 involutions
        let counts: Vec<usize> = (0..7).map(|n| involutions(n).len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 4, 10, 26, 76]);
    }

    #[test]
    fn counting_identity_examples() {
        assert_eq!(fpf_count_with_bounds(2, 1, 2), BigUint::one());
        let t = tableaux_side(2, 1, 2);
        assert!(t.agree());
        assert_eq!(t.doubled_columns, BigUint::one());
        assert_eq!(fpf_count_with_bounds(2, 4, 2), BigUint::from(3u32));
        assert_eq!(tableaux_side(2, 4, 2).doubled_columns, BigUint::from(3u32));
        for n in 1..=5 {
            let all = tableaux_side(n, usize::MAX, usize::MAX);
            assert!(all.agree());
            assert_eq!(all.doubled_rows, double_factorial_odd(n));
            let none = tableaux_side(n, 0, n);
            assert!(none.agree());
            assert!(none.doubled_rows.is_zero());
        }
    }

    #[test]
    fn ratio_lemma_examples() {
        let half = Alpha::exact(1, 2).unwrap();
        let third = BigRational::new(1.into(), 3.into());
        let (jack, inv) = ratio_lemma_check(2, 2, 1, &half, InvolutionCounting::BruteForce).unwrap();
        assert_eq!(jack, third);
        assert_eq!(inv, third);
        let (jack, inv) = ratio_lemma_check(2, 2, 2, &half, InvolutionCounting::BruteForce).unwrap();
        assert_eq!(jack, BigRational::one());
        assert_eq!(inv, BigRational::one());
        let two = Alpha::exact(2, 1).unwrap();
        let (jack, inv) = ratio_lemma_check(3, 2, 3, &two, InvolutionCounting::BruteForce).unwrap();
        assert_eq!(jack, inv);
        for h in 0..=4 {
            let (jack, inv) = ratio_lemma_check(4, 2, h, &two, InvolutionCounting::Tableaux).unwrap();
            assert_eq!(jack, inv);
        }
        assert!(ratio_lemma_check(2, 2, 1, &Alpha::exact(1, 1).unwrap(), InvolutionCounting::Tableaux).is_err());
        assert!(ratio_lemma_check(8, 2, 1, &half, InvolutionCounting::BruteForce).is_err());
    }

    #[test]
    fn suite_small() {
        let lines = rsk_suite(4, 5);
        assert_eq!(lines.len(), 4 * 3 + 5);
        assert!(lines.iter().all(SuiteLine::passed));
        assert_eq!(lines.iter().find(|l| l.check == "odd-columns" && l.size == 5).unwrap().cases, 26);
    }

    #[test]
    fn odd_columns_count() {
        assert_eq!(odd_columns(&p(&[2, 1])), 1);
        assert_eq!(odd_columns(&p(&[2, 2])), 0);
        assert_eq!(odd_columns(&p(&[3])), 3);
    }
}
