//! Partitions, level-`k` multiplicity vectors, fusion specs and the
//! partition chains `mu^(1) ⊂ .. ⊂ mu^(n)` that index fusion products.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};

/// A weakly decreasing list of positive integers. Trailing zeros are never
/// stored; indexing past the last row yields 0.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Partition(Vec<u32>);

impl Partition {
    pub fn empty() -> Self {
        Partition(Vec::new())
    }

    /// Accepts trailing zeros and strips them; rejects increasing rows.
    pub fn new(mut rows: Vec<u32>) -> Result<Self> {
        while rows.last() == Some(&0) {
            rows.pop();
        }
        if rows.windows(2).any(|w| w[0] < w[1]) {
            return Err(domain(format!("{rows:?} is not weakly decreasing")));
        }
        if rows.contains(&0) {
            return Err(domain(format!("{rows:?} has an interior zero")));
        }
        Ok(Partition(rows))
    }

    /// Builds a partition from a signed vector, if it is one.
    pub fn from_vec(v: &[i64]) -> Option<Self> {
        if v.iter().any(|&x| x < 0) {
            return None;
        }
        Partition::new(v.iter().map(|&x| x as u32).collect()).ok()
    }

    pub fn rows(&self) -> &[u32] {
        &self.0
    }

    /// Number of nonzero rows.
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Row `i`, 1-based as in the usual notation; 0 beyond the length.
    pub fn part(&self, i: usize) -> u32 {
        if i == 0 {
            return 0;
        }
        self.0.get(i - 1).copied().unwrap_or(0)
    }

    pub fn size(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn conjugate(&self) -> Partition {
        let width = self.0.first().copied().unwrap_or(0);
        Partition(
            (1..=width)
                .map(|j| self.0.iter().filter(|&&r| r >= j).count() as u32)
                .collect(),
        )
    }

    pub fn contains(&self, other: &Partition) -> bool {
        other.len() <= self.len() && other.0.iter().zip(&self.0).all(|(a, b)| a <= b)
    }

    /// Componentwise `self - other` over `max(len)` rows.
    pub fn minus(&self, other: &Partition) -> Vec<i64> {
        let n = self.len().max(other.len());
        (1..=n).map(|i| self.part(i) as i64 - other.part(i) as i64).collect()
    }

    /// `self + v` componentwise; `None` if the result is not a partition.
    pub fn plus_vec(&self, v: &[i64]) -> Option<Partition> {
        let n = self.len().max(v.len());
        let sum: Vec<i64> = (1..=n)
            .map(|i| self.part(i) as i64 + v.get(i - 1).copied().unwrap_or(0))
            .collect();
        Partition::from_vec(&sum)
    }

    /// All partitions `nu` with `outer ⊃ nu ⊃ inner`.
    pub fn between(outer: &Partition, inner: &Partition) -> Vec<Partition> {
        let mut out = Vec::new();
        if !outer.contains(inner) {
            return out;
        }
        let mut cur = Vec::with_capacity(outer.len());
        fill_between(outer, inner, 1, u32::MAX, &mut cur, &mut out);
        out
    }

    /// All partitions of `n`, in reverse lexicographic order.
    pub fn all_of(n: u32) -> Vec<Partition> {
        let mut out = Vec::new();
        let mut cur = Vec::new();
        fill_all(n, n, &mut cur, &mut out);
        out
    }
}

fn fill_between(
    outer: &Partition,
    inner: &Partition,
    row: usize,
    cap: u32,
    cur: &mut Vec<u32>,
    out: &mut Vec<Partition>,
) {
    if row > outer.len() {
        out.push(Partition::new(cur.clone()).expect("generated rows are a partition"));
        return;
    }
    let hi = outer.part(row).min(cap);
    let lo = inner.part(row);
    for v in (lo..=hi).rev() {
        cur.push(v);
        fill_between(outer, inner, row + 1, v, cur, out);
        cur.pop();
    }
}

fn fill_all(rest: u32, cap: u32, cur: &mut Vec<u32>, out: &mut Vec<Partition>) {
    if rest == 0 {
        out.push(Partition(cur.clone()));
        return;
    }
    for v in (1..=rest.min(cap)).rev() {
        cur.push(v);
        fill_all(rest - v, v, cur, out);
        cur.pop();
    }
}

/// Index of the last nonzero entry plus one.
pub fn vec_length(v: &[i64]) -> usize {
    v.iter().rposition(|&x| x != 0).map_or(0, |i| i + 1)
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "-");
        }
        let s: Vec<String> = self.0.iter().map(|r| r.to_string()).collect();
        write!(f, "{}", s.join(","))
    }
}

impl FromStr for Partition {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "-" || s.is_empty() {
            return Ok(Partition::empty());
        }
        let rows = s
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<u32>()
                    .map_err(|_| Error::Parse(format!("bad row {t:?} in {s:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        if rows.contains(&0) {
            return Err(Error::Parse(format!("zero row in {s:?}")));
        }
        Partition::new(rows).map_err(|e| Error::Parse(e.to_string()))
    }
}

/// `mu = (k^{m_k} .. 1^{m_1})'` from the multiplicity vector `(m_1..m_k)`.
pub fn mvec_to_partition(m: &[u32], k: usize) -> Result<Partition> {
    if m.len() != k {
        return Err(domain(format!("m-vector has length {}, level is {k}", m.len())));
    }
    let mut cols = Vec::new();
    for (i, &mult) in m.iter().enumerate().rev() {
        cols.extend(std::iter::repeat_n(i as u32 + 1, mult as usize));
    }
    Ok(Partition(cols).conjugate())
}

/// Inverse of [`mvec_to_partition`]; requires at most `k` rows.
pub fn partition_to_mvec(mu: &Partition, k: usize) -> Result<Vec<u32>> {
    if mu.len() > k {
        return Err(Error::Shape(format!("{mu} has {} rows, level is {k}", mu.len())));
    }
    Ok((1..=k).map(|i| mu.part(i) - mu.part(i + 1)).collect())
}

/// A factor `V^(n)_k` of a fusion product.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Factor {
    pub n: u32,
    pub k: u32,
}

impl fmt::Display for Factor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.n, self.k)
    }
}

/// Parses the `n:k,n:k,...` factor list; `-` or an empty string is the
/// empty list.
pub fn parse_factors(s: &str) -> Result<Vec<Factor>> {
    let s = s.trim();
    if s.is_empty() || s == "-" {
        return Ok(Vec::new());
    }
    s.split(',')
        .map(|item| {
            let (n, k) = item
                .split_once(':')
                .ok_or_else(|| Error::Parse(format!("expected n:k, got {item:?}")))?;
            let n = n
                .trim()
                .parse::<u32>()
                .map_err(|_| Error::Parse(format!("bad n in {item:?}")))?;
            let k = k
                .trim()
                .parse::<u32>()
                .map_err(|_| Error::Parse(format!("bad k in {item:?}")))?;
            Ok(Factor { n, k })
        })
        .collect()
}

/// `mu^(1) ⊂ .. ⊂ mu^(n)`, stored bottom-up: `levels()[a-1] = mu^(a)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct MChain {
    levels: Vec<Partition>,
}

impl MChain {
    pub fn new(levels: Vec<Partition>) -> Result<Self> {
        if levels.is_empty() {
            return Err(domain("a chain needs at least one level"));
        }
        for (a, w) in levels.windows(2).enumerate() {
            if !w[1].contains(&w[0]) {
                return Err(domain(format!(
                    "mu^({}) = {} is not contained in mu^({}) = {}",
                    a + 1,
                    w[0],
                    a + 2,
                    w[1]
                )));
            }
        }
        Ok(MChain { levels })
    }

    /// `[mu, ∅, .., ∅]` of rank `n`.
    pub fn top_only(mu: Partition, n: usize) -> Self {
        assert!(n >= 1);
        let mut levels = vec![Partition::empty(); n - 1];
        levels.push(mu);
        MChain { levels }
    }

    pub fn rank(&self) -> usize {
        self.levels.len()
    }

    pub fn levels(&self) -> &[Partition] {
        &self.levels
    }

    /// `mu^(a)`, 1-based.
    pub fn level(&self, a: usize) -> &Partition {
        &self.levels[a - 1]
    }

    pub fn top(&self) -> &Partition {
        self.levels.last().expect("nonempty chain")
    }

    /// Differences `mu^(a) - mu^(a-1)` are all partitions, so the chain
    /// comes from a fusion spec.
    pub fn is_spec_chain(&self) -> bool {
        let mut prev = Partition::empty();
        for p in &self.levels {
            if Partition::from_vec(&p.minus(&prev)).is_none() {
                return false;
            }
            prev = p.clone();
        }
        true
    }

    /// Factors `(b, k)` read off the columns of `kappa^(b) = mu^(b) - mu^(b-1)`,
    /// including level-1 factors.
    pub fn factors(&self) -> Result<Vec<Factor>> {
        let mut prev = Partition::empty();
        let mut out = Vec::new();
        for (b, p) in self.levels.iter().enumerate() {
            let kappa = Partition::from_vec(&p.minus(&prev))
                .ok_or_else(|| domain(format!("chain {self} is not spec-derived at level {}", b + 1)))?;
            for &k in kappa.conjugate().rows() {
                out.push(Factor { n: b as u32 + 1, k });
            }
            prev = p.clone();
        }
        Ok(out)
    }

    pub(crate) fn with_level(&self, a: usize, p: Partition) -> MChain {
        let mut levels = self.levels.clone();
        levels[a - 1] = p;
        MChain { levels }
    }

    pub(crate) fn drop_top(&self) -> MChain {
        MChain {
            levels: self.levels[..self.levels.len() - 1].to_vec(),
        }
    }

    /// Canonical text key, top level first: `3,2|1,1`.
    pub fn key(&self) -> String {
        self.levels
            .iter()
            .rev()
            .map(|p| p.to_string())
            .collect::<Vec<_>>()
            .join("|")
    }
}

impl fmt::Display for MChain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.levels.iter().rev().map(|p| format!("({p})")).collect();
        write!(f, "[{}]", parts.join(","))
    }
}

/// A normalized fusion product `V^(n_1)_{k_1} * .. * V^(n_N)_{k_N}` of rank
/// `n`: factors with `n_p = 1` or `k_p = 0` removed, sorted by `n`
/// descending then `k` descending.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FusionSpec {
    rank: usize,
    factors: Vec<Factor>,
    counts: Vec<usize>,
    chain: MChain,
}

impl FusionSpec {
    pub fn new(factors: &[Factor], rank: usize) -> Result<Self> {
        normalize_spec(factors, rank)
    }

    pub fn parse(s: &str, rank: Option<usize>) -> Result<Self> {
        let factors = parse_factors(s)?;
        let rank = rank.unwrap_or_else(|| factors.iter().map(|f| f.n as usize).max().unwrap_or(1).max(1));
        normalize_spec(&factors, rank)
    }

    /// Spec whose normalized chain is `chain`, up to level-1 factors.
    pub fn from_chain(chain: &MChain) -> Result<Self> {
        normalize_spec(&chain.factors()?, chain.rank())
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn factors(&self) -> &[Factor] {
        &self.factors
    }

    pub fn num_factors(&self) -> usize {
        self.factors.len()
    }

    /// `N_a = #{p : n_p > a}` for `a = 0..=n`.
    pub fn big_n(&self, a: usize) -> usize {
        self.counts.get(a).copied().unwrap_or(0)
    }

    /// `X_a`: indices of the factors on which `x_a` acts.
    pub fn x_set(&self, a: usize) -> Vec<usize> {
        (0..self.factors.len())
            .filter(|&p| self.factors[p].n as usize > a)
            .collect()
    }

    pub fn chain(&self) -> &MChain {
        &self.chain
    }

    pub fn total_boxes(&self) -> u32 {
        self.factors.iter().map(|f| f.k).sum()
    }

    /// `prod_p binom(k_p + n_p - 1, n_p - 1)`.
    pub fn dimension(&self) -> u128 {
        self.factors
            .iter()
            .map(|f| binomial(f.k as u64 + f.n as u64 - 1, f.n as u64 - 1))
            .product()
    }

    /// Largest `sum_p k_p` restricted to factors in `X_a` (weight cap).
    pub fn weight_cap(&self, a: usize) -> u32 {
        self.factors.iter().filter(|f| f.n as usize > a).map(|f| f.k).sum()
    }

    pub fn to_spec_string(&self) -> String {
        if self.factors.is_empty() {
            return "-".to_string();
        }
        self.factors.iter().map(|f| f.to_string()).collect::<Vec<_>>().join(",")
    }
}

impl fmt::Display for FusionSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (rank {})", self.to_spec_string(), self.rank)
    }
}

pub fn binomial(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

/// Sorts and prunes the factor list and derives `N_a`, `X_a` and the chain.
pub fn normalize_spec(factors: &[Factor], rank: usize) -> Result<FusionSpec> {
    if rank < 1 {
        return Err(domain("rank must be at least 1"));
    }
    if let Some(f) = factors.iter().find(|f| f.n < 1 || f.n as usize > rank) {
        return Err(domain(format!("factor {f} outside 1..={rank}")));
    }
    let mut kept: Vec<Factor> = factors.iter().copied().filter(|f| f.n >= 2 && f.k > 0).collect();
    kept.sort_by(|a, b| b.cmp(a));
    let counts: Vec<usize> = (0..=rank)
        .map(|a| kept.iter().filter(|f| f.n as usize > a).count())
        .collect();
    let mut levels = Vec::with_capacity(rank);
    let mut acc = Partition::empty();
    for b in 1..=rank {
        let ks: Vec<u32> = kept.iter().filter(|f| f.n as usize == b).map(|f| f.k).collect();
        let kappa = Partition::new(ks)?.conjugate();
        let sum: Vec<i64> = (1..=acc.len().max(kappa.len()))
            .map(|i| acc.part(i) as i64 + kappa.part(i) as i64)
            .collect();
        acc = Partition::from_vec(&sum).expect("sum of partitions");
        levels.push(acc.clone());
    }
    Ok(FusionSpec {
        rank,
        factors: kept,
        counts,
        chain: MChain { levels },
    })
}

/// `mu(nu, k) = sum_p (sum_{a < n_p} nu_a - k_p)_+`, `nu` indexed `a = 1..n-1`.
pub fn mu_nu_k(nu: &[u32], spec: &FusionSpec) -> Result<u32> {
    if nu.len() + 1 != spec.rank() {
        return Err(domain(format!(
            "nu has length {}, expected {}",
            nu.len(),
            spec.rank() - 1
        )));
    }
    Ok(spec
        .factors()
        .iter()
        .map(|f| {
            let s: i64 = nu[..f.n as usize - 1].iter().map(|&x| x as i64).sum();
            (s - f.k as i64).max(0) as u32
        })
        .sum())
}
