//! Integer partitions: enumeration, conjugation, class sizes and hook dimensions.
//!
//! The canonical order on partitions is weight first, then reverse
//! lexicographic within a weight, so `[4] < [3,1] < [2,2] < [2,1,1] < [1,1,1,1]`.
//! Every ordered container in the crate (cache files, decomposition text,
//! character table columns) follows this order.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use num_bigint::BigUint;
use num_traits::One;
use once_cell::sync::Lazy;
use parking_lot::RwLock;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PartitionError {
    #[error("partition parts must be positive, got {0:?}")]
    ZeroPart(Vec<usize>),
    #[error("partition parts must be weakly decreasing, got {0:?}")]
    NotDecreasing(Vec<usize>),
    #[error("cannot parse partition from {0:?}")]
    Parse(String),
    #[error("first-row growth target {target} must exceed the weight {weight}")]
    GrowthTarget { weight: usize, target: usize },
}

/// A weakly decreasing sequence of positive integers.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Partition {
    parts: Vec<usize>,
    weight: usize,
}

impl Partition {
    pub fn new(parts: Vec<usize>) -> Result<Self, PartitionError> {
        if parts.contains(&0) {
            return Err(PartitionError::ZeroPart(parts));
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(PartitionError::NotDecreasing(parts));
        }
        Ok(Self::from_sorted(parts))
    }

    /// Sorts the parts and drops zeros.
    pub fn from_unsorted(mut parts: Vec<usize>) -> Self {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Self::from_sorted(parts)
    }

    fn from_sorted(parts: Vec<usize>) -> Self {
        let weight = parts.iter().sum();
        Self { parts, weight }
    }

    pub fn empty() -> Self {
        Self::default()
    }

    /// The one-row partition `(n)`; empty for `n = 0`.
    pub fn row(n: usize) -> Self {
        if n == 0 {
            Self::empty()
        } else {
            Self::from_sorted(vec![n])
        }
    }

    /// The one-column partition `(1^n)`.
    pub fn column(n: usize) -> Self {
        Self::from_sorted(vec![1; n])
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn weight(&self) -> usize {
        self.weight
    }

    /// Number of parts.
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// The `i`-th part (0-based), zero past the end.
    pub fn part(&self, i: usize) -> usize {
        self.parts.get(i).copied().unwrap_or(0)
    }

    pub fn conjugate(&self) -> Self {
        let first = self.part(0);
        let parts = (0..first)
            .map(|c| self.parts.iter().take_while(|&&p| p > c).count())
            .collect();
        Self::from_sorted(parts)
    }

    /// `(part, multiplicity)` pairs, largest part first.
    pub fn multiplicities(&self) -> Vec<(usize, usize)> {
        let mut out: Vec<(usize, usize)> = Vec::new();
        for &p in &self.parts {
            match out.last_mut() {
                Some((q, m)) if *q == p => *m += 1,
                _ => out.push((p, 1)),
            }
        }
        out
    }

    /// Centralizer order `z_λ = Π j^{m_j} m_j!`.
    pub fn z(&self) -> BigUint {
        self.multiplicities()
            .into_iter()
            .fold(BigUint::one(), |acc, (p, m)| {
                acc * BigUint::from(p).pow(m as u32) * factorial(m)
            })
    }

    /// Size of the conjugacy class of cycle type `self` in `S_n`.
    pub fn class_size(&self) -> BigUint {
        factorial(self.weight) / self.z()
    }

    /// Sign of a permutation with this cycle type.
    pub fn sign(&self) -> i32 {
        if (self.weight - self.len()).is_multiple_of(2) {
            1
        } else {
            -1
        }
    }

    /// Dimension of the irreducible `V_λ` by the hook length formula.
    pub fn hook_dimension(&self) -> BigUint {
        let conj = self.conjugate();
        let mut hooks = BigUint::one();
        for (i, &row) in self.parts.iter().enumerate() {
            for j in 0..row {
                let arm = row - j - 1;
                let leg = conj.part(j) - i - 1;
                hooks *= BigUint::from(arm + leg + 1);
            }
        }
        factorial(self.weight) / hooks
    }

    /// Adds `target - |λ|` boxes to the first row.
    pub fn first_row_grow(&self, target: usize) -> Result<Self, PartitionError> {
        if target <= self.weight {
            return Err(PartitionError::GrowthTarget {
                weight: self.weight,
                target,
            });
        }
        let mut parts = self.parts.clone();
        let extra = target - self.weight;
        match parts.first_mut() {
            Some(p) => *p += extra,
            None => parts.push(extra),
        }
        Ok(Self::from_sorted(parts))
    }
}

impl Ord for Partition {
    fn cmp(&self, other: &Self) -> Ordering {
        self.weight
            .cmp(&other.weight)
            .then_with(|| other.parts.cmp(&self.parts))
    }
}

impl PartialOrd for Partition {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{p}")?;
        }
        f.write_str("]")
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Partition {
    type Err = PartitionError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || PartitionError::Parse(s.to_string());
        let inner = s
            .trim()
            .strip_prefix('[')
            .and_then(|r| r.strip_suffix(']'))
            .ok_or_else(bad)?
            .trim();
        if inner.is_empty() {
            return Ok(Self::empty());
        }
        let parts = inner
            .split(',')
            .map(|t| t.trim().parse::<usize>().map_err(|_| bad()))
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(parts)
    }
}

impl serde::Serialize for Partition {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// All partitions of `n` in canonical (reverse lexicographic) order.
pub fn enumerate_partitions(n: usize) -> Vec<Partition> {
    fn fill(remaining: usize, max: usize, current: &mut Vec<usize>, out: &mut Vec<Partition>) {
        if remaining == 0 {
            out.push(Partition::from_sorted(current.clone()));
            return;
        }
        for first in (1..=max.min(remaining)).rev() {
            current.push(first);
            fill(remaining - first, first, current, out);
            current.pop();
        }
    }
    let mut out = Vec::new();
    fill(n, n, &mut Vec::with_capacity(n), &mut out);
    out
}

/// Partitions of `n` with a position lookup.
#[derive(Debug)]
pub struct PartitionIndex {
    n: usize,
    list: Vec<Partition>,
    positions: HashMap<Partition, usize>,
}

impl PartitionIndex {
    fn build(n: usize) -> Self {
        let list = enumerate_partitions(n);
        let positions = list.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
        Self { n, list, positions }
    }

    pub fn weight(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.list.len()
    }

    pub fn is_empty(&self) -> bool {
        self.list.is_empty()
    }

    pub fn list(&self) -> &[Partition] {
        &self.list
    }

    pub fn position(&self, p: &Partition) -> Option<usize> {
        self.positions.get(p).copied()
    }
}

static INDICES: Lazy<RwLock<HashMap<usize, Arc<PartitionIndex>>>> =
    Lazy::new(|| RwLock::new(HashMap::new()));

/// Shared, memoized index of the partitions of `n`.
pub fn partition_index(n: usize) -> Arc<PartitionIndex> {
    if let Some(idx) = INDICES.read().get(&n) {
        return idx.clone();
    }
    let built = Arc::new(PartitionIndex::build(n));
    INDICES.write().entry(n).or_insert(built).clone()
}

pub fn factorial(n: usize) -> BigUint {
    (1..=n).fold(BigUint::one(), |acc, k| acc * BigUint::from(k))
}

pub fn binomial(n: usize, k: usize) -> BigUint {
    if k > n {
        return BigUint::from(0u32);
    }
    let k = k.min(n - k);
    (0..k).fold(BigUint::one(), |acc, i| acc * BigUint::from(n - i) / BigUint::from(i + 1))
}

/// Signless Stirling numbers of the first kind `c(n, k)`.
pub fn stirling_cycle(n: usize, k: usize) -> BigUint {
    let mut row = vec![BigUint::one()];
    for m in 0..n {
        let mut next = vec![BigUint::from(0u32); row.len() + 1];
        for (j, c) in row.iter().enumerate() {
            next[j + 1] += c;
            next[j] += c * BigUint::from(m);
        }
        row = next;
    }
    row.get(k).cloned().unwrap_or_default()
}
