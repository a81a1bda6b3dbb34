//! Ordinary characters of `S_n`.
//!
//! Irreducible values come from the Murnaghan–Nakayama rule, evaluated with
//! beta-numbers: removing a rim hook of length `r` moves one bead from `b` to
//! `b - r`, and the sign is `(-1)` to the number of beads jumped over. Cycle
//! parts are stripped largest first and the recursion is memoized on
//! `(remaining shape, remaining cycle suffix)`.

use std::collections::HashMap;
use std::fmt::Write as _;
use std::sync::Arc;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use once_cell::sync::Lazy;
use parking_lot::RwLock;
use rayon::prelude::*;
use thiserror::Error;

use crate::partitions::{factorial, partition_index, Partition, PartitionIndex};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CharacterError {
    #[error("weight mismatch: {left} vs {right}")]
    WeightMismatch { left: usize, right: usize },
    #[error("character of S_{n} needs {expected} class values, got {got}")]
    WrongLength { n: usize, expected: usize, got: usize },
    #[error("character table for n={n} fails {relation} orthogonality at ({a}, {b})")]
    Orthogonality {
        n: usize,
        relation: &'static str,
        a: Partition,
        b: Partition,
    },
}

#[derive(Debug, Error)]
pub enum TableParseError {
    #[error("bad header {0:?}")]
    Header(String),
    #[error("line {line}: {reason}")]
    Line { line: usize, reason: String },
    #[error("expected {expected} rows, found {found}")]
    RowCount { expected: usize, found: usize },
    #[error(transparent)]
    Inconsistent(#[from] CharacterError),
}

/// Conjugacy-class data of `S_n`, shared across the process.
#[derive(Debug)]
pub struct ClassData {
    pub classes: Arc<PartitionIndex>,
    pub sizes: Vec<BigInt>,
    pub order: BigInt,
}

static CLASS_DATA: Lazy<RwLock<HashMap<usize, Arc<ClassData>>>> =
    Lazy::new(|| RwLock::new(HashMap::new()));

pub fn class_data(n: usize) -> Arc<ClassData> {
    if let Some(d) = CLASS_DATA.read().get(&n) {
        return d.clone();
    }
    let classes = partition_index(n);
    let sizes = classes
        .list()
        .iter()
        .map(|mu| BigInt::from(mu.class_size()))
        .collect();
    let built = Arc::new(ClassData {
        classes,
        sizes,
        order: BigInt::from(factorial(n)),
    });
    CLASS_DATA.write().entry(n).or_insert(built).clone()
}

/// Class function on `S_n`, one value per cycle type in canonical order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CharacterVector {
    n: usize,
    values: Vec<BigInt>,
}

impl CharacterVector {
    pub fn new(n: usize, values: Vec<BigInt>) -> Result<Self, CharacterError> {
        let expected = partition_index(n).len();
        if values.len() != expected {
            return Err(CharacterError::WrongLength {
                n,
                expected,
                got: values.len(),
            });
        }
        Ok(Self { n, values })
    }

    pub fn from_fn(n: usize, f: impl Fn(&Partition) -> BigInt) -> Self {
        let values = partition_index(n).list().iter().map(f).collect();
        Self { n, values }
    }

    pub fn zero(n: usize) -> Self {
        Self::from_fn(n, |_| BigInt::zero())
    }

    pub fn trivial(n: usize) -> Self {
        Self::from_fn(n, |_| BigInt::one())
    }

    /// Character of the regular representation.
    pub fn regular(n: usize) -> Self {
        let order = BigInt::from(factorial(n));
        Self::from_fn(n, |mu| {
            if mu.parts().iter().all(|&p| p == 1) {
                order.clone()
            } else {
                BigInt::zero()
            }
        })
    }

    /// Permutation character of `S_n` acting on `[n]`.
    pub fn permutation(n: usize) -> Self {
        Self::from_fn(n, |mu| BigInt::from(mu.parts().iter().filter(|&&p| p == 1).count()))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn values(&self) -> &[BigInt] {
        &self.values
    }

    pub fn value(&self, mu: &Partition) -> Option<&BigInt> {
        partition_index(self.n)
            .position(mu)
            .map(|i| &self.values[i])
    }

    /// Value at the identity.
    pub fn dimension(&self) -> &BigInt {
        self.values.last().expect("every S_n has an identity class")
    }

    fn check_weight(&self, other: &Self) -> Result<(), CharacterError> {
        if self.n != other.n {
            return Err(CharacterError::WeightMismatch {
                left: self.n,
                right: other.n,
            });
        }
        Ok(())
    }

    pub fn pointwise_product(&self, other: &Self) -> Result<Self, CharacterError> {
        self.check_weight(other)?;
        let values = self
            .values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| a * b)
            .collect();
        Ok(Self { n: self.n, values })
    }

    pub fn add(&self, other: &Self) -> Result<Self, CharacterError> {
        self.check_weight(other)?;
        let values = self
            .values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| a + b)
            .collect();
        Ok(Self { n: self.n, values })
    }

    pub fn add_scaled(&mut self, other: &[BigInt], c: &BigInt) {
        for (v, o) in self.values.iter_mut().zip(other) {
            *v += o * c;
        }
    }
}

/// `(1/n!) Σ_μ |C_μ| a(μ) b(μ)`.
pub fn inner_product(a: &CharacterVector, b: &CharacterVector) -> Result<BigRational, CharacterError> {
    a.check_weight(b)?;
    let data = class_data(a.n);
    let sum: BigInt = a
        .values
        .iter()
        .zip(&b.values)
        .zip(&data.sizes)
        .map(|((x, y), s)| x * y * s)
        .sum();
    Ok(BigRational::new(sum, data.order.clone()))
}

fn beta_numbers(shape: &Partition) -> Vec<usize> {
    let l = shape.len();
    shape
        .parts()
        .iter()
        .enumerate()
        .map(|(i, &p)| p + (l - 1 - i))
        .collect()
}

fn from_beta_numbers(mut beta: Vec<usize>) -> Partition {
    beta.sort_unstable_by(|a, b| b.cmp(a));
    let l = beta.len();
    let parts = beta.iter().enumerate().map(|(i, &b)| b - (l - 1 - i)).collect();
    Partition::from_unsorted(parts)
}

/// All ways to remove a rim hook of length `r`: `(remaining shape, sign)`.
pub(crate) fn remove_rim_hooks(shape: &Partition, r: usize) -> Vec<(Partition, i32)> {
    let beta = beta_numbers(shape);
    let mut out = Vec::new();
    for (k, &b) in beta.iter().enumerate() {
        if b < r {
            continue;
        }
        let target = b - r;
        if beta.contains(&target) {
            continue;
        }
        let jumped = beta.iter().filter(|&&g| g > target && g < b).count();
        let mut next = beta.clone();
        next[k] = target;
        let sign = if jumped % 2 == 0 { 1 } else { -1 };
        out.push((from_beta_numbers(next), sign));
    }
    out
}

type MnMemo = HashMap<(Partition, usize), BigInt>;

fn mn_recursive(shape: &Partition, cycles: &[usize], from: usize, memo: &mut MnMemo) -> BigInt {
    if from == cycles.len() {
        return if shape.is_empty() { BigInt::one() } else { BigInt::zero() };
    }
    let key = (shape.clone(), from);
    if let Some(v) = memo.get(&key) {
        return v.clone();
    }
    let mut total = BigInt::zero();
    for (rest, sign) in remove_rim_hooks(shape, cycles[from]) {
        let v = mn_recursive(&rest, cycles, from + 1, memo);
        if sign > 0 {
            total += v;
        } else {
            total -= v;
        }
    }
    memo.insert(key, total.clone());
    total
}

/// `χ_λ(μ)` by the Murnaghan–Nakayama rule.
pub fn mn_character(lambda: &Partition, mu: &Partition) -> Result<BigInt, CharacterError> {
    if lambda.weight() != mu.weight() {
        return Err(CharacterError::WeightMismatch {
            left: lambda.weight(),
            right: mu.weight(),
        });
    }
    Ok(mn_recursive(lambda, mu.parts(), 0, &mut MnMemo::new()))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Provenance {
    Computed,
    Loaded,
}

/// Full character table of `S_n`. Rows are irreducibles and columns are
/// cycle types, both in canonical order.
#[derive(Clone, Debug)]
pub struct CharacterTable {
    n: usize,
    index: Arc<PartitionIndex>,
    rows: Vec<Vec<BigInt>>,
    provenance: Provenance,
}

impl CharacterTable {
    pub fn compute(n: usize) -> Self {
        let idx = partition_index(n);
        let shapes = idx.list();
        // One memo per column: every row shares the cycle suffixes of that column.
        let columns: Vec<Vec<BigInt>> = shapes
            .par_iter()
            .map(|mu| {
                let mut memo = MnMemo::new();
                shapes
                    .iter()
                    .map(|lam| mn_recursive(lam, mu.parts(), 0, &mut memo))
                    .collect()
            })
            .collect();
        let rows = (0..shapes.len())
            .map(|r| columns.iter().map(|col| col[r].clone()).collect())
            .collect();
        Self {
            n,
            index: idx,
            rows,
            provenance: Provenance::Computed,
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn provenance(&self) -> Provenance {
        self.provenance
    }

    pub fn labels(&self) -> &[Partition] {
        self.index.list()
    }

    pub fn row_values(&self, row: usize) -> &[BigInt] {
        &self.rows[row]
    }

    pub fn rows(&self) -> &[Vec<BigInt>] {
        &self.rows
    }

    pub fn character(&self, lambda: &Partition) -> Option<CharacterVector> {
        let i = self.index.position(lambda)?;
        Some(CharacterVector {
            n: self.n,
            values: self.rows[i].clone(),
        })
    }

    pub fn value(&self, lambda: &Partition, mu: &Partition) -> Option<&BigInt> {
        Some(&self.rows[self.index.position(lambda)?][self.index.position(mu)?])
    }

    /// Exact row and column orthogonality.
    pub fn check_orthogonality(&self) -> Result<(), CharacterError> {
        let data = class_data(self.n);
        let labels = data.classes.list();
        let k = labels.len();
        for a in 0..k {
            for b in a..k {
                let s: BigInt = (0..k)
                    .map(|c| &self.rows[a][c] * &self.rows[b][c] * &data.sizes[c])
                    .sum();
                let expected = if a == b { data.order.clone() } else { BigInt::zero() };
                if s != expected {
                    return Err(CharacterError::Orthogonality {
                        n: self.n,
                        relation: "row",
                        a: labels[a].clone(),
                        b: labels[b].clone(),
                    });
                }
            }
        }
        for a in 0..k {
            for b in a..k {
                let s: BigInt = (0..k).map(|r| &self.rows[r][a] * &self.rows[r][b]).sum();
                let expected = if a == b {
                    BigInt::from(labels[a].z())
                } else {
                    BigInt::zero()
                };
                if s != expected {
                    return Err(CharacterError::Orthogonality {
                        n: self.n,
                        relation: "column",
                        a: labels[a].clone(),
                        b: labels[b].clone(),
                    });
                }
            }
        }
        Ok(())
    }

    /// Cache file body: header, then `<λ> : v1 … v_p(n)` per irreducible.
    pub fn to_cache_text(&self) -> String {
        let mut out = format!("chartab v1 n={}\n", self.n);
        for (lam, row) in self.index.list().iter().zip(&self.rows) {
            let _ = write!(out, "{lam} :");
            for v in row {
                let _ = write!(out, " {v}");
            }
            out.push('\n');
        }
        out
    }

    pub fn from_cache_text(text: &str) -> Result<Self, TableParseError> {
        let mut lines = text.lines();
        let header = lines.next().unwrap_or_default();
        let n: usize = header
            .strip_prefix("chartab v1 n=")
            .and_then(|s| s.trim().parse().ok())
            .ok_or_else(|| TableParseError::Header(header.to_string()))?;
        let idx = partition_index(n);
        let mut rows = Vec::with_capacity(idx.len());
        for (line_no, line) in lines.enumerate().map(|(i, l)| (i + 2, l)) {
            if line.trim().is_empty() {
                continue;
            }
            let err = |reason: String| TableParseError::Line { line: line_no, reason };
            let (label, values) = line
                .split_once(':')
                .ok_or_else(|| err("missing ':'".into()))?;
            let label: Partition = label.trim().parse().map_err(|e| err(format!("{e}")))?;
            let expected = idx
                .list()
                .get(rows.len())
                .ok_or_else(|| err("too many rows".into()))?;
            if &label != expected {
                return Err(err(format!("expected row {expected}, found {label}")));
            }
            let row = values
                .split_whitespace()
                .map(|t| t.parse::<BigInt>().map_err(|_| err(format!("bad integer {t:?}"))))
                .collect::<Result<Vec<_>, _>>()?;
            if row.len() != idx.len() {
                return Err(err(format!("expected {} values, found {}", idx.len(), row.len())));
            }
            rows.push(row);
        }
        if rows.len() != idx.len() {
            return Err(TableParseError::RowCount {
                expected: idx.len(),
                found: rows.len(),
            });
        }
        let table = Self {
            n,
            index: idx,
            rows,
            provenance: Provenance::Loaded,
        };
        table.check_orthogonality()?;
        Ok(table)
    }
}

/// Inner products of `chi` with every irreducible, in canonical label order.
pub fn irreducible_inner_products(table: &CharacterTable, chi: &CharacterVector) -> Vec<BigRational> {
    let data = class_data(table.n);
    let weighted: Vec<BigInt> = chi
        .values
        .iter()
        .zip(&data.sizes)
        .map(|(v, s)| v * s)
        .collect();
    table
        .rows
        .par_iter()
        .map(|row| {
            let s: BigInt = row.iter().zip(&weighted).map(|(a, b)| a * b).sum();
            BigRational::new(s, data.order.clone())
        })
        .collect()
}

pub fn is_nonnegative_integer(q: &BigRational) -> Option<BigUint> {
    if q.is_integer() && !q.is_negative() {
        q.to_integer().to_biguint()
    } else {
        None
    }
}
