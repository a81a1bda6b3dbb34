//! `S_n`-representations up to isomorphism, stored as multiplicities of
//! irreducibles, and the operations the rest of the engine needs on them.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_traits::Zero;
use thiserror::Error;

use crate::cache::{CharacterStore, StoreError};
use crate::characters::{irreducible_inner_products, is_nonnegative_integer, CharacterError, CharacterVector};
use crate::partitions::{partition_index, Partition};

#[derive(Debug, Error)]
pub enum RepError {
    #[error("weight mismatch: {left} vs {right}")]
    WeightMismatch { left: usize, right: usize },
    #[error("virtual character: multiplicity of {partition} is {value}")]
    Virtual { partition: Partition, value: String },
    #[error("cannot induce from weight {from} to {to}")]
    InductionTarget { from: usize, to: usize },
    #[error("partition {partition} has weight {weight}, expected {n}")]
    WrongWeight { partition: Partition, weight: usize, n: usize },
    #[error("cannot parse decomposition {text:?}: {reason}")]
    Parse { text: String, reason: String },
    #[error(transparent)]
    Character(#[from] CharacterError),
    #[error(transparent)]
    Store(#[from] StoreError),
}

/// A representation of `S_n` as `⊕ V_λ^{m_λ}`.
#[derive(Clone, PartialEq, Eq, Debug, Hash)]
pub struct RepDecomposition {
    n: usize,
    mults: BTreeMap<Partition, BigUint>,
}

/// A partition whose multiplicity is larger on the left than on the right.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Excess {
    pub partition: Partition,
    pub left: BigUint,
    pub right: BigUint,
}

impl RepDecomposition {
    pub fn zero(n: usize) -> Self {
        Self {
            n,
            mults: BTreeMap::new(),
        }
    }

    pub fn irreducible(lambda: Partition) -> Self {
        let n = lambda.weight();
        let mut mults = BTreeMap::new();
        mults.insert(lambda, BigUint::from(1u32));
        Self { n, mults }
    }

    pub fn from_terms<I, M>(n: usize, terms: I) -> Result<Self, RepError>
    where
        I: IntoIterator<Item = (Partition, M)>,
        M: Into<BigUint>,
    {
        let mut out = Self::zero(n);
        for (lambda, m) in terms {
            out.add_term(lambda, m.into())?;
        }
        Ok(out)
    }

    /// Regular representation: every irreducible with multiplicity its dimension.
    pub fn regular(n: usize) -> Self {
        let mut out = Self::zero(n);
        for lambda in crate::partitions::enumerate_partitions(n) {
            let d = lambda.hook_dimension();
            out.mults.insert(lambda, d);
        }
        out
    }

    pub fn add_term(&mut self, lambda: Partition, m: BigUint) -> Result<(), RepError> {
        if lambda.weight() != self.n {
            return Err(RepError::WrongWeight {
                weight: lambda.weight(),
                partition: lambda,
                n: self.n,
            });
        }
        if !m.is_zero() {
            *self.mults.entry(lambda).or_default() += m;
        }
        Ok(())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn mult(&self, lambda: &Partition) -> BigUint {
        self.mults.get(lambda).cloned().unwrap_or_default()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Partition, &BigUint)> {
        self.mults.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.mults.is_empty()
    }

    /// Number of distinct irreducible summands.
    pub fn len(&self) -> usize {
        self.mults.len()
    }

    pub fn is_empty(&self) -> bool {
        self.mults.is_empty()
    }

    pub fn dimension(&self) -> BigUint {
        self.mults
            .iter()
            .map(|(lambda, m)| lambda.hook_dimension() * m)
            .sum()
    }

    fn check_weight(&self, other: &Self) -> Result<(), RepError> {
        if self.n != other.n {
            return Err(RepError::WeightMismatch {
                left: self.n,
                right: other.n,
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self, RepError> {
        self.check_weight(other)?;
        let mut out = self.clone();
        for (lambda, m) in &other.mults {
            *out.mults.entry(lambda.clone()).or_default() += m;
        }
        Ok(out)
    }

    /// First partition (canonical order) where `self` has more copies than `other`.
    pub fn first_excess_over(&self, other: &Self) -> Option<Excess> {
        self.mults.iter().find_map(|(lambda, m)| {
            let theirs = other.mult(lambda);
            (m > &theirs).then(|| Excess {
                partition: lambda.clone(),
                left: m.clone(),
                right: theirs,
            })
        })
    }

    /// `self ⊆ other` summand-wise.
    pub fn is_contained_in(&self, other: &Self) -> bool {
        self.n == other.n && self.first_excess_over(other).is_none()
    }

    /// `self - other`, or the first partition where `other` exceeds `self`.
    pub fn checked_sub(&self, other: &Self) -> Result<Self, Excess> {
        if let Some(e) = other.first_excess_over(self) {
            return Err(e);
        }
        let mut out = self.clone();
        for (lambda, m) in &other.mults {
            let slot = out.mults.get_mut(lambda).expect("checked above");
            *slot -= m;
            if slot.is_zero() {
                out.mults.remove(lambda);
            }
        }
        Ok(out)
    }

    pub fn character(&self, store: &CharacterStore) -> Result<CharacterVector, RepError> {
        let table = store.table(self.n)?;
        let mut chi = CharacterVector::zero(self.n);
        for (lambda, m) in &self.mults {
            let row = partition_index(self.n)
                .position(lambda)
                .expect("table rows cover every partition");
            chi.add_scaled(table.row_values(row), &BigInt::from(m.clone()));
        }
        Ok(chi)
    }

    pub fn parse(text: &str, n: usize) -> Result<Self, RepError> {
        let err = |reason: String| RepError::Parse {
            text: text.to_string(),
            reason,
        };
        let trimmed = text.trim();
        let mut out = Self::zero(n);
        if trimmed == "0" {
            return Ok(out);
        }
        for term in trimmed.split(" + ") {
            let (m, lambda) = term
                .trim()
                .split_once('*')
                .ok_or_else(|| err(format!("term {term:?} lacks '*'")))?;
            let m: BigUint = m.trim().parse().map_err(|_| err(format!("bad multiplicity {m:?}")))?;
            let lambda: Partition = lambda.trim().parse().map_err(|e| err(format!("{e}")))?;
            out.add_term(lambda, m)?;
        }
        Ok(out)
    }
}

impl fmt::Display for RepDecomposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.mults.is_empty() {
            return f.write_str("0");
        }
        for (i, (lambda, m)) in self.mults.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "{m}*{lambda}")?;
        }
        Ok(())
    }
}

/// Multiplicities `⟨χ, χ_λ⟩` of a genuine character.
pub fn decompose(chi: &CharacterVector, store: &CharacterStore) -> Result<RepDecomposition, RepError> {
    let table = store.table(chi.n())?;
    let products = irreducible_inner_products(&table, chi);
    let mut out = RepDecomposition::zero(chi.n());
    for (lambda, q) in table.labels().iter().zip(products) {
        match is_nonnegative_integer(&q) {
            Some(m) => out.add_term(lambda.clone(), m)?,
            None => {
                return Err(RepError::Virtual {
                    partition: lambda.clone(),
                    value: q.to_string(),
                })
            }
        }
    }
    Ok(out)
}

/// Inner tensor product `a ⊗ b`, via pointwise multiplication of characters.
pub fn kronecker(
    a: &RepDecomposition,
    b: &RepDecomposition,
    store: &CharacterStore,
) -> Result<RepDecomposition, RepError> {
    a.check_weight(b)?;
    if a.is_zero() || b.is_zero() {
        return Ok(RepDecomposition::zero(a.n));
    }
    let chi = a.character(store)?.pointwise_product(&b.character(store)?)?;
    decompose(&chi, store)
}

/// Partitions obtained from `lambda` by adding a horizontal strip of `k` boxes.
pub fn horizontal_strips(lambda: &Partition, k: usize) -> Vec<Partition> {
    fn place(
        lambda: &Partition,
        row: usize,
        left: usize,
        current: &mut Vec<usize>,
        out: &mut Vec<Partition>,
    ) {
        if row == lambda.len() {
            // The new row below the diagram is bounded by the last row.
            let cap = if row == 0 { usize::MAX } else { lambda.part(row - 1) };
            if left <= cap {
                let mut parts = current.clone();
                if left > 0 {
                    parts.push(left);
                }
                out.push(Partition::from_unsorted(parts));
            }
            return;
        }
        let base = lambda.part(row);
        let cap = if row == 0 { usize::MAX } else { lambda.part(row - 1) - base };
        for add in 0..=left.min(cap) {
            current.push(base + add);
            place(lambda, row + 1, left - add, current, out);
            current.pop();
        }
    }
    let mut out = Vec::new();
    place(lambda, 0, k, &mut Vec::with_capacity(lambda.len() + 1), &mut out);
    out
}

/// `Ind_{S_a × S_{n-a}}^{S_n} (w ⊠ trivial)` by the Pieri rule.
pub fn pieri_induct(w: &RepDecomposition, n: usize) -> Result<RepDecomposition, RepError> {
    if n < w.n {
        return Err(RepError::InductionTarget { from: w.n, to: n });
    }
    let mut out = RepDecomposition::zero(n);
    for (lambda, m) in &w.mults {
        for mu in horizontal_strips(lambda, n - w.n) {
            *out.mults.entry(mu).or_default() += m;
        }
    }
    Ok(out)
}

/// Tensor with the sign representation: conjugates every label.
pub fn sign_twist(d: &RepDecomposition) -> RepDecomposition {
    RepDecomposition {
        n: d.n,
        mults: d
            .mults
            .iter()
            .map(|(lambda, m)| (lambda.conjugate(), m.clone()))
            .collect(),
    }
}
