//! Symmetric functions over ℚ in the power-sum basis.
//!
//! Products and plethysm are monomial substitutions in this basis; Schur
//! expansions only appear at the `from_rep` / `to_rep` boundary, through the
//! character tables.

use std::collections::{BTreeMap, HashMap};
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use thiserror::Error;

use crate::cache::{CharacterStore, StoreError};
use crate::characters::CharacterVector;
use crate::partitions::{enumerate_partitions, Partition};
use crate::rep_algebra::{RepDecomposition, RepError};

#[derive(Debug, Error)]
pub enum SymFuncError {
    #[error("not a genuine character: Schur coefficient of {partition} is {coefficient}")]
    NotGenuine { partition: Partition, coefficient: String },
    #[error("term {partition} has degree {found}, expected {expected}")]
    NotHomogeneous {
        partition: Partition,
        expected: usize,
        found: usize,
    },
    #[error("class value at {partition} is not an integer: {value}")]
    NonIntegralClassValue { partition: Partition, value: String },
    #[error(transparent)]
    Rep(#[from] RepError),
    #[error(transparent)]
    Store(#[from] StoreError),
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SymFunc {
    terms: BTreeMap<Partition, BigRational>,
}

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

fn union(a: &Partition, b: &Partition) -> Partition {
    let mut parts = a.parts().to_vec();
    parts.extend_from_slice(b.parts());
    Partition::from_unsorted(parts)
}

pub fn mobius(n: usize) -> i64 {
    let mut m = n;
    let mut result = 1;
    let mut p = 2;
    while p * p <= m {
        if m.is_multiple_of(p) {
            m /= p;
            if m.is_multiple_of(p) {
                return 0;
            }
            result = -result;
        }
        p += 1;
    }
    if m > 1 {
        result = -result;
    }
    result
}

impl SymFunc {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::power_sum(Partition::empty())
    }

    pub fn power_sum(lambda: Partition) -> Self {
        Self::term(lambda, BigRational::one())
    }

    pub fn term(lambda: Partition, c: BigRational) -> Self {
        let mut out = Self::zero();
        out.add_term(lambda, c);
        out
    }

    pub fn add_term(&mut self, lambda: Partition, c: BigRational) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(lambda.clone()).or_insert_with(BigRational::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&lambda);
        }
    }

    pub fn terms(&self) -> &BTreeMap<Partition, BigRational> {
        &self.terms
    }

    pub fn coefficient(&self, lambda: &Partition) -> BigRational {
        self.terms.get(lambda).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn max_degree(&self) -> Option<usize> {
        self.terms.keys().map(Partition::weight).max()
    }

    /// The common degree of all terms, if homogeneous and nonzero.
    pub fn homogeneous_degree(&self) -> Option<usize> {
        let mut degrees = self.terms.keys().map(Partition::weight);
        let first = degrees.next()?;
        degrees.all(|d| d == first).then_some(first)
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(k, v)| (k.clone(), v * c)).collect(),
        }
    }

    /// Drops every term of degree above `cap`.
    pub fn truncate(&self, cap: usize) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .filter(|(k, _)| k.weight() <= cap)
                .map(|(k, v)| (k.clone(), v.clone()))
                .collect(),
        }
    }

    pub fn multiply(&self, other: &Self) -> Self {
        self.multiply_capped(other, usize::MAX)
    }

    pub fn multiply_capped(&self, other: &Self, cap: usize) -> Self {
        let mut out = Self::zero();
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                if a.weight().saturating_add(b.weight()) <= cap {
                    out.add_term(union(a, b), ca * cb);
                }
            }
        }
        out
    }

    /// The involution `ω`: `p_μ ↦ (-1)^{|μ|-ℓ(μ)} p_μ`.
    pub fn omega(&self) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .map(|(k, v)| (k.clone(), if k.sign() > 0 { v.clone() } else { -v }))
                .collect(),
        }
    }

    /// `p_r[f]`: every `p_k` becomes `p_{rk}`.
    pub fn adams(&self, r: usize) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .map(|(k, v)| {
                    let scaled = Partition::from_unsorted(k.parts().iter().map(|&p| p * r).collect());
                    (scaled, v.clone())
                })
                .collect(),
        }
    }

    /// `self[inner]`, truncated above degree `cap`.
    pub fn plethysm(&self, inner: &Self, cap: usize) -> Self {
        let mut adams: HashMap<usize, Self> = HashMap::new();
        for k in self.terms.keys() {
            for &r in k.parts() {
                adams.entry(r).or_insert_with(|| inner.adams(r).truncate(cap));
            }
        }
        let terms: Vec<(&Partition, &BigRational)> = self.terms.iter().collect();
        terms
            .par_iter()
            .map(|(k, c)| {
                let mut prod = Self::one();
                for r in k.parts() {
                    prod = prod.multiply_capped(&adams[r], cap);
                }
                prod.scale(c)
            })
            .reduce(Self::zero, |a, b| &a + &b)
    }

    /// Complete homogeneous `h_n = Σ_{μ ⊢ n} p_μ / z_μ`.
    pub fn complete(n: usize) -> Self {
        let mut out = Self::zero();
        for mu in enumerate_partitions(n) {
            let z = BigInt::from(mu.z());
            out.add_term(mu, BigRational::new(BigInt::one(), z));
        }
        out
    }

    /// Elementary `e_n = ω(h_n)`.
    pub fn elementary(n: usize) -> Self {
        Self::complete(n).omega()
    }

    /// `ℓ_j = (1/j) Σ_{d | j} μ(d) p_d^{j/d}`, the character of `Lie(j)`.
    pub fn lie_character(j: usize) -> Self {
        assert!(j >= 1, "Lie characters start at j = 1");
        let mut out = Self::zero();
        for d in (1..=j).filter(|d| j.is_multiple_of(*d)) {
            let mu = mobius(d);
            if mu != 0 {
                out.add_term(Partition::from_unsorted(vec![d; j / d]), rat(mu, j as i64));
            }
        }
        out
    }

    /// Frobenius characteristic `Σ_λ m_λ s_λ`.
    pub fn from_rep(d: &RepDecomposition, store: &CharacterStore) -> Result<Self, SymFuncError> {
        let table = store.table(d.n())?;
        let mut out = Self::zero();
        for (lambda, m) in d.iter() {
            let chi = table.character(lambda).expect("table covers every partition");
            out = &out + &Self::from_character(&chi).scale(&BigRational::from_integer(BigInt::from(m.clone())));
        }
        Ok(out)
    }

    /// `Σ_μ χ(μ) p_μ / z_μ`.
    pub fn from_character(chi: &CharacterVector) -> Self {
        let mut out = Self::zero();
        for (mu, v) in enumerate_partitions(chi.n()).into_iter().zip(chi.values()) {
            let z = BigInt::from(mu.z());
            out.add_term(mu, BigRational::new(v.clone(), z));
        }
        out
    }

    fn check_homogeneous(&self, n: usize) -> Result<(), SymFuncError> {
        match self.terms.keys().find(|k| k.weight() != n) {
            Some(k) => Err(SymFuncError::NotHomogeneous {
                partition: k.clone(),
                expected: n,
                found: k.weight(),
            }),
            None => Ok(()),
        }
    }

    /// Class function with `χ(μ) = z_μ · [p_μ] f`; `f` must be homogeneous of degree `n`.
    pub fn character(&self, n: usize) -> Result<CharacterVector, SymFuncError> {
        self.check_homogeneous(n)?;
        let mut values = Vec::new();
        for mu in enumerate_partitions(n) {
            let v = self.coefficient(&mu) * BigRational::from_integer(BigInt::from(mu.z()));
            if !v.is_integer() {
                return Err(SymFuncError::NonIntegralClassValue {
                    partition: mu,
                    value: v.to_string(),
                });
            }
            values.push(v.to_integer());
        }
        Ok(CharacterVector::new(n, values).expect("one value per class"))
    }

    /// Schur expansion, which must have non-negative integer coefficients.
    pub fn to_rep(&self, n: usize, store: &CharacterStore) -> Result<RepDecomposition, SymFuncError> {
        self.check_homogeneous(n)?;
        let table = store.table(n)?;
        let mut out = RepDecomposition::zero(n);
        for (row, lambda) in table.labels().iter().enumerate() {
            let values = table.row_values(row);
            let mut c = BigRational::zero();
            for (mu, coeff) in &self.terms {
                let col = table.labels().binary_search(mu).expect("weight checked");
                c += coeff * BigRational::from_integer(values[col].clone());
            }
            if !c.is_integer() || c.is_negative() {
                return Err(SymFuncError::NotGenuine {
                    partition: lambda.clone(),
                    coefficient: c.to_string(),
                });
            }
            out.add_term(lambda.clone(), c.to_integer().to_biguint().expect("non-negative"))?;
        }
        Ok(out)
    }
}

impl Add for &SymFunc {
    type Output = SymFunc;
    fn add(self, rhs: &SymFunc) -> SymFunc {
        let mut out = self.clone();
        for (k, v) in &rhs.terms {
            out.add_term(k.clone(), v.clone());
        }
        out
    }
}

impl Neg for &SymFunc {
    type Output = SymFunc;
    fn neg(self) -> SymFunc {
        self.scale(&-BigRational::one())
    }
}

impl Sub for &SymFunc {
    type Output = SymFunc;
    fn sub(self, rhs: &SymFunc) -> SymFunc {
        self + &(-rhs)
    }
}

impl Mul for &SymFunc {
    type Output = SymFunc;
    fn mul(self, rhs: &SymFunc) -> SymFunc {
        self.multiply(rhs)
    }
}
