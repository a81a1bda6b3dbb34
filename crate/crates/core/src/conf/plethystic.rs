//! Frobenius characteristics assembled from Lie characters.
//!
//! The degree-`i` piece on `n` points is a sum over `λ ⊢ n` with
//! `n - ℓ(λ) = i`. A part `j` of multiplicity `m_j` contributes the factor
//! `P_{m_j}[L_j]`, where `P` is `h` or `e` and `L_j` is `ℓ_j` or `ω ℓ_j`.
//! Which choice applies to which blocks is a [`TwistConvention`]; the right one
//! for each family is found by comparison with the oracle.

use std::collections::HashMap;

use once_cell::sync::OnceCell;
use parking_lot::Mutex;
use rayon::prelude::*;
use serde::Serialize;

use super::oracle::oracle_character;
use super::{ConfError, Family};
use crate::characters::CharacterVector;
use crate::partitions::{enumerate_partitions, Partition};
use crate::symfunc::SymFunc;

/// Which blocks use `e_m` instead of `h_m` as the outer function.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum OuterTwist {
    Never,
    EvenBlocks,
    OddBlocks,
    AllBlocks,
}

impl OuterTwist {
    fn applies(self, j: usize) -> bool {
        match self {
            OuterTwist::Never => false,
            OuterTwist::EvenBlocks => j.is_multiple_of(2),
            OuterTwist::OddBlocks => j % 2 == 1,
            OuterTwist::AllBlocks => true,
        }
    }
}

/// `ω ℓ_j = ℓ_j` for odd `j`, so only even blocks can carry the inner twist.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct TwistConvention {
    pub omega_even_blocks: bool,
    pub outer: OuterTwist,
}

impl TwistConvention {
    pub fn candidates() -> Vec<Self> {
        let outers = [
            OuterTwist::Never,
            OuterTwist::EvenBlocks,
            OuterTwist::OddBlocks,
            OuterTwist::AllBlocks,
        ];
        [false, true]
            .into_iter()
            .flat_map(|omega| {
                outers.into_iter().map(move |outer| TwistConvention {
                    omega_even_blocks: omega,
                    outer,
                })
            })
            .collect()
    }

    /// `P_m[L_j]` for this convention.
    pub fn block_factor(&self, j: usize, m: usize) -> SymFunc {
        let lie = SymFunc::lie_character(j);
        let inner = if self.omega_even_blocks && j.is_multiple_of(2) {
            lie.omega()
        } else {
            lie
        };
        let outer = if self.outer.applies(j) {
            SymFunc::elementary(m)
        } else {
            SymFunc::complete(m)
        };
        outer.plethysm(&inner, j * m)
    }
}

/// Block factors are shared between all `(i, n)`; this memoizes them.
#[derive(Debug, Default)]
pub struct BlockFactors {
    memo: Mutex<HashMap<(TwistConvention, usize, usize), SymFunc>>,
}

impl BlockFactors {
    pub fn get(&self, conv: TwistConvention, j: usize, m: usize) -> SymFunc {
        if let Some(f) = self.memo.lock().get(&(conv, j, m)) {
            return f.clone();
        }
        let f = conv.block_factor(j, m);
        self.memo.lock().entry((conv, j, m)).or_insert(f).clone()
    }
}

/// Frobenius characteristic of the degree-`degree` piece on `n` points.
pub fn tier2_symfunc(conv: TwistConvention, degree: usize, n: usize, factors: &BlockFactors) -> SymFunc {
    if degree == 0 {
        return SymFunc::complete(n);
    }
    if degree >= n {
        return SymFunc::zero();
    }
    let shapes: Vec<Partition> = enumerate_partitions(n)
        .into_iter()
        .filter(|lambda| n - lambda.len() == degree)
        .collect();
    shapes
        .par_iter()
        .map(|lambda| {
            lambda
                .multiplicities()
                .into_iter()
                .fold(SymFunc::one(), |acc, (j, m)| acc.multiply(&factors.get(conv, j, m)))
        })
        .reduce(SymFunc::zero, |a, b| &a + &b)
}

pub fn tier2_character_with(
    conv: TwistConvention,
    degree: usize,
    n: usize,
    factors: &BlockFactors,
) -> Result<CharacterVector, ConfError> {
    Ok(tier2_symfunc(conv, degree, n, factors).character(n)?)
}

/// The convention selected for each family, and the grid it was checked on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Calibration {
    pub a: TwistConvention,
    pub c: TwistConvention,
    pub max_degree: usize,
    pub max_points: usize,
}

impl Calibration {
    pub fn convention(&self, fam: Family) -> TwistConvention {
        match fam {
            Family::A => self.a,
            Family::C => self.c,
        }
    }
}

/// Keeps the conventions that agree with the oracle at every `(i, n)` with
/// `1 ≤ i ≤ max_degree`, `n ≤ max_points`, and requires exactly one per family.
pub fn calibrate(max_degree: usize, max_points: usize, budget: u64, factors: &BlockFactors) -> Result<Calibration, ConfError> {
    let mut chosen = Vec::new();
    for fam in Family::ALL {
        let grid: Vec<(usize, usize)> = (1..=max_degree)
            .flat_map(|i| (i + 1..=max_points).map(move |n| (i, n)))
            .collect();
        let oracle: Vec<CharacterVector> = grid
            .par_iter()
            .map(|&(i, n)| oracle_character(fam, i, n, budget))
            .collect::<Result<_, _>>()?;
        let survivors: Vec<TwistConvention> = TwistConvention::candidates()
            .into_iter()
            .filter(|conv| {
                grid.iter().zip(&oracle).all(|(&(i, n), chi)| {
                    tier2_character_with(*conv, i, n, factors).is_ok_and(|t| &t == chi)
                })
            })
            .collect();
        match survivors.as_slice() {
            [one] => chosen.push(*one),
            [] => {
                return Err(ConfError::Calibration {
                    family: fam,
                    reason: "no convention matches the oracle".into(),
                })
            }
            many => {
                return Err(ConfError::Calibration {
                    family: fam,
                    reason: format!("{} conventions match the oracle", many.len()),
                })
            }
        }
    }
    Ok(Calibration {
        a: chosen[0],
        c: chosen[1],
        max_degree,
        max_points,
    })
}

/// A calibration computed at most once.
#[derive(Debug, Default)]
pub struct CalibrationCell {
    cell: OnceCell<Calibration>,
}

impl CalibrationCell {
    pub fn get(&self) -> Option<&Calibration> {
        self.cell.get()
    }

    pub fn get_or_try_init(&self, f: impl FnOnce() -> Result<Calibration, ConfError>) -> Result<&Calibration, ConfError> {
        self.cell.get_or_try_init(f)
    }
}
