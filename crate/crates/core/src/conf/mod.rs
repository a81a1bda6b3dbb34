//! Cohomology of ordered configuration spaces as symmetric-group representations.
//!
//! `A^i_n = H^i(Conf(n, ℝ²))` and `C^i_n = H^{2i}(Conf(n, ℝ³))`. Both rings are
//! generated by classes `ω_ab` subject to `ω_ab² = 0` and the Arnold relation;
//! they differ only in the two signs recorded on [`Family`].
//!
//! Two ways to get characters:
//! * [`oracle`] straightens permuted basis monomials and reads off traces.
//!   Exact and self-contained, but the basis has `c(n, n-i)` elements.
//! * [`plethystic`] assembles the Frobenius characteristic from Lie characters.
//!   Its sign conventions are pinned by [`plethystic::calibrate`].

pub mod oracle;
pub mod plethystic;
pub mod straighten;

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use serde::Serialize;
use thiserror::Error;

use crate::cache::{CacheError, StoreError};
use crate::characters::CharacterError;
use crate::fb_modules::FbError;
use crate::fi_sharp::FiSharpError;
use crate::rep_algebra::RepError;
use crate::symfunc::SymFuncError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Family {
    A,
    C,
}

impl Family {
    pub const ALL: [Family; 2] = [Family::A, Family::C];

    /// `ω_ab = swap · ω_ba`.
    pub fn swap_sign(self) -> i64 {
        match self {
            Family::A => 1,
            Family::C => -1,
        }
    }

    /// `ω_ab ω_cd = commute · ω_cd ω_ab`.
    pub fn commute_sign(self) -> i64 {
        match self {
            Family::A => -1,
            Family::C => 1,
        }
    }

    /// Sharp stabilization degree of the degree-`i` piece.
    pub fn sharp_stable_degree(self, i: usize) -> usize {
        match self {
            Family::A => 3 * i + 1,
            Family::C => 3 * i,
        }
    }

    pub fn tag(self) -> &'static str {
        match self {
            Family::A => "A",
            Family::C => "C",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for Family {
    type Err = ConfError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim() {
            "A" | "a" => Ok(Family::A),
            "C" | "c" => Ok(Family::C),
            other => Err(ConfError::UnknownFamily(other.to_string())),
        }
    }
}

#[derive(Debug, Error)]
pub enum ConfError {
    #[error("unknown family {0:?} (expected A or C)")]
    UnknownFamily(String),
    #[error("index {index} out of range for {n} points")]
    IndexOutOfRange { index: usize, n: usize },
    #[error("generator ω_{0}{0} has equal indices")]
    RepeatedIndex(usize),
    #[error("not a basis monomial: {0}")]
    NotNormal(String),
    #[error("at most {max} points are supported by the straightening oracle, got {n}")]
    TooManyPoints { n: usize, max: usize },
    #[error("{family}^{degree} on {points} points needs {basis} basis monomials, over the budget of {budget}; use the plethystic tier")]
    BudgetExceeded {
        family: Family,
        degree: usize,
        points: usize,
        basis: BigUint,
        budget: u64,
    },
    #[error("plethystic tier used before calibration")]
    Uncalibrated,
    #[error("calibration failed for family {family}: {reason}")]
    Calibration { family: Family, reason: String },
    #[error("tiers disagree for {family}^{degree} on {points} points")]
    TierMismatch {
        family: Family,
        degree: usize,
        points: usize,
    },
    #[error("generators of {family}^{degree} found in degree {found}, outside [{low}, {high}]")]
    BandViolation {
        family: Family,
        degree: usize,
        found: usize,
        low: usize,
        high: usize,
    },
    #[error("cache entry {key} is corrupt: {reason}")]
    CorruptEntry { key: String, reason: String },
    #[error(transparent)]
    Character(#[from] CharacterError),
    #[error(transparent)]
    Rep(#[from] RepError),
    #[error(transparent)]
    SymFunc(#[from] SymFuncError),
    #[error(transparent)]
    Fb(#[from] FbError),
    #[error(transparent)]
    FiSharp(#[from] FiSharpError),
    #[error(transparent)]
    Store(#[from] StoreError),
    #[error(transparent)]
    Cache(#[from] CacheError),
}
