//! FB-modules: one `S_n`-representation per degree, known on an explicit
//! range of degrees, optionally followed by a stable tail that grows the first
//! row of every summand of a seed degree.
//!
//! Only multiplicity data is kept. The forgetful functors FI → FB and
//! FI♯ → FI act as the identity on this data, so they have no counterpart here.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_bigint::BigUint;
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::cache::CharacterStore;
use crate::partitions::{Partition, PartitionError};
use crate::rep_algebra::{kronecker, RepDecomposition, RepError};

#[derive(Debug, Error)]
pub enum FbError {
    #[error("degree {degree} is outside the known range (known through {known:?})")]
    Undefined { degree: usize, known: Option<usize> },
    #[error("degree {degree} holds a representation of weight {weight}")]
    WeightMismatch { degree: usize, weight: usize },
    #[error("stable extension needs n > m (got m={m}, n={n})")]
    StableTarget { m: usize, n: usize },
    #[error(transparent)]
    Growth(#[from] PartitionError),
    #[error(transparent)]
    Rep(#[from] RepError),
    #[error("cannot parse module text: line {line}: {reason}")]
    Parse { line: usize, reason: String },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StableTail {
    pub from: usize,
    pub seed: RepDecomposition,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FBModule {
    support: BTreeMap<usize, RepDecomposition>,
    /// `None` means every degree is known (zero or stable tail past the support).
    known_through: Option<usize>,
    stable: Option<StableTail>,
}

/// Where `small` has more copies of `partition` than `big`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub degree: usize,
    pub partition: Partition,
    #[serde(serialize_with = "ser_big")]
    pub small: BigUint,
    #[serde(serialize_with = "ser_big")]
    pub big: BigUint,
}

fn ser_big<S: serde::Serializer>(v: &BigUint, s: S) -> Result<S::Ok, S::Error> {
    s.collect_str(v)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Containment {
    Contained,
    Violated(Witness),
}

impl Containment {
    pub fn holds(&self) -> bool {
        matches!(self, Containment::Contained)
    }

    pub fn witness(&self) -> Option<&Witness> {
        match self {
            Containment::Contained => None,
            Containment::Violated(w) => Some(w),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Stabilization {
    StableAt(usize),
    NotYetStable,
}

impl FBModule {
    /// Zero module known in degrees `0..=through`.
    pub fn bounded(through: usize) -> Self {
        Self {
            support: BTreeMap::new(),
            known_through: Some(through),
            stable: None,
        }
    }

    /// Zero module known in every degree; add finitely many degrees to it.
    pub fn finite() -> Self {
        Self {
            support: BTreeMap::new(),
            known_through: None,
            stable: None,
        }
    }

    /// Module whose degree `n` is `f(n)` for `n ≤ through`.
    pub fn from_fn<E>(
        through: usize,
        f: impl Fn(usize) -> Result<RepDecomposition, E> + Sync,
    ) -> Result<Self, E>
    where
        E: Send,
    {
        let degrees: Vec<RepDecomposition> = (0..=through)
            .into_par_iter()
            .map(&f)
            .collect::<Result<_, _>>()?;
        let mut out = Self::bounded(through);
        for (n, d) in degrees.into_iter().enumerate() {
            out.insert(n, d).expect("f produced weight n");
        }
        Ok(out)
    }

    pub fn insert(&mut self, degree: usize, rep: RepDecomposition) -> Result<(), FbError> {
        if rep.n() != degree {
            return Err(FbError::WeightMismatch {
                degree,
                weight: rep.n(),
            });
        }
        if let Some(t) = self.known_through {
            self.known_through = Some(t.max(degree));
        }
        if rep.is_zero() {
            self.support.remove(&degree);
        } else {
            self.support.insert(degree, rep);
        }
        Ok(())
    }

    pub fn with(mut self, degree: usize, rep: RepDecomposition) -> Result<Self, FbError> {
        self.insert(degree, rep)?;
        Ok(self)
    }

    pub fn known_through(&self) -> Option<usize> {
        self.known_through
    }

    pub fn is_known(&self, degree: usize) -> bool {
        self.known_through.is_none_or(|t| degree <= t)
    }

    pub fn stable_tail(&self) -> Option<&StableTail> {
        self.stable.as_ref()
    }

    /// Degrees with nonzero explicit data.
    pub fn support(&self) -> impl Iterator<Item = (usize, &RepDecomposition)> {
        self.support.iter().map(|(&n, d)| (n, d))
    }

    pub fn max_support_degree(&self) -> Option<usize> {
        self.support.keys().next_back().copied()
    }

    pub fn min_support_degree(&self) -> Option<usize> {
        self.support.keys().next().copied()
    }

    pub fn is_zero(&self) -> bool {
        self.support.is_empty() && self.stable.as_ref().is_none_or(|s| s.seed.is_zero())
    }

    pub fn at(&self, degree: usize) -> Result<RepDecomposition, FbError> {
        if let Some(d) = self.support.get(&degree) {
            return Ok(d.clone());
        }
        if let Some(tail) = &self.stable {
            if degree > tail.from && degree > self.known_through.unwrap_or(0) {
                return grow_decomposition(&tail.seed, degree);
            }
        }
        if self.is_known(degree) {
            Ok(RepDecomposition::zero(degree))
        } else {
            Err(FbError::Undefined {
                degree,
                known: self.known_through,
            })
        }
    }

    /// Declares the module stable from `from` on, seeded by its data there.
    pub fn annotate_stable(&mut self, from: usize) -> Result<(), FbError> {
        let seed = self.at(from)?;
        self.stable = Some(StableTail { from, seed });
        self.known_through = None;
        Ok(())
    }

    pub fn direct_sum(&self, other: &Self) -> Result<Self, FbError> {
        let known = match (self.known_through, other.known_through) {
            (Some(a), Some(b)) => Some(a.min(b)),
            (a, b) => a.or(b),
        };
        let top = known
            .or_else(|| {
                let a = self.max_support_degree().unwrap_or(0);
                let b = other.max_support_degree().unwrap_or(0);
                Some(a.max(b))
            })
            .unwrap_or(0);
        let mut out = match known {
            Some(t) => Self::bounded(t),
            None => Self::finite(),
        };
        for n in 0..=top {
            out.insert(n, self.at(n)?.add(&other.at(n)?)?)?;
        }
        Ok(out)
    }

    pub fn to_text(&self) -> String {
        self.to_text_with_header("fbmod v1")
    }

    pub(crate) fn to_text_with_header(&self, header: &str) -> String {
        let mut out = format!("{header}\n");
        match self.known_through {
            Some(t) => {
                for n in 0..=t {
                    let d = self.support.get(&n).cloned().unwrap_or_else(|| RepDecomposition::zero(n));
                    let _ = writeln!(out, "n={n} : {d}");
                }
            }
            None => {
                for (n, d) in &self.support {
                    let _ = writeln!(out, "n={n} : {d}");
                }
            }
        }
        if let Some(tail) = &self.stable {
            let _ = writeln!(out, "stable_from={}", tail.from);
        }
        out
    }

    pub fn from_text(text: &str) -> Result<Self, FbError> {
        let mut lines = text.lines().enumerate();
        match lines.next() {
            Some((_, "fbmod v1")) => {}
            other => {
                return Err(FbError::Parse {
                    line: 1,
                    reason: format!("expected header 'fbmod v1', found {:?}", other.map(|l| l.1)),
                })
            }
        }
        let (module, _) = Self::parse_body(lines, false)?;
        Ok(module)
    }

    /// Parses `n=<n> : <rep>` lines plus `stable_from=` and any extra
    /// `key=value` lines, which are returned to the caller.
    pub(crate) fn parse_body<'a>(
        lines: impl Iterator<Item = (usize, &'a str)>,
        total: bool,
    ) -> Result<(Self, Vec<(String, String)>), FbError> {
        let mut module = if total { Self::finite() } else { Self::bounded(0) };
        let mut stable_from = None;
        let mut extras = Vec::new();
        let mut any_degree = false;
        for (i, line) in lines {
            let line_no = i + 1;
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            let err = |reason: String| FbError::Parse { line: line_no, reason };
            if let Some(rest) = line.strip_prefix("n=") {
                let (deg, rep) = rest.split_once(':').ok_or_else(|| err("missing ':'".into()))?;
                let deg: usize = deg.trim().parse().map_err(|_| err(format!("bad degree {deg:?}")))?;
                let rep = RepDecomposition::parse(rep, deg).map_err(|e| err(e.to_string()))?;
                module.insert(deg, rep)?;
                any_degree = true;
            } else if let Some(m) = line.strip_prefix("stable_from=") {
                stable_from = Some(m.trim().parse::<usize>().map_err(|_| err(format!("bad degree {m:?}")))?);
            } else if let Some((k, v)) = line.split_once('=') {
                extras.push((k.trim().to_string(), v.trim().to_string()));
            } else {
                return Err(err(format!("unrecognised line {line:?}")));
            }
        }
        if !total && !any_degree && stable_from.is_none() {
            module.known_through = None;
        }
        if let Some(m) = stable_from {
            module.annotate_stable(m)?;
        }
        Ok((module, extras))
    }
}

/// Adds `n - |λ|` boxes to the first row of every summand.
pub fn grow_decomposition(d: &RepDecomposition, n: usize) -> Result<RepDecomposition, FbError> {
    let mut out = RepDecomposition::zero(n);
    for (lambda, m) in d.iter() {
        out.add_term(lambda.first_row_grow(n)?, m.clone())?;
    }
    Ok(out)
}

/// Degreewise inner tensor product through `up_to`.
pub fn tensor(v: &FBModule, w: &FBModule, up_to: usize, store: &CharacterStore) -> Result<FBModule, FbError> {
    FBModule::from_fn(up_to, |n| -> Result<RepDecomposition, FbError> {
        Ok(kronecker(&v.at(n)?, &w.at(n)?, store)?)
    })
}

/// Whether `small_n ⊆ big_n` for every `n ≤ up_to`; otherwise the first violation.
pub fn contains(big: &FBModule, small: &FBModule, up_to: usize) -> Result<Containment, FbError> {
    for n in 0..=up_to {
        let (b, s) = (big.at(n)?, small.at(n)?);
        if let Some(e) = s.first_excess_over(&b) {
            return Ok(Containment::Violated(Witness {
                degree: n,
                partition: e.partition,
                small: e.left,
                big: e.right,
            }));
        }
    }
    Ok(Containment::Contained)
}

/// Least `m` such that every degree in `(m, search_up_to]` is the first-row
/// growth of degree `m`.
pub fn stabilization_degree(v: &FBModule, search_up_to: usize) -> Result<Stabilization, FbError> {
    let degrees: Vec<RepDecomposition> = (0..=search_up_to).map(|n| v.at(n)).collect::<Result<_, _>>()?;
    for m in 0..search_up_to {
        let mut stable = true;
        for n in m + 1..=search_up_to {
            if grow_decomposition(&degrees[m], n)? != degrees[n] {
                stable = false;
                break;
            }
        }
        if stable {
            return Ok(Stabilization::StableAt(m));
        }
    }
    Ok(Stabilization::NotYetStable)
}

/// Degree-`n` data predicted by stability at `m`.
pub fn extend_stable(v: &FBModule, m: usize, n: usize) -> Result<RepDecomposition, FbError> {
    if n <= m {
        return Err(FbError::StableTarget { m, n });
    }
    grow_decomposition(&v.at(m)?, n)
}

/// `V_{<n}`: degrees below `n` kept, everything else zero.
pub fn truncate_below(v: &FBModule, n: usize) -> FBModule {
    let last_explicit = match (v.known_through, v.stable_tail()) {
        (_, Some(_)) => n.saturating_sub(1),
        (Some(t), None) => t,
        (None, None) => v.max_support_degree().unwrap_or(0),
    };
    let mut out = FBModule::finite();
    for d in 0..n.min(last_explicit.saturating_add(1)) {
        if let Ok(rep) = v.at(d) {
            out.insert(d, rep).expect("weights already consistent");
        }
    }
    out
}
