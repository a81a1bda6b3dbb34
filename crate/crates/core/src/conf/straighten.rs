//! No-broken-circuit normal form for words in the generators `ω_ab`.
//!
//! A basis monomial is `ω_{a_1 b_1} ⋯ ω_{a_t b_t}` with `a_s > b_s` and
//! `a_1 < a_2 < ⋯`. Equivalently a choice, for some points `a`, of one smaller
//! point `b`. There are `c(n, n-t)` of them in degree `t`.
//!
//! A word is straightened by multiplying generators onto the right of a
//! normal-form monomial. Inserting `ω_zx` into a monomial that already has
//! `ω_zb` uses the Arnold relation in the form
//! `ω_zu ω_zv = -c·ω_zu ω_vu - s·c·ω_vu ω_zv` for `u < v < z`,
//! which leaves a generator `ω_vu` with `v < z` to insert. The larger index
//! of the pending generator strictly decreases, so insertion terminates.

use std::collections::HashMap;
use std::fmt;

use super::{ConfError, Family};

/// Largest number of points a monomial can carry.
pub const MAX_POINTS: usize = 31;

/// `slots[a] = b` records the factor `ω_ab`; zero marks an absent factor.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct NbcMonomial {
    slots: [u8; MAX_POINTS + 1],
}

impl NbcMonomial {
    pub fn one() -> Self {
        Self {
            slots: [0; MAX_POINTS + 1],
        }
    }

    /// Factors must already be in normal form.
    pub fn from_factors(factors: &[(usize, usize)]) -> Result<Self, ConfError> {
        let mut m = Self::one();
        let mut last = 0;
        for &(a, b) in factors {
            if a > MAX_POINTS {
                return Err(ConfError::TooManyPoints { n: a, max: MAX_POINTS });
            }
            if b == 0 || b >= a || a <= last {
                return Err(ConfError::NotNormal(format!("{factors:?}")));
            }
            m.slots[a] = b as u8;
            last = a;
        }
        Ok(m)
    }

    /// Factors ordered by increasing larger index.
    pub fn factors(&self) -> Vec<(usize, usize)> {
        self.slots
            .iter()
            .enumerate()
            .filter(|(_, &b)| b != 0)
            .map(|(a, &b)| (a, b as usize))
            .collect()
    }

    pub fn degree(&self) -> usize {
        self.slots.iter().filter(|&&b| b != 0).count()
    }

    /// Bit `a` is set when the monomial has a factor with larger index `a`.
    pub fn larger_mask(&self) -> u64 {
        self.slots
            .iter()
            .enumerate()
            .filter(|(_, &b)| b != 0)
            .fold(0, |acc, (a, _)| acc | 1 << a)
    }

    /// Block minimum of every point `1..=n` in the set partition the factors
    /// span. Straightening preserves this partition.
    pub fn flat(&self, n: usize) -> Vec<u8> {
        let mut root = vec![0u8; n + 1];
        for p in 1..=n {
            let b = self.slots[p];
            root[p] = if b == 0 { p as u8 } else { root[b as usize] };
        }
        root
    }

    fn slot(&self, a: usize) -> usize {
        self.slots[a] as usize
    }

    fn with_slot(&self, a: usize, b: usize) -> Self {
        let mut m = *self;
        m.slots[a] = b as u8;
        m
    }

    fn occupied_above(&self, a: usize) -> usize {
        self.slots[a + 1..].iter().filter(|&&b| b != 0).count()
    }
}

impl fmt::Display for NbcMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let factors = self.factors();
        if factors.is_empty() {
            return f.write_str("1");
        }
        for (k, (a, b)) in factors.iter().enumerate() {
            if k > 0 {
                f.write_str("·")?;
            }
            write!(f, "w({a},{b})")?;
        }
        Ok(())
    }
}

impl fmt::Debug for NbcMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Every basis monomial of degree `degree` on `n` points.
pub fn nbc_basis(n: usize, degree: usize) -> Result<Vec<NbcMonomial>, ConfError> {
    if n > MAX_POINTS {
        return Err(ConfError::TooManyPoints { n, max: MAX_POINTS });
    }
    let mut out = Vec::new();
    fn go(a: usize, n: usize, left: usize, cur: NbcMonomial, out: &mut Vec<NbcMonomial>) {
        if left == 0 {
            out.push(cur);
            return;
        }
        if a > n || n + 1 - a < left {
            return;
        }
        go(a + 1, n, left, cur, out);
        for b in 1..a {
            go(a + 1, n, left - 1, cur.with_slot(a, b), out);
        }
    }
    go(2, n, degree, NbcMonomial::one(), &mut out);
    Ok(out)
}

/// Multiplies `coef · m` on the right by `ω_zx` (`z > x`) and feeds the normal
/// form to `sink`. Terms that would occupy a slot outside `allowed` are dropped;
/// occupied slots never empty again, so no dropped term can return.
pub(crate) fn insert(
    m: &NbcMonomial,
    z: usize,
    x: usize,
    coef: i64,
    fam: Family,
    allowed: u64,
    sink: &mut impl FnMut(NbcMonomial, i64),
) {
    if allowed & (1 << z) == 0 {
        return;
    }
    let c = fam.commute_sign();
    let b = m.slot(z);
    if b == 0 {
        let sign = if m.occupied_above(z).is_multiple_of(2) { 1 } else { c };
        sink(m.with_slot(z, x), coef * sign);
        return;
    }
    if b == x {
        return;
    }
    let (u, v) = (b.min(x), b.max(x));
    let kappa = if b < x { 1 } else { c };
    let s = fam.swap_sign();
    insert(&m.with_slot(z, v), v, u, coef * kappa * -s, fam, allowed, sink);
    insert(&m.with_slot(z, u), v, u, coef * kappa * -c, fam, allowed, sink);
}

/// Orients a raw generator `ω_pq` as `sign · ω_zx` with `z > x`.
pub(crate) fn orient(p: usize, q: usize, fam: Family) -> Result<(usize, usize, i64), ConfError> {
    match p.cmp(&q) {
        std::cmp::Ordering::Greater => Ok((p, q, 1)),
        std::cmp::Ordering::Less => Ok((q, p, fam.swap_sign())),
        std::cmp::Ordering::Equal => Err(ConfError::RepeatedIndex(p)),
    }
}

/// Normal form of the word `ω_{p_1 q_1} ⋯ ω_{p_t q_t}` on `n` points.
pub fn straighten(word: &[(usize, usize)], n: usize, fam: Family) -> Result<Vec<(NbcMonomial, i64)>, ConfError> {
    straighten_within(word, n, fam, u64::MAX)
}

pub(crate) fn straighten_within(
    word: &[(usize, usize)],
    n: usize,
    fam: Family,
    allowed: u64,
) -> Result<Vec<(NbcMonomial, i64)>, ConfError> {
    if n > MAX_POINTS {
        return Err(ConfError::TooManyPoints { n, max: MAX_POINTS });
    }
    let mut current: HashMap<NbcMonomial, i64> = HashMap::from([(NbcMonomial::one(), 1)]);
    for &(p, q) in word {
        for index in [p, q] {
            if index == 0 || index > n {
                return Err(ConfError::IndexOutOfRange { index, n });
            }
        }
        let (z, x, sign) = orient(p, q, fam)?;
        let mut next: HashMap<NbcMonomial, i64> = HashMap::with_capacity(current.len());
        for (m, coef) in &current {
            insert(m, z, x, coef * sign, fam, allowed, &mut |t, k| {
                *next.entry(t).or_insert(0) += k;
            });
        }
        next.retain(|_, k| *k != 0);
        current = next;
    }
    let mut out: Vec<_> = current.into_iter().collect();
    out.sort();
    Ok(out)
}
