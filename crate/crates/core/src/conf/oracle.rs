//! Characters of `A^i_n` and `C^i_n` from traces on the basis monomials.
//!
//! A permutation `σ` sends a basis monomial `m` to a word whose straightening
//! only involves monomials with set partition `σ(flat(m))`. The coefficient of
//! `m` in `σ·m` can therefore only be nonzero when `σ` fixes `flat(m)`, and
//! straightening may discard every term with a factor outside the larger
//! indices of `m`.

use num_bigint::{BigInt, BigUint};
use rayon::prelude::*;

use super::straighten::{insert, nbc_basis, orient, NbcMonomial, MAX_POINTS};
use super::{ConfError, Family};
use crate::characters::CharacterVector;
use crate::partitions::{partition_index, stirling_cycle, Partition};

/// Basis size accepted without an explicit override.
pub const DEFAULT_BUDGET: u64 = 1_000_000;

/// Number of basis monomials of `A^i_n`, i.e. `c(n, n-i)`.
pub fn basis_size(degree: usize, n: usize) -> BigUint {
    if degree > n {
        return BigUint::default();
    }
    stirling_cycle(n, n - degree)
}

/// `σ` on points `1..=n` with the cycles of `mu` laid out on consecutive points.
pub fn class_representative(mu: &Partition) -> Vec<usize> {
    let n = mu.weight();
    let mut sigma: Vec<usize> = (0..=n).collect();
    let mut start = 1;
    for &len in mu.parts() {
        for k in 0..len {
            sigma[start + k] = start + (k + 1) % len;
        }
        start += len;
    }
    sigma
}

fn fixes_flat(sigma: &[usize], root: &[u8]) -> bool {
    (1..sigma.len()).all(|p| root[sigma[p]] == root[sigma[root[p] as usize]])
}

/// Coefficient of `m` in the straightening of `σ·m`.
fn self_coefficient(m: &NbcMonomial, sigma: &[usize], fam: Family) -> Result<i64, ConfError> {
    let allowed = m.larger_mask();
    let mut terms: Vec<(NbcMonomial, i64)> = vec![(NbcMonomial::one(), 1)];
    for (a, b) in m.factors() {
        let (z, x, sign) = orient(sigma[a], sigma[b], fam)?;
        let mut next: Vec<(NbcMonomial, i64)> = Vec::with_capacity(terms.len());
        for (t, k) in &terms {
            insert(t, z, x, k * sign, fam, allowed, &mut |u, c| next.push((u, c)));
        }
        next.sort_unstable_by_key(|x| x.0);
        next.dedup_by(|later, kept| {
            if later.0 == kept.0 {
                kept.1 += later.1;
                true
            } else {
                false
            }
        });
        next.retain(|(_, k)| *k != 0);
        terms = next;
    }
    Ok(terms.iter().find(|(t, _)| t == m).map_or(0, |(_, k)| *k))
}

/// Character of the degree-`degree` piece on `n` points, straightening at most
/// `budget` basis monomials.
pub fn oracle_character(fam: Family, degree: usize, n: usize, budget: u64) -> Result<CharacterVector, ConfError> {
    if degree == 0 {
        return Ok(CharacterVector::trivial(n));
    }
    if degree >= n.max(1) {
        return Ok(CharacterVector::zero(n));
    }
    let size = basis_size(degree, n);
    if size > BigUint::from(budget) {
        return Err(ConfError::BudgetExceeded {
            family: fam,
            degree,
            points: n,
            basis: size,
            budget,
        });
    }
    if n > MAX_POINTS {
        return Err(ConfError::TooManyPoints { n, max: MAX_POINTS });
    }
    let classes = partition_index(n);
    let sigmas: Vec<Vec<usize>> = classes.list().iter().map(class_representative).collect();
    let basis = nbc_basis(n, degree)?;
    let zero = || vec![0i128; sigmas.len()];
    let traces = basis
        .par_iter()
        .try_fold(zero, |mut acc, m| -> Result<Vec<i128>, ConfError> {
            let root = m.flat(n);
            for (c, sigma) in sigmas.iter().enumerate() {
                if fixes_flat(sigma, &root) {
                    acc[c] += i128::from(self_coefficient(m, sigma, fam)?);
                }
            }
            Ok(acc)
        })
        .try_reduce(zero, |mut a, b| {
            a.iter_mut().zip(b).for_each(|(x, y)| *x += y);
            Ok(a)
        })?;
    let values = traces.into_iter().map(BigInt::from).collect();
    let chi = CharacterVector::new(n, values)?;
    debug_assert_eq!(chi.dimension().to_biguint(), Some(size));
    Ok(chi)
}
