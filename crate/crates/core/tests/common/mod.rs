#![allow(dead_code)]

use std::collections::BTreeMap;

use eqlc_core::characters::CharacterVector;
use eqlc_core::partitions::{partition_index, Partition};
use num_bigint::BigInt;

/// Every permutation of `0..n` as a image vector.
pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..n).collect();
    fn go(k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if k == cur.len() {
            out.push(cur.clone());
            return;
        }
        for i in k..cur.len() {
            cur.swap(k, i);
            go(k + 1, cur, out);
            cur.swap(k, i);
        }
    }
    go(0, &mut cur, &mut out);
    out
}

pub fn cycle_type(perm: &[usize]) -> Partition {
    let mut seen = vec![false; perm.len()];
    let mut lens = Vec::new();
    for start in 0..perm.len() {
        if seen[start] {
            continue;
        }
        let mut len = 0;
        let mut x = start;
        while !seen[x] {
            seen[x] = true;
            x = perm[x];
            len += 1;
        }
        lens.push(len);
    }
    Partition::from_unsorted(lens)
}

pub fn compose(a: &[usize], b: &[usize]) -> Vec<usize> {
    b.iter().map(|&x| a[x]).collect()
}

pub fn inverse(a: &[usize]) -> Vec<usize> {
    let mut inv = vec![0; a.len()];
    for (i, &x) in a.iter().enumerate() {
        inv[x] = i;
    }
    inv
}

/// Class function from a value on every permutation; panics if `f` is not
/// constant on conjugacy classes.
pub fn brute_character(n: usize, f: impl Fn(&[usize]) -> i64) -> CharacterVector {
    let mut by_class: BTreeMap<Partition, i64> = BTreeMap::new();
    for p in permutations(n) {
        let v = f(&p);
        let prev = by_class.entry(cycle_type(&p)).or_insert(v);
        assert_eq!(*prev, v, "not a class function");
    }
    let values = partition_index(n)
        .list()
        .iter()
        .map(|mu| BigInt::from(by_class[mu]))
        .collect();
    CharacterVector::new(n, values).unwrap()
}
