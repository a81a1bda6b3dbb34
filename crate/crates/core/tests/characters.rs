mod common;

use common::{brute_character, permutations};
use eqlc_core::cache::{CharacterStore, DiskCache};
use eqlc_core::characters::{class_data, mn_character, CharacterTable, CharacterVector};
use eqlc_core::partitions::{enumerate_partitions, factorial, partition_index, Partition};
use eqlc_core::rep_algebra::{decompose, kronecker, RepDecomposition};
use num_bigint::{BigInt, BigUint};
use num_traits::Zero;
use proptest::prelude::*;

/// Partition numbers from Euler's pentagonal recurrence.
fn pentagonal_partition_numbers(top: usize) -> Vec<i64> {
    let mut p = vec![0i64; top + 1];
    p[0] = 1;
    for n in 1..=top {
        let mut total = 0;
        for k in 1.. {
            let g1 = k * (3 * k - 1) / 2;
            if g1 > n {
                break;
            }
            let sign = if k % 2 == 1 { 1 } else { -1 };
            total += sign * p[n - g1];
            let g2 = k * (3 * k + 1) / 2;
            if g2 <= n {
                total += sign * p[n - g2];
            }
        }
        p[n] = total;
    }
    p
}

/// Standard Young tableaux, counted by removing the box holding the largest entry.
fn syt_count(shape: &[usize]) -> u64 {
    if shape.iter().sum::<usize>() <= 1 {
        return 1;
    }
    let mut total = 0;
    for r in 0..shape.len() {
        let is_corner = r + 1 == shape.len() || shape[r + 1] < shape[r];
        if is_corner {
            let mut smaller = shape.to_vec();
            smaller[r] -= 1;
            if smaller[r] == 0 {
                smaller.pop();
            }
            total += syt_count(&smaller);
        }
    }
    total
}

#[test]
fn partition_counts_match_pentagonal_recurrence() {
    let p = pentagonal_partition_numbers(40);
    for (n, &count) in p.iter().enumerate() {
        assert_eq!(enumerate_partitions(n).len() as i64, count, "n={n}");
    }
    assert_eq!(p[38], 26_015);
}

#[test]
fn canonical_order_is_reverse_lexicographic() {
    let labels: Vec<String> = enumerate_partitions(4).iter().map(ToString::to_string).collect();
    assert_eq!(labels, ["[4]", "[3,1]", "[2,2]", "[2,1,1]", "[1,1,1,1]"]);
    assert!(Partition::row(3) > Partition::column(2));
}

#[test]
fn hook_dimensions_count_tableaux() {
    for n in 0..=10 {
        for lambda in enumerate_partitions(n) {
            assert_eq!(lambda.hook_dimension(), BigUint::from(syt_count(lambda.parts())), "{lambda}");
        }
    }
}

#[test]
fn character_tables_through_ten() {
    for n in 0..=10 {
        let table = CharacterTable::compute(n);
        let data = class_data(n);
        let order = BigInt::from(factorial(n));
        let identity = partition_index(n).len() - 1;
        let mut dims_squared = BigInt::zero();
        for (r, lambda) in table.labels().iter().enumerate() {
            let row = table.row_values(r);
            assert_eq!(row[identity], BigInt::from(lambda.hook_dimension()), "{lambda}");
            dims_squared += &row[identity] * &row[identity];
            for s in 0..table.labels().len() {
                let other = table.row_values(s);
                let sum: BigInt = row.iter().zip(other).zip(&data.sizes).map(|((a, b), c)| a * b * c).sum();
                assert_eq!(sum, if r == s { order.clone() } else { BigInt::zero() });
            }
        }
        assert_eq!(dims_squared, order);
        for (c, mu) in data.classes.list().iter().enumerate() {
            for (d, _) in data.classes.list().iter().enumerate() {
                let sum: BigInt = table.rows().iter().map(|row| &row[c] * &row[d]).sum();
                let expected = if c == d { BigInt::from(mu.z()) } else { BigInt::zero() };
                assert_eq!(sum, expected);
            }
        }
    }
}

#[test]
fn murnaghan_nakayama_spot_values() {
    let p = |v: &[usize]| Partition::new(v.to_vec()).unwrap();
    assert_eq!(mn_character(&p(&[2, 1]), &p(&[3])).unwrap(), BigInt::from(-1));
    assert_eq!(mn_character(&p(&[3, 1, 1]), &p(&[1, 1, 1, 1, 1])).unwrap(), BigInt::from(6));
    assert_eq!(mn_character(&p(&[2, 2]), &p(&[2, 1, 1])).unwrap(), BigInt::from(0));
    assert!(mn_character(&p(&[2]), &p(&[1])).is_err());
}

/// Standard representation of S_3 on `{x : Σ x_i = 0}` with basis
/// `e1 - e2, e2 - e3`, written out as integer matrices.
fn standard_matrix(perm: &[usize]) -> [[i64; 2]; 2] {
    let image = |v: [i64; 3]| {
        let mut w = [0i64; 3];
        for i in 0..3 {
            w[perm[i]] = v[i];
        }
        w
    };
    // coordinates of (a, b, c) with a + b + c = 0 in the basis: a·(e1-e2) + (a+b)·(e2-e3)
    let coords = |w: [i64; 3]| [w[0], w[0] + w[1]];
    let c1 = coords(image([1, -1, 0]));
    let c2 = coords(image([0, 1, -1]));
    [[c1[0], c2[0]], [c1[1], c2[1]]]
}

#[test]
fn kronecker_square_of_the_standard_representation() {
    let store = CharacterStore::in_memory();
    let chi = brute_character(3, |p| {
        let m = standard_matrix(p);
        let t = m[0][0] + m[1][1];
        t * t
    });
    let brute = decompose(&chi, &store).unwrap();
    let v21 = RepDecomposition::irreducible(Partition::new(vec![2, 1]).unwrap());
    assert_eq!(kronecker(&v21, &v21, &store).unwrap(), brute);
    assert_eq!(brute.to_string(), "1*[3] + 1*[2,1] + 1*[1,1,1]");
}

#[test]
fn regular_representation_by_brute_force() {
    let store = CharacterStore::in_memory();
    for n in 1..=5 {
        let all = permutations(n);
        let chi = brute_character(n, |g| {
            all.iter()
                .filter(|x| common::compose(g, x) == **x)
                .count() as i64
        });
        assert_eq!(chi, CharacterVector::regular(n));
        let rep = decompose(&chi, &store).unwrap();
        assert_eq!(rep, RepDecomposition::regular(n));
        for (lambda, m) in rep.iter() {
            assert_eq!(*m, lambda.hook_dimension());
        }
    }
}

#[test]
fn disk_tables_are_reused_and_stable() {
    let dir = tempfile::tempdir().unwrap();
    let a = CharacterStore::with_disk(DiskCache::new(dir.path()));
    let t = a.table(7).unwrap();
    let bytes = std::fs::read(dir.path().join("chartab/n7.txt")).unwrap();
    let other = tempfile::tempdir().unwrap();
    CharacterStore::with_disk(DiskCache::new(other.path())).table(7).unwrap();
    assert_eq!(std::fs::read(other.path().join("chartab/n7.txt")).unwrap(), bytes);
    let b = CharacterStore::with_disk(DiskCache::new(dir.path()));
    assert_eq!(b.table(7).unwrap().rows(), t.rows());
    let text = String::from_utf8(bytes).unwrap();
    assert!(text.starts_with("chartab v1 n=7\n[7] : 1 1"));
}

fn partition_strategy() -> impl Strategy<Value = Partition> {
    prop::collection::vec(1usize..7, 0..7).prop_map(Partition::from_unsorted)
}

proptest! {
    #[test]
    fn partition_text_round_trips(lambda in partition_strategy()) {
        let back: Partition = lambda.to_string().parse().unwrap();
        prop_assert_eq!(back, lambda);
    }

    #[test]
    fn conjugation_is_an_involution(lambda in partition_strategy()) {
        prop_assert_eq!(lambda.conjugate().conjugate(), lambda.clone());
        prop_assert_eq!(lambda.conjugate().hook_dimension(), lambda.hook_dimension());
    }

    #[test]
    fn order_agrees_with_enumeration(a in partition_strategy(), b in partition_strategy()) {
        if a.weight() == b.weight() {
            let idx = partition_index(a.weight());
            prop_assert_eq!(a.cmp(&b), idx.position(&a).unwrap().cmp(&idx.position(&b).unwrap()));
        } else {
            prop_assert_eq!(a.cmp(&b), a.weight().cmp(&b.weight()));
        }
    }

    #[test]
    fn rep_text_round_trips(terms in prop::collection::vec((0usize..7, 1u32..5), 0..6)) {
        let shapes = enumerate_partitions(6);
        let mut d = RepDecomposition::zero(6);
        for (k, m) in terms {
            d.add_term(shapes[k % shapes.len()].clone(), m.into()).unwrap();
        }
        prop_assert_eq!(RepDecomposition::parse(&d.to_string(), 6).unwrap(), d);
    }
}
