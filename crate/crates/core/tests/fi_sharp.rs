use eqlc_core::conf::Family;
use eqlc_core::engine::Engine;
use eqlc_core::fb_modules::FBModule;
use eqlc_core::fi_sharp::{
    fisharp_contains, free_module, generators_contain, h_zero, h_zero_with_window, m_functor, m_module,
    FiSharpError, GeneratorModule, GeneratorProvenance,
};
use eqlc_core::partitions::{binomial, enumerate_partitions, factorial};
use eqlc_core::rep_algebra::{kronecker, RepDecomposition};
use num_bigint::BigUint;
use proptest::prelude::*;

fn generator_strategy() -> impl Strategy<Value = GeneratorModule> {
    prop::collection::vec((0usize..=5, 0usize..7, 1u32..4), 0..=4).prop_map(|terms| {
        let mut module = FBModule::finite();
        for (degree, shape, mult) in terms {
            let shapes = enumerate_partitions(degree);
            let lambda = shapes[shape % shapes.len()].clone();
            let mut rep = module.at(degree).unwrap();
            rep.add_term(lambda, mult.into()).unwrap();
            module.insert(degree, rep).unwrap();
        }
        GeneratorModule::constructed(&module).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn h_zero_inverts_m(w in generator_strategy()) {
        let top = w.max_degree().unwrap_or(0);
        let v = m_module(&w, top + 3).unwrap();
        let back = h_zero_with_window(&v, top, 3).unwrap();
        prop_assert_eq!(back.module(), w.module());
        prop_assert_eq!(back.provenance(), GeneratorProvenance::ComputedH0);
        for n in 0..=top + 3 {
            prop_assert_eq!(m_functor(&back, n).unwrap(), v.at(n).unwrap());
        }
    }

    #[test]
    fn genmod_text_round_trips(w in generator_strategy()) {
        let back = GeneratorModule::from_text(&w.to_text()).unwrap();
        prop_assert_eq!(back.module(), w.module());
        prop_assert_eq!(back.provenance(), w.provenance());
    }

    #[test]
    fn witnesses_are_genuine(a in generator_strategy(), b in generator_strategy()) {
        match generators_contain(&a, &b).witness() {
            None => {
                for n in 0..=5 {
                    prop_assert!(b.at(n).is_contained_in(&a.at(n)));
                }
            }
            Some(w) => {
                prop_assert_eq!(&w.small, &b.at(w.degree).mult(&w.partition));
                prop_assert_eq!(&w.big, &a.at(w.degree).mult(&w.partition));
                prop_assert!(w.small > w.big);
            }
        }
    }
}

#[test]
fn free_module_dimension_counts_injections() {
    for m in 0..=4 {
        for n in 0..=7 {
            let expected = if n < m {
                BigUint::from(0u8)
            } else {
                binomial(n, m) * factorial(m)
            };
            assert_eq!(free_module(m, n).unwrap().dimension(), expected);
        }
    }
}

#[test]
fn too_small_a_bound_is_reported() {
    let w = GeneratorModule::single(RepDecomposition::parse("1*[2]", 2).unwrap())
        .direct_sum(&GeneratorModule::single(RepDecomposition::parse("1*[3,1]", 4).unwrap()));
    let v = m_module(&w, 6).unwrap();
    assert!(matches!(
        h_zero(&v, 3),
        Err(FiSharpError::VanishBoundTooSmall { bound: 3, degree: 4, .. })
    ));
    assert!(h_zero(&v, 4).is_ok());
}

#[test]
fn y_and_z_agree_degreewise_but_not_as_fi_modules() {
    let single = |t: &str, n: usize| GeneratorModule::single(RepDecomposition::parse(t, n).unwrap());
    let y = m_module(&single("1*[1]", 1).direct_sum(&single("1*[2,1]", 3)), 8).unwrap();
    let z = m_module(&single("1*[2]", 2), 8).unwrap();
    let c = fisharp_contains(&z, &y, 3).unwrap();
    let w = c.witness().expect("Z is not a submodule of Y");
    assert_eq!((w.degree, w.partition.to_string()), (2, "[2]".to_string()));
    for n in 0..=8 {
        assert!(z.at(n).unwrap().is_contained_in(&y.at(n).unwrap()), "n={n}");
    }
}

#[test]
fn tensor_products_are_rebuilt_from_their_generators() {
    let engine = Engine::in_memory();
    for fam in Family::ALL {
        for i in 1..=3 {
            for j in i..=4 - i {
                let (gens, _) = engine.pair_h0(fam, i, j).unwrap();
                let top = 2 * (i + j) + 2;
                for n in 0..=top {
                    let (a, _) = engine.conf_rep(fam, i, n).unwrap();
                    let (b, _) = engine.conf_rep(fam, j, n).unwrap();
                    let direct = kronecker(&a, &b, engine.store()).unwrap();
                    assert_eq!(m_functor(&gens, n).unwrap(), direct, "{fam} {i},{j} n={n}");
                }
                let low = i.max(j) + 1;
                for (n, _) in gens.support() {
                    assert!((low..=2 * (i + j)).contains(&n), "{fam} {i},{j} generator in degree {n}");
                }
            }
        }
    }
}
