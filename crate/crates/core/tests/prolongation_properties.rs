use num_bigint::BigInt;
use prolong_core::bundles::{enumerate_covering_classes, obstruction_vanishes, CircleBundle};
use prolong_core::groups::{reduce_mod_n, Manifold3Data};
use prolong_core::prolongation::{
    counterexample_search, n_fold_prolongation_exists, prolongation_euler, GaussClass,
};
use proptest::prelude::*;

fn base() -> impl Strategy<Value = Manifold3Data> {
    prop_oneof![
        Just(Manifold3Data::torus3()),
        Just(Manifold3Data::lens4()),
        Just(Manifold3Data::sphere3()),
    ]
}

fn gauss_class() -> impl Strategy<Value = GaussClass> {
    (base(), prop::collection::vec(-6i64..=6, 3)).prop_map(|(m, raw)| {
        let k = m.h2().coordinate_count();
        GaussClass::from_i64(m, &raw[..k]).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn two_and_four_fold_always_exist(gc in gauss_class()) {
        prop_assert!(n_fold_prolongation_exists(&gc, 2).unwrap());
        prop_assert!(n_fold_prolongation_exists(&gc, 4).unwrap());
    }

    #[test]
    fn prolongation_class_lies_in_four_h2(gc in gauss_class()) {
        let r = prolongation_euler(&gc).unwrap();
        let h2 = gc.base().h2();
        prop_assert!(reduce_mod_n(h2, &r.e_prolongation, &BigInt::from(4)).unwrap().zero);
        prop_assert_eq!(&h2.scale(&BigInt::from(2), &r.e_xi).unwrap(), &r.e_prolongation);
        prop_assert_eq!(&h2.scale(&BigInt::from(2), gc.g()).unwrap(), &r.e_xi);
    }

    #[test]
    fn existence_matches_bundle_obstruction(gc in gauss_class(), n in 2u64..=12) {
        let e = prolongation_euler(&gc).unwrap().e_prolongation;
        let p = CircleBundle::new(gc.base().clone(), e).unwrap();
        let exists = n_fold_prolongation_exists(&gc, n).unwrap();
        prop_assert_eq!(obstruction_vanishes(&p, n).unwrap(), exists);
        prop_assert_eq!(enumerate_covering_classes(&p, n).unwrap().is_obstructed(), !exists);
    }

    #[test]
    fn counterexamples_are_genuine(m in base(), n in 3u64..=12, bound in 0u64..=3) {
        match counterexample_search(&m, n, bound).unwrap() {
            Some(gc) => {
                prop_assert!(n != 4);
                prop_assert!(!n_fold_prolongation_exists(&gc, n).unwrap());
            }
            None => prop_assert!(n == 4 || m.h2().rank() == 0 || bound == 0),
        }
    }
}

#[test]
fn torus_counterexample_is_the_first_unit_vector() {
    let t3 = Manifold3Data::torus3();
    for n in [3, 5, 6, 7, 8, 9, 12] {
        let gc = counterexample_search(&t3, n, 3).unwrap().unwrap();
        assert_eq!(gc.g().to_i64s().unwrap(), vec![1, 0, 0], "n = {n}");
    }
    for n in [2, 4] {
        assert!(counterexample_search(&t3, n, 3).unwrap().is_none());
    }
}
