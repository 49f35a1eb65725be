use proptest::prelude::*;
use qfold::cartan::{validate_cartan, CartanData, Weight};
use qfold::crystal::{build_crystal, decompose_by_highest_weight, tensor_crystal, verify_crystal_axioms};
use qfold::module::{build_module, WeightModule};
use qfold::oracle::weyl_dim;
use qfold::quiver::{cartan_from_quiver, fold_from_cartan};
use qfold::tensor::{decompose_tensor_module, tensor_module};

/// Finite-type rank-2 data `[[2,-a],[-b,2]]` with `ab ≤ 3`.
fn finite_rank2() -> impl Strategy<Value = CartanData> {
    prop_oneof![Just((1, 1)), Just((1, 2)), Just((2, 1)), Just((1, 3)), Just((3, 1))]
        .prop_map(|(a, b)| validate_cartan(&[vec![2, -a], vec![-b, 2]], None).unwrap())
}

fn small_weight() -> impl Strategy<Value = Weight> {
    (0i64..3, 0i64..3).prop_map(|(x, y)| Weight::from_coords(vec![x, y]))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn crystal_module_weyl_agree(cd in finite_rank2(), l in small_weight()) {
        prop_assume!(weyl_dim(&cd, &l).unwrap() <= 40);
        let b = build_crystal(&cd, &l, 1000).unwrap();
        let m = build_module(&cd, &l, 1000).unwrap();
        prop_assert!(verify_crystal_axioms(&b).passed());
        prop_assert_eq!(b.len() as u64, weyl_dim(&cd, &l).unwrap());
        prop_assert_eq!(m.total_dim(), b.len());
        for (nu, k) in b.depth_counts() {
            prop_assert_eq!(m.dim(&nu), k);
        }
    }

    #[test]
    fn tensor_products_decompose_alike(cd in finite_rank2(), l1 in small_weight(), l2 in small_weight()) {
        prop_assume!(weyl_dim(&cd, &l1).unwrap() * weyl_dim(&cd, &l2).unwrap() <= 100);
        let b = tensor_crystal(&build_crystal(&cd, &l1, 1000).unwrap(), &build_crystal(&cd, &l2, 1000).unwrap()).unwrap();
        let t = tensor_module(&[build_module(&cd, &l1, 1000).unwrap(), build_module(&cd, &l2, 1000).unwrap()]).unwrap();
        prop_assert_eq!(decompose_by_highest_weight(&b), decompose_tensor_module(&t));
    }

    #[test]
    fn quiver_round_trip(a in 1i64..6, b in 1i64..6) {
        let cd = validate_cartan(&[vec![2, -a], vec![-b, 2]], None).unwrap();
        prop_assert_eq!(cartan_from_quiver(&fold_from_cartan(&cd)).unwrap(), cd);
    }
}
