mod common;

use common::*;
use qfold::cartan::{CartanData, Weight};
use qfold::crystal::{
    build_crystal, crystal_isomorphic, decompose_by_highest_weight, fold_crystal, stabilization_check, tensor_crystal,
    unfolded_crystal, verify_crystal_axioms,
};
use qfold::module::build_module;
use qfold::oracle::{height, weyl_dim, Freudenthal};
use qfold::tensor::{decompose_tensor_module, tensor_module};

/// Dominant weights of a rank-2 datum with `dim L(λ) ≤ bound`.
fn small_weights(cd: &CartanData, bound: u64) -> Vec<Weight> {
    let mut out = Vec::new();
    for a in 0..40 {
        for b in 0..40 {
            let l = w(&[a, b]);
            if weyl_dim(cd, &l).unwrap() <= bound {
                out.push(l);
            }
        }
    }
    out
}

#[test]
fn crystal_counts_match_the_oracle() {
    for (name, cd, lambda, depth) in suite() {
        let b = build_crystal(&cd, &lambda, depth).unwrap();
        let r = verify_crystal_axioms(&b);
        assert!(r.passed(), "{name}: {:?}", r.first_failure());
        let counts = b.depth_counts();
        let top = counts.keys().map(|nu| height(nu)).max().unwrap();
        let oracle = Freudenthal::new(&cd, &lambda, depth.min(top + 1)).unwrap().character();
        for (nu, &m) in oracle.entries() {
            assert_eq!(counts.get(nu).copied().unwrap_or(0) as u64, m, "{name} at {nu:?}");
        }
        assert_eq!(counts.values().sum::<usize>() as u64, oracle.total(), "{name}");
    }
}

#[test]
fn folding_a3_to_c2() {
    let cd = c2();
    let weights = small_weights(&cd, 500);
    assert!(weights.len() > 20);
    for lambda in weights {
        let (q, bhat) = unfolded_crystal(&cd, &lambda, 1000).unwrap();
        assert_eq!(bhat.window(), None);
        let folded = fold_crystal(&bhat, q.a_vertex()).unwrap();
        let direct = build_crystal(&cd, &lambda, 1000).unwrap();
        assert!(crystal_isomorphic(&folded, &direct).is_some(), "{lambda:?}");
    }
}

#[test]
fn folding_d4_to_g2() {
    let cd = g2();
    let (q, bhat) = unfolded_crystal(&cd, &w(&[0, 1]), 1000).unwrap();
    assert_eq!(q.vertex_count(), 4);
    assert_eq!(bhat.len(), 28);
    let folded = fold_crystal(&bhat, q.a_vertex()).unwrap();
    assert_eq!(folded.len(), 7);
    let direct = build_crystal(&cd, &w(&[0, 1]), 1000).unwrap();
    assert!(crystal_isomorphic(&folded, &direct).is_some());
    for lambda in small_weights(&cd, 200) {
        let (q, bhat) = unfolded_crystal(&cd, &lambda, 1000).unwrap();
        let folded = fold_crystal(&bhat, q.a_vertex()).unwrap();
        let direct = build_crystal(&cd, &lambda, 1000).unwrap();
        assert!(crystal_isomorphic(&folded, &direct).is_some(), "{lambda:?}");
    }
}

#[test]
fn tensor_decompositions_agree() {
    let cases = [
        (a1(), vec![1], vec![1]),
        (a1(), vec![2], vec![1]),
        (c2(), vec![1, 0], vec![1, 0]),
        (c2(), vec![1, 0], vec![0, 1]),
        (c2(), vec![0, 1], vec![0, 1]),
        (a2(), vec![1, 1], vec![1, 0]),
        (g2(), vec![0, 1], vec![0, 1]),
    ];
    for (cd, l1, l2) in cases {
        let b = tensor_crystal(&build_crystal(&cd, &w(&l1), 100).unwrap(), &build_crystal(&cd, &w(&l2), 100).unwrap()).unwrap();
        assert!(verify_crystal_axioms(&b).passed());
        let t = tensor_module(&[build_module(&cd, &w(&l1), 100).unwrap(), build_module(&cd, &w(&l2), 100).unwrap()]).unwrap();
        assert_eq!(decompose_by_highest_weight(&b), decompose_tensor_module(&t), "{l1:?} {l2:?}");
    }
}

#[test]
fn b_infinity_window() {
    let r = stabilization_check(&c2(), &w(&[3, 3]), &w(&[4, 4]), 3).unwrap();
    assert!(r.passed(), "{:?}", r.first_failure());
}
