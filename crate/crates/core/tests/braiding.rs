mod common;

use common::*;
use num_traits::ToPrimitive;
use qfold::arith::RatFunc;
use qfold::cartan::{CartanData, Weight};
use qfold::linalg::GradedOperator;
use qfold::module::build_module;
use qfold::rmatrix::{braiding, compute_theta, verify_braiding, verify_psi, verify_yang_baxter};
use qfold::tensor::tensor_module;

fn casimir(cd: &CartanData, nu: &Weight) -> num_rational::Ratio<i64> {
    let rho = Weight::from_coords(vec![1; cd.rank()]);
    cd.sym_form(nu, &nu.add(&rho.scale(2))).unwrap()
}

/// Eigenvalue of `R` on the summand `L(ν)` of `L(λ) ⊗ L(λ)`.
fn eigenvalue(cd: &CartanData, lambda: &Weight, nu: &Weight, sign: i64) -> RatFunc {
    let d = cd.denom();
    let e = -(casimir(cd, nu) - casimir(cd, lambda) * 2) / 2 * d as i64;
    assert!(e.is_integer());
    RatFunc::t_pow(d, e.to_integer().to_i64().unwrap()) * RatFunc::from_int(sign)
}

/// `Π (R - ε_ν)` vanishes and `tr R = Σ dim L(ν) ε_ν`.
fn check_spectrum(cd: &CartanData, lambda: &Weight, summands: &[(Vec<i64>, i64, u64)]) {
    let m = build_module(cd, lambda, 100).unwrap();
    let b = braiding(&m, &m).unwrap();
    let id = b.source.identity();
    let mut prod: Option<GradedOperator> = None;
    let mut trace = RatFunc::zero();
    for (nu, sign, dim) in summands {
        let ev = eigenvalue(cd, lambda, &w(nu), *sign);
        trace = trace + RatFunc::from_int(*dim as i64) * &ev;
        let factor = b.r.sub(&id.scale(&ev));
        prod = Some(match prod {
            None => factor,
            Some(p) => p.compose(&factor),
        });
    }
    assert!(prod.unwrap().is_zero(), "minimal polynomial for {lambda:?}");
    let tr = b
        .r
        .blocks()
        .fold(RatFunc::zero(), |acc, (_, blk)| (0..blk.rows()).fold(acc, |a, k| a + blk.get(k, k)));
    assert_eq!(tr, trace, "trace for {lambda:?}");
}

#[test]
fn spectrum_on_squares() {
    // sl2: L(1)⊗L(1) = L(2) ⊕ L(0), L(2)⊗L(2) = L(4) ⊕ L(2) ⊕ L(0)
    check_spectrum(&a1(), &w(&[1]), &[(vec![2], 1, 3), (vec![0], -1, 1)]);
    check_spectrum(&a1(), &w(&[2]), &[(vec![4], 1, 5), (vec![2], -1, 3), (vec![0], 1, 1)]);
    // C2 4-dim: Sym² = L(2b2), Λ² = L(b1) ⊕ L(0)
    check_spectrum(&c2(), &w(&[0, 1]), &[(vec![0, 2], 1, 10), (vec![1, 0], -1, 5), (vec![0, 0], -1, 1)]);
    // A2 3-dim: Sym² = L(2w1), Λ² = L(w2)
    check_spectrum(&a2(), &w(&[1, 0]), &[(vec![2, 0], 1, 6), (vec![0, 1], -1, 3)]);
}

#[test]
fn braidings_are_module_maps() {
    let cases = [
        (a1(), vec![1], vec![2]),
        (a2(), vec![1, 0], vec![0, 1]),
        (c2(), vec![1, 0], vec![0, 1]),
        (c2(), vec![1, 0], vec![1, 0]),
        (g2(), vec![0, 1], vec![0, 1]),
    ];
    for (cd, l1, l2) in cases {
        let m1 = build_module(&cd, &w(&l1), 100).unwrap();
        let m2 = build_module(&cd, &w(&l2), 100).unwrap();
        let t = tensor_module(&[m1.clone(), m2.clone()]).unwrap();
        let theta = compute_theta(&t, None).unwrap();
        let r = verify_psi(&t, &theta);
        assert!(r.passed(), "{l1:?} {l2:?} {:?}", r.first_failure());
        let b = braiding(&m1, &m2).unwrap();
        let r = verify_braiding(&b);
        assert!(r.passed(), "{l1:?} {l2:?} {:?}", r.first_failure());
    }
}

#[test]
fn yang_baxter_mixed_factors() {
    let cd = c2();
    let m1 = build_module(&cd, &w(&[0, 1]), 100).unwrap();
    let m2 = build_module(&cd, &w(&[1, 0]), 100).unwrap();
    let r = verify_yang_baxter(&m1, &m2, &m1).unwrap();
    assert!(r.passed(), "{:?}", r.first_failure());
    let a = a1();
    let p = build_module(&a, &w(&[1]), 100).unwrap();
    let q = build_module(&a, &w(&[2]), 100).unwrap();
    let r = verify_yang_baxter(&p, &q, &p).unwrap();
    assert!(r.passed(), "{:?}", r.first_failure());
}

#[test]
fn affine_braiding_needs_a_form() {
    let cd = affine_a1();
    let m = build_module(&cd, &w(&[1, 0]), 3).unwrap();
    assert!(braiding(&m, &m).is_err());
}
