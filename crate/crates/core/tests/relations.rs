mod common;

use qfold::module::{
    build_module, verify_bar_compatibility, verify_defining_relations, verify_divided_power_relation,
    verify_ef_commutation, WeightModule,
};
use qfold::oracle::{freudenthal_at_depth, weyl_dim};

#[test]
fn relation_suite() {
    for (name, cd, lam, depth) in common::suite() {
        let t = std::time::Instant::now();
        let m = build_module(&cd, &lam, depth).unwrap();
        let r = verify_defining_relations(&m);
        assert!(r.passed(), "{name}: {:?}", r.first_failure());
        assert!(verify_bar_compatibility(&m).passed(), "{name}");
        for i in 0..cd.rank() {
            for n in 1..=3 {
                let r = verify_divided_power_relation(&m, i, n);
                assert!(r.passed(), "{name}: {:?}", r.first_failure());
                let r = verify_ef_commutation(&m, i, n);
                assert!(r.passed(), "{name}: {:?}", r.first_failure());
            }
        }
        if cd.is_finite_type() {
            assert!(m.window().is_none());
            assert_eq!(m.total_dim() as u64, weyl_dim(&cd, &lam).unwrap(), "{name}");
        }
        for g in m.grades() {
            assert_eq!(m.dim(&g) as u64, freudenthal_at_depth(&cd, &lam, &g, depth).unwrap(), "{name} {g:?}");
        }
        eprintln!("{name}: dim {} in {:?}", m.total_dim(), t.elapsed());
    }
}
