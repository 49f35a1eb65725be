use qfold::acceptance::{c2, character_instances, criteria, g2};
use qfold::cartan::Weight;
use qfold::crystal::{build_crystal, fold_crystal, unfolded_crystal};
use qfold::module::{build_module, WeightModule};
use qfold::oracle::weyl_dim;
use std::time::Instant;

#[test]
fn acceptance() {
    let mut failed = Vec::new();
    for c in criteria() {
        let start = Instant::now();
        let o = c.run();
        let verdict = if o.passed { "PASS" } else { "FAIL" };
        let detail = o
            .first_failure
            .as_ref()
            .map(|f| format!(" first failure: [{}] {} at {}", f.report, f.identity, f.block))
            .unwrap_or_default();
        println!("criterion {:>2} {verdict} {} ({} checks, {:.2?}){detail}", o.id, o.title, o.checks, start.elapsed());
        if !o.passed {
            failed.push(o.id);
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}

#[test]
fn literal_dimensions() {
    // C2 with s = (2,1): 5, 4, 16; G2 short: 7
    let expected = [5u64, 4, 16, 7];
    for ((name, cd, l, depth), want) in character_instances().into_iter().zip(expected) {
        assert_eq!(weyl_dim(&cd, &l).unwrap(), want, "{name}");
        assert_eq!(build_module(&cd, &l, depth).unwrap().total_dim() as u64, want, "{name}");
        assert_eq!(build_crystal(&cd, &l, depth).unwrap().len() as u64, want, "{name}");
    }
    let m = build_module(&c2(), &Weight::from_coords(vec![0, 1]), 100).unwrap();
    assert_eq!(m.total_dim().pow(3), 64);
}

#[test]
fn literal_folded_sizes() {
    let (q, bhat) = unfolded_crystal(&g2(), &Weight::from_coords(vec![0, 1]), 100).unwrap();
    assert_eq!((q.vertex_count(), bhat.len()), (4, 28));
    assert_eq!(fold_crystal(&bhat, q.a_vertex()).unwrap().len(), 7);
    let (q, bhat) = unfolded_crystal(&c2(), &Weight::from_coords(vec![0, 1]), 100).unwrap();
    assert_eq!((q.vertex_count(), bhat.len()), (3, 6));
    assert_eq!(fold_crystal(&bhat, q.a_vertex()).unwrap().len(), 4);
}
