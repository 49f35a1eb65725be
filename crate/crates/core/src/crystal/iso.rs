use super::{build_crystal, CrystalGraph};
use crate::cartan::{CartanData, Weight};
use crate::error::Result;
use crate::linalg::Grade;
use crate::oracle::height;
use crate::report::{block_label, Report};
use std::collections::{BTreeMap, VecDeque};

/// Multiset of weights of the vertices killed by every `ẽ_i`.
pub fn decompose_by_highest_weight(b: &CrystalGraph) -> BTreeMap<Weight, usize> {
    let mut out = BTreeMap::new();
    for &h in b.highest() {
        *out.entry(b.vertex(h).wt.clone()).or_insert(0) += 1;
    }
    out
}

/// Walks both graphs from `(x, y)` in lockstep along `f̃` and `ẽ`, extending
/// `map`; fails on any disagreement of edges, weights or string data.
fn match_from(b1: &CrystalGraph, b2: &CrystalGraph, x: usize, y: usize, map: &mut [Option<usize>], used: &mut [bool]) -> bool {
    let n = b1.cartan().rank();
    let mut queue = VecDeque::from([(x, y)]);
    if used[y] || map[x].is_some() {
        return false;
    }
    map[x] = Some(y);
    used[y] = true;
    while let Some((u, w)) = queue.pop_front() {
        let (vu, vw) = (b1.vertex(u), b2.vertex(w));
        if vu.wt != vw.wt || vu.eps != vw.eps || vu.phi != vw.phi {
            return false;
        }
        for i in 0..n {
            for (s, t) in [(b1.f(u, i), b2.f(w, i)), (b1.e(u, i), b2.e(w, i))] {
                match (s, t) {
                    (None, None) => {}
                    (Some(s), Some(t)) => match map[s] {
                        Some(m) if m == t => {}
                        Some(_) => return false,
                        None if used[t] => return false,
                        None => {
                            map[s] = Some(t);
                            used[t] = true;
                            queue.push_back((s, t));
                        }
                    },
                    _ => return false,
                }
            }
        }
    }
    true
}

/// An edge-, weight- and string-preserving bijection `B_1 → B_2`, found by
/// lockstep search from highest-weight vertices taken in weight order.
pub fn crystal_isomorphic(b1: &CrystalGraph, b2: &CrystalGraph) -> Option<Vec<usize>> {
    if b1.cartan() != b2.cartan() || b1.len() != b2.len() {
        return None;
    }
    let mut h1: Vec<usize> = b1.highest().to_vec();
    let mut h2: Vec<usize> = b2.highest().to_vec();
    if h1.len() != h2.len() {
        return None;
    }
    h1.sort_by(|&a, &b| b1.vertex(a).wt.cmp(&b1.vertex(b).wt).then(a.cmp(&b)));
    h2.sort_by(|&a, &b| b2.vertex(a).wt.cmp(&b2.vertex(b).wt).then(a.cmp(&b)));
    let mut map = vec![None; b1.len()];
    let mut used = vec![false; b2.len()];
    for (&x, &y) in h1.iter().zip(&h2) {
        if !match_from(b1, b2, x, y, &mut map, &mut used) {
            return None;
        }
    }
    map.into_iter().collect()
}

fn window_profile(b: &CrystalGraph, h: i64) -> (BTreeMap<Grade, usize>, BTreeMap<(Grade, Vec<i64>, Vec<Option<Grade>>), usize>) {
    let mut counts = BTreeMap::new();
    let mut local = BTreeMap::new();
    let n = b.cartan().rank();
    for v in b.vertices().iter().filter(|v| height(&v.depth) <= h) {
        *counts.entry(v.depth.clone()).or_insert(0) += 1;
        // edges inside the window, recorded by the depth they reach
        let out: Vec<Option<Grade>> = (0..n)
            .map(|i| b.f(v.id, i).map(|t| b.vertex(t).depth.clone()).filter(|d| height(d) <= h))
            .collect();
        *local.entry((v.depth.clone(), v.eps.clone(), out)).or_insert(0) += 1;
    }
    (counts, local)
}

/// Compares `B(λ_1)` and `B(λ_2)` on the depths `ν` of height at most `h`:
/// vertex counts per `ν`, and the multiset of local pictures (depth, `ε`,
/// which `f̃_i` stay in the window).
pub fn stabilization_check(cd: &CartanData, l1: &Weight, l2: &Weight, h: i64) -> Result<Report> {
    let b1 = build_crystal(cd, l1, h + 1)?;
    let b2 = build_crystal(cd, l2, h + 1)?;
    let (c1, p1) = window_profile(&b1, h);
    let (c2, p2) = window_profile(&b2, h);
    let mut report = Report::new("B(infinity) window", Some(h));
    for nu in c1.keys().chain(c2.keys()).collect::<std::collections::BTreeSet<_>>() {
        report.record("|B(l1)_(l1-nu)| = |B(l2)_(l2-nu)|", block_label(nu), c1.get(nu) == c2.get(nu));
    }
    report.record("local graph data agree", "window", p1 == p2);
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cartan::validate_cartan;
    use crate::crystal::tensor_crystal;

    fn w(c: &[i64]) -> Weight {
        Weight::from_coords(c.to_vec())
    }

    #[test]
    fn sl2_products() {
        let a1 = validate_cartan(&[vec![2]], None).unwrap();
        let b1 = build_crystal(&a1, &w(&[1]), 10).unwrap();
        let b2 = build_crystal(&a1, &w(&[2]), 10).unwrap();
        let b0 = build_crystal(&a1, &w(&[0]), 10).unwrap();
        let t = tensor_crystal(&b1, &b1).unwrap();
        let d = decompose_by_highest_weight(&t);
        assert_eq!(d, BTreeMap::from([(w(&[0]), 1), (w(&[2]), 1)]));
        assert!(crystal_isomorphic(&b2, &t).is_none());
        assert!(crystal_isomorphic(&tensor_crystal(&b2, &b0).unwrap(), &b2).is_some());
        assert_eq!(decompose_by_highest_weight(&tensor_crystal(&b0, &b2).unwrap()), BTreeMap::from([(w(&[2]), 1)]));
        let id = crystal_isomorphic(&b2, &b2).unwrap();
        assert_eq!(id, vec![0, 1, 2]);
    }

    #[test]
    fn associativity() {
        let c2 = validate_cartan(&[vec![2, -1], vec![-2, 2]], None).unwrap();
        let x = build_crystal(&c2, &w(&[0, 1]), 100).unwrap();
        let y = build_crystal(&c2, &w(&[1, 0]), 100).unwrap();
        let l = tensor_crystal(&tensor_crystal(&x, &y).unwrap(), &x).unwrap();
        let r = tensor_crystal(&x, &tensor_crystal(&y, &x).unwrap()).unwrap();
        assert!(crystal_isomorphic(&l, &r).is_some());
        assert!(crystal_isomorphic(&l, &tensor_crystal(&tensor_crystal(&x, &x).unwrap(), &y).unwrap()).is_some());
    }

    #[test]
    fn small_weights_do_not_stabilize() {
        let c2 = validate_cartan(&[vec![2, -1], vec![-2, 2]], None).unwrap();
        let r = stabilization_check(&c2, &w(&[1, 1]), &w(&[4, 4]), 3).unwrap();
        assert!(!r.passed());
    }
}
