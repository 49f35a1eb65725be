use super::{build_crystal_with_order, CrystalGraph, CrystalVertex, Monomial, Payload};
use crate::cartan::{validate_cartan, CartanData, Weight};
use crate::error::{Error, Result};
use crate::quiver::{fold_from_cartan, QuiverWithAut};
use std::collections::HashMap;

fn orbits_of(a: &[usize]) -> Vec<Vec<usize>> {
    let mut seen = vec![false; a.len()];
    let mut out = Vec::new();
    for k in 0..a.len() {
        if seen[k] {
            continue;
        }
        let mut orbit = vec![k];
        seen[k] = true;
        let mut x = a[k];
        while x != k {
            seen[x] = true;
            orbit.push(x);
            x = a[x];
        }
        orbit.sort_unstable();
        out.push(orbit);
    }
    out
}

/// `c_{⟨i⟩⟨j⟩} = Σ_{j' ∈ ⟨j⟩} ĉ_{i j'}` for any `i ∈ ⟨i⟩`, symmetrized by
/// the orbit sizes.
pub fn folded_cartan(unfolded: &CartanData, a: &[usize]) -> Result<CartanData> {
    let orbits = orbits_of(a);
    let c: Vec<Vec<i64>> = orbits
        .iter()
        .map(|oi| orbits.iter().map(|oj| oj.iter().map(|&j| unfolded.entry(oi[0], j)).sum()).collect())
        .collect();
    let s: Vec<u32> = orbits.iter().map(|o| o.len() as u32).collect();
    validate_cartan(&c, Some(&s))
}

/// `λ̂_k = ⟨orbit(k), λ⟩`.
pub fn unfold_weight(q: &QuiverWithAut, lambda: &Weight) -> Weight {
    Weight::from_coords((0..q.vertex_count()).map(|k| lambda.coords()[q.orbit_of(k)]).collect())
}

/// The unfolded quiver of `cd` and `B(λ̂)` over it, with the sign order
/// taken from the orbit index so that it is a-invariant.
pub fn unfolded_crystal(cd: &CartanData, lambda: &Weight, depth: i64) -> Result<(QuiverWithAut, CrystalGraph)> {
    let q = fold_from_cartan(cd);
    let hat = q.unfolded_cartan()?;
    let order: Vec<usize> = (0..q.vertex_count()).map(|k| q.orbit_of(k)).collect();
    let b = build_crystal_with_order(&hat, &unfold_weight(&q, lambda), depth, &order)?;
    Ok((q, b))
}

fn act(a: &[usize], m: &Monomial) -> Monomial {
    m.iter().map(|(&(k, n), &y)| ((a[k], n), y)).collect()
}

/// The a-fixed vertices of `bhat` with orbit operators
/// `f̃_⟨k⟩ = ∏_{k ∈ ⟨k⟩} f̃_k`.
pub fn fold_crystal(bhat: &CrystalGraph, a: &[usize]) -> Result<CrystalGraph> {
    let rank = bhat.cartan().rank();
    if a.len() != rank {
        return Err(Error::DimensionMismatch { expected: rank, got: a.len() });
    }
    let mut sorted = a.to_vec();
    sorted.sort_unstable();
    if sorted != (0..rank).collect::<Vec<_>>() {
        return Err(Error::NotAdmissible("a is not a permutation of the index set".into()));
    }
    let order = bhat.order();
    if (0..rank).any(|k| order[a[k]] != order[k]) {
        return Err(Error::NotAdmissible("monomial sign order is not a-invariant".into()));
    }
    let folded = folded_cartan(bhat.cartan(), a)?;
    let orbits = orbits_of(a);
    let payload_of = |v: &CrystalVertex| match &v.payload {
        Payload::Monomial(m) => Some(m.clone()),
        _ => None,
    };
    let is_fixed = |v: &CrystalVertex| payload_of(v).is_some_and(|m| act(a, &m) == m);
    match bhat.highest() {
        [h] if is_fixed(bhat.vertex(*h)) => {}
        _ => return Err(Error::NonInvariantHighestWeight),
    }

    let fixed: Vec<usize> = bhat.vertices().iter().filter(|v| is_fixed(v)).map(|v| v.id).collect();
    let index: HashMap<usize, usize> = fixed.iter().enumerate().map(|(new, &old)| (old, new)).collect();
    let mut vertices = Vec::with_capacity(fixed.len());
    let mut f = Vec::with_capacity(fixed.len());
    let mut e = Vec::with_capacity(fixed.len());
    for (new, &old) in fixed.iter().enumerate() {
        let v = bhat.vertex(old);
        let mut eps = Vec::with_capacity(orbits.len());
        let mut phi = Vec::with_capacity(orbits.len());
        let mut fr = Vec::with_capacity(orbits.len());
        let mut er = Vec::with_capacity(orbits.len());
        for (o, orbit) in orbits.iter().enumerate() {
            let k = orbit[0];
            if orbit.iter().any(|&j| v.eps[j] != v.eps[k] || v.phi[j] != v.phi[k]) {
                return Err(Error::OrbitOperatorMismatch { orbit: o, vertex: old });
            }
            eps.push(v.eps[k]);
            phi.push(v.phi[k]);
            let along = |step: &dyn Fn(usize, usize) -> Option<usize>| {
                orbit.iter().try_fold(old, |b, &j| step(b, j)).and_then(|t| index.get(&t).copied())
            };
            fr.push(along(&|b, j| bhat.f(b, j)));
            er.push(along(&|b, j| bhat.e(b, j)));
        }
        let pick = |x: &[i64]| orbits.iter().map(|o| x[o[0]]).collect::<Vec<_>>();
        vertices.push(CrystalVertex {
            id: new,
            wt: Weight::from_coords(pick(v.wt.coords())),
            depth: pick(&v.depth),
            eps,
            phi,
            payload: Payload::Orbit(payload_of(v).expect("fixed vertices carry monomials")),
        });
        f.push(fr);
        e.push(er);
    }
    let folded_order = (0..orbits.len()).collect();
    Ok(CrystalGraph::from_parts(folded, vertices, f, e, bhat.window(), folded_order))
}
