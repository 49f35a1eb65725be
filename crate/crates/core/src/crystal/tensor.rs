use super::{CrystalGraph, CrystalVertex, Payload};
use crate::error::{Error, Result};

/// `B_1 ⊗ B_2` with `f̃_i(b_1 ⊗ b_2) = f̃_i b_1 ⊗ b_2` when
/// `φ_i(b_1) > ε_i(b_2)` and `b_1 ⊗ f̃_i b_2` otherwise; `ẽ_i` acts on
/// `b_1` when `φ_i(b_1) ≥ ε_i(b_2)`.
pub fn tensor_crystal(b1: &CrystalGraph, b2: &CrystalGraph) -> Result<CrystalGraph> {
    if b1.cartan() != b2.cartan() {
        return Err(Error::CartanMismatch);
    }
    if let Some(d) = b1.window().or(b2.window()) {
        return Err(Error::IncompleteCrystal(d));
    }
    let n = b1.cartan().rank();
    let n2 = b2.len();
    let id = |x: usize, y: usize| x * n2 + y;
    let mut vertices = Vec::with_capacity(b1.len() * n2);
    let mut f = Vec::with_capacity(b1.len() * n2);
    let mut e = Vec::with_capacity(b1.len() * n2);
    for x in b1.vertices() {
        for y in b2.vertices() {
            let mut eps = vec![0; n];
            let mut phi = vec![0; n];
            let mut fr = vec![None; n];
            let mut er = vec![None; n];
            for i in 0..n {
                eps[i] = x.eps[i].max(y.eps[i] - x.wt.coords()[i]);
                phi[i] = y.phi[i].max(x.phi[i] + y.wt.coords()[i]);
                fr[i] = if x.phi[i] > y.eps[i] {
                    b1.f(x.id, i).map(|t| id(t, y.id))
                } else {
                    b2.f(y.id, i).map(|t| id(x.id, t))
                };
                er[i] = if x.phi[i] >= y.eps[i] {
                    b1.e(x.id, i).map(|t| id(t, y.id))
                } else {
                    b2.e(y.id, i).map(|t| id(x.id, t))
                };
            }
            let depth = x.depth.iter().zip(&y.depth).map(|(a, b)| a + b).collect();
            vertices.push(CrystalVertex {
                id: id(x.id, y.id),
                wt: x.wt.add(&y.wt),
                depth,
                eps,
                phi,
                payload: Payload::Pair(x.id, y.id),
            });
            f.push(fr);
            e.push(er);
        }
    }
    Ok(CrystalGraph::from_parts(b1.cartan().clone(), vertices, f, e, None, b1.order().to_vec()))
}
