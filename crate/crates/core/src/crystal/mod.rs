//! Crystals of integrable highest-weight modules in the monomial
//! realization, their tensor products, and folding by a diagram
//! automorphism.
//!
//! A monomial is a finitely supported exponent map `(i, n) ↦ y_i(n)` on
//! variables `Y_i(n)`. With `φ_i = max_n Σ_{k≤n} y_i(k)` and
//! `ε_i = max_n -Σ_{k>n} y_i(k)`, `f̃_i` divides by `A_i(n_f)` at the
//! smallest maximizing `n` and `ẽ_i` multiplies by `A_i(n_e)` at the
//! largest one. `B(λ)` is the component of `∏ Y_i(0)^{⟨i,λ⟩}`.

mod fold;
mod iso;
mod tensor;

pub use fold::{fold_crystal, folded_cartan, unfold_weight, unfolded_crystal};
pub use iso::{crystal_isomorphic, decompose_by_highest_weight, stabilization_check};
pub use tensor::tensor_crystal;

use crate::cartan::{CartanData, Weight};
use crate::error::{Error, Result};
use crate::linalg::{unit_grade, Grade};
use crate::oracle::height;
use crate::report::{block_label, Report};
use std::collections::{BTreeMap, HashMap, VecDeque};

pub type Monomial = BTreeMap<(usize, i64), i64>;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Payload {
    Monomial(Monomial),
    Pair(usize, usize),
    /// An a-fixed vertex of an unfolded crystal.
    Orbit(Monomial),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CrystalVertex {
    pub id: usize,
    pub wt: Weight,
    /// `ν` with `wt = λ - Σ ν_j α_j` for the component's `λ`.
    pub depth: Grade,
    pub eps: Vec<i64>,
    pub phi: Vec<i64>,
    pub payload: Payload,
}

#[derive(Debug, Clone)]
pub struct CrystalGraph {
    cartan: CartanData,
    vertices: Vec<CrystalVertex>,
    f: Vec<Vec<Option<usize>>>,
    e: Vec<Vec<Option<usize>>>,
    highest: Vec<usize>,
    window: Option<i64>,
    order: Vec<usize>,
}

impl CrystalGraph {
    pub(crate) fn from_parts(
        cartan: CartanData,
        vertices: Vec<CrystalVertex>,
        f: Vec<Vec<Option<usize>>>,
        e: Vec<Vec<Option<usize>>>,
        window: Option<i64>,
        order: Vec<usize>,
    ) -> Self {
        let highest = vertices.iter().filter(|v| v.eps.iter().all(|&x| x == 0)).map(|v| v.id).collect();
        Self { cartan, vertices, f, e, highest, window, order }
    }

    pub fn cartan(&self) -> &CartanData {
        &self.cartan
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn vertices(&self) -> &[CrystalVertex] {
        &self.vertices
    }

    pub fn vertex(&self, id: usize) -> &CrystalVertex {
        &self.vertices[id]
    }

    pub fn f(&self, b: usize, i: usize) -> Option<usize> {
        self.f[b][i]
    }

    pub fn e(&self, b: usize, i: usize) -> Option<usize> {
        self.e[b][i]
    }

    /// `(source, i, target)` with `f̃_i(source) = target`.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize, usize)> + '_ {
        self.f
            .iter()
            .enumerate()
            .flat_map(|(b, row)| row.iter().enumerate().filter_map(move |(i, t)| t.map(|t| (b, i, t))))
    }

    pub fn highest(&self) -> &[usize] {
        &self.highest
    }

    /// Height bound of a truncated crystal, `None` when complete.
    pub fn window(&self) -> Option<i64> {
        self.window
    }

    /// Node order `o` fixing the monomial sign convention.
    pub fn order(&self) -> &[usize] {
        &self.order
    }

    pub fn weight_counts(&self) -> BTreeMap<Weight, usize> {
        let mut out = BTreeMap::new();
        for v in &self.vertices {
            *out.entry(v.wt.clone()).or_insert(0) += 1;
        }
        out
    }

    pub fn depth_counts(&self) -> BTreeMap<Grade, usize> {
        let mut out = BTreeMap::new();
        for v in &self.vertices {
            *out.entry(v.depth.clone()).or_insert(0) += 1;
        }
        out
    }
}

fn a_monomial(cd: &CartanData, order: &[usize], i: usize, n: i64) -> Vec<((usize, i64), i64)> {
    let mut out = vec![((i, n), 1), ((i, n + 1), 1)];
    for j in 0..cd.rank() {
        let c = cd.entry(j, i);
        if j != i && c != 0 {
            let shift = i64::from(order[j] > order[i]);
            out.push(((j, n + shift), c));
        }
    }
    out
}

fn multiply(m: &Monomial, factors: &[((usize, i64), i64)], sign: i64) -> Monomial {
    let mut out = m.clone();
    for &(k, y) in factors {
        let e = out.entry(k).or_insert(0);
        *e += sign * y;
        if *e == 0 {
            out.remove(&k);
        }
    }
    out
}

/// `(φ_i, ε_i, n_f, n_e)` of a monomial. The partial sums
/// `S(n) = Σ_{k≤n} y_i(k)` are constant on the regions between support
/// points; `n_f` starts the first maximal region and `n_e` ends the last.
/// Either is meaningless (and unused) when the matching string length is 0.
fn monomial_string(m: &Monomial, i: usize) -> (i64, i64, i64, i64) {
    let pts: Vec<(i64, i64)> = m.range((i, i64::MIN)..=(i, i64::MAX)).map(|(&(_, n), &y)| (n, y)).collect();
    if pts.is_empty() {
        return (0, 0, 0, 0);
    }
    let total: i64 = pts.iter().map(|t| t.1).sum();
    let mut sums = Vec::with_capacity(pts.len());
    let mut acc = 0;
    for &(_, y) in &pts {
        acc += y;
        sums.push(acc);
    }
    let best = sums.iter().copied().max().unwrap().max(0);
    let n_f = pts.iter().zip(&sums).find(|(_, &s)| s == best).map_or(pts[0].0 - 1, |(p, _)| p.0);
    // region k runs from pts[k] to pts[k+1] - 1; the region before pts[0] has S = 0
    let n_e = match sums.iter().rposition(|&s| s == best) {
        Some(k) if k + 1 < pts.len() => pts[k + 1].0 - 1,
        Some(_) => i64::MAX,
        None => pts[0].0 - 1,
    };
    (best, best - total, n_f, n_e)
}

fn monomial_weight(m: &Monomial, rank: usize) -> Weight {
    let mut c = vec![0; rank];
    for (&(i, _), &y) in m {
        c[i] += y;
    }
    Weight::from_coords(c)
}

pub fn f_monomial(cd: &CartanData, order: &[usize], m: &Monomial, i: usize) -> Option<Monomial> {
    let (phi, _, n_f, _) = monomial_string(m, i);
    (phi > 0).then(|| multiply(m, &a_monomial(cd, order, i, n_f), -1))
}

pub fn e_monomial(cd: &CartanData, order: &[usize], m: &Monomial, i: usize) -> Option<Monomial> {
    let (_, eps, _, n_e) = monomial_string(m, i);
    (eps > 0).then(|| multiply(m, &a_monomial(cd, order, i, n_e), 1))
}

/// `B(λ)` with the node order `o(i) = i`.
pub fn build_crystal(cd: &CartanData, lambda: &Weight, depth: i64) -> Result<CrystalGraph> {
    build_crystal_with_order(cd, lambda, depth, &(0..cd.rank()).collect::<Vec<_>>())
}

/// `B(λ)` generated breadth-first by `f̃`, keeping vertices of height at
/// most `depth`.
pub fn build_crystal_with_order(cd: &CartanData, lambda: &Weight, depth: i64, order: &[usize]) -> Result<CrystalGraph> {
    let n = cd.rank();
    if lambda.coords().len() != n {
        return Err(Error::DimensionMismatch { expected: n, got: lambda.coords().len() });
    }
    if lambda.coords().iter().any(|&x| x < 0) {
        return Err(Error::NotDominant(lambda.coords().to_vec()));
    }
    let top: Monomial = lambda.coords().iter().enumerate().filter(|(_, &x)| x != 0).map(|(i, &x)| ((i, 0), x)).collect();
    let mut index: HashMap<Monomial, usize> = HashMap::new();
    let mut monomials = vec![top.clone()];
    let mut depths = vec![vec![0; n]];
    index.insert(top, 0);
    let mut f = vec![vec![None; n]];
    let mut truncated = false;
    let mut queue = VecDeque::from([0usize]);
    while let Some(b) = queue.pop_front() {
        for i in 0..n {
            let Some(next) = f_monomial(cd, order, &monomials[b], i) else { continue };
            let nu: Grade = depths[b].iter().zip(unit_grade(n, i, 1)).map(|(a, b)| a + b).collect();
            if height(&nu) > depth {
                truncated = true;
                continue;
            }
            let id = *index.entry(next.clone()).or_insert_with(|| {
                monomials.push(next);
                depths.push(nu);
                f.push(vec![None; n]);
                queue.push_back(monomials.len() - 1);
                monomials.len() - 1
            });
            f[b][i] = Some(id);
        }
    }
    let mut vertices = Vec::with_capacity(monomials.len());
    let mut e = vec![vec![None; n]; monomials.len()];
    for (id, (m, nu)) in monomials.into_iter().zip(depths).enumerate() {
        let mut eps = vec![0; n];
        let mut phi = vec![0; n];
        for i in 0..n {
            let (p, q, _, _) = monomial_string(&m, i);
            phi[i] = p;
            eps[i] = q;
            e[id][i] = e_monomial(cd, order, &m, i).and_then(|up| index.get(&up).copied());
        }
        vertices.push(CrystalVertex { id, wt: monomial_weight(&m, n), depth: nu, eps, phi, payload: Payload::Monomial(m) });
    }
    Ok(CrystalGraph::from_parts(cd.clone(), vertices, f, e, truncated.then_some(depth), order.to_vec()))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StringData {
    pub eps: i64,
    pub phi: i64,
    /// `ẽ_i^{max}(b)`, `None` if the string top left the window.
    pub top: Option<usize>,
}

pub fn string_data(b: &CrystalGraph, v: usize, i: usize) -> Result<StringData> {
    if v >= b.len() {
        return Err(Error::IndexOutOfRange { index: v, size: b.len() });
    }
    if i >= b.cartan.rank() {
        return Err(Error::IndexOutOfRange { index: i, size: b.cartan.rank() });
    }
    let x = &b.vertices[v];
    let mut top = Some(v);
    for _ in 0..x.eps[i] {
        top = top.and_then(|t| b.e(t, i));
    }
    Ok(StringData { eps: x.eps[i], phi: x.phi[i], top })
}

/// Crystal axioms on every vertex: `φ - ε = ⟨i, wt⟩`, `ẽ` and `f̃` inverse,
/// weights drop by `α_i`, and strings are intervals of the stated length.
pub fn verify_crystal_axioms(b: &CrystalGraph) -> Report {
    let mut report = Report::new("crystal axioms", b.window);
    let cd = &b.cartan;
    for v in &b.vertices {
        let label = block_label(&v.depth);
        for i in 0..cd.rank() {
            report.record(format!("phi{i} - eps{i} = <{i}, wt>"), &label, v.phi[i] - v.eps[i] == v.wt.coords()[i]);
            report.record(format!("eps{i}, phi{i} >= 0"), &label, v.phi[i] >= 0 && v.eps[i] >= 0);
            if let Some(t) = b.f(v.id, i) {
                let w = &b.vertices[t];
                report.record(format!("e{i} f{i} = 1"), &label, b.e(t, i) == Some(v.id));
                report.record(format!("wt f{i} = wt - a{i}"), &label, w.wt == v.wt.sub(&cd.simple_root(i)));
                report.record(format!("eps{i}, phi{i} along f{i}"), &label, w.eps[i] == v.eps[i] + 1 && w.phi[i] == v.phi[i] - 1);
            } else if b.window.is_none() {
                report.record(format!("f{i} b = 0 iff phi{i} = 0"), &label, v.phi[i] == 0);
            }
            match b.e(v.id, i) {
                Some(s) => report.record(format!("f{i} e{i} = 1"), &label, b.f(s, i) == Some(v.id)),
                None => report.record(format!("e{i} b = 0 iff eps{i} = 0"), &label, v.eps[i] == 0),
            }
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cartan::validate_cartan;
    use crate::oracle::weyl_dim;

    fn w(c: &[i64]) -> Weight {
        Weight::from_coords(c.to_vec())
    }

    #[test]
    fn sl2_string() {
        let a1 = validate_cartan(&[vec![2]], None).unwrap();
        let b = build_crystal(&a1, &w(&[2]), 10).unwrap();
        assert_eq!(b.len(), 3);
        assert_eq!(b.window(), None);
        let bottom = b.f(b.f(0, 0).unwrap(), 0).unwrap();
        assert_eq!(b.vertex(bottom).wt, w(&[-2]));
        let s = string_data(&b, bottom, 0).unwrap();
        assert_eq!((s.eps, s.phi, s.top), (2, 0, Some(0)));
        assert_eq!(string_data(&b, 0, 0).unwrap().eps, 0);
        assert!(verify_crystal_axioms(&b).passed());
    }

    #[test]
    fn sizes_match_weyl() {
        let c2 = validate_cartan(&[vec![2, -1], vec![-2, 2]], None).unwrap();
        let g2 = validate_cartan(&[vec![2, -1], vec![-3, 2]], None).unwrap();
        for (cd, l) in [(&c2, [1, 0]), (&c2, [0, 1]), (&c2, [2, 3]), (&g2, [0, 1]), (&g2, [1, 1])] {
            let b = build_crystal(cd, &w(&l), 100).unwrap();
            assert_eq!(b.len() as u64, weyl_dim(cd, &w(&l)).unwrap(), "{l:?}");
            assert_eq!(b.highest(), &[0]);
            let r = verify_crystal_axioms(&b);
            assert!(r.passed(), "{l:?} {:?}", r.first_failure());
        }
    }

    #[test]
    fn other_order_same_sizes() {
        let a3 = validate_cartan(&[vec![2, -1, 0], vec![-1, 2, -1], vec![0, -1, 2]], None).unwrap();
        let b = build_crystal_with_order(&a3, &w(&[1, 1, 1]), 100, &[0, 1, 0]).unwrap();
        assert_eq!(b.len(), 64);
        assert!(verify_crystal_axioms(&b).passed());
    }

    #[test]
    fn truncated_affine() {
        let aff = validate_cartan(&[vec![2, -2], vec![-2, 2]], None).unwrap();
        let b = build_crystal(&aff, &w(&[1, 0]), 4).unwrap();
        assert_eq!(b.window(), Some(4));
        assert!(verify_crystal_axioms(&b).passed());
        assert!(build_crystal(&aff, &w(&[-1, 0]), 4).is_err());
    }
}
