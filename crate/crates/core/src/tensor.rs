//! Tensor products of highest-weight modules through the coproduct
//! `Δ(E_i) = E_i ⊗ 1 + K̃_i ⊗ E_i`, `Δ(F_i) = F_i ⊗ K̃_{-i} + 1 ⊗ F_i`.
//!
//! The space at total depth `G` is the direct sum over component depths
//! `(g_1, …, g_N)` with `Σ g_k = G`; each component is a contiguous block
//! laid out in row-major (Kronecker) order.

use crate::arith::RatFunc;
use crate::cartan::{CartanData, Weight};
use crate::error::{Error, Result};
use crate::linalg::{grade_add, Grade, GradedOperator, Matrix};
use crate::module::{HWModule, Letter, WeightModule};
use std::collections::BTreeMap;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Component {
    pub grades: Vec<Grade>,
    pub offset: usize,
    pub dims: Vec<usize>,
}

impl Component {
    pub fn size(&self) -> usize {
        self.dims.iter().product()
    }

    /// Row-major position of a multi-index within the component.
    pub fn local_index(&self, idx: &[usize]) -> usize {
        idx.iter().zip(&self.dims).fold(0, |acc, (i, d)| acc * d + i)
    }

    pub fn multi_index(&self, mut local: usize) -> Vec<usize> {
        let mut out = vec![0; self.dims.len()];
        for k in (0..self.dims.len()).rev() {
            out[k] = local % self.dims[k];
            local /= self.dims[k];
        }
        out
    }
}

#[derive(Debug, Clone)]
pub struct TensorModule {
    cd: CartanData,
    factors: Vec<HWModule>,
    top: Weight,
    window: Option<i64>,
    spaces: BTreeMap<Grade, Vec<Component>>,
    e: Vec<GradedOperator>,
    f: Vec<GradedOperator>,
}

/// One tensor slot of a product operator.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Slot {
    Id,
    Op(Letter),
}

pub fn tensor_module(factors: &[HWModule]) -> Result<TensorModule> {
    let cd = factors
        .first()
        .ok_or_else(|| Error::Internal("empty tensor product".into()))?
        .cartan()
        .clone();
    if factors.iter().any(|m| m.cartan() != &cd) {
        return Err(Error::CartanMismatch);
    }
    let n = cd.rank();
    let window = factors.iter().filter_map(|m| m.window()).min();
    let top = factors.iter().fold(cd.zero_weight(), |acc, m| acc.add(m.top()));
    let mut combos: Vec<Vec<Grade>> = vec![vec![]];
    for m in factors {
        combos = combos
            .into_iter()
            .flat_map(|c| {
                m.grades().into_iter().map(move |g| {
                    let mut c = c.clone();
                    c.push(g);
                    c
                })
            })
            .collect();
    }
    let mut spaces: BTreeMap<Grade, Vec<Component>> = BTreeMap::new();
    for grades in combos {
        let total = grades.iter().fold(vec![0; n], |acc, g| grade_add(&acc, g));
        if window.is_some_and(|d| total.iter().sum::<i64>() > d) {
            continue;
        }
        let dims: Vec<usize> = grades.iter().zip(factors).map(|(g, m)| m.dim(g)).collect();
        let list = spaces.entry(total).or_default();
        let offset = list.last().map_or(0, |c: &Component| c.offset + c.size());
        list.push(Component { grades, offset, dims });
    }
    let mut t = TensorModule {
        cd,
        factors: factors.to_vec(),
        top,
        window,
        spaces,
        e: Vec::new(),
        f: Vec::new(),
    };
    let k = factors.len();
    for i in 0..n {
        // Δ(E_i) = Σ_p K̃_i^{⊗p} ⊗ E_i ⊗ 1^{⊗…}
        let e_terms: Vec<Vec<Slot>> = (0..k)
            .map(|p| {
                (0..k)
                    .map(|q| match q.cmp(&p) {
                        std::cmp::Ordering::Less => Slot::Op(Letter::k(i)),
                        std::cmp::Ordering::Equal => Slot::Op(Letter::e(i)),
                        std::cmp::Ordering::Greater => Slot::Id,
                    })
                    .collect()
            })
            .collect();
        // Δ(F_i) = Σ_p 1^{⊗p} ⊗ F_i ⊗ K̃_{-i}^{⊗…}
        let f_terms: Vec<Vec<Slot>> = (0..k)
            .map(|p| {
                (0..k)
                    .map(|q| match q.cmp(&p) {
                        std::cmp::Ordering::Less => Slot::Id,
                        std::cmp::Ordering::Equal => Slot::Op(Letter::f(i)),
                        std::cmp::Ordering::Greater => Slot::Op(Letter::k_inv(i)),
                    })
                    .collect()
            })
            .collect();
        let e = e_terms
            .iter()
            .map(|s| t.product_operator(s))
            .reduce(|a, b| a.add(&b))
            .expect("at least one factor");
        let f = f_terms
            .iter()
            .map(|s| t.product_operator(s))
            .reduce(|a, b| a.add(&b))
            .expect("at least one factor");
        t.e.push(e);
        t.f.push(f);
    }
    Ok(t)
}

impl TensorModule {
    pub fn factors(&self) -> &[HWModule] {
        &self.factors
    }

    pub fn components(&self, g: &[i64]) -> &[Component] {
        self.spaces.get(g).map_or(&[], Vec::as_slice)
    }

    /// Index of the product basis vector `⊗_k b_k` (with `b_k` the
    /// `idx[k]`-th basis vector at depth `grades[k]`) in its total space.
    pub fn index_of(&self, grades: &[Grade], idx: &[usize]) -> Option<(Grade, usize)> {
        let total = grades.iter().fold(vec![0; self.cd.rank()], |acc, g| grade_add(&acc, g));
        let comp = self.components(&total).iter().find(|c| c.grades == grades)?;
        Some((total, comp.offset + comp.local_index(idx)))
    }

    /// Inverse of [`TensorModule::index_of`].
    pub fn tuple_of(&self, total: &[i64], index: usize) -> (&Component, Vec<usize>) {
        let comp = self
            .components(total)
            .iter()
            .find(|c| index >= c.offset && index < c.offset + c.size())
            .expect("index inside the weight space");
        (comp, comp.multi_index(index - comp.offset))
    }

    /// `⊗_k slot_k` as a graded operator on the total depth.
    pub fn product_operator(&self, slots: &[Slot]) -> GradedOperator {
        let n = self.cd.rank();
        let shift = slots.iter().fold(vec![0; n], |acc, s| match s {
            Slot::Op(l) => match l.gen {
                crate::module::Gen::E(i) => {
                    let mut a = acc;
                    a[i] -= l.power as i64;
                    a
                }
                crate::module::Gen::F(i) => {
                    let mut a = acc;
                    a[i] += l.power as i64;
                    a
                }
                _ => acc,
            },
            Slot::Id => acc,
        });
        let mut op = GradedOperator::new(shift.clone());
        for (total, comps) in &self.spaces {
            let target = grade_add(total, &shift);
            if !self.knows(&target) {
                continue;
            }
            let mut block = Matrix::zeros(self.dim(&target), self.dim(total));
            for comp in comps {
                let mut factor_blocks = Vec::with_capacity(slots.len());
                let mut tgt_grades = Vec::with_capacity(slots.len());
                let mut ok = true;
                for (k, slot) in slots.iter().enumerate() {
                    match slot {
                        Slot::Id => {
                            factor_blocks.push(None);
                            tgt_grades.push(comp.grades[k].clone());
                        }
                        Slot::Op(l) => match self.factors[k].letter_block(*l, &comp.grades[k]) {
                            Some((g, m)) => {
                                factor_blocks.push(Some(m));
                                tgt_grades.push(g);
                            }
                            None => ok = false,
                        },
                    }
                }
                if !ok {
                    continue;
                }
                let Some(tcomp) = self.components(&target).iter().find(|c| c.grades == tgt_grades) else {
                    continue;
                };
                for local in 0..comp.size() {
                    let src = comp.multi_index(local);
                    // images per factor as (index, coefficient) lists
                    let mut partial: Vec<(Vec<usize>, RatFunc)> = vec![(Vec::new(), RatFunc::one())];
                    for (k, fb) in factor_blocks.iter().enumerate() {
                        let images: Vec<(usize, RatFunc)> = match fb {
                            None => vec![(src[k], RatFunc::one())],
                            Some(m) => (0..m.rows())
                                .filter(|&r| !m.get(r, src[k]).is_zero())
                                .map(|r| (r, m.get(r, src[k]).clone()))
                                .collect(),
                        };
                        partial = partial
                            .into_iter()
                            .flat_map(|(idx, c)| {
                                images.iter().map(move |(r, x)| {
                                    let mut idx = idx.clone();
                                    idx.push(*r);
                                    (idx, &c * x)
                                })
                            })
                            .collect();
                    }
                    for (idx, c) in partial {
                        block.add_at(tcomp.offset + tcomp.local_index(&idx), comp.offset + local, &c);
                    }
                }
            }
            op.insert(total.clone(), block);
        }
        op
    }

    /// The factor swap `M_1 ⊗ M_2 → M_2 ⊗ M_1` onto `swapped`.
    pub fn swap_onto(&self, swapped: &TensorModule) -> GradedOperator {
        assert_eq!(self.factors.len(), 2);
        let mut op = GradedOperator::new(vec![0; self.cd.rank()]);
        for (total, comps) in &self.spaces {
            let mut block = Matrix::zeros(swapped.dim(total), self.dim(total));
            for comp in comps {
                let grades = vec![comp.grades[1].clone(), comp.grades[0].clone()];
                for local in 0..comp.size() {
                    let idx = comp.multi_index(local);
                    let (_, to) = swapped.index_of(&grades, &[idx[1], idx[0]]).expect("swapped component");
                    block.set(to, comp.offset + local, RatFunc::one());
                }
            }
            op.insert(total.clone(), block);
        }
        op
    }

    /// Scales the component `(g_1, …, g_N)` by `f(g_1, …, g_N)`.
    pub fn component_scaling(&self, f: impl Fn(&[Grade]) -> RatFunc) -> GradedOperator {
        let mut op = GradedOperator::new(vec![0; self.cd.rank()]);
        for (total, comps) in &self.spaces {
            let mut block = Matrix::zeros(self.dim(total), self.dim(total));
            for comp in comps {
                let x = f(&comp.grades);
                for r in comp.offset..comp.offset + comp.size() {
                    block.set(r, r, x.clone());
                }
            }
            op.insert(total.clone(), block);
        }
        op
    }

    pub fn identity(&self) -> GradedOperator {
        GradedOperator::identity(self.cd.rank(), self.spaces.keys().map(|g| (g, self.dim(g))))
    }

    /// Operator `X` on adjacent factors `pos, pos+1` of `self`, landing in
    /// `target`, where `X : pair_src → pair_dst` maps factors `(a, b)` to
    /// the factors of `pair_dst` placed at the same positions.
    pub fn place_pair(
        &self,
        pos: usize,
        x: &GradedOperator,
        pair_src: &TensorModule,
        pair_dst: &TensorModule,
        target: &TensorModule,
    ) -> GradedOperator {
        let mut op = GradedOperator::new(vec![0; self.cd.rank()]);
        for (total, comps) in &self.spaces {
            let mut block = Matrix::zeros(target.dim(total), self.dim(total));
            for comp in comps {
                let pair_grades = vec![comp.grades[pos].clone(), comp.grades[pos + 1].clone()];
                for local in 0..comp.size() {
                    let idx = comp.multi_index(local);
                    let (pt, pi) = pair_src
                        .index_of(&pair_grades, &idx[pos..pos + 2])
                        .expect("pair component");
                    let Some(xb) = x.block(&pt) else { continue };
                    for r in 0..xb.rows() {
                        let c = xb.get(r, pi);
                        if c.is_zero() {
                            continue;
                        }
                        let (pc, pidx) = pair_dst.tuple_of(&pt, r);
                        let mut grades = comp.grades.clone();
                        grades[pos] = pc.grades[0].clone();
                        grades[pos + 1] = pc.grades[1].clone();
                        let mut tidx = idx.clone();
                        tidx[pos] = pidx[0];
                        tidx[pos + 1] = pidx[1];
                        let (_, to) = target.index_of(&grades, &tidx).expect("target component");
                        block.add_at(to, comp.offset + local, c);
                    }
                }
            }
            op.insert(total.clone(), block);
        }
        op
    }
}

impl WeightModule for TensorModule {
    fn cartan(&self) -> &CartanData {
        &self.cd
    }

    fn top(&self) -> &Weight {
        &self.top
    }

    fn window(&self) -> Option<i64> {
        self.window
    }

    fn grades(&self) -> Vec<Grade> {
        let mut g: Vec<Grade> = self.spaces.keys().cloned().collect();
        g.sort_by_key(|nu| (nu.iter().sum::<i64>(), nu.clone()));
        g
    }

    fn dim(&self, nu: &[i64]) -> usize {
        self.components(nu).iter().map(Component::size).sum()
    }

    fn e_op(&self, i: usize) -> &GradedOperator {
        &self.e[i]
    }

    fn f_op(&self, i: usize) -> &GradedOperator {
        &self.f[i]
    }
}

/// Highest weights of the irreducible summands, with multiplicity:
/// `dim ∩_i ker Δ(E_i)` on each weight space.
pub fn decompose_tensor_module<M: WeightModule + ?Sized>(t: &M) -> BTreeMap<Weight, usize> {
    let mut out = BTreeMap::new();
    for g in t.grades() {
        let dim = t.dim(&g);
        let mut rows: Vec<Vec<RatFunc>> = Vec::new();
        for i in 0..t.rank() {
            if let Some(b) = t.e_op(i).block(&g) {
                for r in 0..b.rows() {
                    rows.push(b.row(r).to_vec());
                }
            }
        }
        let rank = if rows.is_empty() { 0 } else { Matrix::from_rows(rows).rank() };
        if dim > rank {
            *out.entry(t.weight_of(&g)).or_insert(0) += dim - rank;
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cartan::validate_cartan;
    use crate::module::{build_module, verify_defining_relations};
    use crate::oracle::char_convolve;

    fn w(c: &[i64]) -> Weight {
        Weight::from_coords(c.to_vec())
    }

    #[test]
    fn sl2_square() {
        let a1 = validate_cartan(&[vec![2]], None).unwrap();
        let m = build_module(&a1, &w(&[1]), 10).unwrap();
        let t = tensor_module(&[m.clone(), m.clone()]).unwrap();
        assert_eq!(t.top(), &w(&[2]));
        assert_eq!(t.dim(&[0]), 1);
        assert_eq!(t.dim(&[1]), 2);
        assert_eq!(t.dim(&[2]), 1);
        assert!(verify_defining_relations(&t).passed());
        assert_eq!(t.character(), char_convolve(&m.character(), &m.character()));
        let dec = decompose_tensor_module(&t);
        assert_eq!(dec, [(w(&[2]), 1), (w(&[0]), 1)].into_iter().collect());
    }

    #[test]
    fn unit_factor() {
        let c2 = validate_cartan(&[vec![2, -1], vec![-2, 2]], None).unwrap();
        let m = build_module(&c2, &w(&[1, 0]), 100).unwrap();
        let z = build_module(&c2, &w(&[0, 0]), 100).unwrap();
        let t = tensor_module(&[m, z]).unwrap();
        assert_eq!(decompose_tensor_module(&t), [(w(&[1, 0]), 1)].into_iter().collect());
    }

    #[test]
    fn triple_relations() {
        let c2 = validate_cartan(&[vec![2, -1], vec![-2, 2]], None).unwrap();
        let m = build_module(&c2, &w(&[0, 1]), 100).unwrap();
        let t = tensor_module(&[m.clone(), m.clone(), m]).unwrap();
        assert_eq!(t.total_dim(), 64);
        let r = verify_defining_relations(&t);
        assert!(r.passed(), "{:?}", r.first_failure());
    }

    #[test]
    fn mismatched_data() {
        let a1 = validate_cartan(&[vec![2]], None).unwrap();
        let a1b = validate_cartan(&[vec![2, -1], vec![-1, 2]], None).unwrap();
        let m = build_module(&a1, &w(&[1]), 10).unwrap();
        let n = build_module(&a1b, &w(&[1, 0]), 10).unwrap();
        assert!(matches!(tensor_module(&[m, n]), Err(Error::CartanMismatch)));
    }
}
