//! Contravariant forms: `(v_λ, v_λ) = 1`, distinct weight spaces are
//! orthogonal, and `(F_i x, y) = (x, v_i K̃_{-i} E_i y)`.

use crate::arith::{expand_vinv, RatFunc, SeriesClass};
use crate::error::Result;
use crate::linalg::{Grade, Matrix};
use crate::module::{HWModule, Letter, WeightModule};
use crate::report::{block_label, Report};
use crate::tensor::TensorModule;
use serde::Serialize;
use std::collections::BTreeMap;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GramTable {
    blocks: BTreeMap<Grade, Matrix>,
}

impl GramTable {
    pub fn get(&self, nu: &[i64]) -> Option<&Matrix> {
        self.blocks.get(nu)
    }

    pub fn blocks(&self) -> impl Iterator<Item = (&Grade, &Matrix)> {
        self.blocks.iter()
    }

    /// Gram matrix after replacing the basis of `nu` by the columns of `p`.
    pub fn change_basis(&self, nu: &[i64], p: &Matrix) -> Self {
        let mut out = self.clone();
        if let Some(g) = self.blocks.get(nu) {
            out.blocks.insert(nu.to_vec(), p.transpose().mul(g).mul(p));
        }
        out
    }

    /// Gram matrix after scaling one basis vector of `nu` by `x`.
    pub fn rescale(&self, nu: &[i64], index: usize, x: &RatFunc) -> Self {
        let n = self.blocks.get(nu).map_or(0, Matrix::rows);
        let p = Matrix::from_fn(n, n, |r, c| {
            if r != c {
                RatFunc::zero()
            } else if r == index {
                x.clone()
            } else {
                RatFunc::one()
            }
        });
        self.change_basis(nu, &p)
    }
}

pub fn contravariant_form(m: &HWModule) -> GramTable {
    GramTable {
        blocks: m.spaces().map(|s| (s.nu.clone(), s.gram.clone())).collect(),
    }
}

/// `(x_1 ⊗ x_2, y_1 ⊗ y_2) = (x_1, y_1)(x_2, y_2)` on the product basis.
pub fn tensor_form(t: &TensorModule) -> GramTable {
    let grams: Vec<GramTable> = t.factors().iter().map(contravariant_form).collect();
    let mut blocks = BTreeMap::new();
    for g in t.grades() {
        let mut block = Matrix::zeros(t.dim(&g), t.dim(&g));
        for comp in t.components(&g) {
            let local = comp
                .grades
                .iter()
                .zip(&grams)
                .map(|(h, gt)| gt.get(h).expect("factor Gram block").clone())
                .reduce(|a, b| a.kron(&b))
                .expect("at least one factor");
            for r in 0..local.rows() {
                for c in 0..local.cols() {
                    let x = local.get(r, c);
                    if !x.is_zero() {
                        block.set(comp.offset + r, comp.offset + c, x.clone());
                    }
                }
            }
        }
        blocks.insert(g, block);
    }
    GramTable { blocks }
}

/// `F_iᵀ G_{ν+e_i} = v^{s_i(1 - ⟨i, μ_ν⟩)} G_ν E_i`, plus symmetry and the
/// normalization of the top line.
pub fn verify_contravariance<M: WeightModule + ?Sized>(m: &M, g: &GramTable) -> Report {
    let mut report = Report::new("contravariance", m.window());
    let n = m.rank();
    let d = m.denom();
    let zero = vec![0; n];
    report.record("(v, v) = 1", block_label(&zero), g.get(&zero).is_some_and(|b| b.rows() == 1 && b.get(0, 0).is_one()));
    for nu in m.grades() {
        let Some(gn) = g.get(&nu) else {
            report.record("Gram block present", block_label(&nu), false);
            continue;
        };
        report.record("symmetric", block_label(&nu), &gn.transpose() == gn);
        for i in 0..n {
            let Some((up, f)) = m.letter_block(Letter::f(i), &nu) else {
                report.skip();
                continue;
            };
            if m.dim(&up) == 0 {
                continue;
            }
            let e = m.e_op(i).block(&up).cloned().unwrap_or_else(|| Matrix::zeros(m.dim(&nu), m.dim(&up)));
            let gu = g.get(&up).expect("Gram block for a computed space");
            let c = RatFunc::v_pow(d, m.cartan().s(i) as i64 - m.k_exponent(i, &nu));
            let lhs = f.transpose().mul(gu);
            let rhs = gn.mul(&e).scale(&c);
            report.record(format!("(F{i}x, y) = (x, v_i K-{i} E{i} y)"), block_label(&nu), lhs == rhs);
        }
    }
    report
}

/// Recomputes `(u, z)` for `u = F_{i_1} ⋯ F_{i_k} v_top` straight from the
/// contravariance recursion, `(F_i b, z) = v^{s_i(1-⟨i, wt b⟩)} (b, E_i z)`,
/// and compares with the Gram table on every basis vector `z`. Covers all
/// words up to `max_height`.
pub fn verify_cyclic_form<M: WeightModule + ?Sized>(m: &M, g: &GramTable, max_height: i64) -> Report {
    let mut report = Report::new("cyclic recursion", m.window());
    let n = m.rank();
    let d = m.denom();
    let zero = vec![0; n];
    if m.dim(&zero) != 1 {
        report.record("one-dimensional top line", block_label(&zero), false);
        return report;
    }
    let mut words: Vec<Vec<usize>> = vec![vec![]];
    for _ in 0..max_height {
        words = words
            .into_iter()
            .flat_map(|w| (0..n).map(move |i| [vec![i], w.clone()].concat()))
            .collect();
        for word in &words {
            let letters: Vec<Letter> = word.iter().map(|&i| Letter::f(i)).collect();
            let Some((nu, u)) = m.word_block(&letters, &zero) else {
                report.skip();
                continue;
            };
            let dim = m.dim(&nu);
            if dim == 0 {
                continue;
            }
            let Some(gn) = g.get(&nu) else { continue };
            let u: Vec<RatFunc> = u.column(0);
            // scalar prefactor: b_t = F_{i_{t+1}} ⋯ v_top
            let mut coef = RatFunc::one();
            let mut depth = zero.clone();
            for &i in word.iter().rev() {
                coef = coef * RatFunc::v_pow(d, m.cartan().s(i) as i64 - m.k_exponent(i, &depth));
                depth[i] += 1;
            }
            // E_{i_k} ⋯ E_{i_1} applied to each basis vector, read on the top line
            let e_word: Vec<Letter> = word.iter().rev().map(|&i| Letter::e(i)).collect();
            let Some((_, ez)) = m.word_block(&e_word, &nu) else {
                report.skip();
                continue;
            };
            let direct: Vec<RatFunc> = (0..dim).map(|k| &coef * ez.get(0, k)).collect();
            let tabled: Vec<RatFunc> = (0..dim)
                .map(|k| (0..dim).fold(RatFunc::zero(), |acc, j| acc + &u[j] * gn.get(j, k)))
                .collect();
            let label: Vec<String> = word.iter().map(|i| format!("F{i}")).collect();
            report.record(format!("({} v, z)", label.join(" ")), block_label(&nu), direct == tabled);
        }
    }
    report
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PairClass {
    pub nu: Grade,
    pub row: usize,
    pub col: usize,
    pub class: SeriesClass,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OrthogonalityReport {
    pub order: u32,
    pub pairs: Vec<PairClass>,
    pub almost_orthogonal: bool,
}

/// Default expansion order `2·(height window) + 4`.
pub fn default_order(max_height: i64) -> u32 {
    (2 * max_height.max(0) + 4) as u32
}

/// Classifies every pair within each weight space; pairs across weight
/// spaces vanish and are small.
pub fn almost_orthogonality(g: &GramTable, order: u32) -> Result<OrthogonalityReport> {
    let mut pairs = Vec::new();
    let mut ok = true;
    for (nu, b) in g.blocks() {
        for r in 0..b.rows() {
            for c in 0..b.cols() {
                let class = expand_vinv(b.get(r, c), order)?.classify();
                ok &= if r == c { class == SeriesClass::Unit } else { class == SeriesClass::Small };
                pairs.push(PairClass { nu: nu.clone(), row: r, col: c, class });
            }
        }
    }
    Ok(OrthogonalityReport { order, pairs, almost_orthogonal: ok })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cartan::{validate_cartan, Weight};
    use crate::module::build_module;
    use crate::tensor::tensor_module;

    fn w(c: &[i64]) -> Weight {
        Weight::from_coords(c.to_vec())
    }

    #[test]
    fn sl2_forms() {
        let a1 = validate_cartan(&[vec![2]], None).unwrap();
        let m = build_module(&a1, &w(&[1]), 10).unwrap();
        let g = contravariant_form(&m);
        assert!(g.get(&[1]).unwrap().get(0, 0).is_one());
        for n in 0..=6 {
            let m = build_module(&a1, &w(&[n]), 20).unwrap();
            let g = contravariant_form(&m);
            assert!(verify_contravariance(&m, &g).passed());
            let r = verify_cyclic_form(&m, &g, n + 1);
            assert!(r.passed(), "n={n} {:?}", r.first_failure());
            let r = almost_orthogonality(&g, default_order(n)).unwrap();
            assert!(r.almost_orthogonal, "n={n}");
        }
    }

    #[test]
    fn form_is_not_bar_symmetric() {
        let a1 = validate_cartan(&[vec![2]], None).unwrap();
        let m = build_module(&a1, &w(&[2]), 20).unwrap();
        let g = contravariant_form(&m);
        let x = g.get(&[1]).unwrap().get(0, 0).clone();
        assert_eq!(x, RatFunc::one() + RatFunc::v_pow(2, -2));
        assert_ne!(x.bar(), x);
    }

    #[test]
    fn rescaling_breaks_unit_class() {
        let a1 = validate_cartan(&[vec![2]], None).unwrap();
        let m = build_module(&a1, &w(&[2]), 20).unwrap();
        let g = contravariant_form(&m).rescale(&[1], 0, &RatFunc::v_pow(2, 1));
        let r = almost_orthogonality(&g, 8).unwrap();
        assert!(!r.almost_orthogonal);
        assert!(r.pairs.iter().any(|p| p.nu == vec![1] && p.class == SeriesClass::Other));
    }

    #[test]
    fn tensor_form_is_contravariant() {
        let a1 = validate_cartan(&[vec![2]], None).unwrap();
        let m = build_module(&a1, &w(&[1]), 10).unwrap();
        let t = tensor_module(&[m.clone(), m]).unwrap();
        let g = tensor_form(&t);
        let r = verify_contravariance(&t, &g);
        assert!(r.passed(), "{:?}", r.first_failure());
        assert!(verify_cyclic_form(&t, &g, 3).passed());
    }
}
