//! Integrable highest-weight modules `L(λ)` with exact generator matrices.
//!
//! Weight spaces are indexed by their depth `ν` (weight `λ - Σ ν_j α_j`),
//! which stays unambiguous when `C` is singular. A weight space at depth `ν`
//! is the quotient of the span of `F_i L(λ)_{ν - e_i}` by the radical of the
//! contravariant form; the basis consists of divided-power monomials
//! `F_{i_1}^{(n_1)} ⋯ F_{i_s}^{(n_s)} v_λ`, so every basis vector is
//! bar-invariant.

mod relations;

pub use relations::{
    verify_bar_compatibility, verify_defining_relations, verify_divided_power_relation,
    verify_divided_power_scalar, verify_ef_commutation,
};

use crate::arith::{qfact_rf, qint_rf, RatFunc};
use crate::cartan::{CartanData, Weight};
use crate::error::{Error, Result};
use crate::linalg::{grade_add, independent_rows, unit_grade, Grade, GradedOperator, Matrix};
use crate::oracle::CharacterTable;
use serde::Serialize;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Gen {
    E(usize),
    F(usize),
    K(usize),
    KInv(usize),
}

/// A generator raised to a divided power (plain power for `K̃`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct Letter {
    pub gen: Gen,
    pub power: u32,
}

impl Letter {
    pub fn e(i: usize) -> Self {
        Self { gen: Gen::E(i), power: 1 }
    }

    pub fn f(i: usize) -> Self {
        Self { gen: Gen::F(i), power: 1 }
    }

    pub fn e_div(i: usize, n: u32) -> Self {
        Self { gen: Gen::E(i), power: n }
    }

    pub fn f_div(i: usize, n: u32) -> Self {
        Self { gen: Gen::F(i), power: n }
    }

    pub fn k(i: usize) -> Self {
        Self { gen: Gen::K(i), power: 1 }
    }

    pub fn k_inv(i: usize) -> Self {
        Self { gen: Gen::KInv(i), power: 1 }
    }

    fn index(&self) -> usize {
        match self.gen {
            Gen::E(i) | Gen::F(i) | Gen::K(i) | Gen::KInv(i) => i,
        }
    }
}

/// Vectors are stored blockwise by depth.
pub type Vector = BTreeMap<Grade, Vec<RatFunc>>;

/// Shared interface of highest-weight and tensor-product modules.
pub trait WeightModule {
    fn cartan(&self) -> &CartanData;

    /// Weight of depth zero.
    fn top(&self) -> &Weight;

    /// Largest computed height, or `None` when every weight space is present.
    fn window(&self) -> Option<i64>;

    /// Depths of the nonzero computed weight spaces, by height.
    fn grades(&self) -> Vec<Grade>;

    fn dim(&self, nu: &[i64]) -> usize;

    /// `E_i`, lowering the depth by `e_i`.
    fn e_op(&self, i: usize) -> &GradedOperator;

    /// `F_i`, raising the depth by `e_i`.
    fn f_op(&self, i: usize) -> &GradedOperator;

    fn rank(&self) -> usize {
        self.cartan().rank()
    }

    fn denom(&self) -> u32 {
        self.cartan().denom()
    }

    /// Whether the weight space at `nu` is determined (possibly zero).
    fn knows(&self, nu: &[i64]) -> bool {
        nu.iter().any(|&x| x < 0) || self.window().map_or(true, |d| nu.iter().sum::<i64>() <= d)
    }

    fn weight_of(&self, nu: &[i64]) -> Weight {
        self.cartan().lower(self.top(), nu)
    }

    /// `s_i ⟨i, μ⟩` for the weight `μ` at depth `nu`.
    fn k_exponent(&self, i: usize, nu: &[i64]) -> i64 {
        self.cartan().s(i) as i64 * self.weight_of(nu).coords()[i]
    }

    fn total_dim(&self) -> usize {
        self.grades().iter().map(|g| self.dim(g)).sum()
    }

    fn character(&self) -> CharacterTable {
        let mut t = CharacterTable::new(self.cartan(), self.top(), self.window());
        for g in self.grades() {
            t.add(g.clone(), self.dim(&g) as u64);
        }
        t
    }

    /// Matrix of one letter on the space at `nu`, with its target depth;
    /// `None` if the target lies outside the window.
    fn letter_block(&self, letter: Letter, nu: &[i64]) -> Option<(Grade, Matrix)> {
        let i = letter.index();
        let d = self.denom();
        let s = self.cartan().s(i);
        match letter.gen {
            Gen::K(_) | Gen::KInv(_) => {
                let sign = if matches!(letter.gen, Gen::K(_)) { 1 } else { -1 };
                let e = sign * letter.power as i64 * self.k_exponent(i, nu);
                let n = self.dim(nu);
                let mut m = Matrix::zeros(n, n);
                for r in 0..n {
                    m.set(r, r, RatFunc::v_pow(d, e));
                }
                Some((nu.to_vec(), m))
            }
            Gen::E(_) | Gen::F(_) => {
                let (op, step) = if matches!(letter.gen, Gen::E(_)) {
                    (self.e_op(i), -1)
                } else {
                    (self.f_op(i), 1)
                };
                let mut cur = nu.to_vec();
                let mut acc = Matrix::identity(self.dim(nu));
                for _ in 0..letter.power {
                    let next = grade_add(&cur, &unit_grade(self.rank(), i, step));
                    if !self.knows(&next) {
                        return None;
                    }
                    let block = match op.block(&cur) {
                        Some(b) => b.clone(),
                        None => Matrix::zeros(self.dim(&next), self.dim(&cur)),
                    };
                    acc = block.mul(&acc);
                    cur = next;
                }
                if letter.power > 1 {
                    acc = acc.scale(&qfact_rf(letter.power, s, d).inv());
                }
                Some((cur, acc))
            }
        }
    }

    /// Matrix of a word (rightmost letter acts first) on the space at `nu`.
    fn word_block(&self, word: &[Letter], nu: &[i64]) -> Option<(Grade, Matrix)> {
        let mut cur = nu.to_vec();
        let mut acc = Matrix::identity(self.dim(nu));
        for &letter in word.iter().rev() {
            let (next, m) = self.letter_block(letter, &cur)?;
            acc = m.mul(&acc);
            cur = next;
        }
        Some((cur, acc))
    }

    /// `Σ_k c_k · word_k` on the space at `nu`.
    fn combination_block(&self, terms: &[(RatFunc, Vec<Letter>)], nu: &[i64]) -> Option<(Grade, Matrix)> {
        let mut out: Option<(Grade, Matrix)> = None;
        for (c, word) in terms {
            let (g, m) = self.word_block(word, nu)?;
            let m = m.scale(c);
            out = Some(match out {
                None => (g, m),
                Some((g0, acc)) => {
                    debug_assert_eq!(g0, g);
                    (g0, acc.add(&m))
                }
            });
        }
        out
    }

    fn act(&self, word: &[Letter], x: &Vector) -> Result<Vector> {
        let mut out = Vector::new();
        for (nu, coords) in x {
            let (target, m) = self
                .word_block(word, nu)
                .ok_or_else(|| Error::WeightOutOfRange(self.weight_of(nu).coords().to_vec()))?;
            if self.dim(&target) == 0 {
                continue;
            }
            let y = m.mul_vec(coords);
            let slot = out.entry(target).or_insert_with(|| vec![RatFunc::zero(); y.len()]);
            for (a, b) in slot.iter_mut().zip(y) {
                *a = &*a + &b;
            }
        }
        out.retain(|_, v| v.iter().any(|x| !x.is_zero()));
        Ok(out)
    }
}

/// `F_{i_1}^{(n_1)} ⋯ F_{i_s}^{(n_s)} v_λ`, leftmost factor applied last.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(transparent)]
pub struct FMonomial(Vec<(usize, u32)>);

impl FMonomial {
    pub fn highest() -> Self {
        Self(Vec::new())
    }

    pub fn factors(&self) -> &[(usize, u32)] {
        &self.0
    }

    /// `F_i` applied on the left, returning the new monomial and the
    /// exponent `k` with `F_i · self = [k]_i · result`.
    pub fn push_f(&self, i: usize) -> (Self, u32) {
        let mut f = self.0.clone();
        match f.first_mut() {
            Some((j, n)) if *j == i => {
                *n += 1;
                let k = *n;
                (Self(f), k)
            }
            _ => {
                f.insert(0, (i, 1));
                (Self(f), 1)
            }
        }
    }

    pub fn height(&self) -> u32 {
        self.0.iter().map(|&(_, n)| n).sum()
    }
}

impl fmt::Display for FMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &(i, n) in &self.0 {
            if n == 1 {
                write!(f, "F{i} ")?;
            } else {
                write!(f, "F{i}^({n}) ")?;
            }
        }
        write!(f, "v")
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightSpace {
    pub nu: Grade,
    pub weight: Weight,
    pub basis: Vec<FMonomial>,
    /// Contravariant form on `basis`.
    pub gram: Matrix,
}

#[derive(Debug, Clone)]
pub struct HWModule {
    cd: CartanData,
    lambda: Weight,
    window: Option<i64>,
    spaces: BTreeMap<Grade, WeightSpace>,
    e: Vec<GradedOperator>,
    f: Vec<GradedOperator>,
}

struct Candidate {
    i: usize,
    src: Grade,
    b: usize,
    k: u32,
    mono: FMonomial,
}

impl HWModule {
    pub fn lambda(&self) -> &Weight {
        &self.lambda
    }

    pub fn space(&self, nu: &[i64]) -> Option<&WeightSpace> {
        self.spaces.get(nu)
    }

    pub fn spaces(&self) -> impl Iterator<Item = &WeightSpace> {
        self.spaces.values()
    }

    pub fn is_complete(&self) -> bool {
        self.window.is_none()
    }

    pub fn highest_vector(&self) -> Vector {
        let mut v = Vector::new();
        v.insert(vec![0; self.cd.rank()], vec![RatFunc::one()]);
        v
    }

    /// Depth of a weight when `C` is invertible.
    pub fn depth_of(&self, mu: &Weight) -> Option<Grade> {
        self.spaces.values().find(|s| &s.weight == mu).map(|s| s.nu.clone())
    }

    /// Dimension by weight; collapses depths with equal weight.
    pub fn weight_dims(&self) -> BTreeMap<Weight, usize> {
        let mut out = BTreeMap::new();
        for s in self.spaces.values() {
            *out.entry(s.weight.clone()).or_insert(0) += s.basis.len();
        }
        out
    }

    fn gram(&self, nu: &[i64]) -> &Matrix {
        &self.spaces[nu].gram
    }
}

impl WeightModule for HWModule {
    fn cartan(&self) -> &CartanData {
        &self.cd
    }

    fn top(&self) -> &Weight {
        &self.lambda
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
        self.spaces.get(nu).map_or(0, |s| s.basis.len())
    }

    fn e_op(&self, i: usize) -> &GradedOperator {
        &self.e[i]
    }

    fn f_op(&self, i: usize) -> &GradedOperator {
        &self.f[i]
    }
}

/// Builds `L(λ)` up to height `depth` below `λ`, stopping early once a
/// whole height level vanishes (the module is then complete).
pub fn build_module(cd: &CartanData, lambda: &Weight, depth: i64) -> Result<HWModule> {
    if lambda.rank() != cd.rank() {
        return Err(Error::DimensionMismatch { expected: cd.rank(), got: lambda.rank() });
    }
    if !cd.is_dominant(lambda) {
        return Err(Error::NotDominant(lambda.coords().to_vec()));
    }
    let n = cd.rank();
    let zero = vec![0; n];
    let mut m = HWModule {
        cd: cd.clone(),
        lambda: lambda.clone(),
        window: Some(depth.max(0)),
        spaces: BTreeMap::new(),
        e: (0..n).map(|i| GradedOperator::new(unit_grade(n, i, -1))).collect(),
        f: (0..n).map(|i| GradedOperator::new(unit_grade(n, i, 1))).collect(),
    };
    m.spaces.insert(
        zero.clone(),
        WeightSpace {
            nu: zero.clone(),
            weight: lambda.clone(),
            basis: vec![FMonomial::highest()],
            gram: Matrix::identity(1),
        },
    );
    let mut frontier: BTreeSet<Grade> = [zero].into();
    for _ in 1..=depth {
        let level: BTreeSet<Grade> = frontier
            .iter()
            .flat_map(|g| (0..n).map(move |i| grade_add(g, &unit_grade(n, i, 1))))
            .collect();
        let mut next = BTreeSet::new();
        for nu in level {
            if m.build_space(&nu)? {
                next.insert(nu);
            }
        }
        if next.is_empty() {
            m.window = None;
            break;
        }
        frontier = next;
    }
    Ok(m)
}

impl HWModule {
    /// Adds the weight space at `nu`; returns whether it is nonzero.
    fn build_space(&mut self, nu: &[i64]) -> Result<bool> {
        let n = self.cd.rank();
        let d = self.cd.denom();
        let mut cands = Vec::new();
        for i in 0..n {
            let src = grade_add(nu, &unit_grade(n, i, -1));
            if let Some(space) = self.spaces.get(&src) {
                for (b, mono) in space.basis.iter().enumerate() {
                    let (mono, k) = mono.push_f(i);
                    cands.push(Candidate { i, src: src.clone(), b, k, mono });
                }
            }
        }
        if cands.is_empty() {
            return Ok(false);
        }
        cands.sort_by(|a, b| a.mono.cmp(&b.mono));

        // E_j on each candidate, in the basis of nu - e_j:
        // E_j F_i b = F_i E_j b + δ_ij [⟨i, μ_b⟩]_i b
        let mut e_images: Vec<Vec<Option<Vec<RatFunc>>>> = Vec::with_capacity(cands.len());
        for c in &cands {
            let s = self.cd.s(c.i);
            let p = self.cd.lower(&self.lambda, &c.src).coords()[c.i];
            let scale = qint_rf(c.k as i64, s, d).inv();
            let mut row = Vec::with_capacity(n);
            for j in 0..n {
                let tgt = grade_add(nu, &unit_grade(n, j, -1));
                let Some(tspace) = self.spaces.get(&tgt) else {
                    row.push(None);
                    continue;
                };
                let mut out = vec![RatFunc::zero(); tspace.basis.len()];
                let below = grade_add(&c.src, &unit_grade(n, j, -1));
                if let (Some(ej), Some(fi)) = (self.e[j].block(&c.src), self.f[c.i].block(&below)) {
                    let eb = ej.column(c.b);
                    for (o, x) in out.iter_mut().zip(fi.mul_vec(&eb)) {
                        *o = &*o + &x;
                    }
                }
                if j == c.i {
                    out[c.b] = &out[c.b] + &qint_rf(p, s, d);
                }
                row.push(Some(out.into_iter().map(|x| x * &scale).collect()));
            }
            e_images.push(row);
        }

        // (F_i b, y) = v^{s_i(1 - ⟨i, μ_b⟩)} (b, E_i y)
        let size = cands.len();
        let mut g = Matrix::zeros(size, size);
        for (r, c) in cands.iter().enumerate() {
            let s = self.cd.s(c.i) as i64;
            let p = self.cd.lower(&self.lambda, &c.src).coords()[c.i];
            let coef = RatFunc::v_pow(d, s * (1 - p)) * qint_rf(c.k as i64, s as u32, d).inv();
            let gb = self.gram(&c.src).row(c.b).to_vec();
            for (col, imgs) in e_images.iter().enumerate() {
                let y = imgs[c.i].as_ref().expect("source space of a candidate exists");
                let val = gb
                    .iter()
                    .zip(y)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .fold(RatFunc::zero(), |acc, (a, b)| acc + a * b);
                if !val.is_zero() {
                    g.set(r, col, &coef * &val);
                }
            }
        }
        let pivots = independent_rows(&g);
        if pivots.is_empty() {
            return Ok(false);
        }
        let all: Vec<usize> = (0..size).collect();
        let gram = g.select(&pivots, &pivots);
        let coords = gram
            .solve(&g.select(&pivots, &all))
            .ok_or_else(|| Error::Internal("pivot Gram matrix is singular".into()))?;

        for i in 0..n {
            let src = grade_add(nu, &unit_grade(n, i, -1));
            let Some(dim_src) = self.spaces.get(&src).map(|s| s.basis.len()) else {
                continue;
            };
            let mut fi = Matrix::zeros(pivots.len(), dim_src);
            for (idx, c) in cands.iter().enumerate().filter(|(_, c)| c.i == i) {
                let k = qint_rf(c.k as i64, self.cd.s(i), d);
                for r in 0..pivots.len() {
                    let x = coords.get(r, idx);
                    if !x.is_zero() {
                        fi.set(r, c.b, x * &k);
                    }
                }
            }
            self.f[i].insert(src, fi);
        }
        for j in 0..n {
            let tgt = grade_add(nu, &unit_grade(n, j, -1));
            let Some(dim_t) = self.spaces.get(&tgt).map(|s| s.basis.len()) else {
                continue;
            };
            let mut ej = Matrix::zeros(dim_t, pivots.len());
            for (col, &p) in pivots.iter().enumerate() {
                let img = e_images[p][j].as_ref().expect("target space exists");
                for (r, x) in img.iter().enumerate() {
                    if !x.is_zero() {
                        ej.set(r, col, x.clone());
                    }
                }
            }
            self.e[j].insert(nu.to_vec(), ej);
        }
        self.spaces.insert(
            nu.to_vec(),
            WeightSpace {
                nu: nu.to_vec(),
                weight: self.cd.lower(&self.lambda, nu),
                basis: pivots.iter().map(|&p| cands[p].mono.clone()).collect(),
                gram,
            },
        );
        Ok(true)
    }
}
