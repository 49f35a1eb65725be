//! Symmetrizable generalized Cartan matrices, weights and pairings.
//!
//! Conventions: `⟨i, j⟩ = c_ij`, so the simple root `α_j` has fundamental
//! coordinates given by column `j` of `C`, and `K̃_i` acts on weight `μ` by
//! `v^{s_i ⟨i, μ⟩}`. The symmetric form satisfies `(α_i, μ) = s_i ⟨i, μ⟩`.

use crate::error::{Error, Result};
use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{One, Signed, Zero};
use serde::Serialize;
use std::collections::VecDeque;

pub type Rational = Ratio<i64>;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CartanData {
    c: Vec<Vec<i64>>,
    s: Vec<u32>,
    b: Vec<Vec<i64>>,
    d: u32,
    #[serde(skip)]
    fundamental_form: Option<Vec<Vec<Rational>>>,
}

/// Checks the GCM axioms and finds (or checks) a symmetrizer.
///
/// With `s = None` the componentwise-minimal positive symmetrizer is
/// returned: each connected component of the Dynkin graph is solved over ℚ
/// from a root vertex, then scaled to coprime positive integers.
pub fn validate_cartan(c: &[Vec<i64>], s: Option<&[u32]>) -> Result<CartanData> {
    let n = c.len();
    if n == 0 {
        return Err(Error::NotGcm("empty matrix".into()));
    }
    for (i, row) in c.iter().enumerate() {
        if row.len() != n {
            return Err(Error::NotGcm(format!("row {i} has length {} (expected {n})", row.len())));
        }
        if row[i] != 2 {
            return Err(Error::NotGcm(format!("c[{i}][{i}] = {} (loops are not allowed)", row[i])));
        }
        for j in 0..n {
            if i != j && row[j] > 0 {
                return Err(Error::NotGcm(format!("c[{i}][{j}] = {} > 0", row[j])));
            }
            if (row[j] == 0) != (c[j][i] == 0) {
                return Err(Error::NotGcm(format!("c[{i}][{j}] and c[{j}][{i}] disagree on zero")));
            }
        }
    }
    let s = match s {
        Some(s) => {
            if s.len() != n {
                return Err(Error::DimensionMismatch { expected: n, got: s.len() });
            }
            if s.iter().any(|&x| x == 0) {
                return Err(Error::NotSymmetrizable("symmetrizer entries must be positive".into()));
            }
            for i in 0..n {
                for j in 0..n {
                    if s[i] as i64 * c[i][j] != s[j] as i64 * c[j][i] {
                        return Err(Error::NotSymmetrizable(format!(
                            "s_{i} c_{i}{j} = {} but s_{j} c_{j}{i} = {}",
                            s[i] as i64 * c[i][j],
                            s[j] as i64 * c[j][i]
                        )));
                    }
                }
            }
            s.to_vec()
        }
        None => minimal_symmetrizer(c)?,
    };
    let b: Vec<Vec<i64>> = (0..n)
        .map(|i| (0..n).map(|j| s[i] as i64 * c[i][j]).collect())
        .collect();
    let fundamental_form = rational_inverse(c).map(|inv| {
        // (β_i, β_j) = (C^{-1})_{ji} s_j
        (0..n)
            .map(|i| (0..n).map(|j| inv[j][i] * Rational::from(s[j] as i64)).collect())
            .collect::<Vec<Vec<Rational>>>()
    });
    let d = fundamental_form.as_ref().map_or(1, |g| {
        g.iter()
            .flatten()
            .fold(1i64, |acc, x| acc.lcm(x.denom())) as u32
    });
    Ok(CartanData {
        c: c.to_vec(),
        s,
        b,
        d,
        fundamental_form,
    })
}

fn minimal_symmetrizer(c: &[Vec<i64>]) -> Result<Vec<u32>> {
    let n = c.len();
    let mut sol: Vec<Option<Rational>> = vec![None; n];
    let mut out = vec![0u32; n];
    for root in 0..n {
        if sol[root].is_some() {
            continue;
        }
        let mut component = vec![root];
        sol[root] = Some(Rational::one());
        let mut queue = VecDeque::from([root]);
        while let Some(i) = queue.pop_front() {
            let si = sol[i].unwrap();
            for j in 0..n {
                if i == j || c[i][j] == 0 {
                    continue;
                }
                // s_i c_ij = s_j c_ji
                let sj = si * Rational::new(c[i][j], c[j][i]);
                match sol[j] {
                    None => {
                        sol[j] = Some(sj);
                        component.push(j);
                        queue.push_back(j);
                    }
                    Some(old) if old != sj => {
                        return Err(Error::NotSymmetrizable(format!(
                            "cycle through vertices {i} and {j} forces inconsistent ratios"
                        )));
                    }
                    Some(_) => {}
                }
            }
        }
        let lcm = component.iter().fold(1i64, |acc, &k| acc.lcm(sol[k].unwrap().denom()));
        let ints: Vec<i64> = component
            .iter()
            .map(|&k| (sol[k].unwrap() * Rational::from(lcm)).to_integer())
            .collect();
        let g = ints.iter().fold(0i64, |acc, x| acc.gcd(x));
        for (&k, x) in component.iter().zip(ints) {
            out[k] = (x / g) as u32;
        }
    }
    Ok(out)
}

fn rational_inverse(c: &[Vec<i64>]) -> Option<Vec<Vec<Rational>>> {
    let n = c.len();
    let mut a: Vec<Vec<Rational>> = (0..n)
        .map(|i| {
            (0..2 * n)
                .map(|j| {
                    if j < n {
                        Rational::from(c[i][j])
                    } else if j - n == i {
                        Rational::one()
                    } else {
                        Rational::zero()
                    }
                })
                .collect()
        })
        .collect();
    for col in 0..n {
        let p = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, p);
        let inv = a[col][col].recip();
        for x in a[col].iter_mut() {
            *x *= inv;
        }
        let pivot = a[col].clone();
        for (r, row) in a.iter_mut().enumerate() {
            if r != col && !row[col].is_zero() {
                let f = row[col];
                for (x, y) in row.iter_mut().zip(&pivot) {
                    *x -= f * y;
                }
            }
        }
    }
    Some(a.into_iter().map(|row| row[n..].to_vec()).collect())
}

fn determinant(m: &[Vec<Rational>]) -> Rational {
    let n = m.len();
    let mut a = m.to_vec();
    let mut det = Rational::one();
    for col in 0..n {
        let Some(p) = (col..n).find(|&r| !a[r][col].is_zero()) else {
            return Rational::zero();
        };
        if p != col {
            a.swap(col, p);
            det = -det;
        }
        det *= a[col][col];
        let pivot = a[col].clone();
        for row in a.iter_mut().skip(col + 1) {
            let f = row[col] / pivot[col];
            for (x, y) in row.iter_mut().zip(&pivot) {
                *x -= f * y;
            }
        }
    }
    det
}

impl CartanData {
    pub fn rank(&self) -> usize {
        self.c.len()
    }

    pub fn matrix(&self) -> &[Vec<i64>] {
        &self.c
    }

    pub fn entry(&self, i: usize, j: usize) -> i64 {
        self.c[i][j]
    }

    pub fn symmetrizer(&self) -> &[u32] {
        &self.s
    }

    pub fn s(&self, i: usize) -> u32 {
        self.s[i]
    }

    pub fn symmetric_matrix(&self) -> &[Vec<i64>] {
        &self.b
    }

    /// Exponent denominator for the symmetric form on weights.
    pub fn denom(&self) -> u32 {
        self.d
    }

    pub fn is_singular(&self) -> bool {
        self.fundamental_form.is_none()
    }

    /// Positive definiteness of `B` (leading principal minors).
    pub fn is_finite_type(&self) -> bool {
        let n = self.rank();
        (1..=n).all(|k| {
            let minor: Vec<Vec<Rational>> = (0..k)
                .map(|i| (0..k).map(|j| Rational::from(self.b[i][j])).collect())
                .collect();
            determinant(&minor).is_positive()
        })
    }

    pub fn fundamental(&self, i: usize) -> Weight {
        let mut coords = vec![0; self.rank()];
        coords[i] = 1;
        Weight { coords }
    }

    pub fn simple_root(&self, j: usize) -> Weight {
        Weight {
            coords: (0..self.rank()).map(|i| self.c[i][j]).collect(),
        }
    }

    pub fn zero_weight(&self) -> Weight {
        Weight {
            coords: vec![0; self.rank()],
        }
    }

    pub fn weight(&self, coords: &[i64]) -> Result<Weight> {
        if coords.len() != self.rank() {
            return Err(Error::DimensionMismatch { expected: self.rank(), got: coords.len() });
        }
        Ok(Weight { coords: coords.to_vec() })
    }

    /// Fundamental coordinates of `λ - Σ ν_j α_j`.
    pub fn lower(&self, lambda: &Weight, nu: &[i64]) -> Weight {
        Weight {
            coords: (0..self.rank())
                .map(|i| lambda.coords[i] - (0..self.rank()).map(|j| self.c[i][j] * nu[j]).sum::<i64>())
                .collect(),
        }
    }

    /// `⟨i, μ⟩`.
    pub fn pairing(&self, i: usize, mu: &Weight) -> Result<i64> {
        if mu.coords.len() != self.rank() {
            return Err(Error::DimensionMismatch { expected: self.rank(), got: mu.coords.len() });
        }
        mu.coords
            .get(i)
            .copied()
            .ok_or(Error::IndexOutOfRange { index: i, size: self.rank() })
    }

    /// The symmetric form on the weight lattice; needs `C` invertible.
    pub fn sym_form(&self, lambda: &Weight, mu: &Weight) -> Result<Rational> {
        let n = self.rank();
        for w in [lambda, mu] {
            if w.coords.len() != n {
                return Err(Error::DimensionMismatch { expected: n, got: w.coords.len() });
            }
        }
        let g = self.fundamental_form.as_ref().ok_or(Error::SingularCartan)?;
        let mut acc = Rational::zero();
        for i in 0..n {
            for j in 0..n {
                acc += g[i][j] * Rational::from(lambda.coords[i] * mu.coords[j]);
            }
        }
        Ok(acc)
    }

    /// `(Σ ν_i α_i, Σ ν'_j α_j) = νᵀ B ν'`; defined for every datum.
    pub fn root_form(&self, nu: &[i64], nu2: &[i64]) -> i64 {
        let n = self.rank();
        (0..n)
            .map(|i| (0..n).map(|j| nu[i] * self.b[i][j] * nu2[j]).sum::<i64>())
            .sum()
    }

    /// `(μ, Σ ν_j α_j) = Σ_j ν_j s_j ⟨j, μ⟩`.
    pub fn weight_root_form(&self, mu: &Weight, nu: &[i64]) -> i64 {
        (0..self.rank())
            .map(|j| nu[j] * self.s[j] as i64 * mu.coords[j])
            .sum()
    }

    pub fn is_dominant(&self, lambda: &Weight) -> bool {
        is_dominant(lambda)
    }
}

pub fn is_dominant(lambda: &Weight) -> bool {
    lambda.coords.iter().all(|&x| x >= 0)
}

/// A weight in fundamental coordinates `(⟨i, μ⟩)_i`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct Weight {
    coords: Vec<i64>,
}

impl Weight {
    pub fn from_coords(coords: Vec<i64>) -> Self {
        Self { coords }
    }

    pub fn coords(&self) -> &[i64] {
        &self.coords
    }

    pub fn rank(&self) -> usize {
        self.coords.len()
    }

    pub fn add(&self, other: &Self) -> Self {
        Self {
            coords: self.coords.iter().zip(&other.coords).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        Self {
            coords: self.coords.iter().zip(&other.coords).map(|(a, b)| a - b).collect(),
        }
    }

    pub fn scale(&self, k: i64) -> Self {
        Self {
            coords: self.coords.iter().map(|a| a * k).collect(),
        }
    }

    pub fn neg(&self) -> Self {
        self.scale(-1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    pub(crate) fn c2() -> CartanData {
        validate_cartan(&[vec![2, -1], vec![-2, 2]], None).unwrap()
    }

    #[test]
    fn minimal_symmetrizers() {
        assert_eq!(validate_cartan(&[vec![2]], None).unwrap().symmetrizer(), &[1]);
        assert_eq!(c2().symmetrizer(), &[2, 1]);
        let g2 = validate_cartan(&[vec![2, -1], vec![-3, 2]], None).unwrap();
        assert_eq!(g2.symmetrizer(), &[3, 1]);
        let b3 = validate_cartan(&[vec![2, -1, 0], vec![-1, 2, -1], vec![0, -2, 2]], None).unwrap();
        assert_eq!(b3.symmetrizer(), &[2, 2, 1]);
        // disconnected: each component minimal on its own
        let split = validate_cartan(&[vec![2, 0, 0], vec![0, 2, -1], vec![0, -2, 2]], None).unwrap();
        assert_eq!(split.symmetrizer(), &[1, 2, 1]);
    }

    #[test]
    fn gcm_axioms_rejected() {
        assert!(matches!(validate_cartan(&[vec![2, 1], vec![-1, 2]], None), Err(Error::NotGcm(_))));
        assert!(matches!(validate_cartan(&[vec![2, 0], vec![-1, 2]], None), Err(Error::NotGcm(_))));
        assert!(matches!(validate_cartan(&[vec![1]], None), Err(Error::NotGcm(_))));
        // triangle with inconsistent product of ratios
        let tri = [vec![2, -1, -1], vec![-2, 2, -1], vec![-1, -1, 2]];
        assert!(matches!(validate_cartan(&tri, None), Err(Error::NotSymmetrizable(_))));
        assert!(matches!(
            validate_cartan(&[vec![2, -1], vec![-2, 2]], Some(&[1, 1])),
            Err(Error::NotSymmetrizable(_))
        ));
    }

    #[test]
    fn pairings_and_forms() {
        let cd = c2();
        for i in 0..2 {
            for j in 0..2 {
                assert_eq!(cd.pairing(i, &cd.fundamental(j)).unwrap(), (i == j) as i64);
                assert_eq!(cd.pairing(i, &cd.simple_root(j)).unwrap(), cd.entry(i, j));
            }
        }
        let f = cd.sym_form(&cd.simple_root(0), &cd.simple_root(1)).unwrap();
        assert_eq!(f, Rational::from(-2));
        assert_eq!(cd.denom(), 1);
        let a1 = validate_cartan(&[vec![2]], None).unwrap();
        assert_eq!(a1.denom(), 2);
        let a2 = validate_cartan(&[vec![2, -1], vec![-1, 2]], None).unwrap();
        assert_eq!(a2.denom(), 3);
        let aff = validate_cartan(&[vec![2, -2], vec![-2, 2]], None).unwrap();
        assert!(aff.is_singular());
        assert!(!aff.is_finite_type());
        assert!(cd.is_finite_type());
        assert_eq!(
            aff.sym_form(&aff.fundamental(0), &aff.fundamental(0)),
            Err(Error::SingularCartan)
        );
    }

    #[test]
    fn dominance() {
        let cd = c2();
        assert!(cd.is_dominant(&cd.fundamental(0)));
        assert!(!cd.is_dominant(&cd.fundamental(0).neg()));
        assert!(cd.is_dominant(&cd.fundamental(0).add(&cd.fundamental(1).scale(3))));
    }

    #[test]
    fn db_equals_c() {
        for m in [
            vec![vec![2, -1], vec![-2, 2]],
            vec![vec![2, -1], vec![-3, 2]],
            vec![vec![2, -1, 0], vec![-1, 2, -1], vec![0, -2, 2]],
            vec![vec![2, -2], vec![-2, 2]],
        ] {
            let cd = validate_cartan(&m, None).unwrap();
            for i in 0..cd.rank() {
                for j in 0..cd.rank() {
                    assert_eq!(cd.symmetric_matrix()[i][j], cd.s(i) as i64 * m[i][j]);
                    assert_eq!(cd.symmetric_matrix()[i][j], cd.symmetric_matrix()[j][i]);
                }
            }
        }
    }

    proptest! {
        #[test]
        fn sym_form_against_pairing(x in proptest::collection::vec(-6i64..6, 3)) {
            let cd = validate_cartan(&[vec![2, -1, 0], vec![-1, 2, -1], vec![0, -2, 2]], None).unwrap();
            let mu = cd.weight(&x).unwrap();
            for i in 0..3 {
                let lhs = cd.sym_form(&cd.simple_root(i), &mu).unwrap();
                prop_assert_eq!(lhs, Rational::from(cd.s(i) as i64 * cd.pairing(i, &mu).unwrap()));
                prop_assert_eq!(cd.sym_form(&mu, &cd.fundamental(i)).unwrap(),
                                cd.sym_form(&cd.fundamental(i), &mu).unwrap());
            }
        }

        #[test]
        fn symmetrizer_equivariant_under_permutation(a in 1i64..4, b in 1i64..4, perm in 0usize..6) {
            let m = vec![vec![2, -a, 0], vec![-b, 2, -1], vec![0, -1, 2]];
            let perms = [[0,1,2],[0,2,1],[1,0,2],[1,2,0],[2,0,1],[2,1,0]];
            let p = perms[perm];
            let pm: Vec<Vec<i64>> = (0..3).map(|i| (0..3).map(|j| m[p[i]][p[j]]).collect()).collect();
            let s = validate_cartan(&m, None).unwrap().symmetrizer().to_vec();
            let ps = validate_cartan(&pm, None).unwrap().symmetrizer().to_vec();
            for i in 0..3 {
                prop_assert_eq!(ps[i], s[p[i]]);
            }
        }
    }
}
