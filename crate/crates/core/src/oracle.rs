//! Classical oracles: root multiplicities, Freudenthal multiplicities,
//! the Weyl dimension formula and character convolution.
//!
//! Nothing here touches the module code or its linear algebra.

use crate::cartan::{CartanData, Weight};
use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;
use std::collections::{BTreeMap, HashMap};

pub fn height(nu: &[i64]) -> i64 {
    nu.iter().sum()
}

/// All `ν ∈ ℕ^n` of the given height.
fn lattice_level(rank: usize, h: i64) -> Vec<Vec<i64>> {
    fn rec(rank: usize, left: i64, cur: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        if cur.len() + 1 == rank {
            cur.push(left);
            out.push(cur.clone());
            cur.pop();
            return;
        }
        for x in (0..=left).rev() {
            cur.push(x);
            rec(rank, left - x, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if rank > 0 {
        rec(rank, h, &mut Vec::new(), &mut out);
    }
    out
}

/// All `0 < β' < β` componentwise.
fn proper_parts(beta: &[i64]) -> Vec<Vec<i64>> {
    let mut out = vec![vec![]];
    for &b in beta {
        out = out
            .into_iter()
            .flat_map(|p| (0..=b).map(move |x| [p.clone(), vec![x]].concat()))
            .collect();
    }
    out.retain(|p| p.iter().any(|&x| x > 0) && p.iter().zip(beta).any(|(x, b)| x < b));
    out
}

/// Positive roots with multiplicities up to a height bound, from Peterson's
/// recursion `(β | β - 2ρ) c_β = Σ_{β'+β''=β} (β'|β'') c_β' c_β''` with
/// `c_β = Σ_{n ≥ 1} mult(β/n) / n`.
#[derive(Debug, Clone)]
pub struct RootSystem {
    depth: i64,
    roots: BTreeMap<Vec<i64>, u64>,
}

impl RootSystem {
    pub fn new(cd: &CartanData, depth: i64) -> Result<Self> {
        let n = cd.rank();
        let mut c: HashMap<Vec<i64>, BigRational> = HashMap::new();
        let mut roots = BTreeMap::new();
        for h in 1..=depth {
            for beta in lattice_level(n, h) {
                // contributions of β/k for k ≥ 2
                let g = beta.iter().fold(0i64, |g, &x| num_integer::gcd(g, x));
                let mut peel = BigRational::zero();
                for k in 2..=g {
                    if g % k == 0 {
                        let part: Vec<i64> = beta.iter().map(|x| x / k).collect();
                        if let Some(&m) = roots.get(&part) {
                            peel += BigRational::new(BigInt::from(m), BigInt::from(k));
                        }
                    }
                }
                let value = if h == 1 {
                    BigRational::one()
                } else {
                    let mut sum = BigRational::zero();
                    for b1 in proper_parts(&beta) {
                        let b2: Vec<i64> = beta.iter().zip(&b1).map(|(x, y)| x - y).collect();
                        if let (Some(x), Some(y)) = (c.get(&b1), c.get(&b2)) {
                            sum += x * y * BigRational::from_integer(cd.root_form(&b1, &b2).into());
                        }
                    }
                    let two_rho: i64 = (0..n).map(|i| 2 * beta[i] * cd.s(i) as i64).sum();
                    let lhs = cd.root_form(&beta, &beta) - two_rho;
                    if lhs == 0 {
                        // only positive-norm non-simple β land here, and those are never roots
                        if !sum.is_zero() {
                            return Err(Error::Internal(format!("Peterson recursion degenerate at {beta:?}")));
                        }
                        peel.clone()
                    } else {
                        sum / BigRational::from_integer(lhs.into())
                    }
                };
                let mult = &value - &peel;
                if !mult.is_integer() || mult.is_negative() {
                    return Err(Error::Internal(format!("non-integral root multiplicity at {beta:?}")));
                }
                let m = mult.to_integer().to_u64().expect("multiplicity fits in u64");
                if m > 0 {
                    roots.insert(beta.clone(), m);
                }
                if !value.is_zero() {
                    c.insert(beta, value);
                }
            }
        }
        Ok(Self { depth, roots })
    }

    pub fn depth(&self) -> i64 {
        self.depth
    }

    /// `(β, mult β)` for every positive root of height `≤ depth`.
    pub fn roots(&self) -> impl Iterator<Item = (&Vec<i64>, u64)> {
        self.roots.iter().map(|(b, &m)| (b, m))
    }

    pub fn multiplicity(&self, beta: &[i64]) -> u64 {
        self.roots.get(beta).copied().unwrap_or(0)
    }
}

/// Positive roots of a finite-type datum by closing the simple roots under
/// simple reflections.
pub fn positive_roots(cd: &CartanData) -> Result<Vec<Vec<i64>>> {
    if !cd.is_finite_type() {
        return Err(Error::NotFiniteType);
    }
    let n = cd.rank();
    let mut found: Vec<Vec<i64>> = (0..n)
        .map(|i| (0..n).map(|j| (i == j) as i64).collect())
        .collect();
    let mut k = 0;
    while k < found.len() {
        let beta = found[k].clone();
        for i in 0..n {
            let pairing: i64 = (0..n).map(|j| cd.entry(i, j) * beta[j]).sum();
            let mut image = beta.clone();
            image[i] -= pairing;
            if image.iter().all(|&x| x >= 0) && image.iter().any(|&x| x > 0) && !found.contains(&image) {
                found.push(image);
            }
        }
        k += 1;
    }
    found.sort_by_key(|b| (height(b), b.clone()));
    Ok(found)
}

/// `Π_{α > 0} (λ + ρ, α) / (ρ, α)`.
pub fn weyl_dim(cd: &CartanData, lambda: &Weight) -> Result<u64> {
    let roots = positive_roots(cd)?;
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for alpha in &roots {
        let rho: i64 = (0..cd.rank()).map(|j| alpha[j] * cd.s(j) as i64).sum();
        num *= cd.weight_root_form(lambda, alpha) + rho;
        den *= rho;
    }
    let q = BigRational::new(num, den);
    if !q.is_integer() {
        return Err(Error::Internal("Weyl dimension is not an integer".into()));
    }
    q.to_integer()
        .to_u64()
        .ok_or_else(|| Error::Internal("Weyl dimension out of range".into()))
}

/// Solves `C ν = λ - μ` over ℚ; `None` unless `ν` is a nonnegative integer vector.
pub fn depth_vector(cd: &CartanData, lambda: &Weight, mu: &Weight) -> Result<Option<Vec<i64>>> {
    if cd.is_singular() {
        return Err(Error::SingularCartan);
    }
    let n = cd.rank();
    let mut a: Vec<Vec<BigRational>> = (0..n)
        .map(|i| {
            (0..=n)
                .map(|j| {
                    let x = if j < n { cd.entry(i, j) } else { lambda.coords()[i] - mu.coords()[i] };
                    BigRational::from_integer(x.into())
                })
                .collect()
        })
        .collect();
    for col in 0..n {
        let p = (col..n).find(|&r| !a[r][col].is_zero()).ok_or(Error::SingularCartan)?;
        a.swap(col, p);
        let pivot = a[col][col].clone();
        for x in a[col].iter_mut() {
            *x /= &pivot;
        }
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let f = a[r][col].clone();
                for k in 0..=n {
                    let d = &a[col][k] * &f;
                    a[r][k] -= d;
                }
            }
        }
    }
    let mut nu = Vec::with_capacity(n);
    for row in &a {
        let x = &row[n];
        if !x.is_integer() || x.is_negative() {
            return Ok(None);
        }
        nu.push(x.to_integer().to_i64().expect("depth fits in i64"));
    }
    Ok(Some(nu))
}

/// Freudenthal's recursion in depth coordinates: with `μ = λ - ν`,
/// `(2(λ+ρ, ν) - (ν, ν)) m(ν) = 2 Σ_{α>0} mult(α) Σ_{k≥1} (μ + kα, α) m(ν - kα)`.
#[derive(Debug, Clone)]
pub struct Freudenthal<'a> {
    cd: &'a CartanData,
    lambda: Weight,
    roots: RootSystem,
    table: HashMap<Vec<i64>, u64>,
    computed_to: i64,
}

impl<'a> Freudenthal<'a> {
    pub fn new(cd: &'a CartanData, lambda: &Weight, depth: i64) -> Result<Self> {
        if !cd.is_dominant(lambda) {
            return Err(Error::NotDominant(lambda.coords().to_vec()));
        }
        let roots = RootSystem::new(cd, depth)?;
        let mut table = HashMap::new();
        table.insert(vec![0; cd.rank()], 1);
        let mut out = Self {
            cd,
            lambda: lambda.clone(),
            roots,
            table,
            computed_to: 0,
        };
        out.fill(depth)?;
        Ok(out)
    }

    fn fill(&mut self, depth: i64) -> Result<()> {
        let cd = self.cd;
        let n = cd.rank();
        for h in 1..=depth {
            for nu in lattice_level(n, h) {
                let lambda_rho: i64 = cd.weight_root_form(&self.lambda, &nu) + (0..n).map(|j| nu[j] * cd.s(j) as i64).sum::<i64>();
                let denom = 2 * lambda_rho - cd.root_form(&nu, &nu);
                let mut rhs: i128 = 0;
                for (alpha, mult) in self.roots.roots() {
                    let mut k = 1;
                    loop {
                        let shifted: Vec<i64> = nu.iter().zip(alpha).map(|(x, a)| x - k * a).collect();
                        if shifted.iter().any(|&x| x < 0) {
                            break;
                        }
                        if let Some(&m) = self.table.get(&shifted) {
                            // (μ + kα, α) with μ = λ - ν
                            let pair = cd.weight_root_form(&self.lambda, alpha) - cd.root_form(&nu, alpha)
                                + k * cd.root_form(alpha, alpha);
                            rhs += 2 * mult as i128 * pair as i128 * m as i128;
                        }
                        k += 1;
                    }
                }
                let m = if denom == 0 {
                    if rhs != 0 {
                        return Err(Error::Internal(format!("Freudenthal recursion degenerate at {nu:?}")));
                    }
                    0
                } else {
                    if rhs % denom as i128 != 0 || (rhs / denom as i128) < 0 {
                        return Err(Error::Internal(format!("non-integral multiplicity at {nu:?}")));
                    }
                    (rhs / denom as i128) as u64
                };
                if m > 0 {
                    self.table.insert(nu, m);
                }
            }
            self.computed_to = h;
        }
        Ok(())
    }

    pub fn depth(&self) -> i64 {
        self.computed_to
    }

    pub fn multiplicity_at(&self, nu: &[i64]) -> Result<u64> {
        let h = height(nu);
        if h > self.computed_to {
            return Err(Error::DepthExceeded { height: h as usize, depth: self.computed_to as usize });
        }
        Ok(self.table.get(nu).copied().unwrap_or(0))
    }

    pub fn character(&self) -> CharacterTable {
        let mut t = CharacterTable::new(self.cd, &self.lambda, Some(self.computed_to));
        for (nu, &m) in &self.table {
            t.entries.insert(nu.clone(), m);
        }
        t
    }
}

/// Multiplicity of `μ` in `L(λ)`; `C` must be invertible so `μ` fixes its depth.
pub fn freudenthal_multiplicity(cd: &CartanData, lambda: &Weight, mu: &Weight, depth: i64) -> Result<u64> {
    if !cd.is_dominant(lambda) {
        return Err(Error::NotDominant(lambda.coords().to_vec()));
    }
    let Some(nu) = depth_vector(cd, lambda, mu)? else {
        return Ok(0);
    };
    if height(&nu) > depth {
        return Err(Error::DepthExceeded { height: height(&nu) as usize, depth: depth as usize });
    }
    Freudenthal::new(cd, lambda, height(&nu))?.multiplicity_at(&nu)
}

/// Multiplicity of `λ - Σ ν_j α_j`; works for singular `C`.
pub fn freudenthal_at_depth(cd: &CartanData, lambda: &Weight, nu: &[i64], depth: i64) -> Result<u64> {
    if height(nu) > depth {
        return Err(Error::DepthExceeded { height: height(nu) as usize, depth: depth as usize });
    }
    Freudenthal::new(cd, lambda, height(nu))?.multiplicity_at(nu)
}

/// Full character of a finite-dimensional irreducible (finite type).
pub fn weyl_character(cd: &CartanData, lambda: &Weight) -> Result<CharacterTable> {
    if !cd.is_finite_type() {
        return Err(Error::NotFiniteType);
    }
    // weights of an irreducible occupy an interval of heights
    let mut depth = 1;
    loop {
        let f = Freudenthal::new(cd, lambda, depth)?;
        let top_empty = lattice_level(cd.rank(), depth).iter().all(|nu| f.table.get(nu).is_none());
        if top_empty {
            let mut t = f.character();
            t.depth = None;
            return Ok(t);
        }
        depth *= 2;
    }
}

/// Weight multiplicities indexed by depth below a top weight.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CharacterTable {
    top: Weight,
    columns: Vec<Weight>,
    depth: Option<i64>,
    entries: BTreeMap<Vec<i64>, u64>,
}

impl CharacterTable {
    /// Empty table; `depth = None` means untruncated.
    pub fn new(cd: &CartanData, top: &Weight, depth: Option<i64>) -> Self {
        Self {
            top: top.clone(),
            columns: (0..cd.rank()).map(|j| cd.simple_root(j)).collect(),
            depth,
            entries: BTreeMap::new(),
        }
    }

    /// The character of the one-dimensional module of weight `top`.
    pub fn point(cd: &CartanData, top: &Weight) -> Self {
        let mut t = Self::new(cd, top, None);
        t.entries.insert(vec![0; cd.rank()], 1);
        t
    }

    pub fn top(&self) -> &Weight {
        &self.top
    }

    pub fn depth(&self) -> Option<i64> {
        self.depth
    }

    pub fn add(&mut self, nu: Vec<i64>, m: u64) {
        if m > 0 && self.depth.map_or(true, |d| height(&nu) <= d) {
            *self.entries.entry(nu).or_insert(0) += m;
        }
    }

    pub fn get(&self, nu: &[i64]) -> u64 {
        self.entries.get(nu).copied().unwrap_or(0)
    }

    pub fn entries(&self) -> &BTreeMap<Vec<i64>, u64> {
        &self.entries
    }

    pub fn total(&self) -> u64 {
        self.entries.values().sum()
    }

    pub fn weight_of(&self, nu: &[i64]) -> Weight {
        let coords = (0..self.top.rank())
            .map(|i| self.top.coords()[i] - self.columns.iter().zip(nu).map(|(a, x)| a.coords()[i] * x).sum::<i64>())
            .collect();
        Weight::from_coords(coords)
    }

    /// Collapses depths to weights (lossy when `C` is singular).
    pub fn by_weight(&self) -> BTreeMap<Weight, u64> {
        let mut out = BTreeMap::new();
        for (nu, &m) in &self.entries {
            *out.entry(self.weight_of(nu)).or_insert(0) += m;
        }
        out
    }
}

pub fn char_convolve(c1: &CharacterTable, c2: &CharacterTable) -> CharacterTable {
    let depth = match (c1.depth, c2.depth) {
        (Some(a), Some(b)) => Some(a.min(b)),
        (a, b) => a.or(b),
    };
    let mut out = CharacterTable {
        top: c1.top.add(&c2.top),
        columns: c1.columns.clone(),
        depth,
        entries: BTreeMap::new(),
    };
    for (n1, &m1) in &c1.entries {
        for (n2, &m2) in &c2.entries {
            let nu: Vec<i64> = n1.iter().zip(n2).map(|(a, b)| a + b).collect();
            out.add(nu, m1 * m2);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cartan::validate_cartan;

    fn cd(m: &[Vec<i64>]) -> CartanData {
        validate_cartan(m, None).unwrap()
    }

    fn w(c: &[i64]) -> Weight {
        Weight::from_coords(c.to_vec())
    }

    #[test]
    fn sl2_strings() {
        let a1 = cd(&[vec![2]]);
        assert_eq!(freudenthal_multiplicity(&a1, &w(&[2]), &w(&[0]), 4).unwrap(), 1);
        assert_eq!(freudenthal_multiplicity(&a1, &w(&[2]), &w(&[2]), 0).unwrap(), 1);
        assert_eq!(freudenthal_multiplicity(&a1, &w(&[2]), &w(&[-4]), 4).unwrap(), 0);
        for n in 0..6 {
            assert_eq!(weyl_dim(&a1, &w(&[n])).unwrap(), n as u64 + 1);
        }
        assert!(matches!(
            freudenthal_multiplicity(&a1, &w(&[4]), &w(&[-4]), 2),
            Err(Error::DepthExceeded { .. })
        ));
    }

    #[test]
    fn c2_fundamentals() {
        let c2 = cd(&[vec![2, -1], vec![-2, 2]]);
        assert_eq!(positive_roots(&c2).unwrap().len(), 4);
        assert_eq!(weyl_dim(&c2, &w(&[1, 0])).unwrap(), 5);
        assert_eq!(weyl_dim(&c2, &w(&[0, 1])).unwrap(), 4);
        assert_eq!(weyl_dim(&c2, &w(&[1, 1])).unwrap(), 16);
        let ch = weyl_character(&c2, &w(&[0, 1])).unwrap();
        assert_eq!(ch.total(), 4);
        assert!(ch.entries().values().all(|&m| m == 1));
        let ch = weyl_character(&c2, &w(&[1, 0])).unwrap();
        assert_eq!(ch.get(&[1, 1]), 1);
        assert_eq!(ch.total(), 5);
    }

    #[test]
    fn g2_short_fundamental() {
        let g2 = cd(&[vec![2, -1], vec![-3, 2]]);
        assert_eq!(positive_roots(&g2).unwrap().len(), 6);
        // s = (3, 1): the short simple root is α_2
        assert_eq!(weyl_dim(&g2, &w(&[0, 1])).unwrap(), 7);
        assert_eq!(weyl_dim(&g2, &w(&[1, 0])).unwrap(), 14);
        assert_eq!(weyl_character(&g2, &w(&[0, 1])).unwrap().total(), 7);
        assert_eq!(weyl_character(&g2, &w(&[1, 0])).unwrap().total(), 14);
    }

    #[test]
    fn affine_root_multiplicities() {
        let a1 = cd(&[vec![2, -2], vec![-2, 2]]);
        assert!(matches!(weyl_dim(&a1, &w(&[1, 0])), Err(Error::NotFiniteType)));
        let rs = RootSystem::new(&a1, 6).unwrap();
        // δ = α_0 + α_1 and its multiples are imaginary of multiplicity 1
        assert_eq!(rs.multiplicity(&[1, 1]), 1);
        assert_eq!(rs.multiplicity(&[2, 2]), 1);
        assert_eq!(rs.multiplicity(&[2, 1]), 1);
        assert_eq!(rs.multiplicity(&[2, 0]), 0);
        // basic representation: 1, 1, 2, 3, 5 … at depths k·δ
        let f = Freudenthal::new(&a1, &w(&[1, 0]), 8).unwrap();
        let p: Vec<u64> = (0..=4).map(|k| f.multiplicity_at(&[k, k]).unwrap()).collect();
        assert_eq!(p, vec![1, 1, 2, 3, 5]);
    }

    #[test]
    fn convolution() {
        let a1 = cd(&[vec![2]]);
        let one = weyl_character(&a1, &w(&[1])).unwrap();
        let sq = char_convolve(&one, &one);
        let by_w = sq.by_weight();
        assert_eq!(by_w.get(&w(&[2])), Some(&1));
        assert_eq!(by_w.get(&w(&[0])), Some(&2));
        assert_eq!(by_w.get(&w(&[-2])), Some(&1));
        assert_eq!(char_convolve(&one, &CharacterTable::point(&a1, &w(&[0]))), one);
    }

    #[test]
    fn totals_match_weyl_dim() {
        for m in [vec![vec![2, -1], vec![-1, 2]], vec![vec![2, -1], vec![-2, 2]], vec![vec![2, -1], vec![-3, 2]]] {
            let datum = cd(&m);
            for lam in [[1, 0], [0, 1], [1, 1], [2, 0]] {
                let l = w(&lam);
                assert_eq!(weyl_character(&datum, &l).unwrap().total(), weyl_dim(&datum, &l).unwrap(), "{m:?} {lam:?}");
            }
        }
    }
}
