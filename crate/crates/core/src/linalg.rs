//! Dense matrices over ℚ(v^{1/d}) and weight-graded operators built from
//! them.
//!
//! Weight spaces in this crate are small (tens of dimensions at most), so
//! blocks are dense; sparsity lives at the block level in
//! [`GradedOperator`].

use crate::arith::RatFunc;
use std::collections::BTreeMap;
use std::fmt;

#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<RatFunc>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![RatFunc::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, RatFunc::one());
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> RatFunc) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        Self { rows, cols, data }
    }

    pub fn from_rows(rows: Vec<Vec<RatFunc>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Self {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &RatFunc {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, x: RatFunc) {
        self.data[r * self.cols + c] = x;
    }

    pub fn add_at(&mut self, r: usize, c: usize, x: &RatFunc) {
        if !x.is_zero() {
            let slot = &mut self.data[r * self.cols + c];
            *slot = &*slot + x;
        }
    }

    pub fn row(&self, r: usize) -> &[RatFunc] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<RatFunc> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(RatFunc::is_zero)
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |r, c| self.get(c, r).clone())
    }

    pub fn map(&self, f: impl Fn(&RatFunc) -> RatFunc) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    /// Entrywise bar involution.
    pub fn bar(&self) -> Self {
        self.map(RatFunc::bar)
    }

    pub fn scale(&self, x: &RatFunc) -> Self {
        self.map(|e| e * x)
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "shape mismatch in add");
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "shape mismatch in sub");
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "shape mismatch in mul");
        let mut out = Self::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..other.cols {
                    let b = other.get(k, c);
                    if !b.is_zero() {
                        out.add_at(r, c, &(a * b));
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, x: &[RatFunc]) -> Vec<RatFunc> {
        assert_eq!(self.cols, x.len());
        (0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .zip(x)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .fold(RatFunc::zero(), |acc, (a, b)| acc + a * b)
            })
            .collect()
    }

    /// Kronecker product; row index `i·other.rows + k`.
    pub fn kron(&self, other: &Self) -> Self {
        Self::from_fn(self.rows * other.rows, self.cols * other.cols, |r, c| {
            let a = self.get(r / other.rows, c / other.cols);
            if a.is_zero() {
                return RatFunc::zero();
            }
            a * other.get(r % other.rows, c % other.cols)
        })
    }

    /// Sub-matrix with the given rows and columns.
    pub fn select(&self, rows: &[usize], cols: &[usize]) -> Self {
        Self::from_fn(rows.len(), cols.len(), |r, c| self.get(rows[r], cols[c]).clone())
    }

    pub fn rank(&self) -> usize {
        independent_rows(self).len()
    }

    /// Solves `self · X = rhs` for square nonsingular `self`.
    pub fn solve(&self, rhs: &Self) -> Option<Self> {
        match solve_system(self, rhs) {
            Solution::Unique(x) => Some(x),
            _ => None,
        }
    }

    pub fn inverse(&self) -> Option<Self> {
        assert_eq!(self.rows, self.cols);
        self.solve(&Self::identity(self.rows))
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            let row: Vec<String> = self.row(r).iter().map(|x| x.to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

/// Indices of a maximal set of linearly independent rows, chosen greedily
/// in row order.
pub fn independent_rows(m: &Matrix) -> Vec<usize> {
    // echelon basis: (pivot column, normalised row)
    let mut basis: Vec<(usize, Vec<RatFunc>)> = Vec::new();
    let mut picked = Vec::new();
    for r in 0..m.rows() {
        let mut row = m.row(r).to_vec();
        for (p, b) in &basis {
            if row[*p].is_zero() {
                continue;
            }
            let f = row[*p].clone();
            for (x, y) in row.iter_mut().zip(b) {
                if !y.is_zero() {
                    *x = &*x - &(&f * y);
                }
            }
        }
        if let Some(p) = row.iter().position(|x| !x.is_zero()) {
            let inv = row[p].inv();
            for x in row.iter_mut() {
                if !x.is_zero() {
                    *x = &*x * &inv;
                }
            }
            basis.push((p, row));
            picked.push(r);
        }
    }
    picked
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Solution {
    Unique(Matrix),
    /// Solvable, with a kernel of the given dimension.
    Underdetermined(usize),
    Inconsistent,
}

/// Gauss–Jordan on `[A | B]` for `A X = B`.
pub fn solve_system(a: &Matrix, b: &Matrix) -> Solution {
    assert_eq!(a.rows(), b.rows(), "rhs row count");
    let (n, k) = (a.cols(), b.cols());
    let mut rows: Vec<Vec<RatFunc>> = (0..a.rows())
        .map(|r| a.row(r).iter().chain(b.row(r)).cloned().collect())
        .collect();
    let mut pivots = Vec::new();
    let mut next = 0;
    for c in 0..n {
        let Some(p) = (next..rows.len()).find(|&r| !rows[r][c].is_zero()) else {
            continue;
        };
        rows.swap(next, p);
        let inv = rows[next][c].inv();
        for x in rows[next].iter_mut() {
            if !x.is_zero() {
                *x = &*x * &inv;
            }
        }
        let pivot_row = rows[next].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r == next || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (x, y) in row.iter_mut().zip(&pivot_row) {
                if !y.is_zero() {
                    *x = &*x - &(&f * y);
                }
            }
        }
        pivots.push(c);
        next += 1;
    }
    if rows[next..].iter().any(|row| row[n..].iter().any(|x| !x.is_zero())) {
        return Solution::Inconsistent;
    }
    if pivots.len() < n {
        return Solution::Underdetermined(n - pivots.len());
    }
    let mut x = Matrix::zeros(n, k);
    for (r, &c) in pivots.iter().enumerate() {
        for j in 0..k {
            x.set(c, j, rows[r][n + j].clone());
        }
    }
    Solution::Unique(x)
}

/// Root-lattice grade of a weight space (`ν` with weight `λ - ν`), or a
/// shift between grades.
pub type Grade = Vec<i64>;

pub fn grade_add(a: &[i64], b: &[i64]) -> Grade {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn grade_sub(a: &[i64], b: &[i64]) -> Grade {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn unit_grade(rank: usize, i: usize, value: i64) -> Grade {
    let mut g = vec![0; rank];
    g[i] = value;
    g
}

/// Operator between two graded spaces that moves grade `ν` to `ν + shift`.
/// Missing blocks are zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedOperator {
    shift: Grade,
    blocks: BTreeMap<Grade, Matrix>,
}

impl GradedOperator {
    pub fn new(shift: Grade) -> Self {
        Self {
            shift,
            blocks: BTreeMap::new(),
        }
    }

    /// Identity on a space with the given block dimensions.
    pub fn identity<'a>(rank: usize, dims: impl IntoIterator<Item = (&'a Grade, usize)>) -> Self {
        let mut op = Self::new(vec![0; rank]);
        for (g, d) in dims {
            op.blocks.insert(g.clone(), Matrix::identity(d));
        }
        op
    }

    pub fn shift(&self) -> &Grade {
        &self.shift
    }

    pub fn target_of(&self, source: &[i64]) -> Grade {
        grade_add(source, &self.shift)
    }

    pub fn insert(&mut self, source: Grade, block: Matrix) {
        self.blocks.insert(source, block);
    }

    pub fn block(&self, source: &[i64]) -> Option<&Matrix> {
        self.blocks.get(source)
    }

    pub fn blocks(&self) -> impl Iterator<Item = (&Grade, &Matrix)> {
        self.blocks.iter()
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Self) -> Self {
        let mut out = Self::new(grade_add(&self.shift, &other.shift));
        for (src, b) in &other.blocks {
            let mid = other.target_of(src);
            if let Some(a) = self.blocks.get(&mid) {
                out.blocks.insert(src.clone(), a.mul(b));
            }
        }
        out
    }

    pub fn scale(&self, x: &RatFunc) -> Self {
        Self {
            shift: self.shift.clone(),
            blocks: self.blocks.iter().map(|(g, m)| (g.clone(), m.scale(x))).collect(),
        }
    }

    /// Per-source-block scaling.
    pub fn scale_by(&self, f: impl Fn(&Grade) -> RatFunc) -> Self {
        Self {
            shift: self.shift.clone(),
            blocks: self.blocks.iter().map(|(g, m)| (g.clone(), m.scale(&f(g)))).collect(),
        }
    }

    pub fn bar(&self) -> Self {
        Self {
            shift: self.shift.clone(),
            blocks: self.blocks.iter().map(|(g, m)| (g.clone(), m.bar())).collect(),
        }
    }

    fn combine(&self, other: &Self, sign: bool) -> Self {
        assert_eq!(self.shift, other.shift, "adding operators of different shift");
        let mut out = self.clone();
        for (g, m) in &other.blocks {
            let m = if sign { m.clone() } else { m.map(|x| -x) };
            match out.blocks.get(g) {
                Some(a) => {
                    let s = a.add(&m);
                    out.blocks.insert(g.clone(), s);
                }
                None => {
                    out.blocks.insert(g.clone(), m);
                }
            }
        }
        out
    }

    pub fn add(&self, other: &Self) -> Self {
        self.combine(other, true)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.combine(other, false)
    }

    pub fn is_zero(&self) -> bool {
        self.blocks.values().all(Matrix::is_zero)
    }

    /// First source grade where `self` and `other` differ.
    pub fn first_difference(&self, other: &Self) -> Option<Grade> {
        if self.shift != other.shift {
            return Some(self.shift.clone());
        }
        let keys: std::collections::BTreeSet<&Grade> =
            self.blocks.keys().chain(other.blocks.keys()).collect();
        keys.into_iter()
            .find(|g| match (self.blocks.get(*g), other.blocks.get(*g)) {
                (Some(a), Some(b)) => a != b,
                (Some(a), None) | (None, Some(a)) => !a.is_zero(),
                (None, None) => false,
            })
            .cloned()
    }

    pub fn restrict_sources(&self, keep: impl Fn(&Grade) -> bool) -> Self {
        Self {
            shift: self.shift.clone(),
            blocks: self
                .blocks
                .iter()
                .filter(|(g, _)| keep(g))
                .map(|(g, m)| (g.clone(), m.clone()))
                .collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(n: i64) -> RatFunc {
        RatFunc::v_pow(1, n)
    }

    fn int(n: i64) -> RatFunc {
        RatFunc::from_int(n)
    }

    #[test]
    fn inverse_of_symbolic_matrix() {
        let m = Matrix::from_rows(vec![vec![v(1), int(1)], vec![int(1), v(-1)]]);
        // det = 0: singular
        assert!(m.inverse().is_none());
        assert_eq!(m.rank(), 1);
        let m = Matrix::from_rows(vec![vec![v(1), int(1)], vec![int(1), v(1)]]);
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv), Matrix::identity(2));
    }

    #[test]
    fn solve_classifies() {
        let a = Matrix::from_rows(vec![vec![int(1), int(1)], vec![int(2), int(2)]]);
        let b = Matrix::from_rows(vec![vec![int(1)], vec![int(3)]]);
        assert_eq!(solve_system(&a, &b), Solution::Inconsistent);
        let b = Matrix::from_rows(vec![vec![int(1)], vec![int(2)]]);
        assert_eq!(solve_system(&a, &b), Solution::Underdetermined(1));
    }

    #[test]
    fn greedy_rows_prefer_earlier() {
        let m = Matrix::from_rows(vec![
            vec![int(0), int(0)],
            vec![v(1), int(1)],
            vec![v(2), v(1)],
            vec![int(0), int(1)],
        ]);
        assert_eq!(independent_rows(&m), vec![1, 3]);
    }

    #[test]
    fn graded_composition() {
        let mut a = GradedOperator::new(vec![1]);
        a.insert(vec![0], Matrix::from_rows(vec![vec![v(1)]]));
        let mut b = GradedOperator::new(vec![-1]);
        b.insert(vec![1], Matrix::from_rows(vec![vec![v(-1)]]));
        let ab = a.compose(&b);
        assert_eq!(ab.shift(), &vec![0]);
        assert_eq!(ab.block(&[1]).unwrap(), &Matrix::identity(1));
        assert!(b.compose(&a).block(&[0]).is_some());
    }
}
