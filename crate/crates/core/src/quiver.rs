//! Quivers with admissible automorphisms, their folding to symmetrizable
//! Cartan data, and framings.
//!
//! The layout produced by [`fold_from_cartan`] is fixed (tag
//! [`LAYOUT_TAG`]): the orbit of `i'` is `{(i', r) : 0 ≤ r < s_{i'}}` with
//! `a(i', r) = (i', r + 1 mod s_{i'})`. Between orbits `i' < j'` with
//! `c_{i'j'} ≠ 0` we place `k = -c_{i'j'} s_{i'} / lcm(s_{i'}, s_{j'})`
//! free `a`-orbits of arrows; copy `c` is the orbit of the arrow
//! `(i', 0) → (j', c mod gcd(s_{i'}, s_{j'}))`. Arrows in `Ω` point from
//! the smaller orbit index to the larger.

use crate::cartan::{validate_cartan, CartanData, Weight};
use crate::error::{Error, Result};
use num_integer::Integer;
use serde::Serialize;

pub const LAYOUT_TAG: &str = "orbit-cyclic/free-arrow-orbits/omega-ascending";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Arrow {
    pub source: usize,
    pub target: usize,
    /// Index of the oppositely oriented arrow.
    pub bar: usize,
    pub in_omega: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct QuiverWithAut {
    vertex_count: usize,
    arrows: Vec<Arrow>,
    a_vertex: Vec<usize>,
    a_arrow: Vec<usize>,
    orbit_of: Vec<usize>,
    orbits: Vec<Vec<usize>>,
    order: usize,
}

fn cycle_lcm(perm: &[usize]) -> usize {
    let mut seen = vec![false; perm.len()];
    let mut l = 1usize;
    for start in 0..perm.len() {
        if seen[start] {
            continue;
        }
        let mut len = 0;
        let mut x = start;
        while !seen[x] {
            seen[x] = true;
            x = perm[x].min(perm.len() - 1);
            len += 1;
        }
        l = l.lcm(&len);
    }
    l
}

impl QuiverWithAut {
    /// Raw constructor; no invariant is checked (see [`validate_admissible`]).
    pub fn from_parts(vertex_count: usize, arrows: Vec<Arrow>, a_vertex: Vec<usize>, a_arrow: Vec<usize>) -> Self {
        let mut orbit_of = vec![usize::MAX; vertex_count];
        let mut orbits = Vec::new();
        for v in 0..vertex_count {
            if orbit_of[v] != usize::MAX {
                continue;
            }
            let id = orbits.len();
            let mut orbit = Vec::new();
            let mut x = v;
            while orbit_of[x] == usize::MAX {
                orbit_of[x] = id;
                orbit.push(x);
                x = a_vertex.get(x).copied().unwrap_or(x).min(vertex_count - 1);
            }
            orbits.push(orbit);
        }
        let order = cycle_lcm(&a_vertex).lcm(&cycle_lcm(&a_arrow).max(1));
        Self {
            vertex_count,
            arrows,
            a_vertex,
            a_arrow,
            orbit_of,
            orbits,
            order,
        }
    }

    /// Builds `H = Ω ⊔ Ω̄` from the `Ω` arrows and induces `a` on arrows by
    /// matching endpoints (parallel arrows matched in order). Arrows whose
    /// image has no match are sent to themselves, which the validator flags.
    pub fn from_omega(vertex_count: usize, omega: &[(usize, usize)], a_vertex: Vec<usize>) -> Self {
        let m = omega.len();
        let mut arrows = Vec::with_capacity(2 * m);
        for (k, &(s, t)) in omega.iter().enumerate() {
            arrows.push(Arrow { source: s, target: t, bar: k + m, in_omega: true });
        }
        for (k, &(s, t)) in omega.iter().enumerate() {
            arrows.push(Arrow { source: t, target: s, bar: k, in_omega: false });
        }
        let mut used = vec![false; arrows.len()];
        let mut a_arrow = vec![usize::MAX; arrows.len()];
        for h in 0..arrows.len() {
            let (s, t) = (a_vertex[arrows[h].source], a_vertex[arrows[h].target]);
            // prefer an arrow with the same Ω-membership
            let pick = (0..arrows.len())
                .filter(|&g| !used[g] && arrows[g].source == s && arrows[g].target == t)
                .min_by_key(|&g| (arrows[g].in_omega != arrows[h].in_omega, g));
            if let Some(g) = pick {
                used[g] = true;
                a_arrow[h] = g;
            }
        }
        for h in 0..arrows.len() {
            if a_arrow[h] == usize::MAX {
                a_arrow[h] = h;
            }
        }
        Self::from_parts(vertex_count, arrows, a_vertex, a_arrow)
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn omega(&self) -> impl Iterator<Item = &Arrow> {
        self.arrows.iter().filter(|h| h.in_omega)
    }

    pub fn a_vertex(&self) -> &[usize] {
        &self.a_vertex
    }

    pub fn a_arrow(&self) -> &[usize] {
        &self.a_arrow
    }

    pub fn orbit_of(&self, v: usize) -> usize {
        self.orbit_of[v]
    }

    pub fn orbits(&self) -> &[Vec<usize>] {
        &self.orbits
    }

    pub fn orbit_sizes(&self) -> Vec<usize> {
        self.orbits.iter().map(Vec::len).collect()
    }

    /// Order of `a` (lcm of its cycle lengths on vertices and arrows).
    pub fn order(&self) -> usize {
        self.order
    }

    /// Number of `Ω` arrows joining `u` and `w` in either direction.
    pub fn edge_count(&self, u: usize, w: usize) -> usize {
        self.omega()
            .filter(|h| (h.source == u && h.target == w) || (h.source == w && h.target == u))
            .count()
    }

    /// The symmetric (unfolded) Cartan matrix read off the underlying graph.
    pub fn unfolded_cartan(&self) -> Result<CartanData> {
        let n = self.vertex_count;
        let c: Vec<Vec<i64>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| if i == j { 2 } else { -(self.edge_count(i, j) as i64) })
                    .collect()
            })
            .collect();
        validate_cartan(&c, None)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Clause {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AdmissibilityReport {
    pub clauses: Vec<Clause>,
}

impl AdmissibilityReport {
    pub fn passed(&self) -> bool {
        self.clauses.iter().all(|c| c.passed)
    }

    pub fn failed(&self) -> Vec<&'static str> {
        self.clauses.iter().filter(|c| !c.passed).map(|c| c.name).collect()
    }

    pub fn clause(&self, name: &str) -> Option<&Clause> {
        self.clauses.iter().find(|c| c.name == name)
    }
}

fn is_permutation(p: &[usize]) -> bool {
    let mut seen = vec![false; p.len()];
    p.iter().all(|&x| x < p.len() && !std::mem::replace(&mut seen[x], true))
}

fn check(name: &'static str, violations: Vec<String>) -> Clause {
    Clause {
        name,
        passed: violations.is_empty(),
        detail: violations.into_iter().take(3).collect::<Vec<_>>().join("; "),
    }
}

/// Checks every structural clause of a quiver with automorphism.
pub fn validate_admissible(q: &QuiverWithAut) -> AdmissibilityReport {
    let h = &q.arrows;
    let mut clauses = Vec::new();
    let perm_ok = is_permutation(&q.a_vertex)
        && q.a_vertex.len() == q.vertex_count
        && is_permutation(&q.a_arrow)
        && q.a_arrow.len() == h.len();
    clauses.push(check(
        "a_is_permutation",
        if perm_ok { vec![] } else { vec!["a is not a bijection on I and H".into()] },
    ));
    if !perm_ok {
        return AdmissibilityReport { clauses };
    }
    clauses.push(check(
        "no_loops",
        h.iter()
            .enumerate()
            .filter(|(_, x)| x.source == x.target)
            .map(|(k, x)| format!("arrow {k} is a loop at {}", x.source))
            .collect(),
    ));
    clauses.push(check(
        "bar_involution",
        (0..h.len())
            .filter(|&k| {
                let b = h[k].bar;
                b >= h.len() || b == k || h[b].bar != k || h[b].source != h[k].target || h[b].target != h[k].source
            })
            .map(|k| format!("arrow {k}"))
            .collect(),
    ));
    clauses.push(check(
        "omega_partition",
        (0..h.len())
            .filter(|&k| h[k].bar < h.len() && h[k].in_omega == h[h[k].bar].in_omega)
            .map(|k| format!("arrow {k} and its opposite are on the same side of Ω"))
            .collect(),
    ));
    clauses.push(check(
        "(a) a commutes with s and t",
        (0..h.len())
            .filter(|&k| {
                let g = q.a_arrow[k];
                q.a_vertex[h[k].source] != h[g].source || q.a_vertex[h[k].target] != h[g].target
            })
            .map(|k| format!("arrow {k}"))
            .collect(),
    ));
    clauses.push(check(
        "(b) endpoints in different orbits",
        (0..h.len())
            .filter(|&k| q.orbit_of[h[k].source] == q.orbit_of[h[k].target])
            .map(|k| format!("arrow {k}: {} -> {}", h[k].source, h[k].target))
            .collect(),
    ));
    clauses.push(check(
        "a preserves Ω",
        (0..h.len())
            .filter(|&k| h[k].in_omega != h[q.a_arrow[k]].in_omega)
            .map(|k| format!("arrow {k}"))
            .collect(),
    ));
    clauses.push(check(
        "bar commutes with a",
        (0..h.len())
            .filter(|&k| h[k].bar < h.len() && q.a_arrow[h[k].bar] != h[q.a_arrow[k]].bar)
            .map(|k| format!("arrow {k}"))
            .collect(),
    ));
    let mut power_v: Vec<usize> = (0..q.vertex_count).collect();
    let mut power_h: Vec<usize> = (0..h.len()).collect();
    for _ in 0..q.order {
        power_v = power_v.iter().map(|&x| q.a_vertex[x]).collect();
        power_h = power_h.iter().map(|&x| q.a_arrow[x]).collect();
    }
    let mut order_violations = Vec::new();
    if power_v.iter().enumerate().any(|(k, &x)| k != x) || power_h.iter().enumerate().any(|(k, &x)| k != x) {
        order_violations.push(format!("a^{} is not the identity", q.order));
    }
    for (k, orbit) in q.orbits.iter().enumerate() {
        if q.order % orbit.len() != 0 {
            order_violations.push(format!("orbit {k} size does not divide the order"));
        }
    }
    clauses.push(check("a^o = id", order_violations));
    AdmissibilityReport { clauses }
}

/// Realizes a symmetrizable GCM as a quiver with admissible automorphism.
pub fn fold_from_cartan(cd: &CartanData) -> QuiverWithAut {
    let n = cd.rank();
    let sizes: Vec<usize> = cd.symmetrizer().iter().map(|&s| s as usize).collect();
    let offset: Vec<usize> = sizes
        .iter()
        .scan(0, |acc, &s| {
            let o = *acc;
            *acc += s;
            Some(o)
        })
        .collect();
    let vertex_count: usize = sizes.iter().sum();
    let vid = |i: usize, r: usize| offset[i] + r % sizes[i];
    let mut a_vertex = vec![0; vertex_count];
    for i in 0..n {
        for r in 0..sizes[i] {
            a_vertex[vid(i, r)] = vid(i, r + 1);
        }
    }
    // Ω arrows grouped into free a-orbits of length lcm(s_i, s_j)
    let mut omega: Vec<(usize, usize)> = Vec::new();
    let mut a_omega: Vec<usize> = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let c = cd.entry(i, j);
            if c == 0 {
                continue;
            }
            let count = (-c) as usize * sizes[i];
            let l = sizes[i].lcm(&sizes[j]);
            let g = sizes[i].gcd(&sizes[j]);
            for copy in 0..count / l {
                let base = omega.len();
                let t = copy % g;
                for m in 0..l {
                    omega.push((vid(i, m), vid(j, m + t)));
                    a_omega.push(base + (m + 1) % l);
                }
            }
        }
    }
    let m = omega.len();
    let mut arrows = Vec::with_capacity(2 * m);
    for (k, &(s, t)) in omega.iter().enumerate() {
        arrows.push(Arrow { source: s, target: t, bar: k + m, in_omega: true });
    }
    for (k, &(s, t)) in omega.iter().enumerate() {
        arrows.push(Arrow { source: t, target: s, bar: k, in_omega: false });
    }
    let a_arrow: Vec<usize> = a_omega.iter().copied().chain(a_omega.iter().map(|&x| x + m)).collect();
    QuiverWithAut::from_parts(vertex_count, arrows, a_vertex, a_arrow)
}

/// Reads the symmetrizable GCM off the orbit/arrow counts.
pub fn cartan_from_quiver(q: &QuiverWithAut) -> Result<CartanData> {
    let report = validate_admissible(q);
    if !report.passed() {
        return Err(Error::NotAdmissible(report.failed().join(", ")));
    }
    let orbits = q.orbits();
    let n = orbits.len();
    let mut c = vec![vec![0i64; n]; n];
    let mut counts = vec![vec![0usize; n]; n];
    for h in q.omega() {
        let (i, j) = (q.orbit_of(h.source), q.orbit_of(h.target));
        counts[i][j] += 1;
        counts[j][i] += 1;
    }
    for i in 0..n {
        for j in 0..n {
            if i == j {
                c[i][j] = 2;
                continue;
            }
            let size = orbits[i].len();
            if counts[i][j] % size != 0 {
                return Err(Error::NonIntegerEntry { from: i, to: j, arrows: counts[i][j], size });
            }
            c[i][j] = -((counts[i][j] / size) as i64);
        }
    }
    let s: Vec<u32> = orbits.iter().map(|o| o.len() as u32).collect();
    validate_cartan(&c, Some(&s))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FramedQuiver {
    base: QuiverWithAut,
    copies: usize,
    framing: Vec<Vec<u64>>,
    highest_weights: Vec<Weight>,
}

impl FramedQuiver {
    pub fn base(&self) -> &QuiverWithAut {
        &self.base
    }

    pub fn copies(&self) -> usize {
        self.copies
    }

    /// `ω^k` as a vector over `I^k`.
    pub fn framing(&self, k: usize) -> &[u64] {
        &self.framing[k]
    }

    /// `λ^k = Σ_{i'} ω^k_{i'} β_{i'}` over the folded datum.
    pub fn highest_weights(&self) -> &[Weight] {
        &self.highest_weights
    }

    /// Vertex id of `i^k` in the framed quiver (`k` is 0-based).
    pub fn framing_vertex(&self, i: usize, k: usize) -> usize {
        self.base.vertex_count() * (k + 1) + i
    }

    pub fn vertex_count(&self) -> usize {
        self.base.vertex_count() * (self.copies + 1)
    }

    /// `Ω` together with one arrow `i → i^k` per vertex and copy.
    pub fn arrows(&self) -> Vec<(usize, usize)> {
        let mut out: Vec<(usize, usize)> = self.base.omega().map(|h| (h.source, h.target)).collect();
        for k in 0..self.copies {
            for i in 0..self.base.vertex_count() {
                out.push((i, self.framing_vertex(i, k)));
            }
        }
        out
    }

    /// `a` on the framed vertex set, `a(i^k) = a(i)^k`.
    pub fn a_vertex(&self) -> Vec<usize> {
        let n = self.base.vertex_count();
        (0..self.vertex_count())
            .map(|v| {
                let (copy, i) = (v / n, v % n);
                copy * n + self.base.a_vertex()[i]
            })
            .collect()
    }
}

/// Lifts a vector over the orbits `I'` to an `a`-invariant vector over `I`.
pub fn lift_to_vertices(q: &QuiverWithAut, per_orbit: &[u64]) -> Vec<u64> {
    (0..q.vertex_count()).map(|v| per_orbit[q.orbit_of(v)]).collect()
}

pub fn frame(q: &QuiverWithAut, copies: usize, omega: &[Vec<u64>]) -> Result<FramedQuiver> {
    if omega.len() != copies {
        return Err(Error::DimensionMismatch { expected: copies, got: omega.len() });
    }
    let cd = cartan_from_quiver(q)?;
    let mut highest_weights = Vec::with_capacity(copies);
    for (k, w) in omega.iter().enumerate() {
        if w.len() != q.vertex_count() {
            return Err(Error::DimensionMismatch { expected: q.vertex_count(), got: w.len() });
        }
        if (0..q.vertex_count()).any(|v| w[v] != w[q.a_vertex()[v]]) {
            return Err(Error::NonInvariantFraming { copy: k });
        }
        let coords: Vec<i64> = q.orbits().iter().map(|o| w[o[0]] as i64).collect();
        highest_weights.push(cd.weight(&coords)?);
    }
    Ok(FramedQuiver {
        base: q.clone(),
        copies,
        framing: omega.to_vec(),
        highest_weights,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cd(m: &[Vec<i64>]) -> CartanData {
        validate_cartan(m, None).unwrap()
    }

    #[test]
    fn a1_is_a_point() {
        let q = fold_from_cartan(&cd(&[vec![2]]));
        assert_eq!(q.vertex_count(), 1);
        assert!(q.arrows().is_empty());
        assert_eq!(q.order(), 1);
        assert!(validate_admissible(&q).passed());
        assert_eq!(cartan_from_quiver(&q).unwrap().matrix(), &[vec![2]]);
    }

    #[test]
    fn c2_is_a3_with_arm_swap() {
        let q = fold_from_cartan(&cd(&[vec![2, -1], vec![-2, 2]]));
        assert_eq!(q.vertex_count(), 3);
        assert_eq!(q.omega().count(), 2);
        assert_eq!(q.order(), 2);
        assert_eq!(q.orbit_sizes(), vec![2, 1]);
        // x1 - y - x2
        assert_eq!(q.edge_count(0, 2), 1);
        assert_eq!(q.edge_count(1, 2), 1);
        assert_eq!(q.a_vertex(), &[1, 0, 2]);
        let back = cartan_from_quiver(&q).unwrap();
        assert_eq!(back.matrix(), &[vec![2, -1], vec![-2, 2]]);
        assert_eq!(back.symmetrizer(), &[2, 1]);
    }

    #[test]
    fn g2_row_is_d4_with_triality() {
        let q = fold_from_cartan(&cd(&[vec![2, -1], vec![-3, 2]]));
        assert_eq!(q.vertex_count(), 4);
        assert_eq!(q.omega().count(), 3);
        assert_eq!(q.order(), 3);
        assert_eq!(q.orbit_sizes(), vec![3, 1]);
        for arm in 0..3 {
            assert_eq!(q.edge_count(arm, 3), 1);
        }
    }

    #[test]
    fn unfolded_a3_with_trivial_automorphism() {
        let q = QuiverWithAut::from_omega(3, &[(0, 1), (1, 2)], vec![0, 1, 2]);
        assert!(validate_admissible(&q).passed());
        let c = cartan_from_quiver(&q).unwrap();
        assert_eq!(c.matrix(), &[vec![2, -1, 0], vec![-1, 2, -1], vec![0, -1, 2]]);
    }

    #[test]
    fn a2_swap_is_rejected() {
        let q = QuiverWithAut::from_omega(2, &[(0, 1)], vec![1, 0]);
        let r = validate_admissible(&q);
        assert!(!r.passed());
        assert!(!r.clause("(b) endpoints in different orbits").unwrap().passed);
        assert!(matches!(cartan_from_quiver(&q), Err(Error::NotAdmissible(_))));
    }

    #[test]
    fn non_equivariant_automorphism_fails_clause_a() {
        // path 0 - 1 - 2 with a swapping 0 and 1 only
        let q = QuiverWithAut::from_omega(3, &[(0, 1), (1, 2)], vec![1, 0, 2]);
        let r = validate_admissible(&q);
        assert!(!r.clause("(a) a commutes with s and t").unwrap().passed);
    }

    #[test]
    fn non_divisible_arrow_count() {
        // orbit {0,1} joined to 2 by one arrow only: 1 arrow is not divisible by 2
        let arrows = vec![
            Arrow { source: 0, target: 2, bar: 1, in_omega: true },
            Arrow { source: 2, target: 0, bar: 0, in_omega: false },
        ];
        let q = QuiverWithAut::from_parts(3, arrows, vec![1, 0, 2], vec![0, 1]);
        // clause (a) already fails for this layout
        assert!(!validate_admissible(&q).passed());
    }

    #[test]
    fn framing() {
        let a1 = fold_from_cartan(&cd(&[vec![2]]));
        let f = frame(&a1, 1, &[vec![3]]).unwrap();
        assert_eq!(f.highest_weights()[0].coords(), &[3]);
        assert_eq!(f.arrows(), vec![(0, 1)]);

        let q = fold_from_cartan(&cd(&[vec![2, -1], vec![-2, 2]]));
        let w1 = lift_to_vertices(&q, &[1, 0]);
        let w2 = lift_to_vertices(&q, &[0, 1]);
        let f = frame(&q, 2, &[w1, w2]).unwrap();
        assert_eq!(f.highest_weights()[0].coords(), &[1, 0]);
        assert_eq!(f.highest_weights()[1].coords(), &[0, 1]);
        assert_eq!(f.vertex_count(), 9);
        assert_eq!(f.a_vertex()[f.framing_vertex(0, 1)], f.framing_vertex(1, 1));
        assert!(matches!(
            frame(&q, 1, &[vec![1, 0, 0]]),
            Err(Error::NonInvariantFraming { copy: 0 })
        ));
    }

    #[test]
    fn round_trip_rank_two_battery() {
        for (a, b) in [(1, 1), (1, 2), (2, 1), (1, 3), (3, 1), (1, 4), (4, 1), (2, 2)] {
            let m = vec![vec![2, -a], vec![-b, 2]];
            let datum = cd(&m);
            let q = fold_from_cartan(&datum);
            let r = validate_admissible(&q);
            assert!(r.passed(), "{m:?}: {:?}", r.failed());
            assert_eq!(cartan_from_quiver(&q).unwrap(), datum, "{m:?}");
            for h in q.arrows() {
                assert_ne!(q.orbit_of(h.source), q.orbit_of(h.target));
            }
        }
    }
}
