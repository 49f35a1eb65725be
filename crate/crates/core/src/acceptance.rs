//! The acceptance suite: twelve exact checks over a fixed set of Cartan
//! data, shared by the `acceptance` test target and `qfold --command all`.

use crate::cartan::{validate_cartan, CartanData, Weight};
use crate::crystal::{
    build_crystal, crystal_isomorphic, decompose_by_highest_weight, fold_crystal, stabilization_check, tensor_crystal,
    unfolded_crystal,
};
use crate::error::Result;
use crate::forms::{almost_orthogonality, contravariant_form, default_order, tensor_form, verify_contravariance};
use crate::module::{
    build_module, verify_bar_compatibility, verify_defining_relations, verify_divided_power_relation,
    verify_divided_power_scalar, verify_ef_commutation, HWModule, WeightModule,
};
use crate::oracle::{freudenthal_at_depth, weyl_dim};
use crate::quiver::{cartan_from_quiver, fold_from_cartan, validate_admissible, QuiverWithAut};
use crate::report::Report;
use crate::rmatrix::{compute_theta, verify_psi, verify_yang_baxter};
use crate::tensor::{decompose_tensor_module, tensor_module};
use serde::Serialize;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Failure {
    pub report: String,
    pub identity: String,
    pub block: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Outcome {
    pub id: u32,
    pub title: &'static str,
    pub passed: bool,
    pub checks: usize,
    pub first_failure: Option<Failure>,
}

#[derive(Default)]
struct Tally {
    checks: usize,
    failure: Option<Failure>,
}

impl Tally {
    fn report(&mut self, r: &Report) {
        self.checks += r.count();
        if self.failure.is_none() {
            if let Some(c) = r.first_failure() {
                self.failure = Some(Failure { report: r.name.clone(), identity: c.identity.clone(), block: c.block.clone() });
            }
        }
    }

    fn check(&mut self, what: &str, block: impl Into<String>, ok: bool) {
        self.checks += 1;
        if !ok && self.failure.is_none() {
            self.failure = Some(Failure { report: "acceptance".into(), identity: what.into(), block: block.into() });
        }
    }
}

pub struct Criterion {
    pub id: u32,
    pub title: &'static str,
    run: fn(&mut Tally) -> Result<()>,
}

impl Criterion {
    pub fn run(&self) -> Outcome {
        let mut t = Tally::default();
        if let Err(e) = (self.run)(&mut t) {
            t.check(&format!("error: {e}"), "-", false);
        }
        Outcome { id: self.id, title: self.title, passed: t.failure.is_none(), checks: t.checks, first_failure: t.failure }
    }
}

fn cartan(rows: &[&[i64]]) -> CartanData {
    let rows: Vec<Vec<i64>> = rows.iter().map(|r| r.to_vec()).collect();
    validate_cartan(&rows, None).expect("built-in Cartan matrix")
}

pub fn a1() -> CartanData {
    cartan(&[&[2]])
}

pub fn a2() -> CartanData {
    cartan(&[&[2, -1], &[-1, 2]])
}

/// `s = (2, 1)`; `β_2` gives the 4-dimensional module.
pub fn c2() -> CartanData {
    cartan(&[&[2, -1], &[-2, 2]])
}

pub fn g2() -> CartanData {
    cartan(&[&[2, -1], &[-3, 2]])
}

pub fn b3() -> CartanData {
    cartan(&[&[2, -1, 0], &[-1, 2, -1], &[0, -2, 2]])
}

pub fn affine_a1() -> CartanData {
    cartan(&[&[2, -2], &[-2, 2]])
}

fn w(c: &[i64]) -> Weight {
    Weight::from_coords(c.to_vec())
}

/// Modules checked by the relation, commutation and form criteria.
pub fn suite() -> Vec<(String, CartanData, Weight, i64)> {
    let finite = 100;
    [
        ("A1 (3)", a1(), w(&[3]), finite),
        ("A2 (1,1)", a2(), w(&[1, 1]), finite),
        ("A2 (2,0)", a2(), w(&[2, 0]), finite),
        ("C2 b1", c2(), w(&[1, 0]), finite),
        ("C2 b2", c2(), w(&[0, 1]), finite),
        ("C2 b1+b2", c2(), w(&[1, 1]), finite),
        ("G2 short", g2(), w(&[0, 1]), finite),
        ("G2 long", g2(), w(&[1, 0]), finite),
        ("B3 w1", b3(), w(&[1, 0, 0]), finite),
        ("B3 w3", b3(), w(&[0, 0, 1]), finite),
        ("affine A1 b0", affine_a1(), w(&[1, 0]), 4),
        ("affine A1 b0+b1", affine_a1(), w(&[1, 1]), 4),
    ]
    .into_iter()
    .map(|(n, c, l, d)| (n.to_string(), c, l, d))
    .collect()
}

fn suite_modules() -> Result<Vec<(String, HWModule)>> {
    suite().into_iter().map(|(n, cd, l, d)| Ok((n, build_module(&cd, &l, d)?))).collect()
}

/// Criterion 4 and 5 instances: C2 `β_1, β_2, β_1+β_2`, G2 short, affine `β_0`.
pub fn character_instances() -> Vec<(String, CartanData, Weight, i64)> {
    vec![
        ("C2 b1".into(), c2(), w(&[1, 0]), 100),
        ("C2 b2".into(), c2(), w(&[0, 1]), 100),
        ("C2 b1+b2".into(), c2(), w(&[1, 1]), 100),
        ("G2 short".into(), g2(), w(&[0, 1]), 100),
        ("affine A1 b0".into(), affine_a1(), w(&[1, 0]), 4),
    ]
}

/// Criterion 7 pairs.
pub fn tensor_pairs() -> Vec<(CartanData, Weight, Weight)> {
    vec![
        (a1(), w(&[1]), w(&[1])),
        (a1(), w(&[2]), w(&[1])),
        (c2(), w(&[1, 0]), w(&[1, 0])),
        (c2(), w(&[1, 0]), w(&[0, 1])),
        (c2(), w(&[0, 1]), w(&[0, 1])),
    ]
}

fn relations(t: &mut Tally) -> Result<()> {
    for (_, m) in suite_modules()? {
        t.report(&verify_defining_relations(&m));
        t.report(&verify_bar_compatibility(&m));
    }
    Ok(())
}

fn divided_powers(t: &mut Tally) -> Result<()> {
    for (_, m) in suite_modules()? {
        for i in 0..m.rank() {
            for n in 1..=3 {
                t.report(&verify_divided_power_relation(&m, i, n));
            }
        }
    }
    for n in 1..=6 {
        for s in 1..=3 {
            t.check(&format!("sum_r v^(s(n-1-2r)) = [n] for n={n}, s={s}"), "scalar", verify_divided_power_scalar(n, s));
        }
    }
    Ok(())
}

fn commutation(t: &mut Tally) -> Result<()> {
    for (_, m) in suite_modules()? {
        for i in 0..m.rank() {
            for n in 1..=3 {
                t.report(&verify_ef_commutation(&m, i, n));
            }
        }
    }
    Ok(())
}

fn characters(t: &mut Tally) -> Result<()> {
    for (name, cd, l, depth) in character_instances() {
        let m = build_module(&cd, &l, depth)?;
        for g in m.grades() {
            let oracle = freudenthal_at_depth(&cd, &l, &g, depth)?;
            t.check(&format!("{name}: dim L_mu = Freudenthal"), crate::report::block_label(&g), m.dim(&g) as u64 == oracle);
        }
        if cd.is_finite_type() {
            t.check(&format!("{name}: total = Weyl dimension"), "all", m.total_dim() as u64 == weyl_dim(&cd, &l)?);
        }
    }
    Ok(())
}

fn crystal_counts(t: &mut Tally) -> Result<()> {
    for (name, cd, l, depth) in character_instances() {
        let m = build_module(&cd, &l, depth)?;
        let b = build_crystal(&cd, &l, depth)?;
        let counts = b.depth_counts();
        for g in m.grades() {
            let c = counts.get(&g).copied().unwrap_or(0);
            t.check(&format!("{name}: |B_mu| = dim L_mu"), crate::report::block_label(&g), c == m.dim(&g));
        }
        t.check(&format!("{name}: no crystal vertex outside the module"), "all", counts.keys().all(|g| m.knows(g) && m.dim(g) > 0));
    }
    Ok(())
}

fn folding(t: &mut Tally) -> Result<()> {
    let cd = c2();
    let mut count = 0;
    for a in 0..=30 {
        for b in 0..=30 {
            let l = w(&[a, b]);
            if weyl_dim(&cd, &l)? > 500 {
                continue;
            }
            count += 1;
            let (q, bhat) = unfolded_crystal(&cd, &l, i64::MAX)?;
            let folded = fold_crystal(&bhat, q.a_vertex())?;
            let direct = build_crystal(&cd, &l, i64::MAX)?;
            t.check("fold(B_A3) ~ B_C2", format!("lambda=({a},{b})"), crystal_isomorphic(&folded, &direct).is_some());
        }
    }
    t.check("C2 weights with |B| <= 500 enumerated", "all", count > 0);
    let g = g2();
    let l = w(&[0, 1]);
    let (q, bhat) = unfolded_crystal(&g, &l, i64::MAX)?;
    let folded = fold_crystal(&bhat, q.a_vertex())?;
    t.check("D4 triality fold has 7 vertices", "G2 short", folded.len() == 7);
    let direct = build_crystal(&g, &l, i64::MAX)?;
    t.check("fold(B_D4) ~ B_G2", "G2 short", crystal_isomorphic(&folded, &direct).is_some());
    Ok(())
}

fn tensor_decomposition(t: &mut Tally) -> Result<()> {
    for (cd, l1, l2) in tensor_pairs() {
        let b = tensor_crystal(&build_crystal(&cd, &l1, 100)?, &build_crystal(&cd, &l2, 100)?)?;
        let m = tensor_module(&[build_module(&cd, &l1, 100)?, build_module(&cd, &l2, 100)?])?;
        let label = format!("{:?} x {:?}", l1.coords(), l2.coords());
        t.check("crystal and module decompositions agree", label, decompose_by_highest_weight(&b) == decompose_tensor_module(&m));
    }
    Ok(())
}

fn forms(t: &mut Tally) -> Result<()> {
    for (_, m) in suite_modules()? {
        t.report(&verify_contravariance(&m, &contravariant_form(&m)));
    }
    for (cd, l1, l2) in tensor_pairs() {
        let m = tensor_module(&[build_module(&cd, &l1, 100)?, build_module(&cd, &l2, 100)?])?;
        t.report(&verify_contravariance(&m, &tensor_form(&m)));
    }
    let cd = a1();
    for n in 0..=6 {
        let m = build_module(&cd, &w(&[n]), 100)?;
        let r = almost_orthogonality(&contravariant_form(&m), default_order(n))?;
        t.check("sl2 divided-power basis is almost orthogonal", format!("n={n}"), r.almost_orthogonal);
    }
    Ok(())
}

fn psi(t: &mut Tally) -> Result<()> {
    for (cd, l) in [(a1(), w(&[1])), (c2(), w(&[1, 0])), (c2(), w(&[0, 1]))] {
        let m = build_module(&cd, &l, 100)?;
        let tm = tensor_module(&[m.clone(), m])?;
        let theta = compute_theta(&tm, None)?;
        t.report(&verify_psi(&tm, &theta));
    }
    Ok(())
}

fn yang_baxter(t: &mut Tally) -> Result<()> {
    for (cd, l, dim) in [(a1(), w(&[1]), 8), (c2(), w(&[0, 1]), 64), (c2(), w(&[1, 0]), 125)] {
        let m = build_module(&cd, &l, 100)?;
        t.check("triple product dimension", format!("{:?}", l.coords()), m.total_dim().pow(3) == dim);
        t.report(&verify_yang_baxter(&m, &m, &m)?);
    }
    Ok(())
}

fn quiver_round_trip(t: &mut Tally) -> Result<()> {
    for a in 1..=4i64 {
        for b in 1..=4i64 {
            if a * b > 4 {
                continue;
            }
            let cd = cartan(&[&[2, -a], &[-b, 2]]);
            let q = fold_from_cartan(&cd);
            let ok = validate_admissible(&q).passed() && cartan_from_quiver(&q)? == cd;
            t.check("cartan_from_quiver(fold_from_cartan(C)) = C", format!("c12=-{a}, c21=-{b}"), ok);
        }
    }
    let swap = QuiverWithAut::from_omega(2, &[(0, 1)], vec![1, 0]);
    t.check("A2 with the swap is rejected", "A2", !validate_admissible(&swap).passed());
    Ok(())
}

fn b_infinity(t: &mut Tally) -> Result<()> {
    t.report(&stabilization_check(&c2(), &w(&[3, 3]), &w(&[4, 4]), 3)?);
    Ok(())
}

pub fn criteria() -> Vec<Criterion> {
    vec![
        Criterion { id: 1, title: "defining relations", run: relations },
        Criterion { id: 2, title: "divided powers", run: divided_powers },
        Criterion { id: 3, title: "E-F commutation", run: commutation },
        Criterion { id: 4, title: "characters against Freudenthal and Weyl", run: characters },
        Criterion { id: 5, title: "crystal and module weight counts", run: crystal_counts },
        Criterion { id: 6, title: "crystal folding", run: folding },
        Criterion { id: 7, title: "tensor decomposition", run: tensor_decomposition },
        Criterion { id: 8, title: "contravariant forms", run: forms },
        Criterion { id: 9, title: "Psi involution", run: psi },
        Criterion { id: 10, title: "Yang-Baxter", run: yang_baxter },
        Criterion { id: 11, title: "quiver round trip", run: quiver_round_trip },
        Criterion { id: 12, title: "B(infinity) window", run: b_infinity },
    ]
}
