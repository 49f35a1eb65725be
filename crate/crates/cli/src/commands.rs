use crate::dot::{crystal_dot, quiver_dot};
use qfold::acceptance::{criteria, Failure};
use qfold::cartan::{CartanData, Weight};
use qfold::crystal::{
    build_crystal, crystal_isomorphic, decompose_by_highest_weight, fold_crystal, tensor_crystal, unfolded_crystal,
    verify_crystal_axioms, CrystalGraph,
};
use qfold::forms::{almost_orthogonality, contravariant_form, default_order, tensor_form, verify_contravariance, verify_cyclic_form};
use qfold::module::{
    build_module, verify_bar_compatibility, verify_defining_relations, verify_divided_power_relation, verify_ef_commutation,
    HWModule, WeightModule,
};
use qfold::oracle::{freudenthal_at_depth, height};
use qfold::quiver::{cartan_from_quiver, fold_from_cartan, validate_admissible, LAYOUT_TAG};
use qfold::report::{block_label, Report, COPRODUCT_TAG, MONOMIAL_SIGN_TAG};
use qfold::rmatrix::{braiding, compute_theta, verify_braiding, verify_psi, verify_yang_baxter};
use qfold::tensor::{decompose_tensor_module, tensor_module};
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};
use std::collections::BTreeMap;

pub const COMMANDS: &[&str] = &["fold", "module", "crystal", "fold-crystal", "tensor", "theta", "ybe", "forms", "all"];

#[derive(Debug, Serialize)]
pub struct Tags {
    pub coproduct: &'static str,
    pub monomial_sign: &'static str,
    pub layout: &'static str,
}

pub const TAGS: Tags = Tags { coproduct: COPRODUCT_TAG, monomial_sign: MONOMIAL_SIGN_TAG, layout: LAYOUT_TAG };

#[derive(Debug, Serialize)]
pub struct ReportSummary {
    pub name: String,
    pub window: Option<i64>,
    pub passed: bool,
    pub checks: usize,
    pub skipped: usize,
}

#[derive(Debug, Serialize)]
pub struct JobReport {
    pub command: String,
    pub tags: Tags,
    pub passed: bool,
    pub checks: usize,
    pub first_failure: Option<Failure>,
    pub reports: Vec<ReportSummary>,
    pub data: Value,
}

/// Inputs every command may draw on.
pub struct Job {
    pub cartan: Option<CartanData>,
    pub weights: Vec<Weight>,
    pub depth: i64,
}

#[derive(Default)]
pub struct Outcome {
    reports: Vec<ReportSummary>,
    checks: usize,
    failure: Option<Failure>,
    pub data: Value,
    /// `(file name, contents)` to write next to the report.
    pub artifacts: Vec<(String, String)>,
}

impl Outcome {
    fn report(&mut self, r: &Report) {
        self.checks += r.count();
        if self.failure.is_none() {
            if let Some(c) = r.first_failure() {
                self.failure = Some(Failure { report: r.name.clone(), identity: c.identity.clone(), block: c.block.clone() });
            }
        }
        self.reports.push(ReportSummary { name: r.name.clone(), window: r.window, passed: r.passed(), checks: r.count(), skipped: r.skipped });
    }

    fn check(&mut self, what: &str, block: impl Into<String>, ok: bool) {
        self.checks += 1;
        if !ok && self.failure.is_none() {
            self.failure = Some(Failure { report: "job".into(), identity: what.into(), block: block.into() });
        }
    }

    pub fn into_report(self, command: &str) -> JobReport {
        JobReport {
            command: command.to_string(),
            tags: TAGS,
            passed: self.failure.is_none(),
            checks: self.checks,
            first_failure: self.failure,
            reports: self.reports,
            data: self.data,
        }
    }

    /// A run aborted by a library error, reported as a failed check.
    pub fn from_error(e: &qfold::Error) -> Self {
        let mut out = Self::default();
        out.check(&format!("computation failed: {e}"), "-", false);
        out
    }
}

#[derive(Debug)]
pub enum JobError {
    /// Bad or missing inputs; exit code 2.
    Config(String),
    /// The computation itself failed; exit code 1.
    Compute(qfold::Error),
}

impl From<qfold::Error> for JobError {
    fn from(e: qfold::Error) -> Self {
        match e {
            qfold::Error::NotDominant(_) | qfold::Error::DimensionMismatch { .. } => JobError::Config(e.to_string()),
            e => JobError::Compute(e),
        }
    }
}

type JobResult = Result<Outcome, JobError>;

impl Job {
    fn cartan(&self) -> Result<&CartanData, JobError> {
        self.cartan.as_ref().ok_or_else(|| JobError::Config("missing cartan block".into()))
    }

    /// `k` weights, cycling through the configured ones.
    fn weights(&self, k: usize) -> Result<Vec<Weight>, JobError> {
        if self.weights.is_empty() {
            return Err(JobError::Config("no weights given".into()));
        }
        Ok((0..k).map(|j| self.weights[j % self.weights.len()].clone()).collect())
    }

    fn module(&self, l: &Weight) -> Result<HWModule, JobError> {
        Ok(build_module(self.cartan()?, l, self.depth)?)
    }
}

fn weight_map(m: &BTreeMap<Weight, usize>) -> Value {
    Value::Array(m.iter().map(|(w, k)| json!({ "weight": w.coords(), "multiplicity": k })).collect())
}

pub fn run(command: &str, job: &Job) -> JobResult {
    match command {
        "fold" => fold(job),
        "module" => module(job),
        "crystal" => crystal(job),
        "fold-crystal" => fold_crystal_cmd(job),
        "tensor" => tensor(job),
        "theta" => theta(job),
        "ybe" => ybe(job),
        "forms" => forms(job),
        "all" => all(),
        other => Err(JobError::Config(format!("unknown command {other:?}; expected one of {}", COMMANDS.join(", ")))),
    }
}

fn fold(job: &Job) -> JobResult {
    let cd = job.cartan()?;
    let q = fold_from_cartan(cd);
    let mut out = Outcome::default();
    let adm = validate_admissible(&q);
    for c in &adm.clauses {
        out.check(&format!("admissibility: {}", c.name), "quiver", c.passed);
    }
    let back = cartan_from_quiver(&q);
    let round_trip = back.as_ref().is_ok_and(|c| c == cd);
    out.check("cartan_from_quiver(fold_from_cartan(C)) = C", "quiver", round_trip);
    let omega: Vec<[usize; 2]> = q.omega().map(|h| [h.source, h.target]).collect();
    out.data = json!({
        "vertices": q.vertex_count(),
        "orbits": q.orbits(),
        "omega": omega,
        "clauses": adm.clauses,
        "round_trip": if round_trip { "pass" } else { "fail" },
    });
    out.artifacts.push(("quiver.dot".into(), quiver_dot(&q)));
    Ok(out)
}

fn module(job: &Job) -> JobResult {
    let cd = job.cartan()?;
    let l = &job.weights(1)?[0];
    let m = job.module(l)?;
    let mut out = Outcome::default();
    let mut reports = vec![verify_defining_relations(&m), verify_bar_compatibility(&m)];
    let per_index: Vec<Report> = (0..m.rank())
        .into_par_iter()
        .flat_map_iter(|i| (1..=3).flat_map(move |n| [(i, n, true), (i, n, false)]))
        .map(|(i, n, dp)| if dp { verify_divided_power_relation(&m, i, n) } else { verify_ef_commutation(&m, i, n) })
        .collect();
    reports.extend(per_index);
    for r in &reports {
        out.report(r);
    }
    let mut character = Vec::new();
    for g in m.grades() {
        let oracle = freudenthal_at_depth(cd, l, &g, height(&g))?;
        out.check("dim L_mu = Freudenthal multiplicity", block_label(&g), oracle == m.dim(&g) as u64);
        character.push(json!({ "nu": g, "weight": m.weight_of(&g).coords(), "dim": m.dim(&g) }));
    }
    out.data = json!({
        "lambda": l.coords(),
        "dimension": m.total_dim(),
        "complete": m.is_complete(),
        "window": m.window(),
        "character": character,
    });
    Ok(out)
}

fn crystal_product(job: &Job, weights: &[Weight]) -> Result<CrystalGraph, JobError> {
    let cd = job.cartan()?;
    let mut b = build_crystal(cd, &weights[0], job.depth)?;
    for l in &weights[1..] {
        b = tensor_crystal(&b, &build_crystal(cd, l, job.depth)?)?;
    }
    Ok(b)
}

fn crystal(job: &Job) -> JobResult {
    let b = crystal_product(job, &job.weights)?;
    let mut out = Outcome::default();
    out.report(&verify_crystal_axioms(&b));
    let highest: Vec<&[i64]> = b.highest().iter().map(|&h| b.vertex(h).wt.coords()).collect();
    out.data = json!({
        "factors": job.weights.iter().map(Weight::coords).collect::<Vec<_>>(),
        "size": b.len(),
        "window": b.window(),
        "highest": highest,
        "decomposition": weight_map(&decompose_by_highest_weight(&b)),
    });
    out.artifacts.push(("crystal.dot".into(), crystal_dot(&b)));
    Ok(out)
}

fn fold_crystal_cmd(job: &Job) -> JobResult {
    let cd = job.cartan()?;
    let l = &job.weights(1)?[0];
    let (q, bhat) = unfolded_crystal(cd, l, job.depth)?;
    let folded = fold_crystal(&bhat, q.a_vertex())?;
    let direct = build_crystal(cd, l, job.depth)?;
    let mut out = Outcome::default();
    out.report(&verify_crystal_axioms(&folded));
    let iso = crystal_isomorphic(&folded, &direct).is_some();
    out.check("fold(B(lambda hat)) isomorphic to B(lambda)", format!("lambda={:?}", l.coords()), iso);
    out.data = json!({
        "lambda": l.coords(),
        "unfolded_rank": q.vertex_count(),
        "unfolded_size": bhat.len(),
        "folded_size": folded.len(),
        "direct_size": direct.len(),
        "isomorphic": iso,
    });
    out.artifacts.push(("folded.dot".into(), crystal_dot(&folded)));
    Ok(out)
}

fn tensor(job: &Job) -> JobResult {
    let ws = job.weights(2)?;
    let t = tensor_module(&[job.module(&ws[0])?, job.module(&ws[1])?])?;
    let mut out = Outcome::default();
    out.report(&verify_defining_relations(&t));
    out.report(&verify_contravariance(&t, &tensor_form(&t)));
    let from_module = decompose_tensor_module(&t);
    let b = crystal_product(job, &ws)?;
    let from_crystal = decompose_by_highest_weight(&b);
    out.check("crystal and module decompositions agree", "all", from_module == from_crystal);
    out.data = json!({
        "factors": ws.iter().map(Weight::coords).collect::<Vec<_>>(),
        "dimension": t.total_dim(),
        "module_decomposition": weight_map(&from_module),
        "crystal_decomposition": weight_map(&from_crystal),
    });
    Ok(out)
}

fn theta(job: &Job) -> JobResult {
    let ws = job.weights(2)?;
    let (m1, m2) = (job.module(&ws[0])?, job.module(&ws[1])?);
    let t = tensor_module(&[m1.clone(), m2.clone()])?;
    let th = compute_theta(&t, Some(job.depth))?;
    let mut out = Outcome::default();
    out.report(&verify_psi(&t, &th));
    let top_scalar = match braiding(&m1, &m2) {
        Ok(b) => {
            out.report(&verify_braiding(&b));
            Value::String(b.top_scalar.to_string())
        }
        Err(qfold::Error::SingularCartan) => Value::String("undefined: singular Cartan matrix".into()),
        Err(e) => return Err(e.into()),
    };
    let mut degrees = Vec::new();
    for (nu, part) in &th.parts {
        let mut entries = Vec::new();
        for (g, blk) in part.blocks() {
            for r in 0..blk.rows() {
                for c in 0..blk.cols() {
                    let x = blk.get(r, c);
                    if !x.is_zero() {
                        entries.push(json!({ "grade": g, "row": r, "col": c, "value": x.to_string() }));
                    }
                }
            }
        }
        degrees.push(json!({ "nu": nu, "entries": entries }));
    }
    out.data = json!({
        "factors": ws.iter().map(Weight::coords).collect::<Vec<_>>(),
        "dimension": t.total_dim(),
        "theta": degrees,
        "top_scalar": top_scalar,
    });
    Ok(out)
}

fn ybe(job: &Job) -> JobResult {
    let ws = job.weights(3)?;
    let ms = ws.iter().map(|l| job.module(l)).collect::<Result<Vec<_>, _>>()?;
    let mut out = Outcome::default();
    let r = verify_yang_baxter(&ms[0], &ms[1], &ms[2])?;
    out.report(&r);
    out.data = json!({
        "factors": ws.iter().map(Weight::coords).collect::<Vec<_>>(),
        "dimension": ms.iter().map(|m| m.total_dim()).product::<usize>(),
        "verdict": if r.passed() { "pass" } else { "fail" },
    });
    Ok(out)
}

fn forms(job: &Job) -> JobResult {
    let l = &job.weights(1)?[0];
    let m = job.module(l)?;
    let g = contravariant_form(&m);
    let mut out = Outcome::default();
    out.report(&verify_contravariance(&m, &g));
    let top = m.grades().iter().map(|nu| height(nu)).max().unwrap_or(0);
    out.report(&verify_cyclic_form(&m, &g, top.min(6)));
    let order = default_order(top);
    let orth = almost_orthogonality(&g, order).map_err(JobError::Compute)?;
    let gram: Vec<Value> = g
        .blocks()
        .map(|(nu, b)| {
            let rows: Vec<Vec<String>> = (0..b.rows()).map(|r| b.row(r).iter().map(ToString::to_string).collect()).collect();
            json!({ "nu": nu, "rows": rows })
        })
        .collect();
    out.data = json!({
        "lambda": l.coords(),
        "gram": gram,
        "order": order,
        "almost_orthogonal": orth.almost_orthogonal,
        "pairs": orth.pairs,
    });
    Ok(out)
}

fn all() -> JobResult {
    let results: Vec<_> = criteria().into_par_iter().map(|c| c.run()).collect();
    let mut out = Outcome::default();
    for o in &results {
        out.checks += o.checks;
        if out.failure.is_none() {
            out.failure = o.first_failure.clone();
        }
    }
    out.data = json!({ "criteria": results });
    Ok(out)
}
