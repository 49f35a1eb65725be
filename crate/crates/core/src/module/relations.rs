//! Exact checks of the quantum-group relations on a computed module.

use super::{Letter, WeightModule};
use crate::arith::{qbinom, qint, qint_rf, RatFunc};
use crate::linalg::Grade;
use crate::report::{block_label, Report};

fn v(d: u32, n: i64) -> RatFunc {
    RatFunc::v_pow(d, n)
}

/// Checks `Σ lhs = Σ rhs` on every computed weight space.
fn check_identity<M: WeightModule + ?Sized>(
    m: &M,
    report: &mut Report,
    name: &str,
    lhs: impl Fn(&Grade) -> Vec<(RatFunc, Vec<Letter>)>,
    rhs: impl Fn(&Grade) -> Vec<(RatFunc, Vec<Letter>)>,
) {
    for nu in m.grades() {
        let l = m.combination_block(&lhs(&nu), &nu);
        let r_terms = rhs(&nu);
        let r = if r_terms.is_empty() {
            l.as_ref().map(|(g, a)| (g.clone(), crate::linalg::Matrix::zeros(a.rows(), a.cols())))
        } else {
            m.combination_block(&r_terms, &nu)
        };
        match (l, r) {
            (Some((gl, a)), Some((gr, b))) if gl == gr => report.record(name, block_label(&nu), a == b),
            (Some(_), Some(_)) => report.record(name, block_label(&nu), false),
            _ => report.skip(),
        }
    }
}

fn one(word: Vec<Letter>) -> Vec<(RatFunc, Vec<Letter>)> {
    vec![(RatFunc::one(), word)]
}

/// Relations (a)–(f) and integrability of the highest-weight line.
pub fn verify_defining_relations<M: WeightModule + ?Sized>(m: &M) -> Report {
    let mut report = Report::new("defining relations", m.window());
    let n = m.rank();
    let d = m.denom();
    let cd = m.cartan().clone();
    for i in 0..n {
        check_identity(
            m,
            &mut report,
            &format!("(a) K{i} K-{i} = 1"),
            |_| one(vec![Letter::k(i), Letter::k_inv(i)]),
            |_| one(vec![]),
        );
        for j in 0..n {
            check_identity(
                m,
                &mut report,
                &format!("(a) K{i} K{j} = K{j} K{i}"),
                |_| one(vec![Letter::k(i), Letter::k(j)]),
                |_| one(vec![Letter::k(j), Letter::k(i)]),
            );
            let x = cd.s(i) as i64 * cd.entry(i, j);
            check_identity(
                m,
                &mut report,
                &format!("(b) K{i} E{j} K-{i} = v^{x} E{j}"),
                |_| one(vec![Letter::k(i), Letter::e(j), Letter::k_inv(i)]),
                |_| vec![(v(d, x), vec![Letter::e(j)])],
            );
            check_identity(
                m,
                &mut report,
                &format!("(c) K{i} F{j} K-{i} = v^-{x} F{j}"),
                |_| one(vec![Letter::k(i), Letter::f(j), Letter::k_inv(i)]),
                |_| vec![(v(d, -x), vec![Letter::f(j)])],
            );
            // (d): the right side is (K̃_i - K̃_-i)/(v_i - v_i^-1) taken literally
            let s = cd.s(i) as i64;
            check_identity(
                m,
                &mut report,
                &format!("(d) E{i} F{j} - F{j} E{i}"),
                |_| vec![(RatFunc::one(), vec![Letter::e(i), Letter::f(j)]), (-RatFunc::one(), vec![Letter::f(j), Letter::e(i)])],
                |_| {
                    if i != j {
                        return vec![];
                    }
                    let c = (v(d, s) - v(d, -s)).inv();
                    vec![(c.clone(), vec![Letter::k(i)]), (-c, vec![Letter::k_inv(i)])]
                },
            );
            if i == j {
                continue;
            }
            let top = (1 - cd.entry(i, j)) as u32;
            let serre = |e: bool| {
                (0..=top)
                    .map(|p| {
                        let q = top - p;
                        let sign = if p % 2 == 0 { RatFunc::one() } else { -RatFunc::one() };
                        let word = if e {
                            vec![Letter::e_div(i, p), Letter::e(j), Letter::e_div(i, q)]
                        } else {
                            vec![Letter::f_div(i, p), Letter::f(j), Letter::f_div(i, q)]
                        };
                        (sign, word.into_iter().filter(|l| l.power > 0).collect())
                    })
                    .collect::<Vec<_>>()
            };
            check_identity(m, &mut report, &format!("(e) Serre E{i},E{j}"), |_| serre(true), |_| vec![]);
            check_identity(m, &mut report, &format!("(f) Serre F{i},F{j}"), |_| serre(false), |_| vec![]);
        }
        // F_i^{(⟨i,λ⟩+1)} v_λ = 0
        let zero = vec![0; n];
        let top_pairing = m.top().coords()[i].max(0) as u32;
        if m.dim(&zero) > 0 {
            match m.word_block(&[Letter::f_div(i, top_pairing + 1)], &zero) {
                Some((_, b)) => report.record(format!("integrability F{i}^(<i,lambda>+1) v = 0"), block_label(&zero), b.is_zero()),
                None => report.skip(),
            }
        }
    }
    report
}

/// `E^{(n-1)}E = E E^{(n-1)} = [n]_i E^{(n)}` and the `F` counterpart.
pub fn verify_divided_power_relation<M: WeightModule + ?Sized>(m: &M, i: usize, n: u32) -> Report {
    let mut report = Report::new(format!("divided powers i={i} n={n}"), m.window());
    let qn = qint_rf(n as i64, m.cartan().s(i), m.denom());
    for (tag, prev, single, div) in [
        ("E", Letter::e_div(i, n - 1), Letter::e(i), Letter::e_div(i, n)),
        ("F", Letter::f_div(i, n - 1), Letter::f(i), Letter::f_div(i, n)),
    ] {
        let strip = |w: Vec<Letter>| w.into_iter().filter(|l| l.power > 0).collect::<Vec<_>>();
        check_identity(
            m,
            &mut report,
            &format!("{tag}{i}^({}) {tag}{i} = [{n}] {tag}{i}^({n})", n - 1),
            |_| one(strip(vec![prev, single])),
            |_| vec![(qn.clone(), vec![div])],
        );
        check_identity(
            m,
            &mut report,
            &format!("{tag}{i} {tag}{i}^({}) = [{n}] {tag}{i}^({n})", n - 1),
            |_| one(strip(vec![single, prev])),
            |_| vec![(qn.clone(), vec![div])],
        );
    }
    report
}

/// `Σ_{r<n} v^{s(n-1-2r)} = [n]_{v^s}`, the latter by exact Laurent division.
pub fn verify_divided_power_scalar(n: u32, s: u32) -> bool {
    let sum = (0..n as i64).fold(RatFunc::zero(), |acc, r| acc + RatFunc::v_pow(1, s as i64 * (n as i64 - 1 - 2 * r)));
    let binomial_ok = qbinom(n as i64, 1, s).ok().and_then(|b| b.to_ratfunc().ok()) == Some(sum.clone());
    qint(n as i64, s).to_ratfunc().ok() == Some(sum) && binomial_ok
}

/// `E_i^{(n)} F_i - F_i E_i^{(n)} = [n + ⟨i, μ⟩ - 1]_i E_i^{(n-1)}` on the
/// space of weight `μ`, and `E_i^{(n)} F_j = F_j E_i^{(n)}` for `j ≠ i`.
pub fn verify_ef_commutation<M: WeightModule + ?Sized>(m: &M, i: usize, n: u32) -> Report {
    let mut report = Report::new(format!("E-F commutation i={i} n={n}"), m.window());
    let s = m.cartan().s(i);
    let d = m.denom();
    let lower = if n > 1 { vec![Letter::e_div(i, n - 1)] } else { vec![] };
    check_identity(
        m,
        &mut report,
        &format!("E{i}^({n}) F{i} - F{i} E{i}^({n}) = [m] E{i}^({})", n - 1),
        |_| vec![(RatFunc::one(), vec![Letter::e_div(i, n), Letter::f(i)]), (-RatFunc::one(), vec![Letter::f(i), Letter::e_div(i, n)])],
        |nu| {
            let mm = n as i64 + m.weight_of(nu).coords()[i] - 1;
            vec![(qint_rf(mm, s, d), lower.clone())]
        },
    );
    for j in (0..m.rank()).filter(|&j| j != i) {
        check_identity(
            m,
            &mut report,
            &format!("E{i}^({n}) F{j} = F{j} E{i}^({n})"),
            |_| one(vec![Letter::e_div(i, n), Letter::f(j)]),
            |_| one(vec![Letter::f(j), Letter::e_div(i, n)]),
        );
    }
    report
}

/// Generator matrices commute with the bar involution: in a basis of
/// bar-invariant vectors every entry of `E_i` and `F_i` is bar-invariant.
pub fn verify_bar_compatibility<M: WeightModule + ?Sized>(m: &M) -> Report {
    let mut report = Report::new("bar compatibility", m.window());
    for i in 0..m.rank() {
        for (tag, op) in [("E", m.e_op(i)), ("F", m.f_op(i))] {
            for (g, b) in op.blocks() {
                report.record(format!("bar({tag}{i}) = {tag}{i}"), block_label(g), &b.bar() == b);
            }
        }
    }
    report
}
