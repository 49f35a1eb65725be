//! Verification reports shared by the module, form, tensor and crystal code.

use serde::Serialize;

/// The coproduct used for every tensor-product action.
pub const COPRODUCT_TAG: &str = "D(E_i)=E_i(x)1+K_i(x)E_i; D(F_i)=F_i(x)K_-i+1(x)F_i";

/// Monomial-crystal sign convention: `A_i(n)` uses `Y_j(n + c'_ji)` with
/// `c'_ij = 1` iff `o(i) > o(j)`, where `o` is the node index, or the orbit
/// index on an unfolded datum.
pub const MONOMIAL_SIGN_TAG: &str = "A_i(n)=Y_i(n)Y_i(n+1)prod_j Y_j(n+c'_ji)^c_ji, c'_ij=[o(i)>o(j)], o=node or orbit index";

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Check {
    pub identity: String,
    pub block: String,
    pub passed: bool,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct Report {
    pub name: String,
    /// Depth window the checks were restricted to (`None` for complete modules).
    pub window: Option<i64>,
    pub checks: Vec<Check>,
    /// Identities skipped because an intermediate weight left the window.
    pub skipped: usize,
}

impl Report {
    pub fn new(name: impl Into<String>, window: Option<i64>) -> Self {
        Self {
            name: name.into(),
            window,
            ..Self::default()
        }
    }

    pub fn record(&mut self, identity: impl Into<String>, block: impl Into<String>, passed: bool) {
        self.checks.push(Check {
            identity: identity.into(),
            block: block.into(),
            passed,
        });
    }

    pub fn skip(&mut self) {
        self.skipped += 1;
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn first_failure(&self) -> Option<&Check> {
        self.checks.iter().find(|c| !c.passed)
    }

    pub fn count(&self) -> usize {
        self.checks.len()
    }

    pub fn absorb(&mut self, other: Report) {
        self.checks.extend(other.checks);
        self.skipped += other.skipped;
    }
}

pub fn block_label(nu: &[i64]) -> String {
    let parts: Vec<String> = nu.iter().map(i64::to_string).collect();
    format!("nu=({})", parts.join(","))
}
