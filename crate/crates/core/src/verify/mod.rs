//! Named batteries of exact checks. Each suite evaluates a family of
//! residuals on basis tensors and reports every instance it looked at.

mod algebra;
mod basis;

pub use algebra::{arrow_relations, scaling_samples};
pub use basis::{cochain_basis, form_basis, form_words, one_form_words};

use crate::interval_morphisms::Corruption;
use serde::Serialize;
use serde_json::Value;
use std::fmt::Display;
use thiserror::Error;

/// One evaluated residual.
#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub relation: String,
    pub arity: usize,
    pub basis_tensor: Vec<String>,
    pub residual: Value,
    pub passed: bool,
}

impl Check {
    pub fn new<S: Display>(
        relation: impl Into<String>,
        args: &[S],
        passed: bool,
        residual: Value,
    ) -> Self {
        Check {
            relation: relation.into(),
            arity: args.len(),
            basis_tensor: args.iter().map(ToString::to_string).collect(),
            residual,
            passed,
        }
    }

    /// A check whose residual is a serializable vector that must vanish.
    pub fn vanishing<S: Display, T: Serialize + crate::ainfty_framework::GradedVector>(
        relation: impl Into<String>,
        args: &[S],
        residual: &T,
    ) -> Self {
        let json = serde_json::to_value(residual).unwrap_or(Value::Null);
        Check::new(relation, args, residual.is_zero(), json)
    }

    /// Compares two values that must coincide.
    pub fn equal<S: Display, T: PartialEq + Display>(
        relation: impl Into<String>,
        args: &[S],
        left: &T,
        right: &T,
    ) -> Self {
        let passed = left == right;
        let residual = if passed {
            Value::from(0)
        } else {
            serde_json::json!({ "left": left.to_string(), "right": right.to_string() })
        };
        Check::new(relation, args, passed, residual)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub passed: bool,
    pub checks: Vec<Check>,
}

impl SuiteReport {
    pub fn new(suite: impl Into<String>, checks: Vec<Check>) -> Self {
        SuiteReport {
            suite: suite.into(),
            passed: checks.iter().all(|c| c.passed),
            checks,
        }
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }

    /// Number of checks per relation name, with failure counts.
    pub fn tally(&self) -> Vec<(String, usize, usize)> {
        let mut out: Vec<(String, usize, usize)> = Vec::new();
        for c in &self.checks {
            match out.iter_mut().find(|(r, _, _)| *r == c.relation) {
                Some(entry) => {
                    entry.1 += 1;
                    entry.2 += usize::from(!c.passed);
                }
                None => out.push((c.relation.clone(), 1, usize::from(!c.passed))),
            }
        }
        out
    }
}

/// Sizes and switches shared by all suites.
#[derive(Clone, Debug)]
pub struct VerifyConfig {
    /// Truncation order `N`.
    pub order: usize,
    /// Polynomial degree cap `D` for single forms.
    pub poly_degree: usize,
    /// Nilpotency degree of the coefficient algebras.
    pub lie_degree: usize,
    /// Highest arity at which morphism relations are checked.
    pub relation_arity: usize,
    /// Cap on the total polynomial degree of a basis tensor of forms.
    pub form_degree: usize,
    pub seed: u64,
    pub corruption: Option<Corruption>,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            order: 6,
            poly_degree: 12,
            lie_degree: 4,
            relation_arity: 5,
            form_degree: 8,
            seed: 2024,
            corruption: None,
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("unknown suite {name:?}; expected one of: {}", SUITES.join(", "), name = .0)]
pub struct UnknownSuite(pub String);

pub const SUITES: [&str; 11] = [
    "idempotents",
    "contraction",
    "structures",
    "morphism-relations",
    "diagram-identities",
    "phi-routes",
    "transfer-equality",
    "uniqueness",
    "magnus",
    "bch",
    "ode",
];

pub fn run_suite(name: &str, cfg: &VerifyConfig) -> Result<SuiteReport, UnknownSuite> {
    let checks = match name {
        "idempotents" => algebra::idempotents(cfg),
        "contraction" => algebra::contraction(cfg),
        "structures" => algebra::structures(cfg),
        "morphism-relations" => algebra::morphism_relations(cfg),
        "diagram-identities" => algebra::diagram_identities(cfg),
        "phi-routes" => algebra::phi_routes(cfg),
        "transfer-equality" => algebra::transfer_equality(cfg),
        "uniqueness" => algebra::uniqueness(cfg),
        "magnus" => crate::lie_extension::suites::magnus(cfg),
        "bch" => crate::lie_extension::suites::bch(cfg),
        "ode" => crate::lie_extension::suites::ode(cfg),
        _ => return Err(UnknownSuite(name.to_string())),
    };
    Ok(SuiteReport::new(name, checks))
}
