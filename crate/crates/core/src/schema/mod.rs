//! Proof schemata: components, well-formedness and evaluation.

use std::collections::BTreeSet;

use thiserror::Error;

use crate::kernel::{CheckOptions, CheckReport, Checker, Failure, LinkEnv, LinkTarget, Mode, Proof};
use crate::rewrite::{RewriteError, Theory};
use crate::syntax::{Name, NumExpr, Sequent, Substitution, Term};

pub(crate) mod bridge;
mod eval;

pub use eval::{evaluate, evaluate_and_check, normalize_proof, Expansion, UnrollTrace};


#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SchemaComponent {
    pub name: Name,
    /// `S(n, x̄)`.
    pub pattern: Sequent,
    pub vars: Vec<Name>,
    /// `k`; absent for a component consisting of its base proof only.
    pub step_param: Option<NumExpr>,
    pub base: Proof,
    pub step: Option<Proof>,
}

impl SchemaComponent {
    pub fn target(&self, param: &Name) -> LinkTarget {
        LinkTarget { pattern: self.pattern.clone(), param: param.clone(), vars: self.vars.clone() }
    }

    /// `S(k, x̄)`.
    pub fn instance(&self, param: &Name, k: &NumExpr) -> Sequent {
        self.pattern.subst(&Substitution::param(param, k.clone()))
    }

    /// `S(k, t̄)`.
    pub fn instance_with(&self, param: &Name, k: &NumExpr, terms: &[Term]) -> Sequent {
        self.target(param).instance(k, terms)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProofSchema {
    pub param: Name,
    pub components: Vec<SchemaComponent>,
}

impl ProofSchema {
    pub fn env(&self) -> LinkEnv {
        let mut env = LinkEnv::default();
        for c in &self.components {
            env.insert(&c.name, c.target(&self.param));
        }
        env
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.components.iter().position(|c| &*c.name == name)
    }

    /// End-sequent pattern of the leading component.
    pub fn end_sequent(&self) -> Option<&Sequent> {
        self.components.first().map(|c| &c.pattern)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum EvalError {
    #[error(transparent)]
    Rewrite(#[from] RewriteError),
    #[error("{numeral} does not match the step parameter {step} of `{component}`")]
    MatchFailure { component: String, numeral: u64, step: String },
    #[error("unknown component `{0}`")]
    UnknownComponent(String),
    #[error("link to `{component}` with parameter {param} does not evaluate to a numeral")]
    NotANumeral { component: String, param: String },
    #[error("link expansion of `{0}` does not terminate")]
    Cycle(String),
    #[error("cannot align {from} with {to}")]
    Bridge { from: String, to: String },
    #[error("schema has no components")]
    Empty,
}

/// Reads a step parameter of shape `n + c` (or `s^c(n)`), `c ≥ 1`, returning `c`.
pub fn step_offset(k: &NumExpr, param: &str) -> Option<u64> {
    match k.linear_form(param) {
        Some((1, c)) if c >= 1 => Some(c),
        _ => None,
    }
}

fn fail(failures: &mut Vec<Failure>, path: String, message: String) {
    failures.push(Failure { path, rule: "Schema".into(), message });
}

/// Well-formedness of a proof schema: every component proof checks in LKS,
/// ends in the right instance of its pattern, and links respect the
/// ordering and decrease constraints.
pub fn check_schema(schema: &ProofSchema, theory: &Theory, opts: CheckOptions) -> CheckReport {
    let mut checker = Checker::new(theory, opts);
    let env = schema.env();
    let param = &schema.param;
    let mut failures = Vec::new();
    let mut report = CheckReport::new(Vec::new(), Default::default());
    if schema.components.is_empty() {
        fail(&mut failures, ".".into(), "schema has no components".into());
    }
    let mut seen = BTreeSet::new();
    for (i, c) in schema.components.iter().enumerate() {
        let at = |part: &str| format!("{}/{part}", c.name);
        if !seen.insert(c.name.clone()) {
            fail(&mut failures, at("."), format!("component name `{}` is used twice", c.name));
        }
        let extra: Vec<_> = c.pattern.free_params().into_iter().filter(|p| p != param).collect();
        if !extra.is_empty() {
            fail(
                &mut failures,
                at("pattern"),
                format!("pattern uses parameters other than {param}: {}", extra.join(", ")),
            );
        }
        let base_report = prefixed(checker.check(&c.base, Mode::LKS, &env, &BTreeSet::new()), &at("base"));
        report = report.merge(base_report);
        let expected = c.instance(param, &NumExpr::ZERO);
        if !c.base.conclusion.equiv(&expected) {
            fail(&mut failures, at("base"), format!("base proof ends in {} instead of {expected}", c.base.conclusion));
        }
        for l in c.base.links() {
            match schema.index_of(&l.proof) {
                Some(j) if j > i => {}
                Some(_) => fail(
                    &mut failures,
                    at("base"),
                    format!("base proof links to `{}`, which is not a later component", l.proof),
                ),
                None => {}
            }
        }
        let (Some(k), Some(step)) = (&c.step_param, &c.step) else {
            if c.step.is_some() != c.step_param.is_some() {
                fail(&mut failures, at("step"), "step proof and step parameter must be given together".into());
            } else if c.pattern.free_params().contains(param) {
                fail(&mut failures, at("pattern"), format!("component without step proof has {param} in its pattern"));
            }
            continue;
        };
        let Some(offset) = step_offset(k, param) else {
            fail(&mut failures, at("step"), format!("step parameter {k} is not of the form {param} + c with c >= 1"));
            continue;
        };
        let allowed = BTreeSet::from([param.clone()]);
        report = report.merge(prefixed(checker.check(step, Mode::LKS, &env, &allowed), &at("step")));
        let expected = c.instance(param, k);
        if !step.conclusion.equiv(&expected) {
            fail(&mut failures, at("step"), format!("step proof ends in {} instead of {expected}", step.conclusion));
        }
        for l in step.links() {
            match schema.index_of(&l.proof) {
                Some(j) if j == i => {
                    if !l.param.is_subterm(k) {
                        fail(
                            &mut failures,
                            at("step"),
                            format!("self-link parameter {} is not a subterm of {k}", l.param),
                        );
                        continue;
                    }
                    match l.param.linear_form(param) {
                        Some((0 | 1, c)) if c < offset => {}
                        _ => fail(
                            &mut failures,
                            at("step"),
                            format!("self-link parameter {} does not decrease below {k}", l.param),
                        ),
                    }
                }
                Some(j) if j > i => {}
                Some(_) => fail(
                    &mut failures,
                    at("step"),
                    format!("step proof links to `{}`, which is an earlier component", l.proof),
                ),
                None => {}
            }
        }
    }
    CheckReport::new([report.failures, failures].concat(), report.counts)
}

fn prefixed(mut r: CheckReport, prefix: &str) -> CheckReport {
    for f in &mut r.failures {
        f.path = format!("{prefix}:{}", f.path);
    }
    r
}
