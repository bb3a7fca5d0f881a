//! Proof trees for LK, LKE and LKS and the rule-by-rule checker.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::syntax::{Expr, Formula, Name, NumExpr, Path, Pos, Sequent, Substitution, Term};

mod check;
mod infer;

pub use check::{check_proof, CheckOptions, Checker};
pub use infer::infer;

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize, Deserialize)]
pub enum RuleName {
    Ax,
    Cut,
    AndL,
    AndR,
    OrL,
    OrR,
    NegL,
    NegR,
    ImpL,
    ImpR,
    ContrL,
    ContrR,
    WeakL,
    WeakR,
    ForallL,
    ForallR,
    ExistsL,
    ExistsR,
    ERule,
    Link,
}

impl RuleName {
    pub const ALL: [RuleName; 20] = [
        RuleName::Ax,
        RuleName::Cut,
        RuleName::AndL,
        RuleName::AndR,
        RuleName::OrL,
        RuleName::OrR,
        RuleName::NegL,
        RuleName::NegR,
        RuleName::ImpL,
        RuleName::ImpR,
        RuleName::ContrL,
        RuleName::ContrR,
        RuleName::WeakL,
        RuleName::WeakR,
        RuleName::ForallL,
        RuleName::ForallR,
        RuleName::ExistsL,
        RuleName::ExistsR,
        RuleName::ERule,
        RuleName::Link,
    ];

    pub fn arity(self) -> usize {
        match self {
            RuleName::Ax | RuleName::Link => 0,
            RuleName::Cut | RuleName::AndR | RuleName::OrL | RuleName::ImpL => 2,
            _ => 1,
        }
    }

    /// Number of auxiliary positions the rule data must name.
    pub fn aux_count(self) -> usize {
        match self {
            RuleName::Ax | RuleName::Link | RuleName::WeakL | RuleName::WeakR => 0,
            RuleName::NegL | RuleName::NegR | RuleName::ForallL | RuleName::ForallR => 1,
            RuleName::ExistsL | RuleName::ExistsR | RuleName::ERule => 1,
            _ => 2,
        }
    }

    pub fn is_leaf(self) -> bool {
        self.arity() == 0
    }

    pub fn as_str(self) -> &'static str {
        match self {
            RuleName::Ax => "Ax",
            RuleName::Cut => "Cut",
            RuleName::AndL => "AndL",
            RuleName::AndR => "AndR",
            RuleName::OrL => "OrL",
            RuleName::OrR => "OrR",
            RuleName::NegL => "NegL",
            RuleName::NegR => "NegR",
            RuleName::ImpL => "ImpL",
            RuleName::ImpR => "ImpR",
            RuleName::ContrL => "ContrL",
            RuleName::ContrR => "ContrR",
            RuleName::WeakL => "WeakL",
            RuleName::WeakR => "WeakR",
            RuleName::ForallL => "ForallL",
            RuleName::ForallR => "ForallR",
            RuleName::ExistsL => "ExistsL",
            RuleName::ExistsR => "ExistsR",
            RuleName::ERule => "ERule",
            RuleName::Link => "Link",
        }
    }
}

impl RuleName {
    /// Sequent-calculus label such as `w:l` or `forall:r`.
    pub fn short(self) -> &'static str {
        match self {
            RuleName::Ax => "ax",
            RuleName::Cut => "cut",
            RuleName::AndL => "and:l",
            RuleName::AndR => "and:r",
            RuleName::OrL => "or:l",
            RuleName::OrR => "or:r",
            RuleName::NegL => "neg:l",
            RuleName::NegR => "neg:r",
            RuleName::ImpL => "imp:l",
            RuleName::ImpR => "imp:r",
            RuleName::ContrL => "c:l",
            RuleName::ContrR => "c:r",
            RuleName::WeakL => "w:l",
            RuleName::WeakR => "w:r",
            RuleName::ForallL => "forall:l",
            RuleName::ForallR => "forall:r",
            RuleName::ExistsL => "exists:l",
            RuleName::ExistsR => "exists:r",
            RuleName::ERule => "E",
            RuleName::Link => "link",
        }
    }
}

impl fmt::Display for RuleName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for RuleName {
    type Err = String;

    fn from_str(s: &str) -> Result<RuleName, String> {
        RuleName::ALL
            .iter()
            .copied()
            .find(|r| r.as_str().eq_ignore_ascii_case(s) || r.short().eq_ignore_ascii_case(s))
            .ok_or_else(|| format!("unknown rule `{s}`"))
    }
}

/// Calculus in which a proof is checked. The order is inclusion of rule sets.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug, Serialize, Deserialize)]
pub enum Mode {
    LK,
    LKE,
    LKS,
}

impl FromStr for Mode {
    type Err = String;

    fn from_str(s: &str) -> Result<Mode, String> {
        match s.to_ascii_uppercase().as_str() {
            "LK" => Ok(Mode::LK),
            "LKE" => Ok(Mode::LKE),
            "LKS" => Ok(Mode::LKS),
            _ => Err(format!("unknown mode `{s}` (expected LK, LKE or LKS)")),
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// A link leaf `(psi, k, t̄)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinkData {
    pub proof: Name,
    pub param: NumExpr,
    pub terms: Vec<Term>,
}

/// Instantiation witness of one inference. Positions in `aux` index the
/// premises: for binary rules the first one refers to the left premise and
/// the second to the right premise.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RuleData {
    pub aux: Vec<Pos>,
    /// Weakening formula, or the quantified principal formula.
    pub formula: Option<Formula>,
    pub term: Option<Term>,
    pub eigen: Option<Name>,
    /// Redex position inside the auxiliary formula of an ℰ inference.
    pub path: Option<Path>,
    pub to: Option<Expr>,
    pub link: Option<LinkData>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Proof {
    pub conclusion: Sequent,
    pub rule: RuleName,
    pub premises: Vec<Proof>,
    pub data: RuleData,
}

impl Proof {
    pub fn axiom(a: Formula) -> Proof {
        Proof { conclusion: Sequent::axiom(a), rule: RuleName::Ax, premises: Vec::new(), data: RuleData::default() }
    }

    pub fn link(conclusion: Sequent, link: LinkData) -> Proof {
        Proof {
            conclusion,
            rule: RuleName::Link,
            premises: Vec::new(),
            data: RuleData { link: Some(link), ..RuleData::default() },
        }
    }

    pub fn node(rule: RuleName, conclusion: Sequent, premises: Vec<Proof>, data: RuleData) -> Proof {
        Proof { conclusion, rule, premises, data }
    }

    /// Visits every node in pre-order.
    pub fn walk<'a>(&'a self, f: &mut impl FnMut(&'a Proof)) {
        let mut stack = vec![self];
        while let Some(p) = stack.pop() {
            f(p);
            stack.extend(p.premises.iter().rev());
        }
    }

    pub fn links(&self) -> Vec<&LinkData> {
        let mut out = Vec::new();
        self.walk(&mut |p| {
            if let (RuleName::Link, Some(l)) = (p.rule, &p.data.link) {
                out.push(l);
            }
        });
        out
    }

    pub fn size(&self) -> usize {
        let mut n = 0;
        self.walk(&mut |_| n += 1);
        n
    }

    /// Applies `s` to every sequent and every piece of rule data.
    pub fn subst(&self, s: &Substitution) -> Proof {
        Proof {
            conclusion: self.conclusion.subst(s),
            rule: self.rule,
            premises: self.premises.iter().map(|p| p.subst(s)).collect(),
            data: RuleData {
                aux: self.data.aux.clone(),
                formula: self.data.formula.as_ref().map(|f| f.subst(s)),
                term: self.data.term.as_ref().map(|t| t.subst(s)),
                eigen: self.data.eigen.clone(),
                path: self.data.path.clone(),
                to: self.data.to.as_ref().map(|e| e.subst(s)),
                link: self.data.link.as_ref().map(|l| LinkData {
                    proof: l.proof.clone(),
                    param: l.param.subst(s),
                    terms: l.terms.iter().map(|t| t.subst(s)).collect(),
                }),
            },
        }
    }
}

/// Inference counts by rule, excluding axioms and links. Every inference
/// rule appears as a key.
pub fn count_inferences(p: &Proof) -> BTreeMap<RuleName, u64> {
    let mut counts: BTreeMap<RuleName, u64> = RuleName::ALL.iter().filter(|r| !r.is_leaf()).map(|r| (*r, 0)).collect();
    p.walk(&mut |node| {
        if !node.rule.is_leaf() {
            *counts.entry(node.rule).or_default() += 1;
        }
    });
    counts
}

pub fn total_inferences(p: &Proof) -> u64 {
    count_inferences(p).values().sum()
}

/// End-sequent pattern of a proof symbol, `S(n, x̄)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinkTarget {
    pub pattern: Sequent,
    pub param: Name,
    pub vars: Vec<Name>,
}

impl LinkTarget {
    /// `S(k, t̄)`.
    pub fn instance(&self, k: &NumExpr, terms: &[Term]) -> Sequent {
        let s = Substitution::vars(&self.vars, terms).with_param(&self.param, k.clone());
        self.pattern.subst(&s)
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LinkEnv {
    pub targets: BTreeMap<Name, LinkTarget>,
}

impl LinkEnv {
    pub fn insert(&mut self, name: &str, target: LinkTarget) {
        self.targets.insert(name.into(), target);
    }

    pub fn get(&self, name: &str) -> Option<&LinkTarget> {
        self.targets.get(name)
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Accepted,
    Rejected,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Failure {
    pub path: String,
    pub rule: String,
    pub message: String,
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "at {} ({}): {}", self.path, self.rule, self.message)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckReport {
    pub status: Status,
    pub failures: Vec<Failure>,
    pub counts: BTreeMap<String, u64>,
}

impl CheckReport {
    pub fn new(failures: Vec<Failure>, counts: BTreeMap<String, u64>) -> CheckReport {
        let status = if failures.is_empty() { Status::Accepted } else { Status::Rejected };
        CheckReport { status, failures, counts }
    }

    pub fn accepted(&self) -> bool {
        self.status == Status::Accepted
    }

    /// Combines reports; the result is accepted only if both are.
    pub fn merge(mut self, other: CheckReport) -> CheckReport {
        self.failures.extend(other.failures);
        for (k, v) in other.counts {
            *self.counts.entry(k).or_default() += v;
        }
        CheckReport::new(self.failures, self.counts)
    }
}

pub(crate) fn counts_by_name(p: &Proof) -> BTreeMap<String, u64> {
    count_inferences(p).into_iter().map(|(k, v)| (k.to_string(), v)).collect()
}

#[cfg(test)]
pub(crate) fn names(set: &[&str]) -> std::collections::BTreeSet<Name> {
    set.iter().map(|s| Name::from(*s)).collect()
}

#[cfg(test)]
mod tests;
