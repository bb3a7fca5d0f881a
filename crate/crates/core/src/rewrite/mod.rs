//! Equational theories: admissibility checks, fuel-bounded leftmost-innermost
//! normalization and equivalence under the theory.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use thiserror::Error;

use crate::syntax::{Arg, Expr, Formula, Name, NumExpr, Signature, Term};

mod matching;
mod normalize;

pub use normalize::{Normalized, Normalizer};

pub const DEFAULT_FUEL: u64 = 100_000;
pub const STRATEGY: &str = "leftmost-innermost";

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RewriteRule {
    pub lhs: Expr,
    pub rhs: Expr,
}

impl RewriteRule {
    /// Head symbol of the left-hand side, if it is an application.
    pub fn head(&self) -> Option<&Name> {
        match &self.lhs {
            Expr::Num(NumExpr::App(f, _)) | Expr::Term(Term::App(f, _)) | Expr::Formula(Formula::Atom(f, _)) => Some(f),
            _ => None,
        }
    }

    fn pattern_vars(e: &Expr) -> BTreeSet<Name> {
        let mut out = e.free_params();
        if let Expr::Term(t) = e {
            t.collect_vars(&mut out);
        }
        if let Expr::Formula(f) = e {
            f.collect_vars(&mut out);
        }
        out
    }
}

impl fmt::Display for RewriteRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} == {}", self.lhs, self.rhs)
    }
}

/// A signature with its ordered rewrite rules.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Theory {
    pub sig: Signature,
    pub rules: Vec<RewriteRule>,
    pub fuel_default: u64,
    index: HashMap<Name, Vec<usize>>,
}

impl Theory {
    pub fn new(sig: Signature) -> Theory {
        Theory { sig, rules: Vec::new(), fuel_default: DEFAULT_FUEL, index: HashMap::new() }
    }

    /// Adds a rule. Numeric arguments on the left are put in successor form
    /// first, so `k + 1` on the left reads as `s(k)`.
    pub fn add_rule(&mut self, lhs: Expr, rhs: Expr) {
        let lhs = canonical_lhs(lhs);
        let rule = RewriteRule { lhs, rhs };
        if let Some(h) = rule.head() {
            self.index.entry(h.clone()).or_default().push(self.rules.len());
        }
        self.rules.push(rule);
    }

    pub(crate) fn rules_for(&self, head: &str) -> &[usize] {
        self.index.get(head).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn with_fuel(mut self, fuel: u64) -> Theory {
        self.fuel_default = fuel;
        self
    }
}

fn canonical_num(e: &NumExpr) -> NumExpr {
    match e {
        NumExpr::Lit(_) | NumExpr::Param(_) => e.clone(),
        NumExpr::Succ(a) => NumExpr::succ(canonical_num(a)),
        NumExpr::Add(a, b) => {
            let (a, b) = (canonical_num(a), canonical_num(b));
            match (&a, &b) {
                (_, NumExpr::Lit(k)) => (0..*k).fold(a, |acc, _| NumExpr::succ(acc)),
                (NumExpr::Lit(k), _) => (0..*k).fold(b, |acc, _| NumExpr::succ(acc)),
                _ => NumExpr::add(a, b),
            }
        }
        NumExpr::App(f, args) => NumExpr::App(f.clone(), args.iter().map(canonical_num).collect()),
    }
}

fn canonical_arg(a: &Arg) -> Arg {
    match a {
        Arg::Num(e) => Arg::Num(canonical_num(e)),
        Arg::Term(t) => Arg::Term(canonical_term(t)),
    }
}

fn canonical_term(t: &Term) -> Term {
    match t {
        Term::Var(_) => t.clone(),
        Term::Schem(x, e) => Term::Schem(x.clone(), canonical_num(e)),
        Term::App(f, args) => Term::App(f.clone(), args.iter().map(canonical_arg).collect()),
    }
}

fn canonical_lhs(lhs: Expr) -> Expr {
    match lhs {
        Expr::Num(e) => Expr::Num(canonical_num(&e)),
        Expr::Term(t) => Expr::Term(canonical_term(&t)),
        Expr::Formula(Formula::Atom(p, args)) => {
            Expr::Formula(Formula::Atom(p, args.iter().map(canonical_arg).collect()))
        }
        other => other,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum RewriteError {
    #[error("fuel exhausted after {fuel} rewrite steps")]
    FuelExhausted { fuel: u64 },
    #[error("no rule applies to ground term {0}")]
    StuckTerm(String),
    #[error("expression {0} is not ground")]
    NotGround(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RuleIssue {
    pub rule: usize,
    pub text: String,
    pub message: String,
}

impl fmt::Display for RuleIssue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "rule {} `{}`: {}", self.rule + 1, self.text, self.message)
    }
}

fn defined_in_num(e: &NumExpr) -> bool {
    e.contains_app()
}

fn defined_in_term(t: &Term, sig: &Signature) -> bool {
    match t {
        Term::Var(_) => false,
        Term::Schem(_, e) => defined_in_num(e),
        Term::App(f, args) => sig.is_defined(f) || args.iter().any(|a| defined_in_arg(a, sig)),
    }
}

fn defined_in_arg(a: &Arg, sig: &Signature) -> bool {
    match a {
        Arg::Num(e) => defined_in_num(e),
        Arg::Term(t) => defined_in_term(t, sig),
    }
}

/// Lists every rule that breaks the shape constraints. An empty list means
/// the theory is admissible; convergence is not checked.
pub fn validate_theory(theory: &Theory) -> Vec<RuleIssue> {
    let sig = &theory.sig;
    let mut issues = Vec::new();
    for (i, rule) in theory.rules.iter().enumerate() {
        let mut report = |message: String| issues.push(RuleIssue { rule: i, text: rule.to_string(), message });
        if rule.lhs.sort() != rule.rhs.sort() {
            report(format!("sides have sorts {} and {}", rule.lhs.sort(), rule.rhs.sort()));
        }
        let args: Vec<Arg> = match &rule.lhs {
            Expr::Num(NumExpr::App(_, args)) => args.iter().cloned().map(Arg::Num).collect(),
            Expr::Term(Term::App(f, args)) if sig.is_defined(f) => args.to_vec(),
            Expr::Formula(Formula::Atom(p, args)) if sig.is_defined(p) => args.to_vec(),
            _ => {
                report("left-hand side is not headed by a defined symbol".into());
                continue;
            }
        };
        if args.iter().any(|a| defined_in_arg(a, sig)) {
            report("left-hand side arguments contain a defined symbol".into());
        }
        let lhs_vars = RewriteRule::pattern_vars(&rule.lhs);
        let extra: Vec<_> = RewriteRule::pattern_vars(&rule.rhs).difference(&lhs_vars).cloned().collect();
        if !extra.is_empty() {
            report(format!("right-hand side variables not bound on the left: {}", extra.join(", ")));
        }
        if theory.rules[..i].iter().any(|r| r.lhs == rule.lhs) {
            report("duplicate left-hand side".into());
        }
    }
    issues
}

/// One-shot normalization with a fresh memo table.
pub fn normalize(e: &Expr, theory: &Theory, fuel: u64) -> Result<Normalized, RewriteError> {
    Normalizer::new(theory, fuel).normalize(e)
}

pub fn equivalent(a: &Expr, b: &Expr, theory: &Theory, fuel: u64) -> Result<bool, RewriteError> {
    Normalizer::new(theory, fuel).equivalent(a, b)
}

/// Evaluates a ground numeric expression to a numeral.
pub fn eval_numeric(e: &NumExpr, theory: &Theory, fuel: u64) -> Result<u64, RewriteError> {
    if !e.free_params().is_empty() {
        return Err(RewriteError::NotGround(e.to_string()));
    }
    match Normalizer::new(theory, fuel).num(e)? {
        NumExpr::Lit(k) => Ok(k),
        stuck => Err(RewriteError::StuckTerm(stuck.to_string())),
    }
}
