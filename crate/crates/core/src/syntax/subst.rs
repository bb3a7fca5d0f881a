use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use super::{Arg, Expr, Formula, Name, NumExpr, Sequent, Sort, SyntaxError, Term};

/// Simultaneous substitution for numeric parameters and individual variables.
///
/// The numeric map doubles as the binding of numeric pattern variables during
/// rewriting; in schema terms it holds at most the single parameter.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Substitution {
    pub nums: BTreeMap<Name, NumExpr>,
    pub terms: BTreeMap<Name, Term>,
}

impl Substitution {
    pub fn new() -> Self {
        Self::default()
    }

    /// `[param \ value]`
    pub fn param(param: &str, value: NumExpr) -> Self {
        let mut s = Self::default();
        s.nums.insert(param.into(), value);
        s
    }

    /// `[x̄ \ t̄]`; the vectors must have equal length.
    pub fn vars(names: &[Name], terms: &[Term]) -> Self {
        debug_assert_eq!(names.len(), terms.len());
        let mut s = Self::default();
        for (x, t) in names.iter().zip(terms) {
            s.terms.insert(x.clone(), t.clone());
        }
        s
    }

    pub fn with_param(mut self, param: &str, value: NumExpr) -> Self {
        self.nums.insert(param.into(), value);
        self
    }

    /// Binds `name` of the given sort to an arbitrary expression, rejecting
    /// values of the wrong sort.
    pub fn bind(&mut self, name: &str, sort: Sort, value: Expr) -> Result<(), SyntaxError> {
        match (sort, value) {
            (Sort::Omega, Expr::Num(e)) => {
                self.nums.insert(name.into(), e);
                Ok(())
            }
            (Sort::Iota, Expr::Term(t)) => {
                self.terms.insert(name.into(), t);
                Ok(())
            }
            (expected, value) => {
                Err(SyntaxError::SortMismatch { name: name.to_string(), expected, found: value.sort() })
            }
        }
    }

    pub fn is_empty(&self) -> bool {
        self.nums.is_empty() && self.terms.is_empty()
    }

    fn without_term(&self, x: &Name) -> Substitution {
        let mut s = self.clone();
        s.terms.remove(x);
        s
    }

    fn without_num(&self, x: &Name) -> Substitution {
        let mut s = self.clone();
        s.nums.remove(x);
        s
    }
}

impl NumExpr {
    pub fn subst(&self, s: &Substitution) -> NumExpr {
        if s.nums.is_empty() {
            return self.clone();
        }
        match self {
            NumExpr::Lit(_) => self.clone(),
            NumExpr::Succ(e) => NumExpr::succ(e.subst(s)),
            NumExpr::Param(p) => s.nums.get(p).cloned().unwrap_or_else(|| self.clone()),
            NumExpr::Add(a, b) => NumExpr::Add(Arc::new(a.subst(s)), Arc::new(b.subst(s))),
            NumExpr::App(f, args) => NumExpr::App(f.clone(), args.iter().map(|a| a.subst(s)).collect()),
        }
    }
}

impl Term {
    pub fn subst(&self, s: &Substitution) -> Term {
        if s.is_empty() {
            return self.clone();
        }
        match self {
            Term::Var(x) => s.terms.get(x).cloned().unwrap_or_else(|| self.clone()),
            Term::Schem(x, e) => Term::Schem(x.clone(), e.subst(s)),
            Term::App(f, args) => Term::App(f.clone(), args.iter().map(|a| a.subst(s)).collect()),
        }
    }
}

impl Arg {
    pub fn subst(&self, s: &Substitution) -> Arg {
        match self {
            Arg::Num(e) => Arg::Num(e.subst(s)),
            Arg::Term(t) => Arg::Term(t.subst(s)),
        }
    }
}

fn fresh(base: &Name, avoid: &BTreeSet<Name>) -> Name {
    let mut candidate = format!("{base}'");
    while avoid.contains(candidate.as_str()) {
        candidate.push('\'');
    }
    candidate.into()
}

impl Formula {
    pub fn subst(&self, s: &Substitution) -> Formula {
        if s.is_empty() {
            return self.clone();
        }
        match self {
            Formula::Atom(p, args) => Formula::Atom(p.clone(), args.iter().map(|a| a.subst(s)).collect()),
            Formula::True | Formula::False => self.clone(),
            Formula::Not(a) => Formula::Not(Arc::new(a.subst(s))),
            Formula::And(a, b) => Formula::And(Arc::new(a.subst(s)), Arc::new(b.subst(s))),
            Formula::Or(a, b) => Formula::Or(Arc::new(a.subst(s)), Arc::new(b.subst(s))),
            Formula::Imp(a, b) => Formula::Imp(Arc::new(a.subst(s)), Arc::new(b.subst(s))),
            Formula::Forall(x, body) | Formula::Exists(x, body) => {
                let (x, body) = subst_under_iota_binder(x, body, s);
                match self {
                    Formula::Forall(..) => Formula::Forall(x, Arc::new(body)),
                    _ => Formula::Exists(x, Arc::new(body)),
                }
            }
            Formula::ForallNum(x, body) => {
                let inner = s.without_num(x);
                let body_params = body.free_params();
                let captures = inner.nums.iter().any(|(k, v)| body_params.contains(k) && v.free_params().contains(x));
                if captures {
                    let mut avoid = body_params;
                    inner.nums.values().for_each(|v| v.collect_params(&mut avoid));
                    avoid.extend(inner.nums.keys().cloned());
                    let y = fresh(x, &avoid);
                    let renamed = body.subst(&Substitution::param(x, NumExpr::Param(y.clone())));
                    Formula::ForallNum(y, Arc::new(renamed.subst(&inner)))
                } else {
                    Formula::ForallNum(x.clone(), Arc::new(body.subst(&inner)))
                }
            }
        }
    }

    /// `A[x \ t]` for a single individual variable.
    pub fn instantiate(&self, x: &str, t: &Term) -> Formula {
        let mut s = Substitution::new();
        s.terms.insert(x.into(), t.clone());
        self.subst(&s)
    }
}

fn subst_under_iota_binder(x: &Name, body: &Formula, s: &Substitution) -> (Name, Formula) {
    let inner = s.without_term(x);
    let body_vars = body.free_vars();
    let captures = inner.terms.iter().any(|(k, v)| body_vars.contains(k) && v.has_var(x));
    if captures {
        let mut avoid = body_vars;
        inner.terms.values().for_each(|v| v.collect_vars(&mut avoid));
        avoid.extend(inner.terms.keys().cloned());
        let y = fresh(x, &avoid);
        let renamed = body.instantiate(x, &Term::Var(y.clone()));
        (y, renamed.subst(&inner))
    } else {
        (x.clone(), body.subst(&inner))
    }
}

impl Sequent {
    pub fn subst(&self, s: &Substitution) -> Sequent {
        self.map(|f| f.subst(s))
    }
}

impl Expr {
    pub fn subst(&self, s: &Substitution) -> Expr {
        match self {
            Expr::Num(e) => Expr::Num(e.subst(s)),
            Expr::Term(t) => Expr::Term(t.subst(s)),
            Expr::Formula(f) => Expr::Formula(f.subst(s)),
        }
    }
}
