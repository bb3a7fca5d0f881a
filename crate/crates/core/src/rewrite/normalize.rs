use std::collections::HashMap;
use std::sync::Arc;

use super::{matching, RewriteError, Theory};
use crate::syntax::{Arg, Expr, Formula, NumExpr, Sequent, Substitution, Term};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Normalized {
    pub value: Expr,
    pub steps_used: u64,
}

/// Leftmost-innermost normalizer with a memo table for defined applications.
///
/// Fuel bounds the rewrite steps of each top-level call. Memoized results are
/// reused across calls on the same normalizer and cost no fuel.
pub struct Normalizer<'t> {
    theory: &'t Theory,
    fuel: u64,
    used: u64,
    total: u64,
    memo_num: HashMap<NumExpr, NumExpr>,
    memo_term: HashMap<Term, Term>,
    memo_formula: HashMap<Formula, Formula>,
}

type Res<T> = Result<T, RewriteError>;

impl<'t> Normalizer<'t> {
    pub fn new(theory: &'t Theory, fuel: u64) -> Self {
        Normalizer {
            theory,
            fuel,
            used: 0,
            total: 0,
            memo_num: HashMap::new(),
            memo_term: HashMap::new(),
            memo_formula: HashMap::new(),
        }
    }

    pub fn theory(&self) -> &'t Theory {
        self.theory
    }

    pub fn fuel(&self) -> u64 {
        self.fuel
    }

    /// Rewrite steps performed over the normalizer's lifetime.
    pub fn total_steps(&self) -> u64 {
        self.total
    }

    pub fn normalize(&mut self, e: &Expr) -> Res<Normalized> {
        self.used = 0;
        let value = match e {
            Expr::Num(n) => Expr::Num(self.nf_num(n, None)?),
            Expr::Term(t) => Expr::Term(self.nf_term(t, None)?),
            Expr::Formula(f) => Expr::Formula(self.nf_formula(f, None)?),
        };
        Ok(Normalized { value, steps_used: self.used })
    }

    pub fn num(&mut self, e: &NumExpr) -> Res<NumExpr> {
        self.used = 0;
        self.nf_num(e, None)
    }

    pub fn term(&mut self, t: &Term) -> Res<Term> {
        self.used = 0;
        self.nf_term(t, None)
    }

    pub fn formula(&mut self, f: &Formula) -> Res<Formula> {
        self.used = 0;
        self.nf_formula(f, None)
    }

    /// Normalizes every formula of the sequent; fuel applies to the whole sequent.
    pub fn sequent(&mut self, s: &Sequent) -> Res<Sequent> {
        self.used = 0;
        s.try_map(|f| self.nf_formula(f, None))
    }

    /// Joinability: both sides normalize to the same expression up to bound renaming.
    pub fn equivalent(&mut self, a: &Expr, b: &Expr) -> Res<bool> {
        if a == b {
            return Ok(true);
        }
        let a = self.normalize(a)?.value;
        let b = self.normalize(b)?.value;
        Ok(match (&a, &b) {
            (Expr::Formula(x), Expr::Formula(y)) => x.alpha_eq(y),
            _ => a == b,
        })
    }

    fn step(&mut self) -> Res<()> {
        self.used += 1;
        self.total += 1;
        if self.used > self.fuel {
            Err(RewriteError::FuelExhausted { fuel: self.fuel })
        } else {
            Ok(())
        }
    }

    // `inst` holds pattern bindings while a right-hand side is being
    // normalized; bound values are already in normal form.
    fn nf_num(&mut self, e: &NumExpr, inst: Option<&Substitution>) -> Res<NumExpr> {
        match e {
            NumExpr::Lit(_) => Ok(e.clone()),
            NumExpr::Param(v) => Ok(inst.and_then(|s| s.nums.get(v)).cloned().unwrap_or_else(|| e.clone())),
            NumExpr::Succ(a) => Ok(NumExpr::succ(self.nf_num(a, inst)?)),
            NumExpr::Add(a, b) => {
                let a = self.nf_num(a, inst)?;
                let b = self.nf_num(b, inst)?;
                self.add(a, b)
            }
            NumExpr::App(f, args) => {
                let args = args.iter().map(|a| self.nf_num(a, inst)).collect::<Res<Vec<_>>>()?;
                self.root_num(NumExpr::App(f.clone(), args.into()))
            }
        }
    }

    /// Built-in addition on normal forms: `0+b=b`, `s(a)+b=s(a+b)`, `a+0=a`, `a+s(b)=s(a+b)`.
    fn add(&mut self, a: NumExpr, b: NumExpr) -> Res<NumExpr> {
        match (&a, &b) {
            (NumExpr::Lit(x), NumExpr::Lit(y)) => {
                self.step()?;
                Ok(NumExpr::Lit(x.checked_add(*y).expect("numeral overflow")))
            }
            (_, NumExpr::Lit(k)) | (NumExpr::Lit(k), _) => {
                self.step()?;
                let other = if matches!(b, NumExpr::Lit(_)) { a.clone() } else { b.clone() };
                Ok((0..*k).fold(other, |acc, _| NumExpr::succ(acc)))
            }
            (_, NumExpr::Succ(b1)) => {
                self.step()?;
                let inner = self.add(a.clone(), (**b1).clone())?;
                Ok(NumExpr::succ(inner))
            }
            (NumExpr::Succ(a1), _) => {
                self.step()?;
                let inner = self.add((**a1).clone(), b.clone())?;
                Ok(NumExpr::succ(inner))
            }
            _ => Ok(NumExpr::Add(Arc::new(a), Arc::new(b))),
        }
    }

    // Root rewriting iterates instead of recursing so that long rewrite
    // sequences at one position use constant stack.
    fn root_num(&mut self, mut cur: NumExpr) -> Res<NumExpr> {
        let mut visited = Vec::new();
        let theory = self.theory;
        loop {
            let NumExpr::App(f, targs) = &cur else { break };
            if let Some(v) = self.memo_num.get(&cur) {
                cur = v.clone();
                break;
            }
            let mut next = None;
            for &i in theory.rules_for(f) {
                let rule = &theory.rules[i];
                let (Expr::Num(NumExpr::App(_, pargs)), Expr::Num(rhs)) = (&rule.lhs, &rule.rhs) else { continue };
                let mut s = Substitution::new();
                if pargs.len() == targs.len()
                    && pargs.iter().zip(targs.iter()).all(|(p, a)| matching::num(p, a, &mut s))
                {
                    next = Some((rhs, s));
                    break;
                }
            }
            let Some((rhs, s)) = next else { break };
            self.step()?;
            let done = !matches!(rhs, NumExpr::App(..));
            let value = match rhs {
                NumExpr::App(g, args) => {
                    let args = args.iter().map(|a| self.nf_num(a, Some(&s))).collect::<Res<Vec<_>>>()?;
                    NumExpr::App(g.clone(), args.into())
                }
                other => self.nf_num(other, Some(&s))?,
            };
            visited.push(std::mem::replace(&mut cur, value));
            if done {
                break;
            }
        }
        for k in visited {
            self.memo_num.insert(k, cur.clone());
        }
        Ok(cur)
    }

    fn nf_arg(&mut self, a: &Arg, inst: Option<&Substitution>) -> Res<Arg> {
        Ok(match a {
            Arg::Num(e) => Arg::Num(self.nf_num(e, inst)?),
            Arg::Term(t) => Arg::Term(self.nf_term(t, inst)?),
        })
    }

    fn nf_term(&mut self, t: &Term, inst: Option<&Substitution>) -> Res<Term> {
        match t {
            Term::Var(v) => Ok(inst.and_then(|s| s.terms.get(v)).cloned().unwrap_or_else(|| t.clone())),
            Term::Schem(x, e) => Ok(Term::Schem(x.clone(), self.nf_num(e, inst)?)),
            Term::App(f, args) => {
                let args = args.iter().map(|a| self.nf_arg(a, inst)).collect::<Res<Vec<_>>>()?;
                let t = Term::App(f.clone(), args.into());
                if self.theory.rules_for(f).is_empty() {
                    return Ok(t);
                }
                self.root_term(t)
            }
        }
    }

    fn root_term(&mut self, mut cur: Term) -> Res<Term> {
        let mut visited = Vec::new();
        let theory = self.theory;
        loop {
            let Term::App(f, targs) = &cur else { break };
            if let Some(v) = self.memo_term.get(&cur) {
                cur = v.clone();
                break;
            }
            let mut next = None;
            for &i in theory.rules_for(f) {
                let rule = &theory.rules[i];
                let (Expr::Term(Term::App(_, pargs)), Expr::Term(rhs)) = (&rule.lhs, &rule.rhs) else { continue };
                let mut s = Substitution::new();
                if matching::args(pargs, targs, &mut s) {
                    next = Some((rhs, s));
                    break;
                }
            }
            let Some((rhs, s)) = next else { break };
            self.step()?;
            let done = !matches!(rhs, Term::App(..));
            let value = match rhs {
                Term::App(g, args) => {
                    let args = args.iter().map(|a| self.nf_arg(a, Some(&s))).collect::<Res<Vec<_>>>()?;
                    Term::App(g.clone(), args.into())
                }
                other => self.nf_term(other, Some(&s))?,
            };
            visited.push(std::mem::replace(&mut cur, value));
            if done {
                break;
            }
        }
        for k in visited {
            self.memo_term.insert(k, cur.clone());
        }
        Ok(cur)
    }

    fn nf_formula(&mut self, f: &Formula, inst: Option<&Substitution>) -> Res<Formula> {
        Ok(match f {
            Formula::Atom(p, args) => {
                let args = args.iter().map(|a| self.nf_arg(a, inst)).collect::<Res<Vec<_>>>()?;
                let a = Formula::Atom(p.clone(), args.into());
                if self.theory.rules_for(p).is_empty() {
                    return Ok(a);
                }
                self.root_formula(a)?
            }
            Formula::True | Formula::False => f.clone(),
            Formula::Not(a) => Formula::not(self.nf_formula(a, inst)?),
            Formula::And(a, b) => Formula::and(self.nf_formula(a, inst)?, self.nf_formula(b, inst)?),
            Formula::Or(a, b) => Formula::or(self.nf_formula(a, inst)?, self.nf_formula(b, inst)?),
            Formula::Imp(a, b) => Formula::imp(self.nf_formula(a, inst)?, self.nf_formula(b, inst)?),
            Formula::Forall(..) | Formula::Exists(..) | Formula::ForallNum(..) => match inst {
                // Under a binder the bindings are applied by capture-avoiding substitution first.
                Some(s) if !s.is_empty() => self.nf_formula(&f.subst(s), None)?,
                _ => match f {
                    Formula::Forall(x, a) => Formula::Forall(x.clone(), Arc::new(self.nf_formula(a, None)?)),
                    Formula::Exists(x, a) => Formula::Exists(x.clone(), Arc::new(self.nf_formula(a, None)?)),
                    Formula::ForallNum(x, a) => Formula::ForallNum(x.clone(), Arc::new(self.nf_formula(a, None)?)),
                    _ => unreachable!(),
                },
            },
        })
    }

    fn root_formula(&mut self, mut cur: Formula) -> Res<Formula> {
        let mut visited = Vec::new();
        let theory = self.theory;
        loop {
            let Formula::Atom(p, targs) = &cur else { break };
            if let Some(v) = self.memo_formula.get(&cur) {
                cur = v.clone();
                break;
            }
            let mut next = None;
            for &i in theory.rules_for(p) {
                let rule = &theory.rules[i];
                let (Expr::Formula(Formula::Atom(_, pargs)), Expr::Formula(rhs)) = (&rule.lhs, &rule.rhs) else {
                    continue;
                };
                let mut s = Substitution::new();
                if matching::args(pargs, targs, &mut s) {
                    next = Some((rhs, s));
                    break;
                }
            }
            let Some((rhs, s)) = next else { break };
            self.step()?;
            let done = !matches!(rhs, Formula::Atom(..));
            let value = match rhs {
                Formula::Atom(q, args) => {
                    let args = args.iter().map(|a| self.nf_arg(a, Some(&s))).collect::<Res<Vec<_>>>()?;
                    Formula::Atom(q.clone(), args.into())
                }
                other => self.nf_formula(other, Some(&s))?,
            };
            visited.push(std::mem::replace(&mut cur, value));
            if done {
                break;
            }
        }
        for k in visited {
            self.memo_formula.insert(k, cur.clone());
        }
        Ok(cur)
    }
}
