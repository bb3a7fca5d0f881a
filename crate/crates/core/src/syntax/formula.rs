use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use super::term::fmt_args;
use super::{Arg, Name, NumExpr, Term};

/// Formula schemata. `ForallNum` quantifies over the numeric sort and only
/// shows up in interpretation formulas.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum Formula {
    Atom(Name, Arc<[Arg]>),
    True,
    False,
    Not(Arc<Formula>),
    And(Arc<Formula>, Arc<Formula>),
    Or(Arc<Formula>, Arc<Formula>),
    Imp(Arc<Formula>, Arc<Formula>),
    Forall(Name, Arc<Formula>),
    Exists(Name, Arc<Formula>),
    ForallNum(Name, Arc<Formula>),
}

impl Formula {
    pub fn atom(pred: &str, args: Vec<Arg>) -> Formula {
        Formula::Atom(pred.into(), args.into())
    }

    pub fn not(a: Formula) -> Formula {
        Formula::Not(Arc::new(a))
    }

    pub fn and(a: Formula, b: Formula) -> Formula {
        Formula::And(Arc::new(a), Arc::new(b))
    }

    pub fn or(a: Formula, b: Formula) -> Formula {
        Formula::Or(Arc::new(a), Arc::new(b))
    }

    pub fn imp(a: Formula, b: Formula) -> Formula {
        Formula::Imp(Arc::new(a), Arc::new(b))
    }

    pub fn forall(x: &str, body: Formula) -> Formula {
        Formula::Forall(x.into(), Arc::new(body))
    }

    pub fn exists(x: &str, body: Formula) -> Formula {
        Formula::Exists(x.into(), Arc::new(body))
    }

    pub fn forall_num(x: &str, body: Formula) -> Formula {
        Formula::ForallNum(x.into(), Arc::new(body))
    }

    pub fn free_vars(&self) -> BTreeSet<Name> {
        let mut out = BTreeSet::new();
        self.collect_vars(&mut out);
        out
    }

    pub(crate) fn collect_vars(&self, out: &mut BTreeSet<Name>) {
        match self {
            Formula::Atom(_, args) => args.iter().for_each(|a| a.collect_vars(out)),
            Formula::True | Formula::False => {}
            Formula::Not(a) | Formula::ForallNum(_, a) => a.collect_vars(out),
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Imp(a, b) => {
                a.collect_vars(out);
                b.collect_vars(out);
            }
            Formula::Forall(x, a) | Formula::Exists(x, a) => {
                let mut inner = BTreeSet::new();
                a.collect_vars(&mut inner);
                inner.remove(x);
                out.extend(inner);
            }
        }
    }

    pub fn free_params(&self) -> BTreeSet<Name> {
        let mut out = BTreeSet::new();
        self.collect_params(&mut out);
        out
    }

    pub(crate) fn collect_params(&self, out: &mut BTreeSet<Name>) {
        match self {
            Formula::Atom(_, args) => args.iter().for_each(|a| a.collect_params(out)),
            Formula::True | Formula::False => {}
            Formula::Not(a) | Formula::Forall(_, a) | Formula::Exists(_, a) => a.collect_params(out),
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Imp(a, b) => {
                a.collect_params(out);
                b.collect_params(out);
            }
            Formula::ForallNum(x, a) => {
                let mut inner = BTreeSet::new();
                a.collect_params(&mut inner);
                inner.remove(x);
                out.extend(inner);
            }
        }
    }

    /// Syntactic equality up to renaming of bound variables.
    pub fn alpha_eq(&self, other: &Formula) -> bool {
        self == other || alpha_formula(self, other, &mut Vec::new())
    }

    fn prec(&self) -> u8 {
        match self {
            Formula::Forall(..) | Formula::Exists(..) | Formula::ForallNum(..) => 0,
            Formula::Imp(..) => 1,
            Formula::Or(..) => 2,
            Formula::And(..) => 3,
            Formula::Not(..) => 4,
            Formula::Atom(..) | Formula::True | Formula::False => 5,
        }
    }
}

/// Bound-variable pairs, innermost last. The flag marks numeric binders.
type BinderEnv = Vec<(Name, Name, bool)>;

fn lookup(env: &BinderEnv, x: &str, y: &str, numeric: bool) -> bool {
    for (a, b, num) in env.iter().rev() {
        if *num != numeric {
            continue;
        }
        let (ha, hb) = (&**a == x, &**b == y);
        if ha || hb {
            return ha && hb;
        }
    }
    x == y
}

fn alpha_formula(a: &Formula, b: &Formula, env: &mut BinderEnv) -> bool {
    use Formula::*;
    match (a, b) {
        (Atom(p, xs), Atom(q, ys)) => {
            p == q && xs.len() == ys.len() && xs.iter().zip(ys.iter()).all(|(x, y)| alpha_arg(x, y, env))
        }
        (True, True) | (False, False) => true,
        (Not(x), Not(y)) => alpha_formula(x, y, env),
        (And(a1, a2), And(b1, b2)) | (Or(a1, a2), Or(b1, b2)) | (Imp(a1, a2), Imp(b1, b2)) => {
            alpha_formula(a1, b1, env) && alpha_formula(a2, b2, env)
        }
        (Forall(x, p), Forall(y, q)) | (Exists(x, p), Exists(y, q)) => {
            env.push((x.clone(), y.clone(), false));
            let r = alpha_formula(p, q, env);
            env.pop();
            r
        }
        (ForallNum(x, p), ForallNum(y, q)) => {
            env.push((x.clone(), y.clone(), true));
            let r = alpha_formula(p, q, env);
            env.pop();
            r
        }
        _ => false,
    }
}

fn alpha_arg(a: &Arg, b: &Arg, env: &mut BinderEnv) -> bool {
    match (a, b) {
        (Arg::Num(x), Arg::Num(y)) => alpha_num(x, y, env),
        (Arg::Term(x), Arg::Term(y)) => alpha_term(x, y, env),
        _ => false,
    }
}

fn alpha_term(a: &Term, b: &Term, env: &mut BinderEnv) -> bool {
    if env.is_empty() {
        return a == b;
    }
    match (a, b) {
        (Term::Var(x), Term::Var(y)) => lookup(env, x, y, false),
        (Term::Schem(x, i), Term::Schem(y, j)) => x == y && alpha_num(i, j, env),
        (Term::App(f, xs), Term::App(g, ys)) => {
            f == g && xs.len() == ys.len() && xs.iter().zip(ys.iter()).all(|(x, y)| alpha_arg(x, y, env))
        }
        _ => false,
    }
}

fn alpha_num(a: &NumExpr, b: &NumExpr, env: &mut BinderEnv) -> bool {
    if !env.iter().any(|(_, _, num)| *num) {
        return a == b;
    }
    match (a, b) {
        (NumExpr::Lit(x), NumExpr::Lit(y)) => x == y,
        (NumExpr::Succ(x), NumExpr::Succ(y)) => alpha_num(x, y, env),
        (NumExpr::Param(x), NumExpr::Param(y)) => lookup(env, x, y, true),
        (NumExpr::Add(a1, a2), NumExpr::Add(b1, b2)) => alpha_num(a1, b1, env) && alpha_num(a2, b2, env),
        (NumExpr::App(f, xs), NumExpr::App(g, ys)) => {
            f == g && xs.len() == ys.len() && xs.iter().zip(ys.iter()).all(|(x, y)| alpha_num(x, y, env))
        }
        _ => false,
    }
}

fn fmt_formula(a: &Formula, f: &mut fmt::Formatter<'_>, ctx: u8) -> fmt::Result {
    let paren = a.prec() < ctx;
    if paren {
        f.write_str("(")?;
    }
    match a {
        Formula::Atom(p, args) if args.is_empty() => f.write_str(p)?,
        Formula::Atom(p, args) => {
            f.write_str(p)?;
            fmt_args(f, args)?;
        }
        Formula::True => f.write_str("true")?,
        Formula::False => f.write_str("false")?,
        Formula::Not(x) => {
            f.write_str("~")?;
            fmt_formula(x, f, 4)?;
        }
        Formula::And(x, y) => binary(f, x, y, " /\\ ", 3, false)?,
        Formula::Or(x, y) => binary(f, x, y, " \\/ ", 2, false)?,
        Formula::Imp(x, y) => binary(f, x, y, " -> ", 1, true)?,
        Formula::Forall(x, body) => {
            write!(f, "forall {x}. ")?;
            fmt_formula(body, f, 0)?;
        }
        Formula::Exists(x, body) => {
            write!(f, "exists {x}. ")?;
            fmt_formula(body, f, 0)?;
        }
        Formula::ForallNum(x, body) => {
            write!(f, "forall {x}:o. ")?;
            fmt_formula(body, f, 0)?;
        }
    }
    if paren {
        f.write_str(")")?;
    }
    Ok(())
}

// Conjunction and disjunction group to the left, implication to the right.
fn binary(f: &mut fmt::Formatter<'_>, x: &Formula, y: &Formula, op: &str, prec: u8, right: bool) -> fmt::Result {
    let (l, r) = if right { (prec + 1, prec) } else { (prec, prec + 1) };
    fmt_formula(x, f, l)?;
    f.write_str(op)?;
    fmt_formula(y, f, r)
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_formula(self, f, 0)
    }
}
