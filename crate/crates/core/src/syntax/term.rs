use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use super::{Name, NumExpr};

/// Terms of the individual sort.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum Term {
    /// Free or bound individual variable.
    Var(Name),
    /// Schematic variable applied to its index, written `x[e]`.
    Schem(Name, NumExpr),
    /// Function application; constants have no arguments.
    App(Name, Arc<[Arg]>),
}

/// Argument of a function or predicate symbol: either sort may appear.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum Arg {
    Num(NumExpr),
    Term(Term),
}

impl Term {
    pub fn var(name: &str) -> Term {
        Term::Var(name.into())
    }

    pub fn constant(name: &str) -> Term {
        Term::App(name.into(), Arc::from(Vec::new()))
    }

    pub fn app(name: &str, args: Vec<Arg>) -> Term {
        Term::App(name.into(), args.into())
    }

    pub fn free_vars(&self) -> BTreeSet<Name> {
        let mut out = BTreeSet::new();
        self.collect_vars(&mut out);
        out
    }

    pub(crate) fn collect_vars(&self, out: &mut BTreeSet<Name>) {
        match self {
            Term::Var(x) => {
                out.insert(x.clone());
            }
            Term::Schem(..) => {}
            Term::App(_, args) => args.iter().for_each(|a| a.collect_vars(out)),
        }
    }

    pub(crate) fn collect_params(&self, out: &mut BTreeSet<Name>) {
        match self {
            Term::Var(_) => {}
            Term::Schem(_, e) => e.collect_params(out),
            Term::App(_, args) => args.iter().for_each(|a| a.collect_params(out)),
        }
    }

    pub fn has_var(&self, name: &str) -> bool {
        match self {
            Term::Var(x) => &**x == name,
            Term::Schem(..) => false,
            Term::App(_, args) => args.iter().any(|a| matches!(a, Arg::Term(t) if t.has_var(name))),
        }
    }
}

impl Arg {
    pub(crate) fn collect_vars(&self, out: &mut BTreeSet<Name>) {
        if let Arg::Term(t) = self {
            t.collect_vars(out);
        }
    }

    pub(crate) fn collect_params(&self, out: &mut BTreeSet<Name>) {
        match self {
            Arg::Num(e) => e.collect_params(out),
            Arg::Term(t) => t.collect_params(out),
        }
    }
}

impl From<Term> for Arg {
    fn from(t: Term) -> Self {
        Arg::Term(t)
    }
}

impl From<NumExpr> for Arg {
    fn from(e: NumExpr) -> Self {
        Arg::Num(e)
    }
}

pub(crate) fn fmt_args(f: &mut fmt::Formatter<'_>, args: &[Arg]) -> fmt::Result {
    f.write_str("(")?;
    for (i, a) in args.iter().enumerate() {
        if i > 0 {
            f.write_str(", ")?;
        }
        write!(f, "{a}")?;
    }
    f.write_str(")")
}

fn is_infix_plus(t: &Term) -> bool {
    matches!(t, Term::App(name, args) if &**name == "+" && args.len() == 2)
}

fn fmt_term(t: &Term, f: &mut fmt::Formatter<'_>, right_of_add: bool) -> fmt::Result {
    match t {
        Term::Var(x) => f.write_str(x),
        Term::Schem(x, e) => write!(f, "{x}[{e}]"),
        Term::App(name, args) if is_infix_plus(t) => {
            if right_of_add {
                f.write_str("(")?;
            }
            match &args[0] {
                Arg::Term(a) => fmt_term(a, f, false)?,
                a => write!(f, "{a}")?,
            }
            let _ = name;
            f.write_str(" + ")?;
            match &args[1] {
                Arg::Term(b) => fmt_term(b, f, true)?,
                b => write!(f, "{b}")?,
            }
            if right_of_add {
                f.write_str(")")?;
            }
            Ok(())
        }
        Term::App(name, args) if args.is_empty() => f.write_str(name),
        Term::App(name, args) => {
            f.write_str(name)?;
            fmt_args(f, args)
        }
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_term(self, f, false)
    }
}

impl fmt::Display for Arg {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Arg::Num(e) => write!(f, "{e}"),
            Arg::Term(t) => write!(f, "{t}"),
        }
    }
}
