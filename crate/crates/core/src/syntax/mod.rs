//! The two-sorted schematic language: numeric expressions, terms, formulas,
//! sequents, substitutions, positions and the untyped surface syntax.

use std::fmt;
use std::sync::Arc;

use thiserror::Error;

mod formula;
mod num;
mod position;
mod sequent;
mod signature;
mod subst;
mod surface;
mod term;

pub use formula::Formula;
pub use num::NumExpr;
pub use position::{diff_path, Path};
pub use sequent::{multiset_eq, sequent_eq, AnnotatedSequent, Pos, Sequent, Side};
pub use signature::{FunSig, PredSig, Signature};
pub use subst::Substitution;
pub use surface::{Elaborator, Raw};
pub use term::{Arg, Term};

pub type Name = Arc<str>;

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum Sort {
    /// Numerals and the parameter.
    Omega,
    /// Individuals.
    Iota,
    /// Formulas; only used to classify expressions.
    Prop,
}

impl fmt::Display for Sort {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sort::Omega => "o",
            Sort::Iota => "i",
            Sort::Prop => "prop",
        })
    }
}

/// An expression of any sort.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum Expr {
    Num(NumExpr),
    Term(Term),
    Formula(Formula),
}

impl Expr {
    pub fn sort(&self) -> Sort {
        match self {
            Expr::Num(_) => Sort::Omega,
            Expr::Term(_) => Sort::Iota,
            Expr::Formula(_) => Sort::Prop,
        }
    }

    pub fn free_params(&self) -> std::collections::BTreeSet<Name> {
        let mut out = std::collections::BTreeSet::new();
        match self {
            Expr::Num(e) => e.collect_params(&mut out),
            Expr::Term(t) => t.collect_params(&mut out),
            Expr::Formula(f) => f.collect_params(&mut out),
        }
        out
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Num(e) => write!(f, "{e}"),
            Expr::Term(t) => write!(f, "{t}"),
            Expr::Formula(a) => write!(f, "{a}"),
        }
    }
}

impl From<NumExpr> for Expr {
    fn from(e: NumExpr) -> Self {
        Expr::Num(e)
    }
}

impl From<Term> for Expr {
    fn from(t: Term) -> Self {
        Expr::Term(t)
    }
}

impl From<Formula> for Expr {
    fn from(f: Formula) -> Self {
        Expr::Formula(f)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum SyntaxError {
    #[error("sort mismatch for `{name}`: expected {expected}, found {found}")]
    SortMismatch { name: String, expected: Sort, found: Sort },
    #[error("unknown symbol `{0}`")]
    UnknownSymbol(String),
    #[error("`{symbol}` expects {expected} argument(s), got {found}")]
    ArityMismatch { symbol: String, expected: usize, found: usize },
    #[error("invalid declaration: {0}")]
    Declaration(String),
    #[error("invalid position {0}")]
    BadPath(String),
}
