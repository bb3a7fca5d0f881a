use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use super::Name;

/// Expressions of the numeric sort.
///
/// Numerals are kept as `Lit(k)` instead of `k` nested successors; `Succ` only
/// ever wraps a non-literal. Use [`NumExpr::succ`] to build successors so the
/// representation stays canonical.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum NumExpr {
    Lit(u64),
    Succ(Arc<NumExpr>),
    Param(Name),
    Add(Arc<NumExpr>, Arc<NumExpr>),
    App(Name, Arc<[NumExpr]>),
}

impl NumExpr {
    pub const ZERO: NumExpr = NumExpr::Lit(0);

    pub fn succ(e: NumExpr) -> NumExpr {
        match e {
            NumExpr::Lit(k) => NumExpr::Lit(k.checked_add(1).expect("numeral overflow")),
            e => NumExpr::Succ(Arc::new(e)),
        }
    }

    pub fn param(name: &str) -> NumExpr {
        NumExpr::Param(name.into())
    }

    pub fn add(a: NumExpr, b: NumExpr) -> NumExpr {
        NumExpr::Add(Arc::new(a), Arc::new(b))
    }

    pub fn app(name: &str, args: Vec<NumExpr>) -> NumExpr {
        NumExpr::App(name.into(), args.into())
    }

    /// The numeral value, if this is a numeral.
    pub fn as_numeral(&self) -> Option<u64> {
        match self {
            NumExpr::Lit(k) => Some(*k),
            _ => None,
        }
    }

    pub fn is_numeral(&self) -> bool {
        matches!(self, NumExpr::Lit(_))
    }

    pub fn free_params(&self) -> BTreeSet<Name> {
        let mut out = BTreeSet::new();
        self.collect_params(&mut out);
        out
    }

    pub(crate) fn collect_params(&self, out: &mut BTreeSet<Name>) {
        match self {
            NumExpr::Lit(_) => {}
            NumExpr::Succ(e) => e.collect_params(out),
            NumExpr::Param(p) => {
                out.insert(p.clone());
            }
            NumExpr::Add(a, b) => {
                a.collect_params(out);
                b.collect_params(out);
            }
            NumExpr::App(_, args) => args.iter().for_each(|a| a.collect_params(out)),
        }
    }

    pub fn contains_app(&self) -> bool {
        match self {
            NumExpr::Lit(_) | NumExpr::Param(_) => false,
            NumExpr::Succ(e) => e.contains_app(),
            NumExpr::Add(..) | NumExpr::App(..) => true,
        }
    }

    /// Reflexive subterm relation. A literal `k` has the literals `0..=k` as subterms.
    pub fn is_subterm(&self, of: &NumExpr) -> bool {
        if self == of {
            return true;
        }
        match of {
            NumExpr::Lit(k) => matches!(self, NumExpr::Lit(j) if j <= k),
            NumExpr::Succ(e) => self.is_subterm(e),
            NumExpr::Param(_) => false,
            NumExpr::Add(a, b) => self.is_subterm(a) || self.is_subterm(b),
            NumExpr::App(_, args) => args.iter().any(|a| self.is_subterm(a)),
        }
    }

    /// Reads the expression as `coef * param + constant` when it is built from
    /// literals, successors, addition and the given parameter only.
    pub fn linear_form(&self, param: &str) -> Option<(u64, u64)> {
        match self {
            NumExpr::Lit(k) => Some((0, *k)),
            NumExpr::Succ(e) => e.linear_form(param).map(|(c, k)| (c, k + 1)),
            NumExpr::Param(p) if &**p == param => Some((1, 0)),
            NumExpr::Param(_) => None,
            NumExpr::Add(a, b) => {
                let (ca, ka) = a.linear_form(param)?;
                let (cb, kb) = b.linear_form(param)?;
                Some((ca + cb, ka + kb))
            }
            NumExpr::App(..) => None,
        }
    }
}

impl From<u64> for NumExpr {
    fn from(k: u64) -> Self {
        NumExpr::Lit(k)
    }
}

impl fmt::Display for NumExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_num(self, f, false)
    }
}

fn fmt_num(e: &NumExpr, f: &mut fmt::Formatter<'_>, right_of_add: bool) -> fmt::Result {
    match e {
        NumExpr::Lit(k) => write!(f, "{k}"),
        NumExpr::Succ(inner) => write!(f, "s({inner})"),
        NumExpr::Param(p) => f.write_str(p),
        NumExpr::Add(a, b) => {
            if right_of_add {
                f.write_str("(")?;
            }
            fmt_num(a, f, false)?;
            f.write_str(" + ")?;
            fmt_num(b, f, true)?;
            if right_of_add {
                f.write_str(")")?;
            }
            Ok(())
        }
        NumExpr::App(name, args) => {
            write!(f, "{name}(")?;
            for (i, a) in args.iter().enumerate() {
                if i > 0 {
                    f.write_str(", ")?;
                }
                write!(f, "{a}")?;
            }
            f.write_str(")")
        }
    }
}
