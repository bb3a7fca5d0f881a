use std::fmt;

use super::{Arg, Expr, Formula, Name, NumExpr, Signature, Sort, SyntaxError, Term};

/// Untyped parse tree. Sorts are resolved by [`Elaborator`] against a signature.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Raw {
    Ident(Name),
    Num(u64),
    App(Name, Vec<Raw>),
    Schem(Name, Box<Raw>),
    Plus(Box<Raw>, Box<Raw>),
    True,
    False,
    Not(Box<Raw>),
    And(Box<Raw>, Box<Raw>),
    Or(Box<Raw>, Box<Raw>),
    Imp(Box<Raw>, Box<Raw>),
    Forall(Name, Box<Raw>),
    Exists(Name, Box<Raw>),
    ForallNum(Name, Box<Raw>),
}

impl Raw {
    fn prec(&self) -> u8 {
        match self {
            Raw::Forall(..) | Raw::Exists(..) | Raw::ForallNum(..) => 0,
            Raw::Imp(..) => 1,
            Raw::Or(..) => 2,
            Raw::And(..) => 3,
            Raw::Not(..) => 4,
            Raw::Plus(..) => 5,
            _ => 6,
        }
    }

    fn fmt_prec(&self, f: &mut fmt::Formatter<'_>, ctx: u8) -> fmt::Result {
        let paren = self.prec() < ctx;
        if paren {
            f.write_str("(")?;
        }
        match self {
            Raw::Ident(x) => f.write_str(x)?,
            Raw::Num(k) => write!(f, "{k}")?,
            Raw::App(g, args) => {
                write!(f, "{g}(")?;
                for (i, a) in args.iter().enumerate() {
                    if i > 0 {
                        f.write_str(", ")?;
                    }
                    a.fmt_prec(f, 0)?;
                }
                f.write_str(")")?;
            }
            Raw::Schem(x, e) => {
                write!(f, "{x}[")?;
                e.fmt_prec(f, 0)?;
                f.write_str("]")?;
            }
            Raw::Plus(a, b) => {
                a.fmt_prec(f, 5)?;
                f.write_str(" + ")?;
                b.fmt_prec(f, 6)?;
            }
            Raw::True => f.write_str("true")?,
            Raw::False => f.write_str("false")?,
            Raw::Not(a) => {
                f.write_str("~")?;
                a.fmt_prec(f, 4)?;
            }
            Raw::And(a, b) => bin(f, a, b, " /\\ ", 3)?,
            Raw::Or(a, b) => bin(f, a, b, " \\/ ", 2)?,
            Raw::Imp(a, b) => bin(f, a, b, " -> ", 1)?,
            Raw::Forall(x, a) => {
                write!(f, "forall {x}. ")?;
                a.fmt_prec(f, 0)?;
            }
            Raw::Exists(x, a) => {
                write!(f, "exists {x}. ")?;
                a.fmt_prec(f, 0)?;
            }
            Raw::ForallNum(x, a) => {
                write!(f, "forall {x}:o. ")?;
                a.fmt_prec(f, 0)?;
            }
        }
        if paren {
            f.write_str(")")?;
        }
        Ok(())
    }
}

fn bin(f: &mut fmt::Formatter<'_>, a: &Raw, b: &Raw, op: &str, prec: u8) -> fmt::Result {
    a.fmt_prec(f, prec + 1)?;
    f.write_str(op)?;
    b.fmt_prec(f, prec)
}

impl fmt::Display for Raw {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_prec(f, 0)
    }
}

/// Sort-directed elaboration of [`Raw`] trees.
///
/// In rule mode, undeclared identifiers in numeric position become pattern
/// parameters; in proof mode only the signature parameter and numerically
/// bound variables are accepted there. Undeclared identifiers in individual
/// position are variables in both modes.
pub struct Elaborator<'a> {
    sig: &'a Signature,
    rule_mode: bool,
    num_bound: Vec<Name>,
}

impl<'a> Elaborator<'a> {
    pub fn proof(sig: &'a Signature) -> Self {
        Elaborator { sig, rule_mode: false, num_bound: Vec::new() }
    }

    pub fn rule(sig: &'a Signature) -> Self {
        Elaborator { sig, rule_mode: true, num_bound: Vec::new() }
    }

    pub fn num(&mut self, raw: &Raw) -> Result<NumExpr, SyntaxError> {
        match raw {
            Raw::Num(k) => Ok(NumExpr::Lit(*k)),
            Raw::Ident(x) => {
                if **x == *self.sig.param || self.num_bound.contains(x) {
                    return Ok(NumExpr::Param(x.clone()));
                }
                if let Some(sig) = self.sig.function(x) {
                    return if sig.result != Sort::Omega {
                        Err(mismatch(x, Sort::Omega, sig.result))
                    } else if !sig.args.is_empty() {
                        Err(arity(x, sig.args.len(), 0))
                    } else {
                        Ok(NumExpr::App(x.clone(), Vec::new().into()))
                    };
                }
                if self.rule_mode && !self.sig.is_declared(x) {
                    return Ok(NumExpr::Param(x.clone()));
                }
                Err(SyntaxError::UnknownSymbol(x.to_string()))
            }
            Raw::App(g, args) if &**g == "s" => {
                if args.len() != 1 {
                    return Err(arity(g, 1, args.len()));
                }
                Ok(NumExpr::succ(self.num(&args[0])?))
            }
            Raw::App(g, args) => {
                let sig = self.sig.function(g).ok_or_else(|| SyntaxError::UnknownSymbol(g.to_string()))?;
                if sig.result != Sort::Omega {
                    return Err(mismatch(g, Sort::Omega, sig.result));
                }
                if sig.args.len() != args.len() {
                    return Err(arity(g, sig.args.len(), args.len()));
                }
                let args = args.iter().map(|a| self.num(a)).collect::<Result<Vec<_>, _>>()?;
                Ok(NumExpr::App(g.clone(), args.into()))
            }
            Raw::Plus(a, b) => Ok(NumExpr::add(self.num(a)?, self.num(b)?)),
            other => Err(mismatch(&other.to_string(), Sort::Omega, self.guess(other))),
        }
    }

    pub fn term(&mut self, raw: &Raw) -> Result<Term, SyntaxError> {
        match raw {
            Raw::Ident(x) => {
                if let Some(sig) = self.sig.function(x) {
                    return if sig.result != Sort::Iota {
                        Err(mismatch(x, Sort::Iota, sig.result))
                    } else if !sig.args.is_empty() {
                        Err(arity(x, sig.args.len(), 0))
                    } else {
                        Ok(Term::App(x.clone(), Vec::new().into()))
                    };
                }
                if **x == *self.sig.param || self.num_bound.contains(x) {
                    return Err(mismatch(x, Sort::Iota, Sort::Omega));
                }
                if self.sig.is_schematic(x) {
                    return Err(SyntaxError::Declaration(format!("schematic variable `{x}` needs an index")));
                }
                if self.sig.predicate(x).is_some() {
                    return Err(mismatch(x, Sort::Iota, Sort::Prop));
                }
                Ok(Term::Var(x.clone()))
            }
            Raw::Num(k) => {
                let name = k.to_string();
                match self.sig.function(&name) {
                    Some(sig) if sig.result == Sort::Iota && sig.args.is_empty() => Ok(Term::constant(&name)),
                    _ => Err(mismatch(&name, Sort::Iota, Sort::Omega)),
                }
            }
            Raw::Schem(x, e) => {
                if !self.sig.is_schematic(x) {
                    return Err(SyntaxError::UnknownSymbol(x.to_string()));
                }
                Ok(Term::Schem(x.clone(), self.num(e)?))
            }
            Raw::App(g, args) => self.term_app(g, args),
            Raw::Plus(a, b) => self.term_app(&"+".into(), &[(**a).clone(), (**b).clone()]),
            other => Err(mismatch(&other.to_string(), Sort::Iota, self.guess(other))),
        }
    }

    fn term_app(&mut self, g: &Name, args: &[Raw]) -> Result<Term, SyntaxError> {
        let sig = self.sig.function(g).ok_or_else(|| SyntaxError::UnknownSymbol(g.to_string()))?;
        if sig.result != Sort::Iota {
            return Err(mismatch(g, Sort::Iota, sig.result));
        }
        let sorts = sig.args.clone();
        let args = self.args(g, &sorts, args)?;
        Ok(Term::App(g.clone(), args.into()))
    }

    fn args(&mut self, g: &str, sorts: &[Sort], args: &[Raw]) -> Result<Vec<Arg>, SyntaxError> {
        if sorts.len() != args.len() {
            return Err(arity(g, sorts.len(), args.len()));
        }
        sorts
            .iter()
            .zip(args)
            .map(|(s, a)| match s {
                Sort::Omega => self.num(a).map(Arg::Num),
                _ => self.term(a).map(Arg::Term),
            })
            .collect()
    }

    pub fn formula(&mut self, raw: &Raw) -> Result<Formula, SyntaxError> {
        match raw {
            Raw::True => Ok(Formula::True),
            Raw::False => Ok(Formula::False),
            Raw::Ident(p) => self.atom(p, &[]),
            Raw::App(p, args) => self.atom(p, args),
            Raw::Not(a) => Ok(Formula::not(self.formula(a)?)),
            Raw::And(a, b) => Ok(Formula::and(self.formula(a)?, self.formula(b)?)),
            Raw::Or(a, b) => Ok(Formula::or(self.formula(a)?, self.formula(b)?)),
            Raw::Imp(a, b) => Ok(Formula::imp(self.formula(a)?, self.formula(b)?)),
            Raw::Forall(x, a) => Ok(Formula::Forall(x.clone(), self.formula(a)?.into())),
            Raw::Exists(x, a) => Ok(Formula::Exists(x.clone(), self.formula(a)?.into())),
            Raw::ForallNum(x, a) => {
                self.num_bound.push(x.clone());
                let body = self.formula(a);
                self.num_bound.pop();
                Ok(Formula::ForallNum(x.clone(), body?.into()))
            }
            other => Err(mismatch(&other.to_string(), Sort::Prop, self.guess(other))),
        }
    }

    fn atom(&mut self, p: &Name, args: &[Raw]) -> Result<Formula, SyntaxError> {
        let Some(sig) = self.sig.predicate(p) else {
            if let Some(f) = self.sig.function(p) {
                return Err(mismatch(p, Sort::Prop, f.result));
            }
            return Err(SyntaxError::UnknownSymbol(p.to_string()));
        };
        let sorts = sig.args.clone();
        let args = self.args(p, &sorts, args)?;
        Ok(Formula::Atom(p.clone(), args.into()))
    }

    /// Elaborates at the given sort.
    pub fn expr(&mut self, raw: &Raw, sort: Sort) -> Result<Expr, SyntaxError> {
        Ok(match sort {
            Sort::Omega => Expr::Num(self.num(raw)?),
            Sort::Iota => Expr::Term(self.term(raw)?),
            Sort::Prop => Expr::Formula(self.formula(raw)?),
        })
    }

    /// Best-effort sort of a raw tree, for error messages.
    fn guess(&self, raw: &Raw) -> Sort {
        match raw {
            Raw::Num(_) | Raw::Plus(..) => Sort::Omega,
            Raw::Ident(x) | Raw::App(x, _) => {
                if let Some(f) = self.sig.function(x) {
                    f.result
                } else if self.sig.predicate(x).is_some() {
                    Sort::Prop
                } else if **x == *self.sig.param {
                    Sort::Omega
                } else {
                    Sort::Iota
                }
            }
            Raw::Schem(..) => Sort::Iota,
            _ => Sort::Prop,
        }
    }
}

fn mismatch(name: &str, expected: Sort, found: Sort) -> SyntaxError {
    SyntaxError::SortMismatch { name: name.to_string(), expected, found }
}

fn arity(name: &str, expected: usize, found: usize) -> SyntaxError {
    SyntaxError::ArityMismatch { symbol: name.to_string(), expected, found }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sig() -> Signature {
        let mut sig = Signature::default();
        sig.declare_fun("0", vec![], Sort::Iota, false).unwrap();
        sig.declare_fun("f", vec![Sort::Iota], Sort::Iota, false).unwrap();
        sig.declare_fun("Shat", vec![Sort::Omega], Sort::Iota, true).unwrap();
        sig.declare_fun("+", vec![Sort::Iota, Sort::Iota], Sort::Iota, true).unwrap();
        sig.declare_fun("exp2", vec![Sort::Omega], Sort::Omega, true).unwrap();
        sig.declare_pred("P", vec![Sort::Iota], false).unwrap();
        sig.declare_schematic("x").unwrap();
        sig
    }

    fn ident(x: &str) -> Raw {
        Raw::Ident(x.into())
    }

    fn app(g: &str, args: Vec<Raw>) -> Raw {
        Raw::App(g.into(), args)
    }

    #[test]
    fn plus_is_resolved_by_sort() {
        let sig = sig();
        let mut el = Elaborator::proof(&sig);
        let raw = Raw::Plus(Box::new(ident("n")), Box::new(Raw::Num(1)));
        assert_eq!(el.num(&raw).unwrap(), NumExpr::add(NumExpr::param("n"), 1.into()));
        let raw = app("P", vec![Raw::Plus(Box::new(ident("alpha")), Box::new(app("Shat", vec![ident("n")])))]);
        assert_eq!(el.formula(&raw).unwrap().to_string(), "P(alpha + Shat(n))");
    }

    #[test]
    fn zero_constant_in_individual_position() {
        let sig = sig();
        let t = Elaborator::proof(&sig).term(&Raw::Num(0)).unwrap();
        assert_eq!(t, Term::constant("0"));
        assert!(Elaborator::proof(&sig).term(&Raw::Num(2)).is_err());
    }

    #[test]
    fn parameter_in_individual_position_is_rejected() {
        let sig = sig();
        let err = Elaborator::proof(&sig).formula(&app("P", vec![ident("n")])).unwrap_err();
        assert!(matches!(err, SyntaxError::SortMismatch { .. }));
    }

    #[test]
    fn rule_mode_admits_numeric_pattern_variables() {
        let sig = sig();
        let raw = app("exp2", vec![app("s", vec![ident("m")])]);
        assert!(Elaborator::proof(&sig).num(&raw).is_err());
        let e = Elaborator::rule(&sig).num(&raw).unwrap();
        assert_eq!(e, NumExpr::app("exp2", vec![NumExpr::succ(NumExpr::param("m"))]));
    }

    #[test]
    fn arity_is_checked() {
        let sig = sig();
        let err = Elaborator::proof(&sig).term(&app("f", vec![ident("a"), ident("b")])).unwrap_err();
        assert!(matches!(err, SyntaxError::ArityMismatch { expected: 1, found: 2, .. }));
    }

    #[test]
    fn schematic_variables_take_an_index() {
        let sig = sig();
        let t = Elaborator::proof(&sig).term(&Raw::Schem("x".into(), Box::new(ident("n")))).unwrap();
        assert_eq!(t.to_string(), "x[n]");
        assert!(Elaborator::proof(&sig).term(&ident("x")).is_err());
    }

    #[test]
    fn raw_display() {
        let raw = Raw::Imp(
            Box::new(Raw::Imp(Box::new(ident("A")), Box::new(ident("B")))),
            Box::new(Raw::Plus(Box::new(ident("a")), Box::new(Raw::Plus(Box::new(ident("b")), Box::new(Raw::Num(1)))))),
        );
        assert_eq!(raw.to_string(), "(A -> B) -> a + (b + 1)");
    }
}
