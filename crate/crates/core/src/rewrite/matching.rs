use crate::syntax::{Arg, NumExpr, Substitution, Term};

/// Syntactic matching of a rule pattern against a normalized subject.
/// Parameters and individual variables in the pattern are pattern variables;
/// repeated variables must bind equal values.
pub(super) fn num(p: &NumExpr, t: &NumExpr, s: &mut Substitution) -> bool {
    match (p, t) {
        (NumExpr::Param(v), _) => match s.nums.get(v) {
            Some(bound) => bound == t,
            None => {
                s.nums.insert(v.clone(), t.clone());
                true
            }
        },
        (NumExpr::Lit(a), NumExpr::Lit(b)) => a == b,
        (NumExpr::Lit(a), NumExpr::Succ(t)) if *a > 0 => num(&NumExpr::Lit(a - 1), t, s),
        (NumExpr::Succ(p), NumExpr::Lit(b)) if *b > 0 => num(p, &NumExpr::Lit(b - 1), s),
        (NumExpr::Succ(p), NumExpr::Succ(t)) => num(p, t, s),
        (NumExpr::Add(p1, p2), NumExpr::Add(t1, t2)) => num(p1, t1, s) && num(p2, t2, s),
        (NumExpr::App(f, ps), NumExpr::App(g, ts)) => {
            f == g && ps.len() == ts.len() && ps.iter().zip(ts.iter()).all(|(p, t)| num(p, t, s))
        }
        _ => false,
    }
}

pub(super) fn term(p: &Term, t: &Term, s: &mut Substitution) -> bool {
    match (p, t) {
        (Term::Var(v), _) => match s.terms.get(v) {
            Some(bound) => bound == t,
            None => {
                s.terms.insert(v.clone(), t.clone());
                true
            }
        },
        (Term::Schem(x, i), Term::Schem(y, j)) => x == y && num(i, j, s),
        (Term::App(f, ps), Term::App(g, ts)) => f == g && args(ps, ts, s),
        _ => false,
    }
}

pub(super) fn args(ps: &[Arg], ts: &[Arg], s: &mut Substitution) -> bool {
    ps.len() == ts.len()
        && ps.iter().zip(ts).all(|(p, t)| match (p, t) {
            (Arg::Num(p), Arg::Num(t)) => num(p, t, s),
            (Arg::Term(p), Arg::Term(t)) => term(p, t, s),
            _ => false,
        })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn successor_pattern_matches_numeral() {
        let mut s = Substitution::new();
        assert!(num(&NumExpr::succ(NumExpr::param("k")), &NumExpr::Lit(3), &mut s));
        assert_eq!(s.nums["k"], NumExpr::Lit(2));
        let mut s = Substitution::new();
        assert!(!num(&NumExpr::succ(NumExpr::param("k")), &NumExpr::ZERO, &mut s));
    }

    #[test]
    fn non_linear_patterns_need_equal_bindings() {
        let p = Term::app("g", vec![Term::var("x").into(), Term::var("x").into()]);
        let same = Term::app("g", vec![Term::var("a").into(), Term::var("a").into()]);
        let diff = Term::app("g", vec![Term::var("a").into(), Term::var("b").into()]);
        assert!(term(&p, &same, &mut Substitution::new()));
        assert!(!term(&p, &diff, &mut Substitution::new()));
    }
}
