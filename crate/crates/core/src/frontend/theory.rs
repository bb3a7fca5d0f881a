use std::fmt::Write as _;

use super::lexer::Tok;
use super::parser::{guess_sort, Ctx, Parser};
use super::ParseError;
use crate::rewrite::{validate_theory, Theory, DEFAULT_FUEL};
use crate::syntax::{Name, Signature, Sort};

type Res<T> = Result<T, ParseError>;

fn symbol(p: &mut Parser) -> Res<Name> {
    match p.peek().clone() {
        Tok::Ident(x) => {
            p.bump();
            Ok(x)
        }
        Tok::Num(k) => {
            p.bump();
            Ok(k.to_string().into())
        }
        Tok::Plus => {
            p.bump();
            Ok("+".into())
        }
        _ => Err(p.unexpected("a symbol name")),
    }
}

fn sort(p: &mut Parser) -> Res<Sort> {
    let (l, c) = p.span();
    match &*p.ident()? {
        "o" => Ok(Sort::Omega),
        "i" => Ok(Sort::Iota),
        s => Err(ParseError::new(l, c, format!("unknown sort `{s}` (expected o or i)"))),
    }
}

fn arg_sorts(p: &mut Parser) -> Res<Vec<Sort>> {
    let mut out = Vec::new();
    if p.eat(&Tok::LParen) && !p.eat(&Tok::RParen) {
        loop {
            out.push(sort(p)?);
            if p.eat(&Tok::RParen) {
                break;
            }
            p.expect(Tok::Comma)?;
        }
    }
    Ok(out)
}

/// Parses a theory file: declarations followed by rewrite rules `l == r;`.
pub fn parse_theory(text: &str) -> Res<Theory> {
    let mut p = Parser::new(text)?;
    let mut sig = Signature::default();
    let mut fuel = None;
    let mut rules = Vec::new();
    while !p.at_eof() {
        let (l, c) = p.span();
        let at = |e: crate::syntax::SyntaxError| ParseError::new(l, c, e.to_string());
        if p.eat_keyword("param") {
            let x = p.ident()?;
            sig.set_param(&x).map_err(at)?;
        } else if p.eat_keyword("fuel") {
            fuel = Some(p.number()?);
        } else if p.at_keyword("fun") || p.at_keyword("def") {
            let defined = p.at_keyword("def");
            p.bump();
            let name = symbol(&mut p)?;
            let args = arg_sorts(&mut p)?;
            p.expect(Tok::Colon)?;
            let result = sort(&mut p)?;
            sig.declare_fun(&name, args, result, defined).map_err(at)?;
        } else if p.at_keyword("pred") || p.at_keyword("defpred") {
            let defined = p.at_keyword("defpred");
            p.bump();
            let name = symbol(&mut p)?;
            let args = arg_sorts(&mut p)?;
            sig.declare_pred(&name, args, defined).map_err(at)?;
        } else if p.eat_keyword("schvar") {
            let x = p.ident()?;
            sig.declare_schematic(&x).map_err(at)?;
        } else {
            let th = Theory::new(sig.clone());
            let mut cx = Ctx::new(&th);
            cx.rule_mode = true;
            let start = p.clone_pos();
            let raw = p.raw()?;
            let sort = guess_sort(&sig, &raw);
            p.restore(start);
            let lhs = elab_at(&mut cx, &mut p, sort)?;
            p.expect(Tok::EqEq)?;
            let rhs = elab_at(&mut cx, &mut p, sort)?;
            rules.push((l, c, lhs, rhs));
        }
        p.expect(Tok::Semi)?;
    }
    let mut th = Theory::new(sig);
    if let Some(f) = fuel {
        th = th.with_fuel(f);
    }
    let spans: Vec<(usize, usize)> = rules.iter().map(|r| (r.0, r.1)).collect();
    for (_, _, lhs, rhs) in rules {
        th.add_rule(lhs, rhs);
    }
    if let Some(issue) = validate_theory(&th).into_iter().next() {
        let (l, c) = spans.get(issue.rule).copied().unwrap_or((1, 1));
        return Err(ParseError::new(l, c, format!("rule {}: {}", issue.text, issue.message)));
    }
    Ok(th)
}

fn elab_at(cx: &mut Ctx, p: &mut Parser, sort: Sort) -> Res<crate::syntax::Expr> {
    Ok(match sort {
        Sort::Omega => cx.num(p)?.into(),
        Sort::Iota => cx.term(p)?.into(),
        Sort::Prop => cx.formula(p)?.into(),
    })
}

fn sorts(args: &[Sort]) -> String {
    if args.is_empty() {
        return String::new();
    }
    let s: Vec<String> = args.iter().map(|s| s.to_string()).collect();
    format!("({})", s.join(", "))
}

/// Prints a theory in the format read by [`parse_theory`].
pub fn print_theory(th: &Theory) -> String {
    let mut out = String::new();
    let sig = &th.sig;
    if &*sig.param != "n" {
        writeln!(out, "param {};", sig.param).unwrap();
    }
    if th.fuel_default != DEFAULT_FUEL {
        writeln!(out, "fuel {};", th.fuel_default).unwrap();
    }
    for (name, f) in &sig.functions {
        let kw = if f.defined { "def" } else { "fun" };
        writeln!(out, "{kw} {name}{} : {};", sorts(&f.args), f.result).unwrap();
    }
    for (name, pr) in &sig.predicates {
        let kw = if pr.defined { "defpred" } else { "pred" };
        writeln!(out, "{kw} {name}{};", sorts(&pr.args)).unwrap();
    }
    for x in &sig.schematic {
        writeln!(out, "schvar {x};").unwrap();
    }
    if !th.rules.is_empty() {
        out.push('\n');
    }
    for r in &th.rules {
        writeln!(out, "{} == {};", r.lhs, r.rhs).unwrap();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    const FHAT: &str = "
        # f-hat iteration
        fun 0 : i;
        fun f(i) : i;
        def fhat(o, i) : i;
        pred P(i);
        fhat(0, x) == x;
        fhat(s(m), x) == f(fhat(m, x));
    ";

    #[test]
    fn iteration_theory_has_two_rules() {
        let th = parse_theory(FHAT).unwrap();
        assert_eq!(th.rules.len(), 2);
        assert!(validate_theory(&th).is_empty());
    }

    #[test]
    fn print_then_parse() {
        let th = parse_theory(FHAT).unwrap();
        assert_eq!(parse_theory(&print_theory(&th)).unwrap(), th);
    }

    #[test]
    fn undefined_head_is_reported_at_the_rule() {
        let e = parse_theory("fun f(i) : i;\nf(x) == x;").unwrap_err();
        assert_eq!(e.line, 2);
    }

    #[test]
    fn numeric_functions_and_plus() {
        let th = parse_theory(
            "def exp2(o) : o; def +(i, i) : i; fun 0 : i; exp2(0) == 1; exp2(m + 1) == exp2(m) + exp2(m); x + 0 == x;",
        )
        .unwrap();
        assert_eq!(th.rules.len(), 3);
    }
}
