use std::fmt::Write as _;

use super::lexer::Tok;
use super::parser::{Ctx, Parser};
use super::proof::expr_text;
use super::ParseError;
use crate::kernel::RuleData;
use crate::rewrite::Theory;
use crate::silk::{Case, SiLKStep, StepRule};
use crate::syntax::{Formula, Name, Term};

type Res<T> = Result<T, ParseError>;

/// A SiLK script file: one step per line.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScriptFile {
    pub theory: Option<String>,
    pub steps: Vec<SiLKStep>,
    /// Source line of each step.
    pub lines: Vec<usize>,
}

/// Group and pair names may be written as numerals.
fn name(p: &mut Parser) -> Res<Name> {
    match p.peek().clone() {
        Tok::Num(k) => {
            p.bump();
            Ok(k.to_string().into())
        }
        _ => p.ident(),
    }
}

/// `F`, `|- F` or `F |- F`.
fn axiom_formula(cx: &mut Ctx, p: &mut Parser) -> Res<Formula> {
    let (l, c) = p.span();
    let bad = || ParseError::new(l, c, "expected a formula `F` or an axiom `F |- F`");
    let seq = match p.peek() {
        Tok::Str(s) if s.contains("|-") => cx.sequent(p)?,
        Tok::Turnstile => cx.sequent(p)?,
        _ => {
            let f = cx.formula(p)?;
            if *p.peek() != Tok::Turnstile {
                return Ok(f);
            }
            p.bump();
            let mut rest = cx.formula_list(p)?;
            if rest.len() != 1 || rest[0] != f {
                return Err(bad());
            }
            return Ok(rest.remove(0));
        }
    };
    match (seq.antecedent.as_slice(), seq.succedent.as_slice()) {
        ([], [b]) => Ok(b.clone()),
        ([a], [b]) if a == b => Ok(b.clone()),
        _ => Err(bad()),
    }
}

struct Options {
    group: Option<Name>,
    pairs: Vec<Name>,
    new_pair: Option<Name>,
    target: Option<Name>,
}

fn option(p: &mut Parser, o: &mut Options) -> Res<()> {
    let (l, c) = p.span();
    let key = p.ident()?;
    p.expect(Tok::Assign)?;
    match &*key {
        "group" => o.group = Some(name(p)?),
        "pair" | "pairs" => {
            o.pairs.push(name(p)?);
            while p.eat(&Tok::Comma) {
                o.pairs.push(name(p)?);
            }
        }
        "as" => o.new_pair = Some(name(p)?),
        "target" => o.target = Some(name(p)?),
        other => return Err(ParseError::new(l, c, format!("unknown option `{other}`"))),
    }
    Ok(())
}

fn at_option(p: &Parser) -> bool {
    matches!(p.peek(), Tok::Ident(_)) && *p.peek_at(1) == Tok::Assign
}

fn at_end(p: &Parser) -> bool {
    matches!(p.peek(), Tok::Eof | Tok::Semi)
}

/// Parses one step; fields and `key=value` options may come in any order.
fn step(cx: &mut Ctx, p: &mut Parser) -> Res<SiLKStep> {
    let (l, c) = p.span();
    let cmd = p.ident()?;
    let mut o = Options { group: None, pairs: Vec::new(), new_pair: None, target: None };
    while at_option(p) {
        option(p, &mut o)?;
    }
    let mut formula = None;
    let mut annot = None;
    let mut pattern = None;
    let mut vars = Vec::new();
    let mut terms = Vec::new();
    let mut g = None;
    let mut f = None;
    let mut data = RuleData::default();
    let mut rho = None;
    match &*cmd {
        "ax1r" | "ax2r" | "axl" => formula = Some(axiom_formula(cx, p)?),
        "rho" => {
            let (cl, cc) = p.span();
            let case = match &*p.ident()? {
                "bc" => Case::Bc,
                "sc" => Case::Sc,
                other => return Err(ParseError::new(cl, cc, format!("expected bc or sc, found `{other}`"))),
            };
            let arity = match *p.peek() {
                Tok::Num(k) => {
                    p.bump();
                    Some(k as usize)
                }
                _ => None,
            };
            let rule = p.rule_name()?;
            rho = Some((case, arity.unwrap_or(rule.arity()), rule));
        }
        "call"
            if o.target.is_none()
                && !at_option(p)
                && matches!(p.peek(), Tok::Ident(_) | Tok::Num(_))
                && !p.at_keyword("g") =>
        {
            o.target = Some(name(p)?);
        }
        _ => {}
    }
    while !at_end(p) {
        if at_option(p) {
            option(p, &mut o)?;
            continue;
        }
        let (fl, fc) = p.span();
        let field = p.ident()?;
        match &*field {
            "annot" => annot = Some(cx.num(p)?),
            "pattern" => pattern = Some(cx.sequent(p)?),
            "vars" => vars = p.name_list()?,
            "terms" => terms = cx.term_list(p)?,
            "g" => g = Some(cx.num(p)?),
            "f" => f = Some(cx.num(p)?),
            "aux" => data.aux = p.positions()?,
            "formula" => data.formula = Some(cx.formula(p)?),
            "term" => data.term = Some(cx.term(p)?),
            "eigen" => data.eigen = Some(p.ident()?),
            "at" => data.path = Some(p.path()?),
            "to" => data.to = Some(cx.any_expr(p)?),
            other => return Err(ParseError::new(fl, fc, format!("unknown field `{other}` for {cmd}"))),
        }
    }
    let missing = |what: &str| ParseError::new(l, c, format!("{cmd} needs {what}"));
    let rule = match &*cmd {
        "ax1r" => StepRule::Ax1R { formula: formula.unwrap() },
        "ax2r" => StepRule::Ax2R { formula: formula.unwrap() },
        "axl" => StepRule::AxL { formula: formula.unwrap(), annotation: annot.ok_or_else(|| missing("`annot N`"))? },
        "ccr" => StepRule::CcR,
        "ccl" => StepRule::CcL,
        "br" => StepRule::Br,
        "rho" => {
            let (case, arity, rule) = rho.unwrap();
            StepRule::Rho { case, arity, rule, data }
        }
        "clbc" => StepRule::ClBc { pattern, vars },
        "cllke" => StepRule::ClLKE,
        "clsc" => StepRule::ClSc { annotation: annot },
        "cycle" => StepRule::Cycle { terms },
        "call" => StepRule::Call {
            target: o.target.take().ok_or_else(|| missing("`target=NAME`"))?,
            g: g.ok_or_else(|| missing("`g N`"))?,
            f,
            terms,
        },
        other => return Err(ParseError::new(l, c, format!("unknown SiLK rule `{other}`"))),
    };
    if o.target.is_some() {
        return Err(ParseError::new(l, c, format!("{cmd} takes no target")));
    }
    Ok(SiLKStep { rule, group: o.group, pairs: o.pairs, new_pair: o.new_pair })
}

pub fn parse_script(text: &str, theory: &Theory) -> Res<ScriptFile> {
    let mut cx = Ctx::new(theory);
    let mut out = ScriptFile { theory: None, steps: Vec::new(), lines: Vec::new() };
    for (i, line) in text.lines().enumerate() {
        let mut p = Parser::at(line, i + 1, 1)?;
        if p.at_eof() {
            continue;
        }
        if p.eat_keyword("theory") {
            if out.theory.is_some() || !out.steps.is_empty() {
                return Err(p.err("`theory` must come first"));
            }
            out.theory = Some(p.string()?);
        } else if p.eat_keyword("let") {
            cx.let_binding(&mut p)?;
        } else {
            out.steps.push(step(&mut cx, &mut p)?);
            out.lines.push(i + 1);
        }
        p.eat(&Tok::Semi);
        p.expect_eof()?;
    }
    Ok(out)
}

fn terms(ts: &[Term]) -> String {
    let s: Vec<String> = ts.iter().map(|t| t.to_string()).collect();
    format!("[{}]", s.join(", "))
}

pub fn print_step(s: &SiLKStep, theory: &Theory) -> String {
    let mut out = String::new();
    match &s.rule {
        StepRule::Ax1R { formula } => write!(out, "ax1r {formula}"),
        StepRule::Ax2R { formula } => write!(out, "ax2r {formula}"),
        StepRule::AxL { formula, annotation } => write!(out, "axl {formula} annot {annotation}"),
        StepRule::CcR => write!(out, "ccr"),
        StepRule::CcL => write!(out, "ccl"),
        StepRule::Br => write!(out, "br"),
        StepRule::Rho { case, arity, rule, data } => {
            write!(out, "rho {case} {arity} {}", rule.short()).unwrap();
            if !data.aux.is_empty() {
                let a: Vec<String> = data.aux.iter().map(|a| a.to_string()).collect();
                write!(out, " aux {}", a.join(", ")).unwrap();
            }
            if let Some(x) = &data.formula {
                write!(out, " formula ({x})").unwrap();
            }
            if let Some(x) = &data.term {
                write!(out, " term {x}").unwrap();
            }
            if let Some(x) = &data.eigen {
                write!(out, " eigen {x}").unwrap();
            }
            if let Some(x) = &data.path {
                write!(out, " at {x}").unwrap();
            }
            if let Some(x) = &data.to {
                write!(out, " to {}", expr_text(x, theory)).unwrap();
            }
            Ok(())
        }
        StepRule::ClBc { pattern, vars } => {
            out.push_str("clbc");
            if let Some(x) = pattern {
                write!(out, " pattern \"{x}\"").unwrap();
            }
            write!(out, " vars [{}]", vars.join(", "))
        }
        StepRule::ClLKE => write!(out, "cllke"),
        StepRule::ClSc { annotation } => {
            out.push_str("clsc");
            match annotation {
                Some(a) => write!(out, " annot {a}"),
                None => Ok(()),
            }
        }
        StepRule::Cycle { terms: ts } => write!(out, "cycle terms {}", terms(ts)),
        StepRule::Call { target, g, f, terms: ts } => {
            write!(out, "call target={target} g {g}").unwrap();
            if let Some(f) = f {
                write!(out, " f {f}").unwrap();
            }
            write!(out, " terms {}", terms(ts))
        }
    }
    .unwrap();
    if let Some(g) = &s.group {
        write!(out, " group={g}").unwrap();
    }
    if !s.pairs.is_empty() {
        write!(out, " pair={}", s.pairs.join(",")).unwrap();
    }
    if let Some(a) = &s.new_pair {
        write!(out, " as={a}").unwrap();
    }
    out
}

pub fn print_script(f: &ScriptFile, theory: &Theory) -> String {
    let mut out = String::new();
    if let Some(t) = &f.theory {
        writeln!(out, "theory {t:?}").unwrap();
    }
    for s in &f.steps {
        out.push_str(&print_step(s, theory));
        out.push('\n');
    }
    out
}
