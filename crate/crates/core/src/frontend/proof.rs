use std::fmt::Write as _;

use super::lexer::Tok;
use super::parser::{guess_sort, Ctx, Parser};
use super::{header, ParseError};
use crate::kernel::{LinkData, LinkEnv, LinkTarget, Mode, Proof, RuleData};
use crate::rewrite::Theory;
use crate::schema::{ProofSchema, SchemaComponent};
use crate::syntax::{Expr, Sequent, Term};

type Res<T> = Result<T, ParseError>;

/// An LK/LKE/LKS proof file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LkFile {
    pub theory: Option<String>,
    /// Calculus the proof is meant for; the CLI flag overrides it.
    pub mode: Option<Mode>,
    pub env: LinkEnv,
    pub proof: Proof,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SchemaFile {
    pub theory: Option<String>,
    pub schema: ProofSchema,
}

/// `rule NAME { field; ... premises }`, each premise a nested `rule` block,
/// optionally wrapped in `premise { ... }`.
pub(crate) fn node(cx: &mut Ctx, p: &mut Parser) -> Res<Proof> {
    p.keyword("rule")?;
    let (l, c) = p.span();
    let rule = p.rule_name()?;
    p.expect(Tok::LBrace)?;
    let mut conclusion: Option<Sequent> = None;
    let mut data = RuleData::default();
    let mut premises = Vec::new();
    while !p.eat(&Tok::RBrace) {
        if p.at_keyword("rule") {
            premises.push(node(cx, p)?);
            continue;
        }
        if p.eat_keyword("premise") {
            p.expect(Tok::LBrace)?;
            premises.push(node(cx, p)?);
            p.expect(Tok::RBrace)?;
            continue;
        }
        let (l, c) = p.span();
        let field = p.ident()?;
        match &*field {
            "conclusion" => conclusion = Some(cx.sequent(p)?),
            "aux" => data.aux = p.positions()?,
            "formula" => data.formula = Some(cx.formula(p)?),
            "term" => data.term = Some(cx.term(p)?),
            "eigen" => data.eigen = Some(p.ident()?),
            "at" => data.path = Some(p.path()?),
            "to" => data.to = Some(cx.any_expr(p)?),
            "link" => {
                let proof = p.ident()?;
                let param = cx.num(p)?;
                let terms = if p.eat_keyword("terms") { cx.term_list(p)? } else { Vec::new() };
                data.link = Some(LinkData { proof, param, terms });
            }
            other => return Err(ParseError::new(l, c, format!("unknown field `{other}`"))),
        }
        p.expect(Tok::Semi)?;
    }
    let conclusion = conclusion.ok_or_else(|| ParseError::new(l, c, format!("{rule} node without conclusion")))?;
    Ok(Proof { conclusion, rule, premises, data })
}

fn target(cx: &mut Ctx, p: &mut Parser) -> Res<(crate::syntax::Name, LinkTarget)> {
    let name = p.ident()?;
    p.keyword("pattern")?;
    let pattern = cx.sequent(p)?;
    let vars = if p.eat_keyword("vars") { p.name_list()? } else { Vec::new() };
    Ok((name, LinkTarget { pattern, param: cx.theory.sig.param.clone(), vars }))
}

pub fn parse_lk(text: &str, theory: &Theory) -> Res<LkFile> {
    let mut p = Parser::new(text)?;
    let theory_ref = header(&mut p)?;
    let mut cx = Ctx::new(theory);
    let mut env = LinkEnv::default();
    let mut mode = None;
    loop {
        if p.eat_keyword("let") {
            cx.let_binding(&mut p)?;
        } else if p.eat_keyword("target") {
            let (name, t) = target(&mut cx, &mut p)?;
            env.insert(&name, t);
        } else if p.eat_keyword("mode") {
            mode = Some(p.mode()?);
        } else {
            break;
        }
        p.expect(Tok::Semi)?;
    }
    let proof = node(&mut cx, &mut p)?;
    p.expect_eof()?;
    Ok(LkFile { theory: theory_ref, mode, env, proof })
}

pub fn parse_schema(text: &str, theory: &Theory) -> Res<SchemaFile> {
    let mut p = Parser::new(text)?;
    let theory_ref = header(&mut p)?;
    let mut cx = Ctx::new(theory);
    let mut components = Vec::new();
    while !p.at_eof() {
        if p.eat_keyword("let") {
            cx.let_binding(&mut p)?;
            p.expect(Tok::Semi)?;
            continue;
        }
        p.keyword("component")?;
        let (name, t) = target(&mut cx, &mut p)?;
        let step_param = if p.eat_keyword("step_param") { Some(cx.num(&mut p)?) } else { None };
        p.expect(Tok::LBrace)?;
        p.keyword("base")?;
        let base = node(&mut cx, &mut p)?;
        let step = if p.eat_keyword("step") { Some(node(&mut cx, &mut p)?) } else { None };
        p.expect(Tok::RBrace)?;
        components.push(SchemaComponent { name, pattern: t.pattern, vars: t.vars, step_param, base, step });
    }
    Ok(SchemaFile { theory: theory_ref, schema: ProofSchema { param: theory.sig.param.clone(), components } })
}

fn terms(ts: &[Term]) -> String {
    let s: Vec<String> = ts.iter().map(|t| t.to_string()).collect();
    format!("[{}]", s.join(", "))
}

/// `e`, with a sort suffix when its shape would suggest another sort.
pub(crate) fn expr_text(e: &Expr, theory: &Theory) -> String {
    let text = e.to_string();
    let guessed = Parser::new(&text).ok().and_then(|mut p| p.raw().ok()).map(|r| guess_sort(&theory.sig, &r));
    if guessed == Some(e.sort()) {
        text
    } else {
        format!("{text} : {}", e.sort())
    }
}

pub(crate) fn write_node(out: &mut String, p: &Proof, depth: usize, theory: &Theory) {
    let pad = "  ".repeat(depth);
    writeln!(out, "{pad}rule {} {{", p.rule).unwrap();
    writeln!(out, "{pad}  conclusion {};", p.conclusion).unwrap();
    let d = &p.data;
    if !d.aux.is_empty() {
        let s: Vec<String> = d.aux.iter().map(|a| a.to_string()).collect();
        writeln!(out, "{pad}  aux {};", s.join(", ")).unwrap();
    }
    if let Some(f) = &d.formula {
        writeln!(out, "{pad}  formula {f};").unwrap();
    }
    if let Some(t) = &d.term {
        writeln!(out, "{pad}  term {t};").unwrap();
    }
    if let Some(x) = &d.eigen {
        writeln!(out, "{pad}  eigen {x};").unwrap();
    }
    if let Some(path) = &d.path {
        writeln!(out, "{pad}  at {path};").unwrap();
    }
    if let Some(e) = &d.to {
        writeln!(out, "{pad}  to {};", expr_text(e, theory)).unwrap();
    }
    if let Some(l) = &d.link {
        if l.terms.is_empty() {
            writeln!(out, "{pad}  link {} {};", l.proof, l.param).unwrap();
        } else {
            writeln!(out, "{pad}  link {} {} terms {};", l.proof, l.param, terms(&l.terms)).unwrap();
        }
    }
    for q in &p.premises {
        write_node(out, q, depth + 1, theory);
    }
    writeln!(out, "{pad}}}").unwrap();
}

pub fn print_proof(p: &Proof, theory: &Theory) -> String {
    let mut out = String::new();
    write_node(&mut out, p, 0, theory);
    out
}

fn theory_line(out: &mut String, theory: &Option<String>) {
    if let Some(t) = theory {
        writeln!(out, "theory {t:?};\n").unwrap();
    }
}

fn names(vs: &[crate::syntax::Name]) -> String {
    format!("[{}]", vs.join(", "))
}

pub fn print_lk(f: &LkFile, theory: &Theory) -> String {
    let mut out = String::new();
    theory_line(&mut out, &f.theory);
    if let Some(m) = f.mode {
        writeln!(out, "mode {m};").unwrap();
    }
    for (name, t) in &f.env.targets {
        writeln!(out, "target {name} pattern {} vars {};", t.pattern, names(&t.vars)).unwrap();
    }
    write_node(&mut out, &f.proof, 0, theory);
    out
}

pub fn print_schema(f: &SchemaFile, theory: &Theory) -> String {
    let mut out = String::new();
    theory_line(&mut out, &f.theory);
    for c in &f.schema.components {
        write!(out, "component {} pattern {} vars {}", c.name, c.pattern, names(&c.vars)).unwrap();
        if let Some(k) = &c.step_param {
            write!(out, " step_param {k}").unwrap();
        }
        out.push_str(" {\n  base\n");
        write_node(&mut out, &c.base, 1, theory);
        if let Some(s) = &c.step {
            out.push_str("  step\n");
            write_node(&mut out, s, 1, theory);
        }
        out.push_str("}\n\n");
    }
    out
}
