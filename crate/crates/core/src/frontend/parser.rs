use std::collections::HashMap;

use super::lexer::{lex, Spanned, Tok};
use super::ParseError;
use crate::kernel::{Mode, RuleName};
use crate::rewrite::Theory;
use crate::syntax::{Elaborator, Expr, Formula, Name, NumExpr, Path, Pos, Raw, Sequent, Side, Sort, Term};

type Res<T> = Result<T, ParseError>;

pub struct Parser {
    toks: Vec<Spanned>,
    pos: usize,
}

impl Parser {
    pub fn new(text: &str) -> Res<Parser> {
        Self::at(text, 1, 1)
    }

    pub fn at(text: &str, line: usize, col: usize) -> Res<Parser> {
        Ok(Parser { toks: lex(text, line, col)?, pos: 0 })
    }

    pub fn clone_pos(&self) -> usize {
        self.pos
    }

    pub fn restore(&mut self, pos: usize) {
        self.pos = pos;
    }

    pub fn peek(&self) -> &Tok {
        &self.toks[self.pos].tok
    }

    pub fn peek_at(&self, k: usize) -> &Tok {
        &self.toks[(self.pos + k).min(self.toks.len() - 1)].tok
    }

    pub fn span(&self) -> (usize, usize) {
        let t = &self.toks[self.pos];
        (t.line, t.col)
    }

    pub fn bump(&mut self) -> Spanned {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    pub fn err(&self, msg: impl Into<String>) -> ParseError {
        let (l, c) = self.span();
        ParseError::new(l, c, msg)
    }

    pub fn unexpected(&self, wanted: &str) -> ParseError {
        self.err(format!("expected {wanted}, found {}", self.peek()))
    }

    pub fn eat(&mut self, tok: &Tok) -> bool {
        if self.peek() == tok {
            self.bump();
            true
        } else {
            false
        }
    }

    pub fn expect(&mut self, tok: Tok) -> Res<()> {
        if self.eat(&tok) {
            Ok(())
        } else {
            Err(self.unexpected(&tok.to_string()))
        }
    }

    pub fn at_eof(&self) -> bool {
        *self.peek() == Tok::Eof
    }

    pub fn expect_eof(&self) -> Res<()> {
        if self.at_eof() {
            Ok(())
        } else {
            Err(self.err(format!("unexpected {}", self.peek())))
        }
    }

    pub fn at_keyword(&self, kw: &str) -> bool {
        matches!(self.peek(), Tok::Ident(x) if &**x == kw)
    }

    pub fn eat_keyword(&mut self, kw: &str) -> bool {
        if self.at_keyword(kw) {
            self.bump();
            true
        } else {
            false
        }
    }

    pub fn keyword(&mut self, kw: &str) -> Res<()> {
        if self.eat_keyword(kw) {
            Ok(())
        } else {
            Err(self.unexpected(&format!("`{kw}`")))
        }
    }

    pub fn ident(&mut self) -> Res<Name> {
        match self.peek().clone() {
            Tok::Ident(x) => {
                self.bump();
                Ok(x)
            }
            _ => Err(self.unexpected("a name")),
        }
    }

    pub fn number(&mut self) -> Res<u64> {
        match *self.peek() {
            Tok::Num(k) => {
                self.bump();
                Ok(k)
            }
            _ => Err(self.unexpected("a number")),
        }
    }

    pub fn string(&mut self) -> Res<String> {
        match self.peek().clone() {
            Tok::Str(s) => {
                self.bump();
                Ok(s)
            }
            _ => Err(self.unexpected("a quoted string")),
        }
    }

    /// `[a, b, ...]` of names.
    pub fn name_list(&mut self) -> Res<Vec<Name>> {
        self.expect(Tok::LBrack)?;
        let mut out = Vec::new();
        if !self.eat(&Tok::RBrack) {
            loop {
                out.push(self.ident()?);
                if self.eat(&Tok::RBrack) {
                    break;
                }
                self.expect(Tok::Comma)?;
            }
        }
        Ok(out)
    }

    pub fn can_start_expr(&self) -> bool {
        matches!(self.peek(), Tok::Ident(_) | Tok::Num(_) | Tok::LParen | Tok::Not)
    }

    /// Untyped expression: formula connectives, `+` and applications.
    pub fn raw(&mut self) -> Res<Raw> {
        if let Some(q) = self.quantifier()? {
            return Ok(q);
        }
        let lhs = self.raw_or()?;
        if self.eat(&Tok::Arrow) {
            let rhs = self.raw()?;
            return Ok(Raw::Imp(Box::new(lhs), Box::new(rhs)));
        }
        Ok(lhs)
    }

    fn quantifier(&mut self) -> Res<Option<Raw>> {
        let kind = match self.peek() {
            Tok::Ident(x) if &**x == "forall" || &**x == "exists" => x.clone(),
            _ => return Ok(None),
        };
        self.bump();
        let x = self.ident()?;
        let numeric = if self.eat(&Tok::Colon) {
            match self.ident()? {
                s if &*s == "o" && &*kind == "forall" => true,
                s if &*s == "i" => false,
                s => return Err(self.err(format!("unsupported binder sort `{s}`"))),
            }
        } else {
            false
        };
        self.expect(Tok::Dot)?;
        let body = Box::new(self.raw()?);
        Ok(Some(match (&*kind, numeric) {
            (_, true) => Raw::ForallNum(x, body),
            ("forall", _) => Raw::Forall(x, body),
            _ => Raw::Exists(x, body),
        }))
    }

    fn raw_or(&mut self) -> Res<Raw> {
        let mut lhs = self.raw_and()?;
        while self.eat(&Tok::Or) {
            lhs = Raw::Or(Box::new(lhs), Box::new(self.raw_and()?));
        }
        Ok(lhs)
    }

    fn raw_and(&mut self) -> Res<Raw> {
        let mut lhs = self.raw_unary()?;
        while self.eat(&Tok::And) {
            lhs = Raw::And(Box::new(lhs), Box::new(self.raw_unary()?));
        }
        Ok(lhs)
    }

    fn raw_unary(&mut self) -> Res<Raw> {
        if self.eat(&Tok::Not) {
            return Ok(Raw::Not(Box::new(self.raw_unary()?)));
        }
        if let Some(q) = self.quantifier()? {
            return Ok(q);
        }
        self.raw_sum()
    }

    fn raw_sum(&mut self) -> Res<Raw> {
        let mut lhs = self.raw_primary()?;
        while self.eat(&Tok::Plus) {
            lhs = Raw::Plus(Box::new(lhs), Box::new(self.raw_primary()?));
        }
        Ok(lhs)
    }

    fn raw_primary(&mut self) -> Res<Raw> {
        match self.peek().clone() {
            Tok::Num(k) => {
                self.bump();
                Ok(Raw::Num(k))
            }
            Tok::LParen => {
                self.bump();
                let e = self.raw()?;
                self.expect(Tok::RParen)?;
                Ok(e)
            }
            Tok::Ident(x) => {
                self.bump();
                match &*x {
                    "true" => return Ok(Raw::True),
                    "false" => return Ok(Raw::False),
                    _ => {}
                }
                if self.eat(&Tok::LParen) {
                    let mut args = Vec::new();
                    if !self.eat(&Tok::RParen) {
                        loop {
                            args.push(self.raw()?);
                            if self.eat(&Tok::RParen) {
                                break;
                            }
                            self.expect(Tok::Comma)?;
                        }
                    }
                    Ok(Raw::App(x, args))
                } else if self.eat(&Tok::LBrack) {
                    let e = self.raw()?;
                    self.expect(Tok::RBrack)?;
                    Ok(Raw::Schem(x, Box::new(e)))
                } else {
                    Ok(Raw::Ident(x))
                }
            }
            _ => Err(self.unexpected("an expression")),
        }
    }

    /// `l0`, `r3`.
    pub fn position(&mut self) -> Res<Pos> {
        let (l, c) = self.span();
        let x = self.ident()?;
        let side = match x.chars().next() {
            Some('l') => Side::Left,
            Some('r') => Side::Right,
            _ => return Err(ParseError::new(l, c, format!("`{x}` is not a position like l0 or r1"))),
        };
        let index =
            x[1..].parse().map_err(|_| ParseError::new(l, c, format!("`{x}` is not a position like l0 or r1")))?;
        Ok(Pos { side, index })
    }

    pub fn positions(&mut self) -> Res<Vec<Pos>> {
        let mut out = vec![self.position()?];
        while self.eat(&Tok::Comma) {
            out.push(self.position()?);
        }
        Ok(out)
    }

    /// `.` for the root, else `0.1.2`.
    pub fn path(&mut self) -> Res<Path> {
        if self.eat(&Tok::Dot) {
            return Ok(Path(Vec::new()));
        }
        let mut out = vec![self.number()? as usize];
        while *self.peek() == Tok::Dot && matches!(self.peek_at(1), Tok::Num(_)) {
            self.bump();
            out.push(self.number()? as usize);
        }
        Ok(Path(out))
    }

    /// `w:l`, `forall:r`, `ImpL`, ...
    pub fn rule_name(&mut self) -> Res<RuleName> {
        let (l, c) = self.span();
        let mut s = self.ident()?.to_string();
        if self.eat(&Tok::Colon) {
            s.push(':');
            s.push_str(&self.ident()?);
        }
        s.parse().map_err(|e: String| ParseError::new(l, c, e))
    }

    pub fn mode(&mut self) -> Res<Mode> {
        let (l, c) = self.span();
        let m = self.ident()?;
        m.parse().map_err(|e: String| ParseError::new(l, c, e))
    }
}

/// Elaboration context: the theory plus `let` abbreviations for formula lists.
pub struct Ctx<'t> {
    pub theory: &'t Theory,
    pub lets: HashMap<Name, Vec<Formula>>,
    pub rule_mode: bool,
}

impl<'t> Ctx<'t> {
    pub fn new(theory: &'t Theory) -> Self {
        Ctx { theory, lets: HashMap::new(), rule_mode: false }
    }

    fn elaborator(&self) -> Elaborator<'t> {
        if self.rule_mode {
            Elaborator::rule(&self.theory.sig)
        } else {
            Elaborator::proof(&self.theory.sig)
        }
    }

    /// Runs `f` on the contents of a quoted string, or on `p` itself.
    fn quoted<T>(&mut self, p: &mut Parser, f: impl FnOnce(&mut Self, &mut Parser) -> Res<T>) -> Res<T> {
        if let Tok::Str(s) = p.peek().clone() {
            let (l, c) = p.span();
            p.bump();
            let mut inner = Parser::at(&s, l, c + 1)?;
            let v = f(self, &mut inner)?;
            inner.expect_eof()?;
            Ok(v)
        } else {
            f(self, p)
        }
    }

    fn elab<T>(
        &self,
        p: &mut Parser,
        go: impl FnOnce(&mut Elaborator<'t>, &Raw) -> Result<T, crate::syntax::SyntaxError>,
    ) -> Res<T> {
        let (l, c) = p.span();
        let raw = p.raw()?;
        go(&mut self.elaborator(), &raw).map_err(|e| ParseError::new(l, c, e.to_string()))
    }

    pub fn formula(&mut self, p: &mut Parser) -> Res<Formula> {
        self.quoted(p, |cx, p| cx.elab(p, |e, r| e.formula(r)))
    }

    pub fn term(&mut self, p: &mut Parser) -> Res<Term> {
        self.quoted(p, |cx, p| cx.elab(p, |e, r| e.term(r)))
    }

    pub fn num(&mut self, p: &mut Parser) -> Res<NumExpr> {
        self.quoted(p, |cx, p| cx.elab(p, |e, r| e.num(r)))
    }

    /// An expression whose sort is read off its shape unless followed by
    /// `: o`, `: i` or `: prop`.
    pub fn any_expr(&mut self, p: &mut Parser) -> Res<Expr> {
        self.quoted(p, |cx, p| {
            let (l, c) = p.span();
            let raw = p.raw()?;
            let sort = if p.eat(&Tok::Colon) {
                let (sl, sc) = p.span();
                match &*p.ident()? {
                    "o" => Sort::Omega,
                    "i" => Sort::Iota,
                    "prop" => Sort::Prop,
                    s => return Err(ParseError::new(sl, sc, format!("unknown sort `{s}`"))),
                }
            } else {
                guess_sort(&cx.theory.sig, &raw)
            };
            cx.elaborator().expr(&raw, sort).map_err(|e| ParseError::new(l, c, e.to_string()))
        })
    }

    /// `[t1, t2, ...]`.
    pub fn term_list(&mut self, p: &mut Parser) -> Res<Vec<Term>> {
        p.expect(Tok::LBrack)?;
        let mut out = Vec::new();
        if !p.eat(&Tok::RBrack) {
            loop {
                out.push(self.term(p)?);
                if p.eat(&Tok::RBrack) {
                    break;
                }
                p.expect(Tok::Comma)?;
            }
        }
        Ok(out)
    }

    /// Comma-separated formulas; abbreviations are spliced in.
    pub fn formula_list(&mut self, p: &mut Parser) -> Res<Vec<Formula>> {
        let mut out = Vec::new();
        if !p.can_start_expr() && !matches!(p.peek(), Tok::Str(_)) {
            return Ok(out);
        }
        loop {
            if list_ends(p) {
                return Ok(out);
            }
            match p.peek().clone() {
                Tok::Ident(x)
                    if self.lets.contains_key(&x)
                        && self.theory.sig.predicate(&x).is_none()
                        && !matches!(p.peek_at(1), Tok::LParen | Tok::LBrack) =>
                {
                    p.bump();
                    out.extend(self.lets[&x].iter().cloned());
                }
                _ => out.push(self.formula(p)?),
            }
            if !p.eat(&Tok::Comma) {
                return Ok(out);
            }
        }
    }

    pub fn sequent(&mut self, p: &mut Parser) -> Res<Sequent> {
        self.quoted(p, |cx, p| {
            let antecedent = cx.formula_list(p)?;
            p.expect(Tok::Turnstile)?;
            let succedent = cx.formula_list(p)?;
            Ok(Sequent::new(antecedent, succedent))
        })
    }

    /// `let NAME = F, G, ...;`
    pub fn let_binding(&mut self, p: &mut Parser) -> Res<()> {
        let name = p.ident()?;
        p.expect(Tok::Assign)?;
        let fs = self.formula_list(p)?;
        self.lets.insert(name, fs);
        Ok(())
    }
}

/// Words that end a formula list when not applied, and `key=` options.
const LIST_END: [&str; 4] = ["vars", "step_param", "annot", "terms"];

fn list_ends(p: &Parser) -> bool {
    match p.peek() {
        Tok::Ident(x) => {
            *p.peek_at(1) == Tok::Assign
                || (LIST_END.contains(&&**x) && !matches!(p.peek_at(1), Tok::LParen | Tok::LBrack))
        }
        _ => false,
    }
}

/// Sort of an expression inferred from its head symbol.
pub fn guess_sort(sig: &crate::syntax::Signature, raw: &Raw) -> Sort {
    match raw {
        Raw::Num(_) => Sort::Omega,
        Raw::Schem(..) => Sort::Iota,
        Raw::Plus(a, _) => match guess_sort(sig, a) {
            Sort::Omega => Sort::Omega,
            _ => Sort::Iota,
        },
        Raw::App(x, _) if &**x == "s" => Sort::Omega,
        Raw::Ident(x) | Raw::App(x, _) => {
            if let Some(f) = sig.function(x) {
                f.result
            } else if sig.predicate(x).is_some() {
                Sort::Prop
            } else if **x == *sig.param {
                Sort::Omega
            } else {
                Sort::Iota
            }
        }
        _ => Sort::Prop,
    }
}
