use std::fmt;

use super::ParseError;
use crate::syntax::Name;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Tok {
    Ident(Name),
    Num(u64),
    Str(String),
    Turnstile,
    LParen,
    RParen,
    LBrace,
    RBrace,
    LBrack,
    RBrack,
    Comma,
    Semi,
    Colon,
    Dot,
    Assign,
    EqEq,
    Arrow,
    And,
    Or,
    Not,
    Plus,
    Eof,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Ident(x) => write!(f, "`{x}`"),
            Tok::Num(k) => write!(f, "`{k}`"),
            Tok::Str(s) => write!(f, "string {s:?}"),
            Tok::Eof => f.write_str("end of input"),
            other => {
                let s = match other {
                    Tok::Turnstile => "|-",
                    Tok::LParen => "(",
                    Tok::RParen => ")",
                    Tok::LBrace => "{",
                    Tok::RBrace => "}",
                    Tok::LBrack => "[",
                    Tok::RBrack => "]",
                    Tok::Comma => ",",
                    Tok::Semi => ";",
                    Tok::Colon => ":",
                    Tok::Dot => ".",
                    Tok::Assign => "=",
                    Tok::EqEq => "==",
                    Tok::Arrow => "->",
                    Tok::And => "/\\",
                    Tok::Or => "\\/",
                    Tok::Not => "~",
                    Tok::Plus => "+",
                    _ => unreachable!(),
                };
                write!(f, "`{s}`")
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Spanned {
    pub tok: Tok,
    pub line: usize,
    pub col: usize,
}

fn is_ident_char(c: char) -> bool {
    c.is_alphanumeric() || c == '_' || c == '\''
}

/// Tokenizes `text`, numbering from the given line and column. `#` starts a
/// comment running to the end of the line.
pub fn lex(text: &str, line: usize, col: usize) -> Result<Vec<Spanned>, ParseError> {
    let mut out = Vec::new();
    let chars: Vec<char> = text.chars().collect();
    let (mut i, mut line, mut col) = (0, line, col);
    while i < chars.len() {
        let c = chars[i];
        let (l0, c0) = (line, col);
        let mut push = |tok: Tok, len: usize, i: &mut usize, col: &mut usize| {
            out.push(Spanned { tok, line: l0, col: c0 });
            *i += len;
            *col += len;
        };
        let next = chars.get(i + 1).copied();
        match c {
            '\n' => {
                i += 1;
                line += 1;
                col = 1;
            }
            c if c.is_whitespace() => {
                i += 1;
                col += 1;
            }
            '#' => {
                while i < chars.len() && chars[i] != '\n' {
                    i += 1;
                }
            }
            '"' => {
                let start = i + 1;
                let mut j = start;
                while j < chars.len() && chars[j] != '"' && chars[j] != '\n' {
                    j += 1;
                }
                if j >= chars.len() || chars[j] != '"' {
                    return Err(ParseError::new(l0, c0, "unterminated string"));
                }
                let s: String = chars[start..j].iter().collect();
                let len = j + 1 - i;
                push(Tok::Str(s), len, &mut i, &mut col);
            }
            '|' if next == Some('-') => push(Tok::Turnstile, 2, &mut i, &mut col),
            '-' if next == Some('>') => push(Tok::Arrow, 2, &mut i, &mut col),
            '/' if next == Some('\\') => push(Tok::And, 2, &mut i, &mut col),
            '\\' if next == Some('/') => push(Tok::Or, 2, &mut i, &mut col),
            '=' if next == Some('=') => push(Tok::EqEq, 2, &mut i, &mut col),
            '=' => push(Tok::Assign, 1, &mut i, &mut col),
            '(' => push(Tok::LParen, 1, &mut i, &mut col),
            ')' => push(Tok::RParen, 1, &mut i, &mut col),
            '{' => push(Tok::LBrace, 1, &mut i, &mut col),
            '}' => push(Tok::RBrace, 1, &mut i, &mut col),
            '[' => push(Tok::LBrack, 1, &mut i, &mut col),
            ']' => push(Tok::RBrack, 1, &mut i, &mut col),
            ',' => push(Tok::Comma, 1, &mut i, &mut col),
            ';' => push(Tok::Semi, 1, &mut i, &mut col),
            ':' => push(Tok::Colon, 1, &mut i, &mut col),
            '.' => push(Tok::Dot, 1, &mut i, &mut col),
            '~' => push(Tok::Not, 1, &mut i, &mut col),
            '+' => push(Tok::Plus, 1, &mut i, &mut col),
            c if c.is_ascii_digit() => {
                let mut j = i;
                while j < chars.len() && chars[j].is_ascii_digit() {
                    j += 1;
                }
                let s: String = chars[i..j].iter().collect();
                let k = s.parse().map_err(|_| ParseError::new(l0, c0, format!("numeral {s} is too large")))?;
                push(Tok::Num(k), j - i, &mut i, &mut col);
            }
            c if is_ident_char(c) => {
                let mut j = i;
                while j < chars.len() && is_ident_char(chars[j]) {
                    j += 1;
                }
                let s: String = chars[i..j].iter().collect();
                push(Tok::Ident(s.into()), j - i, &mut i, &mut col);
            }
            other => return Err(ParseError::new(l0, c0, format!("unexpected character `{other}`"))),
        }
    }
    out.push(Spanned { tok: Tok::Eof, line, col });
    Ok(out)
}
