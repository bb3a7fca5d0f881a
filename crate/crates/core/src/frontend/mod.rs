//! Text formats (`.thy`, `.lkp`, `.sch`, `.slk`), printers, reports and
//! workspace loading.

mod lexer;
mod parser;
mod proof;
mod report;
mod script;
mod theory;
mod workspace;

#[cfg(test)]
mod tests;

use thiserror::Error;

pub use parser::guess_sort;
pub use proof::{parse_lk, parse_schema, print_lk, print_proof, print_schema, LkFile, SchemaFile};
pub use report::{Report, StatsRow, FORMAT_VERSION};
pub use script::{parse_script, print_script, print_step, ScriptFile};
pub use theory::{parse_theory, print_theory};
pub use workspace::{load_theory, Document, FileKind, LoadError, Workspace};

/// A syntax or name-resolution error at a 1-based line and column.
#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("{line}:{col}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub message: String,
}

impl ParseError {
    pub fn new(line: usize, col: usize, message: impl Into<String>) -> ParseError {
        ParseError { line, col, message: message.into() }
    }
}

/// Optional leading `theory "path";`.
fn header(p: &mut parser::Parser) -> Result<Option<String>, ParseError> {
    if !p.eat_keyword("theory") {
        return Ok(None);
    }
    let path = p.string()?;
    p.expect(lexer::Tok::Semi)?;
    Ok(Some(path))
}

/// The `theory` directive of a proof, schema or script file, read without
/// parsing the rest.
pub fn theory_directive(text: &str) -> Option<String> {
    for (i, line) in text.lines().enumerate() {
        let Ok(mut p) = parser::Parser::at(line, i + 1, 1) else { return None };
        if p.at_eof() {
            continue;
        }
        return if p.eat_keyword("theory") { p.string().ok() } else { None };
    }
    None
}
