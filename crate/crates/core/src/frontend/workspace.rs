use std::path::{Path, PathBuf};

use thiserror::Error;

use super::{
    parse_lk, parse_schema, parse_script, parse_theory, theory_directive, LkFile, ParseError, SchemaFile, ScriptFile,
};
use crate::kernel::CheckOptions;
use crate::rewrite::Theory;

#[derive(Debug, Error)]
pub enum LoadError {
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("{path}:{error}")]
    Parse { path: String, error: ParseError },
    #[error("{0}: no theory given (add `theory \"file.thy\";` or pass --theory)")]
    NoTheory(String),
    #[error("{0}: unknown file kind (expected .thy, .lkp, .sch or .slk)")]
    UnknownKind(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FileKind {
    Theory,
    Lk,
    Schema,
    Script,
}

impl FileKind {
    pub fn of(path: &Path) -> Option<FileKind> {
        match path.extension()?.to_str()? {
            "thy" => Some(FileKind::Theory),
            "lkp" => Some(FileKind::Lk),
            "sch" => Some(FileKind::Schema),
            "slk" => Some(FileKind::Script),
            _ => None,
        }
    }
}

#[derive(Clone, Debug)]
pub enum Document {
    Theory,
    Lk(LkFile),
    Schema(SchemaFile),
    Script(ScriptFile),
}

/// A theory and one document checked against it. Everything is parsed
/// before any checking starts.
#[derive(Clone, Debug)]
pub struct Workspace {
    pub theory_path: PathBuf,
    pub theory: Theory,
    pub path: PathBuf,
    pub document: Document,
    pub options: CheckOptions,
}

fn read(path: &Path) -> Result<String, LoadError> {
    std::fs::read_to_string(path).map_err(|source| LoadError::Io { path: path.display().to_string(), source })
}

fn parsed<T>(path: &Path, r: Result<T, ParseError>) -> Result<T, LoadError> {
    r.map_err(|error| LoadError::Parse { path: path.display().to_string(), error })
}

pub fn load_theory(path: &Path) -> Result<Theory, LoadError> {
    parsed(path, parse_theory(&read(path)?))
}

impl Workspace {
    /// Loads `path`; its `theory` directive is resolved relative to the file
    /// unless `theory` overrides it. A fuel of `None` keeps the theory's own.
    pub fn load(path: &Path, theory: Option<&Path>, fuel: Option<u64>, lenient: bool) -> Result<Workspace, LoadError> {
        let shown = path.display().to_string();
        let kind = FileKind::of(path).ok_or_else(|| LoadError::UnknownKind(shown.clone()))?;
        let text = read(path)?;
        let theory_path = match (kind, theory) {
            (FileKind::Theory, _) => path.to_path_buf(),
            (_, Some(t)) => t.to_path_buf(),
            (_, None) => {
                let rel = theory_directive(&text).ok_or_else(|| LoadError::NoTheory(shown.clone()))?;
                path.parent().unwrap_or(Path::new("")).join(rel)
            }
        };
        let th = load_theory(&theory_path)?;
        let th = match fuel {
            Some(f) => th.with_fuel(f),
            None => th,
        };
        let document = match kind {
            FileKind::Theory => Document::Theory,
            FileKind::Lk => Document::Lk(parsed(path, parse_lk(&text, &th))?),
            FileKind::Schema => Document::Schema(parsed(path, parse_schema(&text, &th))?),
            FileKind::Script => Document::Script(parsed(path, parse_script(&text, &th))?),
        };
        let options = CheckOptions { fuel: th.fuel_default, lenient };
        Ok(Workspace { theory_path, theory: th, path: path.to_path_buf(), document, options })
    }
}
