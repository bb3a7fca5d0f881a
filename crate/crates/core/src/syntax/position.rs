use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use super::{Arg, Expr, Formula, NumExpr, SyntaxError, Term};

/// Child-index path into a formula. Atom and application children are their
/// arguments; binders have their body as child 0; `x[e]` has `e` as child 0;
/// the numeral `k+1` has `k` as child 0.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Default)]
pub struct Path(pub Vec<usize>);

impl Path {
    pub fn root() -> Path {
        Path(Vec::new())
    }

    pub fn child(&self, i: usize) -> Path {
        let mut v = self.0.clone();
        v.push(i);
        Path(v)
    }
}

impl fmt::Display for Path {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str(".");
        }
        for (i, k) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(".")?;
            }
            write!(f, "{k}")?;
        }
        Ok(())
    }
}

impl FromStr for Path {
    type Err = SyntaxError;

    fn from_str(s: &str) -> Result<Path, SyntaxError> {
        let s = s.trim();
        if s.is_empty() || s == "." {
            return Ok(Path::root());
        }
        s.split('.')
            .map(|p| p.parse::<usize>().map_err(|_| SyntaxError::BadPath(s.to_string())))
            .collect::<Result<_, _>>()
            .map(Path)
    }
}

fn bad(path: &[usize]) -> SyntaxError {
    SyntaxError::BadPath(Path(path.to_vec()).to_string())
}

fn arg_expr(a: &Arg) -> Expr {
    match a {
        Arg::Num(e) => Expr::Num(e.clone()),
        Arg::Term(t) => Expr::Term(t.clone()),
    }
}

fn expr_arg(e: Expr, path: &[usize]) -> Result<Arg, SyntaxError> {
    match e {
        Expr::Num(e) => Ok(Arg::Num(e)),
        Expr::Term(t) => Ok(Arg::Term(t)),
        Expr::Formula(_) => Err(bad(path)),
    }
}

fn check_sort(old: &Expr, new: &Expr) -> Result<(), SyntaxError> {
    if old.sort() == new.sort() {
        Ok(())
    } else {
        Err(SyntaxError::SortMismatch { name: old.to_string(), expected: old.sort(), found: new.sort() })
    }
}

impl Expr {
    /// The subexpression at `path`.
    pub fn at(&self, path: &[usize]) -> Option<Expr> {
        let Some((&i, rest)) = path.split_first() else {
            return Some(self.clone());
        };
        let child = match self {
            Expr::Formula(f) => match f {
                Formula::Atom(_, args) => arg_expr(args.get(i)?),
                Formula::True | Formula::False => return None,
                Formula::Not(a) | Formula::Forall(_, a) | Formula::Exists(_, a) | Formula::ForallNum(_, a) => {
                    if i != 0 {
                        return None;
                    }
                    Expr::Formula((**a).clone())
                }
                Formula::And(a, b) | Formula::Or(a, b) | Formula::Imp(a, b) => match i {
                    0 => Expr::Formula((**a).clone()),
                    1 => Expr::Formula((**b).clone()),
                    _ => return None,
                },
            },
            Expr::Term(t) => match t {
                Term::Var(_) => return None,
                Term::Schem(_, e) if i == 0 => Expr::Num(e.clone()),
                Term::Schem(..) => return None,
                Term::App(_, args) => arg_expr(args.get(i)?),
            },
            Expr::Num(e) => Expr::Num(num_child(e, i)?),
        };
        child.at(rest)
    }

    /// Replaces the subexpression at `path` by `new`, which must have the same sort.
    pub fn replace_at(&self, path: &[usize], new: Expr) -> Result<Expr, SyntaxError> {
        let Some((&i, rest)) = path.split_first() else {
            check_sort(self, &new)?;
            return Ok(new);
        };
        let err = || bad(path);
        Ok(match self {
            Expr::Formula(f) => Expr::Formula(match f {
                Formula::Atom(p, args) => Formula::Atom(p.clone(), replace_arg(args, i, rest, new, path)?),
                Formula::True | Formula::False => return Err(err()),
                Formula::Not(a) | Formula::Forall(_, a) | Formula::Exists(_, a) | Formula::ForallNum(_, a) => {
                    if i != 0 {
                        return Err(err());
                    }
                    let inner = Arc::new(sub_formula(a, rest, new)?);
                    match f {
                        Formula::Not(_) => Formula::Not(inner),
                        Formula::Forall(x, _) => Formula::Forall(x.clone(), inner),
                        Formula::Exists(x, _) => Formula::Exists(x.clone(), inner),
                        Formula::ForallNum(x, _) => Formula::ForallNum(x.clone(), inner),
                        _ => unreachable!(),
                    }
                }
                Formula::And(a, b) | Formula::Or(a, b) | Formula::Imp(a, b) => {
                    let (a, b) = match i {
                        0 => (Arc::new(sub_formula(a, rest, new)?), b.clone()),
                        1 => (a.clone(), Arc::new(sub_formula(b, rest, new)?)),
                        _ => return Err(err()),
                    };
                    match f {
                        Formula::And(..) => Formula::And(a, b),
                        Formula::Or(..) => Formula::Or(a, b),
                        _ => Formula::Imp(a, b),
                    }
                }
            }),
            Expr::Term(t) => Expr::Term(match t {
                Term::Var(_) => return Err(err()),
                Term::Schem(x, e) if i == 0 => Term::Schem(x.clone(), sub_num(e, rest, new)?),
                Term::Schem(..) => return Err(err()),
                Term::App(g, args) => Term::App(g.clone(), replace_arg(args, i, rest, new, path)?),
            }),
            Expr::Num(e) => Expr::Num(match e {
                NumExpr::Lit(k) if *k > 0 && i == 0 => NumExpr::succ(sub_num(&NumExpr::Lit(k - 1), rest, new)?),
                NumExpr::Lit(_) | NumExpr::Param(_) => return Err(err()),
                NumExpr::Succ(a) if i == 0 => NumExpr::succ(sub_num(a, rest, new)?),
                NumExpr::Succ(_) => return Err(err()),
                NumExpr::Add(a, b) => match i {
                    0 => NumExpr::Add(Arc::new(sub_num(a, rest, new)?), b.clone()),
                    1 => NumExpr::Add(a.clone(), Arc::new(sub_num(b, rest, new)?)),
                    _ => return Err(err()),
                },
                NumExpr::App(g, args) => {
                    let mut v = args.to_vec();
                    let slot = v.get_mut(i).ok_or_else(err)?;
                    *slot = sub_num(slot, rest, new)?;
                    NumExpr::App(g.clone(), v.into())
                }
            }),
        })
    }
}

/// Same constructor, symbol and number of children.
fn head_eq(a: &Expr, b: &Expr) -> bool {
    use Formula as F;
    match (a, b) {
        (Expr::Formula(x), Expr::Formula(y)) => match (x, y) {
            (F::Atom(p, xs), F::Atom(q, ys)) => p == q && xs.len() == ys.len(),
            (F::True, F::True) | (F::False, F::False) | (F::Not(_), F::Not(_)) => true,
            (F::And(..), F::And(..)) | (F::Or(..), F::Or(..)) | (F::Imp(..), F::Imp(..)) => true,
            (F::Forall(v, _), F::Forall(w, _)) | (F::Exists(v, _), F::Exists(w, _)) => v == w,
            (F::ForallNum(v, _), F::ForallNum(w, _)) => v == w,
            _ => false,
        },
        (Expr::Term(x), Expr::Term(y)) => match (x, y) {
            (Term::Var(v), Term::Var(w)) => v == w,
            (Term::Schem(v, _), Term::Schem(w, _)) => v == w,
            (Term::App(f, xs), Term::App(g, ys)) => f == g && xs.len() == ys.len(),
            _ => false,
        },
        (Expr::Num(x), Expr::Num(y)) => match (x, y) {
            (NumExpr::Lit(i), NumExpr::Lit(j)) => i == j,
            (NumExpr::Param(v), NumExpr::Param(w)) => v == w,
            (NumExpr::Succ(_), NumExpr::Succ(_)) | (NumExpr::Add(..), NumExpr::Add(..)) => true,
            (NumExpr::Lit(k), NumExpr::Succ(_)) | (NumExpr::Succ(_), NumExpr::Lit(k)) => *k > 0,
            (NumExpr::App(f, xs), NumExpr::App(g, ys)) => f == g && xs.len() == ys.len(),
            _ => false,
        },
        _ => false,
    }
}

/// Smallest position at which `a` and `b` differ: the deepest node above
/// every difference. `None` when they are equal.
pub fn diff_path(a: &Expr, b: &Expr) -> Option<Path> {
    if a == b {
        return None;
    }
    let mut path = Vec::new();
    let (mut a, mut b) = (a.clone(), b.clone());
    loop {
        if !head_eq(&a, &b) {
            return Some(Path(path));
        }
        let mut differing = None;
        for i in 0.. {
            match (a.at(&[i]), b.at(&[i])) {
                (Some(x), Some(y)) => {
                    if x != y {
                        if differing.is_some() {
                            return Some(Path(path));
                        }
                        differing = Some((i, x, y));
                    }
                }
                (None, None) => break,
                _ => return Some(Path(path)),
            }
        }
        match differing {
            Some((i, x, y)) => {
                path.push(i);
                a = x;
                b = y;
            }
            None => return Some(Path(path)),
        }
    }
}

fn num_child(e: &NumExpr, i: usize) -> Option<NumExpr> {
    match e {
        NumExpr::Lit(k) if *k > 0 && i == 0 => Some(NumExpr::Lit(k - 1)),
        NumExpr::Lit(_) | NumExpr::Param(_) => None,
        NumExpr::Succ(a) if i == 0 => Some((**a).clone()),
        NumExpr::Succ(_) => None,
        NumExpr::Add(a, b) => match i {
            0 => Some((**a).clone()),
            1 => Some((**b).clone()),
            _ => None,
        },
        NumExpr::App(_, args) => args.get(i).cloned(),
    }
}

fn sub_formula(f: &Formula, rest: &[usize], new: Expr) -> Result<Formula, SyntaxError> {
    match Expr::Formula(f.clone()).replace_at(rest, new)? {
        Expr::Formula(f) => Ok(f),
        _ => unreachable!("sort preserved"),
    }
}

fn sub_num(e: &NumExpr, rest: &[usize], new: Expr) -> Result<NumExpr, SyntaxError> {
    match Expr::Num(e.clone()).replace_at(rest, new)? {
        Expr::Num(e) => Ok(e),
        _ => unreachable!("sort preserved"),
    }
}

fn replace_arg(args: &[Arg], i: usize, rest: &[usize], new: Expr, path: &[usize]) -> Result<Arc<[Arg]>, SyntaxError> {
    let mut v = args.to_vec();
    let slot = v.get_mut(i).ok_or_else(|| bad(path))?;
    *slot = expr_arg(arg_expr(slot).replace_at(rest, new)?, path)?;
    Ok(v.into())
}

impl Formula {
    pub fn at(&self, path: &Path) -> Option<Expr> {
        Expr::Formula(self.clone()).at(&path.0)
    }

    pub fn replace_at(&self, path: &Path, new: Expr) -> Result<Formula, SyntaxError> {
        match Expr::Formula(self.clone()).replace_at(&path.0, new)? {
            Expr::Formula(f) => Ok(f),
            _ => unreachable!("sort preserved"),
        }
    }
}
