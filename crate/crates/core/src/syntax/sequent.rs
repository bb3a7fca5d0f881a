use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::{Formula, Name, NumExpr};

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize, Deserialize)]
pub enum Side {
    Left,
    Right,
}

impl Side {
    pub fn letter(self) -> char {
        match self {
            Side::Left => 'l',
            Side::Right => 'r',
        }
    }
}

/// A formula occurrence inside a sequent: side plus index into that side.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Pos {
    pub side: Side,
    pub index: usize,
}

impl Pos {
    pub fn left(index: usize) -> Pos {
        Pos { side: Side::Left, index }
    }

    pub fn right(index: usize) -> Pos {
        Pos { side: Side::Right, index }
    }
}

impl fmt::Display for Pos {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.side.letter(), self.index)
    }
}

/// `antecedent |- succedent`. The derived `PartialEq` is order-sensitive;
/// sequent identity in the calculus is [`Sequent::equiv`].
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Sequent {
    pub antecedent: Vec<Formula>,
    pub succedent: Vec<Formula>,
}

impl Sequent {
    pub fn new(antecedent: Vec<Formula>, succedent: Vec<Formula>) -> Sequent {
        Sequent { antecedent, succedent }
    }

    pub fn axiom(a: Formula) -> Sequent {
        Sequent::new(vec![a.clone()], vec![a])
    }

    pub fn side(&self, side: Side) -> &Vec<Formula> {
        match side {
            Side::Left => &self.antecedent,
            Side::Right => &self.succedent,
        }
    }

    pub fn side_mut(&mut self, side: Side) -> &mut Vec<Formula> {
        match side {
            Side::Left => &mut self.antecedent,
            Side::Right => &mut self.succedent,
        }
    }

    pub fn get(&self, pos: Pos) -> Option<&Formula> {
        self.side(pos.side).get(pos.index)
    }

    pub fn formulas(&self) -> impl Iterator<Item = &Formula> {
        self.antecedent.iter().chain(self.succedent.iter())
    }

    /// Multiset equality of both sides, formulas compared up to bound-variable renaming.
    pub fn equiv(&self, other: &Sequent) -> bool {
        multiset_eq(&self.antecedent, &other.antecedent) && multiset_eq(&self.succedent, &other.succedent)
    }

    pub fn free_vars(&self) -> BTreeSet<Name> {
        let mut out = BTreeSet::new();
        self.formulas().for_each(|f| f.collect_vars(&mut out));
        out
    }

    pub fn free_params(&self) -> BTreeSet<Name> {
        let mut out = BTreeSet::new();
        self.formulas().for_each(|f| f.collect_params(&mut out));
        out
    }

    pub fn map(&self, mut f: impl FnMut(&Formula) -> Formula) -> Sequent {
        Sequent {
            antecedent: self.antecedent.iter().map(&mut f).collect(),
            succedent: self.succedent.iter().map(&mut f).collect(),
        }
    }

    pub fn try_map<E>(&self, mut f: impl FnMut(&Formula) -> Result<Formula, E>) -> Result<Sequent, E> {
        Ok(Sequent {
            antecedent: self.antecedent.iter().map(&mut f).collect::<Result<_, _>>()?,
            succedent: self.succedent.iter().map(&mut f).collect::<Result<_, _>>()?,
        })
    }

    pub fn size(&self) -> usize {
        self.antecedent.len() + self.succedent.len()
    }
}

/// Multiset equality under alpha-equivalence.
pub fn multiset_eq(a: &[Formula], b: &[Formula]) -> bool {
    if a.len() != b.len() {
        return false;
    }
    let mut used = vec![false; b.len()];
    'outer: for x in a {
        for (j, y) in b.iter().enumerate() {
            if !used[j] && x.alpha_eq(y) {
                used[j] = true;
                continue 'outer;
            }
        }
        return false;
    }
    true
}

pub fn sequent_eq(a: &Sequent, b: &Sequent) -> bool {
    a.equiv(b)
}

fn fmt_list(f: &mut fmt::Formatter<'_>, xs: &[Formula]) -> fmt::Result {
    for (i, x) in xs.iter().enumerate() {
        if i > 0 {
            f.write_str(", ")?;
        }
        write!(f, "{x}")?;
    }
    Ok(())
}

impl fmt::Display for Sequent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_list(f, &self.antecedent)?;
        if !self.antecedent.is_empty() {
            f.write_str(" ")?;
        }
        f.write_str("|-")?;
        if !self.succedent.is_empty() {
            f.write_str(" ")?;
        }
        fmt_list(f, &self.succedent)
    }
}

/// Stepcase sequent carrying the instance expression it claims to prove.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct AnnotatedSequent {
    pub sequent: Sequent,
    pub annotation: NumExpr,
}

impl fmt::Display for AnnotatedSequent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_list(f, &self.sequent.antecedent)?;
        if !self.sequent.antecedent.is_empty() {
            f.write_str(" ")?;
        }
        write!(f, "|-{{{}}}", self.annotation)?;
        if !self.sequent.succedent.is_empty() {
            f.write_str(" ")?;
        }
        fmt_list(f, &self.sequent.succedent)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::Term;

    fn atom(p: &str) -> Formula {
        Formula::atom(p, vec![])
    }

    #[test]
    fn multiset_symmetry() {
        let a = Sequent::new(vec![atom("A"), atom("B")], vec![atom("C")]);
        let b = Sequent::new(vec![atom("B"), atom("A")], vec![atom("C")]);
        assert!(a.equiv(&b));
    }

    #[test]
    fn multiplicity_matters() {
        let a = Sequent::new(vec![atom("A"), atom("A")], vec![atom("C")]);
        let b = Sequent::new(vec![atom("A")], vec![atom("C")]);
        assert!(!a.equiv(&b));
    }

    #[test]
    fn binders_may_be_renamed() {
        let px = |x: &str| Formula::atom("P", vec![Term::var(x).into()]);
        let a = Sequent::new(vec![Formula::forall("x", px("x"))], vec![]);
        let b = Sequent::new(vec![Formula::forall("z", px("z"))], vec![]);
        assert!(a.equiv(&b));
    }

    #[test]
    fn display_forms() {
        let s = Sequent::new(vec![], vec![atom("B")]);
        assert_eq!(s.to_string(), "|- B");
        let a = AnnotatedSequent { sequent: Sequent::axiom(atom("A")), annotation: NumExpr::succ(NumExpr::param("n")) };
        assert_eq!(a.to_string(), "A |-{s(n)} A");
    }
}
