use super::{RuleData, RuleName};
use crate::syntax::{Formula, Pos, Sequent, Side};

type Res<T> = Result<T, String>;

fn aux(data: &RuleData, i: usize) -> Res<Pos> {
    data.aux.get(i).copied().ok_or_else(|| format!("missing auxiliary position {}", i + 1))
}

fn fetch(s: &Sequent, pos: Pos, side: Side) -> Res<&Formula> {
    if pos.side != side {
        return Err(format!(
            "position {pos} must be on the {} side",
            if side == Side::Left { "left" } else { "right" }
        ));
    }
    s.get(pos).ok_or_else(|| format!("position {pos} is out of range"))
}

fn distinct(a: Pos, b: Pos) -> Res<()> {
    if a == b {
        Err(format!("auxiliary positions {a} and {b} coincide"))
    } else {
        Ok(())
    }
}

/// Removes the given indices of one side, keeping order.
fn without(xs: &[Formula], drop: &[usize]) -> Vec<Formula> {
    xs.iter().enumerate().filter(|(i, _)| !drop.contains(i)).map(|(_, f)| f.clone()).collect()
}

fn principal_formula(data: &RuleData) -> Res<&Formula> {
    data.formula.as_ref().ok_or_else(|| "missing principal formula".to_string())
}

/// Conclusion of a unary quantifier rule: checks the auxiliary formula is the
/// instance `A[x\witness]` of the declared principal formula.
fn quantifier(prem: &Sequent, data: &RuleData, side: Side, universal: bool, eigen: bool) -> Res<Sequent> {
    let p = aux(data, 0)?;
    let a = fetch(prem, p, side)?;
    let principal = principal_formula(data)?;
    let (x, body) = match (principal, universal) {
        (Formula::Forall(x, b), true) | (Formula::Exists(x, b), false) => (x, b),
        _ => {
            let q = if universal { "universal" } else { "existential" };
            return Err(format!("principal formula {principal} is not {q}"));
        }
    };
    let witness = if eigen {
        let v = data.eigen.as_ref().ok_or("missing eigenvariable")?;
        crate::syntax::Term::Var(v.clone())
    } else {
        data.term.clone().ok_or("missing instantiation term")?
    };
    let instance = body.instantiate(x, &witness);
    if !instance.alpha_eq(a) {
        return Err(format!("auxiliary formula {a} is not {instance}"));
    }
    let mut out = prem.clone();
    out.side_mut(side)[p.index] = principal.clone();
    Ok(out)
}

/// Conclusion of a non-leaf inference from its premises and witness. ℰ
/// inferences are handled structurally; equivalence of the replaced
/// subexpression is the checker's concern.
pub fn infer(rule: RuleName, premises: &[&Sequent], data: &RuleData) -> Res<Sequent> {
    if premises.len() != rule.arity() {
        return Err(format!("{rule} takes {} premise(s), got {}", rule.arity(), premises.len()));
    }
    if data.aux.len() < rule.aux_count() {
        return Err(format!("{rule} needs {} auxiliary position(s), got {}", rule.aux_count(), data.aux.len()));
    }
    use RuleName::*;
    match rule {
        Ax | Link => Err(format!("{rule} is a leaf")),
        AndL | OrR | ContrL | ContrR => {
            let prem = premises[0];
            let side = if matches!(rule, AndL | ContrL) { Side::Left } else { Side::Right };
            let (p, q) = (aux(data, 0)?, aux(data, 1)?);
            distinct(p, q)?;
            let a = fetch(prem, p, side)?;
            let b = fetch(prem, q, side)?;
            let principal = match rule {
                AndL => Formula::and(a.clone(), b.clone()),
                OrR => Formula::or(a.clone(), b.clone()),
                _ => {
                    if !a.alpha_eq(b) {
                        return Err(format!("contracted formulas {a} and {b} differ"));
                    }
                    a.clone()
                }
            };
            let mut out = prem.clone();
            out.side_mut(side)[p.index] = principal;
            out.side_mut(side).remove(q.index);
            Ok(out)
        }
        NegL | NegR => {
            let prem = premises[0];
            let (from, to) = if rule == NegL { (Side::Right, Side::Left) } else { (Side::Left, Side::Right) };
            let p = aux(data, 0)?;
            let a = fetch(prem, p, from)?.clone();
            let mut out = prem.clone();
            out.side_mut(from).remove(p.index);
            out.side_mut(to).push(Formula::not(a));
            Ok(out)
        }
        ImpR => {
            let prem = premises[0];
            let (p, q) = (aux(data, 0)?, aux(data, 1)?);
            let a = fetch(prem, p, Side::Left)?.clone();
            let b = fetch(prem, q, Side::Right)?.clone();
            let mut out = prem.clone();
            out.antecedent.remove(p.index);
            out.succedent[q.index] = Formula::imp(a, b);
            Ok(out)
        }
        WeakL | WeakR => {
            let a = principal_formula(data)?.clone();
            let mut out = premises[0].clone();
            out.side_mut(if rule == WeakL { Side::Left } else { Side::Right }).push(a);
            Ok(out)
        }
        ForallL => quantifier(premises[0], data, Side::Left, true, false),
        ForallR => quantifier(premises[0], data, Side::Right, true, true),
        ExistsL => quantifier(premises[0], data, Side::Left, false, true),
        ExistsR => quantifier(premises[0], data, Side::Right, false, false),
        ERule => {
            let prem = premises[0];
            let p = aux(data, 0)?;
            let a = prem.get(p).ok_or_else(|| format!("position {p} is out of range"))?;
            let path = data.path.as_ref().ok_or("missing redex position")?;
            let to = data.to.clone().ok_or("missing replacement")?;
            a.at(path).ok_or_else(|| format!("no subexpression at {path} in {a}"))?;
            let replaced = a.replace_at(path, to).map_err(|e| e.to_string())?;
            let mut out = prem.clone();
            out.side_mut(p.side)[p.index] = replaced;
            Ok(out)
        }
        Cut | AndR | OrL | ImpL => {
            let (l, r) = (premises[0], premises[1]);
            let (p, q) = (aux(data, 0)?, aux(data, 1)?);
            let (sp, sq) = match rule {
                Cut | ImpL => (Side::Right, Side::Left),
                AndR => (Side::Right, Side::Right),
                _ => (Side::Left, Side::Left),
            };
            let a = fetch(l, p, sp)?;
            let b = fetch(r, q, sq)?;
            let principal = match rule {
                Cut => {
                    if !a.alpha_eq(b) {
                        return Err(format!("cut formulas {a} and {b} differ"));
                    }
                    None
                }
                AndR => Some(Formula::and(a.clone(), b.clone())),
                OrL => Some(Formula::or(a.clone(), b.clone())),
                _ => Some(Formula::imp(a.clone(), b.clone())),
            };
            let drop = |s: &Sequent, pos: Pos, side: Side| {
                if side == Side::Left {
                    (without(&s.antecedent, &[pos.index]), s.succedent.clone())
                } else {
                    (s.antecedent.clone(), without(&s.succedent, &[pos.index]))
                }
            };
            let (la, ls) = drop(l, p, sp);
            let (ra, rs) = drop(r, q, sq);
            let mut out = Sequent::new([la, ra].concat(), [ls, rs].concat());
            if let Some(f) = principal {
                let side = if matches!(rule, AndR) { Side::Right } else { Side::Left };
                out.side_mut(side).push(f);
            }
            Ok(out)
        }
    }
}
