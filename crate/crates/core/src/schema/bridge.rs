use super::EvalError;
use crate::kernel::{Proof, RuleData, RuleName};
use crate::rewrite::Normalizer;
use crate::syntax::{diff_path, Expr, Formula, Path, Pos, Sequent, Side};

fn nf_equal(nz: &mut Normalizer, a: &Formula, b: &Formula) -> Result<bool, EvalError> {
    Ok(nz.equivalent(&Expr::Formula(a.clone()), &Expr::Formula(b.clone()))?)
}

/// Pairs the formulas of `from` with those of `to`, preferring syntactic
/// matches, then matches up to the theory.
pub(crate) fn align(nz: &mut Normalizer, from: &[Formula], to: &[Formula]) -> Result<Option<Vec<usize>>, EvalError> {
    if from.len() != to.len() {
        return Ok(None);
    }
    let mut pair = vec![usize::MAX; from.len()];
    let mut used = vec![false; to.len()];
    for (i, a) in from.iter().enumerate() {
        if let Some(j) = (0..to.len()).find(|&j| !used[j] && a.alpha_eq(&to[j])) {
            pair[i] = j;
            used[j] = true;
        }
    }
    for (i, a) in from.iter().enumerate() {
        if pair[i] != usize::MAX {
            continue;
        }
        let mut found = None;
        for j in 0..to.len() {
            if !used[j] && nf_equal(nz, a, &to[j])? {
                found = Some(j);
                break;
            }
        }
        match found {
            Some(j) => {
                pair[i] = j;
                used[j] = true;
            }
            None => return Ok(None),
        }
    }
    Ok(Some(pair))
}

/// Extends `p` by ℰ inferences so that it ends in `target`, one inference
/// per formula that differs syntactically.
pub(crate) fn bridge(nz: &mut Normalizer, mut p: Proof, target: &Sequent) -> Result<Proof, EvalError> {
    if p.conclusion == *target {
        return Ok(p);
    }
    let mut current = p.conclusion.clone();
    let from = current.to_string();
    let error = || EvalError::Bridge { from: from.clone(), to: target.to_string() };
    for side in [Side::Left, Side::Right] {
        let pair = align(nz, current.side(side), target.side(side))?.ok_or_else(error)?;
        for (i, &j) in pair.iter().enumerate() {
            let a = current.side(side)[i].clone();
            let b = target.side(side)[j].clone();
            if a.alpha_eq(&b) {
                continue;
            }
            let (ea, eb) = (Expr::Formula(a.clone()), Expr::Formula(b.clone()));
            let mut path = diff_path(&ea, &eb).expect("formulas differ").0;
            loop {
                let (x, y) = (ea.at(&path).expect("valid path"), eb.at(&path).expect("valid path"));
                if path.is_empty() || nz.equivalent(&x, &y)? {
                    break;
                }
                path.pop();
            }
            let to = eb.at(&path).expect("valid path");
            let mut next = current.clone();
            next.side_mut(side)[i] = b;
            let data = RuleData {
                aux: vec![Pos { side, index: i }],
                path: Some(Path(path)),
                to: Some(to),
                ..RuleData::default()
            };
            p = Proof::node(RuleName::ERule, next.clone(), vec![p], data);
            current = next;
        }
    }
    p.conclusion = target.clone();
    Ok(p)
}
