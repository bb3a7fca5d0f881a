//! From SiLK proofs to proof schemata and induction formulas.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::kernel::{CheckOptions, CheckReport};
use crate::rewrite::Theory;
use crate::schema::{ProofSchema, SchemaComponent};
use crate::silk::{check_script, leading_group, Basecase, Collection, Group, SiLKStep, SilkError, Stepcase};
use crate::syntax::{Formula, Name, NumExpr, Sequent, Substitution};

#[cfg(test)]
mod tests;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum TranslateError {
    #[error("script is not a SiLK proof ({verdict})")]
    NotAProof { verdict: String, report: CheckReport },
    #[error(transparent)]
    Silk(#[from] SilkError),
}

type Res<T> = Result<T, TranslateError>;

fn replay(steps: &[SiLKStep], theory: &Theory, opts: CheckOptions) -> Res<crate::silk::Outcome> {
    let out = check_script(steps, theory, opts);
    if out.verdict != crate::silk::Verdict::Proof {
        return Err(TranslateError::NotAProof { verdict: out.verdict.to_string(), report: out.report });
    }
    Ok(out)
}

/// Reorders a SiLK proof so that groups are built one after another in the
/// order they are closed. Every step in the output names its group and pairs.
pub fn to_ppsnf(steps: &[SiLKStep], theory: &Theory, opts: CheckOptions) -> Res<Vec<SiLKStep>> {
    let out = replay(steps, theory, opts)?;
    let index: BTreeMap<&Name, usize> =
        out.collection.groups.iter().map(|g| (&g.name, g.closure_index.expect("proof has closed groups"))).collect();
    let mut resolved = out.resolved.clone();
    resolved.sort_by_key(|s| index[s.group.as_ref().expect("resolved steps name their group")]);
    Ok(resolved)
}

/// `true` if groups are built one at a time in closure order.
pub fn is_ppsnf(steps: &[SiLKStep], theory: &Theory, opts: CheckOptions) -> Res<bool> {
    let out = replay(steps, theory, opts)?;
    let index: BTreeMap<&Name, usize> =
        out.collection.groups.iter().map(|g| (&g.name, g.closure_index.expect("closed"))).collect();
    let order: Vec<usize> = out.resolved.iter().map(|s| index[s.group.as_ref().expect("resolved")]).collect();
    Ok(order.windows(2).all(|w| w[0] <= w[1]))
}

/// Groups that become schema components, leading group first.
fn components_order(c: &Collection) -> Res<Vec<&Group>> {
    let lead = leading_group(c)?;
    if lead.has_empty_stepcase() {
        return Ok(vec![lead]);
    }
    let mut gs: Vec<&Group> = c.groups.iter().filter(|g| !g.has_empty_stepcase()).collect();
    gs.sort_by_key(|g| std::cmp::Reverse(g.closure_index));
    Ok(gs)
}

pub fn collection_to_schema(c: &Collection, param: &Name) -> Res<ProofSchema> {
    let components = components_order(c)?
        .into_iter()
        .map(|g| {
            let pair = &g.pairs[0];
            let pattern = g.pattern.clone().expect("closed group has a pattern");
            let (step, step_param) = match &pair.stepcase {
                Stepcase::Closed(_) => (pair.step_proof.clone(), Some(NumExpr::succ(NumExpr::Param(param.clone())))),
                _ => (None, None),
            };
            SchemaComponent {
                name: g.name.clone(),
                pattern: pattern.sequent,
                vars: pattern.vars,
                step_param,
                base: pair.base_proof.clone(),
                step,
            }
        })
        .collect();
    Ok(ProofSchema { param: param.clone(), components })
}

/// Translates a SiLK proof into a proof schema with one component per group
/// that has a non-empty stepcase.
pub fn silk_to_schema(steps: &[SiLKStep], theory: &Theory, opts: CheckOptions) -> Res<ProofSchema> {
    let normal = to_ppsnf(steps, theory, opts)?;
    let out = replay(&normal, theory, opts)?;
    collection_to_schema(&out.collection, &theory.sig.param)
}

fn conj(fs: impl IntoIterator<Item = Formula>) -> Option<Formula> {
    fs.into_iter().reduce(Formula::and)
}

/// `⋀Δ → ⋁Γ`, with `⋁∅ = false` and the implication dropped when `Δ = ∅`.
pub fn sequent_formula(s: &Sequent) -> Formula {
    let succ = s.succedent.iter().cloned().reduce(Formula::or).unwrap_or(Formula::False);
    match conj(s.antecedent.iter().cloned()) {
        Some(a) => Formula::imp(a, succ),
        None => succ,
    }
}

/// The induction formula of a closed collection.
pub fn interpret(c: &Collection, param: &Name) -> Res<Formula> {
    let lead = leading_group(c)?;
    if lead.has_empty_stepcase() {
        let Basecase::Closed(pi) = &lead.pairs[0].basecase else { unreachable!("closed group") };
        return Ok(sequent_formula(pi));
    }
    let groups = components_order(c)?;
    let x: Name = if &**param == "x" { "y".into() } else { "x".into() };
    let at = |b: &Sequent, k: NumExpr| b.subst(&Substitution::param(param, k));
    let xv = NumExpr::Param(x.clone());
    let mut bases = Vec::new();
    let mut steps = Vec::new();
    for g in &groups {
        let b = &g.pattern.as_ref().expect("closed group has a pattern").sequent;
        bases.push(sequent_formula(&at(b, NumExpr::ZERO)));
        steps.push(Formula::imp(
            sequent_formula(&at(b, xv.clone())),
            sequent_formula(&at(b, NumExpr::succ(xv.clone()))),
        ));
    }
    let hyp = Formula::and(conj(bases).expect("non-empty"), Formula::forall_num(&x, conj(steps).expect("non-empty")));
    let b0 = &groups[0].pattern.as_ref().expect("pattern").sequent;
    let concl = if b0.antecedent.iter().any(|f| f.free_params().contains(param)) {
        Formula::forall_num(param, sequent_formula(b0))
    } else {
        let succ = b0.succedent.iter().cloned().reduce(Formula::or).unwrap_or(Formula::False);
        let q = Formula::forall_num(param, succ);
        match conj(b0.antecedent.iter().cloned()) {
            Some(a) => Formula::imp(a, q),
            None => q,
        }
    };
    Ok(Formula::imp(hyp, concl))
}

/// Replays a script and interprets the final collection.
pub fn interpret_script(steps: &[SiLKStep], theory: &Theory, opts: CheckOptions) -> Res<Formula> {
    let out = replay(steps, theory, opts)?;
    interpret(&out.collection, &theory.sig.param)
}
