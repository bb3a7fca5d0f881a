use std::collections::BTreeSet;

use super::{counts_by_name, infer, CheckReport, Failure, LinkEnv, Mode, Proof, RuleName};
use crate::rewrite::{Normalizer, Theory, DEFAULT_FUEL};
use crate::syntax::{multiset_eq, Name, Sequent};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CheckOptions {
    pub fuel: u64,
    /// Accept ℰ inferences without a redex witness by comparing normal forms
    /// of the whole sequents.
    pub lenient: bool,
}

impl Default for CheckOptions {
    fn default() -> Self {
        CheckOptions { fuel: DEFAULT_FUEL, lenient: false }
    }
}

/// Node-by-node proof checker. Holds a normalizer so that ℰ-checks across
/// many proofs share one memo table.
pub struct Checker<'t> {
    pub normalizer: Normalizer<'t>,
    pub lenient: bool,
}

impl<'t> Checker<'t> {
    pub fn new(theory: &'t Theory, opts: CheckOptions) -> Self {
        Checker { normalizer: Normalizer::new(theory, opts.fuel), lenient: opts.lenient }
    }

    pub fn check(&mut self, proof: &Proof, mode: Mode, env: &LinkEnv, allowed: &BTreeSet<Name>) -> CheckReport {
        let mut failures = Vec::new();
        // (node, index of parent entry, child number)
        let mut entries: Vec<(usize, usize)> = Vec::new();
        let mut stack: Vec<(&Proof, Option<usize>, usize)> = vec![(proof, None, 0)];
        while let Some((node, parent, child)) = stack.pop() {
            let id = entries.len();
            entries.push((parent.unwrap_or(usize::MAX), child));
            if let Err(message) = self.check_node(node, mode, env, allowed) {
                failures.push(Failure { path: render_path(&entries, id), rule: node.rule.to_string(), message });
            }
            for (i, p) in node.premises.iter().enumerate().rev() {
                stack.push((p, Some(id), i));
            }
        }
        CheckReport::new(failures, counts_by_name(proof))
    }

    /// Checks a single inference against its premises' conclusions.
    pub fn check_node(
        &mut self,
        node: &Proof,
        mode: Mode,
        env: &LinkEnv,
        allowed: &BTreeSet<Name>,
    ) -> Result<(), String> {
        match node.rule {
            RuleName::Ax => {
                let s = &node.conclusion;
                if !node.premises.is_empty() {
                    return Err("axiom has premises".into());
                }
                if s.antecedent.len() != 1 || s.succedent.len() != 1 || !s.antecedent[0].alpha_eq(&s.succedent[0]) {
                    return Err(format!("{s} is not an axiom A |- A"));
                }
                Ok(())
            }
            RuleName::Link => {
                if mode < Mode::LKS {
                    return Err(format!("links are not allowed in {mode}"));
                }
                if !node.premises.is_empty() {
                    return Err("link has premises".into());
                }
                let link = node.data.link.as_ref().ok_or("link without target")?;
                let target = env.get(&link.proof).ok_or_else(|| format!("unknown proof symbol `{}`", link.proof))?;
                if link.terms.len() != target.vars.len() {
                    return Err(format!(
                        "link to `{}` supplies {} term(s) for {} variable(s)",
                        link.proof,
                        link.terms.len(),
                        target.vars.len()
                    ));
                }
                let extra: Vec<_> = link.param.free_params().into_iter().filter(|p| !allowed.contains(p)).collect();
                if !extra.is_empty() {
                    return Err(format!(
                        "link parameter {} uses disallowed parameter(s) {}",
                        link.param,
                        extra.join(", ")
                    ));
                }
                let expected = target.instance(&link.param, &link.terms);
                if !node.conclusion.equiv(&expected) {
                    return Err(format!("link conclusion {} differs from {expected}", node.conclusion));
                }
                Ok(())
            }
            RuleName::ERule if mode < Mode::LKE => Err(format!("ℰ inferences are not allowed in {mode}")),
            RuleName::ERule if self.lenient && node.data.path.is_none() => {
                let [prem] = node.premises.as_slice() else {
                    return Err("ERule takes 1 premise".into());
                };
                let a = self.normalizer.sequent(&prem.conclusion).map_err(|e| e.to_string())?;
                let b = self.normalizer.sequent(&node.conclusion).map_err(|e| e.to_string())?;
                if multiset_eq(&a.antecedent, &b.antecedent) && multiset_eq(&a.succedent, &b.succedent) {
                    Ok(())
                } else {
                    Err(format!("{} and {} have different normal forms", prem.conclusion, node.conclusion))
                }
            }
            rule => {
                let premises: Vec<&Sequent> = node.premises.iter().map(|p| &p.conclusion).collect();
                let inferred = infer(rule, &premises, &node.data)?;
                if rule == RuleName::ERule {
                    let p = node.data.aux[0];
                    let path = node.data.path.as_ref().expect("checked by infer");
                    let old = premises[0].get(p).and_then(|a| a.at(path)).expect("checked by infer");
                    let new = node.data.to.as_ref().expect("checked by infer");
                    if !self.normalizer.equivalent(&old, new).map_err(|e| e.to_string())? {
                        return Err(format!("{old} and {new} are not equivalent under the theory"));
                    }
                }
                if matches!(rule, RuleName::ForallR | RuleName::ExistsL) {
                    let v = node.data.eigen.as_ref().expect("checked by infer");
                    if self.normalizer.theory().sig.is_declared(v) {
                        return Err(format!("eigenvariable {v} is a declared symbol"));
                    }
                    if node.conclusion.free_vars().contains(v) {
                        return Err(format!("eigenvariable {v} occurs in the conclusion"));
                    }
                }
                if !inferred.equiv(&node.conclusion) {
                    return Err(format!("conclusion {} does not match inferred {inferred}", node.conclusion));
                }
                Ok(())
            }
        }
    }
}

fn render_path(entries: &[(usize, usize)], mut id: usize) -> String {
    let mut parts = Vec::new();
    while entries[id].0 != usize::MAX {
        parts.push(entries[id].1.to_string());
        id = entries[id].0;
    }
    if parts.is_empty() {
        return ".".into();
    }
    parts.reverse();
    parts.join(".")
}

pub fn check_proof(
    proof: &Proof,
    mode: Mode,
    theory: &Theory,
    env: &LinkEnv,
    allowed: &BTreeSet<Name>,
    opts: CheckOptions,
) -> CheckReport {
    Checker::new(theory, opts).check(proof, mode, env, allowed)
}
