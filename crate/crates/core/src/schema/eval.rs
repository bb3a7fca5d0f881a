use std::collections::{BTreeSet, HashMap};

use super::bridge::bridge;
use super::{check_schema, prefixed, step_offset, EvalError, ProofSchema};
use crate::kernel::{
    counts_by_name, CheckOptions, CheckReport, Checker, Failure, LinkEnv, Mode, Proof, RuleData, RuleName,
};
use crate::rewrite::{Normalizer, Theory};
use crate::syntax::{NumExpr, Sequent, Substitution, Term};

/// One link rewrite `(psi, beta, t̄) ⇒ proof`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Expansion {
    pub target: String,
    pub numeral: u64,
    pub terms: Vec<Term>,
}

#[derive(Clone, Debug)]
pub struct UnrollTrace {
    pub alpha: u64,
    pub expansions: Vec<Expansion>,
    pub rewrite_steps: u64,
    /// Links expanded, sequents as instantiated; ℰ inferences bridge
    /// instances that differ only up to the theory.
    pub unrolled: Proof,
    /// The unrolled proof with every sequent normalized and ℰ inferences
    /// removed: a proof in LK.
    pub proof: Proof,
}

type Key = (usize, u64, Vec<Term>);

struct Evaluator<'s, 't> {
    schema: &'s ProofSchema,
    nz: Normalizer<'t>,
    expansions: Vec<Expansion>,
    active: Vec<(usize, u64)>,
    cache: HashMap<Key, Proof>,
}

impl Evaluator<'_, '_> {
    /// Instances reached through self-links are not cached: each would hold a
    /// copy of the whole chain below it.
    fn expand(&mut self, i: usize, beta: u64, terms: &[Term], cache: bool) -> Result<Proof, EvalError> {
        let key = (i, beta, terms.to_vec());
        if let Some(p) = self.cache.get(&key) {
            return Ok(p.clone());
        }
        let c = &self.schema.components[i];
        if self.active.contains(&(i, beta)) {
            return Err(EvalError::Cycle(c.name.to_string()));
        }
        self.active.push((i, beta));
        self.expansions.push(Expansion { target: c.name.to_string(), numeral: beta, terms: terms.to_vec() });
        let param = &self.schema.param;
        let vars = Substitution::vars(&c.vars, terms);
        let body = match (&c.step, &c.step_param) {
            (Some(step), Some(k)) if beta > 0 => {
                let offset = step_offset(k, param).unwrap_or(0);
                if offset == 0 || beta < offset {
                    return Err(EvalError::MatchFailure {
                        component: c.name.to_string(),
                        numeral: beta,
                        step: k.to_string(),
                    });
                }
                step.subst(&vars.with_param(param, NumExpr::Lit(beta - offset)))
            }
            (None, None) if !c.pattern.free_params().contains(param) => {
                c.base.subst(&vars.with_param(param, NumExpr::ZERO))
            }
            (_, k) if beta > 0 => {
                let step = k.as_ref().map(|k| k.to_string()).unwrap_or_else(|| "(none)".into());
                return Err(EvalError::MatchFailure { component: c.name.to_string(), numeral: beta, step });
            }
            _ => c.base.subst(&vars.with_param(param, NumExpr::ZERO)),
        };
        let body = self.expand_links(body, i)?;
        let target = c.instance_with(param, &NumExpr::Lit(beta), terms);
        let out = self.bridge(body, &target)?;
        self.active.pop();
        if cache {
            self.cache.insert(key, out.clone());
        }
        Ok(out)
    }

    fn expand_links(&mut self, mut p: Proof, from: usize) -> Result<Proof, EvalError> {
        if p.rule == RuleName::Link {
            let link = p.data.link.take().ok_or_else(|| EvalError::UnknownComponent("(missing)".into()))?;
            let j =
                self.schema.index_of(&link.proof).ok_or_else(|| EvalError::UnknownComponent(link.proof.to_string()))?;
            let beta = match self.nz.num(&link.param)? {
                NumExpr::Lit(b) => b,
                _ => {
                    return Err(EvalError::NotANumeral {
                        component: link.proof.to_string(),
                        param: link.param.to_string(),
                    })
                }
            };
            let sub = self.expand(j, beta, &link.terms, j != from)?;
            return self.bridge(sub, &p.conclusion);
        }
        p.premises = std::mem::take(&mut p.premises)
            .into_iter()
            .map(|q| self.expand_links(q, from))
            .collect::<Result<_, _>>()?;
        Ok(p)
    }

    fn bridge(&mut self, p: Proof, target: &Sequent) -> Result<Proof, EvalError> {
        bridge(&mut self.nz, p, target)
    }
}

/// Normalizes every sequent and rule datum and drops ℰ inferences.
pub fn normalize_proof(p: &Proof, nz: &mut Normalizer) -> Result<Proof, EvalError> {
    if p.rule == RuleName::ERule {
        if let [prem] = p.premises.as_slice() {
            let mut inner = normalize_proof(prem, nz)?;
            // Keep the formula order the parent inference refers to.
            inner.conclusion = nz.sequent(&p.conclusion)?;
            return Ok(inner);
        }
    }
    let data = RuleData {
        aux: p.data.aux.clone(),
        formula: p.data.formula.as_ref().map(|f| nz.formula(f)).transpose()?,
        term: p.data.term.as_ref().map(|t| nz.term(t)).transpose()?,
        eigen: p.data.eigen.clone(),
        path: p.data.path.clone(),
        to: p.data.to.clone(),
        link: p.data.link.clone(),
    };
    Ok(Proof {
        conclusion: nz.sequent(&p.conclusion)?,
        rule: p.rule,
        premises: p.premises.iter().map(|q| normalize_proof(q, nz)).collect::<Result<_, _>>()?,
        data,
    })
}

/// `Φ[n\α]↓`: expands links starting from the leading component, then
/// normalizes.
pub fn evaluate(schema: &ProofSchema, alpha: u64, theory: &Theory, fuel: u64) -> Result<UnrollTrace, EvalError> {
    let lead = schema.components.first().ok_or(EvalError::Empty)?;
    let mut ev = Evaluator {
        schema,
        nz: Normalizer::new(theory, fuel),
        expansions: Vec::new(),
        active: Vec::new(),
        cache: HashMap::new(),
    };
    let terms: Vec<Term> = lead.vars.iter().map(|x| Term::Var(x.clone())).collect();
    let unrolled = ev.expand(0, alpha, &terms, false)?;
    let proof = normalize_proof(&unrolled, &mut ev.nz)?;
    Ok(UnrollTrace { alpha, expansions: ev.expansions, rewrite_steps: ev.nz.total_steps(), unrolled, proof })
}

/// Checks the schema, evaluates it at `alpha`, checks the unrolled proof in
/// LKE and its normal form in LK, and compares the end-sequent with the
/// normalized instance of the leading pattern. Counts are those of the LK proof.
pub fn evaluate_and_check(
    schema: &ProofSchema,
    alpha: u64,
    theory: &Theory,
    opts: CheckOptions,
) -> (CheckReport, Option<UnrollTrace>) {
    let report = check_schema(schema, theory, opts);
    if !report.accepted() {
        return (report, None);
    }
    let trace = match evaluate(schema, alpha, theory, opts.fuel) {
        Ok(t) => t,
        Err(e) => {
            let f = Failure { path: ".".into(), rule: "Evaluate".into(), message: e.to_string() };
            return (CheckReport::new(vec![f], Default::default()), None);
        }
    };
    let mut checker = Checker::new(theory, CheckOptions { lenient: false, ..opts });
    let none = BTreeSet::new();
    let lke = prefixed(checker.check(&trace.unrolled, Mode::LKE, &LinkEnv::default(), &none), "unrolled");
    let lk = prefixed(checker.check(&trace.proof, Mode::LK, &LinkEnv::default(), &none), "lk");
    let mut failures = [lke.failures, lk.failures].concat();
    let lead = &schema.components[0];
    match checker.normalizer.sequent(&lead.instance(&schema.param, &NumExpr::Lit(alpha))) {
        Ok(expected) if trace.proof.conclusion.equiv(&expected) => {}
        Ok(expected) => failures.push(Failure {
            path: "lk:.".into(),
            rule: "EndSequent".into(),
            message: format!("end-sequent {} differs from {expected}", trace.proof.conclusion),
        }),
        Err(e) => failures.push(Failure { path: "lk:.".into(), rule: "EndSequent".into(), message: e.to_string() }),
    }
    (CheckReport::new(failures, counts_by_name(&trace.proof)), Some(trace))
}
