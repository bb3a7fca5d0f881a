use std::collections::BTreeSet;

use super::{Basecase, Case, Collection, Group, Pair, Pattern, SiLKStep, SilkError, StepRule, Stepcase};
use crate::kernel::{infer, CheckOptions, Checker, LinkData, LinkEnv, Mode, Proof};
use crate::rewrite::Theory;
use crate::schema::bridge::bridge;
use crate::syntax::{AnnotatedSequent, Name, NumExpr, Sequent, Substitution, Term};

type Res<T> = Result<T, SilkError>;

/// Applies SiLK steps; holds a checker whose normalizer is shared across steps.
pub struct Engine<'t> {
    checker: Checker<'t>,
    param: Name,
}

/// Applies one step to a copy of `state`.
pub fn apply_step(state: &Collection, step: &SiLKStep, theory: &Theory, opts: CheckOptions) -> Res<Collection> {
    Engine::new(theory, opts).apply(state, step).map(|(c, _)| c)
}

fn pair_index(g: &Group, id: &str) -> Res<usize> {
    g.pairs
        .iter()
        .position(|p| &*p.id == id)
        .ok_or_else(|| SilkError::UnknownPair { group: g.name.to_string(), pair: id.to_string() })
}

fn state(msg: impl Into<String>) -> SilkError {
    SilkError::WrongState(msg.into())
}

impl<'t> Engine<'t> {
    pub fn new(theory: &'t Theory, opts: CheckOptions) -> Self {
        Engine { checker: Checker::new(theory, opts), param: theory.sig.param.clone() }
    }

    /// Returns the new state and the step with every defaulted name filled in.
    pub fn apply(&mut self, state: &Collection, step: &SiLKStep) -> Res<(Collection, SiLKStep)> {
        let mut c = state.clone();
        let mut resolved = step.clone();
        if let StepRule::Ax1R { formula } = &step.rule {
            c.created += 1;
            let name: Name = step.group.clone().unwrap_or_else(|| format!("g{}", c.created).into());
            if c.group(&name).is_some() {
                return Err(SilkError::DuplicateName(name.to_string()));
            }
            let mut g =
                Group { name: name.clone(), pairs: Vec::new(), pattern: None, closure_index: None, next_pair: 0 };
            let id = Self::add_axiom_pair(&mut g, formula, step.new_pair.clone())?;
            c.groups.insert(0, g);
            resolved.group = Some(name);
            resolved.new_pair = Some(id);
            return Ok((c, resolved));
        }
        let gi = self.group_index(&c, step.group.as_deref())?;
        resolved.group = Some(c.groups[gi].name.clone());
        let (rest, tail) = c.groups.split_at_mut(gi);
        let (g, after) = tail.split_first_mut().expect("index in range");
        let others: Vec<&Group> = rest.iter().chain(after.iter()).collect();
        let mut closed = c.closed;
        self.apply_in_group(g, &others, &mut closed, step, &mut resolved)?;
        c.closed = closed;
        Ok((c, resolved))
    }

    fn group_index(&self, c: &Collection, name: Option<&str>) -> Res<usize> {
        let gi = match name {
            Some(n) => c.groups.iter().position(|g| &*g.name == n).ok_or_else(|| SilkError::UnknownGroup(n.into()))?,
            None => c.groups.iter().position(|g| !g.is_closed()).ok_or(SilkError::NoOpenGroup)?,
        };
        if c.groups[gi].is_closed() {
            return Err(SilkError::ClosedGroupTouched(c.groups[gi].name.to_string()));
        }
        Ok(gi)
    }

    fn add_axiom_pair(g: &mut Group, a: &crate::syntax::Formula, id: Option<Name>) -> Res<Name> {
        g.next_pair += 1;
        let id = id.unwrap_or_else(|| format!("p{}", g.next_pair).into());
        if g.pair(&id).is_some() {
            return Err(SilkError::DuplicateName(id.to_string()));
        }
        g.pairs.push(Pair {
            id: id.clone(),
            stepcase: Stepcase::Top,
            basecase: Basecase::Open(Sequent::axiom(a.clone())),
            base_proof: Proof::axiom(a.clone()),
            step_proof: None,
        });
        Ok(id)
    }

    /// Picks `n` pairs: the named ones, else the unique `n` pairs satisfying
    /// `eligible`, else all pairs if there are exactly `n`.
    fn pick(&self, g: &Group, given: &[Name], n: usize, eligible: impl Fn(&Pair) -> bool) -> Res<Vec<usize>> {
        if !given.is_empty() {
            if given.len() != n {
                return Err(SilkError::ArityMismatch { rule: "pair list".into(), expected: n, found: given.len() });
            }
            let idx = given.iter().map(|id| pair_index(g, id)).collect::<Res<Vec<_>>>()?;
            if n == 2 && idx[0] == idx[1] {
                return Err(state(format!("pair `{}` named twice", given[0])));
            }
            return Ok(idx);
        }
        let candidates: Vec<usize> = (0..g.pairs.len()).filter(|&i| eligible(&g.pairs[i])).collect();
        if candidates.len() == n {
            Ok(candidates)
        } else if g.pairs.len() == n {
            Ok((0..n).collect())
        } else {
            Err(SilkError::AmbiguousPair { group: g.name.to_string(), needed: n })
        }
    }

    fn nf_equiv(&mut self, a: &Sequent, b: &Sequent) -> Res<bool> {
        let a = self.checker.normalizer.sequent(a)?;
        let b = self.checker.normalizer.sequent(b)?;
        Ok(a.equiv(&b))
    }

    fn nf_num_eq(&mut self, a: &NumExpr, b: &NumExpr) -> Res<bool> {
        Ok(self.checker.normalizer.num(a)? == self.checker.normalizer.num(b)?)
    }

    fn bridge(&mut self, p: Proof, target: &Sequent) -> Res<Proof> {
        let found = p.conclusion.to_string();
        bridge(&mut self.checker.normalizer, p, target)
            .map_err(|_| SilkError::PatternMismatch { expected: target.to_string(), found })
    }

    fn require_closed_basecase(g: &Group, p: &Pair) -> Res<()> {
        if p.basecase.is_closed() {
            Ok(())
        } else {
            Err(SilkError::StepcaseBeforeClosedBasecase { group: g.name.to_string(), pair: p.id.to_string() })
        }
    }

    fn require_top(g: &Group, p: &Pair) -> Res<()> {
        Self::require_closed_basecase(g, p)?;
        match p.stepcase {
            Stepcase::Top => Ok(()),
            _ => Err(state(format!("stepcase of pair `{}` is not ⊤", p.id))),
        }
    }

    fn single_pair(g: &Group) -> Res<&Pair> {
        match g.pairs.as_slice() {
            [p] => Ok(p),
            ps => Err(state(format!("group `{}` has {} pairs; closing needs exactly one", g.name, ps.len()))),
        }
    }

    fn apply_in_group(
        &mut self,
        g: &mut Group,
        others: &[&Group],
        closed: &mut usize,
        step: &SiLKStep,
        resolved: &mut SiLKStep,
    ) -> Res<()> {
        let param = self.param.clone();
        match &step.rule {
            StepRule::Ax1R { .. } => unreachable!("handled by apply"),
            StepRule::Ax2R { formula } => {
                let id = Self::add_axiom_pair(g, formula, step.new_pair.clone())?;
                resolved.new_pair = Some(id);
            }
            StepRule::AxL { formula, annotation } => {
                let [i] = self.pick(g, &step.pairs, 1, |p| p.basecase.is_closed() && p.stepcase == Stepcase::Top)?[..]
                else {
                    unreachable!()
                };
                Self::require_top(g, &g.pairs[i])?;
                let pair = &mut g.pairs[i];
                pair.stepcase = Stepcase::Open(AnnotatedSequent {
                    sequent: Sequent::axiom(formula.clone()),
                    annotation: annotation.clone(),
                });
                pair.step_proof = Some(Proof::axiom(formula.clone()));
                resolved.pairs = vec![pair.id.clone()];
            }
            StepRule::CcR | StepRule::CcL => {
                let left = matches!(step.rule, StepRule::CcL);
                let idx = self.pick(g, &step.pairs, 2, |p| p.basecase.is_closed() == left)?;
                let (a, b) = (&g.pairs[idx[0]], &g.pairs[idx[1]]);
                if left {
                    Self::require_closed_basecase(g, a)?;
                    Self::require_closed_basecase(g, b)?;
                    let same_step = match (&a.stepcase, &b.stepcase) {
                        (Stepcase::Top, Stepcase::Top) => true,
                        (Stepcase::Open(x), Stepcase::Open(y)) => {
                            x.sequent.equiv(&y.sequent) && self.nf_num_eq(&x.annotation, &y.annotation)?
                        }
                        _ => false,
                    };
                    if !same_step {
                        return Err(state(format!("pairs `{}` and `{}` have different stepcases", a.id, b.id)));
                    }
                } else if a.basecase.is_closed() || b.basecase.is_closed() {
                    return Err(state("c_c:r contracts pairs with open basecases"));
                } else if a.stepcase != Stepcase::Top || b.stepcase != Stepcase::Top {
                    return Err(state("c_c:r contracts pairs with stepcase ⊤"));
                }
                if !a.basecase.sequent().equiv(b.basecase.sequent()) {
                    return Err(state(format!("pairs `{}` and `{}` have different basecases", a.id, b.id)));
                }
                resolved.pairs = vec![a.id.clone(), b.id.clone()];
                g.pairs.remove(idx[1]);
            }
            StepRule::Br => {
                let [i] = self.pick(g, &step.pairs, 1, |p| p.basecase.is_closed())?[..] else { unreachable!() };
                Self::require_closed_basecase(g, &g.pairs[i])?;
                g.next_pair += 1;
                let id: Name = step.new_pair.clone().unwrap_or_else(|| format!("p{}", g.next_pair).into());
                if g.pair(&id).is_some() {
                    return Err(SilkError::DuplicateName(id.to_string()));
                }
                let copy = Pair { id: id.clone(), stepcase: Stepcase::Top, step_proof: None, ..g.pairs[i].clone() };
                resolved.pairs = vec![g.pairs[i].id.clone()];
                resolved.new_pair = Some(id);
                g.pairs.insert(i, copy);
            }
            StepRule::Rho { case, arity, rule, data } => {
                if rule.is_leaf() {
                    return Err(SilkError::Inference(format!("{rule} is not an inference rule")));
                }
                if rule.arity() != *arity {
                    return Err(SilkError::ArityMismatch {
                        rule: rule.to_string(),
                        expected: rule.arity(),
                        found: *arity,
                    });
                }
                let case = *case;
                let idx = self.pick(g, &step.pairs, *arity, |p| match case {
                    Case::Bc => !p.basecase.is_closed(),
                    Case::Sc => matches!(p.stepcase, Stepcase::Open(_)),
                })?;
                let mut premises = Vec::new();
                let mut annotation = None;
                for &i in &idx {
                    let p = &g.pairs[i];
                    match case {
                        Case::Bc => {
                            if p.basecase.is_closed() {
                                return Err(state(format!("basecase of pair `{}` is closed", p.id)));
                            }
                            premises.push(p.base_proof.clone());
                        }
                        Case::Sc => {
                            Self::require_closed_basecase(g, p)?;
                            let Stepcase::Open(s) = &p.stepcase else {
                                return Err(state(format!("stepcase of pair `{}` is not open", p.id)));
                            };
                            match &annotation {
                                None => annotation = Some(s.annotation.clone()),
                                Some(a) => {
                                    if !self.nf_num_eq(a, &s.annotation)? {
                                        return Err(SilkError::AnnotationMismatch {
                                            expected: a.to_string(),
                                            found: s.annotation.to_string(),
                                        });
                                    }
                                }
                            }
                            premises.push(p.step_proof.clone().expect("open stepcase has a proof"));
                        }
                    }
                }
                if idx.len() == 2 && case == Case::Sc {
                    let (a, b) = (&g.pairs[idx[0]], &g.pairs[idx[1]]);
                    if !a.basecase.sequent().equiv(b.basecase.sequent()) {
                        return Err(state(format!("pairs `{}` and `{}` have different basecases", a.id, b.id)));
                    }
                }
                let seqs: Vec<&Sequent> = premises.iter().map(|p| &p.conclusion).collect();
                let conclusion = infer(*rule, &seqs, data).map_err(SilkError::Inference)?;
                let node = Proof::node(*rule, conclusion.clone(), premises, data.clone());
                self.checker
                    .check_node(&node, Mode::LKS, &LinkEnv::default(), &BTreeSet::new())
                    .map_err(SilkError::Inference)?;
                resolved.pairs = idx.iter().map(|&i| g.pairs[i].id.clone()).collect();
                let target = &mut g.pairs[idx[0]];
                match case {
                    Case::Bc => {
                        target.basecase = Basecase::Open(conclusion);
                        target.base_proof = node;
                    }
                    Case::Sc => {
                        let annotation = annotation.expect("at least one premise");
                        target.stepcase = Stepcase::Open(AnnotatedSequent { sequent: conclusion, annotation });
                        target.step_proof = Some(node);
                    }
                }
                if idx.len() == 2 {
                    g.pairs.remove(idx[1]);
                }
            }
            StepRule::ClBc { pattern, vars } => {
                let [i] = self.pick(g, &step.pairs, 1, |p| !p.basecase.is_closed())?[..] else { unreachable!() };
                if g.pattern.is_some() {
                    return Err(state(format!("group `{}` already has a closed basecase", g.name)));
                }
                let pair = &g.pairs[i];
                let Basecase::Open(pi) = &pair.basecase else {
                    return Err(state(format!("basecase of pair `{}` is already closed", pair.id)));
                };
                if pair.stepcase != Stepcase::Top {
                    return Err(state(format!("stepcase of pair `{}` is not ⊤", pair.id)));
                }
                let b = pattern.clone().unwrap_or_else(|| pi.clone());
                let stray: Vec<Name> = b.free_params().into_iter().filter(|p| *p != param).collect();
                if !stray.is_empty() {
                    return Err(state(format!("pattern {b} has parameters other than {param}")));
                }
                let at0 = b.subst(&Substitution::param(&param, NumExpr::ZERO));
                if !self.nf_equiv(&at0, pi)? {
                    return Err(SilkError::PatternMismatch { expected: at0.to_string(), found: pi.to_string() });
                }
                let proof = self.bridge(pair.base_proof.clone(), &at0)?;
                resolved.pairs = vec![pair.id.clone()];
                let pair = &mut g.pairs[i];
                pair.base_proof = proof;
                pair.basecase = Basecase::Closed(at0);
                g.pattern = Some(Pattern { sequent: b, vars: vars.clone() });
            }
            StepRule::ClLKE => {
                let pair = Self::single_pair(g)?;
                Self::require_top(g, pair)?;
                resolved.pairs = vec![pair.id.clone()];
                g.pairs[0].stepcase = Stepcase::Empty;
                g.closure_index = Some(*closed);
                *closed += 1;
            }
            StepRule::ClSc { annotation } => {
                let pair = Self::single_pair(g)?;
                Self::require_closed_basecase(g, pair)?;
                let Stepcase::Open(s) = &pair.stepcase else {
                    return Err(state(format!("stepcase of pair `{}` is not open", pair.id)));
                };
                if let Some(a) = annotation {
                    if !self.nf_num_eq(a, &s.annotation)? {
                        return Err(SilkError::AnnotationMismatch {
                            expected: s.annotation.to_string(),
                            found: a.to_string(),
                        });
                    }
                }
                let b = &g.pattern.as_ref().expect("closed basecase implies a pattern").sequent;
                let expected = b.subst(&Substitution::param(&param, NumExpr::succ(NumExpr::Param(param.clone()))));
                if !self.nf_equiv(&expected, &s.sequent)? {
                    return Err(SilkError::PatternMismatch {
                        expected: expected.to_string(),
                        found: s.sequent.to_string(),
                    });
                }
                let proof = self.bridge(pair.step_proof.clone().expect("open stepcase has a proof"), &expected)?;
                resolved.pairs = vec![pair.id.clone()];
                let pair = &mut g.pairs[0];
                pair.step_proof = Some(proof);
                pair.stepcase = Stepcase::Closed(expected);
                g.closure_index = Some(*closed);
                *closed += 1;
            }
            StepRule::Cycle { terms } => {
                let [i] = self.pick(g, &step.pairs, 1, |p| p.basecase.is_closed() && p.stepcase == Stepcase::Top)?[..]
                else {
                    unreachable!()
                };
                Self::require_top(g, &g.pairs[i])?;
                let pattern = g.pattern.as_ref().expect("closed basecase implies a pattern");
                let seq = Self::instance(pattern, "cycle", &param, &NumExpr::Param(param.clone()), terms)?;
                let link =
                    LinkData { proof: g.name.clone(), param: NumExpr::Param(param.clone()), terms: terms.clone() };
                let pair = &mut g.pairs[i];
                pair.step_proof = Some(Proof::link(seq.clone(), link));
                pair.stepcase = Stepcase::Open(AnnotatedSequent {
                    sequent: seq,
                    annotation: NumExpr::succ(NumExpr::Param(param.clone())),
                });
                resolved.pairs = vec![pair.id.clone()];
            }
            StepRule::Call { target, g: call, f, terms } => {
                let [i] = self.pick(g, &step.pairs, 1, |p| p.basecase.is_closed() && p.stepcase == Stepcase::Top)?[..]
                else {
                    unreachable!()
                };
                Self::require_top(g, &g.pairs[i])?;
                let aux = others
                    .iter()
                    .find(|h| h.name == *target)
                    .ok_or_else(|| SilkError::UnknownGroup(target.to_string()))?;
                if !aux.is_closed() {
                    return Err(state(format!("call target `{target}` is not closed")));
                }
                if !matches!(aux.pairs.first().map(|p| &p.stepcase), Some(Stepcase::Closed(_))) {
                    return Err(state(format!("call target `{target}` has an empty stepcase")));
                }
                let pattern = aux.pattern.as_ref().expect("closed group has a pattern");
                let seq = Self::instance(pattern, "call", &param, call, terms)?;
                let link = LinkData { proof: target.clone(), param: call.clone(), terms: terms.clone() };
                let pair = &mut g.pairs[i];
                pair.step_proof = Some(Proof::link(seq.clone(), link));
                pair.stepcase = Stepcase::Open(AnnotatedSequent {
                    sequent: seq,
                    annotation: f.clone().unwrap_or_else(|| call.clone()),
                });
                resolved.pairs = vec![pair.id.clone()];
            }
        }
        Ok(())
    }

    fn instance(pattern: &Pattern, rule: &str, param: &Name, k: &NumExpr, terms: &[Term]) -> Res<Sequent> {
        if terms.len() != pattern.vars.len() {
            return Err(SilkError::ArityMismatch {
                rule: rule.into(),
                expected: pattern.vars.len(),
                found: terms.len(),
            });
        }
        let s = Substitution::vars(&pattern.vars, terms).with_param(param, k.clone());
        Ok(pattern.sequent.subst(&s))
    }
}
