//! Randomized properties over generators seeded from the corpus.

use std::collections::BTreeSet;
use std::sync::OnceLock;

use proptest::prelude::*;
use proptest::test_runner::{Config, TestRunner};
use schemata::frontend::{parse_lk, parse_script, print_step, Document};
use schemata::kernel::{check_proof, CheckOptions, LinkEnv, Mode, Proof, RuleData, RuleName};
use schemata::rewrite::{Normalizer, Theory};
use schemata::schema::evaluate;
use schemata::silk::{Case, SiLKStep, StepRule};
use schemata::syntax::{Arg, Expr, Formula, NumExpr, Pos, Sequent, Term};

use super::{big, load};

pub const CASES: u32 = 256;

fn runner() -> TestRunner {
    TestRunner::new(Config { cases: CASES, failure_persistence: None, ..Config::default() })
}

struct Sample {
    theory: Theory,
    env: LinkEnv,
    proof: Proof,
}

/// Proof files plus unrolled schemata, before and after normalization.
fn samples() -> &'static [Sample] {
    static CELL: OnceLock<Vec<Sample>> = OnceLock::new();
    CELL.get_or_init(|| {
        let mut out = Vec::new();
        for name in ["quantifiers.lkp", "forall_r.lkp", "fhat_lke.lkp", "nu.lkp"] {
            let ws = load(name);
            let Document::Lk(f) = ws.document else { unreachable!() };
            out.push(Sample { theory: ws.theory, env: f.env, proof: f.proof });
        }
        for name in ["schema_shat.sch", "schema_fhat.sch", "schema_exp.sch"] {
            let ws = load(name);
            let Document::Schema(f) = ws.document else { unreachable!() };
            for alpha in 0..4 {
                let t = evaluate(&f.schema, alpha, &ws.theory, ws.options.fuel).unwrap();
                for proof in [t.unrolled, t.proof] {
                    out.push(Sample { theory: ws.theory.clone(), env: LinkEnv::default(), proof });
                }
            }
        }
        out
    })
}

fn size(p: &Proof) -> usize {
    1 + p.premises.iter().map(size).sum::<usize>()
}

fn nth_mut<'a>(p: &'a mut Proof, k: &mut usize) -> Option<&'a mut Proof> {
    if *k == 0 {
        return Some(p);
    }
    *k -= 1;
    for q in &mut p.premises {
        if let Some(found) = nth_mut(q, k) {
            return Some(found);
        }
    }
    None
}

/// One local change to a node: a small edit to its conclusion or witness.
fn mutate(p: &mut Proof, kind: u8, salt: usize) {
    let bump = |f: &Formula| Formula::and(f.clone(), f.clone());
    match kind % 6 {
        0 => {}
        1 => {
            if !p.conclusion.succedent.is_empty() {
                let i = salt % p.conclusion.succedent.len();
                p.conclusion.succedent[i] = bump(&p.conclusion.succedent[i]);
            }
        }
        2 => p.conclusion.antecedent.reverse(),
        3 => {
            if let Some(a) = p.data.aux.first_mut() {
                *a = if salt.is_multiple_of(2) { Pos::left(a.index + 1) } else { Pos::right(a.index) };
            }
        }
        4 => p.data.term = Some(Term::app("f", vec![Term::constant("0").into()])),
        _ => {
            if p.rule == RuleName::ERule || p.premises.len() == 1 {
                p.rule = if p.rule == RuleName::ERule { RuleName::WeakL } else { RuleName::ERule };
            }
        }
    }
}

fn accepted(s: &Sample, p: &Proof, mode: Mode) -> bool {
    let allowed = BTreeSet::from([s.theory.sig.param.clone()]);
    check_proof(p, mode, &s.theory, &s.env, &allowed, CheckOptions::default()).accepted()
}

pub fn mode_monotonicity() {
    big(|| {
        let all = samples();
        let strategy = (0..all.len(), any::<usize>(), any::<u8>(), any::<usize>());
        let mut seen = [0usize; 3];
        runner()
            .run(&strategy, |(i, at, kind, salt)| {
                let s = &all[i];
                let mut p = s.proof.clone();
                let mut k = at % size(&p);
                mutate(nth_mut(&mut p, &mut k).unwrap(), kind, salt);
                let (lk, lke, lks) =
                    (accepted(s, &p, Mode::LK), accepted(s, &p, Mode::LKE), accepted(s, &p, Mode::LKS));
                prop_assert!(!lk || lke, "accepted in LK but not LKE");
                prop_assert!(!lke || lks, "accepted in LKE but not LKS");
                Ok(())
            })
            .unwrap();
        // Every mode boundary is exercised by the corpus itself.
        for s in all {
            seen[0] += accepted(s, &s.proof, Mode::LK) as usize;
            seen[1] += (accepted(s, &s.proof, Mode::LKE) && !accepted(s, &s.proof, Mode::LK)) as usize;
            seen[2] += (accepted(s, &s.proof, Mode::LKS) && !accepted(s, &s.proof, Mode::LKE)) as usize;
        }
        assert!(seen.iter().all(|&k| k > 0), "{seen:?}");
    });
}

fn num() -> impl Strategy<Value = NumExpr> {
    let leaf = prop_oneof![(0u64..4).prop_map(NumExpr::Lit), Just(NumExpr::param("n"))];
    leaf.prop_recursive(3, 8, 2, |inner| {
        prop_oneof![
            inner.clone().prop_map(NumExpr::succ),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| NumExpr::add(a, b)),
            (0u64..3).prop_map(|k| NumExpr::app("exp2", vec![NumExpr::Lit(k)])),
            inner.prop_map(|a| NumExpr::app("exp2", vec![NumExpr::succ(a)])),
        ]
    })
}

/// Terms over the iteration signature; `fhat` is applied to small numerals
/// or the parameter so that normal forms stay small.
fn term() -> impl Strategy<Value = Term> {
    let leaf = prop_oneof![Just(Term::constant("0")), Just(Term::var("y")), Just(Term::var("alpha"))];
    leaf.prop_recursive(3, 10, 2, |inner| {
        prop_oneof![
            inner.clone().prop_map(|t| Term::app("f", vec![t.into()])),
            (num(), inner).prop_map(|(k, t)| {
                let k = if k.contains_app() { NumExpr::param("n") } else { k };
                Term::app("fhat", vec![k.into(), t.into()])
            }),
        ]
    })
}

fn formula() -> impl Strategy<Value = Formula> {
    let atom = term().prop_map(|t| Formula::atom("P", vec![Arg::from(t)]));
    atom.prop_recursive(3, 12, 2, |inner| {
        prop_oneof![
            inner.clone().prop_map(Formula::not),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::and(a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::or(a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::imp(a, b)),
            inner.clone().prop_map(|a| Formula::forall("y", a)),
            inner.clone().prop_map(|a| Formula::exists("y", a)),
            inner.prop_map(|a| Formula::forall_num("m", a)),
        ]
    })
}

fn sequent() -> impl Strategy<Value = Sequent> {
    (prop::collection::vec(formula(), 0..3), prop::collection::vec(formula(), 0..3))
        .prop_map(|(a, s)| Sequent::new(a, s))
}

pub fn normalization_is_idempotent() {
    big(|| {
        let th = load("fhat.thy").theory;
        let strategy =
            prop_oneof![num().prop_map(Expr::from), term().prop_map(Expr::from), formula().prop_map(Expr::from)];
        runner()
            .run(&strategy, |e| {
                let mut nz = Normalizer::new(&th, 100_000);
                let Ok(once) = nz.normalize(&e) else { return Ok(()) };
                let twice = Normalizer::new(&th, 100_000).normalize(&once.value).unwrap();
                prop_assert_eq!(&twice.value, &once.value);
                prop_assert_eq!(twice.steps_used, 0);
                Ok(())
            })
            .unwrap();
    });
}

pub fn sequents_print_and_parse_back() {
    big(|| {
        let th = load("fhat.thy").theory;
        runner()
            .run(&sequent(), |s| {
                let text = format!("rule ax {{ conclusion {s}; }}");
                let back = parse_lk(&text, &th).map_err(|e| TestCaseError::fail(format!("{e}: {text}")))?;
                prop_assert_eq!(&back.proof.conclusion, &s, "{}", text);
                Ok(())
            })
            .unwrap();
    });
}

fn step() -> impl Strategy<Value = SiLKStep> {
    let group = prop::option::of(prop_oneof![Just("1"), Just("a")]);
    let pairs = prop::collection::vec(prop_oneof![Just("p1"), Just("q")], 0..3);
    let rule = prop_oneof![
        formula().prop_map(|formula| StepRule::Ax1R { formula }),
        formula().prop_map(|formula| StepRule::Ax2R { formula }),
        (formula(), num()).prop_map(|(formula, annotation)| StepRule::AxL { formula, annotation }),
        (any::<bool>(), 0usize..3, any::<bool>(), prop::option::of(formula())).prop_map(|(bc, i, left, formula)| {
            let case = if bc { Case::Bc } else { Case::Sc };
            let aux = vec![if left { Pos::left(i) } else { Pos::right(i) }];
            let rule = if formula.is_some() { RuleName::Cut } else { RuleName::AndR };
            StepRule::Rho { case, arity: 2, rule, data: RuleData { aux, formula, ..RuleData::default() } }
        }),
        Just(StepRule::CcR),
    ];
    (rule, group, pairs, prop::option::of(Just("r"))).prop_map(|(rule, group, pairs, new_pair)| SiLKStep {
        rule,
        group: group.map(Into::into),
        pairs: pairs.into_iter().map(Into::into).collect(),
        new_pair: new_pair.map(Into::into),
    })
}

pub fn script_steps_print_and_parse_back() {
    big(|| {
        let th = load("fhat.thy").theory;
        runner()
            .run(&step(), |s| {
                let line = print_step(&s, &th);
                let back = parse_script(&line, &th).map_err(|e| TestCaseError::fail(format!("{e}: {line}")))?;
                prop_assert_eq!(&back.steps, &vec![s], "{}", line);
                Ok(())
            })
            .unwrap();
    });
}

pub const ALL: &[(&str, fn())] = &[
    ("mode_monotonicity", mode_monotonicity),
    ("normalization_is_idempotent", normalization_is_idempotent),
    ("sequents_print_and_parse_back", sequents_print_and_parse_back),
    ("script_steps_print_and_parse_back", script_steps_print_and_parse_back),
];
