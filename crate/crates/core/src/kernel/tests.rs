use std::collections::BTreeSet;

use super::*;
use crate::rewrite::Theory;
use crate::syntax::{Pos, Signature, Sort};

fn n() -> NumExpr {
    NumExpr::param("n")
}

fn f(x: Term) -> Term {
    Term::app("f", vec![x.into()])
}

fn shat(e: NumExpr) -> Term {
    Term::app("Shat", vec![e.into()])
}

fn plus(a: Term, b: Term) -> Term {
    Term::app("+", vec![a.into(), b.into()])
}

fn alpha() -> Term {
    Term::var("alpha")
}

fn p(t: Term) -> Formula {
    Formula::atom("P", vec![t.into()])
}

fn step_formula() -> Formula {
    Formula::forall("x", Formula::imp(p(Term::var("x")), p(f(Term::var("x")))))
}

fn delta() -> Vec<Formula> {
    vec![p(plus(alpha(), Term::constant("0"))), step_formula()]
}

fn theory() -> Theory {
    let mut sig = Signature::default();
    sig.declare_fun("0", vec![], Sort::Iota, false).unwrap();
    sig.declare_fun("f", vec![Sort::Iota], Sort::Iota, false).unwrap();
    sig.declare_fun("Shat", vec![Sort::Omega], Sort::Iota, true).unwrap();
    sig.declare_fun("+", vec![Sort::Iota, Sort::Iota], Sort::Iota, true).unwrap();
    sig.declare_pred("P", vec![Sort::Iota], false).unwrap();
    let mut th = Theory::new(sig);
    let k = NumExpr::param("k");
    th.add_rule(shat(NumExpr::add(k.clone(), 1.into())).into(), f(shat(k)).into());
    th.add_rule(shat(NumExpr::ZERO).into(), Term::constant("0").into());
    th.add_rule(plus(Term::var("k"), f(Term::var("l"))).into(), f(plus(Term::var("k"), Term::var("l"))).into());
    th
}

fn seq(ante: Vec<Formula>, succ: Formula) -> Sequent {
    Sequent::new(ante, vec![succ])
}

fn pi() -> Proof {
    let a = p(plus(alpha(), Term::constant("0")));
    let ax = Proof::axiom(a.clone());
    let w = Proof::node(
        RuleName::WeakL,
        seq(delta(), a),
        vec![ax],
        RuleData { formula: Some(step_formula()), ..RuleData::default() },
    );
    Proof::node(
        RuleName::ERule,
        seq(delta(), p(plus(alpha(), shat(NumExpr::ZERO)))),
        vec![w],
        RuleData {
            aux: vec![Pos::right(0)],
            path: Some(Path(vec![0, 1])),
            to: Some(shat(NumExpr::ZERO).into()),
            ..RuleData::default()
        },
    )
}

fn nu() -> Proof {
    let base = plus(alpha(), shat(n()));
    let link =
        Proof::link(seq(delta(), p(base.clone())), LinkData { proof: "phi".into(), param: n(), terms: vec![alpha()] });
    let ax = Proof::axiom(p(f(base.clone())));
    let mut ante = delta();
    ante.push(Formula::imp(p(base.clone()), p(f(base.clone()))));
    let imp = Proof::node(
        RuleName::ImpL,
        seq(ante, p(f(base.clone()))),
        vec![link, ax],
        RuleData { aux: vec![Pos::right(0), Pos::left(0)], ..RuleData::default() },
    );
    let mut ante = delta();
    ante.push(step_formula());
    let all = Proof::node(
        RuleName::ForallL,
        seq(ante, p(f(base.clone()))),
        vec![imp],
        RuleData {
            aux: vec![Pos::left(2)],
            formula: Some(step_formula()),
            term: Some(base.clone()),
            ..RuleData::default()
        },
    );
    let c = Proof::node(
        RuleName::ContrL,
        seq(delta(), p(f(base.clone()))),
        vec![all],
        RuleData { aux: vec![Pos::left(1), Pos::left(2)], ..RuleData::default() },
    );
    let e1 = Proof::node(
        RuleName::ERule,
        seq(delta(), p(plus(alpha(), f(shat(n()))))),
        vec![c],
        RuleData {
            aux: vec![Pos::right(0)],
            path: Some(Path(vec![0])),
            to: Some(plus(alpha(), f(shat(n()))).into()),
            ..RuleData::default()
        },
    );
    let next = shat(NumExpr::add(n(), 1.into()));
    Proof::node(
        RuleName::ERule,
        seq(delta(), p(plus(alpha(), next.clone()))),
        vec![e1],
        RuleData {
            aux: vec![Pos::right(0)],
            path: Some(Path(vec![0, 1])),
            to: Some(next.into()),
            ..RuleData::default()
        },
    )
}

fn env() -> LinkEnv {
    let mut env = LinkEnv::default();
    env.insert(
        "phi",
        LinkTarget {
            pattern: seq(delta(), p(plus(alpha(), shat(n())))),
            param: "n".into(),
            vars: vec!["alpha".into()],
        },
    );
    env
}

fn check(p: &Proof, mode: Mode, allowed: &[&str]) -> CheckReport {
    check_proof(p, mode, &theory(), &env(), &names(allowed), CheckOptions::default())
}

#[test]
fn base_proof_is_accepted_in_lke() {
    let r = check(&pi(), Mode::LKE, &[]);
    assert!(r.accepted(), "{:?}", r.failures);
    let r = check(&pi(), Mode::LK, &[]);
    assert!(!r.accepted());
}

#[test]
fn step_proof_is_accepted_in_lks() {
    let r = check(&nu(), Mode::LKS, &["n"]);
    assert!(r.accepted(), "{:?}", r.failures);
    assert!(!check(&nu(), Mode::LKS, &[]).accepted());
    assert!(!check(&nu(), Mode::LKE, &["n"]).accepted());
}

#[test]
fn base_proof_counts() {
    let c = count_inferences(&pi());
    assert_eq!(c[&RuleName::WeakL], 1);
    assert_eq!(c[&RuleName::ERule], 1);
    assert_eq!(c.values().sum::<u64>(), 2);
}

#[test]
fn lone_axiom_counts_nothing() {
    let c = count_inferences(&Proof::axiom(p(alpha())));
    assert!(c.values().all(|v| *v == 0));
}

#[test]
fn eigenvariable_in_context_is_rejected() {
    // P(a) |- P(a) ; forall-right on a with a still free in the antecedent.
    let pa = p(Term::var("a"));
    let ax = Proof::axiom(pa.clone());
    let bad = Proof::node(
        RuleName::ForallR,
        Sequent::new(vec![pa], vec![Formula::forall("x", p(Term::var("x")))]),
        vec![ax],
        RuleData {
            aux: vec![Pos::right(0)],
            formula: Some(Formula::forall("x", p(Term::var("x")))),
            eigen: Some("a".into()),
            ..RuleData::default()
        },
    );
    let r = check(&bad, Mode::LK, &[]);
    assert!(!r.accepted());
    assert_eq!(r.failures[0].path, ".");
    assert!(r.failures[0].message.contains("eigenvariable"));
}

#[test]
fn fresh_eigenvariable_is_accepted() {
    // P(a) |- P(a) => P(a) |- exists x. P(x) is by term; forall-left then forall-right on b.
    let pb = p(Term::var("b"));
    let all = Formula::forall("x", p(Term::var("x")));
    let l = Proof::node(
        RuleName::ForallL,
        Sequent::new(vec![all.clone()], vec![pb.clone()]),
        vec![Proof::axiom(pb)],
        RuleData {
            aux: vec![Pos::left(0)],
            formula: Some(all.clone()),
            term: Some(Term::var("b")),
            ..RuleData::default()
        },
    );
    let r = Proof::node(
        RuleName::ForallR,
        Sequent::new(vec![all.clone()], vec![all.clone()]),
        vec![l],
        RuleData { aux: vec![Pos::right(0)], formula: Some(all), eigen: Some("b".into()), ..RuleData::default() },
    );
    assert!(check(&r, Mode::LK, &[]).accepted());
}

#[test]
fn wrong_equivalence_is_rejected() {
    let mut bad = pi();
    bad.conclusion = seq(delta(), p(plus(alpha(), shat(NumExpr::Lit(1)))));
    bad.data.to = Some(shat(NumExpr::Lit(1)).into());
    let r = check(&bad, Mode::LKE, &[]);
    assert!(!r.accepted());
    assert!(r.failures[0].message.contains("not equivalent"));
}

#[test]
fn lenient_mode_accepts_missing_witness() {
    let mut e = pi();
    e.data = RuleData::default();
    assert!(!check(&e, Mode::LKE, &[]).accepted());
    let opts = CheckOptions { lenient: true, ..CheckOptions::default() };
    assert!(check_proof(&e, Mode::LKE, &theory(), &env(), &BTreeSet::new(), opts).accepted());
}

#[test]
fn dropped_premise_is_reported_not_panicking() {
    let mut bad = nu();
    bad.premises.clear();
    let r = check(&bad, Mode::LKS, &["n"]);
    assert!(!r.accepted());
    let mut bad = nu();
    bad.data.aux.clear();
    assert!(!check(&bad, Mode::LKS, &["n"]).accepted());
    let mut bad = nu();
    bad.data.aux = vec![Pos::left(9)];
    assert!(!check(&bad, Mode::LKS, &["n"]).accepted());
}

#[test]
fn failure_paths_point_at_nodes() {
    let mut bad = nu();
    // Break the contraction two levels down (ERule -> ERule -> ContrL).
    bad.premises[0].premises[0].data.aux = vec![Pos::left(0), Pos::left(2)];
    let r = check(&bad, Mode::LKS, &["n"]);
    assert!(r.failures.iter().any(|f| f.path == "0.0" && f.rule == "ContrL"), "{:?}", r.failures);
}

#[test]
fn rule_names_round_trip() {
    for r in RuleName::ALL {
        assert_eq!(r.to_string().parse::<RuleName>(), Ok(r));
    }
    assert_eq!("lks".parse::<Mode>(), Ok(Mode::LKS));
}
