use super::*;
use crate::fixtures::*;
use crate::kernel::{CheckOptions, RuleData};

fn run(steps: &[SiLKStep]) -> Outcome {
    check_script(steps, &theory(), CheckOptions::default())
}

#[test]
fn simple_proof_replays() {
    let out = run(&fhat_script());
    assert_eq!(out.verdict, Verdict::Proof, "{:?}", out.report.failures);
    let [g] = out.collection.groups.as_slice() else { panic!() };
    let [pair] = g.pairs.as_slice() else { panic!() };
    let sc = Sequent::new(delta(), vec![p(fhat(NumExpr::succ(n()), zero()))]);
    let bc = Sequent::new(delta(), vec![p(fhat(NumExpr::ZERO, zero()))]);
    assert_eq!(pair.stepcase, Stepcase::Closed(sc.clone()));
    assert_eq!(pair.basecase, Basecase::Closed(bc.clone()));
    assert_eq!(pair.step_proof.as_ref().unwrap().conclusion, sc);
    assert_eq!(pair.base_proof.conclusion, bc);
    assert_eq!(leading_group(&out.collection).unwrap().name.as_ref(), "g1");
}

#[test]
fn replay_is_deterministic() {
    let a = run(&fhat_script());
    let b = run(&fhat_script());
    assert_eq!(a.collection, b.collection);
    assert_eq!(a.resolved, b.resolved);
}

#[test]
fn truncated_script_is_a_derivation() {
    let mut steps = fhat_script();
    steps.pop();
    assert_eq!(run(&steps).verdict, Verdict::Derivation);
    assert!(leading_group(&run(&steps).collection).is_err());
}

#[test]
fn cycle_before_closed_basecase_is_rejected() {
    let mut steps = fhat_script();
    let cycle = steps.remove(6);
    steps.insert(3, cycle);
    let out = run(&steps);
    assert_eq!(out.verdict, Verdict::Rejected);
    assert_eq!(out.report.failures[0].path, "step 4");
    assert!(out.report.failures[0].message.contains("open basecase"), "{}", out.report.failures[0].message);
}

#[test]
fn annotation_mismatch_at_closure() {
    let mut steps = fhat_script();
    *steps.last_mut().unwrap() = SiLKStep::new(StepRule::ClSc { annotation: Some(NumExpr::Lit(2)) });
    let out = run(&steps);
    assert_eq!(out.verdict, Verdict::Rejected);
    assert!(out.report.failures[0].message.contains("annotation"));
}

#[test]
fn rules_on_closed_groups_are_rejected() {
    let mut steps = fhat_script();
    steps.push(
        rho(Case::Sc, RuleName::WeakL, RuleData { formula: Some(p(zero())), ..RuleData::default() }).in_group("g1"),
    );
    let out = run(&steps);
    assert_eq!(out.report.failures[0].path, "step 12");
    assert!(out.report.failures[0].message.contains("closed"));
}

#[test]
fn wrong_pattern_is_rejected() {
    let mut steps = fhat_script();
    let bad = Sequent::new(delta(), vec![p(fhat(NumExpr::succ(n()), zero()))]);
    steps[3] = SiLKStep::new(StepRule::ClBc { pattern: Some(bad), vars: vec![] });
    let out = run(&steps);
    assert!(matches!(out.verdict, Verdict::Rejected));
    assert!(out.report.failures[0].message.contains("differ modulo"));
}

#[test]
fn exponential_proof_calls_the_closed_group() {
    let steps = exp_script();
    let pattern = exp_pattern();
    let out = run(&steps);
    assert_eq!(out.verdict, Verdict::Proof, "{:?}", out.report.failures);
    let lead = leading_group(&out.collection).unwrap();
    assert_eq!(lead.name.as_ref(), "g2");
    assert_eq!(lead.pattern.as_ref().unwrap().sequent, pattern);
    assert!(out.resolved.len() <= 2 * fhat_script().len());
}

#[test]
fn call_to_open_group_is_rejected() {
    let mut steps = fhat_script();
    steps.pop();
    steps.push(SiLKStep::new(StepRule::Ax1R { formula: p(zero()) }));
    steps.push(SiLKStep::new(StepRule::ClBc { pattern: None, vars: vec![] }));
    steps.push(SiLKStep::new(StepRule::Call { target: "g1".into(), g: n(), f: None, terms: vec![] }));
    let out = run(&steps);
    assert!(out.report.failures[0].message.contains("not closed"), "{:?}", out.report.failures);
}

#[test]
fn lke_closure_and_contraction() {
    let a = p(zero());
    let steps = vec![
        SiLKStep::new(StepRule::Ax1R { formula: a.clone() }),
        SiLKStep::new(StepRule::Ax2R { formula: a.clone() }),
        SiLKStep::new(StepRule::CcR),
        SiLKStep::new(StepRule::ClBc { pattern: None, vars: vec![] }),
        SiLKStep::new(StepRule::ClLKE),
    ];
    let out = run(&steps);
    assert_eq!(out.verdict, Verdict::Proof, "{:?}", out.report.failures);
    assert!(leading_group(&out.collection).unwrap().has_empty_stepcase());
}

#[test]
fn binary_rule_arity_is_checked() {
    let steps = vec![
        SiLKStep::new(StepRule::Ax1R { formula: p(zero()) }),
        SiLKStep::new(StepRule::Rho { case: Case::Bc, arity: 1, rule: RuleName::ImpL, data: RuleData::default() }),
    ];
    let out = run(&steps);
    assert!(out.report.failures[0].message.contains("expects 2"));
}

#[test]
fn step_kind_labels_round_trip() {
    for k in StepKind::ALL {
        assert_eq!(k.label().parse::<StepKind>().unwrap(), k);
    }
}
