use super::*;
use crate::fixtures::*;
use crate::kernel::{total_inferences, RuleName};
use crate::schema::{check_schema, evaluate_and_check};
use crate::silk::{StepKind, StepRule, Verdict};

fn opts() -> CheckOptions {
    CheckOptions::default()
}

/// The fhat proof in group `a`, interleaved with a one-pair LKE group `b`
/// that closes first.
fn interleaved() -> Vec<SiLKStep> {
    let mut a: Vec<SiLKStep> = fhat_script().into_iter().map(|s| s.in_group("a")).collect();
    let b = [
        SiLKStep::new(StepRule::Ax1R { formula: p(zero()) }).in_group("b"),
        SiLKStep::new(StepRule::ClBc { pattern: None, vars: vec![] }).in_group("b"),
        SiLKStep::new(StepRule::ClLKE).in_group("b"),
    ];
    let tail = a.split_off(2);
    let mut out = a;
    out.push(b[0].clone());
    out.extend(tail[..2].iter().cloned());
    out.push(b[1].clone());
    out.push(b[2].clone());
    out.extend(tail[2..].iter().cloned());
    out
}

fn by_closure(c: &Collection) -> Vec<Group> {
    c.in_closure_order().into_iter().cloned().collect()
}

#[test]
fn single_group_is_already_normal() {
    let s = fhat_script();
    let n = to_ppsnf(&s, &theory(), opts()).unwrap();
    assert_eq!(n, check_script(&s, &theory(), opts()).resolved);
    assert!(is_ppsnf(&s, &theory(), opts()).unwrap());
}

#[test]
fn exponential_script_keeps_its_order() {
    let s = exp_script();
    assert!(is_ppsnf(&s, &theory(), opts()).unwrap());
    let n = to_ppsnf(&s, &theory(), opts()).unwrap();
    assert_eq!(n, check_script(&s, &theory(), opts()).resolved);
}

#[test]
fn interleaved_script_is_reordered() {
    let s = interleaved();
    let before = check_script(&s, &theory(), opts());
    assert_eq!(before.verdict, Verdict::Proof, "{:?}", before.report.failures);
    assert!(!is_ppsnf(&s, &theory(), opts()).unwrap());
    let n = to_ppsnf(&s, &theory(), opts()).unwrap();
    let after = check_script(&n, &theory(), opts());
    assert_eq!(after.verdict, Verdict::Proof);
    assert!(is_ppsnf(&n, &theory(), opts()).unwrap());
    assert_eq!(by_closure(&before.collection), by_closure(&after.collection));
    assert_eq!(to_ppsnf(&n, &theory(), opts()).unwrap(), n);
    assert_eq!(n[0].kind(), StepKind::Ax1R);
    assert_eq!(n[0].group.as_deref(), Some("b"));
}

#[test]
fn derivations_are_not_translated() {
    let mut s = fhat_script();
    s.pop();
    assert!(matches!(to_ppsnf(&s, &theory(), opts()), Err(TranslateError::NotAProof { .. })));
    assert!(matches!(silk_to_schema(&s, &theory(), opts()), Err(TranslateError::NotAProof { .. })));
}

#[test]
fn simple_proof_translates_to_one_component() {
    let th = theory();
    let schema = silk_to_schema(&fhat_script(), &th, opts()).unwrap();
    let [c] = schema.components.as_slice() else { panic!("{} components", schema.components.len()) };
    assert_eq!(c.pattern, fhat_pattern());
    assert_eq!(c.step.as_ref().unwrap().links()[0].param, n());
    let report = check_schema(&schema, &th, opts());
    assert!(report.accepted(), "{:?}", report.failures);
    for alpha in 0..6 {
        let (report, trace) = evaluate_and_check(&schema, alpha, &th, opts());
        assert!(report.accepted(), "alpha {alpha}: {:?}", report.failures);
        let trace = trace.unwrap();
        // ImpL, ForallL, ContrL per unfolding plus one WeakL.
        assert_eq!(total_inferences(&trace.proof), 1 + 3 * alpha);
    }
}

#[test]
fn exponential_proof_forward_links() {
    let th = theory();
    let schema = silk_to_schema(&exp_script(), &th, opts()).unwrap();
    let names: Vec<&str> = schema.components.iter().map(|c| &*c.name).collect();
    assert_eq!(names, ["g2", "g1"]);
    let link = schema.components[0].step.as_ref().unwrap();
    assert_eq!(link.rule, RuleName::Link);
    assert_eq!(link.data.link.as_ref().unwrap().proof.as_ref(), "g1");
    assert!(check_schema(&schema, &th, opts()).accepted());
    let mut prev = 0;
    for alpha in 0..6 {
        let (report, trace) = evaluate_and_check(&schema, alpha, &th, opts());
        assert!(report.accepted(), "alpha {alpha}: {:?}", report.failures);
        let count = total_inferences(&trace.unwrap().proof);
        if alpha > 0 {
            assert_eq!(count, 1 + 3 * (1 << alpha));
            assert!(count as f64 >= 1.8 * prev as f64);
        }
        prev = count;
    }
}

#[test]
fn lke_only_proof_is_a_degenerate_schema() {
    let th = theory();
    let s = vec![
        SiLKStep::new(StepRule::Ax1R { formula: p(zero()) }),
        SiLKStep::new(StepRule::ClBc { pattern: None, vars: vec![] }),
        SiLKStep::new(StepRule::ClLKE),
    ];
    let schema = silk_to_schema(&s, &th, opts()).unwrap();
    assert_eq!(schema.components.len(), 1);
    assert!(schema.components[0].step.is_none());
    for alpha in [0, 3] {
        assert!(evaluate_and_check(&schema, alpha, &th, opts()).0.accepted());
    }
    let out = check_script(&s, &th, opts());
    assert_eq!(interpret(&out.collection, &"n".into()).unwrap(), Formula::imp(p(zero()), p(zero())));
}

#[test]
fn induction_formula_of_the_simple_proof() {
    let th = theory();
    let got = interpret_script(&fhat_script(), &th, opts()).unwrap();
    let d = Formula::and(p(zero()), step_formula());
    let inst = |k: NumExpr| Formula::imp(d.clone(), p(fhat(k, zero())));
    let x = NumExpr::param("x");
    let expected = Formula::imp(
        Formula::and(
            inst(NumExpr::ZERO),
            Formula::forall_num("x", Formula::imp(inst(x.clone()), inst(NumExpr::succ(x)))),
        ),
        Formula::imp(d.clone(), Formula::forall_num("n", p(fhat(n(), zero())))),
    );
    assert!(got.alpha_eq(&expected), "{got}");
}

#[test]
fn empty_sides_of_a_sequent() {
    let b = p(zero());
    assert_eq!(sequent_formula(&Sequent::new(vec![], vec![b.clone()])), b);
    assert_eq!(sequent_formula(&Sequent::new(vec![b.clone()], vec![])), Formula::imp(b, Formula::False));
}
