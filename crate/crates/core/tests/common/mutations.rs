//! Each case breaks one corpus artefact and checks that the failure names the
//! offending node or step.

use std::collections::BTreeSet;

use schemata::frontend::{parse_lk, parse_schema, parse_script};
use schemata::kernel::{check_proof, CheckOptions, Failure, Mode};
use schemata::rewrite::Theory;
use schemata::schema::check_schema;
use schemata::silk::{check_script, Verdict};

use super::{text, theory};

fn lk_failures(src: &str, th: &Theory, mode: Mode) -> Vec<Failure> {
    let f = parse_lk(src, th).unwrap_or_else(|e| panic!("{e}"));
    let allowed = BTreeSet::from([th.sig.param.clone()]);
    check_proof(&f.proof, mode, th, &f.env, &allowed, CheckOptions::default()).failures
}

/// Replays `src`; returns the first failure of a rejected script.
fn script_failure(src: &str, th: &Theory) -> Failure {
    let f = parse_script(src, th).unwrap_or_else(|e| panic!("{e}"));
    let out = check_script(&f.steps, th, CheckOptions::default());
    assert_eq!(out.verdict, Verdict::Rejected);
    out.report.failures[0].clone()
}

fn first_lines(name: &str, k: usize) -> String {
    text(name).lines().take(k).collect::<Vec<_>>().join("\n") + "\n"
}

fn schema_failures(src: &str, th: &Theory) -> Vec<Failure> {
    let f = parse_schema(src, th).unwrap_or_else(|e| panic!("{e}"));
    check_schema(&f.schema, th, CheckOptions::default()).failures
}

pub fn eigenvariable_free_in_the_conclusion() {
    let th = theory("fhat.thy");
    let src = "rule forall:r { conclusion P(b) |- forall x. P(x); aux r0; formula forall x. P(x); eigen b; rule ax { conclusion P(b) |- P(b); } }";
    let f = lk_failures(src, &th, Mode::LK);
    assert_eq!((f[0].path.as_str(), f[0].rule.as_str()), (".", "ForallR"), "{f:?}");
    assert!(f[0].message.contains("eigenvariable"), "{}", f[0].message);
}

pub fn eigenvariable_reused_in_the_existential() {
    let th = theory("fhat.thy");
    let src = text("quantifiers.lkp")
        .replace("exists z. P(f(z))", "exists z. P(f(a))")
        .replace("term a;\n      rule imp", "term 0;\n      rule imp");
    let f = lk_failures(&src, &th, Mode::LK);
    assert!(f.iter().any(|x| x.path == "." && x.rule == "ExistsL"), "{f:?}");
}

pub fn wrong_instantiation_term() {
    let th = theory("fhat.thy");
    let src =
        text("quantifiers.lkp").replace("forall y. P(y) -> P(f(y)); term a;", "forall y. P(y) -> P(f(y)); term f(a);");
    let f = lk_failures(&src, &th, Mode::LK);
    assert_eq!((f[0].path.as_str(), f[0].rule.as_str()), ("0", "ForallL"), "{f:?}");
}

pub fn axiom_with_different_sides() {
    let th = theory("fhat.thy");
    let src = text("quantifiers.lkp")
        .replace("rule ax { conclusion P(f(a)) |- P(f(a)); }", "rule ax { conclusion P(f(a)) |- P(a); }");
    let f = lk_failures(&src, &th, Mode::LK);
    assert!(f.iter().any(|x| x.path == "0.0.0.1" && x.rule == "Ax"), "{f:?}");
}

pub fn non_joinable_rewrite_step() {
    let th = theory("fhat.thy");
    let src = text("fhat_lke.lkp").replace("fhat(2, 0)", "fhat(3, 0)");
    let f = lk_failures(&src, &th, Mode::LKE);
    assert_eq!((f[0].path.as_str(), f[0].rule.as_str()), (".", "ERule"), "{f:?}");
}

pub fn rewrite_step_outside_lke() {
    let th = theory("fhat.thy");
    let f = lk_failures(&text("fhat_lke.lkp"), &th, Mode::LK);
    assert_eq!((f[0].path.as_str(), f[0].rule.as_str()), (".", "ERule"), "{f:?}");
}

pub fn link_to_an_earlier_component() {
    let th = theory("fhat.thy");
    let src = text("schema_exp.sch");
    let mut f = parse_schema(&src, &th).unwrap();
    f.schema.components.reverse();
    let failures = check_schema(&f.schema, &th, CheckOptions::default()).failures;
    assert!(failures.iter().any(|x| x.path == "g2/step" && x.message.contains("earlier component")), "{failures:?}");
}

pub fn link_that_does_not_descend() {
    let th = theory("shat.thy");
    let src = text("schema_shat.sch").replace("link phi n terms", "link phi n + 1 terms");
    let f = schema_failures(&src, &th);
    assert!(f.iter().any(|x| x.path.starts_with("phi") && x.rule == "Link"), "{f:?}");
}

pub fn cycle_before_basecase_closure() {
    let th = theory("fhat.thy");
    let src = first_lines("silk_fhat.slk", 6) + "cycle terms []\n";
    let f = script_failure(&src, &th);
    assert_eq!((f.path.as_str(), f.rule.as_str()), ("step 4", "cycle"), "{f:?}");
}

pub fn annotation_mismatch_at_stepcase_closure() {
    let th = theory("fhat.thy");
    let src = text("silk_fhat.slk").replace("clsc annot s(n)", "clsc annot s(s(n))");
    let f = script_failure(&src, &th);
    assert_eq!((f.path.as_str(), f.rule.as_str()), ("step 11", "cl_sc"), "{f:?}");
}

pub fn rule_applied_to_a_closed_group() {
    let th = theory("fhat.thy");
    let src = text("silk_fhat.slk") + "rho sc 1 w:l formula P(0) group=g1\n";
    let f = script_failure(&src, &th);
    assert_eq!((f.path.as_str(), f.rule.as_str()), ("step 12", "rho1_sc"), "{f:?}");
    assert!(f.message.contains("closed"), "{}", f.message);
}

pub fn basecase_closure_with_a_wrong_pattern() {
    let th = theory("fhat.thy");
    let src = text("silk_fhat.slk").replace("P(fhat(n, 0))\" vars", "P(fhat(s(n), 0))\" vars");
    let f = script_failure(&src, &th);
    assert_eq!((f.path.as_str(), f.rule.as_str()), ("step 4", "cl_bc"), "{f:?}");
}

pub fn call_to_an_unknown_group() {
    let th = theory("fhat.thy");
    let src = text("silk_exp.slk").replace("call target=g1", "call target=g7");
    let f = script_failure(&src, &th);
    assert_eq!((f.path.as_str(), f.rule.as_str()), ("step 18", "call"), "{f:?}");
}

pub fn lke_closure_with_an_open_stepcase() {
    let th = theory("fhat.thy");
    let src = first_lines("silk_fhat.slk", 8) + "cllke\n";
    let f = script_failure(&src, &th);
    assert_eq!((f.path.as_str(), f.rule.as_str()), ("step 6", "cl_LKE"), "{f:?}");
}

pub fn unary_arity_for_a_binary_rule() {
    let th = theory("fhat.thy");
    let src = text("silk_fhat.slk").replace("rho sc 2 imp:l", "rho sc 1 imp:l");
    let f = script_failure(&src, &th);
    assert_eq!((f.path.as_str(), f.rule.as_str()), ("step 8", "rho1_sc"), "{f:?}");
}

pub fn duplicate_pair_name() {
    let th = theory("fhat.thy");
    let src = text("silk_binary_lke.slk").replace("as=b", "as=a");
    let f = script_failure(&src, &th);
    assert_eq!((f.path.as_str(), f.rule.as_str()), ("step 2", "Ax2:r"), "{f:?}");
}

pub fn wrong_auxiliary_position_in_a_stepcase() {
    let th = theory("fhat.thy");
    let src = text("silk_fhat.slk").replace("forall:l aux l2", "forall:l aux l1");
    let f = script_failure(&src, &th);
    assert_eq!((f.path.as_str(), f.rule.as_str()), ("step 9", "rho1_sc"), "{f:?}");
}

pub const CASES: &[(&str, fn())] = &[
    ("eigenvariable_free_in_the_conclusion", eigenvariable_free_in_the_conclusion),
    ("eigenvariable_reused_in_the_existential", eigenvariable_reused_in_the_existential),
    ("wrong_instantiation_term", wrong_instantiation_term),
    ("axiom_with_different_sides", axiom_with_different_sides),
    ("non_joinable_rewrite_step", non_joinable_rewrite_step),
    ("rewrite_step_outside_lke", rewrite_step_outside_lke),
    ("link_to_an_earlier_component", link_to_an_earlier_component),
    ("link_that_does_not_descend", link_that_does_not_descend),
    ("cycle_before_basecase_closure", cycle_before_basecase_closure),
    ("annotation_mismatch_at_stepcase_closure", annotation_mismatch_at_stepcase_closure),
    ("rule_applied_to_a_closed_group", rule_applied_to_a_closed_group),
    ("basecase_closure_with_a_wrong_pattern", basecase_closure_with_a_wrong_pattern),
    ("call_to_an_unknown_group", call_to_an_unknown_group),
    ("lke_closure_with_an_open_stepcase", lke_closure_with_an_open_stepcase),
    ("unary_arity_for_a_binary_rule", unary_arity_for_a_binary_rule),
    ("duplicate_pair_name", duplicate_pair_name),
    ("wrong_auxiliary_position_in_a_stepcase", wrong_auxiliary_position_in_a_stepcase),
];
