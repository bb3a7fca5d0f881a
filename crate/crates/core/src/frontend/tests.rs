use super::*;
use crate::fixtures::*;
use crate::kernel::{CheckOptions, LinkEnv};
use crate::schema::evaluate_and_check;
use crate::translate::silk_to_schema;

#[test]
fn fixture_theory_round_trips() {
    let th = theory();
    assert_eq!(parse_theory(&print_theory(&th)).unwrap(), th);
}

#[test]
fn scripts_round_trip() {
    let th = theory();
    for steps in [fhat_script(), exp_script()] {
        let f = ScriptFile { theory: Some("x.thy".into()), steps, lines: vec![] };
        let text = print_script(&f, &th);
        let back = parse_script(&text, &th).unwrap_or_else(|e| panic!("{e}\n{text}"));
        assert_eq!(back.steps, f.steps, "{text}");
        assert_eq!(back.theory, f.theory);
    }
}

#[test]
fn schema_and_unrolled_proof_round_trip() {
    let th = theory();
    let schema = silk_to_schema(&exp_script(), &th, CheckOptions::default()).unwrap();
    let f = SchemaFile { theory: None, schema };
    let text = print_schema(&f, &th);
    assert_eq!(parse_schema(&text, &th).unwrap_or_else(|e| panic!("{e}\n{text}")), f);
    let (_, trace) = evaluate_and_check(&f.schema, 2, &th, CheckOptions::default());
    let lk = LkFile { theory: Some("t.thy".into()), mode: None, env: LinkEnv::default(), proof: trace.unwrap().proof };
    let text = print_lk(&lk, &th);
    assert_eq!(parse_lk(&text, &th).unwrap_or_else(|e| panic!("{e}\n{text}")), lk);
}

#[test]
fn spec_style_script_lines() {
    let th = theory();
    let text = "theory \"fhat.thy\"\nax1r \"P(0) |- P(0)\" group=1 as=a\nrho bc 1 w:l formula (forall x. P(x) -> P(f(x))) group=1 pair=a\nclbc group=1 vars []\n";
    let f = parse_script(text, &th).unwrap();
    assert_eq!(f.theory.as_deref(), Some("fhat.thy"));
    assert_eq!(f.steps.len(), 3);
    assert_eq!(f.steps[0].group.as_deref(), Some("1"));
    assert_eq!(f.lines, vec![2, 3, 4]);
    assert_eq!(theory_directive(text).as_deref(), Some("fhat.thy"));
}

#[test]
fn script_errors_carry_the_line() {
    let th = theory();
    let e = parse_script("ax1r P(0)\n\nrho xc w:l\n", &th).unwrap_err();
    assert_eq!((e.line, e.col), (3, 5));
    let e = parse_script("frob\n", &th).unwrap_err();
    assert!(e.message.contains("unknown SiLK rule"), "{e}");
}

#[test]
fn premise_blocks_nest() {
    let th = theory();
    let text = "rule w:l { conclusion P(0), P(0) |- P(0); formula P(0); rule ax { conclusion P(0) |- P(0); } }";
    let f = parse_lk(text, &th).unwrap();
    assert_eq!(f.proof.premises.len(), 1);
    let wrapped =
        "rule w:l { conclusion P(0), P(0) |- P(0); formula P(0); premise { rule ax { conclusion P(0) |- P(0); } } }";
    assert_eq!(parse_lk(wrapped, &th).unwrap(), f);
}

#[test]
fn json_report_is_versioned() {
    let r = Report::new(
        "check-lk",
        "a.lkp",
        crate::kernel::CheckReport::new(vec![], Default::default()),
        CheckOptions::default(),
    );
    let v: serde_json::Value = serde_json::from_str(&r.to_json()).unwrap();
    assert_eq!(v["format_version"], FORMAT_VERSION);
    assert_eq!(v["status"], "accepted");
    assert_eq!(v["strategy"], "leftmost-innermost");
}
