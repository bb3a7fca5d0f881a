//! Browser demo: unroll a bundled schema at a chosen α, chart inference
//! growth, and check an edited SiLK script.
//!
//! Every export returns a JSON string; errors are reported as `{"error": ..}`.

use schemata::frontend::{parse_schema, parse_script, parse_theory};
use schemata::kernel::{total_inferences, CheckOptions, Proof};
use schemata::rewrite::Theory;
use schemata::schema::{evaluate_and_check, ProofSchema};
use schemata::silk::check_script;
use schemata::translate::interpret;
use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

const FHAT: &str = include_str!("../../../corpus/fhat.thy");
const SHAT: &str = include_str!("../../../corpus/shat.thy");

/// Bundled schemata: name, theory text, schema text, largest α offered.
const SCHEMATA: &[(&str, &str, &str, u64)] = &[
    ("schema_shat", SHAT, include_str!("../../../corpus/schema_shat.sch"), 12),
    ("schema_fhat", FHAT, include_str!("../../../corpus/schema_fhat.sch"), 12),
    ("schema_exp", FHAT, include_str!("../../../corpus/schema_exp.sch"), 7),
];

const SCRIPTS: &[(&str, &str, &str)] = &[
    ("silk_fhat", FHAT, include_str!("../../../corpus/silk_fhat.slk")),
    ("silk_exp", FHAT, include_str!("../../../corpus/silk_exp.slk")),
    ("silk_shat", SHAT, include_str!("../../../corpus/silk_shat.slk")),
];

fn error(e: impl ToString) -> Value {
    json!({ "error": e.to_string() })
}

fn schema(name: &str) -> Result<(Theory, ProofSchema), Value> {
    let (_, th, text, _) =
        SCHEMATA.iter().find(|s| s.0 == name).ok_or_else(|| error(format!("unknown schema {name}")))?;
    let th = parse_theory(th).map_err(error)?;
    let f = parse_schema(text, &th).map_err(error)?;
    Ok((th, f.schema))
}

fn tree(p: &Proof) -> Value {
    json!({
        "rule": p.rule.short(),
        "sequent": p.conclusion.to_string(),
        "premises": p.premises.iter().map(tree).collect::<Vec<_>>(),
    })
}

/// Bundled schemata and scripts with their source text.
pub fn catalog() -> Value {
    json!({
        "schemata": SCHEMATA.iter().map(|(n, _, text, max)| json!({"name": n, "max_alpha": max, "text": text})).collect::<Vec<_>>(),
        "scripts": SCRIPTS.iter().map(|(n, _, text)| json!({"name": n, "text": text})).collect::<Vec<_>>(),
    })
}

/// The schema evaluated at `alpha`, with and without its ℰ inferences.
pub fn unroll_value(name: &str, alpha: u64) -> Value {
    let (th, sch) = match schema(name) {
        Ok(x) => x,
        Err(e) => return e,
    };
    let (report, trace) = evaluate_and_check(&sch, alpha, &th, CheckOptions::default());
    let Some(t) = trace else {
        return json!({ "accepted": false, "failures": report.failures.iter().map(|f| f.to_string()).collect::<Vec<_>>() });
    };
    json!({
        "accepted": report.accepted(),
        "alpha": alpha,
        "inferences": total_inferences(&t.proof),
        "unrolled_inferences": total_inferences(&t.unrolled),
        "rewrite_steps": t.rewrite_steps,
        "end_sequent": t.proof.conclusion.to_string(),
        "unrolled": tree(&t.unrolled),
        "proof": tree(&t.proof),
    })
}

/// Inference counts for α in `0..=max`.
pub fn growth_value(name: &str, max: u64) -> Value {
    let (th, sch) = match schema(name) {
        Ok(x) => x,
        Err(e) => return e,
    };
    let mut rows = Vec::new();
    for alpha in 0..=max {
        let (_, trace) = evaluate_and_check(&sch, alpha, &th, CheckOptions::default());
        let Some(t) = trace else { break };
        rows.push(json!({
            "alpha": alpha,
            "inferences": total_inferences(&t.proof),
            "unrolled_inferences": total_inferences(&t.unrolled),
        }));
    }
    json!({ "name": name, "rows": rows })
}

/// Replays script `text` over the theory of the bundled script `base`.
pub fn check_value(base: &str, text: &str) -> Value {
    let Some((_, th, _)) = SCRIPTS.iter().find(|s| s.0 == base) else {
        return error(format!("unknown script {base}"));
    };
    let th = match parse_theory(th) {
        Ok(t) => t,
        Err(e) => return error(e),
    };
    let f = match parse_script(text, &th) {
        Ok(f) => f,
        Err(e) => return error(e),
    };
    let out = check_script(&f.steps, &th, CheckOptions::default());
    let failures: Vec<String> = out
        .report
        .failures
        .iter()
        .map(|x| {
            let line = x.path.strip_prefix("step ").and_then(|i| i.parse::<usize>().ok()).map(|i| f.lines[i - 1]);
            format!("line {}: {}", line.unwrap_or(0), x.message)
        })
        .collect();
    json!({
        "verdict": out.verdict.to_string(),
        "steps": out.resolved.len(),
        "groups": out.collection.groups.len(),
        "failures": failures,
        "interpretation": interpret(&out.collection, &th.sig.param).ok().map(|f| f.to_string()),
    })
}

#[wasm_bindgen]
pub fn corpus() -> String {
    catalog().to_string()
}

#[wasm_bindgen]
pub fn unroll(name: &str, alpha: u32) -> String {
    unroll_value(name, alpha.into()).to_string()
}

#[wasm_bindgen]
pub fn growth(name: &str, max: u32) -> String {
    growth_value(name, max.into()).to_string()
}

#[wasm_bindgen]
pub fn check(base: &str, text: &str) -> String {
    check_value(base, text).to_string()
}
