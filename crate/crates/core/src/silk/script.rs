use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::{Collection, Engine, Group, SiLKStep, SilkError, Stepcase};
use crate::kernel::{CheckOptions, CheckReport, Failure};
use crate::rewrite::Theory;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Proof,
    Derivation,
    Rejected,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Proof => "proof",
            Verdict::Derivation => "derivation",
            Verdict::Rejected => "rejected",
        })
    }
}

#[derive(Clone, Debug)]
pub struct Outcome {
    /// State after the last successful step.
    pub collection: Collection,
    pub verdict: Verdict,
    pub report: CheckReport,
    /// The successfully applied steps with defaulted names filled in.
    pub resolved: Vec<SiLKStep>,
}

/// Replays `steps` from the empty collection, stopping at the first failure.
pub fn check_script(steps: &[SiLKStep], theory: &Theory, opts: CheckOptions) -> Outcome {
    let mut engine = Engine::new(theory, opts);
    let mut collection = Collection::default();
    let mut resolved = Vec::with_capacity(steps.len());
    let mut failures = Vec::new();
    for (i, step) in steps.iter().enumerate() {
        match engine.apply(&collection, step) {
            Ok((next, r)) => {
                collection = next;
                resolved.push(r);
            }
            Err(e) => {
                failures.push(Failure {
                    path: format!("step {}", i + 1),
                    rule: step.kind().to_string(),
                    message: e.to_string(),
                });
                break;
            }
        }
    }
    let verdict = if !failures.is_empty() {
        Verdict::Rejected
    } else if collection.all_closed() {
        Verdict::Proof
    } else {
        Verdict::Derivation
    };
    let mut counts = BTreeMap::new();
    for r in &resolved {
        *counts.entry(r.kind().to_string()).or_insert(0) += 1;
    }
    counts.insert("steps".into(), resolved.len() as u64);
    counts.insert("groups".into(), collection.groups.len() as u64);
    Outcome { collection, verdict, report: CheckReport::new(failures, counts), resolved }
}

/// The group closed last.
pub fn leading_group(c: &Collection) -> Result<&Group, SilkError> {
    if !c.all_closed() {
        return Err(SilkError::NotAProof);
    }
    c.groups.iter().max_by_key(|g| g.closure_index).ok_or(SilkError::NotAProof)
}

impl Group {
    /// `true` for groups closed by cl_LKE.
    pub fn has_empty_stepcase(&self) -> bool {
        matches!(self.pairs.first().map(|p| &p.stepcase), Some(Stepcase::Empty))
    }
}
