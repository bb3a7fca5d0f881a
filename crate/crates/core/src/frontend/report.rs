use serde::{Deserialize, Serialize};

use crate::kernel::{CheckOptions, CheckReport, Failure, Status};
use crate::rewrite::STRATEGY;

pub const FORMAT_VERSION: u32 = 1;

/// Sizes of the unrolled proof at one parameter value.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StatsRow {
    pub alpha: u64,
    /// Inferences of the normalized LK proof.
    pub inferences: u64,
    /// Inferences before normalization, ℰ steps included.
    pub unrolled_inferences: u64,
    pub expansions: u64,
    pub rewrite_steps: u64,
}

/// Machine-readable result of one CLI command.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub format_version: u32,
    pub command: String,
    pub file: String,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub verdict: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mode: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub alpha: Option<u64>,
    pub failures: Vec<Failure>,
    pub counts: std::collections::BTreeMap<String, u64>,
    pub fuel: u64,
    pub lenient: bool,
    pub strategy: String,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub rows: Vec<StatsRow>,
    /// Printed artefact (proof, schema, script or formula), if any.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub output: Option<String>,
}

impl Report {
    pub fn new(command: &str, file: &str, check: CheckReport, opts: CheckOptions) -> Report {
        Report {
            format_version: FORMAT_VERSION,
            command: command.into(),
            file: file.into(),
            status: check.status,
            verdict: None,
            mode: None,
            alpha: None,
            failures: check.failures,
            counts: check.counts,
            fuel: opts.fuel,
            lenient: opts.lenient,
            strategy: STRATEGY.into(),
            rows: Vec::new(),
            output: None,
        }
    }

    pub fn accepted(&self) -> bool {
        self.status == Status::Accepted
    }

    pub fn status_word(&self) -> &'static str {
        match self.status {
            Status::Accepted => "accepted",
            Status::Rejected => "rejected",
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}
