use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

/// Verdict of one trial or probe.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CaseVerdict {
    pub id: usize,
    pub pass: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

/// Machine-readable result of a verification suite.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub suite: String,
    pub seed: u64,
    pub trials: usize,
    pub passed: usize,
    pub cases: Vec<CaseVerdict>,
    /// Payload of the first failing case.
    pub counterexample: Option<serde_json::Value>,
}

impl SuiteReport {
    pub fn ok(&self) -> bool {
        self.passed == self.trials
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// One-line summary plus a row per failing case.
    pub fn summary_table(&self) -> String {
        let mut out = format!(
            "{:<14} seed={:<6} {:>5}/{:<5} {}\n",
            self.suite,
            self.seed,
            self.passed,
            self.trials,
            if self.ok() { "PASS" } else { "FAIL" }
        );
        for c in self.cases.iter().filter(|c| !c.pass) {
            let _ = writeln!(out, "  case {:>4}: {}", c.id, c.detail.as_deref().unwrap_or("failed"));
        }
        out
    }
}
