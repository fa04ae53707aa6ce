//! Assertion transcripts shared by the pipeline stages and the CLI.

use serde::Serialize;
use serde_json::{json, Value};

/// One checked claim.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub claim: String,
    pub passed: bool,
    pub detail: String,
}

impl Check {
    pub fn new(claim: impl Into<String>, passed: bool, detail: impl Into<String>) -> Self {
        Check {
            claim: claim.into(),
            passed,
            detail: detail.into(),
        }
    }

    pub fn pass(claim: impl Into<String>, detail: impl Into<String>) -> Self {
        Self::new(claim, true, detail)
    }

    /// Turns a failed check into an `AssertionFailed` error.
    pub fn into_result(self) -> crate::Result<Check> {
        if self.passed {
            Ok(self)
        } else {
            Err(crate::Error::AssertionFailed {
                claim: self.claim,
                witness: self.detail,
            })
        }
    }
}

/// Transcript of checks collected over a run; duplicate claims are merged, a
/// claim fails if any of its instances failed.
#[derive(Clone, Debug, Default)]
pub struct Transcript {
    entries: Vec<(String, usize, usize, Option<String>)>,
}

impl Transcript {
    pub fn record(&mut self, c: &Check) {
        let pos = match self.entries.iter().position(|e| e.0 == c.claim) {
            Some(p) => p,
            None => {
                self.entries.push((c.claim.clone(), 0, 0, None));
                self.entries.len() - 1
            }
        };
        let e = &mut self.entries[pos];
        if c.passed {
            e.1 += 1;
        } else {
            e.2 += 1;
            e.3.get_or_insert_with(|| c.detail.clone());
        }
    }

    pub fn extend<'a>(&mut self, checks: impl IntoIterator<Item = &'a Check>) {
        checks.into_iter().for_each(|c| self.record(c));
    }

    pub fn all_passed(&self) -> bool {
        self.entries.iter().all(|e| e.2 == 0)
    }

    pub fn failures(&self) -> usize {
        self.entries.iter().map(|e| e.2).sum()
    }

    pub fn to_json(&self) -> Value {
        Value::Array(
            self.entries
                .iter()
                .map(|(claim, ok, bad, first)| {
                    json!({ "claim": claim, "passed": *bad == 0, "checks": ok + bad, "failures": bad, "first_failure": first })
                })
                .collect(),
        )
    }
}
