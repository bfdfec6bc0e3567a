use serde::Serialize;
use serde_json::Value;

/// One named check with the invariant it tests and the evidence.
#[derive(Debug, Serialize)]
pub struct Verdict {
    pub check: String,
    pub invariant: String,
    pub passed: bool,
    pub detail: Value,
}

impl Verdict {
    pub fn new(check: &str, invariant: &str, passed: bool, detail: impl Serialize) -> Verdict {
        Verdict {
            check: check.to_string(),
            invariant: invariant.to_string(),
            passed,
            detail: serde_json::to_value(detail).unwrap_or(Value::Null),
        }
    }

    /// An informational entry that always passes.
    pub fn info(check: &str, detail: impl Serialize) -> Verdict {
        Verdict::new(check, "informational", true, detail)
    }
}

#[derive(Debug, Serialize)]
pub struct RunReport {
    pub schema: u32,
    pub command: Vec<String>,
    pub seed: u64,
    pub verdicts: Vec<Verdict>,
    pub passed: bool,
}

impl RunReport {
    pub fn new(command: Vec<String>, seed: u64, verdicts: Vec<Verdict>) -> RunReport {
        let passed = verdicts.iter().all(|v| v.passed);
        RunReport { schema: balpair_core::io::SCHEMA, command, seed, verdicts, passed }
    }
}
