use std::collections::BTreeMap;

use dold_thom::suites::Check;
use serde::Serialize;
use serde_json::Value;

#[derive(Debug, Serialize)]
pub struct CheckOutcome {
    pub name: String,
    pub expected: String,
    pub computed: String,
    pub pass: bool,
}

impl From<Check> for CheckOutcome {
    fn from(c: Check) -> Self {
        CheckOutcome { name: c.name, expected: c.expected, computed: c.computed, pass: c.pass }
    }
}

#[derive(Debug, Serialize)]
pub struct Timing {
    pub total_seconds: f64,
}

/// The JSON document every command prints. Field order is the output order.
#[derive(Debug, Serialize)]
pub struct RunReport {
    pub engine_version: &'static str,
    pub command: Vec<String>,
    pub input_hashes: BTreeMap<String, String>,
    pub checks: Vec<CheckOutcome>,
    pub results: Value,
    pub error: Option<String>,
    pub timing: Option<Timing>,
}

impl RunReport {
    pub fn new(command: Vec<String>) -> Self {
        RunReport {
            engine_version: env!("CARGO_PKG_VERSION"),
            command,
            input_hashes: BTreeMap::new(),
            checks: Vec::new(),
            results: Value::Null,
            error: None,
            timing: None,
        }
    }

    pub fn push(&mut self, check: Check) {
        self.checks.push(check.into());
    }

    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }
}
