//! The certificate record shared by every verification suite.
//!
//! A certificate names the module and operation, the inputs it was run on,
//! a boolean verdict, and a payload of printable details (polynomials in
//! the text grammar, bases, signs, numeric traces). Maps are ordered so
//! serialised reports are deterministic.

use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt;

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct Certificate {
    pub module: String,
    pub operation: String,
    pub inputs: BTreeMap<String, String>,
    pub verdict: bool,
    pub detail: BTreeMap<String, String>,
}

impl Certificate {
    pub fn new(module: &str, operation: &str) -> Self {
        Certificate {
            module: module.to_string(),
            operation: operation.to_string(),
            inputs: BTreeMap::new(),
            verdict: false,
            detail: BTreeMap::new(),
        }
    }

    pub fn input(mut self, key: &str, value: impl fmt::Display) -> Self {
        self.inputs.insert(key.to_string(), value.to_string());
        self
    }

    pub fn detail(mut self, key: &str, value: impl fmt::Display) -> Self {
        self.detail.insert(key.to_string(), value.to_string());
        self
    }

    pub fn verdict(mut self, verdict: bool) -> Self {
        self.verdict = verdict;
        self
    }

    /// Stable key used to sort records inside a report.
    pub fn sort_key(&self) -> (String, String, String) {
        (
            self.module.clone(),
            self.operation.clone(),
            format!("{:?}", self.inputs),
        )
    }
}

impl fmt::Display for Certificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let inputs = self
            .inputs
            .iter()
            .map(|(k, v)| format!("{k}={v}"))
            .collect::<Vec<_>>()
            .join(", ");
        write!(
            f,
            "[{}] {}::{}({})",
            if self.verdict { "pass" } else { "FAIL" },
            self.module,
            self.operation,
            inputs
        )
    }
}
