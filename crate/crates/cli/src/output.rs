use std::collections::BTreeMap;

use clap::ValueEnum;
use palred::pipeline::CheckOutcome;
use serde::Serialize;
use serde_json::Value;
use sha2::{Digest, Sha256};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Table,
    Csv,
    Json,
}

/// Hex SHA-256 of the canonical JSON form of a command input.
pub fn fingerprint(input: &Value) -> String {
    let canonical = serde_json::to_string(input).expect("json values serialize");
    Sha256::digest(canonical.as_bytes()).iter().map(|b| format!("{b:02x}")).collect()
}

/// The JSON document every command emits under `--format json`.
#[derive(Debug, Serialize)]
pub struct Envelope<'a, T: Serialize> {
    pub command: &'a str,
    pub fingerprint: String,
    pub input: &'a Value,
    pub checks: Vec<CheckOutcome>,
    pub timings: BTreeMap<String, f64>,
    pub result: T,
}

impl<'a, T: Serialize> Envelope<'a, T> {
    pub fn new(command: &'a str, input: &'a Value, result: T) -> Self {
        Envelope {
            command,
            fingerprint: fingerprint(input),
            input,
            checks: Vec::new(),
            timings: BTreeMap::new(),
            result,
        }
    }

    pub fn print(&self) {
        println!("{}", serde_json::to_string_pretty(self).expect("report serializes"));
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn fingerprint_is_stable_and_input_sensitive() {
        let a = fingerprint(&json!({"seed": 7, "id": "L17"}));
        assert_eq!(a, fingerprint(&json!({"id": "L17", "seed": 7})));
        assert_ne!(a, fingerprint(&json!({"seed": 8, "id": "L17"})));
        assert_eq!(a.len(), 64);
    }
}
