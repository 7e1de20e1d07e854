//! The JSON envelope every subcommand prints.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use serde_json::Value;

pub const SCHEMA_VERSION: &str = "1";

/// Output document. Serialized through `serde_json::Value`, whose maps are
/// ordered, so keys come out sorted at every level.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportDocument {
    pub schema_version: String,
    pub command: String,
    pub inputs: Value,
    pub results: Value,
    /// Citation tags the results rest on.
    pub provenance: Vec<String>,
    /// Seconds per phase; empty unless timings were requested, so that
    /// output bytes depend only on inputs and flags.
    pub timings: BTreeMap<String, f64>,
}

impl ReportDocument {
    pub fn new(command: &str, inputs: Value, results: Value) -> Self {
        Self {
            schema_version: SCHEMA_VERSION.to_string(),
            command: command.to_string(),
            inputs,
            results,
            provenance: Vec::new(),
            timings: BTreeMap::new(),
        }
    }

    pub fn to_value(&self) -> Value {
        serde_json::to_value(self).expect("report fields are plain JSON")
    }

    /// Pretty JSON with sorted keys and a trailing newline.
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.to_value()).expect("value serializes");
        s.push('\n');
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn round_trip_and_key_order() {
        let mut doc = ReportDocument::new("check", json!({"b": 1, "a": [1, 2]}), json!({"z": null}));
        doc.provenance.push("wang".into());
        let text = doc.to_json();
        let back: ReportDocument = serde_json::from_str(&text).unwrap();
        assert_eq!(back, doc);
        let keys: Vec<&str> = ["command", "inputs", "provenance", "results", "schema_version", "timings"]
            .to_vec();
        let positions: Vec<usize> = keys
            .iter()
            .map(|k| text.find(&format!("\"{k}\"")).unwrap())
            .collect();
        assert!(positions.windows(2).all(|w| w[0] < w[1]));
        assert!(text.find("\"a\"").unwrap() < text.find("\"b\"").unwrap());
    }
}
