//! Scenario reports and their text and JSON renderings.

use std::fmt::{self, Write as _};

use serde::Serialize;
use serde_json::{Map, Value};

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Text,
    Json,
}

/// Every certificate in a report has passed its own check; there is no
/// other status.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Checked,
}

#[derive(Debug, Clone, Serialize)]
pub struct Certificate {
    pub kind: String,
    pub status: Status,
    pub data: Map<String, Value>,
}

impl Certificate {
    pub fn new(kind: impl Into<String>) -> Certificate {
        Certificate { kind: kind.into(), status: Status::Checked, data: Map::new() }
    }

    pub fn with(mut self, key: &str, value: impl Into<Value>) -> Certificate {
        self.data.insert(key.to_string(), value.into());
        self
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub scenario: String,
    pub inputs: Map<String, Value>,
    pub verdict: String,
    pub certificates: Vec<Certificate>,
    pub timing_ms: Option<u128>,
}

impl Report {
    pub fn new(scenario: &str) -> Report {
        Report {
            scenario: scenario.to_string(),
            inputs: Map::new(),
            verdict: String::new(),
            certificates: Vec::new(),
            timing_ms: None,
        }
    }

    pub fn input(mut self, key: &str, value: impl Into<Value>) -> Report {
        self.inputs.insert(key.to_string(), value.into());
        self
    }

    pub fn verdict(mut self, verdict: impl Into<String>) -> Report {
        self.verdict = verdict.into();
        self
    }

    pub fn certificate(mut self, c: Certificate) -> Report {
        self.certificates.push(c);
        self
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => {
                let mut s = serde_json::to_string_pretty(self).expect("reports hold plain JSON values");
                s.push('\n');
                s
            }
            Format::Text => self.to_string(),
        }
    }
}

fn text_value(v: &Value) -> String {
    match v {
        Value::Null => "none".to_string(),
        Value::String(s) => s.clone(),
        Value::Array(xs) => format!("[{}]", xs.iter().map(text_value).collect::<Vec<_>>().join(", ")),
        Value::Object(m) => {
            let parts: Vec<String> = m.iter().map(|(k, v)| format!("{k}: {}", text_value(v))).collect();
            format!("{{{}}}", parts.join(", "))
        }
        other => other.to_string(),
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut out = String::new();
        writeln!(out, "scenario: {}", self.scenario)?;
        if !self.inputs.is_empty() {
            writeln!(out, "inputs:")?;
            for (k, v) in &self.inputs {
                writeln!(out, "  {k}: {}", text_value(v))?;
            }
        }
        writeln!(out, "verdict: {}", self.verdict)?;
        if !self.certificates.is_empty() {
            writeln!(out, "certificates:")?;
            for c in &self.certificates {
                writeln!(out, "  - {} [checked]", c.kind)?;
                for (k, v) in &c.data {
                    writeln!(out, "      {k}: {}", text_value(v))?;
                }
            }
        }
        if let Some(ms) = self.timing_ms {
            writeln!(out, "timing_ms: {ms}")?;
        }
        f.write_str(&out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> Report {
        Report::new("quad class")
            .input("d", -5)
            .verdict("h = 2")
            .certificate(Certificate::new("class-group").with("forms", vec!["(1,0,5)", "(2,2,3)"]))
    }

    #[test]
    fn json_has_the_documented_fields_in_order() {
        let v: Value = serde_json::from_str(&sample().render(Format::Json)).unwrap();
        let keys: Vec<&String> = v.as_object().unwrap().keys().collect();
        assert_eq!(keys, ["scenario", "inputs", "verdict", "certificates", "timing_ms"]);
        assert_eq!(v["certificates"][0]["status"], "checked");
        assert!(v["timing_ms"].is_null());
    }

    #[test]
    fn text_lists_certificate_fields() {
        let text = sample().render(Format::Text);
        assert!(text.contains("verdict: h = 2\n"));
        assert!(text.contains("  - class-group [checked]\n      forms: [(1,0,5), (2,2,3)]\n"));
        assert!(!text.contains("timing_ms"));
    }
}
