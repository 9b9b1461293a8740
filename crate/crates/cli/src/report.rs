//! Report documents: JSON by default, or a flat `field,value` CSV.
//!
//! Counts are decimal strings. Everything a run computes lives under
//! `results` and `checks`; wall-clock time sits apart under `timing`, so
//! two runs of the same command agree on everything except that section.

use std::io::Write;
use std::path::Path;
use std::time::Duration;

use clap::ValueEnum;
use serde::Serialize;
use serde_json::{json, Map, Value};

use crate::suites::Check;

pub const SCHEMA: &str = "qmatcount/1";

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Format {
    #[default]
    Json,
    Csv,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Report {
    pub schema: &'static str,
    pub verb: &'static str,
    pub inputs: Value,
    /// The headline count, when the verb has one.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub value: Option<String>,
    pub results: Value,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub checks: Vec<Check>,
    /// `Some` for verbs that judge identities.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub pass: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    pub timing: Value,
}

impl Report {
    pub fn new(verb: &'static str, inputs: Value) -> Self {
        Report {
            schema: SCHEMA,
            verb,
            inputs,
            value: None,
            results: Value::Object(Map::new()),
            checks: Vec::new(),
            pass: None,
            error: None,
            timing: Value::Object(Map::new()),
        }
    }

    pub fn with_checks(mut self, checks: Vec<Check>) -> Self {
        self.pass = Some(checks.iter().all(|c| c.pass));
        self.checks = checks;
        self
    }

    pub fn set_elapsed(&mut self, elapsed: Duration) {
        self.timing = json!({ "elapsed_ms": elapsed.as_secs_f64() * 1e3 });
    }

    /// The part of the report that must not depend on how the run was
    /// scheduled.
    pub fn deterministic(&self) -> Value {
        json!({
            "value": self.value,
            "results": self.results,
            "checks": self.checks,
            "pass": self.pass,
        })
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => {
                let mut s = serde_json::to_string_pretty(self).expect("report serializes");
                s.push('\n');
                s
            }
            Format::Csv => {
                let mut rows = Vec::new();
                flatten("", &serde_json::to_value(self).expect("report serializes"), &mut rows);
                let mut s = String::from("field,value\n");
                for (k, v) in rows {
                    s.push_str(&csv_field(&k));
                    s.push(',');
                    s.push_str(&csv_field(&v));
                    s.push('\n');
                }
                s
            }
        }
    }
}

fn flatten(prefix: &str, v: &Value, out: &mut Vec<(String, String)>) {
    let join = |k: &str| if prefix.is_empty() { k.to_string() } else { format!("{prefix}.{k}") };
    match v {
        Value::Object(map) => {
            for (k, v) in map {
                flatten(&join(k), v, out);
            }
        }
        Value::Array(items) => {
            for (i, v) in items.iter().enumerate() {
                flatten(&join(&i.to_string()), v, out);
            }
        }
        Value::String(s) => out.push((prefix.to_string(), s.clone())),
        Value::Null => out.push((prefix.to_string(), String::new())),
        other => out.push((prefix.to_string(), other.to_string())),
    }
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

/// Writes through a temporary file in the target directory and renames it
/// into place, so readers never see a partial report.
pub fn write_atomic(path: &Path, contents: &str) -> std::io::Result<()> {
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    tmp.write_all(contents.as_bytes())?;
    tmp.as_file().sync_all()?;
    tmp.persist(path).map_err(|e| e.error)?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn csv_flattens_and_quotes() {
        let mut r = Report::new("count", json!({"support": "diag:1,2"}));
        r.value = Some("14".into());
        r.results = json!({"by_rank": ["1", "6"]});
        let csv = r.render(Format::Csv);
        assert!(csv.starts_with("field,value\n"));
        assert!(csv.contains("\nschema,qmatcount/1\n"));
        assert!(csv.contains("inputs.support,\"diag:1,2\"\n"));
        assert!(csv.contains("results.by_rank.1,6\n"));
        assert!(csv.contains("value,14\n"));
    }

    #[test]
    fn atomic_write_replaces() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("r.json");
        write_atomic(&path, "one").unwrap();
        write_atomic(&path, "two").unwrap();
        assert_eq!(std::fs::read_to_string(&path).unwrap(), "two");
        assert_eq!(std::fs::read_dir(dir.path()).unwrap().count(), 1);
    }
}
