//! Structured, deterministically ordered analysis reports.

use std::fmt::Write as _;

use serde::Serialize;
use serde_json::Value;

use crate::error::Result;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Finding {
    pub key: String,
    pub value: Value,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Assertion {
    pub name: String,
    pub passed: bool,
    #[serde(skip_serializing_if = "String::is_empty")]
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Section {
    pub name: String,
    pub findings: Vec<Finding>,
    pub assertions: Vec<Assertion>,
}

impl Section {
    pub fn finding(&mut self, key: impl Into<String>, value: impl Serialize) -> &mut Self {
        self.findings.push(Finding {
            key: key.into(),
            value: serde_json::to_value(value).expect("finding serializes"),
        });
        self
    }

    pub fn assert(&mut self, name: impl Into<String>, passed: bool, detail: impl Into<String>) -> bool {
        let detail = if passed { String::new() } else { detail.into() };
        self.assertions.push(Assertion {
            name: name.into(),
            passed,
            detail,
        });
        passed
    }

    /// Records a failed assertion for an error; passes the value through otherwise.
    pub fn check<T>(&mut self, name: impl Into<String>, result: Result<T>) -> Option<T> {
        match result {
            Ok(v) => Some(v),
            Err(e) => {
                self.assert(name, false, e.to_string());
                None
            }
        }
    }

    pub fn passed(&self) -> bool {
        self.assertions.iter().all(|a| a.passed)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Report {
    pub instance: String,
    pub command: String,
    pub sections: Vec<Section>,
    pub status: String,
}

impl Report {
    pub fn new(instance: impl Into<String>, command: impl Into<String>) -> Self {
        Report {
            instance: instance.into(),
            command: command.into(),
            sections: Vec::new(),
            status: "pass".into(),
        }
    }

    pub fn section(&mut self, name: impl Into<String>) -> &mut Section {
        self.sections.push(Section {
            name: name.into(),
            findings: Vec::new(),
            assertions: Vec::new(),
        });
        self.sections.last_mut().expect("just pushed")
    }

    /// Sets `status` from the assertions; call once all sections are in.
    pub fn finish(mut self) -> Self {
        self.status = if self.passed() { "pass" } else { "fail" }.into();
        self
    }

    pub fn passed(&self) -> bool {
        self.sections.iter().all(Section::passed)
    }

    pub fn failing_sections(&self) -> Vec<&str> {
        self.sections
            .iter()
            .filter(|s| !s.passed())
            .map(|s| s.name.as_str())
            .collect()
    }

    pub fn assertion_count(&self) -> usize {
        self.sections.iter().map(|s| s.assertions.len()).sum()
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "instance: {}", self.instance);
        let _ = writeln!(out, "command: {}", self.command);
        for s in &self.sections {
            let _ = writeln!(out, "\n== {} ==", s.name);
            for f in &s.findings {
                let _ = writeln!(out, "  {}: {}", f.key, render(&f.value));
            }
            for a in &s.assertions {
                if a.passed {
                    let _ = writeln!(out, "  [pass] {}", a.name);
                } else {
                    let _ = writeln!(out, "  [FAIL] {}: {}", a.name, a.detail);
                }
            }
        }
        let _ = writeln!(out, "\nstatus: {}", self.status);
        if !self.passed() {
            let _ = writeln!(out, "failing sections: {}", self.failing_sections().join(", "));
        }
        out
    }
}

/// Sets of labels print as `{a, b}`; everything else as compact JSON.
fn render(v: &Value) -> String {
    match v {
        Value::Array(items) if items.iter().all(Value::is_string) => {
            let names: Vec<&str> = items.iter().filter_map(Value::as_str).collect();
            format!("{{{}}}", names.join(", "))
        }
        Value::Array(items) if items.iter().all(|x| matches!(x, Value::Array(_))) && !items.is_empty() => {
            let parts: Vec<String> = items.iter().map(render).collect();
            format!("[{}]", parts.join(", "))
        }
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;

    #[test]
    fn status_and_rendering() {
        let mut r = Report::new("kS3", "demo");
        let s = r.section("sets");
        s.finding("ker", vec!["e", "(012)"]);
        s.assert("holds", true, "");
        let r2 = r.clone().finish();
        assert_eq!(r2.status, "pass");
        assert!(r2.to_text().contains("ker: {e, (012)}"));

        r.section("broken")
            .check::<()>("thing", Err(Error::CoreDiverged(3)));
        let r = r.finish();
        assert_eq!(r.status, "fail");
        assert_eq!(r.failing_sections(), vec!["broken"]);
        assert!(r.to_json().contains("\"passed\": false"));
    }
}
