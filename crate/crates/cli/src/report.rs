//! Deterministic reports: a JSON document and a plain-text rendering of the
//! same data.

use std::fmt::Write as _;

use serde::Serialize;
use serde_json::Value;

use crinv::checks::Check;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CheckEntry {
    pub name: String,
    pub status: String,
    pub cases: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<String>,
}

impl From<&Check> for CheckEntry {
    fn from(c: &Check) -> Self {
        CheckEntry {
            name: c.name.clone(),
            status: if c.passed() { "pass" } else { "fail" }.into(),
            cases: c.cases,
            counterexample: c.counterexample.clone(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Item {
    pub name: String,
    pub value: Value,
}

/// Only present with `--profile`; wall-clock numbers are not reproducible.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Profile {
    pub elapsed_ms: u128,
    pub counts: Vec<(String, usize)>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Report {
    pub command: String,
    pub inputs: Vec<(String, String)>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    pub checks: Vec<CheckEntry>,
    pub values: Vec<Item>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub profile: Option<Profile>,
}

impl Report {
    pub fn new(command: &str) -> Self {
        Report { command: command.into(), inputs: Vec::new(), seed: None, checks: Vec::new(), values: Vec::new(), profile: None }
    }

    pub fn input(&mut self, name: &str, value: impl ToString) -> &mut Self {
        self.inputs.push((name.into(), value.to_string()));
        self
    }

    pub fn value(&mut self, name: &str, value: impl Into<Value>) -> &mut Self {
        self.values.push(Item { name: name.into(), value: value.into() });
        self
    }

    pub fn check(&mut self, c: &Check) -> &mut Self {
        self.checks.push(c.into());
        self
    }

    /// A pass/fail line without a case count.
    pub fn assert(&mut self, name: &str, ok: bool, detail: Option<String>) -> &mut Self {
        self.checks.push(CheckEntry {
            name: name.into(),
            status: if ok { "pass" } else { "fail" }.into(),
            cases: 1,
            counterexample: if ok { None } else { detail },
        });
        self
    }

    pub fn count(&mut self, name: &str, n: usize) -> &mut Self {
        if let Some(p) = self.profile.as_mut() {
            p.counts.push((name.into(), n));
        }
        self
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.status == "pass")
    }

    pub fn first_failure(&self) -> Option<&CheckEntry> {
        self.checks.iter().find(|c| c.status != "pass")
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("serializable");
        s.push('\n');
        s
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        writeln!(out, "command: {}", self.command).unwrap();
        for (k, v) in &self.inputs {
            writeln!(out, "input {k}: {v}").unwrap();
        }
        if let Some(s) = self.seed {
            writeln!(out, "seed: {s}").unwrap();
        }
        for item in &self.values {
            render(&mut out, &item.name, &item.value);
        }
        for c in &self.checks {
            match &c.counterexample {
                None => writeln!(out, "check {}: {} ({} cases)", c.name, c.status, c.cases).unwrap(),
                Some(x) => writeln!(out, "check {}: {} ({} cases) counterexample: {x}", c.name, c.status, c.cases).unwrap(),
            }
        }
        if let Some(p) = &self.profile {
            writeln!(out, "profile elapsed_ms: {}", p.elapsed_ms).unwrap();
            for (k, n) in &p.counts {
                writeln!(out, "profile {k}: {n}").unwrap();
            }
        }
        if !self.checks.is_empty() {
            writeln!(out, "status: {}", if self.passed() { "pass" } else { "fail" }).unwrap();
        }
        out
    }
}

fn render(out: &mut String, name: &str, v: &Value) {
    match v {
        Value::Array(xs) => {
            writeln!(out, "{name}: [{} entries]", xs.len()).unwrap();
            for x in xs {
                match x {
                    Value::String(s) => writeln!(out, "  {s}").unwrap(),
                    other => writeln!(out, "  {other}").unwrap(),
                }
            }
        }
        Value::String(s) => writeln!(out, "{name}: {s}").unwrap(),
        other => writeln!(out, "{name}: {other}").unwrap(),
    }
}
