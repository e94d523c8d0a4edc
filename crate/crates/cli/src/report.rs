//! The report every command emits, and its two renderings.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::Serialize;
use serde_json::Value;

/// Process exit status.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Exit {
    Success,
    InvalidInput,
    HypothesisViolation,
    Counterexample,
}

impl Exit {
    pub fn code(self) -> i32 {
        match self {
            Exit::Success => 0,
            Exit::InvalidInput => 1,
            Exit::HypothesisViolation => 2,
            Exit::Counterexample => 3,
        }
    }

    /// The more severe of two outcomes.
    pub fn max(self, other: Exit) -> Exit {
        if other.code() > self.code() {
            other
        } else {
            self
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CommandEcho {
    pub name: String,
    pub args: BTreeMap<String, Value>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InputEcho {
    pub source: String,
    pub name: String,
    pub dim: usize,
    pub digest: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Report {
    pub command: CommandEcho,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub input: Option<InputEcho>,
    pub results: Value,
    /// Grade of each verdict, keyed by check name.
    pub verdicts: BTreeMap<String, String>,
    pub summary: Vec<String>,
    pub exit: Exit,
    pub exit_code: i32,
}

impl Report {
    pub fn new(command: CommandEcho, input: Option<InputEcho>) -> Self {
        Report {
            command,
            input,
            results: Value::Object(Default::default()),
            verdicts: BTreeMap::new(),
            summary: Vec::new(),
            exit: Exit::Success,
            exit_code: 0,
        }
    }

    /// Stores `value` under `key` in the results object.
    pub fn result(&mut self, key: &str, value: impl Serialize) {
        let v = serde_json::to_value(value).expect("results serialize");
        self.results
            .as_object_mut()
            .expect("results is an object")
            .insert(key.into(), v);
    }

    pub fn verdict(&mut self, key: impl Into<String>, grade: impl ToString) {
        self.verdicts.insert(key.into(), grade.to_string());
    }

    pub fn line(&mut self, line: impl Into<String>) {
        self.summary.push(line.into());
    }

    pub fn escalate(&mut self, exit: Exit) {
        self.exit = self.exit.max(exit);
        self.exit_code = self.exit.code();
    }

    /// Pretty JSON with every object's keys sorted.
    pub fn to_json(&self) -> String {
        let value = serde_json::to_value(self).expect("reports serialize");
        serde_json::to_string_pretty(&value).expect("values serialize")
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = write!(out, "{}", self.command.name);
        if let Some(input) = &self.input {
            let _ = write!(out, " {} (dim {}, {})", input.name, input.dim, input.digest);
        }
        out.push('\n');
        for line in &self.summary {
            let _ = writeln!(out, "  {line}");
        }
        if !self.verdicts.is_empty() {
            out.push_str("verdicts:\n");
            for (k, v) in &self.verdicts {
                let _ = writeln!(out, "  {k}: {v}");
            }
        }
        let _ = writeln!(out, "exit: {}", self.exit_code);
        out
    }
}

/// Kebab-case name of a unit enum as serde renders it.
pub fn grade<T: Serialize>(value: &T) -> String {
    match serde_json::to_value(value).expect("grades serialize") {
        Value::String(s) => s,
        other => other.to_string(),
    }
}
