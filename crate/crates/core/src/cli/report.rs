//! The single document each invocation produces.

use std::fmt::Write as _;

use serde_json::{json, Value};

use super::workspace::{Failure, Input};
use crate::error::{Budget, Error};
use crate::invariants::Verdict;

pub struct Report {
    pub command: Vec<String>,
    pub inputs: Vec<Input>,
    pub payload: Value,
    pub verdicts: Vec<(String, Verdict)>,
    pub outputs: Vec<String>,
    pub budget: Budget,
    pub error: Option<Failure>,
    pub wall_time_ms: f64,
}

fn error_json(f: &Failure) -> Value {
    let mut v = json!({ "message": f.to_string(), "file": f.file });
    let kind = match &f.error {
        Error::InvalidParameter(_) => "invalid_parameter",
        Error::BudgetExceeded { dim, .. } => {
            v["dim"] = json!(dim);
            "budget_exceeded"
        }
        Error::Parse { line, .. } => {
            v["line"] = json!(line);
            "parse"
        }
        Error::Malformed(_) => "malformed",
        Error::SegalDefect(_) => "segal_defect",
        Error::MissingComposite(_) => "missing_composite",
        Error::NonTermination(_) => "non_termination",
        Error::Unsupported(_) => "unsupported",
        Error::WindowExceeded { .. } => "window_exceeded",
        Error::Io(_) => "io",
    };
    v["kind"] = json!(kind);
    v
}

impl Report {
    /// Everything except the wall time.
    pub fn deterministic_json(&self) -> Value {
        json!({
            "command": self.command,
            "inputs": self.inputs,
            "payload": self.payload,
            "verdicts": self.verdicts.iter().map(|(l, v)| v.record(l)).collect::<Vec<_>>(),
            "outputs": self.outputs,
            "budget": self.budget,
            "error": self.error.as_ref().map(error_json),
        })
    }

    pub fn to_json(&self) -> Value {
        let mut v = self.deterministic_json();
        v["wall_time_ms"] = json!(self.wall_time_ms);
        v
    }

    pub fn render_text(&self) -> String {
        let mut out = String::new();
        writeln!(out, "command: {}", self.command.join(" ")).unwrap();
        for i in &self.inputs {
            writeln!(out, "input: {} ({} `{}`) sha256:{}", i.path, i.kind, i.name, i.sha256).unwrap();
        }
        if let Some(e) = &self.error {
            writeln!(out, "error: {e}").unwrap();
        }
        for (label, v) in &self.verdicts {
            writeln!(out, "verdict {label}: {} [{}]", v.state, v.certificate.kind()).unwrap();
            if !v.is_yes() {
                let detail = serde_json::to_string(&v.certificate).unwrap_or_default();
                writeln!(out, "  certificate: {detail}").unwrap();
            }
        }
        if !self.payload.is_null() {
            let body = serde_json::to_string(&self.payload).unwrap_or_default();
            writeln!(out, "result: {body}").unwrap();
        }
        for o in &self.outputs {
            writeln!(out, "wrote: {o}").unwrap();
        }
        let b = &self.budget;
        writeln!(out, "budget: simplices={} dim={} nodes={}", b.simplices, b.dim, b.nodes).unwrap();
        writeln!(out, "time: {:.1} ms", self.wall_time_ms).unwrap();
        out
    }
}
