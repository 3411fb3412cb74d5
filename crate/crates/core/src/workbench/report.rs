//! Check reports and their text/JSON renderings.

use std::fmt::Write as _;
use std::time::Duration;

use serde::{Deserialize, Serialize};

use crate::symexpr::{Verdict, Witness, ZeroPolicy};
use crate::verify::Outcome;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Status {
    Proved,
    NumericallySupported,
    Failed,
    Skipped,
}

impl Status {
    pub fn of(v: &Verdict) -> Status {
        match v {
            Verdict::Proved => Status::Proved,
            Verdict::NumericallySupported => Status::NumericallySupported,
            Verdict::Failed(_) => Status::Failed,
        }
    }

    fn tag(self) -> &'static str {
        match self {
            Status::Proved | Status::NumericallySupported => "PASS",
            Status::Failed => "FAIL",
            Status::Skipped => "SKIP",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Part {
    pub name: String,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub witness: Option<Witness>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Entry {
    pub label: String,
    pub structure: String,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub witness: Option<Witness>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub reason: Option<String>,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub parts: Vec<Part>,
}

impl Entry {
    pub fn from_outcome(label: &str, structure: &str, o: &Outcome) -> Entry {
        Entry {
            label: label.to_string(),
            structure: structure.to_string(),
            status: Status::of(&o.verdict),
            witness: o.verdict.witness().cloned(),
            reason: None,
            parts: o
                .parts
                .iter()
                .map(|(n, v)| Part { name: n.clone(), status: Status::of(v), witness: v.witness().cloned() })
                .collect(),
        }
    }

    pub fn skipped(label: &str, structure: &str, reason: String) -> Entry {
        Entry {
            label: label.to_string(),
            structure: structure.to_string(),
            status: Status::Skipped,
            witness: None,
            reason: Some(reason),
            parts: Vec::new(),
        }
    }

    pub fn part(&self, name: &str) -> Option<&Part> {
        self.parts.iter().find(|p| p.name == name)
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub total: usize,
    pub proved: usize,
    pub numerically_supported: usize,
    pub failed: usize,
    pub skipped: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub schema: u32,
    pub scenario: String,
    pub policy: ZeroPolicy,
    pub entries: Vec<Entry>,
    pub summary: Summary,
    /// Wall time; shown in text output only.
    #[serde(skip)]
    pub elapsed: Duration,
}

impl Report {
    pub fn new(scenario: &str, policy: &ZeroPolicy, entries: Vec<Entry>, elapsed: Duration) -> Report {
        let mut summary = Summary { total: entries.len(), ..Summary::default() };
        for e in &entries {
            match e.status {
                Status::Proved => summary.proved += 1,
                Status::NumericallySupported => summary.numerically_supported += 1,
                Status::Failed => summary.failed += 1,
                Status::Skipped => summary.skipped += 1,
            }
        }
        Report { schema: SCHEMA_VERSION, scenario: scenario.to_string(), policy: policy.clone(), entries, summary, elapsed }
    }

    pub fn any_failed(&self) -> bool {
        self.summary.failed > 0
    }

    pub fn entry(&self, label: &str, structure: &str) -> Option<&Entry> {
        self.entries.iter().find(|e| e.label == label && e.structure == structure)
    }

    pub fn exit_code(&self) -> i32 {
        i32::from(self.any_failed())
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn to_text(&self) -> String {
        let p = &self.policy;
        let mut out = String::new();
        let _ = writeln!(out, "scenario {} (seed {}, samples {}, tol {:e})", self.scenario, p.seed, p.samples, p.tol);
        for e in &self.entries {
            let status = format!("{:?}", e.status);
            let _ = writeln!(out, "[{}] ({}) {}: {}", e.status.tag(), e.label, e.structure, status);
            if let Some(r) = &e.reason {
                let _ = writeln!(out, "    reason: {r}");
            }
            for part in &e.parts {
                let _ = writeln!(out, "    ({}) {}: {:?}", e.label, part.name, part.status);
                if let Some(w) = &part.witness {
                    let _ = writeln!(out, "        witness: {w}");
                }
            }
            if e.parts.is_empty() {
                if let Some(w) = &e.witness {
                    let _ = writeln!(out, "    witness: {w}");
                }
            }
        }
        let s = &self.summary;
        let _ = writeln!(
            out,
            "{} checks: {} proved, {} numerically supported, {} failed, {} skipped ({:.2}s)",
            s.total,
            s.proved,
            s.numerically_supported,
            s.failed,
            s.skipped,
            self.elapsed.as_secs_f64()
        );
        out
    }
}
