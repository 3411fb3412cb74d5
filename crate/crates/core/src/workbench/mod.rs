//! Scenarios, check dispatch and reports.

pub mod builtins;
pub mod registry;
pub mod report;
pub mod scenario;

use std::time::Instant;

use rayon::prelude::*;

use crate::error::{GgError, Result};
use crate::symexpr::ZeroPolicy;

pub use builtins::{builtin, BUILTINS};
pub use registry::{run_label, LABELS};
pub use report::{Entry, Report, Status};
pub use scenario::{load_scenario, parse_scenario, CheckRequest, Kind, Scenario, Subject};

/// Resolves requests into `(label, structure)` jobs; an empty list means every applicable label.
pub fn plan(s: &Scenario, requests: &[CheckRequest]) -> Result<Vec<(String, String)>> {
    let config = |msg: String| GgError::Scenario { location: "checks".into(), msg };
    let mut jobs = Vec::new();
    if requests.is_empty() {
        for (name, subj) in &s.subjects {
            jobs.extend(registry::labels_for(subj.kind()).map(|l| (l.to_string(), name.clone())));
        }
        return Ok(jobs);
    }
    for r in requests {
        if registry::lookup(&r.label).is_none() {
            return Err(config(format!("unknown check label '{}'", r.label)));
        }
        match &r.structure {
            Some(t) => {
                let subj = s.subject(t).ok_or_else(|| config(format!("undeclared structure '{t}'")))?;
                if !registry::applies(&r.label, subj.kind()) {
                    return Err(config(format!("{} does not apply to structure '{t}'", r.label)));
                }
                jobs.push((r.label.clone(), t.clone()));
            }
            None => {
                let before = jobs.len();
                for (name, subj) in &s.subjects {
                    if registry::applies(&r.label, subj.kind()) {
                        jobs.push((r.label.clone(), name.clone()));
                    }
                }
                if jobs.len() == before {
                    return Err(config(format!("no structure in the scenario supports {}", r.label)));
                }
            }
        }
    }
    let mut seen = std::collections::HashSet::new();
    jobs.retain(|j| seen.insert(j.clone()));
    Ok(jobs)
}

/// Runs the scenario's own checks under its own policy.
pub fn run_checks(s: &Scenario) -> Result<Report> {
    run_with(s, &s.checks, &s.policy)
}

/// Runs `requests` (or the scenario's checks when empty) under `policy`.
pub fn run_with(s: &Scenario, requests: &[CheckRequest], policy: &ZeroPolicy) -> Result<Report> {
    let requests = if requests.is_empty() { &s.checks[..] } else { requests };
    let jobs = plan(s, requests)?;
    let start = Instant::now();
    let entries: Vec<Entry> = jobs
        .par_iter()
        .map(|(label, name)| {
            let subj = s.subject(name).expect("planned subject exists");
            match run_label(label, subj, policy) {
                Ok(o) => Entry::from_outcome(label, name, &o),
                Err(e) => Entry::skipped(label, name, e.to_string()),
            }
        })
        .collect();
    Ok(Report::new(&s.name, policy, entries, start.elapsed()))
}
