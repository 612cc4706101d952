//! Verification of many instances at once.

use crate::config::{CliError, Instance};
use crate::pipeline;
use crate::report::{to_sorted_json, Status, VerificationReport};
use rayon::prelude::*;
use serde::Serialize;
use serde_json::json;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SweepRow {
    pub instance: String,
    pub status: Status,
    pub checks: usize,
    /// First failure, or why the instance was skipped.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SweepSummary {
    pub rows: Vec<SweepRow>,
    pub reports: Vec<Option<VerificationReport>>,
}

impl SweepSummary {
    /// 1 if any instance failed a check, otherwise 0; skipped instances are only noted.
    pub fn exit_code(&self) -> i32 {
        if self.rows.iter().any(|r| r.status == Status::Fail) {
            1
        } else {
            0
        }
    }

    pub fn json(&self) -> String {
        to_sorted_json(&json!({
            "instances": self.rows,
            "status": if self.exit_code() == 0 { "pass" } else { "fail" },
        }))
    }

    pub fn table(&self) -> String {
        let width = self.rows.iter().map(|r| r.instance.len()).max().unwrap_or(0);
        let mut s = String::new();
        for r in &self.rows {
            let status = serde_json::to_value(r.status).expect("serializes");
            let status = status.as_str().expect("string");
            s.push_str(&format!("{:<width$}  {:<7}  {:>4} checks", r.instance, status, r.checks));
            if let Some(n) = &r.note {
                s.push_str(&format!("  {n}"));
            }
            s.push('\n');
        }
        s
    }
}

/// Runs the pipeline on every instance, in parallel, keeping the input order.
pub fn sweep(instances: &[Instance], max_vertices: usize) -> Result<SweepSummary, CliError> {
    if instances.is_empty() {
        return Err(CliError::Usage("empty instance list".into()));
    }
    let results: Vec<Result<VerificationReport, CliError>> = instances
        .par_iter()
        .map(|&instance| pipeline::verify(&crate::config::RunConfig { instance, max_vertices, seed: None }))
        .collect();
    let mut rows = Vec::new();
    let mut reports = Vec::new();
    for (inst, res) in instances.iter().zip(results) {
        let row = match &res {
            Ok(r) => SweepRow {
                instance: inst.to_string(),
                status: r.status(),
                checks: r.checks.iter().filter(|c| c.status == Status::Pass).count(),
                note: r.first_failure().map(|c| c.locus.clone().unwrap_or_default()),
            },
            Err(e) => SweepRow { instance: inst.to_string(), status: Status::Skipped, checks: 0, note: Some(e.to_string()) },
        };
        rows.push(row);
        reports.push(res.ok());
    }
    Ok(SweepSummary { rows, reports })
}

/// Parses a comma-separated instance list.
pub fn parse_instances(list: &str) -> Result<Vec<Instance>, CliError> {
    list.split(',').filter(|s| !s.trim().is_empty()).map(str::parse).collect()
}
