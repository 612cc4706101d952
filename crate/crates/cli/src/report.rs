//! Verification reports and their JSON form.

use crate::config::Instance;
use serde::Serialize;
use serde_json::{json, Value};
use std::collections::BTreeMap;

/// Pipeline stages in execution order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Stage {
    Geometry,
    Profile,
    Module,
    Leonard,
    NilDaha,
    Bridge,
    Realization,
    Recurrences,
    Spectral,
    Orthogonality,
}

impl Stage {
    pub const ALL: [Stage; 10] = [
        Stage::Geometry,
        Stage::Profile,
        Stage::Module,
        Stage::Leonard,
        Stage::NilDaha,
        Stage::Bridge,
        Stage::Realization,
        Stage::Recurrences,
        Stage::Spectral,
        Stage::Orthogonality,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Stage::Geometry => "geometry",
            Stage::Profile => "profile",
            Stage::Module => "module",
            Stage::Leonard => "leonard",
            Stage::NilDaha => "nil-daha",
            Stage::Bridge => "bridge",
            Stage::Realization => "realization",
            Stage::Recurrences => "recurrences",
            Stage::Spectral => "spectral",
            Stage::Orthogonality => "orthogonality",
        }
    }

    /// The result a stage confirms.
    pub fn anchor(self) -> &'static str {
        match self {
            Stage::Geometry => "maximal isotropic subspaces and the dual polar graph",
            Stage::Profile => "intersection numbers, eigenvalues and dual eigenvalues",
            Stage::Module => "clique partition and the module W",
            Stage::Leonard => "four Leonard systems on W",
            Stage::NilDaha => "nil-DAHA relations and generator tables",
            Stage::Bridge => "nil-DAHA generators versus A, A*, ~A* and the projections",
            Stage::Realization => "non-symmetric polynomials realized on x-hat",
            Stage::Recurrences => "three-term recurrences for eta and eta^-1",
            Stage::Spectral => "eigenvectors of X, norms and the form on L",
            Stage::Orthogonality => "orthogonality of the ell basis",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckRecord {
    pub stage: Stage,
    pub name: String,
    pub anchor: &'static str,
    pub status: Status,
    /// What went wrong, for failures.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub locus: Option<String>,
}

/// Outcome of the pipeline on one instance.
///
/// The canonical body depends only on the instance; timings and the chosen
/// base vertex and clique are kept apart from it.
#[derive(Clone, Debug, PartialEq)]
pub struct VerificationReport {
    pub instance: Instance,
    pub checks: Vec<CheckRecord>,
    /// Wall time per stage in milliseconds.
    pub timing_ms: BTreeMap<&'static str, f64>,
    /// Base vertex and clique, for concrete runs.
    pub choice: Option<(usize, Vec<usize>)>,
}

impl VerificationReport {
    pub fn status(&self) -> Status {
        if self.checks.iter().all(|c| c.status == Status::Pass) {
            Status::Pass
        } else {
            Status::Fail
        }
    }

    pub fn passed(&self) -> bool {
        self.status() == Status::Pass
    }

    pub fn exit_code(&self) -> i32 {
        if self.passed() {
            0
        } else {
            1
        }
    }

    pub fn first_failure(&self) -> Option<&CheckRecord> {
        self.checks.iter().find(|c| c.status == Status::Fail)
    }

    pub fn canonical(&self) -> Value {
        let p = self.instance.params;
        json!({
            "instance": self.instance.to_string(),
            "family": p.tag.name(),
            "q": self.instance.q0,
            "D": p.d,
            "e": p.e_string(),
            "mode": if self.instance.is_formal() { "formal" } else { "concrete" },
            "checks": self.checks,
            "status": self.status(),
        })
    }

    /// Sorted keys, no timings: identical inputs give identical bytes.
    pub fn canonical_json(&self) -> String {
        to_sorted_json(&self.canonical())
    }

    /// The canonical body plus the non-canonical run data.
    pub fn full_json(&self) -> String {
        let choice = self.choice.as_ref().map(|(x, c)| json!({ "vertex": x, "clique": c }));
        to_sorted_json(&json!({
            "report": self.canonical(),
            "run": { "timing_ms": self.timing_ms, "choice": choice },
        }))
    }
}

/// Pretty JSON with object keys in sorted order and a trailing newline.
pub fn to_sorted_json(v: &Value) -> String {
    // serde_json's default map is ordered by key
    let mut s = serde_json::to_string_pretty(v).expect("values serialize");
    s.push('\n');
    s
}
