//! The verification pipeline behind `gpcode report` and its JSON report.
//!
//! Each claim is either an assertion (recorded under `assertions`, and under
//! `anomalies` when it fails) or an observation. Claims that depend on the
//! field condition, thickness or `s <= t` are only asserted when those hold.

mod config;
mod pipeline;
mod render;

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::code::{CodeError, CxViolation, DualMinWeight};
use crate::constructions::gpg::GpgError;
use crate::constructions::ConstructionError;
use crate::field::{FieldCondition, FieldError};
use crate::geometry::{AxiomReport, GeometryError};
use crate::traces::{ConverseSummary, MinBlocking, TraceError};

pub use config::{Check, GeometrySource, Guards, RunConfig};
pub use pipeline::run_pipeline;
pub use render::render_text;

#[derive(Debug, Error)]
pub enum ReportError {
    #[error("bad config: {0}")]
    Config(#[from] serde_json::Error),
    #[error(transparent)]
    Construction(#[from] ConstructionError),
    #[error(transparent)]
    Gpg(#[from] GpgError),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error("field {p}: {source}")]
    Field { p: u64, source: FieldError },
    #[error(transparent)]
    Code(#[from] CodeError),
    #[error(transparent)]
    Trace(#[from] TraceError),
    #[error("gonality must be at least 3, got {0}")]
    Gonality(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Ok,
    Anomaly,
    CertificationFailed,
    GuardExceeded,
}

/// A claim checked as part of a stage.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Assertion {
    pub check: String,
    pub passed: bool,
    pub detail: String,
}

/// Data recorded without judging it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Observation {
    pub check: String,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeometryInfo {
    pub label: String,
    pub n: usize,
    pub num_points: usize,
    pub num_lines: usize,
    pub s: Option<usize>,
    pub t: Option<usize>,
    pub thick: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AxiomSection {
    pub passed: bool,
    pub expected_counts: Option<(u64, u64)>,
    pub counts_match: Option<bool>,
    pub report: AxiomReport,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CxSection {
    pub line_sums_ok: bool,
    /// First point whose weighted vector misses, with the offending line.
    pub first_violation: Option<(usize, CxViolation)>,
    pub dual_differences_ok: bool,
    pub generator_products_constant: bool,
    pub full_support_points: usize,
    /// Lines near each point covered by its weighted vector; checked only when
    /// the field condition holds.
    pub near_lines_covered: Option<bool>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MinWeightSection {
    pub weight: Option<usize>,
    pub searched_up_to: usize,
    pub expected: Option<usize>,
    pub asserted: bool,
    /// Minimum-weight words up to scalar multiples.
    pub words: usize,
    pub line_multiples: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassificationSection {
    pub classified: usize,
    pub unclassified: Vec<Vec<usize>>,
    /// Words per least matching trace parameter.
    pub d_histogram: BTreeMap<usize, usize>,
    /// Words whose support is a trace only for `d = m`.
    pub only_top_d: usize,
    /// Words whose support is a trace only for even `d`.
    pub even_only: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DualSection {
    pub result: Option<DualMinWeight>,
    /// `2 (t^m - 1) / (t - 1)`.
    pub lower_bound: Option<u64>,
    pub note: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldSection {
    pub p: u64,
    pub field_condition: Option<FieldCondition>,
    pub theorem_applicable: bool,
    pub rank: usize,
    pub dual_dimension: usize,
    pub cx: Option<CxSection>,
    pub min_weight: Option<MinWeightSection>,
    pub classification: Option<ClassificationSection>,
    pub dual: Option<DualSection>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceSection {
    /// Number of distinct traces and their sizes, per `d`.
    pub per_d: BTreeMap<usize, TraceStats>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceStats {
    pub count: usize,
    pub sizes: BTreeSet<usize>,
    pub blocking: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StarSection {
    pub exhaustive: bool,
    pub cases: u64,
    pub failures: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlockingSection {
    pub ball_intersection_sizes: BTreeSet<usize>,
    pub lines_blocking: bool,
    pub min_blocking: Option<MinBlocking>,
    pub converse: Option<ConverseSummary>,
    pub line_blocking_bound: Option<u64>,
    pub star: Option<StarSection>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PerpSection {
    pub points: usize,
    pub projective_augmented: usize,
    pub projective_literal: usize,
    /// At projective points: first `(x, y)` whose point-pair trace fails to block.
    pub trace_blocking_failure: Option<(usize, usize)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub geometry: GeometryInfo,
    pub seed: u64,
    pub checks: Vec<Check>,
    pub status: Status,
    pub axioms: AxiomSection,
    pub fields: Vec<FieldSection>,
    pub traces: Option<TraceSection>,
    pub blocking: Option<BlockingSection>,
    pub perp: Option<PerpSection>,
    pub assertions: Vec<Assertion>,
    pub anomalies: Vec<Assertion>,
    pub observations: Vec<Observation>,
    pub guard_notes: Vec<Observation>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<BTreeMap<String, u64>>,
}

impl Report {
    /// 0 when every assertion passed, 1 on an anomaly or failed
    /// certification, 3 when a cost guard cut a check short.
    pub fn exit_code(&self) -> i32 {
        match self.status {
            Status::Ok => 0,
            Status::Anomaly | Status::CertificationFailed => 1,
            Status::GuardExceeded => 3,
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn field(&self, p: u64) -> Option<&FieldSection> {
        self.fields.iter().find(|f| f.p == p)
    }
}
