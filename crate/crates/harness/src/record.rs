//! Per-instance trial records and the matrix cells they belong to.

use std::fmt;

use serde::{Deserialize, Serialize};

use interlang_core::{Answer, ErrorClass, SolveFailure, Verdict};

use crate::problem::DatasetId;
use crate::prompt::{Method, PromptMode, PromptStyle};

/// One point of the experiment matrix.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Cell {
    pub dataset: DatasetId,
    pub model: String,
    pub method: Method,
    pub style: PromptStyle,
}

impl fmt::Display for Cell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, style {}, {})", self.dataset, self.method, self.style, self.model)
    }
}

/// Where a trial stopped. Exactly one stage applies to each record.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "stage", rename_all = "snake_case")]
pub enum StageOutcome {
    /// The endpoint failed after all retries.
    GatewayFailed { message: String },
    /// No program could be located in the response.
    ExtractionFailed,
    ParseFailed { class: ErrorClass, message: String },
    SolveFailed { failure: SolveFailure },
    Solved { answer: Answer },
}

impl StageOutcome {
    /// Histogram key for failures; `None` for solved trials.
    pub fn error_key(&self) -> Option<String> {
        match self {
            StageOutcome::GatewayFailed { .. } => Some("gateway".into()),
            StageOutcome::ExtractionFailed => Some("extraction".into()),
            StageOutcome::ParseFailed { class, .. } => Some(format!("parse:{class}")),
            StageOutcome::SolveFailed { failure } => Some(format!("solve:{failure}")),
            StageOutcome::Solved { .. } => None,
        }
    }
}

/// Canonical order of histogram keys.
pub fn error_keys() -> Vec<String> {
    let mut keys = vec!["gateway".to_string(), "extraction".to_string()];
    keys.extend(ErrorClass::ALL.iter().map(|c| format!("parse:{c}")));
    keys.extend(SolveFailure::ALL.iter().map(|f| format!("solve:{f}")));
    keys
}

/// Outcome of one problem in one cell.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TrialRecord {
    pub problem_id: String,
    pub dataset: DatasetId,
    pub method: Method,
    pub style: PromptStyle,
    pub model: String,
    pub mode: PromptMode,
    pub prompt_hash: String,
    /// Cache key of the raw response, absent for oracle translations.
    pub response_key: Option<String>,
    pub truncated: bool,
    pub gold: Verdict,
    pub outcome: StageOutcome,
    /// Set only when the outcome is `Solved`.
    pub correct: Option<bool>,
    /// Endpoint latency in seconds, as recorded when the response was produced.
    pub latency: f64,
}

impl TrialRecord {
    pub fn cell(&self) -> Cell {
        Cell { dataset: self.dataset, model: self.model.clone(), method: self.method, style: self.style }
    }

    pub fn executed(&self) -> bool {
        matches!(self.outcome, StageOutcome::Solved { .. })
    }

    pub fn is_correct(&self) -> bool {
        self.correct == Some(true)
    }
}
