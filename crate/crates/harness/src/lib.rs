//! Benchmark harness: datasets, a synthetic problem generator, prompt
//! construction, the experiment runner, metrics and reports.
//!
//! The `interlang` binary exposes everything through [`cli::run_cli`].

pub mod cli;
pub mod config;
pub mod dataset;
pub mod metrics;
pub mod problem;
pub mod prompt;
pub mod record;
pub mod report;
pub mod runner;
pub mod synthetic;

pub use config::{ConfigError, ExperimentConfig, Translator};
pub use dataset::{load_dataset, parse_records, DatasetError};
pub use metrics::{aggregate, compute_metrics, AggregateStat, MetricsSummary};
pub use problem::{chance, DatasetId, DatasetSpec, GoldTranslations, ReasoningProblem, UnknownDataset};
pub use prompt::{build_prompt, extract_baseline_answer, extract_program, Method, PromptBundle, PromptMode, PromptStyle};
pub use record::{Cell, StageOutcome, TrialRecord};
pub use report::{emit_report, render_report, summarize_records, CellSummary, ReportError, ReportFormat};
pub use runner::{load_problems, run_experiment, RunError};
pub use synthetic::generate_synthetic;
