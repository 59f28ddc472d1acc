//! Runs every (cell, problem) pair: prompt, complete, extract, parse, solve, score.

use std::collections::BTreeMap;

use rayon::prelude::*;
use thiserror::Error;

use interlang_core::{solve_program, Answer, BackendError, SolverLimits};
use interlang_gateway::{Gateway, GatewayError};

use crate::config::{ConfigError, ExperimentConfig, Translator};
use crate::dataset::{load_dataset, DatasetError};
use crate::problem::{DatasetId, ReasoningProblem};
use crate::prompt::{build_prompt, extract_baseline_answer, extract_program};
use crate::record::{Cell, StageOutcome, TrialRecord};
use crate::synthetic::generate_synthetic;

#[derive(Debug, Error)]
pub enum RunError {
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error(transparent)]
    Dataset(#[from] DatasetError),
    #[error("cannot set up the gateway: {0}")]
    Gateway(GatewayError),
    /// Replay fixtures are incomplete; the run cannot be reproduced.
    #[error("run aborted: {0}")]
    Aborted(GatewayError),
}

/// Loads or generates the problems of every dataset in the matrix.
pub fn load_problems(config: &ExperimentConfig) -> Result<BTreeMap<DatasetId, Vec<ReasoningProblem>>, RunError> {
    let mut out = BTreeMap::new();
    for &dataset in &config.matrix.datasets {
        let src = &config.data[&dataset];
        let mut problems = match &src.path {
            Some(path) => load_dataset(path, dataset)?,
            None => generate_synthetic(
                src.depth.expect("validated"),
                src.n.expect("validated"),
                src.seed.expect("validated"),
            ),
        };
        if let Some(limit) = src.limit {
            problems.truncate(limit);
        }
        out.insert(dataset, problems);
    }
    Ok(out)
}

/// Builds the gateway the config asks for; `None` for oracle runs.
pub fn gateway_for(config: &ExperimentConfig) -> Result<Option<Gateway>, RunError> {
    match config.run.translator {
        Translator::Oracle => Ok(None),
        Translator::Llm => Gateway::new(config.gateway_config()).map(Some).map_err(RunError::Gateway),
    }
}

/// Runs the full matrix. Records come out in cell order, then problem order,
/// regardless of the worker count. Stage failures become records; only a
/// replay cache miss aborts.
pub fn run_experiment(
    config: &ExperimentConfig,
    problems: &BTreeMap<DatasetId, Vec<ReasoningProblem>>,
    gateway: Option<&Gateway>,
) -> Result<Vec<TrialRecord>, RunError> {
    let cells = config.cells();
    for cell in &cells {
        if !cell.method.supports(cell.dataset) {
            return Err(ConfigError::IncompatibleCell { dataset: cell.dataset, method: cell.method }.into());
        }
    }
    let empty = Vec::new();
    let jobs: Vec<(&Cell, &ReasoningProblem)> =
        cells.iter().flat_map(|c| problems.get(&c.dataset).unwrap_or(&empty).iter().map(move |p| (c, p))).collect();
    if config.run.translator == Translator::Oracle {
        if let Some((_, p)) = jobs.iter().find(|(_, p)| p.gold_translations.is_none()) {
            return Err(ConfigError::Invalid(format!("problem {} has no gold translations for the oracle translator", p.id)).into());
        }
    } else if gateway.is_none() {
        return Err(ConfigError::Invalid("the llm translator needs a gateway".into()).into());
    }
    let limits = config.solver_limits();
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(config.run.workers)
        .build()
        .map_err(|e| ConfigError::Invalid(format!("cannot start workers: {e}")))?;
    pool.install(|| {
        jobs.par_iter()
            .map(|(cell, problem)| run_trial(config, cell, problem, gateway, &limits))
            .collect::<Result<Vec<_>, _>>()
    })
    .map_err(RunError::Aborted)
}

struct Response {
    text: String,
    key: Option<String>,
    truncated: bool,
    latency: f64,
}

fn run_trial(
    config: &ExperimentConfig,
    cell: &Cell,
    problem: &ReasoningProblem,
    gateway: Option<&Gateway>,
    limits: &SolverLimits,
) -> Result<TrialRecord, GatewayError> {
    let bundle = build_prompt(problem, cell.method, cell.style).expect("cells are compatibility-checked");
    let record = |response: Option<&Response>, outcome: StageOutcome| {
        let correct = match &outcome {
            StageOutcome::Solved { answer } => Some(answer.is_correct(problem.label)),
            _ => None,
        };
        TrialRecord {
            problem_id: problem.id.clone(),
            dataset: cell.dataset,
            method: cell.method,
            style: cell.style,
            model: cell.model.clone(),
            mode: bundle.mode,
            prompt_hash: bundle.hash(),
            response_key: response.and_then(|r| r.key.clone()),
            truncated: response.is_some_and(|r| r.truncated),
            gold: problem.label,
            outcome,
            correct,
            latency: response.map_or(0.0, |r| r.latency),
        }
    };

    let response = match (config.run.translator, gateway) {
        (Translator::Oracle, _) => {
            let language = cell.method.language().expect("oracle runs use formal languages");
            let gold = problem.gold_translations.as_ref().expect("checked before the run");
            Response { text: gold.get(language).to_string(), key: None, truncated: false, latency: 0.0 }
        }
        (Translator::Llm, Some(gw)) => {
            let params = config.generation_params(&cell.model);
            match gw.complete(&bundle.messages(), &params) {
                Ok(r) => Response {
                    text: r.text,
                    key: Some(r.key.to_string()),
                    truncated: r.truncated,
                    latency: r.latency_ms as f64 / 1000.0,
                },
                Err(e @ GatewayError::CacheMiss { .. }) => return Err(e),
                Err(e) => return Ok(record(None, StageOutcome::GatewayFailed { message: e.to_string() })),
            }
        }
        (Translator::Llm, None) => unreachable!("checked before the run"),
    };

    let outcome = match cell.method.language() {
        None => {
            let verdict = extract_baseline_answer(&response.text, problem.assumption);
            StageOutcome::Solved { answer: Answer::Verdict(verdict) }
        }
        Some(language) => match extract_program(&response.text, language) {
            Err(_) => StageOutcome::ExtractionFailed,
            Ok(program) => match solve_program(&program, language, problem.assumption, limits) {
                Ok(report) => StageOutcome::Solved { answer: report.answer },
                Err(BackendError::Parse(d)) => StageOutcome::ParseFailed { class: d.class, message: d.to_string() },
                Err(BackendError::Solve { failure, .. }) => StageOutcome::SolveFailed { failure },
            },
        },
    };
    Ok(record(Some(&response), outcome))
}
