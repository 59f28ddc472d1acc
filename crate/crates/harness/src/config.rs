//! TOML experiment configuration.
//!
//! ```toml
//! [run]
//! translator = "llm"          # or "oracle": use gold translations, no model calls
//! workers = 4
//!
//! [gateway]
//! mode = "replay"             # live | cache-through | replay
//! cache_dir = "cache"         # relative to the config file
//! rpm = 30
//! max_in_flight = 4
//! max_attempts = 4
//! timeout_secs = 120
//! backoff_ms = 1000
//!
//! [generation]
//! temperature = 0.0
//! max_tokens = 2048
//! reasoning_models = []       # models that get `reasoning_max_tokens`
//! reasoning_max_tokens = 20480
//!
//! [matrix]
//! datasets = ["synthetic"]
//! methods = ["fol", "nltk", "asp", "pyke", "std", "cot"]
//! styles = [1, 2, 3, 4, 5, 6, 7, 8]
//! baseline_styles = [1, 2]    # styles for std and cot; defaults to `styles`
//! models = ["some-model"]
//!
//! [data.synthetic]
//! depth = 5
//! n = 100
//! seed = 7
//!
//! [data.prontoqa]
//! path = "data/prontoqa.jsonl"
//! limit = 50                  # optional: first N records only
//!
//! [solver]
//! timeout_secs = 10           # per solver call, at most 60
//! max_clauses = 100000
//! max_iterations = 10000
//! max_ground_rules = 100000
//! max_guess_atoms = 24
//! ```

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::time::Duration;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use interlang_core::prover::ProofBudget;
use interlang_core::SolverLimits;
use interlang_gateway::{GatewayConfig, GenerationParams, Mode, REASONING_MAX_TOKENS};

use crate::problem::DatasetId;
use crate::prompt::{Method, PromptStyle};
use crate::record::Cell;

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("cannot read config {path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("invalid config: {0}")]
    Parse(#[from] toml::de::Error),
    #[error("invalid config: {0}")]
    Invalid(String),
    #[error("matrix cell ({method}, {dataset}) is not allowed: {method} cannot express {dataset} premises")]
    IncompatibleCell { dataset: DatasetId, method: Method },
}

fn invalid(msg: impl Into<String>) -> ConfigError {
    ConfigError::Invalid(msg.into())
}

/// Where translations come from.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Translator {
    #[default]
    Llm,
    /// Gold translations attached to the problems.
    Oracle,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct RunSection {
    pub translator: Translator,
    pub workers: usize,
}

impl Default for RunSection {
    fn default() -> Self {
        Self { translator: Translator::Llm, workers: 4 }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct GatewaySection {
    pub mode: Mode,
    pub cache_dir: Option<PathBuf>,
    pub rpm: u32,
    pub max_in_flight: usize,
    pub max_attempts: u32,
    pub timeout_secs: u64,
    pub backoff_ms: u64,
}

impl Default for GatewaySection {
    fn default() -> Self {
        let g = GatewayConfig::default();
        Self {
            mode: Mode::Replay,
            cache_dir: None,
            rpm: g.rpm,
            max_in_flight: g.max_in_flight,
            max_attempts: g.max_attempts,
            timeout_secs: g.timeout.as_secs(),
            backoff_ms: g.backoff.as_millis() as u64,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct GenerationSection {
    pub temperature: f64,
    pub max_tokens: u32,
    pub reasoning_models: Vec<String>,
    pub reasoning_max_tokens: u32,
}

impl Default for GenerationSection {
    fn default() -> Self {
        let p = GenerationParams::new("default");
        Self {
            temperature: p.temperature,
            max_tokens: p.max_tokens,
            reasoning_models: Vec::new(),
            reasoning_max_tokens: REASONING_MAX_TOKENS,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatrixSection {
    pub datasets: Vec<DatasetId>,
    pub methods: Vec<Method>,
    pub styles: Vec<PromptStyle>,
    #[serde(default)]
    pub baseline_styles: Option<Vec<PromptStyle>>,
    pub models: Vec<String>,
}

/// A dataset file, or synthetic generation parameters.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DataSource {
    pub path: Option<PathBuf>,
    pub limit: Option<usize>,
    pub depth: Option<usize>,
    pub n: Option<usize>,
    pub seed: Option<u64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct SolverSection {
    pub timeout_secs: f64,
    pub max_clauses: usize,
    pub max_iterations: usize,
    pub max_ground_rules: usize,
    pub max_guess_atoms: usize,
}

impl Default for SolverSection {
    fn default() -> Self {
        let l = SolverLimits::default();
        Self {
            timeout_secs: l.proof.timeout.as_secs_f64(),
            max_clauses: l.proof.max_clauses,
            max_iterations: l.max_iterations,
            max_ground_rules: l.max_ground_rules,
            max_guess_atoms: l.max_guess_atoms,
        }
    }
}

/// A validated experiment description.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    #[serde(default)]
    pub run: RunSection,
    #[serde(default)]
    pub gateway: GatewaySection,
    #[serde(default)]
    pub generation: GenerationSection,
    pub matrix: MatrixSection,
    #[serde(default)]
    pub data: BTreeMap<DatasetId, DataSource>,
    #[serde(default)]
    pub solver: SolverSection,
}

impl ExperimentConfig {
    /// Reads, parses and validates a config file. Relative paths resolve
    /// against the file's directory.
    pub fn load(path: &Path) -> Result<Self, ConfigError> {
        let text = fs::read_to_string(path).map_err(|source| ConfigError::Io { path: path.display().to_string(), source })?;
        Self::from_toml(&text, path.parent().unwrap_or(Path::new(".")))
    }

    /// Parses and validates config text, resolving relative paths against `base`.
    pub fn from_toml(text: &str, base: &Path) -> Result<Self, ConfigError> {
        let mut cfg: ExperimentConfig = toml::from_str(text)?;
        let resolve = |p: &mut PathBuf| {
            if p.is_relative() {
                *p = base.join(&*p);
            }
        };
        if let Some(p) = cfg.gateway.cache_dir.as_mut() {
            resolve(p);
        }
        for src in cfg.data.values_mut() {
            if let Some(p) = src.path.as_mut() {
                resolve(p);
            }
        }
        cfg.validate()?;
        Ok(cfg)
    }

    fn validate(&self) -> Result<(), ConfigError> {
        let m = &self.matrix;
        if m.datasets.is_empty() || m.methods.is_empty() || m.styles.is_empty() || m.models.is_empty() {
            return Err(invalid("matrix axes `datasets`, `methods`, `styles` and `models` must be non-empty"));
        }
        if m.baseline_styles.as_ref().is_some_and(Vec::is_empty) {
            return Err(invalid("`baseline_styles` must be non-empty when given"));
        }
        for &dataset in &m.datasets {
            if let Some(&method) = m.methods.iter().find(|me| !me.supports(dataset)) {
                return Err(ConfigError::IncompatibleCell { dataset, method });
            }
            let src = self.data.get(&dataset).ok_or_else(|| invalid(format!("missing [data.{dataset}] section")))?;
            let synthetic_params = src.depth.is_some() || src.n.is_some() || src.seed.is_some();
            match (dataset, &src.path, synthetic_params) {
                (_, Some(_), true) => return Err(invalid(format!("[data.{dataset}] mixes `path` with generator settings"))),
                (DatasetId::Synthetic, None, true) => {
                    if src.depth.is_none() || src.n.is_none() || src.seed.is_none() {
                        return Err(invalid("[data.synthetic] needs `depth`, `n` and `seed`"));
                    }
                    if src.depth == Some(0) || src.n == Some(0) {
                        return Err(invalid("[data.synthetic] `depth` and `n` must be positive"));
                    }
                }
                (_, Some(_), false) => {}
                _ => return Err(invalid(format!("[data.{dataset}] needs a `path`"))),
            }
        }
        if self.run.workers == 0 {
            return Err(invalid("`run.workers` must be at least 1"));
        }
        if self.run.translator == Translator::Oracle {
            if let Some(b) = m.methods.iter().find(|me| me.is_baseline()) {
                return Err(invalid(format!("method `{b}` has no gold translation; the oracle translator needs formal languages")));
            }
        } else {
            if self.gateway.mode != Mode::Live && self.gateway.cache_dir.is_none() {
                return Err(invalid(format!("gateway mode {} requires `gateway.cache_dir`", self.gateway.mode)));
            }
            if self.gateway.rpm == 0 || self.gateway.max_in_flight == 0 || self.gateway.max_attempts == 0 {
                return Err(invalid("`rpm`, `max_in_flight` and `max_attempts` must be positive"));
            }
            for model in &m.models {
                self.generation_params(model).validate().map_err(|e| invalid(format!("generation: {e}")))?;
            }
        }
        let s = &self.solver;
        if !(s.timeout_secs > 0.0 && s.timeout_secs <= ProofBudget::MAX_TIMEOUT.as_secs_f64()) {
            return Err(invalid(format!("`solver.timeout_secs` must be in (0, {}]", ProofBudget::MAX_TIMEOUT.as_secs())));
        }
        if s.max_clauses == 0 || s.max_iterations == 0 || s.max_ground_rules == 0 {
            return Err(invalid("solver limits must be positive"));
        }
        Ok(())
    }

    /// All matrix cells in a fixed order: dataset, model, method, style.
    pub fn cells(&self) -> Vec<Cell> {
        let m = &self.matrix;
        let mut out = Vec::new();
        for &dataset in &m.datasets {
            for model in &m.models {
                for &method in &m.methods {
                    let styles = match (&m.baseline_styles, method.is_baseline()) {
                        (Some(b), true) => b,
                        _ => &m.styles,
                    };
                    for &style in styles {
                        out.push(Cell { dataset, model: model.clone(), method, style });
                    }
                }
            }
        }
        out
    }

    pub fn generation_params(&self, model: &str) -> GenerationParams {
        let g = &self.generation;
        let max = if g.reasoning_models.iter().any(|m| m == model) { g.reasoning_max_tokens } else { g.max_tokens };
        GenerationParams::new(model).with_temperature(g.temperature).with_max_tokens(max)
    }

    pub fn solver_limits(&self) -> SolverLimits {
        let s = &self.solver;
        SolverLimits {
            proof: ProofBudget::new(s.max_clauses, Duration::from_secs_f64(s.timeout_secs)),
            max_iterations: s.max_iterations,
            max_ground_rules: s.max_ground_rules,
            max_guess_atoms: s.max_guess_atoms,
        }
    }

    pub fn gateway_config(&self) -> GatewayConfig {
        let g = &self.gateway;
        GatewayConfig {
            mode: g.mode,
            cache_dir: g.cache_dir.clone(),
            rpm: g.rpm,
            max_in_flight: g.max_in_flight,
            max_attempts: g.max_attempts,
            timeout: Duration::from_secs(g.timeout_secs),
            backoff: Duration::from_millis(g.backoff_ms),
            ..GatewayConfig::default()
        }
        .with_env()
    }
}
