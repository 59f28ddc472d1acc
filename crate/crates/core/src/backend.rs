//! One entry point for the four formal languages: parse a program, solve
//! its query and return an answer.

use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::asp::{parse_asp, query_asp, AspError, AspLimits, DEFAULT_MAX_GROUND_RULES, DEFAULT_MAX_GUESS_ATOMS};
use crate::diagnostic::{ErrorClass, ParseDiagnostic, Position};
use crate::fol::{parse_fol, Dialect};
use crate::prover::{classify_detailed, ProofBudget, ProofOutcome};
use crate::rules::{parse_rules, query_cwa, RuleError, DEFAULT_MAX_ITERATIONS};
use crate::verdict::{Assumption, Verdict};

/// Formal target language of a translation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Language {
    /// Line-oriented chain rules.
    Pyke,
    /// Answer set programming.
    Asp,
    /// ASCII first-order logic (`all x.`, `->`).
    Nltk,
    /// Unicode first-order logic (`∀x`, `→`).
    Fol,
}

impl Language {
    pub const ALL: [Language; 4] = [Language::Fol, Language::Nltk, Language::Asp, Language::Pyke];

    pub fn id(self) -> &'static str {
        match self {
            Language::Pyke => "pyke",
            Language::Asp => "asp",
            Language::Nltk => "nltk",
            Language::Fol => "fol",
        }
    }

    /// Logic-programming languages cannot express general first-order premises.
    pub fn is_logic_programming(self) -> bool {
        matches!(self, Language::Pyke | Language::Asp)
    }

    pub fn dialect(self) -> Option<Dialect> {
        match self {
            Language::Fol => Some(Dialect::UnicodeFol),
            Language::Nltk => Some(Dialect::AsciiFol),
            _ => None,
        }
    }
}

impl fmt::Display for Language {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("unknown language `{0}` (expected fol, nltk, asp or pyke)")]
pub struct UnknownLanguage(pub String);

impl FromStr for Language {
    type Err = UnknownLanguage;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_ascii_lowercase().as_str() {
            "fol" => Ok(Language::Fol),
            "nltk" => Ok(Language::Nltk),
            "asp" => Ok(Language::Asp),
            "pyke" => Ok(Language::Pyke),
            _ => Err(UnknownLanguage(s.to_string())),
        }
    }
}

/// Result of solving a well-formed program. `Inconsistent` and
/// `Unsatisfiable` are executable answers that are never correct.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "answer", content = "verdict", rename_all = "snake_case")]
pub enum Answer {
    Verdict(Verdict),
    /// The premises contradict each other.
    Inconsistent,
    /// The program has no answer set.
    Unsatisfiable,
}

impl Answer {
    pub fn verdict(self) -> Option<Verdict> {
        match self {
            Answer::Verdict(v) => Some(v),
            _ => None,
        }
    }

    pub fn is_correct(self, gold: Verdict) -> bool {
        self.verdict() == Some(gold)
    }
}

impl fmt::Display for Answer {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Answer::Verdict(v) => write!(f, "{v}"),
            Answer::Inconsistent => f.write_str("inconsistent"),
            Answer::Unsatisfiable => f.write_str("unsatisfiable"),
        }
    }
}

/// Solver-side failure after a successful parse.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SolveFailure {
    GroundingTooLarge,
    BaseTooLarge,
    IterationLimitExceeded,
    Timeout,
}

impl SolveFailure {
    pub const ALL: [SolveFailure; 4] =
        [SolveFailure::GroundingTooLarge, SolveFailure::BaseTooLarge, SolveFailure::IterationLimitExceeded, SolveFailure::Timeout];

    pub fn name(self) -> &'static str {
        match self {
            SolveFailure::GroundingTooLarge => "GroundingTooLarge",
            SolveFailure::BaseTooLarge => "BaseTooLarge",
            SolveFailure::IterationLimitExceeded => "IterationLimitExceeded",
            SolveFailure::Timeout => "Timeout",
        }
    }
}

impl fmt::Display for SolveFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum BackendError {
    #[error(transparent)]
    Parse(#[from] ParseDiagnostic),
    #[error("{failure}: {message}")]
    Solve { failure: SolveFailure, message: String },
}

impl BackendError {
    fn solve(failure: SolveFailure, message: impl fmt::Display) -> Self {
        BackendError::Solve { failure, message: message.to_string() }
    }
}

/// Per-instance solver bounds.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolverLimits {
    pub proof: ProofBudget,
    pub max_iterations: usize,
    pub max_ground_rules: usize,
    pub max_guess_atoms: usize,
}

impl Default for SolverLimits {
    fn default() -> Self {
        Self {
            proof: ProofBudget::default(),
            max_iterations: DEFAULT_MAX_ITERATIONS,
            max_ground_rules: DEFAULT_MAX_GROUND_RULES,
            max_guess_atoms: DEFAULT_MAX_GUESS_ATOMS,
        }
    }
}

/// Successful solve with timing and, for FOL, the raw proof outcomes.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SolveReport {
    pub answer: Answer,
    pub elapsed: Duration,
    pub proofs: Vec<ProofOutcome>,
}

/// Parses `text` in `language` and answers its query under `assumption`.
pub fn solve_program(
    text: &str,
    language: Language,
    assumption: Assumption,
    limits: &SolverLimits,
) -> Result<SolveReport, BackendError> {
    let start = Instant::now();
    let (answer, proofs) = match language {
        Language::Fol | Language::Nltk => {
            let dialect = language.dialect().expect("FOL languages have a dialect");
            let program = parse_fol(text, dialect)?;
            let query = program.query.ok_or_else(|| missing_query(text))?;
            match classify_detailed(&program.premises, &query, limits.proof) {
                Ok(c) => {
                    let mut proofs = vec![c.query];
                    proofs.extend(c.negated_query);
                    (Answer::Verdict(c.verdict.under(assumption)), proofs)
                }
                Err(_) => (Answer::Inconsistent, Vec::new()),
            }
        }
        Language::Pyke => {
            let program = parse_rules(text)?;
            let query = program.query.clone().ok_or_else(|| missing_query(text))?;
            let verdict = query_cwa(&program, &query, limits.max_iterations).map_err(|e| match e {
                RuleError::IterationLimitExceeded { .. } => BackendError::solve(SolveFailure::IterationLimitExceeded, e),
            })?;
            (Answer::Verdict(verdict), Vec::new())
        }
        Language::Asp => {
            let program = parse_asp(text)?;
            let query = program.query.ok_or_else(|| missing_query(text))?;
            let asp_limits = AspLimits {
                max_ground_rules: limits.max_ground_rules,
                max_guess_atoms: limits.max_guess_atoms,
                deadline: Some(start + limits.proof.timeout),
            };
            match query_asp(&program.rules, &query, assumption, &asp_limits) {
                Ok(v) => (Answer::Verdict(v), Vec::new()),
                Err(AspError::Unsatisfiable) => (Answer::Unsatisfiable, Vec::new()),
                Err(e @ AspError::GroundingTooLarge { .. }) => {
                    return Err(BackendError::solve(SolveFailure::GroundingTooLarge, e))
                }
                Err(e @ AspError::BaseTooLarge { .. }) => return Err(BackendError::solve(SolveFailure::BaseTooLarge, e)),
                Err(e @ AspError::Timeout) => return Err(BackendError::solve(SolveFailure::Timeout, e)),
            }
        }
    };
    Ok(SolveReport { answer, elapsed: start.elapsed(), proofs })
}

fn missing_query(text: &str) -> ParseDiagnostic {
    let line = text.lines().count().max(1);
    ParseDiagnostic::new(ErrorClass::UnknownToken, Position::new(line, 1), "program has no `?` query line")
}
