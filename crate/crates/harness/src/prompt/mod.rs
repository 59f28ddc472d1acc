//! In-context-learning prompts for translation and for the two answer-only
//! baselines, plus extraction of programs and answers from responses.

mod extract;
mod icl;
mod style;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use thiserror::Error;

use interlang_core::{Assumption, Language};
use interlang_gateway::Message;

use crate::problem::{DatasetId, ReasoningProblem};

pub use extract::{extract_baseline_answer, extract_program, ExtractionError};
pub use icl::{
    parse_answer_example, parse_icl_example, shipped_answer_example, shipped_example, AnswerExample, IclExample,
    IclFormatError,
};
pub use style::{InvalidStyle, PromptStyle, WrapperKind};

/// What the model is asked to produce.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PromptMode {
    /// A formal program that a solver answers.
    Neurosymbolic,
    /// A direct answer.
    Std,
    /// Step-by-step reasoning followed by an answer.
    Cot,
}

/// A matrix axis value: a target language or one of the baselines.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Fol,
    Nltk,
    Asp,
    Pyke,
    Std,
    Cot,
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("unknown method `{0}` (expected fol, nltk, asp, pyke, std or cot)")]
pub struct UnknownMethod(pub String);

impl Method {
    pub const ALL: [Method; 6] = [Method::Fol, Method::Nltk, Method::Asp, Method::Pyke, Method::Std, Method::Cot];

    pub fn id(self) -> &'static str {
        match self {
            Method::Fol => "fol",
            Method::Nltk => "nltk",
            Method::Asp => "asp",
            Method::Pyke => "pyke",
            Method::Std => "std",
            Method::Cot => "cot",
        }
    }

    pub fn language(self) -> Option<Language> {
        match self {
            Method::Fol => Some(Language::Fol),
            Method::Nltk => Some(Language::Nltk),
            Method::Asp => Some(Language::Asp),
            Method::Pyke => Some(Language::Pyke),
            Method::Std | Method::Cot => None,
        }
    }

    pub fn mode(self) -> PromptMode {
        match self {
            Method::Std => PromptMode::Std,
            Method::Cot => PromptMode::Cot,
            _ => PromptMode::Neurosymbolic,
        }
    }

    pub fn is_baseline(self) -> bool {
        self.language().is_none()
    }

    /// Whether the dataset can be attempted with this method.
    pub fn supports(self, dataset: DatasetId) -> bool {
        self.language().is_none_or(|l| dataset.supports(l))
    }
}

impl From<Language> for Method {
    fn from(l: Language) -> Self {
        match l {
            Language::Fol => Method::Fol,
            Language::Nltk => Method::Nltk,
            Language::Asp => Method::Asp,
            Language::Pyke => Method::Pyke,
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for Method {
    type Err = UnknownMethod;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Method::ALL.into_iter().find(|m| m.id() == s.trim().to_ascii_lowercase()).ok_or_else(|| UnknownMethod(s.into()))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum PromptError {
    #[error("{language} cannot be used on {dataset}")]
    IncompatiblePair { dataset: DatasetId, language: Language },
}

/// A fully assembled prompt.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PromptBundle {
    pub system: String,
    pub user: String,
    /// The wrapped example block as it appears inside `user`.
    pub example: String,
    pub language: Option<Language>,
    pub style: PromptStyle,
    pub mode: PromptMode,
}

impl PromptBundle {
    pub fn messages(&self) -> Vec<Message> {
        vec![Message::system(&self.system), Message::user(&self.user)]
    }

    /// Hex SHA-256 of the system and user text separated by a NUL byte.
    pub fn hash(&self) -> String {
        let mut h = Sha256::new();
        h.update(self.system.as_bytes());
        h.update([0u8]);
        h.update(self.user.as_bytes());
        hex::encode(h.finalize())
    }
}

/// Section labels of the example block for a mode, in order.
pub fn example_labels(mode: PromptMode) -> &'static [&'static str] {
    match mode {
        PromptMode::Neurosymbolic => &["Problem", "Question", "Translation"],
        PromptMode::Std => &["Problem", "Question", "Answer"],
        PromptMode::Cot => &["Problem", "Question", "Reasoning", "Answer"],
    }
}

fn syntax_notes(language: Language) -> &'static str {
    match language {
        Language::Fol => {
            "Use first-order logic with Unicode connectives: ¬ for not, ∧ for and, ∨ for or, → for implies, \
             ↔ for if-and-only-if, and ∀x or ∃x for quantifiers. Predicates start with a letter and take \
             constants or variables as arguments. Write one formula per line."
        }
        Language::Nltk => {
            "Use first-order logic in ASCII syntax: - for not, & for and, | for or, -> for implies, <-> for \
             if-and-only-if, and `all x.` or `exists x.` for quantifiers. Predicates start with a letter and \
             take constants or variables as arguments. Write one formula per line."
        }
        Language::Asp => {
            "Use answer set programming. Facts look like `p(a).`, rules like `h(X) :- b(X), not c(X).` and \
             strong negation like `-p(a)`. Constants are lowercase and variables are uppercase. Every \
             statement ends with a period."
        }
        Language::Pyke => {
            "Use chain rules with one statement per line: `fact p(a)` for facts and `rule p(X), q(X) => r(X)` \
             for rules. Constants are lowercase and variables are uppercase. There is no negation, so express \
             negative properties as their own predicates."
        }
    }
}

fn answer_options(assumption: Assumption) -> &'static str {
    match assumption {
        Assumption::Cwa => "True or False",
        Assumption::Owa => "True, False or Unknown",
    }
}

/// The step-by-step nudge appended to chain-of-thought prompts.
pub const COT_NUDGE: &str = "Let us think step by step.";

/// Assembles the prompt for `problem` under `method` and `style`.
/// Identical inputs always give byte-identical prompts.
pub fn build_prompt(problem: &ReasoningProblem, method: Method, style: PromptStyle) -> Result<PromptBundle, PromptError> {
    let mode = method.mode();
    let (system, example) = match method.language() {
        Some(language) => {
            let ex = shipped_example(problem.dataset, language)
                .ok_or(PromptError::IncompatiblePair { dataset: problem.dataset, language })?;
            let system = format!(
                "You translate natural-language reasoning problems into formal programs. Translate every \
                 premise into statements and the question into a single query line starting with `? `. \
                 Reply with the program only, inside one fenced code block.\n\n{}",
                syntax_notes(language)
            );
            let example = style.wrap(&[("Problem", &ex.problem), ("Question", &ex.question), ("Translation", &ex.translation)]);
            (system, example)
        }
        None => {
            let ex = shipped_answer_example(problem.dataset, mode == PromptMode::Cot);
            let label = ex.label.to_string();
            let options = answer_options(problem.assumption);
            let (system, example) = match &ex.reasoning {
                Some(reasoning) if mode == PromptMode::Cot => (
                    format!(
                        "Answer the question about the given problem. Reason step by step, then give the \
                         final answer as {options} after `Answer:`."
                    ),
                    style.wrap(&[("Problem", &ex.problem), ("Question", &ex.question), ("Reasoning", reasoning), ("Answer", &label)]),
                ),
                _ => (
                    format!("Answer the question about the given problem. Reply with {options} after `Answer:`."),
                    style.wrap(&[("Problem", &ex.problem), ("Question", &ex.question), ("Answer", &label)]),
                ),
            };
            (system, example)
        }
    };
    let tail = match mode {
        PromptMode::Neurosymbolic => "Translation:".to_string(),
        PromptMode::Std => "Answer:".to_string(),
        PromptMode::Cot => format!("Reasoning: {COT_NUDGE}"),
    };
    let user = format!(
        "Example:\n\n{example}\n\nNow the actual problem.\n\nProblem:\n{}\nQuestion: {}\n\n{tail}",
        problem.premises, problem.question
    );
    Ok(PromptBundle { system, user, example, language: method.language(), style, mode })
}
