//! Pulling a formal program or a baseline verdict out of raw response text.

use std::sync::LazyLock;

use regex::Regex;
use thiserror::Error;

use interlang_core::{Assumption, Language, Verdict};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum ExtractionError {
    #[error("no program found in the response")]
    NoProgramFound,
}

static FENCE: LazyLock<Regex> =
    LazyLock::new(|| Regex::new(r"(?ms)^[ \t]*```[^\n]*\n(.*?)^[ \t]*```").expect("valid regex"));

static STARTERS: LazyLock<[(Language, Regex); 4]> = LazyLock::new(|| {
    let re = |p: &str| Regex::new(p).expect("valid regex");
    [
        (Language::Fol, re(r"^(\?|∀|∃|¬|\(|[A-Za-z][A-Za-z0-9_]*\()")),
        (Language::Nltk, re(r"^(\?|all\s+[a-z]|exists\s+[a-z]|-|\(|[A-Za-z][A-Za-z0-9_]*\()")),
        (Language::Asp, re(r"^(\?|%|:-|-?[a-z][A-Za-z0-9_]*(\(.*\))?\s*(\.|:-))")),
        (Language::Pyke, re(r"^(\?|#|fact\s|rule\s)")),
    ]
});

static VERDICT: LazyLock<Regex> =
    LazyLock::new(|| Regex::new(r"(?i)\b(true|false|unknown|uncertain)\b").expect("valid regex"));

fn starter(language: Language) -> &'static Regex {
    &STARTERS.iter().find(|(l, _)| *l == language).expect("all languages covered").1
}

/// Returns the first non-blank fenced code block, else the longest run of consecutive
/// lines that begin like a statement of `language` (first run wins ties).
pub fn extract_program(response: &str, language: Language) -> Result<String, ExtractionError> {
    if let Some(c) = FENCE.captures_iter(response).find(|c| !c[1].trim().is_empty()) {
        return Ok(c[1].trim_end().to_string());
    }
    let re = starter(language);
    let mut best: Option<(usize, usize)> = None;
    let mut run_start: Option<usize> = None;
    let lines: Vec<&str> = response.lines().collect();
    for i in 0..=lines.len() {
        let matches = lines.get(i).is_some_and(|l| re.is_match(l.trim()));
        match (matches, run_start) {
            (true, None) => run_start = Some(i),
            (false, Some(s)) => {
                if best.is_none_or(|(bs, be)| i - s > be - bs) {
                    best = Some((s, i));
                }
                run_start = None;
            }
            _ => {}
        }
    }
    let (s, e) = best.ok_or(ExtractionError::NoProgramFound)?;
    Ok(lines[s..e].iter().map(|l| l.trim()).collect::<Vec<_>>().join("\n"))
}

/// Reads a baseline answer. Looks for the last verdict word after the first
/// `answer` marker, then in the whole text; defaults to `False` under the
/// closed-world assumption and `Unknown` under the open-world one. An
/// explicit `Unknown` collapses to `False` under the closed-world assumption.
pub fn extract_baseline_answer(response: &str, assumption: Assumption) -> Verdict {
    let last = |text: &str| VERDICT.find_iter(text).last().and_then(|m| m.as_str().parse::<Verdict>().ok());
    let lower = response.to_ascii_lowercase();
    let after_marker = lower.find("answer").and_then(|at| last(&response[at + "answer".len()..]));
    after_marker.or_else(|| last(response)).unwrap_or(Verdict::Unknown).under(assumption)
}
