//! Newline-delimited JSON dataset loaders.
//!
//! Each non-blank line is one JSON object. Recognized fields:
//!
//! | field | aliases | notes |
//! |-------|---------|-------|
//! | `id` | `example_id` | string or number; defaults to `<dataset>-<index>` |
//! | `premises` | `context`, `theory` | string, or array of strings joined by newlines |
//! | `question` | `conclusion` | string |
//! | `label` | `answer` | `true`/`false`/`unknown`/`uncertain`, or an option letter |
//! | `options` | | e.g. `["A) True", "B) False"]`, used to resolve letter labels |
//! | `gold_translations` | | optional `{fol, nltk, asp, pyke}` object |
//!
//! Unrecognized fields are ignored.

use std::fs;
use std::path::Path;

use serde_json::{Map, Value};
use thiserror::Error;

use interlang_core::{Assumption, Verdict};

use crate::problem::{DatasetId, GoldTranslations, ReasoningProblem};

#[derive(Debug, Error)]
pub enum DatasetError {
    #[error("cannot read {path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("record {index}: {message}")]
    SchemaError { index: usize, message: String },
    #[error("record {index}: label `{label}` is not valid for {dataset}")]
    LabelError { index: usize, label: String, dataset: DatasetId },
}

/// Reads and parses a dataset file.
pub fn load_dataset(path: &Path, dataset: DatasetId) -> Result<Vec<ReasoningProblem>, DatasetError> {
    let text = fs::read_to_string(path).map_err(|source| DatasetError::Io { path: path.display().to_string(), source })?;
    parse_records(&text, dataset)
}

/// Parses newline-delimited records; `index` in errors counts non-blank lines from 0.
pub fn parse_records(text: &str, dataset: DatasetId) -> Result<Vec<ReasoningProblem>, DatasetError> {
    text.lines()
        .filter(|l| !l.trim().is_empty())
        .enumerate()
        .map(|(index, line)| parse_record(line, index, dataset))
        .collect()
}

fn schema(index: usize, message: impl Into<String>) -> DatasetError {
    DatasetError::SchemaError { index, message: message.into() }
}

fn parse_record(line: &str, index: usize, dataset: DatasetId) -> Result<ReasoningProblem, DatasetError> {
    let value: Value = serde_json::from_str(line).map_err(|e| schema(index, format!("invalid JSON: {e}")))?;
    let Value::Object(obj) = value else { return Err(schema(index, "record is not a JSON object")) };

    let id = match field(&obj, &["id", "example_id"]) {
        None => format!("{dataset}-{index}"),
        Some(Value::String(s)) => s.clone(),
        Some(Value::Number(n)) => n.to_string(),
        Some(_) => return Err(schema(index, "`id` must be a string or number")),
    };
    let premises = match field(&obj, &["premises", "context", "theory"]) {
        Some(Value::String(s)) => s.clone(),
        Some(Value::Array(items)) => items
            .iter()
            .map(|v| v.as_str().map(str::to_string).ok_or_else(|| schema(index, "premise list must hold strings")))
            .collect::<Result<Vec<_>, _>>()?
            .join("\n"),
        Some(_) => return Err(schema(index, "premises must be a string or a list of strings")),
        None => return Err(schema(index, "missing `premises`/`context` field")),
    };
    let question = match field(&obj, &["question", "conclusion"]) {
        Some(Value::String(s)) => s.clone(),
        Some(_) => return Err(schema(index, "`question` must be a string")),
        None => return Err(schema(index, "missing `question`/`conclusion` field")),
    };
    let raw_label = match field(&obj, &["label", "answer"]) {
        Some(Value::String(s)) => s.clone(),
        Some(Value::Bool(b)) => b.to_string(),
        Some(_) => return Err(schema(index, "`label` must be a string")),
        None => return Err(schema(index, "missing `label`/`answer` field")),
    };
    let options = match obj.get("options") {
        None | Some(Value::Null) => Vec::new(),
        Some(Value::Array(items)) => items.iter().filter_map(Value::as_str).map(str::to_string).collect(),
        Some(_) => return Err(schema(index, "`options` must be a list")),
    };
    let label = normalize_label(&raw_label, &options, dataset.assumption())
        .ok_or_else(|| DatasetError::LabelError { index, label: raw_label.clone(), dataset })?;
    let gold_translations = match obj.get("gold_translations") {
        None | Some(Value::Null) => None,
        Some(v) => Some(
            serde_json::from_value::<GoldTranslations>(v.clone())
                .map_err(|e| schema(index, format!("bad `gold_translations`: {e}")))?,
        ),
    };
    Ok(ReasoningProblem { id, dataset, premises, question, label, assumption: dataset.assumption(), gold_translations })
}

fn field<'a>(obj: &'a Map<String, Value>, names: &[&str]) -> Option<&'a Value> {
    names.iter().find_map(|n| obj.get(*n)).filter(|v| !v.is_null())
}

/// Maps a raw label to a verdict; letters are resolved through `options`.
/// `unknown` is only valid under the open-world assumption.
pub fn normalize_label(raw: &str, options: &[String], assumption: Assumption) -> Option<Verdict> {
    let trimmed = raw.trim();
    let word = if trimmed.len() == 1 && trimmed.chars().all(|c| c.is_ascii_alphabetic()) {
        let letter = trimmed.to_ascii_uppercase();
        options.iter().find_map(|o| {
            let (head, rest) = o.split_once(')')?;
            (head.trim().eq_ignore_ascii_case(&letter)).then(|| rest.trim().to_string())
        })?
    } else {
        trimmed.split_once(')').map(|(_, rest)| rest.trim().to_string()).unwrap_or_else(|| trimmed.to_string())
    };
    let verdict: Verdict = word.parse().ok()?;
    match (verdict, assumption) {
        (Verdict::Unknown, Assumption::Cwa) => None,
        (v, _) => Some(v),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn letter_labels_resolve_through_options() {
        let opts = vec!["A) True".to_string(), "B) False".to_string(), "C) Unknown".to_string()];
        assert_eq!(normalize_label("B", &opts, Assumption::Owa), Some(Verdict::False));
        assert_eq!(normalize_label("C", &opts, Assumption::Owa), Some(Verdict::Unknown));
        assert_eq!(normalize_label("C", &opts, Assumption::Cwa), None);
        assert_eq!(normalize_label("Uncertain", &[], Assumption::Owa), Some(Verdict::Unknown));
        assert_eq!(normalize_label("A) True", &[], Assumption::Cwa), Some(Verdict::True));
        assert_eq!(normalize_label("maybe", &[], Assumption::Owa), None);
    }

    #[test]
    fn premise_lists_are_joined() {
        let line = r#"{"premises":["All cats purr.","Fae is a cat."],"conclusion":"Fae purrs.","label":"True"}"#;
        let p = parse_records(line, DatasetId::Folio).unwrap();
        assert_eq!(p[0].premises, "All cats purr.\nFae is a cat.");
        assert_eq!(p[0].id, "folio-0");
    }

    #[test]
    fn missing_question_names_the_record() {
        let text = "{\"context\":\"a\",\"question\":\"q\",\"answer\":\"True\"}\n\n{\"context\":\"a\",\"answer\":\"True\"}";
        match parse_records(text, DatasetId::Prontoqa) {
            Err(DatasetError::SchemaError { index, .. }) => assert_eq!(index, 1),
            other => panic!("unexpected {other:?}"),
        }
    }
}
