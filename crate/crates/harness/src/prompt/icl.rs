//! Shipped in-context examples and their file format (see `icl/README.md`).

use thiserror::Error;

use interlang_core::{Language, Verdict};

use crate::problem::DatasetId;

/// A worked translation example for one dataset and language.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IclExample {
    pub dataset: DatasetId,
    pub language: Language,
    pub problem: String,
    pub question: String,
    pub translation: String,
    pub label: Verdict,
}

/// A worked answer example for a baseline; `reasoning` is set for chain-of-thought.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AnswerExample {
    pub dataset: DatasetId,
    pub problem: String,
    pub question: String,
    pub reasoning: Option<String>,
    pub label: Verdict,
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum IclFormatError {
    #[error("missing section `{0}`")]
    MissingSection(&'static str),
    #[error("unknown section `{0}`")]
    UnknownSection(String),
    #[error("bad label: {0}")]
    BadLabel(String),
}

const SECTIONS: [&str; 5] = ["problem", "question", "translation", "reasoning", "label"];

/// Parsed sections of an example file, indexed like `SECTIONS`.
#[derive(Debug, Default)]
struct Sections([Option<String>; 5]);

impl Sections {
    fn take(&mut self, name: &'static str) -> Result<String, IclFormatError> {
        let i = SECTIONS.iter().position(|s| *s == name).expect("known section");
        self.0[i].take().ok_or(IclFormatError::MissingSection(name))
    }

    fn label(&mut self) -> Result<Verdict, IclFormatError> {
        let raw = self.take("label")?;
        raw.parse().map_err(|_| IclFormatError::BadLabel(raw))
    }
}

fn parse_sections(text: &str) -> Result<Sections, IclFormatError> {
    let mut out = Sections::default();
    let mut current: Option<(usize, Vec<&str>)> = None;
    let flush = |cur: Option<(usize, Vec<&str>)>, out: &mut Sections| {
        if let Some((i, lines)) = cur {
            out.0[i] = Some(lines.join("\n").trim_matches('\n').to_string());
        }
    };
    for line in text.lines() {
        let marker = line.trim().strip_prefix("===").and_then(|l| l.strip_suffix("===")).map(str::trim);
        match marker {
            Some(name) => {
                let i = SECTIONS.iter().position(|s| *s == name).ok_or_else(|| IclFormatError::UnknownSection(name.into()))?;
                flush(current.take(), &mut out);
                current = Some((i, Vec::new()));
            }
            None => {
                if let Some((_, lines)) = current.as_mut() {
                    lines.push(line);
                }
            }
        }
    }
    flush(current, &mut out);
    Ok(out)
}

/// Parses a translation example file.
pub fn parse_icl_example(text: &str, dataset: DatasetId, language: Language) -> Result<IclExample, IclFormatError> {
    let mut s = parse_sections(text)?;
    Ok(IclExample {
        dataset,
        language,
        problem: s.take("problem")?,
        question: s.take("question")?,
        translation: s.take("translation")?,
        label: s.label()?,
    })
}

/// Parses a baseline example file.
pub fn parse_answer_example(text: &str, dataset: DatasetId) -> Result<AnswerExample, IclFormatError> {
    let mut s = parse_sections(text)?;
    Ok(AnswerExample {
        dataset,
        problem: s.take("problem")?,
        question: s.take("question")?,
        reasoning: s.take("reasoning").ok(),
        label: s.label()?,
    })
}

/// Directory whose examples serve `dataset`.
fn source(dataset: DatasetId) -> DatasetId {
    match dataset {
        DatasetId::Synthetic => DatasetId::Prontoqa,
        d => d,
    }
}

fn shipped_text(dataset: DatasetId, file: &str) -> Option<&'static str> {
    macro_rules! files {
        ($($dir:literal / $name:literal),* $(,)?) => {
            match (source(dataset).id(), file) {
                $(($dir, $name) => Some(include_str!(concat!("../../icl/", $dir, "/", $name, ".txt"))),)*
                _ => None,
            }
        };
    }
    files!(
        "prontoqa" / "fol", "prontoqa" / "nltk", "prontoqa" / "asp", "prontoqa" / "pyke",
        "prontoqa" / "std", "prontoqa" / "cot",
        "proofwriter" / "fol", "proofwriter" / "nltk", "proofwriter" / "asp", "proofwriter" / "pyke",
        "proofwriter" / "std", "proofwriter" / "cot",
        "folio" / "fol", "folio" / "nltk", "folio" / "std", "folio" / "cot",
    )
}

/// The shipped translation example, or `None` when the pair is unsupported.
pub fn shipped_example(dataset: DatasetId, language: Language) -> Option<IclExample> {
    let text = shipped_text(dataset, language.id())?;
    Some(parse_icl_example(text, dataset, language).expect("shipped examples are well-formed"))
}

/// The shipped baseline example; `cot` selects the reasoning variant.
pub fn shipped_answer_example(dataset: DatasetId, cot: bool) -> AnswerExample {
    let text = shipped_text(dataset, if cot { "cot" } else { "std" }).expect("every dataset has baseline examples");
    parse_answer_example(text, dataset).expect("shipped examples are well-formed")
}
