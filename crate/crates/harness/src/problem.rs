//! Reasoning problems and the datasets they come from.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use interlang_core::{Assumption, Language, Verdict};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DatasetId {
    Prontoqa,
    Proofwriter,
    Folio,
    Synthetic,
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("unknown dataset `{0}` (expected prontoqa, proofwriter, folio or synthetic)")]
pub struct UnknownDataset(pub String);

impl DatasetId {
    pub const ALL: [DatasetId; 4] = [DatasetId::Prontoqa, DatasetId::Proofwriter, DatasetId::Folio, DatasetId::Synthetic];

    pub fn id(self) -> &'static str {
        match self {
            DatasetId::Prontoqa => "prontoqa",
            DatasetId::Proofwriter => "proofwriter",
            DatasetId::Folio => "folio",
            DatasetId::Synthetic => "synthetic",
        }
    }

    pub fn assumption(self) -> Assumption {
        match self {
            DatasetId::Prontoqa | DatasetId::Synthetic => Assumption::Cwa,
            DatasetId::Proofwriter | DatasetId::Folio => Assumption::Owa,
        }
    }

    /// Probability of guessing the label uniformly at random.
    pub fn chance(self) -> f64 {
        match self.assumption() {
            Assumption::Cwa => 0.5,
            Assumption::Owa => 1.0 / 3.0,
        }
    }

    /// Size of the published test split, where there is one.
    pub fn published_size(self) -> Option<usize> {
        match self {
            DatasetId::Prontoqa => Some(500),
            DatasetId::Proofwriter => Some(600),
            DatasetId::Folio => Some(204),
            DatasetId::Synthetic => None,
        }
    }

    /// Logic-programming languages cannot express this dataset's premises.
    pub fn supports(self, language: Language) -> bool {
        !(self == DatasetId::Folio && language.is_logic_programming())
    }
}

impl fmt::Display for DatasetId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for DatasetId {
    type Err = UnknownDataset;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        DatasetId::ALL.into_iter().find(|d| d.id() == s).ok_or_else(|| UnknownDataset(s.to_string()))
    }
}

/// Chance accuracy for a dataset given by name.
pub fn chance(dataset: &str) -> Result<f64, UnknownDataset> {
    dataset.parse::<DatasetId>().map(DatasetId::chance)
}

/// Static description of a loaded dataset.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct DatasetSpec {
    pub id: DatasetId,
    pub size: usize,
    pub chance: f64,
    pub assumption: Assumption,
}

impl DatasetSpec {
    pub fn new(id: DatasetId, size: usize) -> Self {
        Self { id, size, chance: id.chance(), assumption: id.assumption() }
    }
}

/// Reference programs for one problem, one per language.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GoldTranslations {
    pub fol: String,
    pub nltk: String,
    pub asp: String,
    pub pyke: String,
}

impl GoldTranslations {
    pub fn get(&self, language: Language) -> &str {
        match language {
            Language::Fol => &self.fol,
            Language::Nltk => &self.nltk,
            Language::Asp => &self.asp,
            Language::Pyke => &self.pyke,
        }
    }
}

/// One dataset instance: natural-language premises and question with a gold label.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReasoningProblem {
    pub id: String,
    pub dataset: DatasetId,
    pub premises: String,
    pub question: String,
    pub label: Verdict,
    pub assumption: Assumption,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gold_translations: Option<GoldTranslations>,
}
