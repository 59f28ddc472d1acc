use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

/// Three-valued answer to a reasoning question.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Verdict {
    True,
    False,
    Unknown,
}

impl Verdict {
    /// Collapses `Unknown` to `False` under the closed-world assumption.
    pub fn under(self, assumption: Assumption) -> Verdict {
        match (self, assumption) {
            (Verdict::Unknown, Assumption::Cwa) => Verdict::False,
            (v, _) => v,
        }
    }

    pub fn negate(self) -> Verdict {
        match self {
            Verdict::True => Verdict::False,
            Verdict::False => Verdict::True,
            Verdict::Unknown => Verdict::Unknown,
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::True => "True",
            Verdict::False => "False",
            Verdict::Unknown => "Unknown",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("unrecognized verdict `{0}`")]
pub struct ParseVerdictError(pub String);

impl FromStr for Verdict {
    type Err = ParseVerdictError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_ascii_lowercase().as_str() {
            "true" => Ok(Verdict::True),
            "false" => Ok(Verdict::False),
            "unknown" | "uncertain" => Ok(Verdict::Unknown),
            _ => Err(ParseVerdictError(s.to_string())),
        }
    }
}

/// Dataset semantics: closed-world (two labels) or open-world (three labels).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Assumption {
    Cwa,
    Owa,
}

impl fmt::Display for Assumption {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Assumption::Cwa => "cwa",
            Assumption::Owa => "owa",
        })
    }
}

impl FromStr for Assumption {
    type Err = ParseVerdictError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_ascii_lowercase().as_str() {
            "cwa" => Ok(Assumption::Cwa),
            "owa" => Ok(Assumption::Owa),
            _ => Err(ParseVerdictError(s.to_string())),
        }
    }
}
