//! Eight syntactic wrappers for the in-context example.
//!
//! A wrapper only decides how labeled sections are delimited. The section
//! labels and bodies are the same for every style, and [`PromptStyle::unwrap`]
//! recovers them exactly from [`PromptStyle::wrap`]'s output.

use std::fmt;

use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};
use thiserror::Error;

/// How the sections of an example are delimited.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum WrapperKind {
    Plain,
    MarkdownFenced,
    XmlTagged,
    NumberedSections,
    InlineQuoted,
    HeaderLabeled,
    JsonField,
    DelimiterDashed,
}

/// A prompting style, identified by a number from 1 to 8.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "u8", into = "u8")]
pub struct PromptStyle(u8);

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("prompt style must be between 1 and 8, got {0}")]
pub struct InvalidStyle(pub u8);

impl PromptStyle {
    pub const COUNT: u8 = 8;

    pub fn new(id: u8) -> Result<Self, InvalidStyle> {
        if (1..=Self::COUNT).contains(&id) {
            Ok(Self(id))
        } else {
            Err(InvalidStyle(id))
        }
    }

    pub fn all() -> impl Iterator<Item = PromptStyle> {
        (1..=Self::COUNT).map(PromptStyle)
    }

    pub fn id(self) -> u8 {
        self.0
    }

    pub fn kind(self) -> WrapperKind {
        match self.0 {
            1 => WrapperKind::Plain,
            2 => WrapperKind::MarkdownFenced,
            3 => WrapperKind::XmlTagged,
            4 => WrapperKind::NumberedSections,
            5 => WrapperKind::InlineQuoted,
            6 => WrapperKind::HeaderLabeled,
            7 => WrapperKind::JsonField,
            _ => WrapperKind::DelimiterDashed,
        }
    }

    fn header(self, index: usize, label: &str) -> String {
        match self.kind() {
            WrapperKind::Plain => format!("{label}:\n"),
            WrapperKind::MarkdownFenced => format!("{label}:\n```\n"),
            WrapperKind::XmlTagged => format!("<{}>\n", tag(label)),
            WrapperKind::NumberedSections => format!("{}. {label}\n", index + 1),
            WrapperKind::InlineQuoted => format!("{label}: \""),
            WrapperKind::HeaderLabeled => format!("## {label}\n"),
            WrapperKind::DelimiterDashed => format!("----- {label} -----\n"),
            WrapperKind::JsonField => unreachable!("json sections have no header"),
        }
    }

    fn footer(self, label: &str) -> String {
        match self.kind() {
            WrapperKind::MarkdownFenced => "\n```".to_string(),
            WrapperKind::XmlTagged => format!("\n</{}>", tag(label)),
            WrapperKind::InlineQuoted => "\"".to_string(),
            WrapperKind::DelimiterDashed => "\n-----".to_string(),
            _ => String::new(),
        }
    }

    /// Renders `(label, body)` sections in this style.
    pub fn wrap(self, sections: &[(&str, &str)]) -> String {
        if self.kind() == WrapperKind::JsonField {
            let mut obj = Map::new();
            for (label, body) in sections {
                obj.insert(tag(label), Value::String(body.to_string()));
            }
            return serde_json::to_string_pretty(&Value::Object(obj)).expect("strings always serialize");
        }
        sections
            .iter()
            .enumerate()
            .map(|(i, (label, body))| format!("{}{body}{}", self.header(i, label), self.footer(label)))
            .collect::<Vec<_>>()
            .join("\n\n")
    }

    /// Inverse of [`wrap`](Self::wrap) given the section labels in order.
    pub fn unwrap(self, text: &str, labels: &[&str]) -> Option<Vec<String>> {
        if self.kind() == WrapperKind::JsonField {
            let Value::Object(obj) = serde_json::from_str::<Value>(text).ok()? else { return None };
            return labels.iter().map(|l| obj.get(&tag(l))?.as_str().map(str::to_string)).collect();
        }
        let mut rest = text;
        let mut out = Vec::with_capacity(labels.len());
        for (i, label) in labels.iter().enumerate() {
            rest = rest.strip_prefix(&self.header(i, label))?;
            let body = match labels.get(i + 1) {
                Some(next) => {
                    let delim = format!("{}\n\n{}", self.footer(label), self.header(i + 1, next));
                    let at = rest.find(&delim)?;
                    let body = &rest[..at];
                    rest = &rest[at + self.footer(label).len() + 2..];
                    body
                }
                None => {
                    let body = rest.strip_suffix(&self.footer(label))?;
                    rest = "";
                    body
                }
            };
            out.push(body.to_string());
        }
        Some(out)
    }
}

impl TryFrom<u8> for PromptStyle {
    type Error = InvalidStyle;

    fn try_from(id: u8) -> Result<Self, Self::Error> {
        PromptStyle::new(id)
    }
}

impl From<PromptStyle> for u8 {
    fn from(s: PromptStyle) -> u8 {
        s.0
    }
}

impl fmt::Display for PromptStyle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

fn tag(label: &str) -> String {
    label.to_lowercase().replace(' ', "_")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_style_round_trips() {
        let sections = [("Problem", "Rell is a dax.\nEach dax is a wug."), ("Question", "Is Rell a wug?"), ("Answer", "True")];
        let labels: Vec<&str> = sections.iter().map(|s| s.0).collect();
        let bodies: Vec<String> = sections.iter().map(|s| s.1.to_string()).collect();
        for style in PromptStyle::all() {
            let text = style.wrap(&sections);
            assert_eq!(style.unwrap(&text, &labels), Some(bodies.clone()), "style {style}:\n{text}");
        }
    }

    #[test]
    fn fenced_style_uses_code_fences() {
        let s = PromptStyle::new(2).unwrap();
        assert_eq!(s.kind(), WrapperKind::MarkdownFenced);
        assert_eq!(s.wrap(&[("Translation", "fact a(b)")]), "Translation:\n```\nfact a(b)\n```");
    }

    #[test]
    fn out_of_range_ids_are_rejected() {
        assert!(PromptStyle::new(0).is_err());
        assert!(PromptStyle::new(9).is_err());
    }
}
