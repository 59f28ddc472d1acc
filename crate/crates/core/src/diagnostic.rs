//! Machine-readable parse diagnostics shared by every program parser.

use std::fmt;

use serde::{Deserialize, Serialize};

/// Line/column of a diagnostic, both 1-based. Columns count characters.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Position {
    pub line: usize,
    pub column: usize,
}

impl Position {
    pub fn new(line: usize, column: usize) -> Self {
        Self { line, column }
    }
}

impl fmt::Display for Position {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.column)
    }
}

/// Error taxonomy for translated programs.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum ErrorClass {
    UnbalancedParens,
    ArityConflict,
    UnknownToken,
    UnboundVariable,
    ReservedIdentifier,
    /// More than one statement on a line of a chain-rule program.
    MissingLineBreak,
    /// Strong negation applied to a default negation, e.g. `-not p(a)`.
    NegationOrder,
    /// A variable of an ASP rule does not occur in its positive body.
    UnsafeRule,
}

impl ErrorClass {
    pub const ALL: [ErrorClass; 8] = [
        ErrorClass::UnbalancedParens,
        ErrorClass::ArityConflict,
        ErrorClass::UnknownToken,
        ErrorClass::UnboundVariable,
        ErrorClass::ReservedIdentifier,
        ErrorClass::MissingLineBreak,
        ErrorClass::NegationOrder,
        ErrorClass::UnsafeRule,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ErrorClass::UnbalancedParens => "UnbalancedParens",
            ErrorClass::ArityConflict => "ArityConflict",
            ErrorClass::UnknownToken => "UnknownToken",
            ErrorClass::UnboundVariable => "UnboundVariable",
            ErrorClass::ReservedIdentifier => "ReservedIdentifier",
            ErrorClass::MissingLineBreak => "MissingLineBreak",
            ErrorClass::NegationOrder => "NegationOrder",
            ErrorClass::UnsafeRule => "UnsafeRule",
        }
    }
}

impl fmt::Display for ErrorClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize, thiserror::Error)]
#[error("{class} at {position}: {message}")]
pub struct ParseDiagnostic {
    pub class: ErrorClass,
    pub position: Position,
    pub message: String,
}

impl ParseDiagnostic {
    pub fn new(class: ErrorClass, position: Position, message: impl Into<String>) -> Self {
        Self { class, position, message: message.into() }
    }
}

/// Identifiers starting with a double underscore are reserved for generated
/// symbols (Skolem functions) and rejected by every parser.
pub fn is_reserved_identifier(name: &str) -> bool {
    name.starts_with("__")
}
