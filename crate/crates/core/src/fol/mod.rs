//! Parsers and renderers for the two first-order surface dialects.
//!
//! Both dialects map onto the shared [`Formula`](crate::logic::Formula) IR.
//! Programs are line oriented: one formula per line, `#` starts a comment,
//! and the query line is prefixed with `? `.
//!
//! | connective | Unicode | ASCII fallback (Unicode dialect) | ASCII dialect |
//! |------------|---------|----------------------------------|---------------|
//! | negation   | `¬`     | `-`                              | `-`           |
//! | and        | `∧`     | `&`                              | `&`           |
//! | or         | `∨`     | `\|`                             | `\|`          |
//! | implies    | `→`     | `->`                             | `->`          |
//! | iff        | `↔`     | `<->`                            | `<->`         |
//! | forall     | `∀x`    | `forall x.`                      | `all x.`      |
//! | exists     | `∃x`    | `exists x.`                      | `exists x.`   |
//!
//! Precedence from tightest to loosest is `¬ ∧ ∨ → ↔`; `∧`, `∨` and `↔`
//! associate to the left, `→` to the right, and a quantifier's scope extends
//! as far right as possible.

mod lexer;
mod parser;
mod render;
mod signature;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

pub use parser::{parse_fol, parse_formula, FolProgram};
pub use render::{render, render_formula, render_program};
pub use signature::{SignatureTable, SymbolInfo, SymbolKind};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Dialect {
    /// Unicode connectives, with ASCII fallbacks accepted on input.
    UnicodeFol,
    /// Toolkit-style ASCII: `all x.`, `exists x.`, `-`, `&`, `|`, `->`, `<->`.
    AsciiFol,
}

impl fmt::Display for Dialect {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Dialect::UnicodeFol => "unicode",
            Dialect::AsciiFol => "ascii",
        })
    }
}

impl FromStr for Dialect {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "unicode" | "fol" => Ok(Dialect::UnicodeFol),
            "ascii" | "nltk" => Ok(Dialect::AsciiFol),
            other => Err(format!("unknown dialect `{other}`")),
        }
    }
}
