//! Answer set programming: normal rules with strong (`-p`) and default
//! (`not p`) negation, a full-instantiation grounder and a brute-force
//! stable-model solver.
//!
//! ```text
//! tumpus(tommi).
//! wumpus(X) :- tumpus(X).
//! -carnivore(X) :- wumpus(X), not carnivore(X).
//! ? wumpus(tommi)
//! ```

mod ground;
mod parse;
mod solve;

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

use crate::logic::Atom;

pub use ground::{ground, ground_with_limit, GroundProgram, DEFAULT_MAX_GROUND_RULES};
pub use parse::parse_asp;
pub use solve::{answer_sets, answer_sets_with, query_asp, AspLimits, DEFAULT_MAX_GUESS_ATOMS};

/// An atom, optionally under strong negation.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct AspLiteral {
    pub strong_negated: bool,
    pub atom: Atom,
}

impl AspLiteral {
    pub fn pos(atom: Atom) -> Self {
        Self { strong_negated: false, atom }
    }

    pub fn neg(atom: Atom) -> Self {
        Self { strong_negated: true, atom }
    }

    /// `p` for `-p` and `-p` for `p`.
    pub fn complement(&self) -> Self {
        Self { strong_negated: !self.strong_negated, atom: self.atom.clone() }
    }

    pub fn is_ground(&self) -> bool {
        self.atom.is_ground()
    }
}

impl fmt::Display for AspLiteral {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.strong_negated {
            f.write_str("-")?;
        }
        write!(f, "{}", self.atom)
    }
}

/// `head :- positive_body, not negated_body.`; no head means a constraint.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AspRule {
    pub head: Option<AspLiteral>,
    pub positive_body: Vec<AspLiteral>,
    pub negated_body: Vec<AspLiteral>,
}

impl AspRule {
    pub fn fact(head: AspLiteral) -> Self {
        Self { head: Some(head), positive_body: Vec::new(), negated_body: Vec::new() }
    }

    pub fn is_fact(&self) -> bool {
        self.head.is_some() && self.positive_body.is_empty() && self.negated_body.is_empty()
    }

    pub fn vars(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.literals().for_each(|l| l.atom.collect_vars(&mut out));
        out
    }

    /// Every variable of the head and negated body occurs in the positive body.
    pub fn is_safe(&self) -> bool {
        let mut bound = BTreeSet::new();
        self.positive_body.iter().for_each(|l| l.atom.collect_vars(&mut bound));
        self.head.iter().chain(&self.negated_body).all(|l| l.atom.vars().is_subset(&bound))
    }

    pub fn literals(&self) -> impl Iterator<Item = &AspLiteral> {
        self.head.iter().chain(&self.positive_body).chain(&self.negated_body)
    }

    pub fn is_ground(&self) -> bool {
        self.literals().all(AspLiteral::is_ground)
    }
}

impl fmt::Display for AspRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(h) = &self.head {
            write!(f, "{h}")?;
        }
        if !self.positive_body.is_empty() || !self.negated_body.is_empty() {
            f.write_str(if self.head.is_some() { " :- " } else { ":- " })?;
            let body = self
                .positive_body
                .iter()
                .map(|l| l.to_string())
                .chain(self.negated_body.iter().map(|l| format!("not {l}")));
            for (i, b) in body.enumerate() {
                if i > 0 {
                    f.write_str(", ")?;
                }
                f.write_str(&b)?;
            }
        }
        f.write_str(".")
    }
}

/// Parsed program and its optional `? literal` query.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AspProgram {
    pub rules: Vec<AspRule>,
    pub query: Option<AspLiteral>,
}

/// A stable model. Never holds a literal together with its strong complement.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct AnswerSet {
    pub literals: BTreeSet<AspLiteral>,
}

impl AnswerSet {
    pub fn contains(&self, l: &AspLiteral) -> bool {
        self.literals.contains(l)
    }

    pub fn len(&self) -> usize {
        self.literals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.literals.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &AspLiteral> {
        self.literals.iter()
    }
}

impl fmt::Display for AnswerSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, l) in self.literals.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{l}")?;
        }
        f.write_str("}")
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum AspError {
    #[error("grounding would produce {rules} rules, above the limit of {limit}")]
    GroundingTooLarge { rules: u128, limit: usize },
    #[error("{atoms} default-negated atoms to guess, above the limit of {limit}")]
    BaseTooLarge { atoms: usize, limit: usize },
    #[error("the program has no answer sets")]
    Unsatisfiable,
    #[error("answer-set search exceeded its time budget")]
    Timeout,
}
