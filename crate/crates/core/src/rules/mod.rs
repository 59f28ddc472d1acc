//! Line-oriented if-then rule language with a forward-chaining engine.
//!
//! ```text
//! fact tumpus(tommi)
//! rule tumpus(X) => wumpus(X)
//! rule a(X), b(X) => c(X)
//! ? wumpus(tommi)
//! ```
//!
//! One statement per line, `#` comments. Variables are capitalized,
//! constants lowercase. There are no function symbols and no negation, so
//! the Herbrand base is finite and forward chaining always terminates.

mod chain;
mod parse;

use std::collections::BTreeSet;
use std::fmt;

use crate::fol::SignatureTable;
use crate::logic::Atom;

pub use chain::{forward_chain, query_cwa, Fixpoint, RuleError, DEFAULT_MAX_ITERATIONS};
pub use parse::parse_rules;

/// `body₁, …, bodyₙ => head`. Every head variable occurs in the body.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ChainRule {
    pub body: Vec<Atom>,
    pub head: Atom,
}

impl ChainRule {
    pub fn new(body: Vec<Atom>, head: Atom) -> Self {
        Self { body, head }
    }

    pub fn is_range_restricted(&self) -> bool {
        let mut body_vars = BTreeSet::new();
        self.body.iter().for_each(|a| a.collect_vars(&mut body_vars));
        self.head.vars().is_subset(&body_vars)
    }
}

impl fmt::Display for ChainRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("rule ")?;
        for (i, a) in self.body.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{a}")?;
        }
        write!(f, " => {}", self.head)
    }
}

/// A set of ground atoms.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FactBase {
    facts: BTreeSet<Atom>,
}

impl FactBase {
    pub fn new() -> Self {
        Self::default()
    }

    /// Inserts a ground atom; returns false if it was already present.
    ///
    /// # Panics
    /// If `atom` contains variables.
    pub fn insert(&mut self, atom: Atom) -> bool {
        assert!(atom.is_ground(), "fact base holds ground atoms only: {atom}");
        self.facts.insert(atom)
    }

    pub fn contains(&self, atom: &Atom) -> bool {
        self.facts.contains(atom)
    }

    pub fn len(&self) -> usize {
        self.facts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.facts.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &Atom> {
        self.facts.iter()
    }

    pub fn is_subset(&self, other: &FactBase) -> bool {
        self.facts.is_subset(&other.facts)
    }
}

impl FromIterator<Atom> for FactBase {
    fn from_iter<I: IntoIterator<Item = Atom>>(iter: I) -> Self {
        let mut fb = FactBase::new();
        for a in iter {
            fb.insert(a);
        }
        fb
    }
}

/// Parsed chain-rule program.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RuleProgram {
    pub facts: FactBase,
    pub rules: Vec<ChainRule>,
    pub query: Option<Atom>,
    pub signature: SignatureTable,
}
