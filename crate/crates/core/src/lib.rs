//! Symbolic side of the neurosymbolic pipeline.
//!
//! A shared first-order IR ([`logic`]), parsers and renderers for the two FOL
//! surface dialects ([`fol`]), a resolution prover ([`prover`]), a chain-rule
//! forward-chaining engine ([`rules`]) and an answer-set solver ([`asp`]).
//! [`backend`] ties the four formal languages together behind one entry point.

pub mod asp;
pub mod backend;
pub mod diagnostic;
pub mod fol;
pub mod logic;
mod lp_lexer;
pub mod prover;
pub mod rules;
pub mod verdict;

pub use backend::{solve_program, Answer, BackendError, Language, SolveFailure, SolveReport, SolverLimits};
pub use diagnostic::{ErrorClass, ParseDiagnostic, Position};
pub use verdict::{Assumption, Verdict};
