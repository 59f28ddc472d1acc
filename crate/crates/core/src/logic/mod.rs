//! Shared first-order IR used by every formal-language backend.

mod cnf;
mod formula;
mod subst;
mod term;
mod unify;

pub use cnf::{to_cnf, Clause, ClauseSet, CnfConverter, SKOLEM_PREFIX};
pub use formula::Formula;
pub use subst::{substitute, BindError, Substitutable, Substitution};
pub use term::{Atom, Literal, Term};
pub use unify::{match_atom, match_term, unify_atoms, unify_terms};
