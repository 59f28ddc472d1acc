use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use super::formula::Formula;
use super::term::{Atom, Literal, Term};

/// Idempotent mapping from variable names to terms.
///
/// No bound variable ever occurs in the range, so applying a substitution
/// twice gives the same result as applying it once.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Substitution {
    bindings: BTreeMap<String, Term>,
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("binding {var} to {term} fails the occurs check")]
pub struct BindError {
    pub var: String,
    pub term: Term,
}

impl Substitution {
    pub fn new() -> Self {
        Self::default()
    }

    /// Builds a substitution from pairs, binding them one after another.
    pub fn from_pairs<I, S>(pairs: I) -> Result<Self, BindError>
    where
        I: IntoIterator<Item = (S, Term)>,
        S: Into<String>,
    {
        let mut s = Substitution::new();
        for (v, t) in pairs {
            s.bind(v, t)?;
        }
        Ok(s)
    }

    pub fn get(&self, var: &str) -> Option<&Term> {
        self.bindings.get(var)
    }

    pub fn len(&self) -> usize {
        self.bindings.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bindings.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&String, &Term)> {
        self.bindings.iter()
    }

    pub fn domain(&self) -> impl Iterator<Item = &String> {
        self.bindings.keys()
    }

    /// Adds `var ↦ term`, composing with the existing bindings.
    ///
    /// The term is first rewritten by the current bindings, then the new
    /// binding is propagated into the existing range.
    pub fn bind(&mut self, var: impl Into<String>, term: Term) -> Result<(), BindError> {
        let var = var.into();
        let term = self.apply_term(&term);
        if let Some(existing) = self.bindings.get(&var) {
            if *existing == term {
                return Ok(());
            }
            return Err(BindError { var, term });
        }
        if term == Term::Var(var.clone()) {
            return Ok(());
        }
        if term.occurs(&var) {
            return Err(BindError { var, term });
        }
        let single = Substitution { bindings: BTreeMap::from([(var.clone(), term.clone())]) };
        for value in self.bindings.values_mut() {
            *value = single.apply_term(value);
        }
        self.bindings.insert(var, term);
        Ok(())
    }

    /// Inserts without composing. Only for one-way matching, where the
    /// substitution is applied once and idempotence is not required.
    pub(crate) fn bind_raw(&mut self, var: &str, term: Term) {
        self.bindings.insert(var.to_string(), term);
    }

    pub fn apply_term(&self, t: &Term) -> Term {
        if self.bindings.is_empty() {
            return t.clone();
        }
        match t {
            Term::Var(v) => self.bindings.get(v).cloned().unwrap_or_else(|| t.clone()),
            Term::Const(_) => t.clone(),
            Term::Func(name, args) => Term::Func(name.clone(), args.iter().map(|a| self.apply_term(a)).collect()),
        }
    }

    pub fn apply_atom(&self, a: &Atom) -> Atom {
        Atom { predicate: a.predicate.clone(), args: a.args.iter().map(|t| self.apply_term(t)).collect() }
    }

    /// Substitution equivalent to applying `self` first and `then` second.
    pub fn then(&self, then: &Substitution) -> Substitution {
        let mut bindings: BTreeMap<String, Term> =
            self.bindings.iter().map(|(v, t)| (v.clone(), then.apply_term(t))).collect();
        for (v, t) in &then.bindings {
            bindings.entry(v.clone()).or_insert_with(|| t.clone());
        }
        bindings.retain(|v, t| *t != Term::Var(v.clone()));
        Substitution { bindings }
    }

    /// Drops the binding for `var`, if any.
    pub fn without(&self, var: &str) -> Substitution {
        let mut s = self.clone();
        s.bindings.remove(var);
        s
    }

    fn range_vars(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.bindings.values().for_each(|t| t.collect_vars(&mut out));
        out
    }
}

impl fmt::Display for Substitution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, (v, t)) in self.bindings.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{v} ↦ {t}")?;
        }
        f.write_str("}")
    }
}

/// Things a [`Substitution`] can be applied to.
pub trait Substitutable: Sized {
    fn substitute(&self, s: &Substitution) -> Self;
}

impl Substitutable for Term {
    fn substitute(&self, s: &Substitution) -> Self {
        s.apply_term(self)
    }
}

impl Substitutable for Atom {
    fn substitute(&self, s: &Substitution) -> Self {
        s.apply_atom(self)
    }
}

impl Substitutable for Literal {
    fn substitute(&self, s: &Substitution) -> Self {
        Literal { positive: self.positive, atom: s.apply_atom(&self.atom) }
    }
}

impl Substitutable for Formula {
    /// Replaces free occurrences only. A quantifier whose variable would
    /// capture a variable of an inserted term is renamed first.
    fn substitute(&self, s: &Substitution) -> Self {
        if s.is_empty() {
            return self.clone();
        }
        match self {
            Formula::Atom(a) => Formula::Atom(s.apply_atom(a)),
            Formula::Not(f) => Formula::not(f.substitute(s)),
            Formula::And(a, b) => Formula::and(a.substitute(s), b.substitute(s)),
            Formula::Or(a, b) => Formula::or(a.substitute(s), b.substitute(s)),
            Formula::Implies(a, b) => Formula::implies(a.substitute(s), b.substitute(s)),
            Formula::Iff(a, b) => Formula::iff(a.substitute(s), b.substitute(s)),
            Formula::Forall(v, body) => {
                let (v, body) = substitute_under_binder(v, body, s);
                Formula::Forall(v, Box::new(body))
            }
            Formula::Exists(v, body) => {
                let (v, body) = substitute_under_binder(v, body, s);
                Formula::Exists(v, Box::new(body))
            }
        }
    }
}

fn substitute_under_binder(var: &str, body: &Formula, s: &Substitution) -> (String, Formula) {
    let inner = s.without(var);
    let free = body.free_vars();
    let relevant = Substitution {
        bindings: inner.bindings.into_iter().filter(|(v, _)| free.contains(v)).collect(),
    };
    if relevant.is_empty() {
        return (var.to_string(), body.clone());
    }
    if !relevant.range_vars().contains(var) {
        return (var.to_string(), body.substitute(&relevant));
    }
    let mut taken = body.all_vars();
    taken.extend(relevant.range_vars());
    taken.extend(relevant.domain().cloned());
    let fresh = (1..).map(|i| format!("{var}_{i}")).find(|c| !taken.contains(c)).expect("unbounded");
    let renaming = Substitution { bindings: BTreeMap::from([(var.to_string(), Term::Var(fresh.clone()))]) };
    let renamed = body.substitute(&renaming);
    (fresh, renamed.substitute(&relevant))
}

/// Applies `s` to `x`; free function form of [`Substitutable::substitute`].
pub fn substitute<T: Substitutable>(x: &T, s: &Substitution) -> T {
    x.substitute(s)
}
