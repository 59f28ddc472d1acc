//! Clause normal form.
//!
//! Conversion pipeline: universal closure, implication/biconditional
//! elimination fused with negation normal form, quantifier variable
//! standardization, prenexing, Skolemization, distribution of `∨` over `∧`,
//! and finally standardizing variables apart between clauses.

use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::fmt;

use super::formula::Formula;
use super::subst::Substitution;
use super::term::{Atom, Literal, Term};

/// Prefix of generated Skolem symbols. Parsers reject identifiers starting
/// with `__`, so these never collide with user symbols.
pub const SKOLEM_PREFIX: &str = "__sk";

/// A disjunction of literals, kept sorted and duplicate-free.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Clause {
    literals: Vec<Literal>,
}

impl Clause {
    pub fn new(literals: impl IntoIterator<Item = Literal>) -> Self {
        let mut literals: Vec<Literal> = literals.into_iter().collect();
        literals.sort();
        literals.dedup();
        Self { literals }
    }

    pub fn empty() -> Self {
        Self { literals: Vec::new() }
    }

    pub fn literals(&self) -> &[Literal] {
        &self.literals
    }

    pub fn len(&self) -> usize {
        self.literals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.literals.is_empty()
    }

    /// Contains some literal together with its complement.
    pub fn is_tautology(&self) -> bool {
        self.literals
            .iter()
            .filter(|l| !l.positive)
            .any(|l| self.literals.binary_search(&l.complement()).is_ok())
    }

    pub fn vars(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.literals.iter().for_each(|l| l.atom.collect_vars(&mut out));
        out
    }

    pub fn is_ground(&self) -> bool {
        self.literals.iter().all(|l| l.atom.is_ground())
    }

    pub fn map_vars(&self, f: &mut impl FnMut(&str) -> String) -> Clause {
        Clause::new(self.literals.iter().map(|l| l.map_vars(f)))
    }

    pub fn substitute(&self, s: &Substitution) -> Clause {
        Clause::new(self.literals.iter().map(|l| Literal { positive: l.positive, atom: s.apply_atom(&l.atom) }))
    }
}

impl fmt::Display for Clause {
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

/// A conjunction of clauses whose variables are standardized apart.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ClauseSet {
    clauses: Vec<Clause>,
}

impl ClauseSet {
    pub fn clauses(&self) -> &[Clause] {
        &self.clauses
    }

    pub fn len(&self) -> usize {
        self.clauses.len()
    }

    pub fn is_empty(&self) -> bool {
        self.clauses.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Clause> {
        self.clauses.iter()
    }

    pub fn into_vec(self) -> Vec<Clause> {
        self.clauses
    }
}

impl<'a> IntoIterator for &'a ClauseSet {
    type Item = &'a Clause;
    type IntoIter = std::slice::Iter<'a, Clause>;

    fn into_iter(self) -> Self::IntoIter {
        self.clauses.iter()
    }
}

impl fmt::Display for ClauseSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, c) in self.clauses.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{c}")?;
        }
        f.write_str("}")
    }
}

/// Stateful converter. Skolem symbols and variable names stay distinct
/// across every formula converted by the same instance.
#[derive(Debug, Default)]
pub struct CnfConverter {
    skolems: usize,
    used_vars: HashSet<String>,
    claimed_vars: HashSet<String>,
}

#[derive(Clone, Copy)]
enum Quant {
    All,
    Some,
}

impl CnfConverter {
    pub fn new() -> Self {
        Self::default()
    }

    /// Number of Skolem symbols introduced so far.
    pub fn skolem_count(&self) -> usize {
        self.skolems
    }

    pub fn convert_all<'a>(&mut self, formulas: impl IntoIterator<Item = &'a Formula>) -> ClauseSet {
        let mut seen = HashSet::new();
        let mut clauses = Vec::new();
        for f in formulas {
            for c in self.convert(f) {
                if seen.insert(c.clone()) {
                    clauses.push(c);
                }
            }
        }
        ClauseSet { clauses }
    }

    /// Clauses of one formula, tautologies removed.
    pub fn convert(&mut self, f: &Formula) -> Vec<Clause> {
        let closed = f.clone().universal_closure();
        let nnf = nnf(&closed, false);
        let standardized = self.standardize(&nnf, &mut BTreeMap::new());
        let mut prefix = Vec::new();
        let matrix = pull_quantifiers(standardized, &mut prefix);
        let skolemized = self.skolemize(&matrix, &prefix);
        distribute(&skolemized)
            .into_iter()
            .map(Clause::new)
            .filter(|c| !c.is_tautology())
            .map(|c| self.standardize_apart(c))
            .collect()
    }

    fn fresh_var(&mut self, base: &str) -> String {
        if self.used_vars.insert(base.to_string()) {
            return base.to_string();
        }
        let name = (1..)
            .map(|i| format!("{base}_{i}"))
            .find(|c| !self.used_vars.contains(c))
            .expect("unbounded");
        self.used_vars.insert(name.clone());
        name
    }

    fn standardize(&mut self, f: &Formula, scope: &mut BTreeMap<String, Vec<String>>) -> Formula {
        match f {
            Formula::Atom(a) => Formula::Atom(rename_atom(a, scope)),
            Formula::Not(g) => Formula::not(self.standardize(g, scope)),
            Formula::And(a, b) => Formula::and(self.standardize(a, scope), self.standardize(b, scope)),
            Formula::Or(a, b) => Formula::or(self.standardize(a, scope), self.standardize(b, scope)),
            Formula::Forall(v, g) | Formula::Exists(v, g) => {
                let fresh = self.fresh_var(v);
                scope.entry(v.clone()).or_default().push(fresh.clone());
                let body = self.standardize(g, scope);
                scope.get_mut(v).and_then(Vec::pop);
                match f {
                    Formula::Forall(..) => Formula::forall(fresh, body),
                    _ => Formula::exists(fresh, body),
                }
            }
            Formula::Implies(..) | Formula::Iff(..) => unreachable!("eliminated by nnf"),
        }
    }

    fn skolemize(&mut self, matrix: &Formula, prefix: &[(Quant, String)]) -> Formula {
        let mut universals = Vec::new();
        let mut s = Substitution::new();
        for (q, v) in prefix {
            match q {
                Quant::All => universals.push(Term::Var(v.clone())),
                Quant::Some => {
                    let name = format!("{SKOLEM_PREFIX}{}", self.skolems);
                    self.skolems += 1;
                    let term = if universals.is_empty() {
                        Term::Const(name)
                    } else {
                        Term::Func(name, universals.clone())
                    };
                    s.bind(v.clone(), term).expect("skolem terms never contain their variable");
                }
            }
        }
        apply_quantifier_free(matrix, &s)
    }

    fn standardize_apart(&mut self, clause: Clause) -> Clause {
        let mut renames = BTreeMap::new();
        for v in clause.vars() {
            if self.claimed_vars.insert(v.clone()) {
                continue;
            }
            let fresh = self.fresh_var(&v);
            self.claimed_vars.insert(fresh.clone());
            renames.insert(v, fresh);
        }
        if renames.is_empty() {
            return clause;
        }
        clause.map_vars(&mut |v| renames.get(v).cloned().unwrap_or_else(|| v.to_string()))
    }
}

/// Equisatisfiable clause set for a single formula. Free variables are
/// read as universally quantified.
pub fn to_cnf(f: &Formula) -> ClauseSet {
    CnfConverter::new().convert_all([f])
}

fn rename_atom(a: &Atom, scope: &BTreeMap<String, Vec<String>>) -> Atom {
    a.map_vars(&mut |v| scope.get(v).and_then(|s| s.last()).cloned().unwrap_or_else(|| v.to_string()))
}

/// Negation normal form over `¬ ∧ ∨ ∀ ∃`; `negate` pushes a pending negation.
fn nnf(f: &Formula, negate: bool) -> Formula {
    match f {
        Formula::Atom(a) => {
            if negate {
                Formula::not(Formula::Atom(a.clone()))
            } else {
                Formula::Atom(a.clone())
            }
        }
        Formula::Not(g) => nnf(g, !negate),
        Formula::And(a, b) if negate => Formula::or(nnf(a, true), nnf(b, true)),
        Formula::And(a, b) => Formula::and(nnf(a, false), nnf(b, false)),
        Formula::Or(a, b) if negate => Formula::and(nnf(a, true), nnf(b, true)),
        Formula::Or(a, b) => Formula::or(nnf(a, false), nnf(b, false)),
        Formula::Implies(a, b) if negate => Formula::and(nnf(a, false), nnf(b, true)),
        Formula::Implies(a, b) => Formula::or(nnf(a, true), nnf(b, false)),
        Formula::Iff(a, b) if negate => Formula::and(
            Formula::or(nnf(a, false), nnf(b, false)),
            Formula::or(nnf(a, true), nnf(b, true)),
        ),
        Formula::Iff(a, b) => Formula::and(
            Formula::or(nnf(a, true), nnf(b, false)),
            Formula::or(nnf(a, false), nnf(b, true)),
        ),
        Formula::Forall(v, g) if negate => Formula::exists(v.clone(), nnf(g, true)),
        Formula::Forall(v, g) => Formula::forall(v.clone(), nnf(g, false)),
        Formula::Exists(v, g) if negate => Formula::forall(v.clone(), nnf(g, true)),
        Formula::Exists(v, g) => Formula::exists(v.clone(), nnf(g, false)),
    }
}

/// Moves all quantifiers of an NNF formula with distinct bound names to the
/// front, left to right, outermost first.
fn pull_quantifiers(f: Formula, prefix: &mut Vec<(Quant, String)>) -> Formula {
    match f {
        Formula::Forall(v, g) => {
            prefix.push((Quant::All, v));
            pull_quantifiers(*g, prefix)
        }
        Formula::Exists(v, g) => {
            prefix.push((Quant::Some, v));
            pull_quantifiers(*g, prefix)
        }
        Formula::And(a, b) => {
            let a = pull_quantifiers(*a, prefix);
            Formula::and(a, pull_quantifiers(*b, prefix))
        }
        Formula::Or(a, b) => {
            let a = pull_quantifiers(*a, prefix);
            Formula::or(a, pull_quantifiers(*b, prefix))
        }
        other => other,
    }
}

fn apply_quantifier_free(f: &Formula, s: &Substitution) -> Formula {
    match f {
        Formula::Atom(a) => Formula::Atom(s.apply_atom(a)),
        Formula::Not(g) => Formula::not(apply_quantifier_free(g, s)),
        Formula::And(a, b) => Formula::and(apply_quantifier_free(a, s), apply_quantifier_free(b, s)),
        Formula::Or(a, b) => Formula::or(apply_quantifier_free(a, s), apply_quantifier_free(b, s)),
        _ => unreachable!("matrix is quantifier-free NNF"),
    }
}

fn distribute(f: &Formula) -> Vec<Vec<Literal>> {
    match f {
        Formula::Atom(a) => vec![vec![Literal::pos(a.clone())]],
        Formula::Not(g) => match g.as_ref() {
            Formula::Atom(a) => vec![vec![Literal::neg(a.clone())]],
            _ => unreachable!("negation only on atoms in NNF"),
        },
        Formula::And(a, b) => {
            let mut out = distribute(a);
            out.extend(distribute(b));
            out
        }
        Formula::Or(a, b) => {
            let left = distribute(a);
            let right = distribute(b);
            let mut out = Vec::with_capacity(left.len() * right.len());
            for l in &left {
                for r in &right {
                    out.push(l.iter().chain(r).cloned().collect());
                }
            }
            out
        }
        _ => unreachable!("matrix is quantifier-free NNF"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(n: &str) -> Term {
        Term::var(n)
    }

    #[test]
    fn universal_implication_is_one_clause() {
        let f = Formula::forall(
            "x",
            Formula::implies(Formula::atom("Cat", vec![v("x")]), Formula::atom("Animal", vec![v("x")])),
        );
        let cnf = to_cnf(&f);
        assert_eq!(cnf.to_string(), "{{¬Cat(x), Animal(x)}}");
    }

    #[test]
    fn ground_atom_is_identity() {
        let f = Formula::atom("P", vec![Term::constant("a")]);
        assert_eq!(to_cnf(&f).to_string(), "{{P(a)}}");
    }

    #[test]
    fn existential_becomes_skolem_constant() {
        let f = Formula::exists("x", Formula::atom("P", vec![v("x")]));
        assert_eq!(to_cnf(&f).to_string(), "{{P(__sk0)}}");
    }

    #[test]
    fn existential_under_universal_becomes_function() {
        let f = Formula::forall("x", Formula::exists("y", Formula::atom("R", vec![v("x"), v("y")])));
        assert_eq!(to_cnf(&f).to_string(), "{{R(x,__sk0(x))}}");
    }

    #[test]
    fn tautologies_are_dropped() {
        let p = Formula::atom("P", vec![Term::constant("a")]);
        let f = Formula::or(p.clone(), Formula::not(p));
        assert!(to_cnf(&f).is_empty());
    }

    #[test]
    fn clauses_are_standardized_apart() {
        // ∀x (P(x) ∧ Q(x)) yields two clauses that must not share x.
        let f = Formula::forall("x", Formula::and(Formula::atom("P", vec![v("x")]), Formula::atom("Q", vec![v("x")])));
        let cnf = to_cnf(&f);
        assert_eq!(cnf.len(), 2);
        let a = cnf.clauses()[0].vars();
        let b = cnf.clauses()[1].vars();
        assert!(a.is_disjoint(&b));
    }

    #[test]
    fn free_variables_are_universal() {
        let f = Formula::atom("P", vec![v("X")]);
        assert_eq!(to_cnf(&f).to_string(), "{{P(X)}}");
    }

    #[test]
    fn negated_biconditional() {
        let p = Formula::atom("P", vec![]);
        let q = Formula::atom("Q", vec![]);
        let cnf = to_cnf(&Formula::not(Formula::iff(p, q)));
        assert_eq!(cnf.to_string(), "{{P, Q}, {¬P, ¬Q}}");
    }

    #[test]
    fn skolem_counter_spans_converter() {
        let f = Formula::exists("x", Formula::atom("P", vec![v("x")]));
        let mut conv = CnfConverter::new();
        let set = conv.convert_all([&f, &f]);
        assert_eq!(set.to_string(), "{{P(__sk0)}, {P(__sk1)}}");
        assert_eq!(conv.skolem_count(), 2);
    }
}
