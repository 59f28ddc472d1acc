//! Refutation prover: binary resolution with factoring, a set-of-support
//! restriction and forward subsumption.
//!
//! Clauses are selected smallest-first, oldest-first on ties, so runs are
//! reproducible.

use std::cmp::Reverse;
use std::collections::{BTreeMap, BinaryHeap, HashSet};
use std::hash::{DefaultHasher, Hash, Hasher};
use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::logic::{match_atom, unify_atoms, Clause, CnfConverter, Formula, Literal, Substitution};
use crate::verdict::Verdict;

/// Limits for a single proof attempt.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProofBudget {
    /// Stop after generating this many clauses.
    pub max_clauses: usize,
    pub timeout: Duration,
}

impl ProofBudget {
    pub const MAX_TIMEOUT: Duration = Duration::from_secs(60);

    /// # Panics
    /// If either limit is zero or the timeout exceeds [`Self::MAX_TIMEOUT`].
    pub fn new(max_clauses: usize, timeout: Duration) -> Self {
        assert!(max_clauses > 0, "clause budget must be positive");
        assert!(!timeout.is_zero() && timeout <= Self::MAX_TIMEOUT, "timeout must be in (0, 60] seconds");
        Self { max_clauses, timeout }
    }
}

impl Default for ProofBudget {
    fn default() -> Self {
        Self { max_clauses: 100_000, timeout: Duration::from_secs(10) }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum ProofOutcome {
    /// The empty clause was derived after generating `steps` clauses.
    Proved { steps: usize },
    /// Search stopped without a refutation; `saturated` means the set of
    /// support ran empty.
    NotProved { saturated: bool },
    BudgetExhausted,
}

impl ProofOutcome {
    pub fn is_proved(self) -> bool {
        matches!(self, ProofOutcome::Proved { .. })
    }
}

/// The premises alone derive a contradiction.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Error)]
#[error("the knowledge base is inconsistent")]
pub struct InconsistentKB;

/// Verdict plus the raw outcomes that produced it.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Classification {
    pub verdict: Verdict,
    /// Outcome of refuting the premises alone; never `Proved` here.
    pub consistency: ProofOutcome,
    pub query: ProofOutcome,
    /// Absent when the query itself was proved.
    pub negated_query: Option<ProofOutcome>,
}

impl Classification {
    /// Some search behind this verdict stopped on its budget.
    pub fn hit_budget(&self) -> bool {
        [Some(self.consistency), Some(self.query), self.negated_query].contains(&Some(ProofOutcome::BudgetExhausted))
    }
}

/// Tries to refute `kb ∧ ¬goal`, using the clauses of `¬goal` as the set of support.
pub fn prove(kb: &[Formula], goal: &Formula, budget: ProofBudget) -> ProofOutcome {
    let mut conv = CnfConverter::new();
    let usable = conv.convert_all(kb).into_vec();
    let negated = Formula::not(goal.clone().universal_closure());
    let support = conv.convert_all([&negated]).into_vec();
    Search::new(budget).run(usable, support)
}

/// Tries to refute the knowledge base on its own; `Proved` means inconsistent.
pub fn check_consistency(kb: &[Formula], budget: ProofBudget) -> ProofOutcome {
    let support = CnfConverter::new().convert_all(kb).into_vec();
    Search::new(budget).run(Vec::new(), support)
}

/// Three-valued classification: True if the query is proved, False if its
/// negation is, Unknown otherwise.
pub fn classify(kb: &[Formula], query: &Formula, budget: ProofBudget) -> Result<Verdict, InconsistentKB> {
    classify_detailed(kb, query, budget).map(|c| c.verdict)
}

/// As [`classify`], keeping the individual proof outcomes.
///
/// The consistency check runs first under the same budget; when it runs out
/// of budget the knowledge base is treated as consistent.
pub fn classify_detailed(kb: &[Formula], query: &Formula, budget: ProofBudget) -> Result<Classification, InconsistentKB> {
    let consistency = check_consistency(kb, budget);
    if consistency.is_proved() {
        return Err(InconsistentKB);
    }
    let positive = prove(kb, query, budget);
    if positive.is_proved() {
        return Ok(Classification { verdict: Verdict::True, consistency, query: positive, negated_query: None });
    }
    let negative = prove(kb, &Formula::not(query.clone()), budget);
    let verdict = if negative.is_proved() { Verdict::False } else { Verdict::Unknown };
    Ok(Classification { verdict, consistency, query: positive, negated_query: Some(negative) })
}

struct Search {
    budget: ProofBudget,
    deadline: Instant,
    generated: usize,
    usable: Vec<Clause>,
    sos: BinaryHeap<Reverse<(usize, usize)>>,
    pending: BTreeMap<usize, Clause>,
    kept: Vec<(u64, Clause)>,
    seen: HashSet<Clause>,
    next_id: usize,
}

enum Stop {
    Refuted,
    Budget,
}

impl Search {
    fn new(budget: ProofBudget) -> Self {
        Self {
            budget,
            deadline: Instant::now() + budget.timeout,
            generated: 0,
            usable: Vec::new(),
            sos: BinaryHeap::new(),
            pending: BTreeMap::new(),
            kept: Vec::new(),
            seen: HashSet::new(),
            next_id: 0,
        }
    }

    fn run(mut self, usable: Vec<Clause>, support: Vec<Clause>) -> ProofOutcome {
        for c in usable {
            let c = canonical(&c);
            if c.is_empty() {
                return ProofOutcome::Proved { steps: 0 };
            }
            if self.seen.insert(c.clone()) {
                self.kept.push((signature(&c), c.clone()));
                self.usable.push(c);
            }
        }
        for c in support {
            if self.admit(c).is_err() {
                return ProofOutcome::Proved { steps: 0 };
            }
        }
        while let Some(Reverse((_, id))) = self.sos.pop() {
            if Instant::now() >= self.deadline {
                return ProofOutcome::BudgetExhausted;
            }
            let given = self.pending.remove(&id).expect("queued clauses are pending");
            self.usable.push(given.clone());
            match self.infer(&given) {
                Ok(()) => {}
                Err(Stop::Refuted) => return ProofOutcome::Proved { steps: self.generated },
                Err(Stop::Budget) => return ProofOutcome::BudgetExhausted,
            }
        }
        ProofOutcome::NotProved { saturated: true }
    }

    fn infer(&mut self, given: &Clause) -> Result<(), Stop> {
        for factor in factors(given) {
            self.generate(factor)?;
        }
        let renamed = given.map_vars(&mut |v| format!("{v}'"));
        let partners = self.usable.len();
        for i in 0..partners {
            let partner = self.usable[i].clone();
            for r in resolvents(&renamed, &partner) {
                self.generate(r)?;
            }
        }
        Ok(())
    }

    fn generate(&mut self, c: Clause) -> Result<(), Stop> {
        self.generated += 1;
        if c.is_empty() {
            return Err(Stop::Refuted);
        }
        if self.generated >= self.budget.max_clauses {
            return Err(Stop::Budget);
        }
        if self.generated % 256 == 0 && Instant::now() >= self.deadline {
            return Err(Stop::Budget);
        }
        self.admit(c)
    }

    /// Queues `c` unless it is a tautology, a known variant or subsumed.
    fn admit(&mut self, c: Clause) -> Result<(), Stop> {
        if c.is_empty() {
            return Err(Stop::Refuted);
        }
        if c.is_tautology() {
            return Ok(());
        }
        let c = canonical(&c);
        let sig = signature(&c);
        if self.seen.contains(&c) || self.kept.iter().any(|(ks, k)| ks & !sig == 0 && subsumes(k, &c)) {
            return Ok(());
        }
        self.seen.insert(c.clone());
        self.kept.push((sig, c.clone()));
        let id = self.next_id;
        self.next_id += 1;
        self.sos.push(Reverse((c.len(), id)));
        self.pending.insert(id, c);
        Ok(())
    }
}

/// Bit set of (sign, predicate) pairs; a subsumer's bits are a subset of
/// the subsumee's.
fn signature(c: &Clause) -> u64 {
    c.literals().iter().fold(0, |acc, l| {
        let mut h = DefaultHasher::new();
        (l.positive, &l.atom.predicate).hash(&mut h);
        acc | 1 << (h.finish() % 64)
    })
}

/// Renames variables to `_0`, `_1`, … in order of first occurrence.
fn canonical(c: &Clause) -> Clause {
    let mut names: BTreeMap<String, String> = BTreeMap::new();
    let mut rename = |v: &str| {
        let n = names.len();
        names.entry(v.to_string()).or_insert_with(|| format!("_{n}")).clone()
    };
    let once = c.map_vars(&mut rename);
    // A second pass settles the order after the literals were re-sorted.
    let mut names2: BTreeMap<String, String> = BTreeMap::new();
    once.map_vars(&mut |v: &str| {
        let n = names2.len();
        names2.entry(v.to_string()).or_insert_with(|| format!("_{n}")).clone()
    })
}

fn resolvents(a: &Clause, b: &Clause) -> Vec<Clause> {
    let mut out = Vec::new();
    for (i, la) in a.literals().iter().enumerate() {
        for (j, lb) in b.literals().iter().enumerate() {
            if la.positive == lb.positive || la.atom.predicate != lb.atom.predicate {
                continue;
            }
            let Some(s) = unify_atoms(&la.atom, &lb.atom) else { continue };
            let rest = a
                .literals()
                .iter()
                .enumerate()
                .filter(|&(k, _)| k != i)
                .map(|(_, l)| l)
                .chain(b.literals().iter().enumerate().filter(|&(k, _)| k != j).map(|(_, l)| l));
            out.push(apply(rest, &s));
        }
    }
    out
}

fn factors(c: &Clause) -> Vec<Clause> {
    let lits = c.literals();
    let mut out = Vec::new();
    for i in 0..lits.len() {
        for j in i + 1..lits.len() {
            if lits[i].positive != lits[j].positive || lits[i].atom.predicate != lits[j].atom.predicate {
                continue;
            }
            if let Some(s) = unify_atoms(&lits[i].atom, &lits[j].atom) {
                out.push(apply(lits.iter(), &s));
            }
        }
    }
    out
}

fn apply<'a>(lits: impl Iterator<Item = &'a Literal>, s: &Substitution) -> Clause {
    Clause::new(lits.map(|l| Literal { positive: l.positive, atom: s.apply_atom(&l.atom) }))
}

/// θ-subsumption: some substitution maps every literal of `c` into `d`.
pub fn subsumes(c: &Clause, d: &Clause) -> bool {
    if c.len() > d.len() {
        return false;
    }
    fn go(rest: &[Literal], d: &Clause, s: &Substitution) -> bool {
        let Some((first, tail)) = rest.split_first() else { return true };
        d.literals().iter().any(|t| {
            if t.positive != first.positive {
                return false;
            }
            let mut ext = s.clone();
            match_atom(&first.atom, &t.atom, &mut ext) && go(tail, d, &ext)
        })
    }
    go(c.literals(), d, &Substitution::new())
}
