use std::collections::HashMap;

use thiserror::Error;

use crate::logic::{match_atom, Atom, Substitution};
use crate::verdict::Verdict;

use super::{ChainRule, FactBase, RuleProgram};

pub const DEFAULT_MAX_ITERATIONS: usize = 10_000;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum RuleError {
    #[error("forward chaining did not reach a fixpoint within {limit} iterations")]
    IterationLimitExceeded { limit: usize },
}

/// Least fixpoint of a rule set over a fact base.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fixpoint {
    pub facts: FactBase,
    /// Rounds that added at least one new fact.
    pub iterations: usize,
}

/// Semi-naive forward chaining: every round only fires rule instances that
/// use at least one fact derived in the previous round.
pub fn forward_chain(facts: &FactBase, rules: &[ChainRule], max_iterations: usize) -> Result<Fixpoint, RuleError> {
    let mut all = facts.clone();
    let mut index: HashMap<String, Vec<Atom>> = HashMap::new();
    let mut delta: Vec<Atom> = facts.iter().cloned().collect();
    for a in &delta {
        index.entry(a.predicate.clone()).or_default().push(a.clone());
    }
    let mut iterations = 0;

    loop {
        let mut delta_index: HashMap<&str, Vec<&Atom>> = HashMap::new();
        for a in &delta {
            delta_index.entry(a.predicate.as_str()).or_default().push(a);
        }
        let mut fresh: Vec<Atom> = Vec::new();
        for rule in rules {
            for pivot in 0..rule.body.len() {
                let Some(seeds) = delta_index.get(rule.body[pivot].predicate.as_str()) else { continue };
                for seed in seeds {
                    let mut s = Substitution::new();
                    if !match_atom(&rule.body[pivot], seed, &mut s) {
                        continue;
                    }
                    join(rule, pivot, 0, s, &index, &mut |s| {
                        let head = s.apply_atom(&rule.head);
                        if !all.contains(&head) {
                            fresh.push(head);
                        }
                    });
                }
            }
        }
        fresh.sort();
        fresh.dedup();
        if fresh.is_empty() {
            return Ok(Fixpoint { facts: all, iterations });
        }
        if iterations == max_iterations {
            return Err(RuleError::IterationLimitExceeded { limit: max_iterations });
        }
        iterations += 1;
        for a in &fresh {
            all.insert(a.clone());
            index.entry(a.predicate.clone()).or_default().push(a.clone());
        }
        delta = fresh;
    }
}

fn join(
    rule: &ChainRule,
    pivot: usize,
    at: usize,
    s: Substitution,
    index: &HashMap<String, Vec<Atom>>,
    emit: &mut impl FnMut(&Substitution),
) {
    if at == rule.body.len() {
        emit(&s);
        return;
    }
    if at == pivot {
        join(rule, pivot, at + 1, s, index, emit);
        return;
    }
    let pattern = s.apply_atom(&rule.body[at]);
    let Some(candidates) = index.get(pattern.predicate.as_str()) else { return };
    for fact in candidates {
        let mut ext = s.clone();
        if match_atom(&pattern, fact, &mut ext) {
            join(rule, pivot, at + 1, ext, index, emit);
        }
    }
}

/// Answers a ground query under the closed-world assumption.
pub fn query_cwa(program: &RuleProgram, query: &Atom, max_iterations: usize) -> Result<Verdict, RuleError> {
    let fix = forward_chain(&program.facts, &program.rules, max_iterations)?;
    Ok(if fix.facts.contains(query) { Verdict::True } else { Verdict::False })
}
