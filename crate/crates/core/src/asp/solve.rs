use std::collections::{BTreeSet, HashMap};
use std::time::Instant;

use crate::verdict::{Assumption, Verdict};

use super::{ground_with_limit, AnswerSet, AspError, AspLiteral, AspRule, GroundProgram, DEFAULT_MAX_GROUND_RULES};

pub const DEFAULT_MAX_GUESS_ATOMS: usize = 24;

/// Size and time bounds for grounding and solving.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct AspLimits {
    pub max_ground_rules: usize,
    /// Upper bound on the number of default-negated literals whose truth
    /// value has to be guessed.
    pub max_guess_atoms: usize,
    pub deadline: Option<Instant>,
}

impl Default for AspLimits {
    fn default() -> Self {
        Self { max_ground_rules: DEFAULT_MAX_GROUND_RULES, max_guess_atoms: DEFAULT_MAX_GUESS_ATOMS, deadline: None }
    }
}

struct IRule {
    head: Option<usize>,
    pos: Vec<usize>,
    neg: Vec<usize>,
}

/// Every answer set of `gp` under default limits.
pub fn answer_sets(gp: &GroundProgram) -> Result<BTreeSet<AnswerSet>, AspError> {
    answer_sets_with(gp, &AspLimits::default())
}

/// Enumerates stable models by guessing the default-negated literals.
///
/// Only literals that can still be derived are guessed; the others are false
/// in every model. For each guess the least model of the reduct is computed
/// and kept when it reproduces the guess, is consistent and violates no
/// constraint.
pub fn answer_sets_with(gp: &GroundProgram, limits: &AspLimits) -> Result<BTreeSet<AnswerSet>, AspError> {
    let lits: Vec<&AspLiteral> = gp.herbrand_base.iter().collect();
    let id: HashMap<&AspLiteral, usize> = lits.iter().enumerate().map(|(i, l)| (*l, i)).collect();
    let index = |l: &AspLiteral| *id.get(l).expect("herbrand base covers every rule literal");
    let rules: Vec<IRule> = gp
        .rules
        .iter()
        .map(|r| IRule {
            head: r.head.as_ref().map(index),
            pos: r.positive_body.iter().map(index).collect(),
            neg: r.negated_body.iter().map(index).collect(),
        })
        .collect();
    let n = lits.len();

    let possible = least_model(n, &rules, |_| true);
    let rules: Vec<IRule> = rules
        .into_iter()
        .filter(|r| r.pos.iter().all(|&p| possible[p]))
        .map(|r| IRule { head: r.head, pos: r.pos, neg: r.neg.into_iter().filter(|&l| possible[l]).collect() })
        .collect();
    let guess: Vec<usize> = rules.iter().flat_map(|r| r.neg.iter().copied()).collect::<BTreeSet<_>>().into_iter().collect();
    if guess.len() > limits.max_guess_atoms {
        return Err(AspError::BaseTooLarge { atoms: guess.len(), limit: limits.max_guess_atoms });
    }
    let complement: Vec<Option<usize>> = lits.iter().map(|l| id.get(&l.complement()).copied()).collect();

    let mut out = BTreeSet::new();
    let mut assumed = vec![false; n];
    for mask in 0u64..(1u64 << guess.len()) {
        if mask % 1024 == 1023 {
            if let Some(d) = limits.deadline {
                if Instant::now() >= d {
                    return Err(AspError::Timeout);
                }
            }
        }
        for (bit, &g) in guess.iter().enumerate() {
            assumed[g] = mask >> bit & 1 == 1;
        }
        let model = least_model(n, &rules, |r| r.neg.iter().all(|&l| !assumed[l]));
        if guess.iter().any(|&g| model[g] != assumed[g]) {
            continue;
        }
        if (0..n).any(|i| model[i] && complement[i].is_some_and(|c| model[c])) {
            continue;
        }
        let violated = rules
            .iter()
            .filter(|r| r.head.is_none())
            .any(|r| r.pos.iter().all(|&p| model[p]) && r.neg.iter().all(|&l| !model[l]));
        if violated {
            continue;
        }
        let literals = (0..n).filter(|&i| model[i]).map(|i| lits[i].clone()).collect();
        out.insert(AnswerSet { literals });
    }
    Ok(out)
}

/// Least model of the definite rules selected by `active`, ignoring
/// negated bodies and constraints.
fn least_model(n: usize, rules: &[IRule], active: impl Fn(&IRule) -> bool) -> Vec<bool> {
    let mut model = vec![false; n];
    let mut missing: Vec<usize> = Vec::with_capacity(rules.len());
    let mut watchers: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut queue = Vec::new();
    for (ri, r) in rules.iter().enumerate() {
        let live = r.head.is_some() && active(r);
        let mut distinct = r.pos.clone();
        distinct.sort_unstable();
        distinct.dedup();
        missing.push(if live { distinct.len() } else { usize::MAX });
        if !live {
            continue;
        }
        for &p in &distinct {
            watchers[p].push(ri);
        }
        if distinct.is_empty() {
            queue.push(r.head.expect("live rules have heads"));
        }
    }
    while let Some(l) = queue.pop() {
        if model[l] {
            continue;
        }
        model[l] = true;
        for &ri in &watchers[l] {
            missing[ri] -= 1;
            if missing[ri] == 0 {
                queue.push(rules[ri].head.expect("live rules have heads"));
            }
        }
    }
    model
}

/// Cautious query evaluation over all answer sets of `rules`.
///
/// Under CWA the result is True when `q` holds in every answer set and False
/// otherwise. Under OWA it is False when the strong complement holds in
/// every answer set and Unknown when neither does.
pub fn query_asp(rules: &[AspRule], q: &AspLiteral, assumption: Assumption, limits: &AspLimits) -> Result<Verdict, AspError> {
    let gp = ground_with_limit(rules, limits.max_ground_rules)?;
    let sets = answer_sets_with(&gp, limits)?;
    if sets.is_empty() {
        return Err(AspError::Unsatisfiable);
    }
    if sets.iter().all(|s| s.contains(q)) {
        return Ok(Verdict::True);
    }
    Ok(match assumption {
        Assumption::Cwa => Verdict::False,
        Assumption::Owa => {
            let neg = q.complement();
            if sets.iter().all(|s| s.contains(&neg)) {
                Verdict::False
            } else {
                Verdict::Unknown
            }
        }
    })
}
