use std::collections::BTreeSet;

use crate::logic::{Substitution, Term};

use super::{AspError, AspLiteral, AspRule};

pub const DEFAULT_MAX_GROUND_RULES: usize = 100_000;

/// A variable-free program together with every literal it mentions.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct GroundProgram {
    pub rules: Vec<AspRule>,
    pub herbrand_base: BTreeSet<AspLiteral>,
}

impl GroundProgram {
    /// Builds a ground program from rules that are already variable-free.
    ///
    /// # Panics
    /// If a rule contains a variable.
    pub fn from_ground_rules(rules: Vec<AspRule>) -> Self {
        assert!(rules.iter().all(AspRule::is_ground), "rules must be ground");
        let herbrand_base = rules.iter().flat_map(|r| r.literals().cloned()).collect();
        Self { rules, herbrand_base }
    }
}

/// Instantiates every rule with every combination of program constants.
pub fn ground(rules: &[AspRule]) -> Result<GroundProgram, AspError> {
    ground_with_limit(rules, DEFAULT_MAX_GROUND_RULES)
}

/// As [`ground`], failing before materialization if the output would exceed
/// `max_rules`.
pub fn ground_with_limit(rules: &[AspRule], max_rules: usize) -> Result<GroundProgram, AspError> {
    let mut universe = BTreeSet::new();
    for l in rules.iter().flat_map(AspRule::literals) {
        for t in &l.atom.args {
            if let Term::Const(c) = t {
                universe.insert(c.clone());
            }
        }
    }
    let universe: Vec<String> = universe.into_iter().collect();

    let total = rules
        .iter()
        .map(|r| {
            let n = r.vars().len() as u32;
            (universe.len() as u128).checked_pow(n).unwrap_or(u128::MAX)
        })
        .fold(0u128, u128::saturating_add);
    if total > max_rules as u128 {
        return Err(AspError::GroundingTooLarge { rules: total, limit: max_rules });
    }

    let mut out = Vec::with_capacity(total as usize);
    for rule in rules {
        let vars: Vec<String> = rule.vars().into_iter().collect();
        if vars.is_empty() {
            out.push(rule.clone());
            continue;
        }
        if universe.is_empty() {
            continue;
        }
        let mut choice = vec![0usize; vars.len()];
        loop {
            let mut s = Substitution::new();
            for (v, &c) in vars.iter().zip(&choice) {
                s.bind_raw(v, Term::Const(universe[c].clone()));
            }
            out.push(instantiate(rule, &s));
            let mut k = choice.len();
            let exhausted = loop {
                if k == 0 {
                    break true;
                }
                k -= 1;
                choice[k] += 1;
                if choice[k] < universe.len() {
                    break false;
                }
                choice[k] = 0;
            };
            if exhausted {
                break;
            }
        }
    }
    Ok(GroundProgram::from_ground_rules(out))
}

fn instantiate(rule: &AspRule, s: &Substitution) -> AspRule {
    let lit = |l: &AspLiteral| AspLiteral { strong_negated: l.strong_negated, atom: s.apply_atom(&l.atom) };
    AspRule {
        head: rule.head.as_ref().map(lit),
        positive_body: rule.positive_body.iter().map(lit).collect(),
        negated_body: rule.negated_body.iter().map(lit).collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::asp::parse_asp;

    #[test]
    fn single_constant() {
        let p = parse_asp("p(a). q(X) :- p(X).").unwrap();
        let g = ground(&p.rules).unwrap();
        let shown: Vec<String> = g.rules.iter().map(|r| r.to_string()).collect();
        assert_eq!(shown, ["p(a).", "q(a) :- p(a)."]);
        assert_eq!(g.herbrand_base.len(), 2);
    }

    #[test]
    fn empty_program() {
        assert_eq!(ground(&[]).unwrap(), GroundProgram::default());
    }

    #[test]
    fn two_constants_two_vars() {
        let p = parse_asp("e(a,b). r(X,Y) :- e(X,Y).").unwrap();
        let g = ground(&p.rules).unwrap();
        assert_eq!(g.rules.len(), 1 + 4);
    }

    #[test]
    fn bound_is_checked() {
        let p = parse_asp("e(a,b). e(c,d). r(X,Y) :- e(X,Y).").unwrap();
        assert_eq!(
            ground_with_limit(&p.rules, 10).unwrap_err(),
            AspError::GroundingTooLarge { rules: 18, limit: 10 }
        );
    }
}
