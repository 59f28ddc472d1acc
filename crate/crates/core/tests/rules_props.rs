mod support;

use std::collections::BTreeSet;

use proptest::prelude::*;

use interlang_core::logic::Atom;
use interlang_core::rules::{forward_chain, query_cwa, FactBase, RuleProgram, DEFAULT_MAX_ITERATIONS};
use interlang_core::Verdict;
use support::{gen, oracle};

fn facts_of(fb: &FactBase) -> BTreeSet<Atom> {
    fb.iter().cloned().collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn forward_chain_matches_naive_iteration(seed in any::<u64>()) {
        let case = gen::chain_program(&mut gen::rng(seed), 50);
        let fix = forward_chain(&case.facts, &case.rules, DEFAULT_MAX_ITERATIONS).unwrap();
        let (want, rounds) = oracle::naive_fixpoint(&facts_of(&case.facts), &case.rules, &case.constants);
        prop_assert_eq!(facts_of(&fix.facts), want);
        prop_assert_eq!(fix.iterations, rounds);
    }

    #[test]
    fn adding_a_fact_never_removes_derivations(seed in any::<u64>()) {
        let mut r = gen::rng(seed);
        let case = gen::chain_program(&mut r, 50);
        let extra = gen::chain_program(&mut r, 50).facts;
        let before = forward_chain(&case.facts, &case.rules, DEFAULT_MAX_ITERATIONS).unwrap();
        let mut bigger = case.facts.clone();
        if let Some(a) = extra.iter().next() {
            bigger.insert(a.clone());
        }
        let after = forward_chain(&bigger, &case.rules, DEFAULT_MAX_ITERATIONS).unwrap();
        prop_assert!(before.facts.is_subset(&after.facts));
    }

    #[test]
    fn cwa_queries_are_never_unknown(seed in any::<u64>()) {
        let mut r = gen::rng(seed);
        let case = gen::chain_program(&mut r, 50);
        let program = RuleProgram { facts: case.facts.clone(), rules: case.rules.clone(), query: None, signature: Default::default() };
        let q = Atom::ground("p0", &[case.constants[0].as_str()]);
        let v = query_cwa(&program, &q, DEFAULT_MAX_ITERATIONS).unwrap();
        prop_assert_ne!(v, Verdict::Unknown);
    }
}

#[test]
fn empty_rule_set_is_identity() {
    let case = gen::chain_program(&mut gen::rng(3), 50);
    let fix = forward_chain(&case.facts, &[], DEFAULT_MAX_ITERATIONS).unwrap();
    assert_eq!(fix.facts, case.facts);
    assert_eq!(fix.iterations, 0);
}
