//! Random instances driven by a ChaCha stream so every case is replayable
//! from its seed.

use rand::seq::IndexedRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use interlang_core::asp::{AspLiteral, AspRule};
use interlang_core::logic::{Atom, Formula, Term};
use interlang_core::rules::{ChainRule, FactBase};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Predicate name with its arity.
#[derive(Clone, Debug)]
pub struct Pred {
    pub name: String,
    pub arity: usize,
}

/// A function-free, closed, universally quantified knowledge base with a
/// ground literal query.
#[derive(Clone, Debug)]
pub struct FolCase {
    pub constants: Vec<String>,
    pub preds: Vec<Pred>,
    pub kb: Vec<Formula>,
    pub query: Formula,
}

impl FolCase {
    pub fn base_size(&self) -> usize {
        self.preds.iter().map(|p| self.constants.len().pow(p.arity as u32)).sum()
    }
}

/// At most 4 constants, 5 unary/binary predicates and 8 formulas; the ground
/// base is capped at `max_base` atoms so brute force stays cheap.
pub fn fol_case(r: &mut impl Rng, max_base: usize) -> FolCase {
    let (constants, preds) = loop {
        let c = r.random_range(1..=4usize);
        let np = r.random_range(1..=5usize);
        let preds: Vec<Pred> =
            (0..np).map(|i| Pred { name: format!("P{i}"), arity: r.random_range(1..=2) }).collect();
        let base: usize = preds.iter().map(|p| c.pow(p.arity as u32)).sum();
        if base <= max_base {
            let constants: Vec<String> = ["a", "b", "c", "d"][..c].iter().map(|s| s.to_string()).collect();
            break (constants, preds);
        }
    };
    let n = r.random_range(1..=8usize);
    let kb = (0..n).map(|_| kb_formula(r, &constants, &preds)).collect();
    let q = ground_atom(r, &constants, &preds);
    let query = if r.random_bool(0.3) { Formula::not(Formula::Atom(q)) } else { Formula::Atom(q) };
    FolCase { constants, preds, kb, query }
}

fn ground_atom(r: &mut impl Rng, constants: &[String], preds: &[Pred]) -> Atom {
    let p = preds.choose(r).unwrap();
    Atom::new(p.name.clone(), (0..p.arity).map(|_| Term::Const(constants.choose(r).unwrap().clone())).collect())
}

fn kb_formula(r: &mut impl Rng, constants: &[String], preds: &[Pred]) -> Formula {
    match r.random_range(0..10) {
        0..=2 => {
            let a = Formula::Atom(ground_atom(r, constants, preds));
            if r.random_bool(0.3) { Formula::not(a) } else { a }
        }
        3..=4 => qf_matrix(r, &[], constants, preds, 2),
        _ => {
            let vars: Vec<String> = ["x", "y"][..r.random_range(1..=2)].iter().map(|s| s.to_string()).collect();
            let body = qf_matrix(r, &vars, constants, preds, 2);
            vars.iter().rev().fold(body, |f, v| Formula::forall(v.clone(), f))
        }
    }
}

fn qf_matrix(r: &mut impl Rng, vars: &[String], constants: &[String], preds: &[Pred], depth: usize) -> Formula {
    if depth == 0 || r.random_bool(0.3) {
        let p = preds.choose(r).unwrap();
        let args = (0..p.arity)
            .map(|_| {
                if !vars.is_empty() && r.random_bool(0.75) {
                    Term::Var(vars.choose(r).unwrap().clone())
                } else {
                    Term::Const(constants.choose(r).unwrap().clone())
                }
            })
            .collect();
        let a = Formula::atom(p.name.clone(), args);
        return if r.random_bool(0.25) { Formula::not(a) } else { a };
    }
    let a = qf_matrix(r, vars, constants, preds, depth - 1);
    let b = qf_matrix(r, vars, constants, preds, depth - 1);
    match r.random_range(0..6) {
        0 => Formula::and(a, b),
        1 => Formula::or(a, b),
        2..=4 => Formula::implies(a, b),
        _ => Formula::iff(a, b),
    }
}

/// Well-formed formula of depth ≤ `depth` for parse/render round trips:
/// bound lowercase variables, uppercase free variables, lowercase
/// constants, and a fixed signature including function symbols.
pub fn roundtrip_formula(r: &mut impl Rng, depth: usize) -> Formula {
    rt_formula(r, depth, &mut Vec::new())
}

const RT_PREDS: [(&str, usize); 5] = [("P", 1), ("Q", 2), ("R", 0), ("Cat", 1), ("p14", 2)];
const RT_FUNCS: [(&str, usize); 2] = [("f", 1), ("g", 2)];
const RT_BOUND: [&str; 4] = ["x", "y", "z", "w"];
const RT_CONSTS: [&str; 3] = ["a", "fae", "c1"];
const RT_FREE: [&str; 2] = ["X", "Y1"];

fn rt_term(r: &mut impl Rng, depth: usize, scope: &[String]) -> Term {
    match r.random_range(0..10) {
        0..=3 if !scope.is_empty() => Term::Var(scope.choose(r).unwrap().clone()),
        0..=3 | 4..=5 => Term::Const(RT_CONSTS.choose(r).unwrap().to_string()),
        6 => Term::Var(RT_FREE.choose(r).unwrap().to_string()),
        _ if depth == 0 => Term::Const(RT_CONSTS.choose(r).unwrap().to_string()),
        _ => {
            let (f, n) = *RT_FUNCS.choose(r).unwrap();
            Term::Func(f.into(), (0..n).map(|_| rt_term(r, depth - 1, scope)).collect())
        }
    }
}

fn rt_formula(r: &mut impl Rng, depth: usize, scope: &mut Vec<String>) -> Formula {
    if depth <= 1 || r.random_bool(0.2) {
        let (p, n) = *RT_PREDS.choose(r).unwrap();
        return Formula::atom(p, (0..n).map(|_| rt_term(r, 2, scope)).collect());
    }
    match r.random_range(0..8) {
        0 => Formula::not(rt_formula(r, depth - 1, scope)),
        1 => Formula::and(rt_formula(r, depth - 1, scope), rt_formula(r, depth - 1, scope)),
        2 => Formula::or(rt_formula(r, depth - 1, scope), rt_formula(r, depth - 1, scope)),
        3 => Formula::implies(rt_formula(r, depth - 1, scope), rt_formula(r, depth - 1, scope)),
        4 => Formula::iff(rt_formula(r, depth - 1, scope), rt_formula(r, depth - 1, scope)),
        _ => {
            let free: Vec<&str> = RT_BOUND.iter().copied().filter(|v| !scope.iter().any(|s| s == v)).collect();
            let Some(v) = free.choose(r) else { return Formula::not(rt_formula(r, depth - 1, scope)) };
            scope.push(v.to_string());
            let body = rt_formula(r, depth - 1, scope);
            scope.pop();
            if r.random_bool(0.5) { Formula::forall(*v, body) } else { Formula::exists(*v, body) }
        }
    }
}

/// Closed, function-free formula over `P/1`, `Q/2`, `R/0` and constants
/// `a`, `b`, possibly with existentials.
pub fn closed_formula(r: &mut impl Rng, depth: usize) -> Formula {
    cf(r, depth, &mut Vec::new())
}

fn cf(r: &mut impl Rng, depth: usize, scope: &mut Vec<String>) -> Formula {
    let term = |r: &mut dyn rand::RngCore, scope: &[String]| {
        if !scope.is_empty() && r.random_bool(0.7) {
            Term::Var(scope.choose(r).unwrap().clone())
        } else {
            Term::Const(["a", "b"].choose(r).unwrap().to_string())
        }
    };
    if depth <= 1 || r.random_bool(0.15) {
        return match r.random_range(0..3) {
            0 => Formula::atom("P", vec![term(r, scope)]),
            1 => Formula::atom("Q", vec![term(r, scope), term(r, scope)]),
            _ => Formula::atom("R", vec![]),
        };
    }
    match r.random_range(0..9) {
        0 => Formula::not(cf(r, depth - 1, scope)),
        1 => Formula::and(cf(r, depth - 1, scope), cf(r, depth - 1, scope)),
        2 => Formula::or(cf(r, depth - 1, scope), cf(r, depth - 1, scope)),
        3 => Formula::implies(cf(r, depth - 1, scope), cf(r, depth - 1, scope)),
        4 => Formula::iff(cf(r, depth - 1, scope), cf(r, depth - 1, scope)),
        _ => {
            let v = ["x", "y", "z"].iter().find(|v| !scope.iter().any(|s| s == *v));
            let Some(v) = v else { return Formula::not(cf(r, depth - 1, scope)) };
            scope.push(v.to_string());
            let body = cf(r, depth - 1, scope);
            scope.pop();
            if r.random_bool(0.5) { Formula::forall(*v, body) } else { Formula::exists(*v, body) }
        }
    }
}

/// Term over variables `X, Y, Z`, constants `a, b` and functions `f/1`, `g/2`.
pub fn term(r: &mut impl Rng, depth: usize) -> Term {
    match r.random_range(0..6) {
        0..=1 => Term::Var(["X", "Y", "Z"].choose(r).unwrap().to_string()),
        2 => Term::Const(["a", "b"].choose(r).unwrap().to_string()),
        _ if depth == 0 => Term::Var(["X", "Y", "Z"].choose(r).unwrap().to_string()),
        3..=4 => Term::Func("f".into(), vec![term(r, depth - 1)]),
        _ => Term::Func("g".into(), vec![term(r, depth - 1), term(r, depth - 1)]),
    }
}

/// Ground term of depth ≤ `depth` over `a, b, f/1, g/2`.
pub fn ground_term(r: &mut impl Rng, depth: usize) -> Term {
    if depth == 0 || r.random_bool(0.5) {
        return Term::Const(["a", "b"].choose(r).unwrap().to_string());
    }
    if r.random_bool(0.5) {
        Term::Func("f".into(), vec![ground_term(r, depth - 1)])
    } else {
        Term::Func("g".into(), vec![ground_term(r, depth - 1), ground_term(r, depth - 1)])
    }
}

/// Ground normal program over at most six propositional atoms, so at most
/// twelve literals once strong negation is counted.
pub fn ground_asp_program(r: &mut impl Rng) -> Vec<AspRule> {
    let atoms = r.random_range(1..=6usize);
    let lit = |r: &mut dyn rand::RngCore| {
        let atom = Atom::new(format!("a{}", r.random_range(0..atoms)), vec![]);
        if r.random_bool(0.3) { AspLiteral::neg(atom) } else { AspLiteral::pos(atom) }
    };
    let n = r.random_range(1..=8usize);
    (0..n)
        .map(|_| {
            let head = if r.random_bool(0.12) { None } else { Some(lit(r)) };
            let pos = (0..r.random_range(0..=2)).map(|_| lit(r)).collect();
            let neg = (0..r.random_range(0..=2)).map(|_| lit(r)).collect();
            let mut rule = AspRule { head, positive_body: pos, negated_body: neg };
            if rule.head.is_none() && rule.positive_body.is_empty() && rule.negated_body.is_empty() {
                rule.positive_body.push(lit(r));
            }
            rule
        })
        .collect()
}

/// Ground normal program over up to `max_atoms` propositional atoms with
/// both negations, resampled until at most 16 distinct literals occur so the
/// subset oracle stays cheap.
pub fn ground_asp_program_over(r: &mut impl Rng, max_atoms: usize) -> Vec<AspRule> {
    loop {
        let atoms = r.random_range(1..=max_atoms);
        let lit = |r: &mut dyn rand::RngCore| {
            let atom = Atom::new(format!("a{}", r.random_range(0..atoms)), vec![]);
            if r.random_bool(0.3) { AspLiteral::neg(atom) } else { AspLiteral::pos(atom) }
        };
        let n = r.random_range(1..=10usize);
        let rules: Vec<AspRule> = (0..n)
            .map(|_| {
                let head = if r.random_bool(0.12) { None } else { Some(lit(r)) };
                let pos = (0..r.random_range(0..=2)).map(|_| lit(r)).collect();
                let neg = (0..r.random_range(0..=2)).map(|_| lit(r)).collect();
                let mut rule = AspRule { head, positive_body: pos, negated_body: neg };
                if rule.head.is_none() && rule.positive_body.is_empty() && rule.negated_body.is_empty() {
                    rule.positive_body.push(lit(r));
                }
                rule
            })
            .collect();
        let distinct: std::collections::BTreeSet<&AspLiteral> = rules.iter().flat_map(|r| r.literals()).collect();
        if distinct.len() <= 16 {
            return rules;
        }
    }
}

/// Chain-rule program with at most `max_base` potential ground atoms.
#[derive(Clone, Debug)]
pub struct ChainCase {
    pub constants: Vec<String>,
    pub facts: FactBase,
    pub rules: Vec<ChainRule>,
}

pub fn chain_program(r: &mut impl Rng, max_base: usize) -> ChainCase {
    let (constants, preds) = loop {
        let c = r.random_range(1..=3usize);
        let np = r.random_range(1..=5usize);
        let preds: Vec<Pred> =
            (0..np).map(|i| Pred { name: format!("p{i}"), arity: r.random_range(1..=2) }).collect();
        let base: usize = preds.iter().map(|p| c.pow(p.arity as u32)).sum();
        if base <= max_base {
            let constants: Vec<String> = ["a", "b", "c"][..c].iter().map(|s| s.to_string()).collect();
            break (constants, preds);
        }
    };
    let nf = r.random_range(0..=6usize);
    let facts = (0..nf).map(|_| ground_atom(r, &constants, &preds)).collect();
    let nr = r.random_range(0..=6usize);
    let vars = ["X", "Y", "Z"];
    let rules = (0..nr)
        .map(|_| {
            let arg = |r: &mut dyn rand::RngCore| {
                if r.random_bool(0.8) {
                    Term::Var(vars.choose(r).unwrap().to_string())
                } else {
                    Term::Const(constants.choose(r).unwrap().clone())
                }
            };
            let body: Vec<Atom> = (0..r.random_range(1..=3))
                .map(|_| {
                    let p = preds.choose(r).unwrap();
                    Atom::new(p.name.clone(), (0..p.arity).map(|_| arg(r)).collect())
                })
                .collect();
            let mut bound = std::collections::BTreeSet::new();
            body.iter().for_each(|a| a.collect_vars(&mut bound));
            let bound: Vec<String> = bound.into_iter().collect();
            let p = preds.choose(r).unwrap();
            let head_args = (0..p.arity)
                .map(|_| {
                    if !bound.is_empty() && r.random_bool(0.85) {
                        Term::Var(bound.choose(r).unwrap().clone())
                    } else {
                        Term::Const(constants.choose(r).unwrap().clone())
                    }
                })
                .collect();
            ChainRule::new(body, Atom::new(p.name.clone(), head_args))
        })
        .collect();
    ChainCase { constants, facts, rules }
}

/// `a0(c)` plus the rules `ai(X) => a(i+1)(X)` for `i < depth`.
pub fn chain_of_depth(depth: usize) -> (FactBase, Vec<ChainRule>) {
    let facts = [Atom::ground("a0", &["c"])].into_iter().collect();
    let rules = (0..depth)
        .map(|i| {
            ChainRule::new(
                vec![Atom::new(format!("a{i}"), vec![Term::var("X")])],
                Atom::new(format!("a{}", i + 1), vec![Term::var("X")]),
            )
        })
        .collect();
    (facts, rules)
}
