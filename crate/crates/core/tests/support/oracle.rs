//! Reference semantics computed by exhaustive enumeration, sharing no code
//! with the solvers under test beyond the data types.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use interlang_core::asp::{AspLiteral, AspRule};
use interlang_core::logic::{Atom, ClauseSet, Formula, Term};
use interlang_core::rules::ChainRule;
use interlang_core::Verdict;

use super::gen::FolCase;

/// Propositional formula over ground atom indices.
enum Prop {
    Atom(usize),
    Not(Box<Prop>),
    And(Vec<Prop>),
    Or(Vec<Prop>),
    Implies(Box<Prop>, Box<Prop>),
    Iff(Box<Prop>, Box<Prop>),
}

impl Prop {
    fn eval(&self, m: u64) -> bool {
        match self {
            Prop::Atom(i) => m >> i & 1 == 1,
            Prop::Not(p) => !p.eval(m),
            Prop::And(ps) => ps.iter().all(|p| p.eval(m)),
            Prop::Or(ps) => ps.iter().any(|p| p.eval(m)),
            Prop::Implies(a, b) => !a.eval(m) || b.eval(m),
            Prop::Iff(a, b) => a.eval(m) == b.eval(m),
        }
    }
}

#[derive(Default)]
struct AtomTable {
    ids: HashMap<(String, Vec<String>), usize>,
}

impl AtomTable {
    fn id(&mut self, pred: &str, args: Vec<String>) -> usize {
        let n = self.ids.len();
        *self.ids.entry((pred.to_string(), args)).or_insert(n)
    }
}

fn term_value(t: &Term, env: &BTreeMap<String, String>) -> String {
    match t {
        Term::Var(v) => env.get(v).unwrap_or_else(|| panic!("unbound variable {v}")).clone(),
        Term::Const(c) => c.clone(),
        Term::Func(..) => panic!("oracle formulas are function-free"),
    }
}

/// Expands quantifiers over `domain`, reading constants as themselves.
fn ground(f: &Formula, domain: &[String], env: &mut BTreeMap<String, String>, atoms: &mut AtomTable) -> Prop {
    match f {
        Formula::Atom(a) => Prop::Atom(atoms.id(&a.predicate, a.args.iter().map(|t| term_value(t, env)).collect())),
        Formula::Not(g) => Prop::Not(Box::new(ground(g, domain, env, atoms))),
        Formula::And(a, b) => Prop::And(vec![ground(a, domain, env, atoms), ground(b, domain, env, atoms)]),
        Formula::Or(a, b) => Prop::Or(vec![ground(a, domain, env, atoms), ground(b, domain, env, atoms)]),
        Formula::Implies(a, b) => {
            Prop::Implies(Box::new(ground(a, domain, env, atoms)), Box::new(ground(b, domain, env, atoms)))
        }
        Formula::Iff(a, b) => Prop::Iff(Box::new(ground(a, domain, env, atoms)), Box::new(ground(b, domain, env, atoms))),
        Formula::Forall(v, g) | Formula::Exists(v, g) => {
            let saved = env.get(v).cloned();
            let parts = domain
                .iter()
                .map(|d| {
                    env.insert(v.clone(), d.clone());
                    ground(g, domain, env, atoms)
                })
                .collect();
            match saved {
                Some(s) => env.insert(v.clone(), s),
                None => env.remove(v),
            };
            if matches!(f, Formula::Forall(..)) { Prop::And(parts) } else { Prop::Or(parts) }
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FolOracle {
    Inconsistent,
    Verdict(Verdict),
}

/// Entailment by enumerating every Herbrand interpretation over the case's
/// constants.
pub fn fol_classify(case: &FolCase) -> FolOracle {
    let mut atoms = AtomTable::default();
    let kb: Vec<Prop> = case.kb.iter().map(|f| ground(f, &case.constants, &mut BTreeMap::new(), &mut atoms)).collect();
    let q = ground(&case.query, &case.constants, &mut BTreeMap::new(), &mut atoms);
    let n = atoms.ids.len();
    assert!(n <= 20, "oracle base too large: {n}");
    let (mut models, mut q_true, mut q_false) = (0u64, 0u64, 0u64);
    for m in 0..1u64 << n {
        if kb.iter().all(|p| p.eval(m)) {
            models += 1;
            if q.eval(m) {
                q_true += 1;
            } else {
                q_false += 1;
            }
        }
    }
    match models {
        0 => FolOracle::Inconsistent,
        _ if q_false == 0 => FolOracle::Verdict(Verdict::True),
        _ if q_true == 0 => FolOracle::Verdict(Verdict::False),
        _ => FolOracle::Verdict(Verdict::Unknown),
    }
}

/// Whether `f` has a model whose domain is `domain` with each constant
/// naming itself.
pub fn formula_sat_over(f: &Formula, domain: &[String]) -> bool {
    let mut atoms = AtomTable::default();
    let p = ground(f, domain, &mut BTreeMap::new(), &mut atoms);
    let n = atoms.ids.len();
    assert!(n <= 20, "oracle base too large: {n}");
    (0..1u64 << n).any(|m| p.eval(m))
}

/// Whether the clause set has a model over `domain` for some interpretation
/// of its Skolem symbols. `None` when there are too many Skolem tables to
/// enumerate within `max_tables`.
pub fn clauses_sat_over(cs: &ClauseSet, domain: &[String], max_tables: u64) -> Option<bool> {
    let mut skolems: BTreeMap<String, usize> = BTreeMap::new();
    for c in cs.iter() {
        for l in c.literals() {
            for t in &l.atom.args {
                collect_skolems(t, &mut skolems);
            }
        }
    }
    let d = domain.len() as u64;
    // Each symbol of arity k has d^(d^k) possible tables.
    let mut total: u64 = 1;
    let mut table_sizes = Vec::new();
    for &k in skolems.values() {
        let cells = d.checked_pow(k as u32)?;
        let tables = d.checked_pow(u32::try_from(cells).ok()?)?;
        total = total.checked_mul(tables)?;
        table_sizes.push(cells as usize);
        if total > max_tables {
            return None;
        }
    }
    let names: Vec<&String> = skolems.keys().collect();
    for mut code in 0..total {
        let mut interp: HashMap<&str, Vec<usize>> = HashMap::new();
        for (name, &cells) in names.iter().zip(&table_sizes) {
            let mut table = Vec::with_capacity(cells);
            for _ in 0..cells {
                table.push((code % d) as usize);
                code /= d;
            }
            interp.insert(name.as_str(), table);
        }
        if ground_clauses_sat(cs, domain, &interp) {
            return Some(true);
        }
    }
    Some(false)
}

fn collect_skolems(t: &Term, out: &mut BTreeMap<String, usize>) {
    match t {
        Term::Var(_) => {}
        Term::Const(c) => {
            if c.starts_with("__") {
                out.insert(c.clone(), 0);
            }
        }
        Term::Func(f, args) => {
            out.insert(f.clone(), args.len());
            args.iter().for_each(|a| collect_skolems(a, out));
        }
    }
}

fn eval_term(t: &Term, env: &BTreeMap<String, usize>, domain: &[String], interp: &HashMap<&str, Vec<usize>>) -> usize {
    match t {
        Term::Var(v) => env[v],
        Term::Const(c) => match interp.get(c.as_str()) {
            Some(table) => table[0],
            None => domain.iter().position(|d| d == c).expect("constant in domain"),
        },
        Term::Func(f, args) => {
            let d = domain.len();
            let idx = args.iter().fold(0, |acc, a| acc * d + eval_term(a, env, domain, interp));
            interp[f.as_str()][idx]
        }
    }
}

fn ground_clauses_sat(cs: &ClauseSet, domain: &[String], interp: &HashMap<&str, Vec<usize>>) -> bool {
    let mut ids: HashMap<(String, Vec<usize>), i32> = HashMap::new();
    let mut ground: Vec<Vec<i32>> = Vec::new();
    for c in cs.iter() {
        let vars: Vec<String> = c.vars().into_iter().collect();
        let mut choice = vec![0usize; vars.len()];
        loop {
            let env: BTreeMap<String, usize> = vars.iter().cloned().zip(choice.iter().copied()).collect();
            let clause = c
                .literals()
                .iter()
                .map(|l| {
                    let args = l.atom.args.iter().map(|t| eval_term(t, &env, domain, interp)).collect();
                    let n = ids.len() as i32 + 1;
                    let id = *ids.entry((l.atom.predicate.clone(), args)).or_insert(n);
                    if l.positive { id } else { -id }
                })
                .collect();
            ground.push(clause);
            let mut k = choice.len();
            let done = loop {
                if k == 0 {
                    break true;
                }
                k -= 1;
                choice[k] += 1;
                if choice[k] < domain.len() {
                    break false;
                }
                choice[k] = 0;
            };
            if done {
                break;
            }
        }
    }
    dpll(&ground, &mut HashMap::new())
}

fn dpll(clauses: &[Vec<i32>], assign: &mut HashMap<i32, bool>) -> bool {
    let value = |l: i32, a: &HashMap<i32, bool>| a.get(&l.abs()).map(|&v| v == (l > 0));
    loop {
        let mut unit = None;
        for c in clauses {
            if c.iter().any(|&l| value(l, assign) == Some(true)) {
                continue;
            }
            let open: Vec<i32> = c.iter().copied().filter(|&l| value(l, assign).is_none()).collect();
            match open.len() {
                0 => return false,
                1 => {
                    unit = Some(open[0]);
                    break;
                }
                _ => {}
            }
        }
        match unit {
            Some(l) => {
                assign.insert(l.abs(), l > 0);
            }
            None => break,
        }
    }
    let next = clauses
        .iter()
        .filter(|c| !c.iter().any(|&l| value(l, assign) == Some(true)))
        .flat_map(|c| c.iter())
        .find(|&&l| value(l, assign).is_none());
    let Some(&l) = next else { return true };
    for v in [true, false] {
        let mut a = assign.clone();
        a.insert(l.abs(), v);
        if dpll(clauses, &mut a) {
            return true;
        }
    }
    false
}

/// Answer sets of a ground program by testing every subset of its literals
/// against the reduct definition.
pub fn asp_answer_sets(rules: &[AspRule]) -> BTreeSet<BTreeSet<AspLiteral>> {
    let lits: Vec<AspLiteral> = rules.iter().flat_map(|r| r.literals().cloned()).collect::<BTreeSet<_>>().into_iter().collect();
    assert!(lits.len() <= 16, "oracle base too large");
    let mut out = BTreeSet::new();
    for mask in 0u32..1 << lits.len() {
        let s: BTreeSet<AspLiteral> = (0..lits.len()).filter(|i| mask >> i & 1 == 1).map(|i| lits[i].clone()).collect();
        if s.iter().any(|l| s.contains(&l.complement())) {
            continue;
        }
        let reduct: Vec<&AspRule> = rules.iter().filter(|r| r.negated_body.iter().all(|l| !s.contains(l))).collect();
        if reduct.iter().any(|r| r.head.is_none() && r.positive_body.iter().all(|l| s.contains(l))) {
            continue;
        }
        let mut m: BTreeSet<AspLiteral> = BTreeSet::new();
        loop {
            let before = m.len();
            for r in &reduct {
                if let Some(h) = &r.head {
                    if r.positive_body.iter().all(|l| m.contains(l)) {
                        m.insert(h.clone());
                    }
                }
            }
            if m.len() == before {
                break;
            }
        }
        if m == s {
            out.insert(s);
        }
    }
    out
}

/// Least model of the positive program `rules` (constraints ignored).
pub fn asp_least_model(rules: &[AspRule]) -> BTreeSet<AspLiteral> {
    let mut m = BTreeSet::new();
    loop {
        let before = m.len();
        for r in rules {
            if let Some(h) = &r.head {
                if r.positive_body.iter().all(|l| m.contains(l)) {
                    m.insert(h.clone());
                }
            }
        }
        if m.len() == before {
            return m;
        }
    }
}

/// Naive bottom-up iteration: re-apply every ground instance of every rule
/// until nothing changes. Returns the fixpoint and the number of rounds
/// that added a fact.
pub fn naive_fixpoint(facts: &BTreeSet<Atom>, rules: &[ChainRule], constants: &[String]) -> (BTreeSet<Atom>, usize) {
    let mut current = facts.clone();
    let mut rounds = 0;
    loop {
        let mut next = current.clone();
        for rule in rules {
            let mut vars = BTreeSet::new();
            rule.body.iter().for_each(|a| a.collect_vars(&mut vars));
            let vars: Vec<String> = vars.into_iter().collect();
            let combos = constants.len().pow(vars.len() as u32);
            for mut code in 0..combos {
                let mut env = BTreeMap::new();
                for v in &vars {
                    env.insert(v.clone(), constants[code % constants.len()].clone());
                    code /= constants.len();
                }
                let inst = |a: &Atom| Atom::new(a.predicate.clone(), a.args.iter().map(|t| Term::Const(term_value(t, &env))).collect());
                if rule.body.iter().all(|b| current.contains(&inst(b))) {
                    next.insert(inst(&rule.head));
                }
            }
        }
        if next.len() == current.len() {
            return (current, rounds);
        }
        rounds += 1;
        current = next;
    }
}
