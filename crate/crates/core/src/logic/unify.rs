use super::subst::Substitution;
use super::term::{Atom, Term};

/// Most general unifier of two terms, or `None` on clash / occurs check.
pub fn unify_terms(a: &Term, b: &Term) -> Option<Substitution> {
    let mut s = Substitution::new();
    unify_into(a, b, &mut s).then_some(s)
}

/// Most general unifier of two atoms; predicate and arity must agree.
pub fn unify_atoms(a: &Atom, b: &Atom) -> Option<Substitution> {
    if a.predicate != b.predicate || a.args.len() != b.args.len() {
        return None;
    }
    let mut s = Substitution::new();
    for (x, y) in a.args.iter().zip(&b.args) {
        if !unify_into(x, y, &mut s) {
            return None;
        }
    }
    Some(s)
}

pub(crate) fn unify_into(a: &Term, b: &Term, s: &mut Substitution) -> bool {
    let mut stack = vec![(a.clone(), b.clone())];
    while let Some((x, y)) = stack.pop() {
        let x = s.apply_term(&x);
        let y = s.apply_term(&y);
        if x == y {
            continue;
        }
        match (x, y) {
            (Term::Var(v), t) | (t, Term::Var(v)) => {
                if s.bind(v, t).is_err() {
                    return false;
                }
            }
            (Term::Func(f, xs), Term::Func(g, ys)) => {
                if f != g || xs.len() != ys.len() {
                    return false;
                }
                stack.extend(xs.into_iter().zip(ys));
            }
            _ => return false,
        }
    }
    true
}

/// One-way matching: extends `s` so that `pattern·s == target`.
///
/// Variables of `target` are treated as opaque symbols. On failure `s` may
/// hold partial bindings and should be discarded.
pub fn match_term(pattern: &Term, target: &Term, s: &mut Substitution) -> bool {
    match pattern {
        Term::Var(v) => match s.get(v) {
            Some(bound) => bound == target,
            None => {
                // Plain insert: matching never needs composition.
                s.bind_raw(v, target.clone());
                true
            }
        },
        Term::Const(c) => matches!(target, Term::Const(d) if c == d),
        Term::Func(f, xs) => match target {
            Term::Func(g, ys) if f == g && xs.len() == ys.len() => {
                xs.iter().zip(ys).all(|(x, y)| match_term(x, y, s))
            }
            _ => false,
        },
    }
}

pub fn match_atom(pattern: &Atom, target: &Atom, s: &mut Substitution) -> bool {
    pattern.predicate == target.predicate
        && pattern.args.len() == target.args.len()
        && pattern.args.iter().zip(&target.args).all(|(p, t)| match_term(p, t, s))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(n: &str) -> Term {
        Term::var(n)
    }
    fn c(n: &str) -> Term {
        Term::constant(n)
    }

    #[test]
    fn single_binding() {
        let s = unify_atoms(&Atom::new("P", vec![v("X")]), &Atom::new("P", vec![c("a")])).unwrap();
        assert_eq!(s, Substitution::from_pairs([("X", c("a"))]).unwrap());
    }

    #[test]
    fn clash_fails() {
        let a = Atom::new("P", vec![v("X"), v("X")]);
        let b = Atom::new("P", vec![c("a"), c("b")]);
        assert!(unify_atoms(&a, &b).is_none());
    }

    #[test]
    fn occurs_check_fails() {
        assert!(unify_terms(&v("X"), &Term::func("f", vec![v("X")])).is_none());
    }

    #[test]
    fn chained_variables_resolve() {
        let a = Term::func("g", vec![v("X"), v("Y"), v("X")]);
        let b = Term::func("g", vec![v("Y"), v("Z"), c("a")]);
        let s = unify_terms(&a, &b).unwrap();
        assert_eq!(s.apply_term(&a), s.apply_term(&b));
        assert_eq!(s.apply_term(&a), Term::func("g", vec![c("a"), c("a"), c("a")]));
    }

    #[test]
    fn predicate_mismatch_fails() {
        assert!(unify_atoms(&Atom::new("P", vec![v("X")]), &Atom::new("Q", vec![v("X")])).is_none());
        assert!(unify_atoms(&Atom::new("P", vec![v("X")]), &Atom::new("P", vec![v("X"), v("Y")])).is_none());
    }

    #[test]
    fn matching_is_one_way() {
        let mut s = Substitution::new();
        assert!(match_atom(&Atom::new("P", vec![v("X")]), &Atom::new("P", vec![v("Y")]), &mut s));
        let mut s = Substitution::new();
        assert!(!match_atom(&Atom::new("P", vec![c("a")]), &Atom::new("P", vec![v("Y")]), &mut s));
        let mut s = Substitution::new();
        let p = Atom::new("R", vec![v("X"), v("X")]);
        assert!(!match_atom(&p, &Atom::ground("R", &["a", "b"]), &mut s));
    }
}
