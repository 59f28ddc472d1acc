use std::fmt;

use crate::logic::Formula;

use super::parser::FolProgram;
use super::Dialect;

struct Symbols {
    not: &'static str,
    and: &'static str,
    or: &'static str,
    implies: &'static str,
    iff: &'static str,
    forall: &'static str,
    exists: &'static str,
    binder_end: &'static str,
}

const UNICODE: Symbols = Symbols {
    not: "¬",
    and: " ∧ ",
    or: " ∨ ",
    implies: " → ",
    iff: " ↔ ",
    forall: "∀",
    exists: "∃",
    binder_end: " ",
};

const ASCII: Symbols = Symbols {
    not: "-",
    and: " & ",
    or: " | ",
    implies: " -> ",
    iff: " <-> ",
    forall: "all ",
    exists: "exists ",
    binder_end: ". ",
};

/// Renders one formula; the output parses back to the same AST.
pub fn render_formula(f: &Formula, dialect: Dialect) -> String {
    let mut out = String::new();
    write_formula(&mut out, f, symbols(dialect));
    out
}

/// Renders formulas one per line.
pub fn render(fs: &[Formula], dialect: Dialect) -> String {
    fs.iter().map(|f| render_formula(f, dialect)).collect::<Vec<_>>().join("\n")
}

/// Renders premises followed by the `? ` query line.
pub fn render_program(program: &FolProgram, dialect: Dialect) -> String {
    let mut out = render(&program.premises, dialect);
    if let Some(q) = &program.query {
        if !out.is_empty() {
            out.push('\n');
        }
        out.push_str("? ");
        out.push_str(&render_formula(q, dialect));
    }
    out
}

fn symbols(dialect: Dialect) -> &'static Symbols {
    match dialect {
        Dialect::UnicodeFol => &UNICODE,
        Dialect::AsciiFol => &ASCII,
    }
}

/// Binary subformulas and anything whose scope runs to the right end
/// (quantifiers, possibly under negations) get parentheses as operands.
fn needs_parens(f: &Formula) -> bool {
    match f {
        Formula::Forall(..) | Formula::Exists(..) => true,
        Formula::Not(g) => needs_parens(g) && !g.is_binary(),
        g => g.is_binary(),
    }
}

fn write_operand(out: &mut String, f: &Formula, s: &Symbols) {
    if needs_parens(f) {
        out.push('(');
        write_formula(out, f, s);
        out.push(')');
    } else {
        write_formula(out, f, s);
    }
}

fn write_formula(out: &mut String, f: &Formula, s: &Symbols) {
    match f {
        Formula::Atom(a) => out.push_str(&a.to_string()),
        Formula::Not(g) => {
            out.push_str(s.not);
            if g.is_binary() {
                out.push('(');
                write_formula(out, g, s);
                out.push(')');
            } else {
                write_formula(out, g, s);
            }
        }
        Formula::And(a, b) => write_binary(out, a, s.and, b, s),
        Formula::Or(a, b) => write_binary(out, a, s.or, b, s),
        Formula::Implies(a, b) => write_binary(out, a, s.implies, b, s),
        Formula::Iff(a, b) => write_binary(out, a, s.iff, b, s),
        Formula::Forall(v, body) | Formula::Exists(v, body) => {
            out.push_str(if matches!(f, Formula::Forall(..)) { s.forall } else { s.exists });
            out.push_str(v);
            out.push_str(s.binder_end);
            if body.is_binary() {
                out.push('(');
                write_formula(out, body, s);
                out.push(')');
            } else {
                write_formula(out, body, s);
            }
        }
    }
}

fn write_binary(out: &mut String, a: &Formula, op: &str, b: &Formula, s: &Symbols) {
    write_operand(out, a, s);
    out.push_str(op);
    write_operand(out, b, s);
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render_formula(self, Dialect::UnicodeFol))
    }
}
