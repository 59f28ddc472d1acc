use crate::diagnostic::{ErrorClass, ParseDiagnostic, Position};
use crate::fol::{SignatureTable, SymbolKind};
use crate::logic::{Atom, Term};
use crate::lp_lexer::{check_parens, lex, LpTok, LpToken};

use super::{ChainRule, FactBase, RuleProgram};

/// Parses a chain-rule program. Any diagnostic makes the program unusable.
pub fn parse_rules(text: &str) -> Result<RuleProgram, ParseDiagnostic> {
    let tokens = lex(text, '#')?;
    if tokens.is_empty() {
        return Err(ParseDiagnostic::new(ErrorClass::UnknownToken, Position::new(1, 1), "empty program"));
    }
    check_parens(&tokens)?;

    let mut program =
        RuleProgram { facts: FactBase::new(), rules: Vec::new(), query: None, signature: SignatureTable::new() };
    let mut query_at: Option<Position> = None;

    for line in tokens.chunk_by(|a, b| a.pos.line == b.pos.line) {
        let mut p = LineParser { tokens: line, next: 0, signature: &mut program.signature };
        let head = p.bump().expect("chunks are non-empty");
        match &head.tok {
            t if t.is_keyword("fact") => {
                let atom = p.atom()?;
                p.finish()?;
                if let Some(v) = atom.vars().into_iter().next() {
                    return Err(ParseDiagnostic::new(
                        ErrorClass::UnboundVariable,
                        head.pos,
                        format!("fact `{atom}` contains variable `{v}`"),
                    ));
                }
                program.facts.insert(atom);
            }
            t if t.is_keyword("rule") => {
                let mut body = vec![p.atom()?];
                loop {
                    match p.bump() {
                        Some(LpToken { tok: LpTok::Comma, .. }) => body.push(p.atom()?),
                        Some(LpToken { tok: LpTok::Arrow, .. }) => break,
                        Some(t) => return Err(p.unexpected(&t)),
                        None => return Err(p.unexpected_end(head.pos, "`,` or `=>`")),
                    }
                }
                let rule = ChainRule::new(body, p.atom()?);
                p.finish()?;
                if !rule.is_range_restricted() {
                    return Err(ParseDiagnostic::new(
                        ErrorClass::UnboundVariable,
                        head.pos,
                        format!("head `{}` uses a variable absent from the body", rule.head),
                    ));
                }
                program.rules.push(rule);
            }
            LpTok::Question => {
                let atom = p.atom()?;
                p.finish()?;
                if let Some(first) = query_at {
                    return Err(ParseDiagnostic::new(
                        ErrorClass::UnknownToken,
                        head.pos,
                        format!("second query line (first at {first})"),
                    ));
                }
                if let Some(v) = atom.vars().into_iter().next() {
                    return Err(ParseDiagnostic::new(
                        ErrorClass::UnboundVariable,
                        head.pos,
                        format!("query mentions unbound variable `{v}`"),
                    ));
                }
                query_at = Some(head.pos);
                program.query = Some(atom);
            }
            _ => {
                return Err(ParseDiagnostic::new(
                    ErrorClass::UnknownToken,
                    head.pos,
                    format!("expected `fact`, `rule` or `?`, found {}", head.tok.describe()),
                ));
            }
        }
    }
    Ok(program)
}

struct LineParser<'a> {
    tokens: &'a [LpToken],
    next: usize,
    signature: &'a mut SignatureTable,
}

impl LineParser<'_> {
    fn bump(&mut self) -> Option<LpToken> {
        let t = self.tokens.get(self.next).cloned();
        self.next += 1;
        t
    }

    fn peek(&self) -> Option<&LpToken> {
        self.tokens.get(self.next)
    }

    fn line_start(&self) -> Position {
        self.tokens[0].pos
    }

    fn unexpected(&self, t: &LpToken) -> ParseDiagnostic {
        if t.tok == LpTok::Minus || t.tok.is_keyword("not") {
            return ParseDiagnostic::new(ErrorClass::UnknownToken, t.pos, "negation is not supported in chain rules");
        }
        ParseDiagnostic::new(ErrorClass::UnknownToken, t.pos, format!("unexpected {}", t.tok.describe()))
    }

    fn unexpected_end(&self, at: Position, wanted: &str) -> ParseDiagnostic {
        ParseDiagnostic::new(ErrorClass::UnknownToken, at, format!("expected {wanted} but the line ended"))
    }

    /// Everything after a complete statement must be absent. A second
    /// statement keyword means two statements were run together.
    fn finish(&mut self) -> Result<(), ParseDiagnostic> {
        match self.peek() {
            None => Ok(()),
            Some(t) if t.tok.is_keyword("fact") || t.tok.is_keyword("rule") || t.tok == LpTok::Question => {
                Err(ParseDiagnostic::new(
                    ErrorClass::MissingLineBreak,
                    t.pos,
                    format!("{} starts a second statement on the same line", t.tok.describe()),
                ))
            }
            Some(t) => Err(self.unexpected(t)),
        }
    }

    fn atom(&mut self) -> Result<Atom, ParseDiagnostic> {
        let (name, at) = match self.bump() {
            Some(LpToken { tok: LpTok::Ident(n) | LpTok::Var(n), pos }) => (n, pos),
            Some(t) => return Err(self.unexpected(&t)),
            None => return Err(self.unexpected_end(self.line_start(), "an atom")),
        };
        let mut args = Vec::new();
        if matches!(self.peek(), Some(LpToken { tok: LpTok::LParen, .. })) {
            self.next += 1;
            loop {
                match self.bump() {
                    Some(LpToken { tok: LpTok::Ident(c), .. }) => args.push(Term::Const(c)),
                    Some(LpToken { tok: LpTok::Var(v), .. }) => args.push(Term::Var(v)),
                    Some(t) => return Err(self.unexpected(&t)),
                    None => return Err(self.unexpected_end(at, "a term")),
                }
                match self.bump() {
                    Some(LpToken { tok: LpTok::Comma, .. }) => continue,
                    Some(LpToken { tok: LpTok::RParen, .. }) => break,
                    Some(t) if t.tok == LpTok::LParen => {
                        return Err(ParseDiagnostic::new(
                            ErrorClass::UnknownToken,
                            t.pos,
                            "function terms are not supported in chain rules",
                        ));
                    }
                    Some(t) => return Err(self.unexpected(&t)),
                    None => return Err(self.unexpected_end(at, "`,` or `)`")),
                }
            }
        }
        self.signature.record(&name, SymbolKind::Predicate, args.len(), at)?;
        Ok(Atom::new(name, args))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tumpus_program() {
        let p = parse_rules("fact tumpus(tommi)\nrule tumpus(X) => wumpus(X)\n? wumpus(tommi)").unwrap();
        assert_eq!(p.facts.len(), 1);
        assert!(p.facts.contains(&Atom::ground("tumpus", &["tommi"])));
        assert_eq!(p.rules.len(), 1);
        assert_eq!(p.rules[0].to_string(), "rule tumpus(X) => wumpus(X)");
        assert_eq!(p.query, Some(Atom::ground("wumpus", &["tommi"])));
    }

    #[test]
    fn two_statements_on_one_line() {
        let err = parse_rules("fact a(x) rule a(X) => b(X)").unwrap_err();
        assert_eq!(err.class, ErrorClass::MissingLineBreak);
        assert_eq!(err.position, Position::new(1, 11));
    }

    #[test]
    fn two_rules_on_one_line() {
        let err = parse_rules("rule a(X) => b(X) rule b(X) => c(X)").unwrap_err();
        assert_eq!(err.class, ErrorClass::MissingLineBreak);
    }

    #[test]
    fn empty_program() {
        assert_eq!(parse_rules("").unwrap_err().class, ErrorClass::UnknownToken);
        assert_eq!(parse_rules("# only a comment\n").unwrap_err().class, ErrorClass::UnknownToken);
    }

    #[test]
    fn range_restriction() {
        let err = parse_rules("rule a(X) => b(Y)").unwrap_err();
        assert_eq!(err.class, ErrorClass::UnboundVariable);
    }

    #[test]
    fn non_ground_fact() {
        assert_eq!(parse_rules("fact a(X)").unwrap_err().class, ErrorClass::UnboundVariable);
    }

    #[test]
    fn arity_and_parens() {
        assert_eq!(parse_rules("fact a(b)\nfact a(b,c)").unwrap_err().class, ErrorClass::ArityConflict);
        assert_eq!(parse_rules("fact a(b").unwrap_err().class, ErrorClass::UnbalancedParens);
    }

    #[test]
    fn negation_rejected() {
        let err = parse_rules("rule a(X), -b(X) => c(X)").unwrap_err();
        assert_eq!(err.class, ErrorClass::UnknownToken);
        assert!(err.message.contains("negation"));
    }

    #[test]
    fn unknown_statement() {
        assert_eq!(parse_rules("tumpus(tommi)").unwrap_err().class, ErrorClass::UnknownToken);
    }
}
