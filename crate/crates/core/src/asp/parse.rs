use crate::diagnostic::{ErrorClass, ParseDiagnostic, Position};
use crate::fol::{SignatureTable, SymbolKind};
use crate::logic::{Atom, Term};
use crate::lp_lexer::{check_parens, lex, LpTok, LpToken};

use super::{AspLiteral, AspProgram, AspRule};

/// Parses an ASP program with an optional `? literal` query line.
pub fn parse_asp(text: &str) -> Result<AspProgram, ParseDiagnostic> {
    let tokens = lex(text, '%')?;
    if tokens.is_empty() {
        return Err(ParseDiagnostic::new(ErrorClass::UnknownToken, Position::new(1, 1), "empty program"));
    }
    check_parens(&tokens)?;
    let mut p = Parser { tokens: &tokens, next: 0, signature: SignatureTable::new() };
    let mut program = AspProgram { rules: Vec::new(), query: None };
    let mut query_at: Option<Position> = None;

    while let Some(t) = p.peek().cloned() {
        if t.tok == LpTok::Question {
            p.next += 1;
            let lit = p.literal()?;
            if p.tokens[p.next - 1].pos.line != t.pos.line {
                return Err(ParseDiagnostic::new(ErrorClass::UnknownToken, t.pos, "the query must fit on one line"));
            }
            if matches!(p.peek(), Some(d) if d.tok == LpTok::Dot && d.pos.line == t.pos.line) {
                p.next += 1;
            }
            if let Some(n) = p.peek() {
                if n.pos.line == t.pos.line {
                    return Err(p.unexpected(n));
                }
            }
            if let Some(first) = query_at {
                return Err(ParseDiagnostic::new(
                    ErrorClass::UnknownToken,
                    t.pos,
                    format!("second query line (first at {first})"),
                ));
            }
            if let Some(v) = lit.atom.vars().into_iter().next() {
                return Err(ParseDiagnostic::new(
                    ErrorClass::UnboundVariable,
                    t.pos,
                    format!("query mentions unbound variable `{v}`"),
                ));
            }
            query_at = Some(t.pos);
            program.query = Some(lit);
            continue;
        }
        let rule = p.rule()?;
        if !rule.is_safe() {
            return Err(ParseDiagnostic::new(
                ErrorClass::UnsafeRule,
                t.pos,
                format!("`{rule}` has a variable that does not occur in a positive body literal"),
            ));
        }
        program.rules.push(rule);
    }
    Ok(program)
}

struct Parser<'a> {
    tokens: &'a [LpToken],
    next: usize,
    signature: SignatureTable,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&LpToken> {
        self.tokens.get(self.next)
    }

    fn bump(&mut self) -> Option<LpToken> {
        let t = self.tokens.get(self.next).cloned();
        self.next += 1;
        t
    }

    fn end_pos(&self) -> Position {
        self.tokens.last().map(|t| t.pos).unwrap_or(Position::new(1, 1))
    }

    fn unexpected(&self, t: &LpToken) -> ParseDiagnostic {
        ParseDiagnostic::new(ErrorClass::UnknownToken, t.pos, format!("unexpected {}", t.tok.describe()))
    }

    fn eof(&self, wanted: &str) -> ParseDiagnostic {
        ParseDiagnostic::new(ErrorClass::UnknownToken, self.end_pos(), format!("expected {wanted} but the program ended"))
    }

    fn rule(&mut self) -> Result<AspRule, ParseDiagnostic> {
        let head = match self.peek() {
            Some(t) if t.tok == LpTok::If => None,
            Some(t) if t.tok.is_keyword("not") => {
                return Err(ParseDiagnostic::new(
                    ErrorClass::UnknownToken,
                    t.pos,
                    "default negation cannot appear in a rule head",
                ));
            }
            _ => Some(self.literal()?),
        };
        let mut rule = AspRule { head, positive_body: Vec::new(), negated_body: Vec::new() };
        match self.bump() {
            Some(LpToken { tok: LpTok::Dot, .. }) => return Ok(rule),
            Some(LpToken { tok: LpTok::If, .. }) => {}
            Some(t) => {
                return Err(ParseDiagnostic::new(
                    ErrorClass::UnknownToken,
                    t.pos,
                    format!("expected `.` or `:-` but found {}", t.tok.describe()),
                ));
            }
            None => return Err(self.eof("`.`")),
        }
        loop {
            let negated = matches!(self.peek(), Some(t) if t.tok.is_keyword("not"));
            if negated {
                self.next += 1;
                if let Some(t) = self.peek() {
                    if t.tok.is_keyword("not") {
                        return Err(ParseDiagnostic::new(
                            ErrorClass::UnknownToken,
                            t.pos,
                            "double default negation is not supported",
                        ));
                    }
                }
                let lit = self.literal()?;
                rule.negated_body.push(lit);
            } else {
                let lit = self.literal()?;
                rule.positive_body.push(lit);
            }
            match self.bump() {
                Some(LpToken { tok: LpTok::Comma, .. }) => continue,
                Some(LpToken { tok: LpTok::Dot, .. }) => return Ok(rule),
                Some(t) => {
                    return Err(ParseDiagnostic::new(
                        ErrorClass::UnknownToken,
                        t.pos,
                        format!("expected `,` or `.` but found {}", t.tok.describe()),
                    ));
                }
                None => return Err(self.eof("`.`")),
            }
        }
    }

    fn literal(&mut self) -> Result<AspLiteral, ParseDiagnostic> {
        let mut strong = false;
        if let Some(t) = self.peek().cloned() {
            if t.tok == LpTok::Minus {
                self.next += 1;
                if matches!(self.peek(), Some(n) if n.tok.is_keyword("not")) {
                    return Err(ParseDiagnostic::new(
                        ErrorClass::NegationOrder,
                        t.pos,
                        "strong negation `-` cannot be applied to `not`",
                    ));
                }
                strong = true;
            }
        }
        Ok(AspLiteral { strong_negated: strong, atom: self.atom()? })
    }

    fn atom(&mut self) -> Result<Atom, ParseDiagnostic> {
        let (name, at) = match self.bump() {
            Some(LpToken { tok: LpTok::Ident(n), pos }) if n != "not" => (n, pos),
            Some(t @ LpToken { tok: LpTok::Var(_), .. }) => {
                return Err(ParseDiagnostic::new(
                    ErrorClass::UnknownToken,
                    t.pos,
                    format!("predicate {} must start with a lowercase letter", t.tok.describe()),
                ));
            }
            Some(t) => return Err(self.unexpected(&t)),
            None => return Err(self.eof("an atom")),
        };
        let mut args = Vec::new();
        if matches!(self.peek(), Some(t) if t.tok == LpTok::LParen) {
            self.next += 1;
            loop {
                match self.bump() {
                    Some(LpToken { tok: LpTok::Ident(c), .. }) => args.push(Term::Const(c)),
                    Some(LpToken { tok: LpTok::Var(v), .. }) => args.push(Term::Var(v)),
                    Some(t) => return Err(self.unexpected(&t)),
                    None => return Err(self.eof("a term")),
                }
                match self.bump() {
                    Some(LpToken { tok: LpTok::Comma, .. }) => continue,
                    Some(LpToken { tok: LpTok::RParen, .. }) => break,
                    Some(t) if t.tok == LpTok::LParen => {
                        return Err(ParseDiagnostic::new(
                            ErrorClass::UnknownToken,
                            t.pos,
                            "function terms are not supported",
                        ));
                    }
                    Some(t) => return Err(self.unexpected(&t)),
                    None => return Err(self.eof("`)`")),
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
    fn two_rules() {
        let p = parse_asp("p1(wren). -p2(wren) :- not p3(wren).").unwrap();
        assert_eq!(p.rules.len(), 2);
        assert_eq!(p.rules[1].to_string(), "-p2(wren) :- not p3(wren).");
        assert!(p.rules[1].head.as_ref().unwrap().strong_negated);
    }

    #[test]
    fn strong_before_default() {
        let err = parse_asp("-not p1(wren).").unwrap_err();
        assert_eq!(err.class, ErrorClass::NegationOrder);
        assert_eq!(err.position, Position::new(1, 1));
        assert_eq!(parse_asp("q(a) :- r(a), -not p1(a).").unwrap_err().class, ErrorClass::NegationOrder);
        assert!(parse_asp("q(a) :- r(a), not -p1(a).").is_ok());
    }

    #[test]
    fn unsafe_rule() {
        assert_eq!(parse_asp("q(X) :- not r(X).").unwrap_err().class, ErrorClass::UnsafeRule);
        assert_eq!(parse_asp("q(X).").unwrap_err().class, ErrorClass::UnsafeRule);
        assert!(parse_asp("q(X) :- p(X), not r(X).").is_ok());
    }

    #[test]
    fn constraints_and_query() {
        let p = parse_asp("p(a).\n:- p(a), not q(a).\n% note\n? -q(a)").unwrap();
        assert_eq!(p.rules[1].head, None);
        assert_eq!(p.rules[1].to_string(), ":- p(a), not q(a).");
        assert_eq!(p.query, Some(AspLiteral::neg(Atom::ground("q", &["a"]))));
    }

    #[test]
    fn query_with_trailing_dot() {
        let p = parse_asp("p(a).\n? p(a).").unwrap();
        assert!(p.query.is_some());
    }

    #[test]
    fn errors() {
        assert_eq!(parse_asp("").unwrap_err().class, ErrorClass::UnknownToken);
        assert_eq!(parse_asp("p(a)").unwrap_err().class, ErrorClass::UnknownToken);
        assert_eq!(parse_asp("p(a.").unwrap_err().class, ErrorClass::UnbalancedParens);
        assert_eq!(parse_asp("p(a). p(a,b).").unwrap_err().class, ErrorClass::ArityConflict);
        assert_eq!(parse_asp("not p(a).").unwrap_err().class, ErrorClass::UnknownToken);
        assert_eq!(parse_asp("p(a).\n? p(X)").unwrap_err().class, ErrorClass::UnboundVariable);
        assert_eq!(parse_asp("p(a) :- X = a.").unwrap_err().class, ErrorClass::ReservedIdentifier);
    }
}
