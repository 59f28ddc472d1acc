use crate::diagnostic::{ErrorClass, ParseDiagnostic, Position};
use crate::logic::{Atom, Formula, Term};

use super::lexer::{check_parens, lex_line, Tok, Token};
use super::signature::{SignatureTable, SymbolKind};
use super::Dialect;

/// A parsed knowledge base together with its (optional) query.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FolProgram {
    pub premises: Vec<Formula>,
    pub query: Option<Formula>,
    pub signature: SignatureTable,
}

/// Parses a whole program text: one formula per line, `#` comments, the
/// query line prefixed with `?`.
pub fn parse_fol(text: &str, dialect: Dialect) -> Result<FolProgram, ParseDiagnostic> {
    let mut signature = SignatureTable::new();
    let mut premises = Vec::new();
    let mut query: Option<(Formula, Position)> = None;

    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let Some(start) = raw.find(|c: char| !c.is_whitespace()) else {
            continue;
        };
        let body = &raw[start..];
        if body.starts_with('#') {
            continue;
        }
        let first_column = raw[..start].chars().count() + 1;
        let (is_query, body, first_column) = match body.strip_prefix('?') {
            Some(rest) => (true, rest, first_column + 1),
            None => (false, body, first_column),
        };
        let at = Position::new(line, first_column);
        let formula = parse_line(body, line, first_column, dialect, &mut signature)?;
        let Some(formula) = formula else {
            if is_query {
                return Err(ParseDiagnostic::new(ErrorClass::UnknownToken, at, "empty query"));
            }
            continue;
        };
        if is_query {
            if let Some((_, first)) = &query {
                return Err(ParseDiagnostic::new(
                    ErrorClass::UnknownToken,
                    at,
                    format!("second query line (first at {first})"),
                ));
            }
            if let Some(v) = formula.free_vars().into_iter().next() {
                return Err(ParseDiagnostic::new(
                    ErrorClass::UnboundVariable,
                    at,
                    format!("query mentions unbound variable `{v}`"),
                ));
            }
            query = Some((formula, at));
        } else {
            premises.push(formula);
        }
    }

    if premises.is_empty() && query.is_none() {
        return Err(ParseDiagnostic::new(ErrorClass::UnknownToken, Position::new(1, 1), "empty program"));
    }
    Ok(FolProgram { premises, query: query.map(|(f, _)| f), signature })
}

/// Parses a single formula.
pub fn parse_formula(text: &str, dialect: Dialect) -> Result<Formula, ParseDiagnostic> {
    let mut signature = SignatureTable::new();
    parse_line(text, 1, 1, dialect, &mut signature)?
        .ok_or_else(|| ParseDiagnostic::new(ErrorClass::UnknownToken, Position::new(1, 1), "empty formula"))
}

fn parse_line(
    text: &str,
    line: usize,
    first_column: usize,
    dialect: Dialect,
    signature: &mut SignatureTable,
) -> Result<Option<Formula>, ParseDiagnostic> {
    let tokens = lex_line(text, line, first_column, dialect)?;
    if tokens.is_empty() {
        return Ok(None);
    }
    check_parens(&tokens)?;
    let end = Position::new(line, first_column + text.chars().count());
    let mut p = Parser { tokens: &tokens, next: 0, dialect, scope: Vec::new(), signature, end };
    let f = p.iff()?;
    if let Some(t) = p.peek() {
        return Err(p.unexpected(t));
    }
    Ok(Some(f))
}

struct Parser<'a> {
    tokens: &'a [Token],
    next: usize,
    dialect: Dialect,
    scope: Vec<String>,
    signature: &'a mut SignatureTable,
    end: Position,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.next)
    }

    fn peek_tok(&self) -> Option<&Tok> {
        self.peek().map(|t| &t.tok)
    }

    fn bump(&mut self) -> Option<Token> {
        let t = self.tokens.get(self.next).cloned();
        self.next += 1;
        t
    }

    fn eat(&mut self, tok: &Tok) -> bool {
        if self.peek_tok() == Some(tok) {
            self.next += 1;
            true
        } else {
            false
        }
    }

    fn unexpected(&self, t: &Token) -> ParseDiagnostic {
        ParseDiagnostic::new(ErrorClass::UnknownToken, t.pos, format!("unexpected {}", t.tok.describe()))
    }

    fn unexpected_end(&self, wanted: &str) -> ParseDiagnostic {
        ParseDiagnostic::new(ErrorClass::UnknownToken, self.end, format!("expected {wanted} but the line ended"))
    }

    fn expect(&mut self, tok: Tok, wanted: &str) -> Result<(), ParseDiagnostic> {
        match self.bump() {
            Some(t) if t.tok == tok => Ok(()),
            Some(t) => Err(self.unexpected(&t)),
            None => Err(self.unexpected_end(wanted)),
        }
    }

    fn iff(&mut self) -> Result<Formula, ParseDiagnostic> {
        let mut left = self.implication()?;
        while self.eat(&Tok::Iff) {
            let right = self.implication()?;
            left = Formula::iff(left, right);
        }
        Ok(left)
    }

    fn implication(&mut self) -> Result<Formula, ParseDiagnostic> {
        let left = self.disjunction()?;
        if self.eat(&Tok::Implies) {
            let right = self.implication()?;
            return Ok(Formula::implies(left, right));
        }
        Ok(left)
    }

    fn disjunction(&mut self) -> Result<Formula, ParseDiagnostic> {
        let mut left = self.conjunction()?;
        while self.eat(&Tok::Or) {
            let right = self.conjunction()?;
            left = Formula::or(left, right);
        }
        Ok(left)
    }

    fn conjunction(&mut self) -> Result<Formula, ParseDiagnostic> {
        let mut left = self.unary()?;
        while self.eat(&Tok::And) {
            let right = self.unary()?;
            left = Formula::and(left, right);
        }
        Ok(left)
    }

    fn unary(&mut self) -> Result<Formula, ParseDiagnostic> {
        let Some(t) = self.bump() else {
            return Err(self.unexpected_end("a formula"));
        };
        match t.tok {
            Tok::Not => Ok(Formula::not(self.unary()?)),
            Tok::Forall | Tok::Exists => self.quantified(t),
            Tok::LParen => {
                let f = self.iff()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(f)
            }
            Tok::Ident(name) => self.atom(name, t.pos).map(Formula::Atom),
            _ => Err(self.unexpected(&t)),
        }
    }

    fn quantified(&mut self, quantifier: Token) -> Result<Formula, ParseDiagnostic> {
        let var = match self.bump() {
            Some(Token { tok: Tok::Ident(v), pos }) => {
                if self.scope.contains(&v) {
                    return Err(ParseDiagnostic::new(
                        ErrorClass::UnboundVariable,
                        pos,
                        format!("variable `{v}` is already bound by an enclosing quantifier"),
                    ));
                }
                v
            }
            Some(t) => return Err(self.unexpected(&t)),
            None => return Err(self.unexpected_end("a quantified variable")),
        };
        let has_dot = self.eat(&Tok::Dot);
        if self.dialect == Dialect::AsciiFol && !has_dot {
            return Err(match self.peek() {
                Some(t) => ParseDiagnostic::new(
                    ErrorClass::UnknownToken,
                    t.pos,
                    format!("expected `.` after quantified variable, found {}", t.tok.describe()),
                ),
                None => self.unexpected_end("`.`"),
            });
        }
        self.scope.push(var.clone());
        let body = self.iff();
        self.scope.pop();
        let body = body?;
        Ok(match quantifier.tok {
            Tok::Forall => Formula::forall(var, body),
            _ => Formula::exists(var, body),
        })
    }

    fn atom(&mut self, predicate: String, at: Position) -> Result<Atom, ParseDiagnostic> {
        let args = if self.eat(&Tok::LParen) { self.arguments()? } else { Vec::new() };
        self.signature.record(&predicate, SymbolKind::Predicate, args.len(), at)?;
        Ok(Atom::new(predicate, args))
    }

    fn arguments(&mut self) -> Result<Vec<Term>, ParseDiagnostic> {
        let mut args = vec![self.term()?];
        loop {
            match self.bump() {
                Some(Token { tok: Tok::Comma, .. }) => args.push(self.term()?),
                Some(Token { tok: Tok::RParen, .. }) => return Ok(args),
                Some(t) => return Err(self.unexpected(&t)),
                None => return Err(self.unexpected_end("`,` or `)`")),
            }
        }
    }

    fn term(&mut self) -> Result<Term, ParseDiagnostic> {
        match self.bump() {
            Some(Token { tok: Tok::Ident(name), pos }) => {
                if self.eat(&Tok::LParen) {
                    let args = self.arguments()?;
                    self.signature.record(&name, SymbolKind::Function, args.len(), pos)?;
                    return Ok(Term::Func(name, args));
                }
                if self.scope.contains(&name) || name.starts_with(|c: char| c.is_uppercase()) {
                    Ok(Term::Var(name))
                } else {
                    Ok(Term::Const(name))
                }
            }
            Some(t) => Err(self.unexpected(&t)),
            None => Err(self.unexpected_end("a term")),
        }
    }
}
