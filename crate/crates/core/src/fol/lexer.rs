use crate::diagnostic::{is_reserved_identifier, ErrorClass, ParseDiagnostic, Position};

use super::Dialect;

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) enum Tok {
    Ident(String),
    LParen,
    RParen,
    Comma,
    Dot,
    Not,
    And,
    Or,
    Implies,
    Iff,
    Forall,
    Exists,
}

impl Tok {
    pub(crate) fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => format!("`{s}`"),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
            Tok::Comma => "`,`".into(),
            Tok::Dot => "`.`".into(),
            Tok::Not => "negation".into(),
            Tok::And => "conjunction".into(),
            Tok::Or => "disjunction".into(),
            Tok::Implies => "implication".into(),
            Tok::Iff => "biconditional".into(),
            Tok::Forall => "universal quantifier".into(),
            Tok::Exists => "existential quantifier".into(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct Token {
    pub tok: Tok,
    pub pos: Position,
}

/// Lexes one line. `first_column` is the 1-based column of `text[0]`.
/// A `#` ends the line.
pub(crate) fn lex_line(
    text: &str,
    line: usize,
    first_column: usize,
    dialect: Dialect,
) -> Result<Vec<Token>, ParseDiagnostic> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let pos = Position::new(line, first_column + i);
        let next = chars.get(i + 1).copied();
        let mut push = |tok, width: usize| {
            out.push(Token { tok, pos });
            width
        };
        let width = match c {
            _ if c.is_whitespace() => 1,
            '#' => break,
            '(' => push(Tok::LParen, 1),
            ')' => push(Tok::RParen, 1),
            ',' => push(Tok::Comma, 1),
            '.' => push(Tok::Dot, 1),
            '&' => push(Tok::And, 1),
            '|' => push(Tok::Or, 1),
            '-' if next == Some('>') => push(Tok::Implies, 2),
            '-' => push(Tok::Not, 1),
            '<' if next == Some('-') && chars.get(i + 2) == Some(&'>') => push(Tok::Iff, 3),
            '=' => return Err(equality(pos)),
            '!' if next == Some('=') => return Err(equality(pos)),
            '∀' | '∃' | '¬' | '∧' | '∨' | '→' | '↔' if dialect == Dialect::AsciiFol => {
                return Err(ParseDiagnostic::new(
                    ErrorClass::UnknownToken,
                    pos,
                    format!("symbol `{c}` is not part of the ASCII dialect"),
                ));
            }
            '∀' => push(Tok::Forall, 1),
            '∃' => push(Tok::Exists, 1),
            '¬' => push(Tok::Not, 1),
            '∧' => push(Tok::And, 1),
            '∨' => push(Tok::Or, 1),
            '→' => push(Tok::Implies, 1),
            '↔' => push(Tok::Iff, 1),
            _ if c.is_alphabetic() || c == '_' => {
                let start = i;
                let mut j = i;
                while j < chars.len() && (chars[j].is_alphanumeric() || chars[j] == '_') {
                    j += 1;
                }
                let word: String = chars[start..j].iter().collect();
                if is_reserved_identifier(&word) {
                    return Err(ParseDiagnostic::new(
                        ErrorClass::ReservedIdentifier,
                        pos,
                        format!("identifier `{word}` uses the reserved `__` prefix"),
                    ));
                }
                if c == '_' {
                    return Err(ParseDiagnostic::new(
                        ErrorClass::UnknownToken,
                        pos,
                        format!("identifier `{word}` must start with a letter"),
                    ));
                }
                let tok = match (dialect, word.as_str()) {
                    (Dialect::UnicodeFol, "forall") | (Dialect::AsciiFol, "all") => Tok::Forall,
                    (_, "exists") => Tok::Exists,
                    _ => Tok::Ident(word),
                };
                push(tok, j - start)
            }
            _ => {
                return Err(ParseDiagnostic::new(ErrorClass::UnknownToken, pos, format!("unexpected character `{c}`")));
            }
        };
        i += width;
    }
    Ok(out)
}

fn equality(pos: Position) -> ParseDiagnostic {
    ParseDiagnostic::new(ErrorClass::ReservedIdentifier, pos, "equality is not supported")
}

/// Reports the first stray `)` or the last unclosed `(`.
pub(crate) fn check_parens(tokens: &[Token]) -> Result<(), ParseDiagnostic> {
    let mut open = Vec::new();
    for t in tokens {
        match t.tok {
            Tok::LParen => open.push(t.pos),
            Tok::RParen => {
                if open.pop().is_none() {
                    return Err(ParseDiagnostic::new(ErrorClass::UnbalancedParens, t.pos, "unmatched `)`"));
                }
            }
            _ => {}
        }
    }
    match open.pop() {
        Some(pos) => Err(ParseDiagnostic::new(ErrorClass::UnbalancedParens, pos, "unclosed `(`")),
        None => Ok(()),
    }
}
