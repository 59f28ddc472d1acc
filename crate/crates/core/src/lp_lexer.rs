//! Tokenizer shared by the chain-rule and ASP parsers.

use crate::diagnostic::{is_reserved_identifier, ErrorClass, ParseDiagnostic, Position};

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) enum LpTok {
    /// Lowercase-initial or numeric identifier: predicate, constant or keyword.
    Ident(String),
    /// Uppercase-initial identifier.
    Var(String),
    LParen,
    RParen,
    Comma,
    Dot,
    /// `:-`
    If,
    /// `=>`
    Arrow,
    Minus,
    Question,
}

impl LpTok {
    pub(crate) fn describe(&self) -> String {
        match self {
            LpTok::Ident(s) | LpTok::Var(s) => format!("`{s}`"),
            LpTok::LParen => "`(`".into(),
            LpTok::RParen => "`)`".into(),
            LpTok::Comma => "`,`".into(),
            LpTok::Dot => "`.`".into(),
            LpTok::If => "`:-`".into(),
            LpTok::Arrow => "`=>`".into(),
            LpTok::Minus => "`-`".into(),
            LpTok::Question => "`?`".into(),
        }
    }

    pub(crate) fn is_keyword(&self, kw: &str) -> bool {
        matches!(self, LpTok::Ident(s) if s == kw)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct LpToken {
    pub tok: LpTok,
    pub pos: Position,
}

/// Tokenizes `text`; `comment` starts a comment running to the end of its line.
pub(crate) fn lex(text: &str, comment: char) -> Result<Vec<LpToken>, ParseDiagnostic> {
    let mut out = Vec::new();
    for (idx, line) in text.lines().enumerate() {
        lex_line(line, idx + 1, comment, &mut out)?;
    }
    Ok(out)
}

fn lex_line(line: &str, line_no: usize, comment: char, out: &mut Vec<LpToken>) -> Result<(), ParseDiagnostic> {
    let chars: Vec<char> = line.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let pos = Position::new(line_no, i + 1);
        let next = chars.get(i + 1).copied();
        let simple = |tok| Some((tok, 1));
        let lexed = match c {
            _ if c == comment => break,
            _ if c.is_whitespace() => None,
            '(' => simple(LpTok::LParen),
            ')' => simple(LpTok::RParen),
            ',' => simple(LpTok::Comma),
            '.' => simple(LpTok::Dot),
            '-' => simple(LpTok::Minus),
            '?' => simple(LpTok::Question),
            ':' if next == Some('-') => Some((LpTok::If, 2)),
            '=' if next == Some('>') => Some((LpTok::Arrow, 2)),
            '=' | '!' => {
                return Err(ParseDiagnostic::new(ErrorClass::ReservedIdentifier, pos, "equality is not supported"));
            }
            _ if c.is_alphanumeric() || c == '_' => {
                let mut j = i;
                while j < chars.len() && (chars[j].is_alphanumeric() || chars[j] == '_') {
                    j += 1;
                }
                let word: String = chars[i..j].iter().collect();
                if is_reserved_identifier(&word) {
                    return Err(ParseDiagnostic::new(
                        ErrorClass::ReservedIdentifier,
                        pos,
                        format!("identifier `{word}` uses the reserved `__` prefix"),
                    ));
                }
                let tok = if c.is_uppercase() || c == '_' { LpTok::Var(word) } else { LpTok::Ident(word) };
                Some((tok, j - i))
            }
            _ => {
                return Err(ParseDiagnostic::new(ErrorClass::UnknownToken, pos, format!("unexpected character `{c}`")));
            }
        };
        match lexed {
            Some((tok, width)) => {
                out.push(LpToken { tok, pos });
                i += width;
            }
            None => i += 1,
        }
    }
    Ok(())
}

/// Reports the first stray `)` or the last unclosed `(` within each line.
pub(crate) fn check_parens(tokens: &[LpToken]) -> Result<(), ParseDiagnostic> {
    let mut open: Vec<Position> = Vec::new();
    let mut line = 0;
    for t in tokens {
        if t.pos.line != line {
            if let Some(pos) = open.pop() {
                return Err(ParseDiagnostic::new(ErrorClass::UnbalancedParens, pos, "unclosed `(`"));
            }
            line = t.pos.line;
        }
        match t.tok {
            LpTok::LParen => open.push(t.pos),
            LpTok::RParen => {
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
