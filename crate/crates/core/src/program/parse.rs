//! Text front end.
//!
//! ```text
//! program   := { statement }
//! statement := rule "."
//! rule      := atom [ ":-" body ] | ":-" body
//! body      := literal { "," literal }
//! literal   := atom | "not" atom
//! atom      := [a-z][A-Za-z0-9_]*'*
//! ```
//!
//! Whitespace and `%` comments (to end of line) are ignored.

use crate::error::ProgramError;

use super::{AtomSet, Program, ProgramBuilder, RESERVED_PREFIX};

#[derive(Clone, Debug, PartialEq, Eq)]
enum Token {
    Ident(String),
    Not,
    If,
    Comma,
    Dot,
}

#[derive(Clone, Debug)]
struct Spanned {
    token: Token,
    line: usize,
    column: usize,
}

fn syntax(line: usize, column: usize, message: impl Into<String>) -> ProgramError {
    ProgramError::Syntax {
        line,
        column,
        message: message.into(),
    }
}

fn lex(text: &str) -> Result<Vec<Spanned>, ProgramError> {
    let mut out = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let chars: Vec<char> = line.chars().collect();
        let mut i = 0;
        while i < chars.len() {
            let c = chars[i];
            let (line, column) = (lineno + 1, i + 1);
            let push = |out: &mut Vec<Spanned>, token| out.push(Spanned { token, line, column });
            match c {
                '%' => break,
                c if c.is_whitespace() => i += 1,
                ',' => {
                    push(&mut out, Token::Comma);
                    i += 1;
                }
                '.' => {
                    push(&mut out, Token::Dot);
                    i += 1;
                }
                ':' if chars.get(i + 1) == Some(&'-') => {
                    push(&mut out, Token::If);
                    i += 2;
                }
                c if c.is_ascii_alphabetic() || c == '_' => {
                    let start = i;
                    while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                        i += 1;
                    }
                    while i < chars.len() && chars[i] == '\'' {
                        i += 1;
                    }
                    let word: String = chars[start..i].iter().collect();
                    if word == "not" {
                        push(&mut out, Token::Not);
                    } else if word.starts_with(RESERVED_PREFIX) {
                        return Err(ProgramError::ReservedAtom { name: word, line, column });
                    } else if !c.is_ascii_lowercase() {
                        return Err(syntax(line, column, format!("atom `{word}` must start with a lowercase letter")));
                    } else {
                        push(&mut out, Token::Ident(word));
                    }
                }
                other => return Err(syntax(line, column, format!("unexpected character `{other}`"))),
            }
        }
    }
    Ok(out)
}

struct Parser<'a> {
    tokens: &'a [Spanned],
    pos: usize,
    end: (usize, usize),
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Spanned> {
        self.tokens.get(self.pos)
    }

    fn here(&self) -> (usize, usize) {
        self.peek().map_or(self.end, |t| (t.line, t.column))
    }

    fn expect_atom(&mut self) -> Result<String, ProgramError> {
        match self.peek() {
            Some(Spanned { token: Token::Ident(name), .. }) => {
                let name = name.clone();
                self.pos += 1;
                Ok(name)
            }
            _ => {
                let (l, c) = self.here();
                Err(syntax(l, c, "expected an atom"))
            }
        }
    }

    fn body(&mut self) -> Result<(Vec<String>, Vec<String>), ProgramError> {
        let (mut pos, mut neg) = (Vec::new(), Vec::new());
        loop {
            if matches!(self.peek(), Some(Spanned { token: Token::Not, .. })) {
                self.pos += 1;
                neg.push(self.expect_atom()?);
            } else {
                pos.push(self.expect_atom()?);
            }
            match self.peek().map(|t| &t.token) {
                Some(Token::Comma) => self.pos += 1,
                Some(Token::Dot) => return Ok((pos, neg)),
                _ => {
                    let (l, c) = self.here();
                    return Err(syntax(l, c, "expected `,` or `.`"));
                }
            }
        }
    }

    fn expect_dot(&mut self) -> Result<(), ProgramError> {
        match self.peek().map(|t| &t.token) {
            Some(Token::Dot) => {
                self.pos += 1;
                Ok(())
            }
            _ => {
                let (l, c) = self.here();
                Err(syntax(l, c, "expected `.`"))
            }
        }
    }
}

/// Parses a ground normal program.
///
/// Headless constraints `:- B.` become `__c<k> :- B, not __c<k>` with a fresh
/// reserved atom; structurally duplicate rules are dropped; atom and rule ids
/// follow first occurrence.
pub fn parse_program(text: &str) -> Result<Program, ProgramError> {
    let tokens = lex(text)?;
    let lines = text.lines().count().max(1);
    let last_col = text.lines().last().map_or(1, |l| l.chars().count() + 1);
    let mut parser = Parser {
        tokens: &tokens,
        pos: 0,
        end: (lines, last_col),
    };
    let mut builder = ProgramBuilder::default();
    while parser.peek().is_some() {
        let head = match parser.peek().map(|t| &t.token) {
            Some(Token::If) => None,
            _ => Some(parser.expect_atom()?),
        };
        let (pos, neg) = match parser.peek().map(|t| &t.token) {
            Some(Token::If) => {
                parser.pos += 1;
                parser.body()?
            }
            _ if head.is_some() => (Vec::new(), Vec::new()),
            _ => unreachable!(),
        };
        parser.expect_dot()?;
        let ids = |builder: &mut ProgramBuilder, names: &[String]| -> AtomSet {
            names.iter().map(|n| builder.intern_unchecked(n)).collect()
        };
        match head {
            Some(h) => {
                let head = builder.intern_unchecked(&h);
                let pbody = ids(&mut builder, &pos);
                let nbody = ids(&mut builder, &neg);
                builder.push(head, pbody, nbody);
            }
            None => {
                let pbody = ids(&mut builder, &pos);
                let nbody = ids(&mut builder, &neg);
                builder.push_constraint(pbody, nbody);
            }
        }
    }
    Ok(builder.build())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn err_at(text: &str) -> (usize, usize) {
        match parse_program(text) {
            Err(ProgramError::Syntax { line, column, .. }) => (line, column),
            other => panic!("expected a syntax error, got {other:?}"),
        }
    }

    #[test]
    fn comments_and_whitespace() {
        let p = parse_program("% a comment\n a :- b, % trailing\n not c .\n").unwrap();
        assert_eq!(p.len(), 1);
        assert_eq!(p.rules()[0].nbody.len(), 1);
    }

    #[test]
    fn syntax_errors_carry_positions() {
        assert_eq!(err_at("a :- b"), (1, 7));
        assert_eq!(err_at("a.\nb :- , c."), (2, 6));
        assert_eq!(err_at("a :- B."), (1, 6));
        assert_eq!(err_at("a ; b."), (1, 3));
        assert_eq!(err_at(":- ."), (1, 4));
    }

    #[test]
    fn reserved_prefix_is_rejected() {
        match parse_program("a :- __c3.") {
            Err(ProgramError::ReservedAtom { name, line, column }) => {
                assert_eq!((name.as_str(), line, column), ("__c3", 1, 6));
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn overlapping_bodies_are_legal() {
        let p = parse_program("a :- b, not b.").unwrap();
        let r = &p.rules()[0];
        assert_eq!(r.pbody, r.nbody);
    }

    #[test]
    fn ids_follow_first_occurrence() {
        let p = parse_program("c :- b. a :- not c.").unwrap();
        let names: Vec<_> = p.atom_ids().map(|a| p.atom_name(a)).collect();
        assert_eq!(names, ["c", "b", "a"]);
    }

    #[test]
    fn empty_input() {
        assert!(parse_program("").unwrap().is_empty());
        assert!(parse_program("% nothing\n").unwrap().is_empty());
    }
}
