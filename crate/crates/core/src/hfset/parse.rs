//! Set-literal notation.
//!
//! ```text
//! set  := '{' (elem (',' elem)*)? '}' | '∅'
//! elem := set | identifier
//! ```
//!
//! Whitespace between tokens is ignored.

use thiserror::Error;

use super::{is_label_continue, is_label_start, Atom, HfSet};

pub const EMPTY_SET_CHAR: char = '∅';

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("parse error at byte {offset}: expected {expected}")]
pub struct ParseError {
    pub offset: usize,
    pub expected: String,
}

impl ParseError {
    pub(crate) fn new(offset: usize, expected: impl Into<String>) -> Self {
        ParseError {
            offset,
            expected: expected.into(),
        }
    }
}

/// Byte cursor shared by the literal parser and the expression evaluator.
pub(crate) struct Cursor<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Cursor<'a> {
    pub(crate) fn new(src: &'a str) -> Self {
        Cursor { src, pos: 0 }
    }

    pub(crate) fn pos(&self) -> usize {
        self.pos
    }

    pub(crate) fn skip_ws(&mut self) {
        let rest = &self.src[self.pos..];
        self.pos += rest.len() - rest.trim_start().len();
    }

    /// Next non-whitespace character, without consuming it.
    pub(crate) fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.src[self.pos..].chars().next()
    }

    pub(crate) fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    pub(crate) fn expect(&mut self, c: char, what: &str) -> Result<(), ParseError> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.error(what))
        }
    }

    pub(crate) fn error(&mut self, expected: &str) -> ParseError {
        self.skip_ws();
        let found = match self.src[self.pos..].chars().next() {
            Some(c) => format!("{expected}, found {c:?}"),
            None => format!("{expected}, found end of input"),
        };
        ParseError::new(self.pos, found)
    }

    pub(crate) fn identifier(&mut self) -> Option<&'a str> {
        match self.peek() {
            Some(c) if is_label_start(c) => {}
            _ => return None,
        }
        let start = self.pos;
        let rest = &self.src[start..];
        let len = rest
            .char_indices()
            .find(|&(_, c)| !is_label_continue(c))
            .map_or(rest.len(), |(i, _)| i);
        self.pos += len;
        Some(&self.src[start..start + len])
    }

    pub(crate) fn number(&mut self) -> Option<&'a str> {
        match self.peek() {
            Some(c) if c.is_ascii_digit() => {}
            _ => return None,
        }
        let start = self.pos;
        let rest = &self.src[start..];
        let len = rest
            .find(|c: char| !c.is_ascii_digit())
            .unwrap_or(rest.len());
        self.pos += len;
        Some(&self.src[start..start + len])
    }

    pub(crate) fn finish(&mut self) -> Result<(), ParseError> {
        match self.peek() {
            None => Ok(()),
            Some(_) => Err(self.error("end of input")),
        }
    }
}

pub fn parse_set(text: &str) -> Result<HfSet, ParseError> {
    let mut cur = Cursor::new(text);
    let set = parse_braced(&mut cur)?;
    cur.finish()?;
    Ok(set)
}

fn parse_braced(cur: &mut Cursor<'_>) -> Result<HfSet, ParseError> {
    if cur.eat(EMPTY_SET_CHAR) {
        return Ok(HfSet::empty());
    }
    cur.expect('{', "'{' or '∅'")?;
    let mut children = Vec::new();
    if cur.eat('}') {
        return Ok(HfSet::empty());
    }
    loop {
        children.push(parse_elem(cur)?);
        if cur.eat('}') {
            break;
        }
        cur.expect(',', "',' or '}'")?;
    }
    Ok(HfSet::set_of(children))
}

fn parse_elem(cur: &mut Cursor<'_>) -> Result<HfSet, ParseError> {
    if let Some(label) = cur.identifier() {
        // The cursor only yields well-formed labels.
        return Ok(HfSet::Atom(
            Atom::new(label).expect("lexer produced a valid label"),
        ));
    }
    match cur.peek() {
        Some('{') | Some(EMPTY_SET_CHAR) => parse_braced(cur),
        _ => Err(cur.error("set or identifier")),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn literals() {
        assert_eq!(parse_set("{}").unwrap(), HfSet::empty());
        assert_eq!(parse_set("∅").unwrap(), HfSet::empty());
        assert_eq!(parse_set(" { ∅ , {} } ").unwrap().cardinality().unwrap(), 1);
        let c2 = parse_set("{x1,{x1}}").unwrap();
        assert_eq!(parse_set("{{x1},x1}").unwrap(), c2);
        assert_eq!(c2.to_string(), "{x1,{x1}}");
    }

    #[test]
    fn errors_carry_offsets() {
        let e = parse_set("{x1,").unwrap_err();
        assert_eq!(e.offset, 4);
        assert!(e.expected.contains("set or identifier"), "{e}");

        let e = parse_set("{x1 x2}").unwrap_err();
        assert_eq!(e.offset, 4);
        assert!(e.expected.starts_with("',' or '}'"));

        let e = parse_set("x1").unwrap_err();
        assert_eq!(e.offset, 0);

        let e = parse_set("{} {}").unwrap_err();
        assert_eq!(e.offset, 3);

        assert!(parse_set("{1}").is_err());
        assert!(parse_set("{,}").is_err());
    }

    #[test]
    fn unicode_offsets_are_bytes() {
        let e = parse_set("{∅,}").unwrap_err();
        assert_eq!(e.offset, 5);
    }
}
