//! Reader for the N3 subset written by the layer serializer, which also
//! covers plain N-Triples and the usual Turtle abbreviations (`;`, `,`, `a`,
//! bare numbers and booleans).

use url::Url;

use super::term::{Term, Triple};
use crate::vocab::{self, PrefixMap};

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
#[error("parse error at line {line}: {reason}")]
pub struct ParseError {
    pub line: usize,
    pub reason: String,
}

/// Parses `text`; relative IRIs resolve against `base_iri` when given.
pub fn parse(text: &str, base_iri: Option<&str>) -> Result<Vec<Triple>, ParseError> {
    let mut out = Vec::new();
    parse_into(text, base_iri, &mut out)?;
    Ok(out)
}

/// Like [`parse`] but appends to `out` and returns the prefixes declared.
pub fn parse_into(
    text: &str,
    base_iri: Option<&str>,
    out: &mut Vec<Triple>,
) -> Result<PrefixMap, ParseError> {
    let mut parser = Parser {
        src: text,
        pos: 0,
        line: 1,
        prefixes: PrefixMap::new(),
        base: base_iri.and_then(|b| Url::parse(b).ok()),
        anon: 0,
    };
    parser.document(out)?;
    Ok(parser.prefixes)
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
    line: usize,
    prefixes: PrefixMap,
    base: Option<Url>,
    anon: usize,
}

impl<'a> Parser<'a> {
    fn err<T>(&self, reason: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError {
            line: self.line,
            reason: reason.into(),
        })
    }

    fn rest(&self) -> &'a str {
        &self.src[self.pos..]
    }

    fn peek(&self) -> Option<char> {
        self.rest().chars().next()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek()?;
        self.pos += c.len_utf8();
        if c == '\n' {
            self.line += 1;
        }
        Some(c)
    }

    fn skip_ws(&mut self) {
        while let Some(c) = self.peek() {
            if c.is_whitespace() {
                self.bump();
            } else if c == '#' {
                while let Some(c) = self.bump() {
                    if c == '\n' {
                        break;
                    }
                }
            } else {
                break;
            }
        }
    }

    fn expect(&mut self, c: char) -> Result<(), ParseError> {
        self.skip_ws();
        match self.peek() {
            Some(found) if found == c => {
                self.bump();
                Ok(())
            }
            Some(found) => self.err(format!("expected '{c}', found '{found}'")),
            None => self.err(format!("expected '{c}', found end of input")),
        }
    }

    fn keyword(&mut self, kw: &str, case_insensitive: bool) -> bool {
        let rest = self.rest();
        if rest.len() < kw.len() || !rest.is_char_boundary(kw.len()) {
            return false;
        }
        let head = &rest[..kw.len()];
        let matches = if case_insensitive {
            head.eq_ignore_ascii_case(kw)
        } else {
            head == kw
        };
        let boundary = rest[kw.len()..]
            .chars()
            .next()
            .is_none_or(|c| !(c.is_alphanumeric() || matches!(c, ':' | '_' | '-')));
        if matches && boundary {
            self.pos += kw.len();
            true
        } else {
            false
        }
    }

    fn document(&mut self, out: &mut Vec<Triple>) -> Result<(), ParseError> {
        loop {
            self.skip_ws();
            if self.peek().is_none() {
                return Ok(());
            }
            if self.keyword("@prefix", false) {
                self.prefix_decl()?;
                self.expect('.')?;
            } else if self.keyword("PREFIX", true) {
                self.prefix_decl()?;
            } else if self.keyword("@base", false) {
                self.base_decl()?;
                self.expect('.')?;
            } else if self.keyword("BASE", true) {
                self.base_decl()?;
            } else {
                self.triples(out)?;
                self.expect('.')?;
            }
        }
    }

    fn prefix_decl(&mut self) -> Result<(), ParseError> {
        self.skip_ws();
        let start = self.pos;
        while let Some(c) = self.peek() {
            if c == ':' {
                break;
            }
            if !(c.is_alphanumeric() || c == '_' || c == '-' || c == '.') {
                return self.err(format!("invalid prefix character '{c}'"));
            }
            self.bump();
        }
        let prefix = self.src[start..self.pos].to_string();
        self.expect(':')?;
        self.skip_ws();
        let ns = self.iriref()?;
        self.prefixes.insert(prefix, ns);
        Ok(())
    }

    fn base_decl(&mut self) -> Result<(), ParseError> {
        self.skip_ws();
        let iri = self.iriref()?;
        match Url::parse(&iri) {
            Ok(url) => {
                self.base = Some(url);
                Ok(())
            }
            Err(_) => self.err(format!("invalid base IRI <{iri}>")),
        }
    }

    fn triples(&mut self, out: &mut Vec<Triple>) -> Result<(), ParseError> {
        let subject = self.subject()?;
        loop {
            self.skip_ws();
            let predicate = self.verb()?;
            loop {
                let object = self.object()?;
                out.push(Triple::new(subject.clone(), predicate.clone(), object));
                self.skip_ws();
                if self.peek() == Some(',') {
                    self.bump();
                } else {
                    break;
                }
            }
            self.skip_ws();
            if self.peek() == Some(';') {
                while self.peek() == Some(';') {
                    self.bump();
                    self.skip_ws();
                }
                if self.peek() == Some('.') {
                    return Ok(());
                }
            } else {
                return Ok(());
            }
        }
    }

    fn subject(&mut self) -> Result<Term, ParseError> {
        self.skip_ws();
        match self.peek() {
            Some('<') => Ok(Term::iri(self.iriref_resolved()?)),
            Some('_') => self.blank(),
            Some('[') => self.anon(),
            Some('"') | Some('\'') => self.err("literal in subject position"),
            Some(_) => Ok(Term::iri(self.prefixed_name()?)),
            None => self.err("unexpected end of input"),
        }
    }

    fn verb(&mut self) -> Result<Term, ParseError> {
        self.skip_ws();
        match self.peek() {
            Some('<') => Ok(Term::iri(self.iriref_resolved()?)),
            Some('a') if self.rest()[1..].starts_with(|c: char| c.is_whitespace() || c == '<') => {
                self.bump();
                Ok(Term::iri(vocab::RDF_TYPE))
            }
            Some(_) => Ok(Term::iri(self.prefixed_name()?)),
            None => self.err("unexpected end of input"),
        }
    }

    fn object(&mut self) -> Result<Term, ParseError> {
        self.skip_ws();
        match self.peek() {
            Some('<') => Ok(Term::iri(self.iriref_resolved()?)),
            Some('_') => self.blank(),
            Some('[') => self.anon(),
            Some('"') | Some('\'') => self.literal(),
            Some(c) if c.is_ascii_digit() || c == '+' || c == '-' || c == '.' => self.number(),
            Some(_) => {
                if self.keyword("true", false) {
                    return Ok(Term::typed("true", vocab::XSD_BOOLEAN));
                }
                if self.keyword("false", false) {
                    return Ok(Term::typed("false", vocab::XSD_BOOLEAN));
                }
                Ok(Term::iri(self.prefixed_name()?))
            }
            None => self.err("unexpected end of input"),
        }
    }

    fn anon(&mut self) -> Result<Term, ParseError> {
        self.expect('[')?;
        self.expect(']')?;
        self.anon += 1;
        Ok(Term::blank(format!("anon{}", self.anon)))
    }

    fn blank(&mut self) -> Result<Term, ParseError> {
        if !self.rest().starts_with("_:") {
            return self.err("expected blank node label");
        }
        self.pos += 2;
        let start = self.pos;
        while let Some(c) = self.peek() {
            if c.is_alphanumeric() || c == '_' || c == '-' || c == '.' {
                self.bump();
            } else {
                break;
            }
        }
        // a trailing dot terminates the statement
        while self.pos > start && self.src[..self.pos].ends_with('.') {
            self.pos -= 1;
        }
        if self.pos == start {
            return self.err("empty blank node label");
        }
        Ok(Term::blank(&self.src[start..self.pos]))
    }

    fn iriref(&mut self) -> Result<String, ParseError> {
        self.expect('<')?;
        let mut iri = String::new();
        loop {
            match self.bump() {
                Some('>') => return Ok(iri),
                Some('\\') => iri.push(self.unicode_escape()?),
                Some(c) if c <= ' ' || matches!(c, '<' | '"' | '{' | '}' | '|' | '^' | '`') => {
                    return self.err(format!("invalid character {c:?} in IRI"));
                }
                Some(c) => iri.push(c),
                None => return self.err("unterminated IRI"),
            }
        }
    }

    fn iriref_resolved(&mut self) -> Result<String, ParseError> {
        let iri = self.iriref()?;
        if iri.contains(':') {
            return Ok(iri);
        }
        match &self.base {
            Some(base) => match base.join(&iri) {
                Ok(url) => Ok(url.to_string()),
                Err(e) => self.err(format!("cannot resolve <{iri}>: {e}")),
            },
            None => Ok(iri),
        }
    }

    fn unicode_escape(&mut self) -> Result<char, ParseError> {
        let width = match self.bump() {
            Some('u') => 4,
            Some('U') => 8,
            other => return self.err(format!("invalid escape {other:?}")),
        };
        let start = self.pos;
        for _ in 0..width {
            match self.bump() {
                Some(c) if c.is_ascii_hexdigit() => {}
                _ => return self.err("invalid unicode escape"),
            }
        }
        u32::from_str_radix(&self.src[start..self.pos], 16)
            .ok()
            .and_then(char::from_u32)
            .map_or_else(|| self.err("invalid code point"), Ok)
    }

    fn prefixed_name(&mut self) -> Result<String, ParseError> {
        let start = self.pos;
        while let Some(c) = self.peek() {
            if c == ':' {
                break;
            }
            if !(c.is_alphanumeric() || c == '_' || c == '-' || c == '.') {
                return self.err(format!("unexpected character '{c}'"));
            }
            self.bump();
        }
        if self.peek() != Some(':') {
            return self.err("expected prefixed name");
        }
        let prefix = &self.src[start..self.pos];
        self.bump();
        let local_start = self.pos;
        while let Some(c) = self.peek() {
            if c.is_alphanumeric() || matches!(c, '_' | '-' | '.' | ':' | '%') {
                self.bump();
            } else {
                break;
            }
        }
        while self.pos > local_start && self.src[..self.pos].ends_with('.') {
            self.pos -= 1;
        }
        let local = &self.src[local_start..self.pos];
        match self.prefixes.get(prefix) {
            Some(ns) => Ok(format!("{ns}{local}")),
            None => self.err(format!("undefined prefix '{prefix}:'")),
        }
    }

    fn literal(&mut self) -> Result<Term, ParseError> {
        let quote = self.bump().expect("caller checked quote");
        if self.rest().starts_with(&format!("{quote}{quote}")) {
            return self.err("long string literals are not supported");
        }
        let mut lexical = String::new();
        loop {
            match self.bump() {
                Some(c) if c == quote => break,
                Some('\\') => {
                    let c = match self.peek() {
                        Some('t') => '\t',
                        Some('b') => '\u{8}',
                        Some('n') => '\n',
                        Some('r') => '\r',
                        Some('f') => '\u{c}',
                        Some('"') => '"',
                        Some('\'') => '\'',
                        Some('\\') => '\\',
                        Some('u') | Some('U') => {
                            lexical.push(self.unicode_escape()?);
                            continue;
                        }
                        other => return self.err(format!("invalid escape {other:?}")),
                    };
                    self.bump();
                    lexical.push(c);
                }
                Some('\n') | Some('\r') => return self.err("newline in string literal"),
                Some(c) => lexical.push(c),
                None => return self.err("unterminated string literal"),
            }
        }
        if self.rest().starts_with("^^") {
            self.pos += 2;
            let dt = if self.peek() == Some('<') {
                self.iriref_resolved()?
            } else {
                self.prefixed_name()?
            };
            Ok(Term::typed(lexical, dt))
        } else if self.peek() == Some('@') {
            self.bump();
            let start = self.pos;
            while let Some(c) = self.peek() {
                if c.is_ascii_alphanumeric() || c == '-' {
                    self.bump();
                } else {
                    break;
                }
            }
            if self.pos == start {
                return self.err("empty language tag");
            }
            Ok(Term::lang_string(lexical, &self.src[start..self.pos]))
        } else {
            Ok(Term::string(lexical))
        }
    }

    fn number(&mut self) -> Result<Term, ParseError> {
        let start = self.pos;
        if matches!(self.peek(), Some('+') | Some('-')) {
            self.bump();
        }
        let mut seen_dot = false;
        let mut seen_exp = false;
        while let Some(c) = self.peek() {
            if c.is_ascii_digit() {
                self.bump();
            } else if c == '.' && !seen_dot && !seen_exp {
                // only a decimal point if a digit follows
                if self.rest()[1..].starts_with(|d: char| d.is_ascii_digit()) {
                    seen_dot = true;
                    self.bump();
                } else {
                    break;
                }
            } else if (c == 'e' || c == 'E') && !seen_exp {
                seen_exp = true;
                self.bump();
                if matches!(self.peek(), Some('+') | Some('-')) {
                    self.bump();
                }
            } else {
                break;
            }
        }
        let text = &self.src[start..self.pos];
        if !text.bytes().any(|b| b.is_ascii_digit()) {
            return self.err(format!("invalid number '{text}'"));
        }
        let dt = if seen_exp {
            vocab::XSD_DOUBLE
        } else if seen_dot {
            vocab::XSD_DECIMAL
        } else {
            vocab::XSD_INTEGER
        };
        Ok(Term::typed(text, dt))
    }
}
