use std::fmt::{self, Write as _};
use std::sync::Arc;

use crate::vocab::{self, PrefixMap};

/// An RDF term. Strings are reference counted so that bindings can be
/// cloned freely during query evaluation.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Term {
    Iri(Arc<str>),
    Blank(Arc<str>),
    Literal(Literal),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Literal {
    lexical: Arc<str>,
    kind: LiteralKind,
}

/// Datatype or language of a literal. `xsd:string` literals are stored as
/// `Simple` so that `"a"` and `"a"^^xsd:string` are the same term.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum LiteralKind {
    Simple,
    Typed(Arc<str>),
    Lang(Arc<str>),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Triple {
    pub subject: Term,
    pub predicate: Term,
    pub object: Term,
}

impl Triple {
    pub fn new(subject: Term, predicate: Term, object: Term) -> Self {
        Triple {
            subject,
            predicate,
            object,
        }
    }
}

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
#[error("term cannot be serialized: {0}")]
pub struct UnserializableTerm(pub String);

impl Term {
    pub fn iri(iri: impl AsRef<str>) -> Term {
        Term::Iri(Arc::from(iri.as_ref()))
    }

    pub fn blank(label: impl AsRef<str>) -> Term {
        Term::Blank(Arc::from(label.as_ref()))
    }

    pub fn string(lexical: impl AsRef<str>) -> Term {
        Term::Literal(Literal {
            lexical: Arc::from(lexical.as_ref()),
            kind: LiteralKind::Simple,
        })
    }

    pub fn typed(lexical: impl AsRef<str>, datatype: impl AsRef<str>) -> Term {
        let datatype = datatype.as_ref();
        let kind = if datatype == vocab::XSD_STRING {
            LiteralKind::Simple
        } else {
            LiteralKind::Typed(Arc::from(datatype))
        };
        Term::Literal(Literal {
            lexical: Arc::from(lexical.as_ref()),
            kind,
        })
    }

    pub fn lang_string(lexical: impl AsRef<str>, lang: impl AsRef<str>) -> Term {
        Term::Literal(Literal {
            lexical: Arc::from(lexical.as_ref()),
            kind: LiteralKind::Lang(Arc::from(lang.as_ref().to_ascii_lowercase().as_str())),
        })
    }

    pub fn integer(value: i64) -> Term {
        Term::typed(value.to_string(), vocab::XSD_INTEGER)
    }

    pub fn double(value: f64) -> Term {
        Term::typed(format_double(value), vocab::XSD_DOUBLE)
    }

    pub fn is_iri(&self) -> bool {
        matches!(self, Term::Iri(_))
    }

    pub fn is_blank(&self) -> bool {
        matches!(self, Term::Blank(_))
    }

    pub fn is_literal(&self) -> bool {
        matches!(self, Term::Literal(_))
    }

    pub fn as_iri(&self) -> Option<&str> {
        match self {
            Term::Iri(iri) => Some(iri),
            _ => None,
        }
    }

    pub fn as_literal(&self) -> Option<&Literal> {
        match self {
            Term::Literal(lit) => Some(lit),
            _ => None,
        }
    }

    /// IRI text, blank label, or literal lexical form.
    pub fn value_str(&self) -> &str {
        match self {
            Term::Iri(s) | Term::Blank(s) => s,
            Term::Literal(lit) => &lit.lexical,
        }
    }

    /// Writes the term in N-Triples form, compacting IRIs with `prefixes`
    /// where the local part is a safe prefixed-name local.
    pub fn write_to(
        &self,
        out: &mut String,
        prefixes: Option<&PrefixMap>,
    ) -> Result<(), UnserializableTerm> {
        match self {
            Term::Iri(iri) => write_iri(out, iri, prefixes),
            Term::Blank(label) => {
                if !is_valid_blank_label(label) {
                    return Err(UnserializableTerm(format!("blank node label {label:?}")));
                }
                out.push_str("_:");
                out.push_str(label);
                Ok(())
            }
            Term::Literal(lit) => {
                out.push('"');
                escape_literal(out, &lit.lexical);
                out.push('"');
                match &lit.kind {
                    LiteralKind::Simple => Ok(()),
                    LiteralKind::Lang(lang) => {
                        if !is_valid_lang(lang) {
                            return Err(UnserializableTerm(format!("language tag {lang:?}")));
                        }
                        out.push('@');
                        out.push_str(lang);
                        Ok(())
                    }
                    LiteralKind::Typed(dt) => {
                        out.push_str("^^");
                        write_iri(out, dt, prefixes)
                    }
                }
            }
        }
    }

    /// N-Triples rendering; panics-free variant of [`Term::write_to`] used
    /// for display, falling back to a lossy form for invalid terms.
    pub fn to_nt(&self) -> String {
        let mut out = String::new();
        if self.write_to(&mut out, None).is_err() {
            out.clear();
            let _ = write!(out, "{:?}", self);
        }
        out
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_nt())
    }
}

impl Literal {
    pub fn lexical(&self) -> &str {
        &self.lexical
    }

    pub fn kind(&self) -> &LiteralKind {
        &self.kind
    }

    /// Datatype IRI; simple literals report `xsd:string`, language-tagged
    /// ones `rdf:langString`.
    pub fn datatype(&self) -> &str {
        match &self.kind {
            LiteralKind::Simple => vocab::XSD_STRING,
            LiteralKind::Typed(dt) => dt,
            LiteralKind::Lang(_) => vocab::RDF_LANG_STRING,
        }
    }

    pub fn lang(&self) -> Option<&str> {
        match &self.kind {
            LiteralKind::Lang(l) => Some(l),
            _ => None,
        }
    }
}

/// Canonical-enough lexical form for doubles: always carries a decimal point.
pub fn format_double(value: f64) -> String {
    if value.is_nan() {
        return "NaN".into();
    }
    if value.is_infinite() {
        return if value > 0.0 {
            "INF".into()
        } else {
            "-INF".into()
        };
    }
    let s = format!("{value}");
    if s.contains('.') {
        s
    } else {
        format!("{s}.0")
    }
}

fn write_iri(
    out: &mut String,
    iri: &str,
    prefixes: Option<&PrefixMap>,
) -> Result<(), UnserializableTerm> {
    if let Some(map) = prefixes {
        if let Some((prefix, local)) = compact_iri(iri, map) {
            out.push_str(prefix);
            out.push(':');
            out.push_str(local);
            return Ok(());
        }
    }
    if !is_writable_iri(iri) {
        return Err(UnserializableTerm(format!("IRI {iri:?}")));
    }
    out.push('<');
    out.push_str(iri);
    out.push('>');
    Ok(())
}

fn is_writable_iri(iri: &str) -> bool {
    !iri.chars()
        .any(|c| c <= ' ' || matches!(c, '<' | '>' | '"' | '{' | '}' | '|' | '^' | '`' | '\\'))
}

/// Absolute IRI check: a scheme followed by ':' and no characters that
/// N-Triples cannot carry inside `<...>`.
pub fn is_valid_iri(iri: &str) -> bool {
    let Some((scheme, _)) = iri.split_once(':') else {
        return false;
    };
    scheme.starts_with(|c: char| c.is_ascii_alphabetic())
        && scheme
            .chars()
            .all(|c| c.is_ascii_alphanumeric() || matches!(c, '+' | '-' | '.'))
        && is_writable_iri(iri)
}

/// Picks the longest namespace in `map` under which `iri` has a safe local name.
pub fn compact_iri<'a>(iri: &'a str, map: &'a PrefixMap) -> Option<(&'a str, &'a str)> {
    map.iter()
        .filter_map(|(prefix, ns)| {
            iri.strip_prefix(ns.as_str())
                .filter(|local| is_safe_local(local))
                .map(|local| (prefix.as_str(), local, ns.len()))
        })
        .max_by(|a, b| a.2.cmp(&b.2).then_with(|| b.0.cmp(a.0)))
        .map(|(p, l, _)| (p, l))
}

/// Local names we are willing to emit unescaped: ASCII alphanumerics,
/// underscore and inner hyphens.
pub fn is_safe_local(local: &str) -> bool {
    !local.is_empty()
        && !local.starts_with('-')
        && local
            .bytes()
            .all(|b| b.is_ascii_alphanumeric() || b == b'_' || b == b'-')
}

pub fn is_valid_blank_label(label: &str) -> bool {
    !label.is_empty()
        && !label.starts_with(['-', '.'])
        && !label.ends_with('.')
        && label
            .bytes()
            .all(|b| b.is_ascii_alphanumeric() || matches!(b, b'_' | b'-' | b'.'))
}

fn is_valid_lang(lang: &str) -> bool {
    let mut parts = lang.split('-');
    let first_ok = parts
        .next()
        .is_some_and(|p| !p.is_empty() && p.bytes().all(|b| b.is_ascii_alphabetic()));
    first_ok && parts.all(|p| !p.is_empty() && p.bytes().all(|b| b.is_ascii_alphanumeric()))
}

fn escape_literal(out: &mut String, s: &str) {
    for c in s.chars() {
        match c {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            '\r' => out.push_str("\\r"),
            '\t' => out.push_str("\\t"),
            c if (c as u32) < 0x20 || c == '\u{7f}' => {
                let _ = write!(out, "\\u{:04X}", c as u32);
            }
            c => out.push(c),
        }
    }
}
