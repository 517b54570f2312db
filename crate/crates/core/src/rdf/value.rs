//! Value-space views of literals used by FILTER comparisons and ORDER BY.
//!
//! Dates and date-times compare as instants (a date is midnight UTC),
//! numerics on their numeric value, strings bytewise.

use std::cmp::Ordering;

use chrono::{DateTime, NaiveDate, NaiveDateTime, NaiveTime};

use super::term::{LiteralKind, Term};
use crate::vocab;

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Numeric {
    Integer(i64),
    Decimal(f64),
    Double(f64),
}

impl Numeric {
    pub fn as_f64(self) -> f64 {
        match self {
            Numeric::Integer(i) => i as f64,
            Numeric::Decimal(d) | Numeric::Double(d) => d,
        }
    }

    pub fn cmp_value(self, other: Numeric) -> Option<Ordering> {
        match (self, other) {
            (Numeric::Integer(a), Numeric::Integer(b)) => Some(a.cmp(&b)),
            (a, b) => a.as_f64().partial_cmp(&b.as_f64()),
        }
    }

    pub fn to_term(self) -> Term {
        match self {
            Numeric::Integer(i) => Term::integer(i),
            Numeric::Decimal(d) => Term::typed(super::term::format_double(d), vocab::XSD_DECIMAL),
            Numeric::Double(d) => Term::double(d),
        }
    }
}

/// A literal interpreted in its value space.
#[derive(Clone, Debug, PartialEq)]
pub enum Value<'a> {
    Numeric(Numeric),
    Boolean(bool),
    /// Instant in UTC; `is_date` records an `xsd:date` origin.
    Instant(NaiveDateTime, bool),
    Str(&'a str),
    LangStr(&'a str, &'a str),
    Other,
}

pub fn is_integer_type(dt: &str) -> bool {
    dt.strip_prefix(vocab::XSD).is_some_and(|local| {
        matches!(
            local,
            "integer"
                | "int"
                | "long"
                | "short"
                | "byte"
                | "nonNegativeInteger"
                | "positiveInteger"
                | "nonPositiveInteger"
                | "negativeInteger"
                | "unsignedInt"
                | "unsignedLong"
                | "unsignedShort"
                | "unsignedByte"
        )
    })
}

pub fn parse_numeric(lexical: &str, datatype: &str) -> Option<Numeric> {
    let lexical = lexical.trim();
    if is_integer_type(datatype) {
        return lexical
            .trim_start_matches('+')
            .parse()
            .ok()
            .map(Numeric::Integer);
    }
    match datatype {
        vocab::XSD_DECIMAL => lexical.parse().ok().map(Numeric::Decimal),
        vocab::XSD_DOUBLE | vocab::XSD_FLOAT => match lexical {
            "INF" | "+INF" => Some(Numeric::Double(f64::INFINITY)),
            "-INF" => Some(Numeric::Double(f64::NEG_INFINITY)),
            "NaN" => Some(Numeric::Double(f64::NAN)),
            _ => lexical.parse().ok().map(Numeric::Double),
        },
        _ => None,
    }
}

/// Parses `xsd:date` / `xsd:dateTime` lexical forms into a UTC instant.
/// Date-times without a zone are taken as UTC; a bare date given as a
/// date-time is read as midnight.
pub fn parse_instant(lexical: &str) -> Option<NaiveDateTime> {
    let lexical = lexical.trim();
    if let Ok(dt) = DateTime::parse_from_rfc3339(lexical) {
        return Some(dt.naive_utc());
    }
    for fmt in [
        "%Y-%m-%dT%H:%M:%S%.f",
        "%Y-%m-%dT%H:%M:%S",
        "%Y-%m-%dT%H:%M",
    ] {
        if let Ok(dt) = NaiveDateTime::parse_from_str(lexical, fmt) {
            return Some(dt);
        }
    }
    let date_part = lexical.strip_suffix('Z').unwrap_or(lexical);
    NaiveDate::parse_from_str(date_part, "%Y-%m-%d")
        .ok()
        .map(|d| d.and_time(NaiveTime::MIN))
}

/// Wall-clock fields of a date or date-time literal, in its own zone.
pub fn local_datetime(term: &Term) -> Option<NaiveDateTime> {
    let lit = term.as_literal()?;
    let dt = lit.datatype();
    if dt != vocab::XSD_DATE && dt != vocab::XSD_DATETIME {
        return None;
    }
    let lexical = lit.lexical().trim();
    if let Ok(d) = DateTime::parse_from_rfc3339(lexical) {
        return Some(d.naive_local());
    }
    // drop a trailing zone on dates such as 2016-01-01Z or 2016-01-01+02:00
    let core =
        if lexical.len() > 10 && lexical.is_char_boundary(10) && !lexical[10..].starts_with('T') {
            &lexical[..10]
        } else {
            lexical
        };
    parse_instant(core)
}

impl<'a> Value<'a> {
    pub fn of(term: &'a Term) -> Option<Value<'a>> {
        let lit = term.as_literal()?;
        let lexical = lit.lexical();
        Some(match lit.kind() {
            LiteralKind::Simple => Value::Str(lexical),
            LiteralKind::Lang(lang) => Value::LangStr(lexical, lang),
            LiteralKind::Typed(dt) => {
                let dt: &str = dt;
                if let Some(n) = parse_numeric(lexical, dt) {
                    Value::Numeric(n)
                } else if dt == vocab::XSD_DATE || dt == vocab::XSD_DATETIME {
                    match parse_instant(lexical) {
                        Some(i) => Value::Instant(i, dt == vocab::XSD_DATE),
                        None => Value::Other,
                    }
                } else if dt == vocab::XSD_BOOLEAN {
                    match lexical {
                        "true" | "1" => Value::Boolean(true),
                        "false" | "0" => Value::Boolean(false),
                        _ => Value::Other,
                    }
                } else {
                    Value::Other
                }
            }
        })
    }
}

/// Value-space comparison for `<`, `<=`, `>`, `>=`. `None` is a type error.
///
/// A simple literal whose text is a number compares numerically against a
/// numeric value, so `year(?d) = "1987"` behaves as written.
pub fn compare_terms(a: &Term, b: &Term) -> Option<Ordering> {
    let (va, vb) = (Value::of(a)?, Value::of(b)?);
    compare_values(&va, &vb)
}

pub fn compare_values(a: &Value<'_>, b: &Value<'_>) -> Option<Ordering> {
    match (a, b) {
        (Value::Numeric(x), Value::Numeric(y)) => x.cmp_value(*y),
        (Value::Numeric(x), Value::Str(s)) => x.cmp_value(lenient_number(s)?),
        (Value::Str(s), Value::Numeric(y)) => lenient_number(s)?.cmp_value(*y),
        (Value::Instant(x, _), Value::Instant(y, _)) => Some(x.cmp(y)),
        (Value::Str(x), Value::Str(y)) => Some(x.as_bytes().cmp(y.as_bytes())),
        (Value::Boolean(x), Value::Boolean(y)) => Some(x.cmp(y)),
        (Value::LangStr(x, lx), Value::LangStr(y, ly)) if lx == ly => {
            Some(x.as_bytes().cmp(y.as_bytes()))
        }
        _ => None,
    }
}

fn lenient_number(s: &str) -> Option<Numeric> {
    let s = s.trim();
    if let Ok(i) = s.parse::<i64>() {
        return Some(Numeric::Integer(i));
    }
    s.parse::<f64>()
        .ok()
        .filter(|f| f.is_finite())
        .map(Numeric::Decimal)
}

/// `=` semantics: value equality for comparable literals, term equality
/// otherwise. `Err(())` is a type error (distinct literals of unrelated or
/// unknown datatypes).
#[allow(clippy::result_unit_err)]
pub fn terms_equal(a: &Term, b: &Term) -> Result<bool, ()> {
    if a == b {
        return Ok(true);
    }
    match (Value::of(a), Value::of(b)) {
        (Some(va), Some(vb)) => {
            if let (Value::LangStr(..), _) | (_, Value::LangStr(..)) = (&va, &vb) {
                return Ok(false);
            }
            match compare_values(&va, &vb) {
                Some(ord) => Ok(ord == Ordering::Equal),
                None => Err(()),
            }
        }
        _ => Ok(false),
    }
}

/// Total order used by ORDER BY: unbound < blank < IRI < literal; literals
/// order numerics, then instants, booleans, plain strings, tagged strings,
/// other datatypes, each by value and then lexically.
pub fn order_cmp(a: Option<&Term>, b: Option<&Term>) -> Ordering {
    fn rank(t: Option<&Term>) -> u8 {
        match t {
            None => 0,
            Some(Term::Blank(_)) => 1,
            Some(Term::Iri(_)) => 2,
            Some(Term::Literal(_)) => 3,
        }
    }
    fn class(v: &Value<'_>) -> u8 {
        match v {
            Value::Numeric(_) => 0,
            Value::Instant(..) => 1,
            Value::Boolean(_) => 2,
            Value::Str(_) => 3,
            Value::LangStr(..) => 4,
            Value::Other => 5,
        }
    }
    let by_rank = rank(a).cmp(&rank(b));
    if by_rank != Ordering::Equal {
        return by_rank;
    }
    let (Some(a), Some(b)) = (a, b) else {
        return Ordering::Equal;
    };
    match (a, b) {
        (Term::Literal(la), Term::Literal(lb)) => {
            let va = Value::of(a).expect("literal");
            let vb = Value::of(b).expect("literal");
            class(&va)
                .cmp(&class(&vb))
                .then_with(|| match (&va, &vb) {
                    (Value::Numeric(x), Value::Numeric(y)) => x.as_f64().total_cmp(&y.as_f64()),
                    (Value::Instant(x, _), Value::Instant(y, _)) => x.cmp(y),
                    (Value::Boolean(x), Value::Boolean(y)) => x.cmp(y),
                    (Value::LangStr(_, lx), Value::LangStr(_, ly)) => lx.cmp(ly),
                    _ => Ordering::Equal,
                })
                .then_with(|| la.lexical().as_bytes().cmp(lb.lexical().as_bytes()))
                .then_with(|| la.datatype().cmp(lb.datatype()))
        }
        _ => a.value_str().as_bytes().cmp(b.value_str().as_bytes()),
    }
}
