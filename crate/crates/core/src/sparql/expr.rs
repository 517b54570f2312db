//! Expression and aggregate evaluation. `None` stands for an evaluation
//! error (unbound variable, type error), which FILTER treats as false.

use std::collections::HashSet;

use chrono::{Datelike, Timelike};

use crate::rdf::value::{
    compare_terms, local_datetime, order_cmp, parse_instant, terms_equal, Numeric, Value,
};
use crate::rdf::{format_double, LiteralKind, Term};
use crate::vocab;

use super::ast::{AggFunc, Aggregate, BinOp, Expr, Func, Var};

/// Variable bindings seen by an expression.
pub trait Env {
    fn get(&self, var: Var) -> Option<&Term>;

    /// Precomputed value for a whole sub-expression (group keys and
    /// aggregates when evaluating per group). `Some(None)` is an error.
    fn lookup(&self, _expr: &Expr) -> Option<Option<Term>> {
        None
    }
}

impl Env for [Option<Term>] {
    fn get(&self, var: Var) -> Option<&Term> {
        self.get(var).and_then(Option::as_ref)
    }
}

impl Env for Vec<Option<Term>> {
    fn get(&self, var: Var) -> Option<&Term> {
        self.as_slice().get(var).and_then(Option::as_ref)
    }
}

fn boolean(b: bool) -> Term {
    Term::typed(if b { "true" } else { "false" }, vocab::XSD_BOOLEAN)
}

/// Effective boolean value.
pub fn ebv(term: &Term) -> Option<bool> {
    match Value::of(term)? {
        Value::Boolean(b) => Some(b),
        Value::Numeric(n) => {
            let f = n.as_f64();
            Some(f != 0.0 && !f.is_nan())
        }
        Value::Str(s) | Value::LangStr(s, _) => Some(!s.is_empty()),
        _ => None,
    }
}

/// True iff `expr` evaluates without error to an effective `true`.
pub fn passes(expr: &Expr, env: &(impl Env + ?Sized)) -> bool {
    eval(expr, env).and_then(|t| ebv(&t)).unwrap_or(false)
}

fn numeric(term: &Term) -> Option<Numeric> {
    match Value::of(term)? {
        Value::Numeric(n) => Some(n),
        _ => None,
    }
}

fn arith(op: BinOp, a: Numeric, b: Numeric) -> Option<Numeric> {
    use Numeric::*;
    match (a, b) {
        (Integer(x), Integer(y)) => match op {
            BinOp::Add => x.checked_add(y).map(Integer),
            BinOp::Sub => x.checked_sub(y).map(Integer),
            BinOp::Mul => x.checked_mul(y).map(Integer),
            BinOp::Div if y == 0 => None,
            BinOp::Div => Some(Decimal(x as f64 / y as f64)),
            _ => None,
        },
        (a, b) => {
            let (x, y) = (a.as_f64(), b.as_f64());
            let double = matches!(a, Double(_)) || matches!(b, Double(_));
            let r = match op {
                BinOp::Add => x + y,
                BinOp::Sub => x - y,
                BinOp::Mul => x * y,
                BinOp::Div if y == 0.0 && !double => return None,
                BinOp::Div => x / y,
                _ => return None,
            };
            Some(if double { Double(r) } else { Decimal(r) })
        }
    }
}

fn string_arg(term: &Term) -> Option<(&str, Option<&str>)> {
    let lit = term.as_literal()?;
    match lit.kind() {
        LiteralKind::Simple => Some((lit.lexical(), None)),
        LiteralKind::Lang(l) => Some((lit.lexical(), Some(l))),
        LiteralKind::Typed(_) => None,
    }
}

fn with_lang(text: String, lang: Option<&str>) -> Term {
    match lang {
        Some(l) => Term::lang_string(text, l),
        None => Term::string(text),
    }
}

pub fn eval(expr: &Expr, env: &(impl Env + ?Sized)) -> Option<Term> {
    if let Some(v) = env.lookup(expr) {
        return v;
    }
    match expr {
        Expr::Var(v) => env.get(*v).cloned(),
        Expr::Const(t) => Some(t.clone()),
        Expr::Not(e) => ebv(&eval(e, env)?).map(|b| boolean(!b)),
        Expr::Neg(e) => {
            let n = numeric(&eval(e, env)?)?;
            arith(BinOp::Sub, Numeric::Integer(0), n).map(Numeric::to_term)
        }
        Expr::Binary(BinOp::Or, a, b) => {
            let x = eval(a, env).and_then(|t| ebv(&t));
            let y = eval(b, env).and_then(|t| ebv(&t));
            match (x, y) {
                (Some(true), _) | (_, Some(true)) => Some(boolean(true)),
                (Some(false), Some(false)) => Some(boolean(false)),
                _ => None,
            }
        }
        Expr::Binary(BinOp::And, a, b) => {
            let x = eval(a, env).and_then(|t| ebv(&t));
            let y = eval(b, env).and_then(|t| ebv(&t));
            match (x, y) {
                (Some(false), _) | (_, Some(false)) => Some(boolean(false)),
                (Some(true), Some(true)) => Some(boolean(true)),
                _ => None,
            }
        }
        Expr::Binary(op, a, b) => {
            let (x, y) = (eval(a, env)?, eval(b, env)?);
            match op {
                BinOp::Eq => terms_equal(&x, &y).ok().map(boolean),
                BinOp::Ne => terms_equal(&x, &y).ok().map(|b| boolean(!b)),
                BinOp::Lt => compare_terms(&x, &y).map(|o| boolean(o.is_lt())),
                BinOp::Le => compare_terms(&x, &y).map(|o| boolean(o.is_le())),
                BinOp::Gt => compare_terms(&x, &y).map(|o| boolean(o.is_gt())),
                BinOp::Ge => compare_terms(&x, &y).map(|o| boolean(o.is_ge())),
                _ => arith(*op, numeric(&x)?, numeric(&y)?).map(Numeric::to_term),
            }
        }
        Expr::Call(func, args) => call(*func, args, env),
        Expr::Cast(dt, e) => cast(dt, &eval(e, env)?),
        // aggregates only have values through `Env::lookup`
        Expr::Aggregate(_) => None,
    }
}

fn call(func: Func, args: &[Expr], env: &(impl Env + ?Sized)) -> Option<Term> {
    match func {
        Func::Bound => match &args[0] {
            Expr::Var(v) => Some(boolean(env.get(*v).is_some())),
            _ => None,
        },
        Func::Coalesce => args.iter().find_map(|a| eval(a, env)),
        Func::If => {
            let cond = ebv(&eval(&args[0], env)?)?;
            eval(if cond { &args[1] } else { &args[2] }, env)
        }
        _ => {
            let vals: Vec<Term> = args.iter().map(|a| eval(a, env)).collect::<Option<_>>()?;
            call_strict(func, &vals)
        }
    }
}

fn call_strict(func: Func, vals: &[Term]) -> Option<Term> {
    let a = &vals[0];
    match func {
        Func::Str => match a {
            Term::Iri(i) => Some(Term::string(&**i)),
            Term::Literal(l) => Some(Term::string(l.lexical())),
            Term::Blank(_) => None,
        },
        Func::Lang => a.as_literal().map(|l| Term::string(l.lang().unwrap_or(""))),
        Func::Datatype => a.as_literal().map(|l| Term::iri(l.datatype())),
        Func::LangMatches => {
            let (tag, _) = string_arg(a)?;
            let (range, _) = string_arg(&vals[1])?;
            let (tag, range) = (tag.to_ascii_lowercase(), range.to_ascii_lowercase());
            let hit = if range == "*" {
                !tag.is_empty()
            } else {
                tag == range || tag.starts_with(&format!("{range}-"))
            };
            Some(boolean(hit))
        }
        Func::IsIri => Some(boolean(a.is_iri())),
        Func::IsBlank => Some(boolean(a.is_blank())),
        Func::IsLiteral => Some(boolean(a.is_literal())),
        Func::IsNumeric => Some(boolean(numeric(a).is_some())),
        Func::Year | Func::Month | Func::Day | Func::Hours | Func::Minutes => {
            let dt = local_datetime(a)?;
            let v = match func {
                Func::Year => dt.year() as i64,
                Func::Month => dt.month() as i64,
                Func::Day => dt.day() as i64,
                Func::Hours => dt.hour() as i64,
                _ => dt.minute() as i64,
            };
            Some(Term::integer(v))
        }
        Func::Seconds => {
            let dt = local_datetime(a)?;
            let s = dt.second() as f64 + dt.nanosecond() as f64 / 1e9;
            Some(Numeric::Decimal(s).to_term())
        }
        Func::Contains | Func::StrStarts | Func::StrEnds => {
            let (x, _) = string_arg(a)?;
            let (y, _) = string_arg(&vals[1])?;
            Some(boolean(match func {
                Func::Contains => x.contains(y),
                Func::StrStarts => x.starts_with(y),
                _ => x.ends_with(y),
            }))
        }
        Func::LCase => string_arg(a).map(|(s, l)| with_lang(s.to_lowercase(), l)),
        Func::UCase => string_arg(a).map(|(s, l)| with_lang(s.to_uppercase(), l)),
        Func::StrLen => string_arg(a).map(|(s, _)| Term::integer(s.chars().count() as i64)),
        Func::Abs => match numeric(a)? {
            Numeric::Integer(i) => i.checked_abs().map(Term::integer),
            Numeric::Decimal(d) => Some(Numeric::Decimal(d.abs()).to_term()),
            Numeric::Double(d) => Some(Term::double(d.abs())),
        },
        Func::Bound | Func::Coalesce | Func::If => unreachable!("handled lazily"),
    }
}

/// `xsd:T(value)` constructor casts.
pub fn cast(datatype: &str, value: &Term) -> Option<Term> {
    let lit = match value {
        Term::Iri(i) if datatype == vocab::XSD_STRING => return Some(Term::string(&**i)),
        Term::Literal(l) => l,
        _ => return None,
    };
    let lexical = lit.lexical().trim();
    let v = Value::of(value)?;
    match datatype {
        vocab::XSD_STRING => Some(Term::string(lit.lexical())),
        vocab::XSD_DOUBLE | vocab::XSD_FLOAT => {
            let f = match v {
                Value::Numeric(n) => n.as_f64(),
                Value::Boolean(b) => b as u8 as f64,
                Value::Str(_) => lexical.parse().ok()?,
                _ => return None,
            };
            Some(if datatype == vocab::XSD_FLOAT {
                Term::typed(format_double(f), vocab::XSD_FLOAT)
            } else {
                Term::double(f)
            })
        }
        vocab::XSD_DECIMAL => {
            let f = match v {
                Value::Numeric(n) => n.as_f64(),
                Value::Boolean(b) => b as u8 as f64,
                Value::Str(_) => lexical.parse().ok()?,
                _ => return None,
            };
            f.is_finite().then(|| Numeric::Decimal(f).to_term())
        }
        vocab::XSD_INTEGER => {
            let i = match v {
                Value::Numeric(Numeric::Integer(i)) => i,
                Value::Numeric(n) => {
                    let f = n.as_f64().trunc();
                    if !f.is_finite() || f.abs() > 9.2e18 {
                        return None;
                    }
                    f as i64
                }
                Value::Boolean(b) => b as i64,
                Value::Str(_) => lexical.trim_start_matches('+').parse().ok()?,
                _ => return None,
            };
            Some(Term::integer(i))
        }
        vocab::XSD_BOOLEAN => {
            let b = match v {
                Value::Boolean(b) => b,
                Value::Numeric(n) => n.as_f64() != 0.0 && !n.as_f64().is_nan(),
                Value::Str("true") | Value::Str("1") => true,
                Value::Str("false") | Value::Str("0") => false,
                _ => return None,
            };
            Some(boolean(b))
        }
        vocab::XSD_DATETIME => {
            let instant = parse_instant(lexical)?;
            if lexical.contains('T') {
                Some(Term::typed(lexical, vocab::XSD_DATETIME))
            } else {
                Some(Term::typed(
                    instant.format("%Y-%m-%dT%H:%M:%S").to_string(),
                    vocab::XSD_DATETIME,
                ))
            }
        }
        vocab::XSD_DATE => {
            parse_instant(lexical)?;
            Some(Term::typed(
                &lexical[..lexical.len().min(10)],
                vocab::XSD_DATE,
            ))
        }
        _ => None,
    }
}

/// Evaluates `agg` over the rows of one group.
pub fn aggregate<'r, I>(agg: &Aggregate, rows: I) -> Option<Term>
where
    I: IntoIterator<Item = &'r [Option<Term>]>,
{
    let Some(arg) = &agg.arg else {
        // COUNT(*)
        let n = if agg.distinct {
            rows.into_iter().collect::<HashSet<_>>().len()
        } else {
            rows.into_iter().count()
        };
        return Some(Term::integer(n as i64));
    };
    let mut values: Vec<Term> = rows.into_iter().filter_map(|r| eval(arg, r)).collect();
    if agg.distinct {
        let mut seen = HashSet::new();
        values.retain(|v| seen.insert(v.clone()));
    }
    match agg.func {
        AggFunc::Count => Some(Term::integer(values.len() as i64)),
        AggFunc::Sample => values.into_iter().next(),
        AggFunc::Min => values
            .into_iter()
            .min_by(|a, b| order_cmp(Some(a), Some(b))),
        AggFunc::Max => values
            .into_iter()
            .max_by(|a, b| order_cmp(Some(a), Some(b))),
        AggFunc::Sum | AggFunc::Avg => {
            let mut sum = Numeric::Integer(0);
            for v in &values {
                sum = arith(BinOp::Add, sum, numeric(v)?)?;
            }
            if agg.func == AggFunc::Sum {
                return Some(sum.to_term());
            }
            if values.is_empty() {
                return Some(Term::integer(0));
            }
            arith(BinOp::Div, sum, Numeric::Integer(values.len() as i64)).map(Numeric::to_term)
        }
    }
}
