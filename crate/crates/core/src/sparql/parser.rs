use crate::rdf::Term;
use crate::vocab::{self, PrefixMap};

use super::ast::*;
use super::lexer::{tokenize, Tok, Token};
use super::QueryError;

/// Parses a SELECT query. Prefixes from [`vocab::query_prefixes`] are
/// predeclared; PREFIX lines may add or override them.
pub fn parse_query(text: &str) -> Result<Query, QueryError> {
    let tokens = tokenize(text)?;
    let mut p = Parser {
        text,
        tokens,
        i: 0,
        prefixes: vocab::query_prefixes(),
        base: None,
        scopes: Vec::new(),
    };
    p.prologue()?;
    let query = p.select_query()?;
    if p.i < p.tokens.len() {
        let tok = &p.tokens[p.i].tok;
        if let Tok::Word(w) = tok {
            if w.eq_ignore_ascii_case("UNION") || w.eq_ignore_ascii_case("MINUS") {
                return Err(p.error(&format!(
                    "end of query ({} is not supported)",
                    w.to_uppercase()
                )));
            }
        }
        return Err(p.error("end of query"));
    }
    Ok(query)
}

#[derive(Default)]
struct Scope {
    vars: Vec<String>,
}

struct Parser<'a> {
    text: &'a str,
    tokens: Vec<Token>,
    i: usize,
    prefixes: PrefixMap,
    base: Option<String>,
    scopes: Vec<Scope>,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&Tok> {
        self.tokens.get(self.i).map(|t| &t.tok)
    }

    fn peek_at(&self, k: usize) -> Option<&Tok> {
        self.tokens.get(self.i + k).map(|t| &t.tok)
    }

    fn pos(&self) -> usize {
        self.tokens.get(self.i).map_or(self.text.len(), |t| t.pos)
    }

    fn error(&self, expected: &str) -> QueryError {
        QueryError::syntax(self.text, self.pos(), expected)
    }

    fn next(&mut self) -> Option<Tok> {
        let t = self.tokens.get(self.i).map(|t| t.tok.clone());
        self.i += 1;
        t
    }

    fn is_word(&self, word: &str) -> bool {
        matches!(self.peek(), Some(Tok::Word(w)) if w.eq_ignore_ascii_case(word))
    }

    fn eat_word(&mut self, word: &str) -> bool {
        let hit = self.is_word(word);
        if hit {
            self.i += 1;
        }
        hit
    }

    fn expect_word(&mut self, word: &str) -> Result<(), QueryError> {
        if self.eat_word(word) {
            Ok(())
        } else {
            Err(self.error(word))
        }
    }

    fn is_punct(&self, p: &str) -> bool {
        matches!(self.peek(), Some(Tok::Punct(q)) if *q == p)
    }

    fn eat_punct(&mut self, p: &str) -> bool {
        let hit = self.is_punct(p);
        if hit {
            self.i += 1;
        }
        hit
    }

    fn expect_punct(&mut self, p: &str) -> Result<(), QueryError> {
        if self.eat_punct(p) {
            Ok(())
        } else {
            Err(self.error(&format!("'{p}'")))
        }
    }

    fn var(&mut self, name: &str) -> Var {
        let scope = self.scopes.last_mut().expect("inside a query scope");
        match scope.vars.iter().position(|v| v == name) {
            Some(i) => i,
            None => {
                scope.vars.push(name.to_string());
                scope.vars.len() - 1
            }
        }
    }

    fn prologue(&mut self) -> Result<(), QueryError> {
        loop {
            if self.eat_word("PREFIX") {
                let prefix = match self.next() {
                    Some(Tok::PName(p, l)) if l.is_empty() => p,
                    _ => {
                        self.i -= 1;
                        return Err(self.error("prefix name"));
                    }
                };
                let iri = match self.next() {
                    Some(Tok::Iri(iri)) => self.resolve(&iri),
                    _ => {
                        self.i -= 1;
                        return Err(self.error("IRI"));
                    }
                };
                self.prefixes.insert(prefix, iri);
            } else if self.eat_word("BASE") {
                match self.next() {
                    Some(Tok::Iri(iri)) => self.base = Some(iri),
                    _ => {
                        self.i -= 1;
                        return Err(self.error("IRI"));
                    }
                }
            } else {
                return Ok(());
            }
        }
    }

    fn resolve(&self, iri: &str) -> String {
        match &self.base {
            Some(base) if !iri.contains(':') => url::Url::parse(base)
                .and_then(|b| b.join(iri))
                .map(|u| u.to_string())
                .unwrap_or_else(|_| iri.to_string()),
            _ => iri.to_string(),
        }
    }

    fn expand(&self, prefix: &str, local: &str) -> Result<String, QueryError> {
        match self.prefixes.get(prefix) {
            Some(ns) => Ok(format!("{ns}{local}")),
            None => Err(self.error(&format!("declared prefix (unknown '{prefix}:')"))),
        }
    }

    fn select_query(&mut self) -> Result<Query, QueryError> {
        self.scopes.push(Scope::default());
        self.expect_word("SELECT")?;
        let distinct = self.eat_word("DISTINCT") || self.eat_word("REDUCED");
        let mut items = Vec::new();
        let star = self.eat_punct("*");
        if !star {
            let mut auto = 0;
            while !(self.is_word("WHERE") || self.is_punct("{") || self.peek().is_none()) {
                items.push(self.select_item(&mut auto)?);
            }
            if items.is_empty() {
                return Err(self.error("projection"));
            }
        }
        self.eat_word("WHERE");
        let where_clause = self.group()?;
        let star_vars: Vec<Var> = if star {
            let scope = self.scopes.last().expect("scope");
            (0..scope.vars.len())
                .filter(|&v| !scope.vars[v].starts_with("_:"))
                .collect()
        } else {
            Vec::new()
        };

        let mut group_by = Vec::new();
        if self.eat_word("GROUP") {
            self.expect_word("BY")?;
            loop {
                match self.peek() {
                    Some(Tok::Var(_)) => {
                        let e = self.primary()?;
                        group_by.push(GroupKey {
                            expr: e,
                            alias: None,
                        });
                    }
                    Some(Tok::Punct("(")) => {
                        self.i += 1;
                        let expr = self.expression()?;
                        let alias = if self.eat_word("AS") {
                            Some(self.var_token()?)
                        } else {
                            None
                        };
                        self.expect_punct(")")?;
                        group_by.push(GroupKey { expr, alias });
                    }
                    Some(Tok::Word(w))
                        if ["HAVING", "ORDER", "LIMIT", "OFFSET"]
                            .iter()
                            .any(|k| w.eq_ignore_ascii_case(k)) =>
                    {
                        break
                    }
                    Some(Tok::Word(_)) | Some(Tok::PName(..)) | Some(Tok::Iri(_))
                        if matches!(self.peek_at(1), Some(Tok::Punct("("))) =>
                    {
                        let e = self.primary()?;
                        group_by.push(GroupKey {
                            expr: e,
                            alias: None,
                        });
                    }
                    _ => break,
                }
            }
            if group_by.is_empty() {
                return Err(self.error("group key"));
            }
        }
        let mut having = Vec::new();
        if self.eat_word("HAVING") {
            while self.is_punct("(")
                || matches!(self.peek(), Some(Tok::Word(w)) if Func::from_name(w).is_some())
            {
                having.push(self.primary()?);
            }
            if having.is_empty() {
                return Err(self.error("HAVING condition"));
            }
        }
        let mut order_by = Vec::new();
        if self.eat_word("ORDER") {
            self.expect_word("BY")?;
            loop {
                let descending = if self.eat_word("DESC") {
                    true
                } else {
                    self.eat_word("ASC");
                    false
                };
                match self.peek() {
                    Some(Tok::Var(_)) | Some(Tok::Punct("(")) => {}
                    Some(Tok::Word(_)) | Some(Tok::PName(..))
                        if matches!(self.peek_at(1), Some(Tok::Punct("("))) => {}
                    _ => {
                        if order_by.is_empty() {
                            return Err(self.error("order key"));
                        }
                        break;
                    }
                }
                let expr = self.primary()?;
                order_by.push(OrderKey { expr, descending });
            }
        }
        let (mut limit, mut offset) = (None, None);
        for _ in 0..2 {
            if self.eat_word("LIMIT") {
                limit = Some(self.integer()?);
            } else if self.eat_word("OFFSET") {
                offset = Some(self.integer()?);
            }
        }
        let scope = self.scopes.pop().expect("scope");
        let projection = if star {
            Projection::All(star_vars)
        } else {
            Projection::Items(items)
        };
        let query = Query {
            vars: scope.vars,
            distinct,
            projection,
            where_clause,
            group_by,
            having,
            order_by,
            limit,
            offset,
            prefixes: self.prefixes.clone(),
        };
        check_grouping(&query).map_err(|msg| QueryError::syntax(self.text, self.pos(), &msg))?;
        Ok(query)
    }

    fn integer(&mut self) -> Result<usize, QueryError> {
        match self.next() {
            Some(Tok::Integer(n)) => n.parse().map_err(|_| self.error("integer")),
            _ => {
                self.i -= 1;
                Err(self.error("integer"))
            }
        }
    }

    fn var_token(&mut self) -> Result<Var, QueryError> {
        match self.next() {
            Some(Tok::Var(name)) => Ok(self.var(&name)),
            _ => {
                self.i -= 1;
                Err(self.error("variable"))
            }
        }
    }

    fn select_item(&mut self, auto: &mut usize) -> Result<SelectItem, QueryError> {
        if self.eat_punct("(") {
            let expr = self.expression()?;
            if self.eat_word("AS") {
                let var = self.var_token()?;
                self.expect_punct(")")?;
                return Ok(SelectItem { expr, var });
            }
            self.expect_punct(")")?;
            return Ok(self.unnamed(expr, auto));
        }
        let expr = self.expression()?;
        match expr {
            Expr::Var(v) => Ok(SelectItem { expr, var: v }),
            expr => Ok(self.unnamed(expr, auto)),
        }
    }

    /// Select expressions written without `AS` get a generated name.
    fn unnamed(&mut self, expr: Expr, auto: &mut usize) -> SelectItem {
        loop {
            *auto += 1;
            let name = format!("expr{auto}");
            let exists = self.scopes.last().expect("scope").vars.contains(&name);
            if !exists {
                let var = self.var(&name);
                return SelectItem { expr, var };
            }
        }
    }

    fn group(&mut self) -> Result<GroupPattern, QueryError> {
        self.expect_punct("{")?;
        if self.is_word("SELECT") {
            let sub = self.select_query()?;
            for (name, _) in sub.columns() {
                self.var(&name);
            }
            self.expect_punct("}")?;
            return Ok(GroupPattern {
                elements: vec![GroupElement::SubSelect(Box::new(sub))],
            });
        }
        let mut elements = Vec::new();
        loop {
            match self.peek() {
                None => return Err(self.error("'}'")),
                Some(Tok::Punct("}")) => {
                    self.i += 1;
                    break;
                }
                Some(Tok::Punct(".")) => self.i += 1,
                Some(Tok::Punct("{")) => {
                    let g = self.group()?;
                    if self.is_word("UNION") || self.is_word("MINUS") {
                        return Err(self.error("group element (UNION is not supported)"));
                    }
                    match g.elements.as_slice() {
                        [GroupElement::SubSelect(_)] => elements.extend(g.elements),
                        _ => elements.push(GroupElement::Group(g)),
                    }
                }
                Some(Tok::Word(w)) => {
                    let w = w.to_ascii_uppercase();
                    match w.as_str() {
                        "FILTER" => {
                            self.i += 1;
                            if self.is_word("NOT") || self.is_word("EXISTS") {
                                return Err(
                                    self.error("filter expression (EXISTS is not supported)")
                                );
                            }
                            elements.push(GroupElement::Filter(self.primary()?));
                        }
                        "OPTIONAL" => {
                            self.i += 1;
                            elements.push(GroupElement::Optional(self.group()?));
                        }
                        "SERVICE" => {
                            self.i += 1;
                            let silent = self.eat_word("SILENT");
                            let iri = match self.next() {
                                Some(Tok::Iri(iri)) => self.resolve(&iri),
                                Some(Tok::PName(p, l)) => self.expand(&p, &l)?,
                                _ => {
                                    self.i -= 1;
                                    return Err(self.error("service IRI"));
                                }
                            };
                            let group = self.group()?;
                            elements.push(GroupElement::Service { iri, silent, group });
                        }
                        "UNION" | "MINUS" | "BIND" | "VALUES" | "GRAPH" => {
                            return Err(
                                self.error(&format!("group element ({w} is not supported)"))
                            );
                        }
                        _ => self.triples(&mut elements)?,
                    }
                }
                Some(_) => self.triples(&mut elements)?,
            }
        }
        Ok(GroupPattern { elements })
    }

    fn triples(&mut self, out: &mut Vec<GroupElement>) -> Result<(), QueryError> {
        let subject = self.node(false)?;
        loop {
            let predicate = if self.eat_word("a") {
                TermPattern::Term(Term::iri(vocab::RDF_TYPE))
            } else {
                self.node(true)?
            };
            loop {
                let object = self.node(false)?;
                out.push(GroupElement::Triple(TriplePattern {
                    subject: subject.clone(),
                    predicate: predicate.clone(),
                    object,
                }));
                if !self.eat_punct(",") {
                    break;
                }
            }
            if !self.eat_punct(";") {
                break;
            }
            while self.eat_punct(";") {}
            if self.is_punct(".") || self.is_punct("}") || self.is_word("FILTER") {
                break;
            }
        }
        Ok(())
    }

    fn node(&mut self, predicate: bool) -> Result<TermPattern, QueryError> {
        let what = if predicate { "predicate" } else { "term" };
        Ok(match self.next() {
            Some(Tok::Var(name)) => TermPattern::Var(self.var(&name)),
            Some(Tok::Iri(iri)) => TermPattern::Term(Term::iri(self.resolve(&iri))),
            Some(Tok::PName(p, l)) => {
                self.i -= 1;
                let iri = self.expand(&p, &l)?;
                self.i += 1;
                TermPattern::Term(Term::iri(iri))
            }
            Some(Tok::Blank(label)) if !predicate => {
                TermPattern::Var(self.var(&format!("_:{label}")))
            }
            Some(tok) if !predicate => {
                self.i -= 1;
                match self.literal_from(tok)? {
                    Some(t) => TermPattern::Term(t),
                    None => return Err(self.error(what)),
                }
            }
            _ => {
                self.i -= 1;
                return Err(self.error(what));
            }
        })
    }

    /// Literal starting at the current token, if it is one.
    fn literal_from(&mut self, tok: Tok) -> Result<Option<Term>, QueryError> {
        let term = match tok {
            Tok::Str(s) => {
                self.i += 1;
                match self.peek().cloned() {
                    Some(Tok::LangTag(lang)) => {
                        self.i += 1;
                        Term::lang_string(s, lang)
                    }
                    Some(Tok::Punct("^^")) => {
                        self.i += 1;
                        let dt = match self.next() {
                            Some(Tok::Iri(iri)) => self.resolve(&iri),
                            Some(Tok::PName(p, l)) => {
                                self.i -= 1;
                                let iri = self.expand(&p, &l)?;
                                self.i += 1;
                                iri
                            }
                            _ => {
                                self.i -= 1;
                                return Err(self.error("datatype IRI"));
                            }
                        };
                        Term::typed(s, dt)
                    }
                    _ => Term::string(s),
                }
            }
            Tok::Integer(n) => {
                self.i += 1;
                Term::typed(n, vocab::XSD_INTEGER)
            }
            Tok::Decimal(n) => {
                self.i += 1;
                Term::typed(n, vocab::XSD_DECIMAL)
            }
            Tok::Double(n) => {
                self.i += 1;
                Term::typed(n, vocab::XSD_DOUBLE)
            }
            Tok::Word(w) if w == "true" || w == "false" => {
                self.i += 1;
                Term::typed(w, vocab::XSD_BOOLEAN)
            }
            _ => return Ok(None),
        };
        Ok(Some(term))
    }

    fn expression(&mut self) -> Result<Expr, QueryError> {
        let mut left = self.and_expr()?;
        while self.eat_punct("||") {
            left = Expr::binary(BinOp::Or, left, self.and_expr()?);
        }
        Ok(left)
    }

    fn and_expr(&mut self) -> Result<Expr, QueryError> {
        let mut left = self.relational()?;
        while self.eat_punct("&&") {
            left = Expr::binary(BinOp::And, left, self.relational()?);
        }
        Ok(left)
    }

    fn relational(&mut self) -> Result<Expr, QueryError> {
        let left = self.additive()?;
        let op = match self.peek() {
            Some(Tok::Punct("=")) => BinOp::Eq,
            Some(Tok::Punct("!=")) => BinOp::Ne,
            Some(Tok::Punct("<")) => BinOp::Lt,
            Some(Tok::Punct("<=")) => BinOp::Le,
            Some(Tok::Punct(">")) => BinOp::Gt,
            Some(Tok::Punct(">=")) => BinOp::Ge,
            _ => return Ok(left),
        };
        self.i += 1;
        Ok(Expr::binary(op, left, self.additive()?))
    }

    fn additive(&mut self) -> Result<Expr, QueryError> {
        let mut left = self.multiplicative()?;
        loop {
            let op = if self.eat_punct("+") {
                BinOp::Add
            } else if self.eat_punct("-") {
                BinOp::Sub
            } else {
                return Ok(left);
            };
            left = Expr::binary(op, left, self.multiplicative()?);
        }
    }

    fn multiplicative(&mut self) -> Result<Expr, QueryError> {
        let mut left = self.unary()?;
        loop {
            let op = if self.eat_punct("*") {
                BinOp::Mul
            } else if self.eat_punct("/") {
                BinOp::Div
            } else {
                return Ok(left);
            };
            left = Expr::binary(op, left, self.unary()?);
        }
    }

    fn unary(&mut self) -> Result<Expr, QueryError> {
        if self.eat_punct("!") {
            Ok(Expr::Not(Box::new(self.unary()?)))
        } else if self.eat_punct("-") {
            Ok(Expr::Neg(Box::new(self.unary()?)))
        } else if self.eat_punct("+") {
            self.unary()
        } else {
            self.primary()
        }
    }

    fn args(&mut self) -> Result<Vec<Expr>, QueryError> {
        self.expect_punct("(")?;
        let mut args = Vec::new();
        if self.eat_punct(")") {
            return Ok(args);
        }
        loop {
            args.push(self.expression()?);
            if self.eat_punct(")") {
                return Ok(args);
            }
            self.expect_punct(",")?;
        }
    }

    fn primary(&mut self) -> Result<Expr, QueryError> {
        let Some(tok) = self.peek().cloned() else {
            return Err(self.error("expression"));
        };
        match tok {
            Tok::Punct("(") => {
                self.i += 1;
                let e = self.expression()?;
                self.expect_punct(")")?;
                Ok(e)
            }
            Tok::Var(name) => {
                self.i += 1;
                Ok(Expr::Var(self.var(&name)))
            }
            Tok::Iri(_) | Tok::PName(..) => {
                let iri = match self.next().expect("peeked") {
                    Tok::Iri(iri) => self.resolve(&iri),
                    Tok::PName(p, l) => {
                        self.i -= 1;
                        let iri = self.expand(&p, &l)?;
                        self.i += 1;
                        iri
                    }
                    _ => unreachable!(),
                };
                if self.is_punct("(") {
                    if !is_cast(&iri) {
                        self.i -= 1;
                        return Err(self.error(&format!("supported function (<{iri}> is unknown)")));
                    }
                    let mut args = self.args()?;
                    if args.len() != 1 {
                        return Err(self.error("one cast argument"));
                    }
                    return Ok(Expr::Cast(iri, Box::new(args.remove(0))));
                }
                Ok(Expr::Const(Term::iri(iri)))
            }
            Tok::Word(w) => {
                if let Some(func) = AggFunc::from_name(&w) {
                    if matches!(self.peek_at(1), Some(Tok::Punct("("))) {
                        self.i += 2;
                        let distinct = self.eat_word("DISTINCT");
                        let arg = if func == AggFunc::Count && self.eat_punct("*") {
                            None
                        } else {
                            Some(self.expression()?)
                        };
                        self.expect_punct(")")?;
                        return Ok(Expr::Aggregate(Box::new(Aggregate {
                            func,
                            distinct,
                            arg,
                        })));
                    }
                }
                if let Some(func) = Func::from_name(&w) {
                    self.i += 1;
                    let args = self.args()?;
                    let (min, max) = func.arity();
                    if args.len() < min || args.len() > max {
                        return Err(self.error(&format!(
                            "{} argument(s) for {}",
                            min,
                            func.name()
                        )));
                    }
                    if func == Func::Bound && !matches!(args[0], Expr::Var(_)) {
                        return Err(self.error("variable argument for bound"));
                    }
                    return Ok(Expr::Call(func, args));
                }
                match self.literal_from(Tok::Word(w.clone()))? {
                    Some(t) => Ok(Expr::Const(t)),
                    None => {
                        Err(self.error(&format!("expression ('{w}' is not a supported function)")))
                    }
                }
            }
            other => match self.literal_from(other)? {
                Some(t) => Ok(Expr::Const(t)),
                None => Err(self.error("expression")),
            },
        }
    }
}

fn is_cast(iri: &str) -> bool {
    matches!(
        iri,
        vocab::XSD_DOUBLE
            | vocab::XSD_FLOAT
            | vocab::XSD_DECIMAL
            | vocab::XSD_INTEGER
            | vocab::XSD_STRING
            | vocab::XSD_BOOLEAN
            | vocab::XSD_DATE
            | vocab::XSD_DATETIME
    )
}

/// With grouping, projected and ordered expressions may only use grouped
/// variables, aliases, aggregates, or expressions equal to a group key.
fn check_grouping(q: &Query) -> Result<(), String> {
    if !q.is_aggregated() {
        return Ok(());
    }
    let mut allowed: Vec<Var> = Vec::new();
    for key in &q.group_by {
        if let Expr::Var(v) = key.expr {
            allowed.push(v);
        }
        allowed.extend(key.alias);
    }
    let Projection::Items(items) = &q.projection else {
        return Err("explicit projection (SELECT * cannot be used with grouping)".into());
    };
    fn ok(e: &Expr, q: &Query, allowed: &[Var]) -> Result<(), Var> {
        if q.group_by.iter().any(|k| &k.expr == e) {
            return Ok(());
        }
        match e {
            Expr::Aggregate(_) | Expr::Const(_) => Ok(()),
            Expr::Var(v) if allowed.contains(v) => Ok(()),
            Expr::Var(v) => Err(*v),
            Expr::Not(x) | Expr::Neg(x) | Expr::Cast(_, x) => ok(x, q, allowed),
            Expr::Binary(_, a, b) => ok(a, q, allowed).and(ok(b, q, allowed)),
            Expr::Call(_, args) => args.iter().try_for_each(|a| ok(a, q, allowed)),
        }
    }
    for item in items {
        ok(&item.expr, q, &allowed)
            .map_err(|v| format!("grouped variable (?{} is not in GROUP BY)", q.vars[v]))?;
        allowed.push(item.var);
    }
    for e in q.having.iter().chain(q.order_by.iter().map(|k| &k.expr)) {
        ok(e, q, &allowed)
            .map_err(|v| format!("grouped variable (?{} is not in GROUP BY)", q.vars[v]))?;
    }
    Ok(())
}
