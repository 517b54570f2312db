use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt::Write as _;

use indexmap::IndexMap;
use rand::seq::SliceRandom;
use rand::SeedableRng;

use crate::rdf::value::order_cmp;
use crate::rdf::{GraphStore, IndexKind, Term, TermId};

use super::ast::*;
use super::expr::{self, Env};
use super::{QueryError, ResultTable, ServiceRegistry};

pub type Row = Vec<Option<Term>>;

/// How triple patterns inside a basic graph pattern are ordered.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum JoinOrder {
    /// Cheapest-first by index cardinality, preferring connected patterns.
    #[default]
    Greedy,
    /// As written.
    Written,
    /// Random permutation; only useful to check that order does not matter.
    Shuffled(u64),
}

#[derive(Clone, Copy, Debug, Default)]
pub struct EvalOptions {
    pub join_order: JoinOrder,
}

pub fn evaluate(
    query: &Query,
    store: &GraphStore,
    registry: &ServiceRegistry,
) -> Result<ResultTable, QueryError> {
    evaluate_with(query, store, registry, EvalOptions::default())
}

pub fn evaluate_with(
    query: &Query,
    store: &GraphStore,
    registry: &ServiceRegistry,
    options: EvalOptions,
) -> Result<ResultTable, QueryError> {
    let ev = Evaluator { registry, options };
    let (columns, rows) = ev.query_rows(query, store)?;
    Ok(ResultTable { columns, rows })
}

struct Evaluator<'a> {
    registry: &'a ServiceRegistry,
    options: EvalOptions,
}

struct Pending<'q> {
    expr: &'q Expr,
    vars: Vec<Var>,
    done: bool,
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Slot {
    Const(TermId),
    Var(Var),
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum IdState {
    Unbound,
    /// Bound to a term the store does not contain.
    Absent,
    Id(TermId),
}

/// Variables certainly bound by every solution of `group`.
pub fn certain_vars(group: &GroupPattern, scope: &[String]) -> Vec<Var> {
    let mut out = Vec::new();
    for e in &group.elements {
        match e {
            GroupElement::Triple(t) => out.extend(t.vars()),
            GroupElement::Service { group, .. } | GroupElement::Group(group) => {
                out.extend(certain_vars(group, scope))
            }
            GroupElement::SubSelect(q) => {
                for name in subquery_certain(q) {
                    if let Some(v) = scope.iter().position(|s| *s == name) {
                        out.push(v);
                    }
                }
            }
            GroupElement::Filter(_) | GroupElement::Optional(_) => {}
        }
    }
    out.sort_unstable();
    out.dedup();
    out
}

fn subquery_certain(q: &Query) -> Vec<String> {
    let inner = certain_vars(&q.where_clause, &q.vars);
    let keys: Vec<Var> = q
        .group_by
        .iter()
        .filter_map(|k| match k.expr {
            Expr::Var(v) if k.alias.is_none() => Some(v),
            _ => None,
        })
        .collect();
    let aggregated = q.is_aggregated();
    q.columns()
        .into_iter()
        .filter(|(_, v)| {
            let plain = match &q.projection {
                Projection::All(_) => true,
                Projection::Items(items) => {
                    items.iter().any(|i| i.var == *v && i.expr == Expr::Var(*v))
                }
            };
            plain && inner.contains(v) && (!aggregated || keys.contains(v))
        })
        .map(|(name, _)| name)
        .collect()
}

fn compatible(a: &Row, b: &Row) -> bool {
    a.iter().zip(b).all(|(x, y)| match (x, y) {
        (Some(x), Some(y)) => x == y,
        _ => true,
    })
}

fn merge(a: &Row, b: &Row) -> Row {
    a.iter()
        .zip(b)
        .map(|(x, y)| x.clone().or_else(|| y.clone()))
        .collect()
}

/// Inner join on shared variables. Output follows left order, then right order.
pub fn join(left: Vec<Row>, right: Vec<Row>) -> Vec<Row> {
    if left.is_empty() || right.is_empty() {
        return Vec::new();
    }
    let width = left[0].len();
    let keys: Vec<usize> = (0..width)
        .filter(|&v| left.iter().all(|r| r[v].is_some()) && right.iter().all(|r| r[v].is_some()))
        .collect();
    let mut out = Vec::new();
    if keys.is_empty() {
        for l in &left {
            for r in &right {
                if compatible(l, r) {
                    out.push(merge(l, r));
                }
            }
        }
        return out;
    }
    let mut table: HashMap<Vec<&Term>, Vec<usize>> = HashMap::new();
    for (i, r) in right.iter().enumerate() {
        let key = keys
            .iter()
            .map(|&v| r[v].as_ref().expect("key bound"))
            .collect();
        table.entry(key).or_default().push(i);
    }
    for l in &left {
        let key: Vec<&Term> = keys
            .iter()
            .map(|&v| l[v].as_ref().expect("key bound"))
            .collect();
        if let Some(hits) = table.get(&key) {
            for &i in hits {
                if compatible(l, &right[i]) {
                    out.push(merge(l, &right[i]));
                }
            }
        }
    }
    out
}

fn apply_ready(rows: &mut Vec<Row>, pending: &mut [Pending<'_>], certain: &[bool]) {
    for p in pending.iter_mut().filter(|p| !p.done) {
        if p.vars.iter().all(|&v| certain[v]) {
            p.done = true;
            rows.retain(|r| expr::passes(p.expr, r));
        }
    }
}

/// Index shape cost estimate for a pattern under the current bindings.
fn estimate(store: &GraphStore, pattern: &TriplePattern, bound: &[bool]) -> Option<f64> {
    let mut consts = [None; 3];
    let mut div = 1.0;
    for (k, pos) in pattern.positions().into_iter().enumerate() {
        match pos {
            TermPattern::Term(t) => consts[k] = Some(store.id_of(t)?),
            TermPattern::Var(v) if bound[*v] => div *= [1000.0, 10.0, 100.0][k],
            TermPattern::Var(_) => {}
        }
    }
    Some(store.count_ids(consts[0], consts[1], consts[2]) as f64 / div)
}

impl<'a> Evaluator<'a> {
    fn plan(
        &self,
        store: &GraphStore,
        patterns: &[&TriplePattern],
        certain: &[bool],
    ) -> Vec<(usize, f64)> {
        let n = patterns.len();
        match self.options.join_order {
            JoinOrder::Written => return (0..n).map(|i| (i, f64::NAN)).collect(),
            JoinOrder::Shuffled(seed) => {
                let mut order: Vec<usize> = (0..n).collect();
                order.shuffle(&mut rand_chacha::ChaCha8Rng::seed_from_u64(seed));
                return order.into_iter().map(|i| (i, f64::NAN)).collect();
            }
            JoinOrder::Greedy => {}
        }
        let mut bound = certain.to_vec();
        let mut remaining: Vec<usize> = (0..n).collect();
        let mut order = Vec::with_capacity(n);
        while !remaining.is_empty() {
            let any_bound = bound.iter().any(|&b| b);
            let (best_at, best_est) = remaining
                .iter()
                .enumerate()
                .map(|(at, &i)| {
                    let p = patterns[i];
                    let connected =
                        !any_bound || p.vars().next().is_none() || p.vars().any(|v| bound[v]);
                    let est = estimate(store, p, &bound).unwrap_or(0.0);
                    (at, (!connected, est))
                })
                .min_by(|a, b| {
                    a.1 .0
                        .cmp(&b.1 .0)
                        .then(a.1 .1.total_cmp(&b.1 .1))
                        .then(a.0.cmp(&b.0))
                })
                .map(|(at, (_, est))| (at, est))
                .expect("non-empty");
            let i = remaining.remove(best_at);
            for v in patterns[i].vars() {
                bound[v] = true;
            }
            order.push((i, best_est));
        }
        order
    }

    /// Bind-joins `patterns` from each input row, applying pending filters
    /// as soon as their variables are bound. Output rows carry the index of
    /// the input row they extend.
    fn bgp<'q>(
        &self,
        store: &GraphStore,
        patterns: &[&TriplePattern],
        rows: Vec<Row>,
        certain: &mut [bool],
        pending: &mut [Pending<'q>],
    ) -> Vec<(usize, Row)> {
        let plan = self.plan(store, patterns, certain);
        let mut step_filters: Vec<Vec<&'q Expr>> = vec![Vec::new(); plan.len()];
        for (k, &(pi, _)) in plan.iter().enumerate() {
            for v in patterns[pi].vars() {
                certain[v] = true;
            }
            for p in pending.iter_mut().filter(|p| !p.done) {
                if p.vars.iter().all(|&v| certain[v]) {
                    p.done = true;
                    step_filters[k].push(p.expr);
                }
            }
        }
        let mut slots = Vec::with_capacity(plan.len());
        for &(pi, _) in &plan {
            let mut s = [Slot::Var(0); 3];
            for (k, pos) in patterns[pi].positions().into_iter().enumerate() {
                s[k] = match pos {
                    TermPattern::Var(v) => Slot::Var(*v),
                    TermPattern::Term(t) => match store.id_of(t) {
                        Some(id) => Slot::Const(id),
                        None => return Vec::new(),
                    },
                };
            }
            slots.push(s);
        }
        let mut out = Vec::new();
        for (tag, mut row) in rows.into_iter().enumerate() {
            let mut ids: Vec<IdState> = row
                .iter()
                .map(|t| match t {
                    None => IdState::Unbound,
                    Some(t) => store.id_of(t).map_or(IdState::Absent, IdState::Id),
                })
                .collect();
            let mut search = Search {
                store,
                slots: &slots,
                filters: &step_filters,
                out: &mut out,
                tag,
            };
            search.dfs(0, &mut row, &mut ids);
        }
        out
    }

    fn eval_group(
        &self,
        scope: &[String],
        group: &GroupPattern,
        store: &GraphStore,
        mut rows: Vec<Row>,
        certain_in: &[bool],
    ) -> Result<Vec<Row>, QueryError> {
        let width = scope.len();
        let mut certain = certain_in.to_vec();
        let mut pending: Vec<Pending<'_>> = group
            .filters()
            .map(|f| Pending {
                expr: f,
                vars: f.vars(),
                done: false,
            })
            .collect();
        apply_ready(&mut rows, &mut pending, &certain);
        let els = &group.elements;
        let mut i = 0;
        while i < els.len() {
            match &els[i] {
                GroupElement::Triple(_) | GroupElement::Filter(_) => {
                    let mut patterns = Vec::new();
                    while i < els.len() {
                        match &els[i] {
                            GroupElement::Triple(t) => patterns.push(t),
                            GroupElement::Filter(_) => {}
                            _ => break,
                        }
                        i += 1;
                    }
                    if !patterns.is_empty() {
                        rows = self
                            .bgp(store, &patterns, rows, &mut certain, &mut pending)
                            .into_iter()
                            .map(|(_, r)| r)
                            .collect();
                    }
                    apply_ready(&mut rows, &mut pending, &certain);
                    continue;
                }
                GroupElement::Optional(og) => {
                    rows = self.optional(scope, og, store, rows, &certain)?;
                }
                GroupElement::Service {
                    iri,
                    silent,
                    group: sg,
                } => match self.registry.get(iri) {
                    Some(svc) => {
                        let sub = self.eval_group(
                            scope,
                            sg,
                            svc,
                            vec![vec![None; width]],
                            &vec![false; width],
                        )?;
                        rows = join(rows, sub);
                        for v in certain_vars(sg, scope) {
                            certain[v] = true;
                        }
                    }
                    None if *silent => {}
                    None => return Err(QueryError::UnregisteredService(iri.clone())),
                },
                GroupElement::Group(ng) => {
                    let sub = self.eval_group(
                        scope,
                        ng,
                        store,
                        vec![vec![None; width]],
                        &vec![false; width],
                    )?;
                    rows = join(rows, sub);
                    for v in certain_vars(ng, scope) {
                        certain[v] = true;
                    }
                }
                GroupElement::SubSelect(q) => {
                    let (cols, sub_rows) = self.query_rows(q, store)?;
                    let map: Vec<Option<usize>> = cols
                        .iter()
                        .map(|c| scope.iter().position(|s| s == c))
                        .collect();
                    let sub: Vec<Row> = sub_rows
                        .into_iter()
                        .map(|r| {
                            let mut row = vec![None; width];
                            for (val, target) in r.into_iter().zip(&map) {
                                if let Some(t) = target {
                                    row[*t] = val;
                                }
                            }
                            row
                        })
                        .collect();
                    rows = join(rows, sub);
                    for name in subquery_certain(q) {
                        if let Some(v) = scope.iter().position(|s| *s == name) {
                            certain[v] = true;
                        }
                    }
                }
            }
            apply_ready(&mut rows, &mut pending, &certain);
            i += 1;
        }
        for p in pending.iter().filter(|p| !p.done) {
            rows.retain(|r| expr::passes(p.expr, r));
        }
        Ok(rows)
    }

    fn optional(
        &self,
        scope: &[String],
        og: &GroupPattern,
        store: &GraphStore,
        rows: Vec<Row>,
        certain: &[bool],
    ) -> Result<Vec<Row>, QueryError> {
        let width = scope.len();
        let mut extensions: Vec<Vec<Row>> = vec![Vec::new(); rows.len()];
        if og.is_basic() {
            let patterns: Vec<&TriplePattern> = og
                .elements
                .iter()
                .filter_map(|e| match e {
                    GroupElement::Triple(t) => Some(t),
                    _ => None,
                })
                .collect();
            let mut pending: Vec<Pending<'_>> = og
                .filters()
                .map(|f| Pending {
                    expr: f,
                    vars: f.vars(),
                    done: false,
                })
                .collect();
            let mut inner_certain = certain.to_vec();
            let found = if patterns.is_empty() {
                rows.iter().cloned().enumerate().collect()
            } else {
                self.bgp(
                    store,
                    &patterns,
                    rows.clone(),
                    &mut inner_certain,
                    &mut pending,
                )
            };
            for (tag, row) in found {
                if pending
                    .iter()
                    .filter(|p| !p.done)
                    .all(|p| expr::passes(p.expr, &row))
                {
                    extensions[tag].push(row);
                }
            }
        } else {
            let body = GroupPattern {
                elements: og
                    .elements
                    .iter()
                    .filter(|e| !matches!(e, GroupElement::Filter(_)))
                    .cloned()
                    .collect(),
            };
            let conditions: Vec<&Expr> = og.filters().collect();
            let right = self.eval_group(
                scope,
                &body,
                store,
                vec![vec![None; width]],
                &vec![false; width],
            )?;
            for (tag, l) in rows.iter().enumerate() {
                for r in &right {
                    if compatible(l, r) {
                        let m = merge(l, r);
                        if conditions.iter().all(|c| expr::passes(c, &m)) {
                            extensions[tag].push(m);
                        }
                    }
                }
            }
        }
        let mut out = Vec::with_capacity(rows.len());
        for (row, ext) in rows.into_iter().zip(extensions) {
            if ext.is_empty() {
                out.push(row);
            } else {
                out.extend(ext);
            }
        }
        Ok(out)
    }

    /// Evaluates a (sub)query: output column names and projected rows.
    fn query_rows(
        &self,
        q: &Query,
        store: &GraphStore,
    ) -> Result<(Vec<String>, Vec<Row>), QueryError> {
        let width = q.vars.len();
        let rows = self.eval_group(
            &q.vars,
            &q.where_clause,
            store,
            vec![vec![None; width]],
            &vec![false; width],
        )?;
        Ok(finish(q, rows))
    }

    fn explain_group(
        &self,
        out: &mut String,
        scope: &[String],
        group: &GroupPattern,
        store: Option<&GraphStore>,
        depth: usize,
        certain_in: &[bool],
    ) {
        let pad = "  ".repeat(depth);
        let mut certain = certain_in.to_vec();
        let els = &group.elements;
        let mut i = 0;
        while i < els.len() {
            match &els[i] {
                GroupElement::Triple(_) | GroupElement::Filter(_) => {
                    let mut patterns = Vec::new();
                    while i < els.len() {
                        match &els[i] {
                            GroupElement::Triple(t) => patterns.push(t),
                            GroupElement::Filter(_) => {}
                            _ => break,
                        }
                        i += 1;
                    }
                    if patterns.is_empty() {
                        continue;
                    }
                    let _ = writeln!(out, "{pad}bgp");
                    let empty = GraphStore::new();
                    let store_ref = store.unwrap_or(&empty);
                    for (step, (pi, est)) in self
                        .plan(store_ref, &patterns, &certain)
                        .into_iter()
                        .enumerate()
                    {
                        let p = patterns[pi];
                        let b = p.positions().map(|pos| match pos {
                            TermPattern::Term(_) => true,
                            TermPattern::Var(v) => certain[*v],
                        });
                        let index = IndexKind::for_shape(b[0], b[1], b[2]);
                        let est = if store.is_some() && est.is_finite() {
                            format!(" est={est:.1}")
                        } else {
                            String::new()
                        };
                        let _ = writeln!(
                            out,
                            "{pad}  {}. {}  [{index}]{est}",
                            step + 1,
                            render_pattern(p, scope)
                        );
                        for v in p.vars() {
                            certain[v] = true;
                        }
                    }
                    continue;
                }
                GroupElement::Optional(g) => {
                    let mode = if g.is_basic() {
                        "bind left-join"
                    } else {
                        "left-join"
                    };
                    let _ = writeln!(out, "{pad}optional ({mode})");
                    self.explain_group(out, scope, g, store, depth + 1, &certain);
                }
                GroupElement::Service { iri, group: g, .. } => {
                    let svc = self.registry.get(iri);
                    let note = if svc.is_some() { "" } else { " (unregistered)" };
                    let _ = writeln!(out, "{pad}service <{iri}>{note} (hash join)");
                    let none = vec![false; scope.len()];
                    self.explain_group(out, scope, g, svc, depth + 1, &none);
                    for v in certain_vars(g, scope) {
                        certain[v] = true;
                    }
                }
                GroupElement::Group(g) => {
                    let _ = writeln!(out, "{pad}group (hash join)");
                    let none = vec![false; scope.len()];
                    self.explain_group(out, scope, g, store, depth + 1, &none);
                    for v in certain_vars(g, scope) {
                        certain[v] = true;
                    }
                }
                GroupElement::SubSelect(q) => {
                    let _ = writeln!(out, "{pad}subquery (hash join on shared variables)");
                    let none = vec![false; q.vars.len()];
                    self.explain_group(out, &q.vars, &q.where_clause, store, depth + 1, &none);
                    for name in subquery_certain(q) {
                        if let Some(v) = scope.iter().position(|s| *s == name) {
                            certain[v] = true;
                        }
                    }
                }
            }
            i += 1;
        }
        let filters = group.filters().count();
        if filters > 0 {
            let _ = writeln!(
                out,
                "{pad}filters: {filters} (applied once their variables are bound)"
            );
        }
    }
}

struct Search<'s, 'q> {
    store: &'s GraphStore,
    slots: &'s [[Slot; 3]],
    filters: &'s [Vec<&'q Expr>],
    out: &'s mut Vec<(usize, Row)>,
    tag: usize,
}

impl Search<'_, '_> {
    fn dfs(&mut self, k: usize, row: &mut Row, ids: &mut Vec<IdState>) {
        if k == self.slots.len() {
            self.out.push((self.tag, row.clone()));
            return;
        }
        let slots = self.slots[k];
        let mut query = [None; 3];
        for (q, slot) in query.iter_mut().zip(slots) {
            *q = match slot {
                Slot::Const(id) => Some(id),
                Slot::Var(v) => match ids[v] {
                    IdState::Id(id) => Some(id),
                    IdState::Absent => return,
                    IdState::Unbound => None,
                },
            };
        }
        let store = self.store;
        let mut newly: [Option<Var>; 3] = [None; 3];
        for found in store.match_ids(query[0], query[1], query[2]) {
            let mut ok = true;
            for (n, (slot, id)) in slots.iter().zip(found).enumerate() {
                newly[n] = None;
                if let Slot::Var(v) = *slot {
                    match ids[v] {
                        IdState::Unbound => {
                            ids[v] = IdState::Id(id);
                            row[v] = Some(store.term(id).clone());
                            newly[n] = Some(v);
                        }
                        IdState::Id(x) if x != id => ok = false,
                        _ => {}
                    }
                }
            }
            if ok && self.filters[k].iter().all(|f| expr::passes(*f, row)) {
                self.dfs(k + 1, row, ids);
            }
            for v in newly.iter().flatten() {
                ids[*v] = IdState::Unbound;
                row[*v] = None;
            }
        }
    }
}

pub fn render_pattern(p: &TriplePattern, scope: &[String]) -> String {
    p.positions()
        .map(|pos| match pos {
            TermPattern::Var(v) if scope[*v].starts_with("_:") => scope[*v].clone(),
            TermPattern::Var(v) => format!("?{}", scope[*v]),
            TermPattern::Term(t) => t.to_nt(),
        })
        .join(" ")
}

/// Per-group bindings: key and alias variables in `base`, plus
/// precomputed aggregate and group-expression values.
struct GroupEnv<'a> {
    base: Row,
    keys: &'a [(&'a Expr, Option<Term>)],
    aggs: &'a [(&'a Expr, Option<Term>)],
}

impl Env for GroupEnv<'_> {
    fn get(&self, var: Var) -> Option<&Term> {
        self.base.as_slice().get(var).and_then(|t| t.as_ref())
    }

    fn lookup(&self, e: &Expr) -> Option<Option<Term>> {
        if matches!(e, Expr::Var(_) | Expr::Const(_)) {
            return None;
        }
        self.aggs
            .iter()
            .chain(self.keys)
            .find(|(k, _)| *k == e)
            .map(|(_, v)| v.clone())
    }
}

/// Aggregate sub-expressions of the query, structurally deduplicated.
fn collect_aggregates(q: &Query) -> Vec<&Expr> {
    let mut out: Vec<&Expr> = Vec::new();
    let mut roots: Vec<&Expr> = Vec::new();
    if let Projection::Items(items) = &q.projection {
        roots.extend(items.iter().map(|i| &i.expr));
    }
    roots.extend(q.having.iter());
    roots.extend(q.order_by.iter().map(|k| &k.expr));
    for root in roots {
        root.walk(&mut |e| {
            if matches!(e, Expr::Aggregate(_)) && !out.contains(&e) {
                out.push(e);
            }
        });
    }
    out
}

fn render_cmp(a: &[Option<Term>], b: &[Option<Term>]) -> Ordering {
    for (x, y) in a.iter().zip(b) {
        let ord = match (x, y) {
            (None, None) => Ordering::Equal,
            (None, Some(_)) => Ordering::Less,
            (Some(_), None) => Ordering::Greater,
            (Some(x), Some(y)) => x.to_nt().cmp(&y.to_nt()),
        };
        if ord != Ordering::Equal {
            return ord;
        }
    }
    Ordering::Equal
}

/// Grouping, aggregation, projection expressions, ORDER BY, projection,
/// DISTINCT, OFFSET and LIMIT over the WHERE solutions of `q`.
pub fn finish(q: &Query, rows: Vec<Row>) -> (Vec<String>, Vec<Row>) {
    let items: &[SelectItem] = match &q.projection {
        Projection::Items(items) => items,
        Projection::All(_) => &[],
    };
    // (row over the scope, order key values)
    let mut solved: Vec<(Row, Vec<Option<Term>>)> = Vec::new();
    if q.is_aggregated() {
        let mut groups: IndexMap<Vec<Option<Term>>, Vec<usize>> = IndexMap::new();
        for (i, r) in rows.iter().enumerate() {
            let key = q.group_by.iter().map(|k| expr::eval(&k.expr, r)).collect();
            groups.entry(key).or_default().push(i);
        }
        let agg_exprs = collect_aggregates(q);
        for (key, members) in groups {
            let member_rows = || members.iter().map(|&i| rows[i].as_slice());
            let aggs: Vec<(&Expr, Option<Term>)> = agg_exprs
                .iter()
                .map(|e| match e {
                    Expr::Aggregate(a) => (*e, expr::aggregate(a, member_rows())),
                    _ => unreachable!(),
                })
                .collect();
            let keys: Vec<(&Expr, Option<Term>)> = q
                .group_by
                .iter()
                .map(|k| &k.expr)
                .zip(key.iter().cloned())
                .collect();
            let mut base = vec![None; q.vars.len()];
            for (k, val) in q.group_by.iter().zip(&key) {
                if let Expr::Var(v) = k.expr {
                    base[v] = val.clone();
                }
                if let Some(alias) = k.alias {
                    base[alias] = val.clone();
                }
            }
            let mut env = GroupEnv {
                base,
                keys: &keys,
                aggs: &aggs,
            };
            for item in items {
                if item.expr != Expr::Var(item.var) {
                    env.base[item.var] = expr::eval(&item.expr, &env);
                }
            }
            if !q.having.iter().all(|h| expr::passes(h, &env)) {
                continue;
            }
            let order = q
                .order_by
                .iter()
                .map(|k| expr::eval(&k.expr, &env))
                .collect();
            solved.push((env.base, order));
        }
    } else {
        for mut r in rows {
            for item in items {
                if item.expr != Expr::Var(item.var) {
                    r[item.var] = expr::eval(&item.expr, &r);
                }
            }
            let order = q.order_by.iter().map(|k| expr::eval(&k.expr, &r)).collect();
            solved.push((r, order));
        }
    }

    let columns = q.columns();
    let project = |r: &Row| -> Row { columns.iter().map(|(_, v)| r[*v].clone()).collect() };
    let mut projected: Vec<(Row, Vec<Option<Term>>)> =
        solved.into_iter().map(|(r, o)| (project(&r), o)).collect();
    if !q.order_by.is_empty() {
        projected.sort_by(|(ra, a), (rb, b)| {
            for ((x, y), key) in a.iter().zip(b).zip(&q.order_by) {
                let ord = order_cmp(x.as_ref(), y.as_ref());
                let ord = if key.descending { ord.reverse() } else { ord };
                if ord != Ordering::Equal {
                    return ord;
                }
            }
            render_cmp(ra, rb)
        });
    }
    let mut out: Vec<Row> = projected.into_iter().map(|(r, _)| r).collect();
    if q.distinct {
        let mut seen = std::collections::HashSet::new();
        out.retain(|r| seen.insert(r.clone()));
    }
    let offset = q.offset.unwrap_or(0).min(out.len());
    out.drain(..offset);
    if let Some(limit) = q.limit {
        out.truncate(limit);
    }
    (columns.into_iter().map(|(n, _)| n).collect(), out)
}

/// Join order, index choice and operator per group, for debugging.
pub fn explain(query: &Query, store: &GraphStore, registry: &ServiceRegistry) -> String {
    let ev = Evaluator {
        registry,
        options: EvalOptions::default(),
    };
    let mut out = String::new();
    let cols: Vec<String> = query
        .columns()
        .into_iter()
        .map(|(n, _)| format!("?{n}"))
        .collect();
    let _ = writeln!(out, "select {}", cols.join(" "));
    ev.explain_group(
        &mut out,
        &query.vars,
        &query.where_clause,
        Some(store),
        1,
        &vec![false; query.vars.len()],
    );
    if !query.group_by.is_empty() || query.is_aggregated() {
        let _ = writeln!(out, "  aggregate: {} group key(s)", query.group_by.len());
    }
    if !query.order_by.is_empty() {
        let _ = writeln!(out, "  order by: {} key(s)", query.order_by.len());
    }
    if let Some(limit) = query.limit {
        let _ = writeln!(out, "  limit {limit}");
    }
    out
}
