//! Reference evaluator for differential tests.
//!
//! Textbook algebra over plain triple lists: every pattern is a full scan,
//! joins are nested loops, filters run once at the end of their group and
//! OPTIONAL is a left join with the group's filters as condition. Solutions
//! are maps keyed by variable name. Only scalar expressions go through the
//! library's expression evaluator; aggregates, grouping and ordering are
//! computed here.

#![allow(dead_code)]

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap, HashSet};

use owa_core::rdf::value::order_cmp;
use owa_core::rdf::{GraphStore, Term, Triple};
use owa_core::sparql::{
    eval_expr, passes, AggFunc, Aggregate, BinOp, Expr, GroupElement, GroupPattern, Projection,
    Query, TermPattern, TriplePattern,
};

type Solution = BTreeMap<String, Term>;

pub struct Dataset {
    pub default: Vec<Triple>,
    pub services: HashMap<String, Vec<Triple>>,
}

impl Dataset {
    pub fn new(store: &GraphStore) -> Dataset {
        Dataset {
            default: store.iter().collect(),
            services: HashMap::new(),
        }
    }

    pub fn with_service(mut self, iri: &str, store: &GraphStore) -> Dataset {
        self.services
            .insert(iri.to_string(), store.iter().collect());
        self
    }
}

/// Column names and rows of `q` over `data`. Unknown SERVICE IRIs are errors.
pub fn evaluate(
    q: &Query,
    data: &Dataset,
) -> Result<(Vec<String>, Vec<Vec<Option<Term>>>), String> {
    let sols = group(q, &q.where_clause, &data.default, data)?;
    Ok(finish(q, sols))
}

fn compatible(a: &Solution, b: &Solution) -> bool {
    a.iter().all(|(k, v)| b.get(k).is_none_or(|w| w == v))
}

fn merge(a: &Solution, b: &Solution) -> Solution {
    let mut m = a.clone();
    m.extend(b.iter().map(|(k, v)| (k.clone(), v.clone())));
    m
}

fn join(left: &[Solution], right: &[Solution]) -> Vec<Solution> {
    let mut out = Vec::new();
    for l in left {
        for r in right {
            if compatible(l, r) {
                out.push(merge(l, r));
            }
        }
    }
    out
}

fn scan(q: &Query, p: &TriplePattern, triples: &[Triple]) -> Vec<Solution> {
    let mut out = Vec::new();
    'triples: for t in triples {
        let mut sol = Solution::new();
        for (pat, term) in [
            (&p.subject, &t.subject),
            (&p.predicate, &t.predicate),
            (&p.object, &t.object),
        ] {
            match pat {
                TermPattern::Term(c) if c != term => continue 'triples,
                TermPattern::Term(_) => {}
                TermPattern::Var(v) => {
                    let name = q.vars[*v].clone();
                    match sol.get(&name) {
                        Some(prev) if prev != term => continue 'triples,
                        _ => {
                            sol.insert(name, term.clone());
                        }
                    }
                }
            }
        }
        out.push(sol);
    }
    out
}

/// The solution as a row over the query's variables.
fn row(q: &Query, s: &Solution) -> Vec<Option<Term>> {
    q.vars.iter().map(|n| s.get(n).cloned()).collect()
}

fn holds(q: &Query, e: &Expr, s: &Solution) -> bool {
    passes(e, &row(q, s))
}

fn group(
    q: &Query,
    g: &GroupPattern,
    triples: &[Triple],
    data: &Dataset,
) -> Result<Vec<Solution>, String> {
    let mut sols = vec![Solution::new()];
    let mut filters = Vec::new();
    for el in &g.elements {
        match el {
            GroupElement::Triple(p) => sols = join(&sols, &scan(q, p, triples)),
            GroupElement::Filter(f) => filters.push(f),
            GroupElement::Optional(og) => {
                let body = GroupPattern {
                    elements: og
                        .elements
                        .iter()
                        .filter(|e| !matches!(e, GroupElement::Filter(_)))
                        .cloned()
                        .collect(),
                };
                let conds: Vec<&Expr> = og.filters().collect();
                let right = group(q, &body, triples, data)?;
                let mut out = Vec::new();
                for l in &sols {
                    let ext: Vec<Solution> = right
                        .iter()
                        .filter(|r| compatible(l, r))
                        .map(|r| merge(l, r))
                        .filter(|m| conds.iter().all(|c| holds(q, c, m)))
                        .collect();
                    if ext.is_empty() {
                        out.push(l.clone());
                    } else {
                        out.extend(ext);
                    }
                }
                sols = out;
            }
            GroupElement::Service {
                iri,
                silent,
                group: sg,
            } => match data.services.get(iri) {
                Some(kb) => sols = join(&sols, &group(q, sg, kb, data)?),
                None if *silent => {}
                None => return Err(format!("unregistered service {iri}")),
            },
            GroupElement::Group(ng) => sols = join(&sols, &group(q, ng, triples, data)?),
            GroupElement::SubSelect(sub) => {
                let inner = group(sub, &sub.where_clause, triples, data)?;
                let (cols, rows) = finish(sub, inner);
                let right: Vec<Solution> = rows
                    .into_iter()
                    .map(|r| {
                        cols.iter()
                            .cloned()
                            .zip(r)
                            .filter_map(|(c, v)| Some((c, v?)))
                            .collect()
                    })
                    .collect();
                sols = join(&sols, &right);
            }
        }
    }
    sols.retain(|s| filters.iter().all(|f| holds(q, f, s)));
    Ok(sols)
}

fn aggregate(q: &Query, agg: &Aggregate, members: &[&Solution]) -> Option<Term> {
    let Some(arg) = &agg.arg else {
        let n = if agg.distinct {
            members.iter().collect::<HashSet<_>>().len()
        } else {
            members.len()
        };
        return Some(Term::integer(n as i64));
    };
    let mut values: Vec<Term> = members
        .iter()
        .filter_map(|s| eval_expr(arg, &row(q, s)))
        .collect();
    if agg.distinct {
        let mut seen = HashSet::new();
        values.retain(|v| seen.insert(v.clone()));
    }
    let sum = |values: &[Term]| {
        values.iter().try_fold(Term::integer(0), |acc, v| {
            let e = Expr::binary(BinOp::Add, Expr::Const(acc), Expr::Const(v.clone()));
            eval_expr(&e, &Vec::<Option<Term>>::new())
        })
    };
    match agg.func {
        AggFunc::Count => Some(Term::integer(values.len() as i64)),
        AggFunc::Sample => values.into_iter().next(),
        AggFunc::Min => values
            .into_iter()
            .min_by(|a, b| order_cmp(Some(a), Some(b))),
        AggFunc::Max => values
            .into_iter()
            .max_by(|a, b| order_cmp(Some(a), Some(b))),
        AggFunc::Sum => sum(&values),
        AggFunc::Avg if values.is_empty() => Some(Term::integer(0)),
        AggFunc::Avg => {
            let e = Expr::binary(
                BinOp::Div,
                Expr::Const(sum(&values)?),
                Expr::Const(Term::integer(values.len() as i64)),
            );
            eval_expr(&e, &Vec::<Option<Term>>::new())
        }
    }
}

/// Replaces precomputed sub-expressions by their values; a failed value
/// becomes a variable that is never bound.
fn substitute(e: &Expr, known: &[(&Expr, Option<Term>)], unbound: usize) -> Expr {
    if !matches!(e, Expr::Var(_) | Expr::Const(_)) {
        if let Some((_, v)) = known.iter().find(|(k, _)| *k == e) {
            return v.clone().map_or(Expr::Var(unbound), Expr::Const);
        }
    }
    let sub = |x: &Expr| Box::new(substitute(x, known, unbound));
    match e {
        Expr::Var(_) | Expr::Const(_) | Expr::Aggregate(_) => e.clone(),
        Expr::Not(x) => Expr::Not(sub(x)),
        Expr::Neg(x) => Expr::Neg(sub(x)),
        Expr::Cast(dt, x) => Expr::Cast(dt.clone(), sub(x)),
        Expr::Binary(op, a, b) => Expr::Binary(*op, sub(a), sub(b)),
        Expr::Call(f, args) => Expr::Call(
            *f,
            args.iter().map(|a| substitute(a, known, unbound)).collect(),
        ),
    }
}

fn aggregates_in(e: &Expr, out: &mut Vec<Expr>) {
    e.walk(&mut |x| {
        if matches!(x, Expr::Aggregate(_)) && !out.contains(x) {
            out.push(x.clone());
        }
    });
}

fn finish(q: &Query, sols: Vec<Solution>) -> (Vec<String>, Vec<Vec<Option<Term>>>) {
    let width = q.vars.len();
    let items = match &q.projection {
        Projection::Items(items) => items.as_slice(),
        Projection::All(_) => &[],
    };
    // full rows over q.vars plus an always-unbound slot, with order keys
    let mut solved: Vec<(Vec<Option<Term>>, Vec<Option<Term>>)> = Vec::new();
    if q.is_aggregated() {
        let mut aggs = Vec::new();
        for i in items {
            aggregates_in(&i.expr, &mut aggs);
        }
        for h in &q.having {
            aggregates_in(h, &mut aggs);
        }
        for k in &q.order_by {
            aggregates_in(&k.expr, &mut aggs);
        }
        let mut groups: Vec<(Vec<Option<Term>>, Vec<&Solution>)> = Vec::new();
        for s in &sols {
            let r = row(q, s);
            let key: Vec<Option<Term>> =
                q.group_by.iter().map(|k| eval_expr(&k.expr, &r)).collect();
            match groups.iter_mut().find(|(k, _)| *k == key) {
                Some((_, m)) => m.push(s),
                None => groups.push((key, vec![s])),
            }
        }
        for (key, members) in groups {
            let mut known: Vec<(&Expr, Option<Term>)> = aggs
                .iter()
                .map(|a| match a {
                    Expr::Aggregate(agg) => (a, aggregate(q, agg, &members)),
                    _ => unreachable!(),
                })
                .collect();
            known.extend(q.group_by.iter().map(|k| &k.expr).zip(key.iter().cloned()));
            let mut base = vec![None; width + 1];
            for (k, v) in q.group_by.iter().zip(&key) {
                if let Expr::Var(var) = k.expr {
                    base[var] = v.clone();
                }
                if let Some(alias) = k.alias {
                    base[alias] = v.clone();
                }
            }
            let eval =
                |e: &Expr, base: &Vec<Option<Term>>| eval_expr(&substitute(e, &known, width), base);
            for item in items {
                if item.expr != Expr::Var(item.var) {
                    base[item.var] = eval(&item.expr, &base);
                }
            }
            if !q.having.iter().all(|h| {
                let s: Solution = q
                    .vars
                    .iter()
                    .cloned()
                    .zip(base.iter().cloned())
                    .filter_map(|(n, v)| Some((n, v?)))
                    .collect();
                holds(q, &substitute(h, &known, width), &s)
            }) {
                continue;
            }
            let order = q.order_by.iter().map(|k| eval(&k.expr, &base)).collect();
            solved.push((base, order));
        }
    } else {
        for s in &sols {
            let mut r = row(q, s);
            for item in items {
                if item.expr != Expr::Var(item.var) {
                    r[item.var] = eval_expr(&item.expr, &r);
                }
            }
            let order = q.order_by.iter().map(|k| eval_expr(&k.expr, &r)).collect();
            solved.push((r, order));
        }
    }
    let columns = q.columns();
    let mut rows: Vec<(Vec<Option<Term>>, Vec<Option<Term>>)> = solved
        .into_iter()
        .map(|(r, o)| (columns.iter().map(|(_, v)| r[*v].clone()).collect(), o))
        .collect();
    if !q.order_by.is_empty() {
        let rendered = |r: &[Option<Term>]| -> Vec<Option<String>> {
            r.iter().map(|t| t.as_ref().map(Term::to_nt)).collect()
        };
        rows.sort_by(|(ra, a), (rb, b)| {
            for ((x, y), k) in a.iter().zip(b).zip(&q.order_by) {
                let o = order_cmp(x.as_ref(), y.as_ref());
                let o = if k.descending { o.reverse() } else { o };
                if o != Ordering::Equal {
                    return o;
                }
            }
            rendered(ra).cmp(&rendered(rb))
        });
    }
    let mut out: Vec<Vec<Option<Term>>> = rows.into_iter().map(|(r, _)| r).collect();
    if q.distinct {
        let mut seen = HashSet::new();
        out.retain(|r| seen.insert(r.clone()));
    }
    let offset = q.offset.unwrap_or(0).min(out.len());
    out.drain(..offset);
    if let Some(limit) = q.limit {
        out.truncate(limit);
    }
    (columns.into_iter().map(|(n, _)| n).collect(), out)
}

/// Rows rendered and sorted, for multiset comparison.
pub fn multiset(rows: &[Vec<Option<Term>>]) -> Vec<Vec<String>> {
    let mut v: Vec<Vec<String>> = rows
        .iter()
        .map(|r| {
            r.iter()
                .map(|t| t.as_ref().map_or(String::new(), Term::to_nt))
                .collect()
        })
        .collect();
    v.sort();
    v
}
