//! Canned analyses over a semantic layer: entity popularity per month,
//! time-scoped co-occurrence, entity-overlap document similarity and top
//! entities of a KB class.
//!
//! Each analysis has a direct implementation over the store and a SPARQL
//! formulation; both give the same rows.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};

use chrono::{Datelike, NaiveDate};

use crate::rdf::value::{compare_terms, local_datetime, order_cmp};
use crate::rdf::{GraphStore, Term};
use crate::sparql::{run_query, QueryError, ResultTable, ServiceRegistry};
use crate::vocab;

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum AnalyticsError {
    #[error("unknown document: {0}")]
    UnknownDocument(String),
    #[error("document {0} is a blank node and cannot be named in a query")]
    UnnamedDocument(String),
    #[error(transparent)]
    Query(#[from] QueryError),
    #[error("unexpected query result: {0}")]
    BadResult(String),
}

/// An entity (or document) with a document count.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ranked {
    pub term: Term,
    pub count: u64,
}

/// Restricts candidate entities to instances of `class` in the store
/// registered as `service`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KbClass {
    pub service: String,
    pub class: String,
}

impl KbClass {
    pub fn dbpedia(class: impl Into<String>) -> Self {
        KbClass {
            service: vocab::DBPEDIA_SPARQL.to_string(),
            class: class.into(),
        }
    }

    fn members(&self, registry: &ServiceRegistry) -> Result<HashSet<Term>, QueryError> {
        let kb = registry
            .get(&self.service)
            .ok_or_else(|| QueryError::UnregisteredService(self.service.clone()))?;
        Ok(kb
            .subjects_with(&Term::iri(vocab::RDF_TYPE), &Term::iri(&self.class))
            .into_iter()
            .collect())
    }
}

/// Inclusive date range, compared like `?date >= "from"^^xsd:date`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DateRange {
    pub from: NaiveDate,
    pub to: NaiveDate,
}

impl DateRange {
    fn bound(d: NaiveDate) -> Term {
        Term::typed(d.format("%Y-%m-%d").to_string(), vocab::XSD_DATE)
    }

    pub fn contains(&self, date: &Term) -> bool {
        let ge = compare_terms(date, &Self::bound(self.from)).is_some_and(Ordering::is_ge);
        let le = compare_terms(date, &Self::bound(self.to)).is_some_and(Ordering::is_le);
        ge && le
    }

    fn filter(&self, var: &str) -> String {
        format!(
            "FILTER(?{var} >= \"{}\"^^xsd:date && ?{var} <= \"{}\"^^xsd:date)",
            self.from.format("%Y-%m-%d"),
            self.to.format("%Y-%m-%d")
        )
    }
}

fn iri(s: &str) -> String {
    format!("<{s}>")
}

/// Matched entity URIs per mentioning node.
fn mentions_by_doc(store: &GraphStore) -> HashMap<Term, BTreeSet<Term>> {
    let matched = Term::iri(vocab::OAE_HAS_MATCHED_URI);
    let mut out: HashMap<Term, BTreeSet<Term>> = HashMap::new();
    for t in store.match_pattern(None, Some(&Term::iri(vocab::SCHEMA_MENTIONS)), None) {
        let uris = store.objects_of(&t.object, &matched);
        out.entry(t.subject).or_default().extend(uris);
    }
    out
}

fn dates_of(store: &GraphStore, node: &Term) -> Vec<Term> {
    store.objects_of(node, &Term::iri(vocab::DCTERMS_DATE))
}

fn rank(counts: impl IntoIterator<Item = (Term, u64)>, k: usize) -> Vec<Ranked> {
    let mut v: Vec<Ranked> = counts
        .into_iter()
        .map(|(term, count)| Ranked { term, count })
        .collect();
    v.sort_by(|a, b| {
        b.count
            .cmp(&a.count)
            .then_with(|| order_cmp(Some(&a.term), Some(&b.term)))
    });
    v.truncate(k);
    v
}

/// Reads (term, count) rows from a two-column result.
pub fn ranked_from_table(table: &ResultTable) -> Result<Vec<Ranked>, AnalyticsError> {
    table
        .rows
        .iter()
        .map(|row| match row.as_slice() {
            [Some(term), Some(n)] => n
                .value_str()
                .parse()
                .map(|count| Ranked {
                    term: term.clone(),
                    count,
                })
                .map_err(|_| AnalyticsError::BadResult(format!("count {n}"))),
            _ => Err(AnalyticsError::BadResult(format!("row {row:?}"))),
        })
        .collect()
}

/// Month-bucketed popularity of `entity` in `year`: documents of the month
/// mentioning it over all dated documents of the month. Months without
/// documents are omitted.
pub fn popularity_series(store: &GraphStore, entity: &str, year: i32) -> Vec<(u32, f64)> {
    let target = Term::iri(entity);
    let mentions = mentions_by_doc(store);
    let mut all: BTreeMap<u32, HashSet<Term>> = BTreeMap::new();
    let mut hit: BTreeMap<u32, HashSet<Term>> = BTreeMap::new();
    for t in store.match_pattern(None, Some(&Term::iri(vocab::DCTERMS_DATE)), None) {
        let Some(dt) = local_datetime(&t.object) else {
            continue;
        };
        if dt.year() != year {
            continue;
        }
        all.entry(dt.month()).or_default().insert(t.subject.clone());
        if mentions
            .get(&t.subject)
            .is_some_and(|u| u.contains(&target))
        {
            hit.entry(dt.month()).or_default().insert(t.subject);
        }
    }
    all.into_iter()
        .map(|(m, docs)| {
            let n = hit.get(&m).map_or(0, HashSet::len);
            (m, n as f64 / docs.len() as f64)
        })
        .collect()
}

pub fn popularity_sparql(entity: &str, year: i32) -> String {
    let e = iri(entity);
    format!(
        "SELECT ?month (COALESCE(xsd:double(?cEnt), 0.0) / xsd:double(?cAll) AS ?popularity) WHERE {{
  {{ SELECT (month(?date) AS ?month) (COUNT(DISTINCT ?doc) AS ?cAll) WHERE {{
      ?doc dc:date ?date FILTER(year(?date) = {year})
    }} GROUP BY month(?date) }}
  OPTIONAL {{ SELECT (month(?date) AS ?month) (COUNT(DISTINCT ?doc) AS ?cEnt) WHERE {{
      ?doc dc:date ?date FILTER(year(?date) = {year}) .
      ?doc schema:mentions ?entity .
      ?entity oae:hasMatchedURI {e}
    }} GROUP BY month(?date) }}
}} ORDER BY ?month"
    )
}

pub fn popularity_from_table(table: &ResultTable) -> Result<Vec<(u32, f64)>, AnalyticsError> {
    table
        .rows
        .iter()
        .map(|row| match row.as_slice() {
            [Some(m), Some(v)] => match (m.value_str().parse(), v.value_str().parse()) {
                (Ok(m), Ok(v)) => Ok((m, v)),
                _ => Err(AnalyticsError::BadResult(format!("row {m} {v}"))),
            },
            _ => Err(AnalyticsError::BadResult(format!("row {row:?}"))),
        })
        .collect()
}

/// Entities co-occurring with `seed` in documents dated within `range`,
/// counted by distinct documents. The seed never appears in the result.
pub fn top_cooccurring(
    store: &GraphStore,
    registry: &ServiceRegistry,
    seed: &str,
    constraint: Option<&KbClass>,
    range: DateRange,
    k: usize,
) -> Result<Vec<Ranked>, QueryError> {
    let allowed = constraint.map(|c| c.members(registry)).transpose()?;
    let seed = Term::iri(seed);
    let mut counts: HashMap<Term, u64> = HashMap::new();
    for (doc, uris) in mentions_by_doc(store) {
        if !uris.contains(&seed) || !dates_of(store, &doc).iter().any(|d| range.contains(d)) {
            continue;
        }
        for u in uris {
            if u != seed && allowed.as_ref().is_none_or(|a| a.contains(&u)) {
                *counts.entry(u).or_default() += 1;
            }
        }
    }
    Ok(rank(counts, k))
}

pub fn cooccurring_sparql(
    seed: &str,
    constraint: Option<&KbClass>,
    range: DateRange,
    k: usize,
) -> String {
    let service = constraint
        .map(|c| {
            format!(
                "  SERVICE {} {{ ?candidate a {} }}\n",
                iri(&c.service),
                iri(&c.class)
            )
        })
        .unwrap_or_default();
    let seed = iri(seed);
    format!(
        "SELECT ?candidate (COUNT(DISTINCT ?doc) AS ?num) WHERE {{
{service}  ?doc dc:date ?date {filter} .
  ?doc schema:mentions ?seedMention .
  ?seedMention oae:hasMatchedURI {seed} .
  ?doc schema:mentions ?mention .
  ?mention oae:hasMatchedURI ?candidate FILTER(?candidate != {seed})
}} GROUP BY ?candidate ORDER BY DESC(?num) ?candidate LIMIT {k}",
        filter = range.filter("date")
    )
}

/// Documents ranked by the number of distinct entity URIs shared with `doc`.
pub fn similar_documents(
    store: &GraphStore,
    doc: &Term,
    k: usize,
) -> Result<Vec<Ranked>, AnalyticsError> {
    if store.match_pattern(Some(doc), None, None).next().is_none() {
        return Err(AnalyticsError::UnknownDocument(doc.to_nt()));
    }
    let mentions = mentions_by_doc(store);
    let Some(mine) = mentions.get(doc) else {
        return Ok(Vec::new());
    };
    let counts = mentions
        .iter()
        .filter(|(d, _)| *d != doc)
        .map(|(d, uris)| (d.clone(), uris.intersection(mine).count() as u64))
        .filter(|(_, n)| *n > 0);
    Ok(rank(counts, k))
}

pub fn similar_sparql(doc: &Term, k: usize) -> Result<String, AnalyticsError> {
    let d = match doc {
        Term::Iri(i) => iri(i),
        other => return Err(AnalyticsError::UnnamedDocument(other.to_nt())),
    };
    Ok(format!(
        "SELECT ?doc (COUNT(DISTINCT ?uri) AS ?common) WHERE {{
  {d} schema:mentions ?e1 .
  ?e1 oae:hasMatchedURI ?uri .
  ?doc schema:mentions ?e2 FILTER(?doc != {d})
  ?e2 oae:hasMatchedURI ?uri .
}} GROUP BY ?doc ORDER BY DESC(?common) ?doc LIMIT {k}"
    ))
}

/// True when the layer describes archived documents with versions.
pub fn is_versioned(store: &GraphStore) -> bool {
    store
        .match_pattern(None, Some(&Term::iri(vocab::DCTERMS_HAS_VERSION)), None)
        .next()
        .is_some()
}

/// Most discussed instances of a KB class within `range`. On versioned
/// layers the count is of archived documents, so several versions of one
/// page count once.
pub fn top_entities(
    store: &GraphStore,
    registry: &ServiceRegistry,
    class: &KbClass,
    range: DateRange,
    k: usize,
) -> Result<Vec<Ranked>, QueryError> {
    let allowed = class.members(registry)?;
    let mentions = mentions_by_doc(store);
    let mut docs: HashMap<Term, HashSet<Term>> = HashMap::new();
    let mut credit = |owner: &Term, node: &Term| {
        if !dates_of(store, node).iter().any(|d| range.contains(d)) {
            return;
        }
        for u in mentions.get(node).into_iter().flatten() {
            if allowed.contains(u) {
                docs.entry(u.clone()).or_default().insert(owner.clone());
            }
        }
    };
    if is_versioned(store) {
        let pages = store.subjects_with(
            &Term::iri(vocab::RDF_TYPE),
            &Term::iri(vocab::OWA_ARCHIVED_DOCUMENT),
        );
        for page in pages {
            for version in store.objects_of(&page, &Term::iri(vocab::DCTERMS_HAS_VERSION)) {
                credit(&page, &version);
            }
        }
    } else {
        for doc in mentions.keys() {
            credit(doc, doc);
        }
    }
    Ok(rank(docs.into_iter().map(|(u, d)| (u, d.len() as u64)), k))
}

pub fn top_entities_sparql(class: &KbClass, range: DateRange, k: usize, versioned: bool) -> String {
    let (count, body) = if versioned {
        (
            "?page",
            "  ?page a owa:ArchivedDocument ;\n        dc:hasVersion ?doc .\n",
        )
    } else {
        ("?doc", "")
    };
    format!(
        "SELECT ?entity (COUNT(DISTINCT {count}) AS ?num) WHERE {{
  SERVICE {service} {{ ?entity a {class} }}
{body}  ?doc dc:date ?date {filter} .
  ?doc schema:mentions ?mention .
  ?mention oae:hasMatchedURI ?entity .
}} GROUP BY ?entity ORDER BY DESC(?num) ?entity LIMIT {k}",
        service = iri(&class.service),
        class = iri(&class.class),
        filter = range.filter("date"),
    )
}

/// Runs a SPARQL formulation and reads it as a ranking.
pub fn run_ranked(
    text: &str,
    store: &GraphStore,
    registry: &ServiceRegistry,
) -> Result<Vec<Ranked>, AnalyticsError> {
    ranked_from_table(&run_query(text, store, registry)?)
}
