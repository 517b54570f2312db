use std::sync::Arc;

use chrono::NaiveDate;
use owa_core::analytics::*;
use owa_core::rdf::{GraphStore, Term, Triple};
use owa_core::sparql::{run_query, QueryError, ServiceRegistry};
use owa_core::vocab;
use proptest::prelude::*;

const EX: &str = "http://example.org/";

fn ent(i: usize) -> String {
    format!("{}E{i}", vocab::DBR)
}

fn t(s: &Term, p: &str, o: Term) -> Triple {
    Triple::new(s.clone(), Term::iri(p), o)
}

/// A document node with a date and mentioned entity indices.
struct Doc {
    node: Term,
    date: Term,
    entities: Vec<usize>,
}

fn layer(docs: &[Doc]) -> GraphStore {
    let mut triples = Vec::new();
    for (d, doc) in docs.iter().enumerate() {
        triples.push(t(&doc.node, vocab::DCTERMS_DATE, doc.date.clone()));
        for (i, e) in doc.entities.iter().enumerate() {
            let m = Term::blank(format!("m{d}x{i}"));
            triples.push(t(&doc.node, vocab::SCHEMA_MENTIONS, m.clone()));
            triples.push(t(&m, vocab::OAE_HAS_MATCHED_URI, Term::iri(ent(*e))));
        }
    }
    GraphStore::from_triples(triples)
}

fn kb(typed: &[(usize, &str)]) -> ServiceRegistry {
    let triples = typed
        .iter()
        .map(|(e, class)| t(&Term::iri(ent(*e)), vocab::RDF_TYPE, Term::iri(*class)));
    let mut r = ServiceRegistry::new();
    r.register(
        vocab::DBPEDIA_SPARQL,
        Arc::new(GraphStore::from_triples(triples)),
    );
    r
}

fn date(s: &str) -> Term {
    Term::typed(s, vocab::XSD_DATE)
}

fn doc(name: &str, d: &str, entities: &[usize]) -> Doc {
    Doc {
        node: Term::iri(format!("{EX}{name}")),
        date: date(d),
        entities: entities.to_vec(),
    }
}

fn range(a: &str, b: &str) -> DateRange {
    DateRange {
        from: a.parse().unwrap(),
        to: b.parse().unwrap(),
    }
}

fn pairs(r: &[Ranked]) -> Vec<(String, u64)> {
    r.iter()
        .map(|x| (x.term.value_str().to_string(), x.count))
        .collect()
}

const POLITICIAN: &str = "http://dbpedia.org/ontology/Politician";

#[test]
fn popularity_half_and_zero() {
    let s = layer(&[
        doc("a", "2016-03-01", &[1]),
        doc("b", "2016-03-02", &[1, 2]),
        doc("c", "2016-03-03", &[2]),
        doc("d", "2016-03-04", &[]),
        doc("e", "2016-05-04", &[2]),
        doc("f", "2015-03-04", &[1]),
    ]);
    assert_eq!(
        popularity_series(&s, &ent(1), 2016),
        vec![(3, 0.5), (5, 0.0)]
    );
    assert_eq!(
        popularity_series(&s, &ent(9), 2016),
        vec![(3, 0.0), (5, 0.0)]
    );
    for e in [1, 9] {
        let table = run_query(
            &popularity_sparql(&ent(e), 2016),
            &s,
            &ServiceRegistry::new(),
        )
        .unwrap();
        assert_eq!(
            popularity_from_table(&table).unwrap(),
            popularity_series(&s, &ent(e), 2016)
        );
    }
}

#[test]
fn cooccurrence_counts_documents_and_excludes_seed() {
    let s = layer(&[
        doc("a", "2007-06-02", &[0, 1, 1]),
        doc("b", "2007-07-02", &[0, 1, 2]),
        doc("c", "2007-08-02", &[0, 1]),
        doc("d", "2007-12-02", &[0, 2]),
        doc("e", "2007-07-02", &[1, 2]),
    ]);
    let r = kb(&[(0, POLITICIAN), (1, POLITICIAN), (2, POLITICIAN)]);
    let c = KbClass::dbpedia(POLITICIAN);
    let got = top_cooccurring(
        &s,
        &r,
        &ent(0),
        Some(&c),
        range("2007-06-01", "2007-08-30"),
        5,
    )
    .unwrap();
    assert_eq!(pairs(&got), vec![(ent(1), 3), (ent(2), 1)]);
    let sparql = run_ranked(
        &cooccurring_sparql(&ent(0), Some(&c), range("2007-06-01", "2007-08-30"), 5),
        &s,
        &r,
    );
    assert_eq!(sparql.unwrap(), got);
    assert!(top_cooccurring(
        &s,
        &r,
        &ent(0),
        Some(&c),
        range("2007-06-01", "2007-08-30"),
        0
    )
    .unwrap()
    .is_empty());
    let err = top_cooccurring(
        &s,
        &ServiceRegistry::new(),
        &ent(0),
        Some(&c),
        range("2007-01-01", "2007-12-31"),
        5,
    );
    assert_eq!(
        err,
        Err(QueryError::UnregisteredService(
            vocab::DBPEDIA_SPARQL.into()
        ))
    );
}

#[test]
fn similar_documents_rank_by_shared_uris() {
    let s = layer(&[
        doc("a", "2000-01-01", &[1, 2, 2]),
        doc("b", "2000-01-01", &[1, 2, 3]),
        doc("c", "2000-01-01", &[1]),
        doc("z", "2000-01-01", &[]),
    ]);
    let a = Term::iri(format!("{EX}a"));
    let got = similar_documents(&s, &a, 5).unwrap();
    assert_eq!(
        pairs(&got),
        vec![(format!("{EX}b"), 2), (format!("{EX}c"), 1)]
    );
    assert_eq!(
        run_ranked(&similar_sparql(&a, 5).unwrap(), &s, &ServiceRegistry::new()).unwrap(),
        got
    );
    assert!(similar_documents(&s, &Term::iri(format!("{EX}z")), 5)
        .unwrap()
        .is_empty());
    assert!(matches!(
        similar_documents(&s, &Term::iri(format!("{EX}nope")), 5),
        Err(AnalyticsError::UnknownDocument(_))
    ));
}

#[test]
fn top_entities_count_pages_not_versions() {
    const DRUG: &str = "http://dbpedia.org/ontology/Drug";
    let page = Term::iri(format!("{EX}page"));
    let other = Term::iri(format!("{EX}other"));
    let mut docs = vec![
        doc("v0", "1987-03-01", &[1]),
        doc("w0", "1987-03-01", &[1, 2]),
    ];
    let mut extra = vec![t(
        &page,
        vocab::RDF_TYPE,
        Term::iri(vocab::OWA_ARCHIVED_DOCUMENT),
    )];
    extra.push(t(
        &other,
        vocab::RDF_TYPE,
        Term::iri(vocab::OWA_ARCHIVED_DOCUMENT),
    ));
    extra.push(t(
        &page,
        vocab::DCTERMS_HAS_VERSION,
        Term::iri(format!("{EX}v0")),
    ));
    extra.push(t(
        &other,
        vocab::DCTERMS_HAS_VERSION,
        Term::iri(format!("{EX}w0")),
    ));
    let r = kb(&[(1, DRUG), (2, DRUG)]);
    let c = KbClass::dbpedia(DRUG);
    let yr = range("1987-01-01", "1987-12-31");
    let build = |docs: &[Doc], extra: &[Triple]| {
        let mut s = layer(docs);
        s.extend(extra.iter().cloned());
        s
    };
    let before = top_entities(&build(&docs, &extra), &r, &c, yr, 10).unwrap();
    assert_eq!(pairs(&before), vec![(ent(1), 2), (ent(2), 1)]);
    // three more versions of the same page, all mentioning E1
    for i in 1..=3 {
        docs.push(doc(&format!("v{i}"), "1987-04-01", &[1]));
        extra.push(t(
            &page,
            vocab::DCTERMS_HAS_VERSION,
            Term::iri(format!("{EX}v{i}")),
        ));
    }
    let s = build(&docs, &extra);
    let after = top_entities(&s, &r, &c, yr, 10).unwrap();
    assert_eq!(after, before);
    assert_eq!(
        run_ranked(&top_entities_sparql(&c, yr, 10, true), &s, &r).unwrap(),
        after
    );
    let empty = top_entities(
        &s,
        &r,
        &KbClass::dbpedia("http://dbpedia.org/ontology/Nothing"),
        yr,
        10,
    )
    .unwrap();
    assert!(empty.is_empty());
}

#[test]
fn top_entities_on_flat_layer() {
    const DRUG: &str = "http://dbpedia.org/ontology/Drug";
    let s = layer(&[
        doc("a", "1987-01-01", &[1, 2]),
        doc("b", "1987-02-01", &[1]),
        doc("c", "1987-03-01", &[1, 3]),
        doc("d", "1988-03-01", &[2]),
    ]);
    let r = kb(&[(1, DRUG), (2, DRUG)]);
    let c = KbClass::dbpedia(DRUG);
    let got = top_entities(&s, &r, &c, range("1987-01-01", "1987-12-31"), 10).unwrap();
    assert_eq!(pairs(&got), vec![(ent(1), 3), (ent(2), 1)]);
    assert_eq!(
        run_ranked(
            &top_entities_sparql(&c, range("1987-01-01", "1987-12-31"), 10, false),
            &s,
            &r
        )
        .unwrap(),
        got
    );
}

fn arb_docs() -> impl Strategy<Value = Vec<(u32, u32, bool, Vec<usize>)>> {
    // (month, day, datetime?, entities)
    prop::collection::vec(
        (
            1u32..=12,
            1u32..=28,
            any::<bool>(),
            prop::collection::vec(0usize..6, 0..5),
        ),
        1..25,
    )
}

fn materialize(spec: &[(u32, u32, bool, Vec<usize>)]) -> Vec<Doc> {
    spec.iter()
        .enumerate()
        .map(|(i, (m, d, dt, ents))| {
            let lexical = NaiveDate::from_ymd_opt(2016, *m, *d)
                .unwrap()
                .format("%Y-%m-%d")
                .to_string();
            let date = if *dt {
                Term::typed(format!("{lexical}T12:00:00Z"), vocab::XSD_DATETIME)
            } else {
                date(&lexical)
            };
            Doc {
                node: Term::iri(format!("{EX}d{i}")),
                date,
                entities: ents.clone(),
            }
        })
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn analytics_equal_sparql(spec in arb_docs(), seed in 0usize..6, k in 0usize..6, from in 1u32..=12, len in 0u32..6) {
        let docs = materialize(&spec);
        let s = layer(&docs);
        let r = kb(&[(0, POLITICIAN), (2, POLITICIAN), (3, POLITICIAN), (5, POLITICIAN)]);
        let c = KbClass::dbpedia(POLITICIAN);
        let to = (from + len).min(12);
        let rg = DateRange {
            from: NaiveDate::from_ymd_opt(2016, from, 1).unwrap(),
            to: NaiveDate::from_ymd_opt(2016, to, 28).unwrap(),
        };

        let native = popularity_series(&s, &ent(seed), 2016);
        prop_assert!(native.iter().all(|(_, v)| (0.0..=1.0).contains(v)));
        let table = run_query(&popularity_sparql(&ent(seed), 2016), &s, &r).unwrap();
        prop_assert_eq!(popularity_from_table(&table).unwrap(), native);

        for constraint in [None, Some(&c)] {
            let native = top_cooccurring(&s, &r, &ent(seed), constraint, rg, k).unwrap();
            let seed_docs = docs.iter().filter(|d| d.entities.contains(&seed)).count() as u64;
            prop_assert!(native.iter().all(|x| x.count <= seed_docs && x.term.value_str() != ent(seed)));
            let sparql = run_ranked(&cooccurring_sparql(&ent(seed), constraint, rg, k), &s, &r).unwrap();
            prop_assert_eq!(sparql, native);
        }

        let first = &docs[0].node;
        let native = similar_documents(&s, first, k).unwrap();
        prop_assert_eq!(run_ranked(&similar_sparql(first, k).unwrap(), &s, &r).unwrap(), native);

        let native = top_entities(&s, &r, &c, rg, k).unwrap();
        prop_assert_eq!(run_ranked(&top_entities_sparql(&c, rg, k, false), &s, &r).unwrap(), native);
    }
}
