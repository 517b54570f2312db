use std::collections::HashSet;
use std::sync::Arc;

use chrono::NaiveDate;
use owa_core::eval::*;
use owa_core::rdf::{parse, GraphStore};
use owa_core::sparql::ServiceRegistry;

fn d(s: &str) -> NaiveDate {
    s.parse().unwrap()
}

fn doc(key: &str, date: &str, text: &str) -> SearchDoc {
    SearchDoc {
        key: key.into(),
        date: d(date),
        text: text.into(),
    }
}

const LAYER: &str = r#"
@prefix dc: <http://purl.org/dc/terms/> .
@prefix schema: <http://schema.org/> .
@prefix oae: <http://www.ics.forth.gr/isl/oae/core#> .
@prefix xsd: <http://www.w3.org/2001/XMLSchema#> .
<http://ex.org/d1> dc:date "1990-01-05"^^xsd:date ; schema:mentions _:a . _:a oae:hasMatchedURI <http://dbpedia.org/resource/X> .
<http://ex.org/d2> dc:date "1990-01-06"^^xsd:date ; schema:mentions _:b . _:b oae:hasMatchedURI <http://dbpedia.org/resource/X> .
<http://ex.org/d3> dc:date "1990-01-07"^^xsd:date .
"#;

fn need(id: u32, keywords: &str) -> InfoNeed {
    InfoNeed {
        id,
        description: "documents about X".into(),
        sparql: "SELECT DISTINCT ?article WHERE { ?article schema:mentions ?e . ?e oae:hasMatchedURI dbr:X }".into(),
        keywords: keywords.into(),
        date_from: d("1990-01-01"),
        date_to: d("1990-12-31"),
    }
}

fn docs() -> Vec<SearchDoc> {
    vec![
        doc("http://ex.org/d1", "1990-01-05", "x marks x"),
        doc("http://ex.org/d2", "1990-01-06", "nothing"),
        doc("http://ex.org/d3", "1990-01-07", "X here"),
    ]
}

fn store() -> GraphStore {
    GraphStore::from_triples(parse(LAYER, None).unwrap())
}

#[test]
fn keyword_baseline_ranking() {
    let docs = vec![
        doc("a", "2000-01-01", "golf golf golf"),
        doc("b", "2000-01-01", "Golf club"),
        doc("c", "2000-01-01", "tennis"),
        doc("d", "2001-01-01", "golf golf golf golf"),
    ];
    assert_eq!(
        keyword_search(&docs, "golf", d("2000-01-01"), d("2000-12-31")),
        ["a", "b"]
    );
    assert!(keyword_search(&docs, "cricket", d("2000-01-01"), d("2001-12-31")).is_empty());
    assert_eq!(
        keyword_search(&docs, "GOLF", d("1999-01-01"), d("2001-12-31"))[0],
        "d"
    );
}

#[test]
fn suite_metrics() {
    let mut j = JudgmentSet::default();
    j.labels
        .insert((1, "http://ex.org/d1".into()), Label::Relevant);
    j.labels
        .insert((1, "http://ex.org/d2".into()), Label::Irrelevant);
    j.labels
        .insert((1, "http://ex.org/d3".into()), Label::Relevant);
    let m = run_suite(
        &[need(1, "x")],
        &j,
        &store(),
        &ServiceRegistry::new(),
        &docs(),
    )
    .unwrap();
    assert_eq!(
        m[0],
        NeedMetrics {
            need: 1,
            sparql_hits: 2,
            sparql_relevant: 1,
            baseline_hits: 2,
            baseline_relevant_in_sparql: 1,
            baseline_relevant_not_in_sparql: 1,
        }
    );
    let empty = run_suite(
        &[need(1, "x")],
        &JudgmentSet::default(),
        &store(),
        &ServiceRegistry::new(),
        &docs(),
    )
    .unwrap();
    assert_eq!(
        (
            empty[0].sparql_hits,
            empty[0].sparql_relevant,
            empty[0].baseline_relevant_in_sparql
        ),
        (2, 0, 0)
    );
    let known: HashSet<String> = docs().into_iter().map(|d| d.key).collect();
    assert!(j.missing(&known).is_empty());
}

#[test]
fn syntax_errors_carry_the_need() {
    let mut bad = need(7, "x");
    bad.sparql = "SELECT ?a WHERE { ?a ".into();
    let err = run_suite(
        &[bad],
        &JudgmentSet::default(),
        &store(),
        &ServiceRegistry::new(),
        &docs(),
    )
    .unwrap_err();
    assert!(matches!(err, EvalError::Query { need: 7, .. }), "{err}");
}

#[test]
fn timing_layout() {
    let t = time_queries(
        &[need(1, "x"), need(2, "y")],
        &store(),
        &Arc::new(ServiceRegistry::new()),
        10,
    )
    .unwrap();
    let header = t.header();
    assert_eq!(header.len(), 12);
    assert_eq!(header[1], "R1");
    assert_eq!(header[10], "R10");
    assert_eq!(header[11], "Average (ms)");
    assert!(t.needs.iter().all(|n| n.stable && n.runs_ms.len() == 10));
    let csv = t.to_csv();
    assert_eq!(csv.lines().count(), 4);
    assert!(csv.lines().last().unwrap().starts_with("Average,"));

    let one = time_queries(&[need(1, "x")], &store(), &ServiceRegistry::new(), 1).unwrap();
    assert_eq!(one.needs[0].mean_ms, one.needs[0].runs_ms[0]);
}

#[test]
fn needs_and_judgments_files_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let needs = vec![need(1, "x"), need(2, "lawyers brooklyn")];
    write_needs(dir.path(), "needs.tsv", &needs).unwrap();
    assert_eq!(load_needs(&dir.path().join("needs.tsv")).unwrap(), needs);
    let mut j = JudgmentSet::default();
    j.labels
        .insert((1, "http://ex.org/d1".into()), Label::Relevant);
    j.labels
        .insert((2, "http://ex.org/d3".into()), Label::Irrelevant);
    std::fs::write(dir.path().join("j.tsv"), judgments_tsv(&j)).unwrap();
    assert_eq!(load_judgments(&dir.path().join("j.tsv")).unwrap(), j);
}
