use std::sync::Arc;

use owa_core::rdf::{parse, GraphStore, Term};
use owa_core::sparql::{
    evaluate, evaluate_with, explain, parse_query, run_query, EvalOptions, GroupElement, JoinOrder,
    QueryError, ResultTable, ServiceRegistry,
};
use owa_core::synth::queries::{
    BROOKLYN_LAWYERS, DRUGS_1987, LAKERS_ARTICLES_AND_TWEETS, MANDELA_PER_YEAR,
    OBAMA_POLITICIANS_2007, OBAMA_TWEET_SHARE_2016, OCCUPY_JOURNALISTS, POPULAR_LAKERS_TWEETS,
    SIMILAR_TO_GOLF_ARTICLE,
};
use owa_core::vocab;

const PREFIXES: &str = r#"
@prefix dc: <http://purl.org/dc/terms/> .
@prefix schema: <http://schema.org/> .
@prefix oae: <http://www.ics.forth.gr/isl/oae/core#> .
@prefix owa: <http://l3s.de/owa/core#> .
@prefix tw: <http://www.openlinksw.com/schemas/twitter#> .
@prefix dbr: <http://dbpedia.org/resource/> .
@prefix dbo: <http://dbpedia.org/ontology/> .
@prefix dbc: <http://dbpedia.org/resource/Category:> .
@prefix yago: <http://dbpedia.org/class/yago/> .
@prefix xsd: <http://www.w3.org/2001/XMLSchema#> .
@prefix nyt: <http://data.nytimes.com/> .
"#;

fn store(body: &str) -> GraphStore {
    GraphStore::from_triples(parse(&format!("{PREFIXES}{body}"), None).expect("fixture parses"))
}

const LAYER: &str = r#"
nyt:a1 dc:date "1989-06-05"^^xsd:date ; dc:title "Lawyers in court" ;
    schema:mentions _:a1e0 , _:a1e1 .
_:a1e0 oae:hasMatchedURI dbr:Alan_Dershowitz .
_:a1e1 oae:hasMatchedURI dbr:Cocaine .
nyt:a2 dc:date "1989-06-20"^^xsd:date ; dc:title "Trial report" ;
    schema:mentions _:a2e0 .
_:a2e0 oae:hasMatchedURI dbr:Ruth_Bader_Ginsburg .
nyt:a3 dc:date "1989-07-02"^^xsd:date ; dc:title "July piece" ;
    schema:mentions _:a3e0 .
_:a3e0 oae:hasMatchedURI dbr:Alan_Dershowitz .
nyt:m1 dc:date "1990-02-11"^^xsd:date ; dc:title "Release" ; schema:mentions _:m1e0 , _:m1e1 .
_:m1e0 oae:hasMatchedURI dbr:Nelson_Mandela .
_:m1e1 oae:hasMatchedURI dbr:Cocaine .
nyt:m2 dc:date "1990-05-01"^^xsd:date ; dc:title "Tour" ; schema:mentions _:m2e0 , _:m2e1 .
_:m2e0 oae:hasMatchedURI dbr:Nelson_Mandela .
_:m2e1 oae:hasMatchedURI dbr:Nelson_Mandela .
nyt:m3 dc:date "1991-03-03"^^xsd:date ; dc:title "Later" ; schema:mentions _:m3e0 .
_:m3e0 oae:hasMatchedURI dbr:Nelson_Mandela .
nyt:d1 dc:date "1987-04-01"^^xsd:date ; dc:title "Drugs" ; schema:mentions _:d1e0 , _:d1e1 .
_:d1e0 oae:hasMatchedURI dbr:Cocaine .
_:d1e1 oae:hasMatchedURI dbr:Heroin .
nyt:d2 dc:date "1987-09-01"^^xsd:date ; dc:title "More drugs" ; schema:mentions _:d2e0 .
_:d2e0 oae:hasMatchedURI dbr:Cocaine .
nyt:o1 dc:date "2007-07-01"^^xsd:date ; dc:title "Campaign" ; schema:mentions _:o1e0 , _:o1e1 , _:o1e2 .
_:o1e0 oae:hasMatchedURI dbr:Barack_Obama .
_:o1e1 oae:hasMatchedURI dbr:Hillary_Clinton .
_:o1e2 oae:hasMatchedURI dbr:John_McCain .
nyt:o2 dc:date "2007-08-01"^^xsd:date ; dc:title "Debate" ; schema:mentions _:o2e0 , _:o2e1 .
_:o2e0 oae:hasMatchedURI dbr:Barack_Obama .
_:o2e1 oae:hasMatchedURI dbr:Hillary_Clinton .
nyt:o3 dc:date "2007-10-01"^^xsd:date ; dc:title "Autumn" ; schema:mentions _:o3e0 , _:o3e1 .
_:o3e0 oae:hasMatchedURI dbr:Barack_Obama .
_:o3e1 oae:hasMatchedURI dbr:John_McCain .
nyt:9504E4D71530F932A35755C0A9619C8B63 dc:date "1995-04-01"^^xsd:date ; dc:title "Golf" ;
    schema:mentions _:g0e0 , _:g0e1 , _:g0e2 .
_:g0e0 oae:hasMatchedURI dbr:Tiger_Woods .
_:g0e1 oae:hasMatchedURI dbr:Augusta .
_:g0e2 oae:hasMatchedURI dbr:PGA_Tour .
nyt:g1 dc:date "1995-04-02"^^xsd:date ; dc:title "Golf too" ; schema:mentions _:g1e0 , _:g1e1 .
_:g1e0 oae:hasMatchedURI dbr:Tiger_Woods .
_:g1e1 oae:hasMatchedURI dbr:Augusta .
nyt:g2 dc:date "1995-04-03"^^xsd:date ; dc:title "Golf three" ; schema:mentions _:g2e0 .
_:g2e0 oae:hasMatchedURI dbr:PGA_Tour .
nyt:s1 dc:date "2016-07-04"^^xsd:date ; dc:title "Lakers" ; schema:mentions _:s1e0 .
_:s1e0 oae:hasMatchedURI dbr:Kobe_Bryant .
"#;

const TWEETS: &str = r#"
<http://twitter.com/u/status/1> a tw:Tweet ; dc:date "2016-07-10T10:00:00Z"^^xsd:dateTime ;
    tw:retweetCount 120 ; schema:text "Kobe!" ; schema:mentions _:t1e0 .
_:t1e0 oae:hasMatchedURI dbr:Kobe_Bryant .
<http://twitter.com/u/status/2> a tw:Tweet ; dc:date "2016-07-11T10:00:00Z"^^xsd:dateTime ;
    tw:retweetCount 3 ; schema:text "meh" ; schema:mentions _:t2e0 .
_:t2e0 oae:hasMatchedURI dbr:Kobe_Bryant .
<http://twitter.com/u/status/3> a tw:Tweet ; dc:date "2016-07-12T10:00:00Z"^^xsd:dateTime ;
    tw:retweetCount 60 ; schema:text "Obama speaks" ; schema:mentions _:t3e0 .
_:t3e0 oae:hasMatchedURI dbr:Barack_Obama .
<http://twitter.com/u/status/4> a tw:Tweet ; dc:date "2016-07-13T10:00:00Z"^^xsd:dateTime ;
    tw:retweetCount 0 ; schema:text "nothing" .
<http://twitter.com/u/status/5> a tw:Tweet ; dc:date "2016-08-01T10:00:00Z"^^xsd:dateTime ;
    tw:retweetCount 0 ; schema:text "Obama again" ; schema:mentions _:t5e0 .
_:t5e0 oae:hasMatchedURI dbr:Barack_Obama .
"#;

const KB: &str = r#"
dbr:Alan_Dershowitz dc:subject dbc:New_York_lawyers ; dbo:birthPlace dbr:Brooklyn ;
    dbo:birthDate "1938-09-01"^^xsd:date ; dbo:abstract "avocat"@fr , "lawyer"@en .
dbr:Ruth_Bader_Ginsburg dc:subject dbc:New_York_lawyers ; dbo:birthPlace dbr:Brooklyn .
dbr:Kobe_Bryant dc:subject dbc:Los_Angeles_Lakers_players .
dbr:Cocaine a dbo:Drug . dbr:Heroin a dbo:Drug .
dbr:Barack_Obama a dbo:Politician . dbr:Hillary_Clinton a dbo:Politician . dbr:John_McCain a dbo:Politician .
dbr:Alan_Dershowitz a yago:Journalist110224578 .
"#;

fn registry() -> ServiceRegistry {
    let mut r = ServiceRegistry::new();
    r.register(vocab::DBPEDIA_SPARQL, Arc::new(store(KB)));
    r
}

fn layer() -> GraphStore {
    store(&format!("{LAYER}{TWEETS}"))
}

fn run(q: &str) -> ResultTable {
    run_query(q, &layer(), &registry()).unwrap_or_else(|e| panic!("{e}\n{q}"))
}

fn strings(t: &ResultTable) -> Vec<Vec<String>> {
    t.string_rows()
}

#[test]
fn integration_query_with_optional_service() {
    let t = run(BROOKLYN_LAWYERS);
    assert_eq!(
        t.columns,
        ["article", "title", "date", "nylawyer", "bdate", "abstr"]
    );
    let rows = strings(&t);
    assert_eq!(rows.len(), 2);
    assert_eq!(rows[0][0], "http://data.nytimes.com/a1");
    assert_eq!(rows[0][4], "1938-09-01");
    assert_eq!(rows[0][5], "avocat");
    // Ginsburg has no birth date in the KB: optional columns stay unbound
    assert_eq!(rows[1][3], format!("{}Ruth_Bader_Ginsburg", vocab::DBR));
    assert_eq!(rows[1][4], "");
}

#[test]
fn popular_tweets_filter_on_datetime_and_count() {
    let rows = strings(&run(POPULAR_LAKERS_TWEETS));
    assert_eq!(
        rows,
        vec![vec![
            "Kobe!".to_string(),
            "120".into(),
            "2016-07-10T10:00:00Z".into(),
            format!("{}Kobe_Bryant", vocab::DBR),
        ]]
    );
}

#[test]
fn cross_layer_join_shares_the_date_term() {
    // article dates are xsd:date and tweet dates xsd:dateTime, so no article
    // joins a tweet; ?article is untyped, though, and each tweet about a
    // player joins itself
    let rows = strings(&run(LAKERS_ARTICLES_AND_TWEETS));
    let kobe = format!("{}Kobe_Bryant", vocab::DBR);
    assert_eq!(
        rows,
        vec![
            vec![kobe.clone(), "http://twitter.com/u/status/1".to_string()],
            vec![kobe, "http://twitter.com/u/status/2".to_string()],
        ]
    );
    let tweets_only = store(TWEETS);
    let articles_only = store(LAYER);
    assert!(
        run_query(LAKERS_ARTICLES_AND_TWEETS, &articles_only, &registry())
            .unwrap()
            .is_empty()
    );
    assert_eq!(
        strings(&run_query(LAKERS_ARTICLES_AND_TWEETS, &tweets_only, &registry()).unwrap()),
        rows
    );
}

#[test]
fn most_discussed_journalists_count_pages() {
    let layer = store(
        r#"
<http://ex.org/p> a owa:ArchivedDocument ; dc:hasVersion <http://ex.org/v1> , <http://ex.org/v2> , <http://ex.org/v3> .
<http://ex.org/v1> schema:mentions _:x1 . _:x1 oae:hasMatchedURI dbr:Alan_Dershowitz .
<http://ex.org/v2> schema:mentions _:x2 . _:x2 oae:hasMatchedURI dbr:Alan_Dershowitz .
<http://ex.org/v3> schema:mentions _:x3 . _:x3 oae:hasMatchedURI dbr:Alan_Dershowitz .
<http://ex.org/q> a owa:ArchivedDocument ; dc:hasVersion <http://ex.org/w1> .
<http://ex.org/w1> schema:mentions _:y1 . _:y1 oae:hasMatchedURI dbr:Alan_Dershowitz .
"#,
    );
    let t = run_query(OCCUPY_JOURNALISTS, &layer, &registry()).unwrap();
    assert_eq!(
        strings(&t),
        vec![vec![
            format!("{}Alan_Dershowitz", vocab::DBR),
            "2".to_string()
        ]]
    );
}

#[test]
fn yearly_counts_group_by_expression_alias() {
    // Mandela: two articles in 1990 (one mentions him twice), one in 1991
    let t = run(MANDELA_PER_YEAR);
    assert_eq!(t.columns, ["year", "num"]);
    assert_eq!(strings(&t), vec![vec!["1990", "2"], vec!["1991", "1"]]);
}

#[test]
fn drug_query_compares_year_with_string() {
    let rows = strings(&run(DRUGS_1987));
    assert_eq!(
        rows,
        vec![
            vec![format!("{}Cocaine", vocab::DBR), "2".to_string()],
            vec![format!("{}Heroin", vocab::DBR), "1".to_string()],
        ]
    );
}

#[test]
fn cooccurrence_excludes_seed() {
    let rows = strings(&run(OBAMA_POLITICIANS_2007));
    assert_eq!(
        rows,
        vec![
            vec![format!("{}Hillary_Clinton", vocab::DBR), "2".to_string()],
            vec![format!("{}John_McCain", vocab::DBR), "1".to_string()],
        ]
    );
    assert!(rows.iter().all(|r| !r[0].ends_with("Barack_Obama")));
}

#[test]
fn monthly_popularity_ratio() {
    let t = run_query(OBAMA_TWEET_SHARE_2016, &store(TWEETS), &registry()).unwrap();
    assert_eq!(t.columns.len(), 2);
    assert_eq!(t.columns[0], "month");
    // July: 4 tweets, 1 about Obama; August: 1 of 1
    let rows = strings(&t);
    assert_eq!(rows, vec![vec!["7", "0.25"], vec!["8", "1.0"]]);
    let v = t.rows[0][1].as_ref().unwrap();
    assert_eq!(v.as_literal().unwrap().datatype(), vocab::XSD_DOUBLE);
}

#[test]
fn similar_documents_by_common_entities() {
    let rows = strings(&run(SIMILAR_TO_GOLF_ARTICLE));
    assert_eq!(
        rows,
        vec![
            vec!["http://data.nytimes.com/g1".to_string(), "2".into()],
            vec!["http://data.nytimes.com/g2".to_string(), "1".into()]
        ]
    );
}

#[test]
fn mandela_fixture_matches_brute_force_count() {
    let s = layer();
    let mentions = Term::iri(vocab::SCHEMA_MENTIONS);
    let matched = Term::iri(vocab::OAE_HAS_MATCHED_URI);
    let date = Term::iri(vocab::DCTERMS_DATE);
    let target = Term::iri(format!("{}Nelson_Mandela", vocab::DBR));
    let mut per_year =
        std::collections::BTreeMap::<String, std::collections::BTreeSet<Term>>::new();
    for t in s.iter().filter(|t| t.predicate == mentions) {
        if s.objects_of(&t.object, &matched).contains(&target) {
            for d in s.objects_of(&t.subject, &date) {
                per_year
                    .entry(d.value_str()[..4].to_string())
                    .or_default()
                    .insert(t.subject.clone());
            }
        }
    }
    let expected: Vec<Vec<String>> = per_year
        .into_iter()
        .map(|(y, a)| vec![y, a.len().to_string()])
        .collect();
    assert_eq!(strings(&run(MANDELA_PER_YEAR)), expected);
}

#[test]
fn parse_captures_listing_constructs() {
    let q = parse_query(MANDELA_PER_YEAR).unwrap();
    assert_eq!(q.group_by.len(), 1);
    assert_eq!(
        q.group_by[0].alias.map(|v| q.var_name(v).to_string()),
        Some("year".to_string())
    );
    let q = parse_query(BROOKLYN_LAWYERS).unwrap();
    let service = q.where_clause.elements.iter().find_map(|e| match e {
        GroupElement::Service { iri, group, .. } => Some((iri.clone(), group.clone())),
        _ => None,
    });
    let (iri, group) = service.expect("service block");
    assert_eq!(iri, vocab::DBPEDIA_SPARQL);
    assert!(group
        .elements
        .iter()
        .any(|e| matches!(e, GroupElement::Optional(_))));
}

#[test]
fn union_is_rejected_with_position() {
    let err = parse_query("SELECT * WHERE { ?s ?p ?o } UNION { ?s ?p ?o }").unwrap_err();
    match err {
        QueryError::Syntax { line, column, .. } => assert_eq!((line, column), (1, 29)),
        other => panic!("{other:?}"),
    }
}

#[test]
fn unregistered_service_is_an_error() {
    let q = parse_query("SELECT ?x WHERE { SERVICE <http://nowhere.example/sparql> { ?x ?p ?o } }")
        .unwrap();
    assert_eq!(
        evaluate(&q, &layer(), &ServiceRegistry::new()),
        Err(QueryError::UnregisteredService(
            "http://nowhere.example/sparql".into()
        ))
    );
    let q = parse_query("SELECT ?s WHERE { ?s dc:title \"Golf\" SERVICE SILENT <http://nowhere.example/sparql> { ?x ?p ?o } }")
        .unwrap();
    assert_eq!(
        evaluate(&q, &layer(), &ServiceRegistry::new())
            .unwrap()
            .len(),
        1
    );
}

#[test]
fn registration_is_idempotent_by_iri() {
    let mut r = registry();
    r.register(vocab::DBPEDIA_SPARQL, Arc::new(store(KB)));
    assert_eq!(r.iris().count(), 1);
    assert_eq!(
        strings(&run_query(DRUGS_1987, &layer(), &r).unwrap()),
        strings(&run(DRUGS_1987))
    );
}

#[test]
fn explain_lists_patterns_in_chosen_order() {
    let q = parse_query(MANDELA_PER_YEAR).unwrap();
    let plan = explain(&q, &layer(), &registry());
    let lines: Vec<&str> = plan
        .lines()
        .filter(|l| l.trim_start().starts_with(char::is_numeric))
        .collect();
    assert_eq!(lines.len(), 3, "{plan}");
    // the pattern with a constant object is the most selective start
    assert!(lines[0].contains("Nelson_Mandela"), "{plan}");
    assert!(plan.contains("POS") || plan.contains("OSP"), "{plan}");
}

#[test]
fn join_order_does_not_change_results() {
    let s = layer();
    let r = registry();
    for text in [
        BROOKLYN_LAWYERS,
        POPULAR_LAKERS_TWEETS,
        MANDELA_PER_YEAR,
        DRUGS_1987,
        OBAMA_POLITICIANS_2007,
        OBAMA_TWEET_SHARE_2016,
        SIMILAR_TO_GOLF_ARTICLE,
    ] {
        let q = parse_query(text).unwrap();
        let base = evaluate_with(
            &q,
            &s,
            &r,
            EvalOptions {
                join_order: JoinOrder::Written,
            },
        )
        .unwrap();
        for seed in 0..8 {
            let t = evaluate_with(
                &q,
                &s,
                &r,
                EvalOptions {
                    join_order: JoinOrder::Shuffled(seed),
                },
            )
            .unwrap();
            assert_eq!(t, base, "seed {seed}\n{text}");
        }
        assert_eq!(evaluate(&q, &s, &r).unwrap(), base);
    }
}

#[test]
fn limit_keeps_prefix_of_ordered_result() {
    let s = layer();
    let full = run_query(
        "SELECT ?a ?d WHERE { ?a dc:date ?d } ORDER BY DESC(?d)",
        &s,
        &registry(),
    )
    .unwrap();
    for k in 0..full.len() + 2 {
        let t = run_query(
            &format!("SELECT ?a ?d WHERE {{ ?a dc:date ?d }} ORDER BY DESC(?d) LIMIT {k}"),
            &s,
            &registry(),
        )
        .unwrap();
        assert_eq!(t.rows[..], full.rows[..k.min(full.len())]);
    }
}

#[test]
fn type_errors_in_filters_drop_rows() {
    let t = run("SELECT ?a WHERE { ?a dc:title ?t FILTER(?t > 3) }");
    assert!(t.is_empty());
}

#[test]
fn empty_solutions_give_empty_aggregate_table() {
    let t = run("SELECT (COUNT(?a) AS ?n) WHERE { ?a dc:title \"nope\" }");
    assert!(t.is_empty());
    let t = run("SELECT (COUNT(?a) AS ?n) WHERE { ?a dc:title \"Golf\" }");
    assert_eq!(strings(&t), vec![vec!["1"]]);
}

#[test]
fn csv_rendering_has_header() {
    let csv = run(MANDELA_PER_YEAR).to_csv();
    assert_eq!(csv, "year,num\n1990,2\n1991,1\n");
}

#[test]
fn having_directly_after_group_key() {
    let q = parse_query(
        "SELECT ?d (COUNT(?m) AS ?n) WHERE { ?d schema:mentions ?m } GROUP BY ?d HAVING(COUNT(?m) > 1) ORDER BY ?d",
    )
    .unwrap();
    assert_eq!(q.group_by.len(), 1);
    assert_eq!(q.having.len(), 1);
    assert_eq!(q.order_by.len(), 1);
}
