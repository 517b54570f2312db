//! Seeded random SELECT queries over a layer: basic graph patterns,
//! filters, OPTIONAL, SERVICE, subqueries and aggregates, with constants
//! sampled from the data so that most queries have answers.

use rand::seq::SliceRandom;
use rand::Rng;

use owa_core::rdf::{GraphStore, Term, Triple};
use owa_core::vocab;

pub const TEMPLATES: usize = 12;

fn nt(t: &Term) -> String {
    t.to_nt()
}

fn iri(s: &str) -> String {
    format!("<{s}>")
}

fn pick<'a, R: Rng>(rng: &mut R, triples: &'a [Triple]) -> &'a Triple {
    triples.choose(rng).expect("non-empty store")
}

fn with_predicate(store: &GraphStore, p: &str) -> Vec<Triple> {
    store
        .match_pattern(None, Some(&Term::iri(p)), None)
        .collect()
}

/// A date literal near the dates in the store.
fn date_bound<R: Rng>(rng: &mut R, dated: &[Triple]) -> String {
    let t = pick(rng, dated);
    let day = &t.object.value_str()[..10];
    format!("\"{day}\"^^<{}>", vocab::XSD_DATE)
}

/// Query number `i` of a run; the template cycles with `i` so every shape
/// appears, the constants come from `rng`.
pub fn random_query<R: Rng>(rng: &mut R, i: usize, store: &GraphStore, kb: &GraphStore) -> String {
    let all: Vec<Triple> = store.iter().collect();
    let dated = with_predicate(store, vocab::DCTERMS_DATE);
    let matched = with_predicate(store, vocab::OAE_HAS_MATCHED_URI);
    let mentions = with_predicate(store, vocab::SCHEMA_MENTIONS);
    let (date, mentions_p, matched_p) = (
        iri(vocab::DCTERMS_DATE),
        iri(vocab::SCHEMA_MENTIONS),
        iri(vocab::OAE_HAS_MATCHED_URI),
    );
    let cmp = ["<", "<=", ">", ">=", "=", "!="];
    let limit = rng.gen_range(1..=8);
    match i % TEMPLATES {
        0 => {
            let s = pick(rng, &all).subject.clone();
            let preds: Vec<Term> = store
                .match_pattern(Some(&s), None, None)
                .map(|t| t.predicate)
                .collect();
            let p1 = preds.choose(rng).unwrap();
            let p2 = preds.choose(rng).unwrap();
            format!(
                "SELECT ?s ?a ?b WHERE {{ ?s {} ?a . ?s {} ?b }}",
                nt(p1),
                nt(p2)
            )
        }
        1 => {
            let t = pick(rng, &mentions);
            let doc_p = store
                .match_pattern(Some(&t.subject), None, None)
                .map(|t| t.predicate)
                .collect::<Vec<_>>();
            format!(
                "SELECT ?d ?x ?u WHERE {{ ?d {} ?x . ?d {mentions_p} ?m . ?m {matched_p} ?u }}",
                nt(doc_p.choose(rng).unwrap())
            )
        }
        2 => {
            let op = cmp.choose(rng).unwrap();
            format!(
                "SELECT ?d ?u WHERE {{ ?d {date} ?date FILTER(?date {op} {}) ?d {mentions_p} ?m . ?m {matched_p} ?u }}",
                date_bound(rng, &dated)
            )
        }
        3 => {
            let distinct = if rng.gen_bool(0.5) { "DISTINCT " } else { "" };
            format!(
                "SELECT ?u (COUNT({distinct}?d) AS ?n) WHERE {{ ?d {mentions_p} ?m . ?m {matched_p} ?u }} \
                 GROUP BY ?u ORDER BY DESC(?n) ?u LIMIT {limit}"
            )
        }
        4 => {
            let s = pick(rng, &all).subject.clone();
            let subject = if s.is_blank() {
                "?s".to_string()
            } else {
                nt(&s)
            };
            format!("SELECT ?p ?o WHERE {{ {subject} ?p ?o FILTER(!isBlank(?o)) }}")
        }
        5 => {
            let t = pick(rng, &all);
            let test = ["isLiteral(?o)", "isIRI(?o)", "isNumeric(?o)", "bound(?o)"]
                .choose(rng)
                .unwrap();
            format!(
                "SELECT ?s ?o WHERE {{ ?s {} ?o FILTER({test}) }}",
                nt(&t.predicate)
            )
        }
        6 => {
            let types: Vec<Term> = with_predicate(store, vocab::RDF_TYPE)
                .into_iter()
                .map(|t| t.object)
                .collect();
            let class = types.choose(rng).unwrap();
            let opt = [
                vocab::DCTERMS_TITLE,
                vocab::SCHEMA_TEXT,
                vocab::OWL_SAME_AS,
                vocab::DCTERMS_FORMAT,
            ]
            .choose(rng)
            .unwrap();
            format!(
                "SELECT ?s ?t WHERE {{ ?s a {} OPTIONAL {{ ?s {} ?t }} }}",
                nt(class),
                iri(opt)
            )
        }
        7 => {
            let classes: Vec<Term> = kb
                .match_pattern(None, Some(&Term::iri(vocab::RDF_TYPE)), None)
                .map(|t| t.object)
                .collect();
            let class = classes.choose(rng).unwrap();
            format!(
                "SELECT ?d ?u WHERE {{ SERVICE {} {{ ?u a {} }} ?d {mentions_p} ?m . ?m {matched_p} ?u }}",
                iri(vocab::DBPEDIA_SPARQL),
                nt(class)
            )
        }
        8 => {
            let part = ["year", "month"].choose(rng).unwrap();
            format!(
                "SELECT ?k (COUNT(*) AS ?n) WHERE {{ ?d {date} ?date }} GROUP BY ({part}(?date) AS ?k) ORDER BY ?k"
            )
        }
        9 => {
            let t = pick(rng, &matched);
            format!(
                "SELECT DISTINCT ?p WHERE {{ ?m {matched_p} {} . ?d {mentions_p} ?m . ?d ?p ?o }}",
                nt(&t.object)
            )
        }
        10 => {
            let agg = ["MAX", "MIN", "SUM", "AVG"].choose(rng).unwrap();
            format!(
                "SELECT ?d ({agg}(?pos) AS ?v) (COUNT(?m) AS ?n) WHERE {{ ?d {mentions_p} ?m . ?m {} ?pos }} \
                 GROUP BY ?d HAVING(COUNT(?m) > {})",
                iri(vocab::OAE_POSITION),
                rng.gen_range(0..4)
            )
        }
        _ => {
            let k = rng.gen_range(1..5);
            let t = pick(rng, &matched);
            format!(
                "SELECT ?u ?n WHERE {{ {{ SELECT ?u (COUNT(?m) AS ?n) WHERE {{ ?m {matched_p} ?u }} GROUP BY ?u }} \
                 FILTER(?n >= {k} || ?u = {}) }}",
                nt(&t.object)
            )
        }
    }
}
