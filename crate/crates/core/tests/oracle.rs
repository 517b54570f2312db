//! The evaluator against the nested-loop reference on generated layers.

mod common;

use std::sync::OnceLock;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use common::naive::{self, Dataset};
use common::random_queries::{random_query, TEMPLATES};
use common::SmallLayers;
use owa_core::rdf::GraphStore;
use owa_core::sparql::{evaluate, parse_query, ServiceRegistry};
use owa_core::synth::queries;
use owa_core::vocab;

fn layers() -> &'static SmallLayers {
    static LAYERS: OnceLock<SmallLayers> = OnceLock::new();
    LAYERS.get_or_init(|| {
        let dir = tempfile::tempdir().expect("tempdir").keep();
        common::small_layers(&dir, 7)
    })
}

/// Fails with the query text when the two evaluators disagree.
fn agree(text: &str, store: &GraphStore, kb: &GraphStore) {
    let query = parse_query(text).unwrap_or_else(|e| panic!("{e}\n{text}"));
    let mut registry = ServiceRegistry::new();
    registry.register(vocab::DBPEDIA_SPARQL, std::sync::Arc::new(kb.clone()));
    let fast = evaluate(&query, store, &registry).expect("evaluates");
    let data = Dataset::new(store).with_service(vocab::DBPEDIA_SPARQL, kb);
    let (columns, rows) = naive::evaluate(&query, &data).expect("reference evaluates");
    assert_eq!(fast.columns, columns, "{text}");
    assert_eq!(
        naive::multiset(&fast.rows),
        naive::multiset(&rows),
        "{text}"
    );
}

#[test]
fn shipped_queries_match_reference() {
    let l = layers();
    for (name, layer, text) in queries::ALL {
        let store = l.for_layer(layer);
        assert!(store.len() <= 10_000, "{name}: {} triples", store.len());
        agree(text, &store, &l.kb);
    }
}

#[test]
fn random_queries_match_reference() {
    let l = layers();
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for (k, store) in [&l.news, &l.tweets, &l.warc].into_iter().enumerate() {
        for i in 0..TEMPLATES * 4 {
            let text = random_query(&mut rng, i + k, store, &l.kb);
            agree(&text, store, &l.kb);
        }
    }
}

#[test]
fn reference_handles_optional_and_empty_groups() {
    let store = common::store_of(
        r#"<http://x.org/a> <http://x.org/p> "1" .
<http://x.org/b> <http://x.org/p> "2" .
<http://x.org/a> <http://x.org/q> "z" ."#,
    );
    let kb = GraphStore::new();
    agree(
        "SELECT ?s ?v ?w WHERE { ?s <http://x.org/p> ?v OPTIONAL { ?s <http://x.org/q> ?w } }",
        &store,
        &kb,
    );
    agree(
        "SELECT (COUNT(*) AS ?n) WHERE { ?s <http://x.org/none> ?v }",
        &store,
        &kb,
    );
    agree(
        "SELECT ?s WHERE { ?s <http://x.org/p> ?v FILTER(?v > 1) }",
        &store,
        &kb,
    );
}
