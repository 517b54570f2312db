use std::collections::BTreeSet;

use proptest::prelude::*;

use owa_core::layer::serialize_layer;
use owa_core::rdf::{parse, GraphStore, Term, Triple};
use owa_core::vocab;

fn iri_term() -> impl Strategy<Value = Term> {
    let ns = prop::sample::select(vec![
        vocab::DBR,
        vocab::SCHEMA,
        vocab::OAE,
        vocab::DCTERMS,
        "http://example.org/x/",
        "http://web.archive.org/web/20111101000000/http://occupy.example/",
    ]);
    (ns, "[A-Za-z0-9_()%.,:-]{0,12}").prop_map(|(ns, local)| Term::iri(format!("{ns}{local}")))
}

fn literal_term() -> impl Strategy<Value = Term> {
    let text = "(\\PC|[\"\\\\\n\r\t]){0,16}";
    prop_oneof![
        text.prop_map(Term::string),
        (text, "[a-z]{2}(-[a-z]{2})?").prop_map(|(t, l)| Term::lang_string(t, l)),
        any::<i64>().prop_map(Term::integer),
        (-1e12f64..1e12).prop_map(Term::double),
        (1980i32..2030, 1u32..13, 1u32..29)
            .prop_map(|(y, m, d)| Term::typed(format!("{y:04}-{m:02}-{d:02}"), vocab::XSD_DATE)),
        (
            text,
            prop::sample::select(vec![vocab::XSD_DATETIME, "http://example.org/dt"])
        )
            .prop_map(|(t, dt)| Term::typed(t, dt)),
    ]
}

fn blank_term() -> impl Strategy<Value = Term> {
    "[a-z][a-z0-9]{0,6}".prop_map(Term::blank)
}

fn triple() -> impl Strategy<Value = Triple> {
    let subject = prop_oneof![3 => iri_term(), 1 => blank_term()];
    let object = prop_oneof![2 => iri_term(), 1 => blank_term(), 3 => literal_term()];
    (subject, iri_term(), object).prop_map(|(s, p, o)| Triple::new(s, p, o))
}

/// Small term pools so that patterns hit.
fn dense_triple() -> impl Strategy<Value = Triple> {
    let node = || (0u8..6).prop_map(|i| Term::iri(format!("http://x.org/n{i}")));
    let pred = (0u8..3).prop_map(|i| Term::iri(format!("http://x.org/p{i}")));
    let obj = prop_oneof![node(), (0u8..3).prop_map(|i| Term::integer(i as i64))];
    (node(), pred, obj).prop_map(|(s, p, o)| Triple::new(s, p, o))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn serialize_then_parse_is_identity(triples in prop::collection::vec(triple(), 0..40)) {
        let text = serialize_layer(&triples, &vocab::layer_prefixes()).unwrap();
        let back: BTreeSet<Triple> = parse(&text, None).unwrap().into_iter().collect();
        let want: BTreeSet<Triple> = triples.into_iter().collect();
        prop_assert_eq!(back, want);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn serialization_ignores_insertion_order(mut triples in prop::collection::vec(triple(), 0..30), seed in any::<u64>()) {
        let prefixes = vocab::layer_prefixes();
        let a = serialize_layer(&triples, &prefixes).unwrap();
        let n = triples.len().max(1);
        triples.rotate_left(seed as usize % n);
        triples.reverse();
        prop_assert_eq!(a, serialize_layer(&triples, &prefixes).unwrap());
    }

    #[test]
    fn every_pattern_shape_agrees_with_a_scan(
        triples in prop::collection::vec(dense_triple(), 0..60),
        probe in dense_triple(),
        shape in 0u8..8,
    ) {
        let store = GraphStore::from_triples(triples.iter().cloned());
        let distinct: BTreeSet<Triple> = triples.into_iter().collect();
        prop_assert_eq!(store.len(), distinct.len());
        prop_assert!(store.indices_consistent());
        let s = (shape & 4 != 0).then_some(&probe.subject);
        let p = (shape & 2 != 0).then_some(&probe.predicate);
        let o = (shape & 1 != 0).then_some(&probe.object);
        let got: BTreeSet<Triple> = store.match_pattern(s, p, o).collect();
        let want: BTreeSet<Triple> = distinct
            .iter()
            .filter(|t| s.is_none_or(|x| *x == t.subject)
                && p.is_none_or(|x| *x == t.predicate)
                && o.is_none_or(|x| *x == t.object))
            .cloned()
            .collect();
        prop_assert_eq!(got, want);
    }
}
