//! Namespace IRIs and well-known terms used by semantic layers.

use std::collections::BTreeMap;

pub const RDF: &str = "http://www.w3.org/1999/02/22-rdf-syntax-ns#";
pub const RDFS: &str = "http://www.w3.org/2000/01/rdf-schema#";
pub const XSD: &str = "http://www.w3.org/2001/XMLSchema#";
pub const OWL: &str = "http://www.w3.org/2002/07/owl#";
pub const OWA: &str = "http://l3s.de/owa/core#";
pub const OAE: &str = "http://www.ics.forth.gr/isl/oae/core#";
pub const OA: &str = "http://www.w3.org/ns/oa#";
pub const DCTERMS: &str = "http://purl.org/dc/terms/";
pub const SCHEMA: &str = "http://schema.org/";
pub const TW: &str = "http://www.openlinksw.com/schemas/twitter#";
pub const DBR: &str = "http://dbpedia.org/resource/";
pub const DBO: &str = "http://dbpedia.org/ontology/";
pub const DBC: &str = "http://dbpedia.org/resource/Category:";
pub const YAGO: &str = "http://dbpedia.org/class/yago/";
pub const FOAF: &str = "http://xmlns.com/foaf/0.1/";

/// Service IRI under which the local DBpedia stand-in is mounted.
pub const DBPEDIA_SPARQL: &str = "http://dbpedia.org/sparql";

pub const RDF_TYPE: &str = "http://www.w3.org/1999/02/22-rdf-syntax-ns#type";

pub const XSD_STRING: &str = "http://www.w3.org/2001/XMLSchema#string";
pub const XSD_INTEGER: &str = "http://www.w3.org/2001/XMLSchema#integer";
pub const XSD_DECIMAL: &str = "http://www.w3.org/2001/XMLSchema#decimal";
pub const XSD_DOUBLE: &str = "http://www.w3.org/2001/XMLSchema#double";
pub const XSD_FLOAT: &str = "http://www.w3.org/2001/XMLSchema#float";
pub const XSD_BOOLEAN: &str = "http://www.w3.org/2001/XMLSchema#boolean";
pub const XSD_DATE: &str = "http://www.w3.org/2001/XMLSchema#date";
pub const XSD_DATETIME: &str = "http://www.w3.org/2001/XMLSchema#dateTime";
pub const RDF_LANG_STRING: &str = "http://www.w3.org/1999/02/22-rdf-syntax-ns#langString";

pub const OWA_ARCHIVED_DOCUMENT: &str = "http://l3s.de/owa/core#ArchivedDocument";
pub const OWA_VERSIONED_DOCUMENT: &str = "http://l3s.de/owa/core#VersionedDocument";
pub const OWA_FIRST_CAPTURE: &str = "http://l3s.de/owa/core#firstCapture";
pub const OWA_LAST_CAPTURE: &str = "http://l3s.de/owa/core#lastCapture";
pub const OWA_NUM_OF_CAPTURES: &str = "http://l3s.de/owa/core#numOfCaptures";

pub const OAE_ENTITY: &str = "http://www.ics.forth.gr/isl/oae/core#Entity";
pub const OAE_CONFIDENCE: &str = "http://www.ics.forth.gr/isl/oae/core#confidence";
pub const OAE_DETECTED_AS: &str = "http://www.ics.forth.gr/isl/oae/core#detectedAs";
pub const OAE_POSITION: &str = "http://www.ics.forth.gr/isl/oae/core#position";
pub const OAE_HAS_MATCHED_URI: &str = "http://www.ics.forth.gr/isl/oae/core#hasMatchedURI";

pub const OA_ANNOTATION: &str = "http://www.w3.org/ns/oa#Annotation";
pub const OA_HAS_TARGET: &str = "http://www.w3.org/ns/oa#hasTarget";
pub const OA_HAS_BODY: &str = "http://www.w3.org/ns/oa#hasBody";

pub const DCTERMS_DATE: &str = "http://purl.org/dc/terms/date";
pub const DCTERMS_FORMAT: &str = "http://purl.org/dc/terms/format";
pub const DCTERMS_TITLE: &str = "http://purl.org/dc/terms/title";
pub const DCTERMS_REFERENCES: &str = "http://purl.org/dc/terms/references";
pub const DCTERMS_HAS_VERSION: &str = "http://purl.org/dc/terms/hasVersion";
pub const DCTERMS_CREATOR: &str = "http://purl.org/dc/terms/creator";
pub const DCTERMS_SUBJECT: &str = "http://purl.org/dc/terms/subject";

pub const SCHEMA_MENTIONS: &str = "http://schema.org/mentions";
pub const SCHEMA_TEXT: &str = "http://schema.org/text";

pub const OWL_SAME_AS: &str = "http://www.w3.org/2002/07/owl#sameAs";

pub const TW_TWEET: &str = "http://www.openlinksw.com/schemas/twitter#Tweet";
pub const TW_RETWEET_COUNT: &str = "http://www.openlinksw.com/schemas/twitter#retweetCount";
pub const TW_FAVORITE_COUNT: &str = "http://www.openlinksw.com/schemas/twitter#favoriteCount";

/// Prefix label → namespace IRI.
pub type PrefixMap = BTreeMap<String, String>;

/// Prefixes written at the top of every serialized layer.
pub fn layer_prefixes() -> PrefixMap {
    [
        ("dcterms", DCTERMS),
        ("oa", OA),
        ("oae", OAE),
        ("owa", OWA),
        ("owl", OWL),
        ("rdf", RDF),
        ("schema", SCHEMA),
        ("tw", TW),
        ("xsd", XSD),
    ]
    .into_iter()
    .map(|(p, ns)| (p.to_string(), ns.to_string()))
    .collect()
}

/// Prefixes predeclared for queries, so the listings run without PREFIX lines.
///
/// `dc:` resolves to DCMI Terms, the same namespace the builder writes.
pub fn query_prefixes() -> PrefixMap {
    let mut map = layer_prefixes();
    for (p, ns) in [
        ("dc", DCTERMS),
        ("rdfs", RDFS),
        ("dbr", DBR),
        ("dbo", DBO),
        ("dbc", DBC),
        ("yago", YAGO),
        ("foaf", FOAF),
        ("nyt", "http://data.nytimes.com/"),
    ] {
        map.insert(p.to_string(), ns.to_string());
    }
    map
}
