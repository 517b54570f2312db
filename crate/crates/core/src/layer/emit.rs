use std::collections::HashSet;

use sha1::{Digest, Sha1};

use crate::archive::{CaptureTime, CdxRecord};
use crate::content::{NewsArticle, PageContent, TweetRecord};
use crate::linker::EntityMention;
use crate::rdf::{is_valid_iri, GraphStore, Term, Triple};
use crate::vocab::*;

/// How entity mentions are attached to documents.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum AnnotationMode {
    /// `doc schema:mentions _:e`.
    #[default]
    Compact,
    /// `_:a oa:hasTarget doc ; oa:hasBody _:e`.
    Full,
}

impl std::str::FromStr for AnnotationMode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "compact" => Ok(AnnotationMode::Compact),
            "full" => Ok(AnnotationMode::Full),
            other => Err(format!(
                "unknown annotation mode '{other}' (expected compact or full)"
            )),
        }
    }
}

/// First 8 bytes of SHA-1, as 16 hex digits. Stable across runs and platforms.
pub fn stable_hash_hex(text: &str) -> String {
    Sha1::digest(text.as_bytes())[..8]
        .iter()
        .map(|b| format!("{b:02x}"))
        .collect()
}

/// Node for one capture: `{base}/{timestamp}/{original_url}` when a base
/// is configured, else `_:v<hash(surt)>-<timestamp>`.
pub fn version_node(record: &CdxRecord, wayback_base: Option<&str>) -> Term {
    match wayback_base {
        Some(base) => Term::iri(format!(
            "{}/{}/{}",
            base.trim_end_matches('/'),
            record.timestamp.to_wayback(),
            record.original_url
        )),
        None => Term::blank(format!(
            "v{}-{}",
            stable_hash_hex(&record.surt_url),
            record.timestamp.to_wayback()
        )),
    }
}

/// Node for a URL's capture history: the original URL, or a blank node
/// when that URL cannot be written as an IRI.
pub fn document_node(original_url: &str, surt_url: &str) -> Term {
    if is_valid_iri(original_url) {
        Term::iri(original_url)
    } else {
        Term::blank(format!("d{}", stable_hash_hex(surt_url)))
    }
}

fn node_label(node: &Term) -> &str {
    node.value_str()
}

fn t(s: &Term, p: &str, o: Term) -> Triple {
    Triple::new(s.clone(), Term::iri(p), o)
}

fn datetime(c: CaptureTime) -> Term {
    Term::typed(c.to_xsd(), XSD_DATETIME)
}

/// Entity nodes `_:e<uid>-<i>` for `subject`, attached per `mode`.
pub fn emit_mentions(
    subject: &Term,
    mentions: &[EntityMention],
    mode: AnnotationMode,
) -> Vec<Triple> {
    let uid = stable_hash_hex(node_label(subject));
    let mut sorted: Vec<&EntityMention> = mentions.iter().collect();
    sorted.sort_by_key(|m| m.position);
    let mut out = Vec::with_capacity(mentions.len() * 7);
    for (i, m) in sorted.into_iter().enumerate() {
        let entity = Term::blank(format!("e{uid}-{i}"));
        match mode {
            AnnotationMode::Compact => out.push(t(subject, SCHEMA_MENTIONS, entity.clone())),
            AnnotationMode::Full => {
                let ann = Term::blank(format!("a{uid}-{i}"));
                out.push(t(&ann, RDF_TYPE, Term::iri(OA_ANNOTATION)));
                out.push(t(&ann, OA_HAS_TARGET, subject.clone()));
                out.push(t(&ann, OA_HAS_BODY, entity.clone()));
            }
        }
        out.push(t(&entity, RDF_TYPE, Term::iri(OAE_ENTITY)));
        out.push(t(&entity, OAE_CONFIDENCE, Term::double(m.confidence)));
        out.push(t(&entity, OAE_DETECTED_AS, Term::string(&m.surface)));
        out.push(t(&entity, OAE_POSITION, Term::integer(m.position as i64)));
        out.push(t(&entity, OAE_HAS_MATCHED_URI, Term::iri(&m.uri)));
    }
    out
}

/// `owa:ArchivedDocument` with capture range, count and one
/// `dcterms:hasVersion` per version (same-as versions included).
pub fn emit_archived_doc(doc: &Term, versions: &[(Term, CaptureTime)]) -> Vec<Triple> {
    let mut out = vec![t(doc, RDF_TYPE, Term::iri(OWA_ARCHIVED_DOCUMENT))];
    let (Some(first), Some(last)) = (
        versions.iter().map(|v| v.1).min(),
        versions.iter().map(|v| v.1).max(),
    ) else {
        return out;
    };
    out.push(t(doc, OWA_FIRST_CAPTURE, datetime(first)));
    out.push(t(doc, OWA_LAST_CAPTURE, datetime(last)));
    out.push(t(
        doc,
        OWA_NUM_OF_CAPTURES,
        Term::integer(versions.len() as i64),
    ));
    for (node, _) in versions {
        out.push(t(doc, DCTERMS_HAS_VERSION, node.clone()));
    }
    out
}

/// A canonical capture with its content and entities.
pub fn emit_version(
    node: &Term,
    capture: CaptureTime,
    mime: &str,
    content: &PageContent,
    mentions: &[EntityMention],
    mode: AnnotationMode,
) -> Vec<Triple> {
    let mut out = vec![
        t(node, RDF_TYPE, Term::iri(OWA_VERSIONED_DOCUMENT)),
        t(node, DCTERMS_DATE, datetime(capture)),
        t(node, DCTERMS_FORMAT, Term::string(mime)),
    ];
    if let Some(title) = &content.title {
        out.push(t(node, DCTERMS_TITLE, Term::string(title)));
    }
    for link in &content.links {
        if is_valid_iri(link) {
            out.push(t(node, DCTERMS_REFERENCES, Term::iri(link)));
        }
    }
    out.extend(emit_mentions(node, mentions, mode));
    out
}

/// A duplicate capture: type, date and `owl:sameAs` to the canonical node.
pub fn emit_sameas(node: &Term, capture: CaptureTime, canonical: &Term) -> Vec<Triple> {
    vec![
        t(node, RDF_TYPE, Term::iri(OWA_VERSIONED_DOCUMENT)),
        t(node, DCTERMS_DATE, datetime(capture)),
        t(node, OWL_SAME_AS, canonical.clone()),
    ]
}

/// Text handed to the linker for an article: title, blank line, body.
pub fn article_link_text(article: &NewsArticle) -> String {
    format!("{}\n\n{}", article.title, article.body)
}

/// Non-versioned news article, subject = its URL.
pub fn emit_article(
    article: &NewsArticle,
    mentions: &[EntityMention],
    mode: AnnotationMode,
) -> Vec<Triple> {
    let node = document_node(&article.url, &article.id);
    let mut out = vec![
        t(&node, RDF_TYPE, Term::iri(OWA_ARCHIVED_DOCUMENT)),
        t(
            &node,
            DCTERMS_DATE,
            Term::typed(
                article.publication_date.format("%Y-%m-%d").to_string(),
                XSD_DATE,
            ),
        ),
        t(&node, DCTERMS_TITLE, Term::string(&article.title)),
    ];
    out.extend(emit_mentions(&node, mentions, mode));
    out
}

/// Node for a tweet: its status URL.
pub fn tweet_node(tweet: &TweetRecord) -> Term {
    let iri = format!(
        "https://twitter.com/{}/status/{}",
        tweet.screen_name, tweet.id
    );
    document_node(&iri, &tweet.id)
}

pub fn emit_tweet(
    tweet: &TweetRecord,
    mentions: &[EntityMention],
    mode: AnnotationMode,
) -> Vec<Triple> {
    let node = tweet_node(tweet);
    let mut out = vec![
        t(&node, RDF_TYPE, Term::iri(TW_TWEET)),
        t(&node, RDF_TYPE, Term::iri(OWA_ARCHIVED_DOCUMENT)),
        t(
            &node,
            DCTERMS_DATE,
            Term::typed(
                tweet.created_at.format("%Y-%m-%dT%H:%M:%S").to_string(),
                XSD_DATETIME,
            ),
        ),
        t(&node, SCHEMA_TEXT, Term::string(&tweet.text)),
        t(
            &node,
            TW_RETWEET_COUNT,
            Term::integer(tweet.retweet_count as i64),
        ),
        t(
            &node,
            TW_FAVORITE_COUNT,
            Term::integer(tweet.favorite_count as i64),
        ),
        t(&node, DCTERMS_CREATOR, Term::string(&tweet.screen_name)),
    ];
    out.extend(emit_mentions(&node, mentions, mode));
    out
}

/// Copies every KB triple whose subject is one of `mention_uris`.
pub fn enrich_entities<'a, I>(mention_uris: I, kb: &GraphStore) -> Vec<Triple>
where
    I: IntoIterator<Item = &'a str>,
{
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for uri in mention_uris {
        if seen.insert(uri) {
            out.extend(kb.match_pattern(Some(&Term::iri(uri)), None, None));
        }
    }
    out
}
